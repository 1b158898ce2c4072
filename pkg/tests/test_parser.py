import re

import pytest

from ofnkb.ofs import LAX, STRICT, OfnSyntaxError, parse, tokenize
from ofnkb.ofs.lexer import DATATYPE_MARKER, IRI, KEYWORD, PNAME, PUNCT, STRING
from ofnkb.ofs.model import (
    ClassName,
    DataPropertyAssertion,
    Declaration,
    DisjointClasses,
    Iri,
    Literal,
    ObjectInverseOf,
    ObjectSomeValuesFrom,
    ObjectUnionOf,
    SubClassOf,
    SubObjectPropertyOf,
    Thing,
)

HEAD = "Prefix(modeus:=<http://modeus.uniroma1.it/ontology#>)\nPrefix(owl:=<http://www.w3.org/2002/07/owl#>)\n"
HEAD += "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"


def M(local):
    return Iri("http://modeus.uniroma1.it/ontology#" + local)


def onto(body: str) -> str:
    return HEAD + "Ontology(<http://modeus.uniroma1.it/ontology>\n" + body + "\n)\n"


def test_prefix_tokens():
    toks = tokenize("Prefix(owl:=<http://www.w3.org/2002/07/owl#>)")
    assert [(t.kind, t.lexeme) for t in toks] == [
        (KEYWORD, "Prefix"),
        (PUNCT, "("),
        (PNAME, "owl:"),
        (PUNCT, "="),
        (IRI, "<http://www.w3.org/2002/07/owl#>"),
        (PUNCT, ")"),
    ]


def test_empty_source_has_no_tokens():
    assert tokenize("") == []


def test_typed_literal_tokens():
    toks = tokenize('"Tivoli"^^rdfs:Literal')
    assert [(t.kind, t.lexeme) for t in toks] == [
        (STRING, '"Tivoli"'),
        (DATATYPE_MARKER, "^^"),
        (PNAME, "rdfs:Literal"),
    ]


def test_token_positions_reconstruct_source():
    src = 'Declaration(Class(modeus:Acqua))\n  # note\nClassAssertion(modeus:Mappa modeus:mappa1)'
    lines = src.split("\n")
    for t in tokenize(src):
        line = lines[t.line - 1]
        assert line[t.column - 1 : t.column - 1 + len(t.lexeme)] == t.lexeme


def test_unterminated_string_reports_position():
    with pytest.raises(OfnSyntaxError) as exc:
        tokenize('DataPropertyAssertion(modeus:d modeus:x\n  "open)')
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_illegal_character():
    with pytest.raises(OfnSyntaxError) as exc:
        tokenize("Declaration(Class(modeus:A)) §")
    assert exc.value.line == 1 and exc.value.column == 30


def test_declaration():
    ont = parse(onto("Declaration(Class(modeus:Acqua))"))
    assert ont.axioms == [Declaration("Class", M("Acqua"))]


def test_prefixes_only_gives_no_axioms():
    ont = parse("Ontology(<http://x>)")
    assert ont.iri == Iri("http://x") and ont.axioms == []


def test_unbalanced_reports_line():
    src = onto("Declaration(Class(modeus:A))\nSubClassOf(modeus:A")
    with pytest.raises(OfnSyntaxError, match="unbalanced parentheses") as exc:
        parse(src)
    assert exc.value.line == src.split("\n").index("SubClassOf(modeus:A") + 1


def test_stray_close_paren():
    with pytest.raises(OfnSyntaxError, match="unbalanced parentheses"):
        parse(onto("Declaration(Class(modeus:A)))"))


def test_unknown_prefix():
    with pytest.raises(OfnSyntaxError, match="unknown prefix"):
        parse(onto("Declaration(Class(nope:A))"))


def test_arity_violation():
    with pytest.raises(OfnSyntaxError):
        parse(onto("DisjointClasses(modeus:A)"))


def test_unknown_keyword_strict_vs_lax():
    body = "Declaration(Class(modeus:A))\nAnnotationAssertion(rdfs:label modeus:A \"x\")\nDeclaration(Class(modeus:B))"
    with pytest.raises(OfnSyntaxError, match="AnnotationAssertion"):
        parse(onto(body), STRICT)
    ont = parse(onto(body), LAX)
    assert ont.axioms == [Declaration("Class", M("A")), Declaration("Class", M("B"))]
    assert len(ont.warnings) == 1 and "AnnotationAssertion" in ont.warnings[0].message


def test_lax_skips_unsupported_expression():
    body = "SubClassOf(modeus:A ObjectAllValuesFrom(modeus:p modeus:B))\nSubClassOf(modeus:A modeus:B)"
    with pytest.raises(OfnSyntaxError):
        parse(onto(body))
    ont = parse(onto(body), LAX)
    assert ont.axioms == [SubClassOf(ClassName(M("A")), ClassName(M("B")))]
    assert ont.warnings


def test_strict_and_lax_agree_on_supported_input(corpus_data):
    from ofnkb import corpus

    text = corpus.path("abox.ofn").read_text(encoding="utf-8")
    assert parse(text, STRICT) == parse(text, LAX)


def test_nested_expressions():
    body = (
        "EquivalentClasses(modeus:Mappa ObjectSomeValuesFrom(ObjectInverseOf(modeus:p) owl:Thing))\n"
        "SubObjectPropertyOf(modeus:c ObjectInverseOf(modeus:c))\n"
        "EquivalentClasses(modeus:U ObjectUnionOf(modeus:A modeus:B))"
    )
    a, b, c = parse(onto(body)).axioms
    assert a.members[1] == ObjectSomeValuesFrom(ObjectInverseOf(M("p")), Thing())
    assert b == SubObjectPropertyOf(b.sub, ObjectInverseOf(M("c")))
    assert c.members[1] == ObjectUnionOf((ClassName(M("A")), ClassName(M("B"))))


def test_deep_nesting_has_no_limit():
    expr = "modeus:A"
    for _ in range(60):
        expr = f"ObjectSomeValuesFrom(modeus:p {expr})"
    ax = parse(onto(f"SubClassOf(modeus:B {expr})")).axioms[0]
    depth = 0
    node = ax.sup
    while isinstance(node, ObjectSomeValuesFrom):
        depth, node = depth + 1, node.filler
    assert depth == 60


def test_literal_and_full_iri_forms():
    body = 'DataPropertyAssertion(<http://modeus.uniroma1.it/ontology#nome> modeus:x "Poggi"^^rdfs:Literal)'
    ax = parse(onto(body)).axioms[0]
    assert ax == DataPropertyAssertion(M("nome"), M("x"), Literal("Poggi", Iri("http://www.w3.org/2000/01/rdf-schema#Literal")))


def test_unicode_local_names():
    ax = parse(onto("Declaration(Class(modeus:Unità_di_descrizione))")).axioms[0]
    assert ax.iri == M("Unità_di_descrizione")


def test_duplicate_declarations_kept_by_parser():
    body = "Declaration(Class(modeus:A))\nDeclaration(Class(modeus:A))"
    assert len(parse(onto(body)).axioms) == 2


def test_error_locations_stay_inside_source():
    bad = [
        onto("SubClassOf(modeus:A modeus:B"),
        onto("Declaration(Class(x:A))"),
        onto("DisjointClasses(modeus:A)"),
        onto('DataPropertyAssertion(modeus:d modeus:x "unterminated'),
        onto("Bogus(modeus:A)"),
    ]
    for src in bad:
        with pytest.raises(OfnSyntaxError) as exc:
            parse(src)
        lines = src.split("\n")
        assert 1 <= exc.value.line <= len(lines)
        assert 1 <= exc.value.column <= len(lines[exc.value.line - 1]) + 1


def test_disjoint_classes_members():
    ax = parse(onto("DisjointClasses(modeus:Fondo modeus:Serie modeus:Sottoserie)")).axioms[0]
    assert isinstance(ax, DisjointClasses) and len(ax.members) == 3


def test_message_shape():
    with pytest.raises(OfnSyntaxError) as exc:
        parse(onto("Declaration(Class(x:A))"))
    assert re.match(r"\d+:\d+: ", str(exc.value))


def test_unclosed_axiom_mid_file_is_blamed():
    src = onto("Declaration(Class(modeus:A))\nSubClassOf(modeus:A modeus:B\nDeclaration(Class(modeus:B))")
    with pytest.raises(OfnSyntaxError, match="unbalanced parentheses") as exc:
        parse(src)
    assert (exc.value.line, exc.value.column) == (6, 1)
