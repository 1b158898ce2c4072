import io
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ofnkb import corpus  # noqa: E402
from ofnkb.cli import main  # noqa: E402
from ofnkb.kb import Edge, Member, build_kb  # noqa: E402
from ofnkb.reasoner import materialize  # noqa: E402


@pytest.fixture(scope="session")
def corpus_data():
    return corpus.load_corpus()


@pytest.fixture(scope="session")
def corpus_kb(corpus_data):
    return build_kb([corpus_data.tbox, corpus_data.abox])


@pytest.fixture(scope="session")
def corpus_closure(corpus_kb):
    return materialize(corpus_kb)


@pytest.fixture
def M():
    """Full IRI in the MODEUS namespace."""
    from ofnkb.ofs.model import Iri

    return lambda local: Iri("http://modeus.uniroma1.it/ontology#" + local)


def as_tuples(cl):
    """Closure facts in the oracle's tuple shape, over IRIs."""
    kb, out = cl.kb, set()
    for f in cl.facts:
        if isinstance(f, Member):
            out.add(("member", kb.iri(f.ind), kb.iri(f.cls)))
        elif isinstance(f, Edge):
            out.add(("edge", kb.iri(f.prop), kb.iri(f.subj), kb.iri(f.obj)))
        else:
            out.add(("data", kb.iri(f.prop), kb.iri(f.subj), f.lit))
    return out


def run_cli(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


CORPUS_DIR = str(corpus.root())


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    verdicts = getattr(acceptance, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
