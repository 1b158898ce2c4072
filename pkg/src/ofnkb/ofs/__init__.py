"""OWL 2 functional-style syntax: lexer, parser, serializer."""

from .lexer import OfnSyntaxError, Token, tokenize
from .parser import LAX, STRICT, parse, parse_ontology
from .serializer import abbreviate, serialize

__all__ = [
    "LAX",
    "STRICT",
    "OfnSyntaxError",
    "Token",
    "abbreviate",
    "parse",
    "parse_ontology",
    "serialize",
    "tokenize",
]
