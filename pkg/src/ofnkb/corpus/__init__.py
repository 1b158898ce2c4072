"""Bundled MODEUS corpus: repaired ontologies, queries, repair table, goldens.

Files are checked against ``MANIFEST.sha256`` on load.  The untouched
printed copies under ``printed/`` are kept so the repair table can be
replayed and audited.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

from ..ofs import STRICT, parse
from ..ofs.model import Ontology

MANIFEST = "MANIFEST.sha256"
ONTOLOGIES = ("tbox.ofn", "abox.ofn")
QUERIES = ("q23.rq", "q24.rq")


class CorpusError(RuntimeError):
    pass


@dataclass(frozen=True)
class NormalizationEntry:
    location: str
    printed_form: str
    canonical_form: str
    rationale: str

    def applies_to(self, name: str) -> bool:
        return name in self.location.split("+")


@dataclass(frozen=True)
class GoldenCase:
    name: str
    argv: tuple[str, ...]
    expected: bytes
    exit_status: int
    provenance: str


class Corpus(NamedTuple):
    tbox: Ontology
    abox: Ontology
    queries: dict
    goldens: list


def root() -> Path:
    return Path(str(resources.files(__name__)))


def path(name: str) -> Path:
    return root() / name


def _digest(p: Path) -> str:
    return hashlib.sha256(p.read_bytes()).hexdigest()


def manifest() -> dict[str, str]:
    out = {}
    if not path(MANIFEST).is_file():
        raise CorpusError(f"corpus manifest missing: {MANIFEST}")
    for line in path(MANIFEST).read_text(encoding="utf-8").splitlines():
        digest, name = line.split(None, 1)
        out[name.strip()] = digest
    return out


def verify() -> None:
    for name, digest in manifest().items():
        p = path(name)
        if not p.is_file():
            raise CorpusError(f"corpus file missing: {name}")
        if _digest(p) != digest:
            raise CorpusError(f"corpus file corrupted (hash mismatch): {name}")


def write_manifest() -> None:
    """Regenerate the manifest after an intentional corpus edit."""
    base = root()
    names = sorted(
        str(p.relative_to(base)).replace("\\", "/")
        for p in base.rglob("*")
        if p.is_file() and p.suffix in {".ofn", ".rq", ".tsv", ".out", ".json"}
    )
    lines = [f"{_digest(base / n)}  {n}" for n in names]
    path(MANIFEST).write_text("\n".join(lines) + "\n", encoding="utf-8")


_UNESCAPE = {"n": "\n", "t": "\t", "\\": "\\"}


def _unescape(field: str) -> str:
    out, i = [], 0
    while i < len(field):
        ch = field[i]
        if ch == "\\" and i + 1 < len(field) and field[i + 1] in _UNESCAPE:
            out.append(_UNESCAPE[field[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def normalization() -> list[NormalizationEntry]:
    lines = path("normalization.tsv").read_text(encoding="utf-8").splitlines()
    return [NormalizationEntry(*(_unescape(x) for x in line.split("\t"))) for line in lines[1:] if line]


def apply_normalization(text: str, name: str) -> str:
    """Replay the repair table, in order, over a printed copy."""
    for entry in normalization():
        if entry.applies_to(name):
            text = text.replace(entry.printed_form, entry.canonical_form)
    return text


def printed(name: str) -> str:
    suffix = ".ofn" if name in ("tbox", "abox") else ".rq"
    return path(f"printed/{name}.printed{suffix}").read_text(encoding="utf-8")


def goldens() -> list[GoldenCase]:
    spec = json.loads(path("golden/cases.json").read_text(encoding="utf-8"))
    return [
        GoldenCase(
            c["name"],
            tuple(c["argv"]),
            path(f"golden/{c['name']}.out").read_bytes(),
            c["exit"],
            c["provenance"],
        )
        for c in spec
    ]


def load_corpus(check: bool = True) -> Corpus:
    if check:
        verify()
    tbox, abox = (parse(path(n).read_text(encoding="utf-8"), STRICT) for n in ONTOLOGIES)
    queries = {n.removesuffix(".rq"): path(n).read_text(encoding="utf-8") for n in QUERIES}
    return Corpus(tbox, abox, queries, goldens())


__all__ = [
    "Corpus",
    "CorpusError",
    "GoldenCase",
    "NormalizationEntry",
    "apply_normalization",
    "goldens",
    "load_corpus",
    "manifest",
    "normalization",
    "path",
    "printed",
    "verify",
    "write_manifest",
]
