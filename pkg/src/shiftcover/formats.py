"""Plain-text file formats.

Blank lines and anything after ``#`` are ignored everywhere. Words are
space-separated signed 1-based generator indices; ``e`` is the empty word.

group::

    perm <degree>            table <order>
    <images of 0..degree-1>  <row of products>   (one line per row)

presentation::

    gens <n>
    rel <word>

cobordism (``codomain:`` defaults to a copy of ``domain:``)::

    theory relative|closed   (optional)
    total:    <presentation block>
    domain:   <presentation block>
    codomain: <presentation block>
    in:       <one word per domain generator>
    out:      <one word per codomain generator>

matrix::

    matrix <rows> <cols>
    <row-major integers>

fibered knot::

    fibered rank=<2g> [mu=<m>] [name=<name>]
    <one monodromy word per generator>
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .errors import MalformedWordError, ParseError, ShiftcoverError
from .groups import FiniteGroup, group_from_permutations, group_from_table, named_group
from .knots import FiberedKnotData
from .presentations import Presentation, Word
from .tqft import CobordismData, TransferMatrix


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(tokens: Iterable[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"bad integer in {what}: {exc}") from None


def parse_word(text: str) -> Word:
    tokens = text.split()
    if tokens in ([], ["e"]):
        return ()
    w = _ints(tokens, "word")
    if 0 in w:
        raise ParseError("0 is not a valid letter (generators are 1-based)")
    return tuple(w)


def format_word(w: Word) -> str:
    return " ".join(map(str, w)) if w else "e"


def parse_group(text: str, name: str = "") -> FiniteGroup:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty group file")
    head = lines[0].split()
    try:
        if head[0] == "perm" and len(head) == 2:
            degree = int(head[1])
            gens = [_ints(line.split(), "generator") for line in lines[1:]]
            return group_from_permutations(degree, gens, name=name)
        if head[0] == "table" and len(head) == 2:
            order = int(head[1])
            rows = [_ints(line.split(), "table row") for line in lines[1:]]
            if len(rows) != order:
                raise ParseError(f"expected {order} table rows, got {len(rows)}")
            return group_from_table(rows, name=name)
    except ParseError:
        raise
    except (ValueError, ShiftcoverError) as exc:
        raise ParseError(f"invalid group: {exc}") from None
    raise ParseError(f"group file must start with 'perm <degree>' or 'table <order>', got {lines[0]!r}")


def load_group(spec: str) -> FiniteGroup:
    """A named group (``symmetric(3)``, ``C5``, ...) or a path to a group file."""
    try:
        return named_group(spec)
    except ParseError:
        pass
    path = Path(spec)
    if not path.is_file():
        raise ParseError(f"{spec!r} is neither a known group name nor a readable file")
    return parse_group(path.read_text(), name=path.stem)


def _parse_presentation_lines(lines: Sequence[str]) -> Presentation:
    if not lines or not lines[0].startswith("gens"):
        raise ParseError("presentation must start with 'gens <n>'")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"bad header {lines[0]!r}")
    n = _ints(head[1:], "gens")[0]
    rels = []
    for line in lines[1:]:
        key, _, rest = line.partition(" ")
        if key != "rel":
            raise ParseError(f"expected 'rel <word>', got {line!r}")
        rels.append(parse_word(rest))
    try:
        return Presentation(n, tuple(rels))
    except (MalformedWordError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def parse_presentation(text: str) -> Presentation:
    return _parse_presentation_lines(_lines(text))


def format_presentation(P: Presentation) -> str:
    return "\n".join([f"gens {P.gen_count}"] + [f"rel {format_word(r)}" for r in P.relators]) + "\n"


_SECTIONS = ("total", "domain", "codomain", "in", "out")


def parse_cobordism(text: str) -> CobordismData:
    sections: dict[str, list[str]] = {}
    current = None
    relative = False
    for line in _lines(text):
        if line.endswith(":") and line[:-1].strip() in _SECTIONS:
            current = line[:-1].strip()
            if current in sections:
                raise ParseError(f"duplicate section {current!r}")
            sections[current] = []
        elif current is None:
            key, _, val = line.partition(" ")
            if key != "theory" or val.strip() not in ("relative", "closed"):
                raise ParseError(f"unexpected line before first section: {line!r}")
            relative = val.strip() == "relative"
        else:
            sections[current].append(line)
    for required in ("total", "domain", "in", "out"):
        if required not in sections:
            raise ParseError(f"missing section {required!r}")
    total = _parse_presentation_lines(sections["total"])
    domain = _parse_presentation_lines(sections["domain"])
    codomain = (_parse_presentation_lines(sections["codomain"]) if "codomain" in sections
                else domain)
    try:
        return CobordismData(total, domain, codomain,
                             tuple(parse_word(w) for w in sections["in"]),
                             tuple(parse_word(w) for w in sections["out"]), relative)
    except MalformedWordError as exc:
        raise ParseError(str(exc)) from None


def format_cobordism(cob: CobordismData) -> str:
    parts = [f"theory {'relative' if cob.relative else 'closed'}"]
    for title, pres in (("total", cob.total), ("domain", cob.domain), ("codomain", cob.codomain)):
        parts.append(f"{title}:")
        parts.append(format_presentation(pres).rstrip())
    parts.append("in:")
    parts.extend(format_word(w) for w in cob.in_map)
    parts.append("out:")
    parts.extend(format_word(w) for w in cob.out_map)
    return "\n".join(parts) + "\n"


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "matrix":
        raise ParseError("matrix file must start with 'matrix <rows> <cols>'")
    r, c = _ints(head[1:], "matrix header")
    values = _ints(" ".join(lines[1:]).split(), "matrix body")
    if len(values) != r * c:
        raise ParseError(f"expected {r * c} entries, got {len(values)}")
    return tuple(tuple(values[i * c:(i + 1) * c]) for i in range(r))


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    r = len(rows)
    c = len(rows[0]) if r else 0
    body = "".join(" ".join(map(str, row)) + "\n" for row in rows)
    return f"matrix {r} {c}\n{body}"


def parse_knot(text: str) -> FiberedKnotData:
    lines = _lines(text)
    if not lines or not lines[0].startswith("fibered"):
        raise ParseError("knot file must start with 'fibered rank=<2g>'")
    opts = {}
    for tok in lines[0].split()[1:]:
        key, eq, val = tok.partition("=")
        if not eq:
            raise ParseError(f"bad option {tok!r}")
        opts[key] = val
    try:
        rank = int(opts["rank"])
        mu = int(opts.get("mu", 1))
    except (KeyError, ValueError):
        raise ParseError("knot header needs an integer rank=") from None
    words = tuple(parse_word(line) for line in lines[1:])
    if len(words) != rank:
        raise ParseError(f"expected {rank} monodromy words, got {len(words)}")
    try:
        return FiberedKnotData(opts.get("name", "custom"), rank, words, mu)
    except ShiftcoverError as exc:
        raise ParseError(str(exc)) from None


def matrix_json(M: TransferMatrix) -> str:
    return json.dumps(M.to_dict(), separators=(",", ":"))


def format_certificate(cert) -> str:
    """R/S blocks of every move, in the matrix file format."""
    out = [f"certificate {len(cert.moves)}"]
    for k, (move, fwd) in enumerate(zip(cert.moves, cert.forward), start=1):
        out.append(f"move {k} {'forward' if fwd else 'backward'}")
        out.append("R")
        out.append(format_matrix(move.R.rows).rstrip())
        out.append("S")
        out.append(format_matrix(move.S.rows).rstrip())
    return "\n".join(out) + "\n"
