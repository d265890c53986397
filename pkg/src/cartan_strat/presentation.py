"""Parsing, validation and serialization of algebra presentations kQ/I.

The text format is line oriented; ``#`` starts a comment::

    field QQ
    vertices: 1 2 3 4
    arrows:
      b: 1 -> 2
      g: 2 -> 4
    relations:
      b.g - d.e
      a.a
    order: 1 < 2 < 3 < 4

Words are written in traversal order: ``b.g`` runs along ``b`` first.
Arrow identifiers must start with a letter or underscore so that they are
never confused with coefficients.  ``;`` separates statements on one line,
and the items of ``arrows:`` and ``relations:`` may also follow the colon,
comma separated.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .fields import FieldSpec, QQ, Scalar
from .quiver import Arrow, LinearOrder, PathWord, Quiver, QuiverError


class PresentationError(ValueError):
    """A presentation problem, optionally pinned to a line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class DSLSyntaxError(PresentationError):
    pass


class UnknownIdentifier(PresentationError):
    pass


class NonComposablePath(PresentationError):
    pass


class NonParallelTerms(PresentationError):
    pass


class ShortRelationWord(PresentationError):
    pass


class ZeroCoefficient(PresentationError):
    pass


class InvalidOrder(PresentationError):
    pass


@dataclass(frozen=True)
class Relation:
    """A nonzero linear combination of parallel paths of length >= 2."""

    terms: tuple[tuple[Scalar, PathWord], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise PresentationError("a relation needs at least one term")
        words = [w for _, w in self.terms]
        if len(set(words)) != len(words):
            raise PresentationError("relation words must be pairwise distinct")
        if any(not c for c, _ in self.terms):
            raise ZeroCoefficient("relation coefficients must be nonzero")
        first = words[0]
        for w in words:
            if w.length < 2:
                raise ShortRelationWord(f"relation word {w} has length {w.length} < 2")
            if (w.source, w.target) != (first.source, first.target):
                raise NonParallelTerms(f"relation words {first} and {w} are not parallel")

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __str__(self):
        return format_relation(self)


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    field: FieldSpec = QQ
    relations: tuple[Relation, ...] = ()
    order: Optional[LinearOrder] = None
    radical_square_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            for _, w in r.terms:
                for name in w.arrows:
                    if not self.quiver.has_arrow(name):
                        raise UnknownIdentifier(f"relation uses undeclared arrow {name!r}")
        if self.order is not None:
            try:
                self.order.check_covers(self.quiver)
            except QuiverError as exc:
                raise InvalidOrder(str(exc)) from None

    def all_relations(self) -> list[Relation]:
        """Explicit relations plus, under ``radical-square-zero``, every
        path of length two as a monomial relation."""
        rels = list(self.relations)
        if self.radical_square_zero:
            one = self.field.one
            for a in self.quiver.arrows:
                for b in self.quiver.arrows_from(a.target):
                    rels.append(Relation(((one, PathWord(a.source, b.target, (a.name, b.name))),)))
        return rels

    def with_order(self, order: Optional[LinearOrder]) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, self.field, self.relations, order, self.radical_square_zero)


# ---------------------------------------------------------------------------
# parsing

_KEYWORD = re.compile(r"(field|vertices|arrows|relations|order)\b\s*:?|(radical-square-zero)\b")
_ARROW = re.compile(r"\s*([^\W\d]\w*)\s*:\s*(\w+)\s*->\s*(\w+)\s*$")
_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(\S))")
_VERTEX = re.compile(r"\w+")


def _tokens(text: str, col0: int):
    """Yield (kind, value, column) with kinds num, id, sym."""
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            yield "num", m.group(1), col0 + m.start(1)
        elif m.group(2) is not None:
            yield "id", m.group(2), col0 + m.start(2)
        elif m.group(3) is not None:
            yield "sym", m.group(3), col0 + m.start(3)


def _parse_relation(text: str, line: int, col0: int, q: Quiver, fld: FieldSpec) -> Relation:
    toks = list(_tokens(text, col0))
    end_col = col0 + len(text.rstrip())
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("end", "", end_col)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            shown = tok[1] or "end of line"
            raise DSLSyntaxError(f"expected {want}, found {shown!r}", line, tok[2])
        pos += 1
        return tok

    terms: dict[tuple, list] = {}
    order: list[tuple] = []
    sign = 1
    tok = peek()
    if tok[0] == "sym" and tok[1] in "+-":
        sign = -1 if tok[1] == "-" else 1
        take()
    while True:
        coef = Fraction(1)
        coef_col = peek()[2]
        if peek()[0] == "num":
            num = int(take("num")[1])
            den = 1
            if peek()[1] == "/":
                take("sym", "/")
                dtok = take("num")
                den = int(dtok[1])
                if den == 0:
                    raise DSLSyntaxError("denominator must be positive", line, dtok[2])
            take("sym", "*")
            coef = Fraction(num, den)
        names = []
        cols = []
        t = take("id")
        names.append(t[1])
        cols.append(t[2])
        while peek()[1] == ".":
            take("sym", ".")
            t = take("id")
            names.append(t[1])
            cols.append(t[2])
        for n, c in zip(names, cols):
            if not q.has_arrow(n):
                raise UnknownIdentifier(f"unknown arrow {n!r}", line, c)
        for k in range(1, len(names)):
            if q.arrow(names[k - 1]).target != q.arrow(names[k]).source:
                raise NonComposablePath(
                    f"{names[k - 1]} ends at {q.arrow(names[k - 1]).target} but {names[k]} "
                    f"starts at {q.arrow(names[k]).source}",
                    line,
                    cols[k],
                )
        word = PathWord.from_arrows(q, names)
        if word.length < 2:
            raise ShortRelationWord(f"relation word {word} has length {word.length} < 2", line, cols[0])
        try:
            value = fld(coef * sign)
        except ZeroDivisionError:
            raise ZeroCoefficient(f"coefficient {coef} is undefined in {fld}", line, coef_col) from None
        if not value:
            raise ZeroCoefficient(f"coefficient {coef} vanishes in {fld}", line, coef_col)
        if word not in terms:
            terms[word] = [fld.zero, coef_col]
            order.append(word)
        terms[word][0] = terms[word][0] + value
        if order and (word.source, word.target) != (order[0].source, order[0].target):
            raise NonParallelTerms(f"{word} is not parallel to {order[0]}", line, cols[0])
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] == "sym" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            take()
            continue
        raise DSLSyntaxError(f"unexpected {tok[1]!r}", line, tok[2])
    out = []
    for w in order:
        c, col = terms[w]
        if not c:
            raise ZeroCoefficient(f"terms in {w} cancel to zero", line, col)
        out.append((c, w))
    return Relation(tuple(out))


def _split_statements(raw: str):
    """Split a physical line on ';' keeping start offsets, dropping comments."""
    text = raw.split("#", 1)[0]
    start = 0
    for part in text.split(";"):
        yield part, start
        start += len(part) + 1


def _split_items(text: str, col0: int):
    start = 0
    for part in text.split(","):
        if part.strip():
            lead = len(part) - len(part.lstrip())
            yield part.strip(), col0 + start + lead
        start += len(part) + 1


def parse_presentation(text: str) -> AlgebraPresentation:
    """Parse the presentation DSL.  Errors carry 1-based line and column."""
    fld = None
    vertices: list[str] | None = None
    arrow_items: list[tuple[str, int, int]] = []
    relation_items: list[tuple[str, int, int]] = []
    order_item = None
    rad2 = False
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        for stmt, off in _split_statements(raw):
            if not stmt.strip():
                continue
            lead = len(stmt) - len(stmt.lstrip())
            body = stmt.strip()
            col = off + lead + 1
            m = _KEYWORD.match(body)
            if m and m.group(2):
                rad2 = True
                section = None
                if body[m.end():].strip():
                    raise DSLSyntaxError("radical-square-zero takes no arguments", lineno, col + m.end())
                continue
            if m:
                key = m.group(1)
                rest = body[m.end():]
                rest_col = col + m.end() + (len(rest) - len(rest.lstrip()))
                rest = rest.strip()
                if key == "field":
                    if fld is not None:
                        raise DSLSyntaxError("field declared twice", lineno, col)
                    try:
                        fld = FieldSpec.parse(rest)
                    except ValueError as exc:
                        raise DSLSyntaxError(str(exc), lineno, rest_col) from None
                    section = None
                elif key == "vertices":
                    vertices = _VERTEX.findall(rest.replace(",", " "))
                    if not vertices:
                        raise DSLSyntaxError("no vertices listed", lineno, rest_col)
                    section = None
                elif key == "arrows":
                    section = "arrows"
                    arrow_items.extend((t, lineno, c) for t, c in _split_items(rest, rest_col))
                elif key == "relations":
                    section = "relations"
                    relation_items.extend((t, lineno, c) for t, c in _split_items(rest, rest_col))
                elif key == "order":
                    order_item = (rest, lineno, rest_col)
                    section = None
                continue
            if section == "arrows":
                arrow_items.extend((t, lineno, c) for t, c in _split_items(body, col))
            elif section == "relations":
                relation_items.append((body, lineno, col))
            else:
                raise DSLSyntaxError(f"unexpected statement {body!r}", lineno, col)

    arrows = []
    inferred: list[str] = []
    for item, lineno, col in arrow_items:
        m = _ARROW.match(item)
        if not m:
            raise DSLSyntaxError(f"malformed arrow {item!r}; expected <id>: <vertex> -> <vertex>", lineno, col)
        name, s, t = m.groups()
        if vertices is not None:
            for v, g in ((s, 2), (t, 3)):
                if v not in vertices:
                    raise UnknownIdentifier(f"unknown vertex {v!r}", lineno, col + m.start(g))
        for v in (s, t):
            if v not in inferred:
                inferred.append(v)
        if any(a.name == name for a in arrows):
            raise DSLSyntaxError(f"arrow {name!r} declared twice", lineno, col)
        arrows.append(Arrow(name, s, t))
    if vertices is None:
        vertices = inferred
    if len(set(vertices)) != len(vertices):
        raise DSLSyntaxError("duplicate vertex identifiers")
    if not vertices:
        raise DSLSyntaxError("presentation declares no vertices")
    q = Quiver(tuple(vertices), tuple(arrows))
    fld = fld or QQ

    relations = tuple(_parse_relation(t, ln, c, q, fld) for t, ln, c in relation_items)

    order = None
    if order_item is not None:
        text_o, lineno, col = order_item
        try:
            order = LinearOrder.parse(text_o)
        except QuiverError as exc:
            raise DSLSyntaxError(str(exc), lineno, col) from None
        for v in order.vertices:
            if v not in q.vertices:
                raise UnknownIdentifier(f"order mentions unknown vertex {v!r}", lineno, col)
        try:
            order.check_covers(q)
        except QuiverError as exc:
            raise InvalidOrder(str(exc), lineno, col) from None
    return AlgebraPresentation(q, fld, relations, order, rad2)


# ---------------------------------------------------------------------------
# serialization


def _format_coefficient(c: Scalar) -> tuple[str, str]:
    """Return (sign, magnitude prefix) for a term."""
    if isinstance(c, Fraction):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if c == 1:
            return sign, ""
        if c.denominator == 1:
            return sign, f"{c.numerator}*"
        return sign, f"{c.numerator}/{c.denominator}*"
    v = int(c)
    return "+", ("" if v == 1 else f"{v}*")


def format_relation(r: Relation) -> str:
    parts = []
    for k, (c, w) in enumerate(r.terms):
        sign, mag = _format_coefficient(c)
        body = mag + ".".join(w.arrows)
        if k == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def serialize(p: AlgebraPresentation) -> str:
    lines = [f"field {p.field}", "vertices: " + " ".join(p.quiver.vertices), "arrows:"]
    lines += [f"  {a.name}: {a.source} -> {a.target}" for a in p.quiver.arrows]
    if p.radical_square_zero:
        lines.append("radical-square-zero")
    lines.append("relations:")
    lines += [f"  {format_relation(r)}" for r in p.relations]
    if p.order is not None:
        lines.append("order: " + " < ".join(p.order.vertices))
    return "\n".join(lines) + "\n"


def _scalar_to_json(c: Scalar) -> str:
    return str(c)


def to_dict(p: AlgebraPresentation) -> dict[str, Any]:
    return {
        "field": str(p.field),
        "vertices": list(p.quiver.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in p.quiver.arrows],
        "relations": [
            [{"coefficient": _scalar_to_json(c), "path": list(w.arrows)} for c, w in r.terms] for r in p.relations
        ],
        "order": list(p.order.vertices) if p.order is not None else None,
        "radical_square_zero": p.radical_square_zero,
    }


def from_dict(data: dict[str, Any]) -> AlgebraPresentation:
    fld = FieldSpec.parse(data.get("field", "QQ"))
    q = Quiver(
        tuple(str(v) for v in data["vertices"]),
        tuple(Arrow(str(a["name"]), str(a["source"]), str(a["target"])) for a in data.get("arrows", [])),
    )
    rels = []
    for terms in data.get("relations", []):
        out = []
        for t in terms:
            names = [str(n) for n in t["path"]]
            for n in names:
                if not q.has_arrow(n):
                    raise UnknownIdentifier(f"unknown arrow {n!r}")
            try:
                word = PathWord.from_arrows(q, names)
            except QuiverError as exc:
                raise NonComposablePath(str(exc)) from None
            out.append((fld(Fraction(t["coefficient"])), word))
        rels.append(Relation(tuple(out)))
    order = LinearOrder(tuple(str(v) for v in data["order"])) if data.get("order") else None
    return AlgebraPresentation(q, fld, tuple(rels), order, bool(data.get("radical_square_zero", False)))


def to_json(p: AlgebraPresentation) -> str:
    return json.dumps(to_dict(p), indent=2)


def from_json(text: str) -> AlgebraPresentation:
    return from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


def _normalized(r: Relation):
    lead = r.terms[0][0]
    return frozenset((w, c / lead) for c, w in r.terms)


def _contains(word: tuple, sub: tuple) -> bool:
    n, m = len(word), len(sub)
    return any(word[i:i + m] == sub for i in range(n - m + 1))


def validate_presentation(p: AlgebraPresentation, *, stratification_requested: bool = False) -> list[Diagnostic]:
    """Necessary-condition checks that do not block parsing."""
    out: list[Diagnostic] = []
    seen: dict = {}
    for k, r in enumerate(p.relations):
        key = _normalized(r)
        if key in seen:
            out.append(Diagnostic("duplicate", f"relation {k + 1} ({r}) repeats relation {seen[key] + 1}"))
        else:
            seen[key] = k
    monomials = [(k, r.terms[0][1].arrows) for k, r in enumerate(p.relations) if r.is_monomial]
    for k, w in monomials:
        for j, v in monomials:
            if j != k and w != v and _contains(w, v):
                out.append(
                    Diagnostic("redundant", f"monomial relation {'.'.join(w)} contains relation {'.'.join(v)}")
                )
    if p.radical_square_zero:
        for k, r in enumerate(p.relations):
            if r.is_monomial:
                out.append(
                    Diagnostic("redundant", f"relation {r} is implied by the radical-square-zero directive")
                )
    if stratification_requested and p.order is None:
        out.append(Diagnostic("missing-order", "a stratification query needs a linear order on the vertices"))
    return out
