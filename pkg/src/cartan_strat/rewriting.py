"""Completion of path-algebra relations to a confluent rewriting system,
the resulting normal-form basis, and the arrow actions on it.

Words are tuples of arrow indices (declaration order), compared
degree-lexicographically: longer words are larger, equal lengths compare
arrow by arrow.  A rule ``U -> sum c_t w_t`` replaces an occurrence of the
leading word ``U`` by its tail.  Every word occurring in the ideal has
length at least two, so rules never touch stationary paths or arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import FieldSpec, Scalar
from .linalg import Subspace, zeros
from .presentation import AlgebraPresentation
from .quiver import PathWord, Quiver

Word = tuple  # tuple[int, ...]
Poly = dict  # dict[Word, Scalar]


class AlgebraConstructionError(ValueError):
    def __init__(self, message: str, degree: int | None = None):
        self.degree = degree
        super().__init__(message)


class NotFiniteDimensionalWithinCap(AlgebraConstructionError):
    pass


class Inconclusive(AlgebraConstructionError):
    pass


class NotAdmissible(AlgebraConstructionError):
    """The quotient is finite dimensional but its arrow ideal is not nilpotent."""


class SegmentViolation(ValueError):
    pass


def _key(w: Word):
    return (len(w), w)


def _find(w: Word, leads: dict, lengths: Sequence[int]):
    """First (position, leading word) of a rule occurring in ``w``."""
    n = len(w)
    for i in range(n):
        for m in lengths:
            if i + m <= n and w[i:i + m] in leads:
                return i, w[i:i + m]
    return None


@dataclass(frozen=True)
class Certificate:
    max_normal_length: int  # L: no normal-form path is longer
    processed_degree: int  # every overlap up to this degree resolves

    def to_dict(self) -> dict:
        return {"max_normal_length": self.max_normal_length, "processed_degree": self.processed_degree}


@dataclass(frozen=True)
class RewriteRule:
    leading: PathWord
    tail: tuple[tuple[Scalar, PathWord], ...]

    def __str__(self):
        if not self.tail:
            return f"{self.leading} -> 0"
        body = " + ".join(f"{c}*{w}" if c != 1 else str(w) for c, w in self.tail)
        return f"{self.leading} -> {body}"


class RewriteSystem:
    """A reduced, confluent set of rules for kQ/I under deg-lex order."""

    def __init__(self, quiver: Quiver, field: FieldSpec, rules: dict, certificate: Certificate):
        self.quiver = quiver
        self.field = field
        self._rules = rules  # Word -> list[(coef, Word)]
        self._lengths = sorted({len(u) for u in rules})
        self.certificate = certificate

    @property
    def rules(self) -> list[RewriteRule]:
        out = []
        for u in sorted(self._rules, key=_key):
            tail = tuple((c, self.word(w)) for c, w in sorted(self._rules[u], key=lambda t: _key(t[1]), reverse=True))
            out.append(RewriteRule(self.word(u), tail))
        return out

    @property
    def leading_words(self) -> list[Word]:
        return sorted(self._rules, key=_key)

    def word(self, w: Word, vertex: str | None = None) -> PathWord:
        if not w:
            return PathWord.stationary(vertex)
        arrows = self.quiver.arrows
        return PathWord(arrows[w[0]].source, arrows[w[-1]].target, tuple(arrows[i].name for i in w))

    def encode(self, p: PathWord) -> Word:
        return tuple(self.quiver.arrows.index(self.quiver.arrow(n)) for n in p.arrows)

    def reduce(self, poly: Poly) -> Poly:
        return _reduce(poly, self._rules, self._lengths)

    def is_normal(self, w: Word) -> bool:
        return _find(w, self._rules, self._lengths) is None

    def normal_form(self, p: PathWord) -> list[tuple[Scalar, PathWord]]:
        """Normal form of a single path as (coefficient, path) pairs."""
        if p.length == 0:
            return [(self.field.one, p)]
        red = self.reduce({self.encode(p): self.field.one})
        return [(red[w], self.word(w)) for w in sorted(red, key=_key, reverse=True)]

    def restricted(self, quiver: Quiver) -> "RewriteSystem":
        """Rules whose leading word runs inside ``quiver`` (a full subquiver)."""
        keep = {a.name for a in quiver.arrows}
        old = self.quiver.arrows
        remap = {i: quiver.arrows.index(a) for i, a in enumerate(old) if a.name in keep}
        rules = {}
        for u, tail in self._rules.items():
            if all(i in remap for i in u):
                rules[tuple(remap[i] for i in u)] = [
                    (c, tuple(remap[i] for i in w)) for c, w in tail if all(i in remap for i in w)
                ]
        return RewriteSystem(quiver, self.field, rules, self.certificate)


def _reduce(poly: Poly, rules: dict, lengths: Sequence[int]) -> Poly:
    poly = {w: c for w, c in poly.items() if c}
    out: Poly = {}
    while poly:
        w = max(poly, key=_key)
        c = poly.pop(w)
        hit = _find(w, rules, lengths)
        if hit is None:
            out[w] = c
            continue
        i, u = hit
        pre, post = w[:i], w[i + len(u):]
        for tc, tw in rules[u]:
            nw = pre + tw + post
            nc = poly.get(nw, 0) + c * tc
            if nc:
                poly[nw] = nc
            else:
                poly.pop(nw, None)
    return out


def _contains(w: Word, u: Word) -> bool:
    m = len(u)
    return any(w[i:i + m] == u for i in range(len(w) - m + 1))


class _Completion:
    def __init__(self, quiver: Quiver, field: FieldSpec, degree_cap: int):
        self.quiver = quiver
        self.field = field
        self.cap = degree_cap
        self.rules: dict = {}
        self.lengths: list[int] = []

    def _refresh(self):
        self.lengths = sorted({len(u) for u in self.rules})

    def insert(self, poly: Poly) -> bool:
        """Add a polynomial of the ideal; return whether the rules changed."""
        poly = _reduce(poly, self.rules, self.lengths)
        if not poly:
            return False
        lead = max(poly, key=_key)
        if len(lead) > self.cap:
            raise Inconclusive(
                f"completion produced leading word of degree {len(lead)} beyond the cap {self.cap}", len(lead)
            )
        inv = self.field.one / poly[lead]
        tail = [(-c * inv, w) for w, c in poly.items() if w != lead]
        requeue = []
        for u in [u for u in self.rules if _contains(u, lead)]:
            requeue.append({u: self.field.one, **{w: -c for c, w in self.rules.pop(u)}})
        self.rules[lead] = tail
        self._refresh()
        # keep tails reduced
        for u in list(self.rules):
            t = {w: c for c, w in self.rules[u]}
            red = _reduce(t, self.rules, self.lengths)
            self.rules[u] = [(c, w) for w, c in red.items()]
        for p in requeue:
            self.insert(p)
        return True

    def overlaps(self):
        """Yield (degree, U, V, k) for suffix-of-U = prefix-of-V overlaps."""
        leads = sorted(self.rules, key=_key)
        for u in leads:
            for v in leads:
                for k in range(1, min(len(u), len(v))):
                    if u[-k:] == v[:k]:
                        yield len(u) + len(v) - k, u, v, k

    def s_poly(self, u: Word, v: Word, k: int) -> Poly:
        out: Poly = {}
        for c, w in self.rules[u]:
            nw = w + v[k:]
            out[nw] = out.get(nw, 0) + c
        for c, w in self.rules[v]:
            nw = u[:-k] + w
            out[nw] = out.get(nw, 0) - c
        return _reduce(out, self.rules, self.lengths)

    def vanishing_degree(self) -> int | None:
        """Smallest length with no normal-form path, if at most the cap."""
        arrows = self.quiver.arrows
        m = max(self.lengths, default=1)
        keep = m - 1
        leads = self.rules
        states = {(v, ()) for v in self.quiver.vertices}
        out_arrows = {v: [(i, a.target) for i, a in enumerate(arrows) if a.source == v] for v in self.quiver.vertices}
        for n in range(1, self.cap + 1):
            nxt = set()
            for v, suffix in states:
                for i, t in out_arrows[v]:
                    s = suffix + (i,)
                    if any(len(s) >= k and s[-k:] in leads for k in self.lengths):
                        continue
                    nxt.add((t, s[-keep:] if keep else ()))
            if not nxt:
                return n
            states = nxt
        return None


def complete_rewrite_system(p: AlgebraPresentation, degree_cap: int = 64) -> RewriteSystem:
    """Complete the relations of ``p`` to a confluent rewriting system.

    Raises NotFiniteDimensionalWithinCap when normal-form paths persist at
    every length up to ``degree_cap`` and no further rule appears, and
    Inconclusive when completion needs leading words longer than the cap.
    """
    if degree_cap < 2:
        raise ValueError("degree_cap must be at least 2")
    q = p.quiver
    index = {a.name: i for i, a in enumerate(q.arrows)}
    comp = _Completion(q, p.field, degree_cap)
    for rel in p.all_relations():
        poly: Poly = {}
        for c, w in rel.terms:
            key = tuple(index[n] for n in w.arrows)
            poly[key] = poly.get(key, 0) + c
        comp.insert(poly)

    while True:
        d = comp.vanishing_degree()
        limit = 2 * d if d is not None else degree_cap
        pending = sorted(
            (o for o in comp.overlaps() if o[0] <= limit),
            key=lambda o: (o[0], _key(o[1]), _key(o[2]), o[3]),
        )
        # restart the sweep after every new rule so that all overlaps are
        # finally checked against the final rule set
        if not any(comp.insert(comp.s_poly(u, v, k)) for _, u, v, k in pending):
            break
    if d is None:
        raise NotFiniteDimensionalWithinCap(
            f"normal-form paths exist at every length up to the degree cap {degree_cap}", degree_cap
        )
    return RewriteSystem(q, p.field, dict(comp.rules), Certificate(d - 1, 2 * d))


class AlgebraBasis:
    """Normal-form basis of kQ/I with right multiplication by arrows.

    ``paths`` lists every basis path, grouped by source in vertex order and
    deg-lex within a source.  ``arrow_actions[(a, v)]`` is the matrix of
    appending arrow ``a`` (u -> w) on paths starting at ``v``: it maps
    coordinates over ``paths_between(v, u)`` to those over
    ``paths_between(v, w)``.
    """

    def __init__(self, rs: RewriteSystem):
        self.rewrite_system = rs
        self.quiver = q = rs.quiver
        self.field = rs.field
        by_pair: dict[tuple[str, str], list[PathWord]] = {(v, w): [] for v in q.vertices for w in q.vertices}
        arrows = q.arrows
        for v in q.vertices:
            level = [((), v)]
            while level:
                nxt = []
                for w, end in level:
                    by_pair[(v, end)].append(rs.word(w, v))
                    for i, a in enumerate(arrows):
                        if a.source == end:
                            nw = w + (i,)
                            if rs.is_normal(nw):
                                nxt.append((nw, a.target))
                level = sorted(nxt, key=lambda t: _key(t[0]))
        for key in by_pair:
            by_pair[key].sort(key=lambda p: _key(rs.encode(p)))
        self._by_pair = by_pair
        self.paths: list[PathWord] = [p for v in q.vertices for w in q.vertices for p in by_pair[(v, w)]]
        self.paths.sort(key=lambda p: (q.index(p.source), _key(rs.encode(p))))
        self.index = {p: k for k, p in enumerate(self.paths)}
        self._local = {p: by_pair[(p.source, p.target)].index(p) for p in self.paths}
        self.arrow_actions: dict[tuple[str, str], list] = {}
        for a in q.arrows:
            for v in q.vertices:
                src = by_pair[(v, a.source)]
                dst = by_pair[(v, a.target)]
                mat = zeros(self.field, len(dst), len(src))
                for j, p in enumerate(src):
                    for c, r in self._append(p, a.name):
                        mat[self._local[r]][j] = c
                self.arrow_actions[(a.name, v)] = mat

    def _append(self, p: PathWord, arrow: str) -> list[tuple[Scalar, PathWord]]:
        a = self.quiver.arrow(arrow)
        return self.rewrite_system.normal_form(PathWord(p.source, a.target, p.arrows + (arrow,)))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def total_dimension(self) -> int:
        return len(self.paths)

    def paths_between(self, source: str, target: str) -> list[PathWord]:
        return list(self._by_pair[(source, target)])

    def normal_forms(self, i: str, j: str) -> list[PathWord]:
        """Basis of e_i Lambda e_j: normal-form paths from j to i."""
        return self.paths_between(j, i)

    def paths_from(self, v: str) -> list[PathWord]:
        return [p for p in self.paths if p.source == v]

    def local_index(self, p: PathWord) -> int:
        """Position of ``p`` among the basis paths with its endpoints."""
        return self._local[p]

    def relations(self) -> list[list[tuple[Scalar, PathWord]]]:
        """Generators of the ideal: each rule read as leading - tail."""
        out = []
        for r in self.rewrite_system.rules:
            if all(self.quiver.has_arrow(n) for n in r.leading.arrows):
                out.append([(self.field.one, r.leading)] + [(-c, w) for c, w in r.tail])
        return out

    def coordinates(self, terms: Iterable[tuple[Scalar, PathWord]]) -> list:
        vec = [self.field.zero] * len(self.paths)
        for c, p in terms:
            k = self.index[p]
            vec[k] = vec[k] + c
        return vec

    def multiply_paths(self, p: PathWord, q: PathWord) -> list[tuple[Scalar, PathWord]]:
        if p.target != q.source:
            return []
        if p.length == 0:
            return [(self.field.one, q)]
        if q.length == 0:
            return [(self.field.one, p)]
        return self.rewrite_system.normal_form(PathWord(p.source, q.target, p.arrows + q.arrows))

    def is_radical_nilpotent(self) -> bool:
        """Whether right multiplication by arrows is nilpotent on the
        span of nonstationary basis paths."""
        f = self.field
        n = len(self.paths)
        current = [self.coordinates([(f.one, p)]) for p in self.paths if p.length > 0]
        for _ in range(n + 1):
            if not current:
                return True
            span = Subspace(f, n)
            for vec in current:
                for a in self.quiver.arrows:
                    img = [f.zero] * n
                    for k, c in enumerate(vec):
                        if c and self.paths[k].target == a.source:
                            for tc, r in self._append(self.paths[k], a.name):
                                img[self.index[r]] = img[self.index[r]] + c * tc
                    span.add(img)
            current = span.rows
        return not current

    def dims_of_projective(self, v: str) -> dict[str, int]:
        return {w: len(self._by_pair[(v, w)]) for w in self.quiver.vertices}


def algebra_basis(rs: RewriteSystem) -> AlgebraBasis:
    return AlgebraBasis(rs)


def build_algebra(p: AlgebraPresentation, degree_cap: int = 64) -> AlgebraBasis:
    """Complete, enumerate the basis, and confirm the arrow ideal is nilpotent."""
    basis = AlgebraBasis(complete_rewrite_system(p, degree_cap))
    if not basis.is_radical_nilpotent():
        raise NotAdmissible(
            "relations define a finite dimensional quotient whose arrow ideal is not nilpotent"
        )
    return basis


def cartan_matrix(b: AlgebraBasis) -> list[list[int]]:
    """Entry (i, j) counts normal-form paths from vertex j to vertex i."""
    vs = b.quiver.vertices
    return [[len(b.normal_forms(i, j)) for j in vs] for i in vs]


def multiply(b: AlgebraBasis, x: Sequence, y: Sequence) -> list:
    f = b.field
    out = [f.zero] * len(b.paths)
    for i, cx in enumerate(x):
        if not cx:
            continue
        for j, cy in enumerate(y):
            if not cy:
                continue
            for c, r in b.multiply_paths(b.paths[i], b.paths[j]):
                k = b.index[r]
                out[k] = out[k] + cx * cy * c
    return out


def corner_algebra(b: AlgebraBasis, vs: Iterable[str]) -> AlgebraBasis:
    """The algebra e Lambda e for e the sum of e_v over ``vs``.

    Requires every normal-form path between vertices of ``vs`` to stay
    inside ``vs``; otherwise SegmentViolation.
    """
    keep = set(vs)
    unknown = keep - set(b.quiver.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    for p in b.paths:
        if p.source in keep and p.target in keep:
            for n in p.arrows:
                a = b.quiver.arrow(n)
                if a.source not in keep or a.target not in keep:
                    raise SegmentViolation(f"normal-form path {p} leaves the vertex set {sorted(keep)}")
    sub = b.quiver.subquiver(keep)
    if sub == b.quiver:
        return b
    return AlgebraBasis(b.rewrite_system.restricted(sub))
