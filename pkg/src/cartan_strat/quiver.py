"""Quiver combinatorics: cycles, loops, quasi-sources, reachability and
linear orders compatible with it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class QuiverError(ValueError):
    pass


class ProperCycleError(QuiverError):
    """The quiver has an oriented cycle through two or more distinct vertices."""


class NotAPosetError(QuiverError):
    """The reachability preorder is not antisymmetric."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _by_name: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex identifiers must be pairwise distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow identifiers must be pairwise distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} has an undeclared endpoint")
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[tuple]) -> "Quiver":
        """``Quiver.build([1, 2], [("a", 1, 2)])`` with identifiers stringified."""
        return cls(
            tuple(str(v) for v in vertices),
            tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows),
        )

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def subquiver(self, vs: Iterable[str]) -> "Quiver":
        """Full subquiver on ``vs`` (declaration order kept)."""
        keep = set(vs)
        return Quiver(
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a.source in keep and a.target in keep),
        )

    def sinks(self) -> list[str]:
        """Vertices with no outgoing arrow at all (loops count as outgoing)."""
        return [v for v in self.vertices if not self.arrows_from(v)]


@dataclass(frozen=True)
class PathWord:
    """An oriented path, arrows listed in traversal order.

    The stationary path at ``v`` has no arrows and ``source == target == v``.
    """

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @classmethod
    def stationary(cls, v: str) -> "PathWord":
        return cls(v, v, ())

    @classmethod
    def from_arrows(cls, q: Quiver, arrows: Sequence[str]) -> "PathWord":
        if not arrows:
            raise QuiverError("a nonstationary path needs at least one arrow")
        first = q.arrow(arrows[0])
        end = first.target
        for name in arrows[1:]:
            a = q.arrow(name)
            if a.source != end:
                raise QuiverError(f"path {'.'.join(arrows)} is not composable at {name}")
            end = a.target
        return cls(first.source, end, tuple(arrows))

    def __str__(self):
        return ".".join(self.arrows) if self.arrows else f"e_{self.source}"


@dataclass(frozen=True)
class LinearOrder:
    """A total order on vertices, stored as the vertices listed by rank."""

    vertices: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("a linear order lists every vertex exactly once")

    def rank(self, v: str) -> int:
        """1-based position of ``v``."""
        return self.vertices.index(v) + 1

    def above(self, v: str) -> list[str]:
        return list(self.vertices[self.rank(v):])

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __str__(self):
        return "<".join(self.vertices)

    @classmethod
    def parse(cls, text: str) -> "LinearOrder":
        parts = [p.strip() for p in text.split("<")]
        if any(not p for p in parts):
            raise QuiverError(f"malformed order {text!r}")
        return cls(tuple(parts))

    def check_covers(self, q: Quiver) -> None:
        if set(self.vertices) != set(q.vertices) or len(self.vertices) != len(q.vertices):
            raise QuiverError(f"order {self} does not cover exactly the vertices {list(q.vertices)}")

    def restrict(self, vs: Iterable[str]) -> "LinearOrder":
        keep = set(vs)
        return LinearOrder(tuple(v for v in self.vertices if v in keep))


def _successors(q: Quiver, *, skip_loops: bool) -> dict[str, list[str]]:
    succ: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        if skip_loops and a.is_loop:
            continue
        if a.target not in succ[a.source]:
            succ[a.source].append(a.target)
    return succ


def proper_cycle_exists(q: Quiver) -> bool:
    """True iff some oriented cycle visits at least two distinct vertices."""
    succ = _successors(q, skip_loops=True)
    white, grey, black = 0, 1, 2
    colour = dict.fromkeys(q.vertices, white)
    for root in q.vertices:
        if colour[root] != white:
            continue
        colour[root] = grey
        stack = [(root, iter(succ[root]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                colour[v] = black
                stack.pop()
            elif colour[w] == grey:
                return True
            elif colour[w] == white:
                colour[w] = grey
                stack.append((w, iter(succ[w])))
    return False


def quasi_sources(q: Quiver, among: Iterable[str] | None = None) -> list[str]:
    """Vertices with no incoming arrow from a different vertex.

    With ``among`` the question is asked in the full subquiver on those
    vertices.  Results follow declaration order.
    """
    pool = set(q.vertices if among is None else among)
    hit = {a.target for a in q.arrows if not a.is_loop and a.source in pool and a.target in pool}
    return [v for v in q.vertices if v in pool and v not in hit]


def loop_count(q: Quiver, v: str) -> int:
    if v not in q.vertices:
        raise QuiverError(f"unknown vertex {v!r}")
    return sum(1 for a in q.arrows if a.source == v and a.target == v)


def reachability_preorder(q: Quiver) -> list[list[bool]]:
    """``m[i][j]`` is True iff an oriented path (length >= 0) runs from
    vertex i to vertex j, indices in declaration order."""
    n = len(q.vertices)
    idx = {v: i for i, v in enumerate(q.vertices)}
    succ = _successors(q, skip_loops=False)
    m = [[False] * n for _ in range(n)]
    for v in q.vertices:
        i = idx[v]
        m[i][i] = True
        stack = [v]
        while stack:
            u = stack.pop()
            for w in succ[u]:
                if not m[i][idx[w]]:
                    m[i][idx[w]] = True
                    stack.append(w)
    return m


def reaches(q: Quiver, v: str, w: str) -> bool:
    m = reachability_preorder(q)
    return m[q.index(v)][q.index(w)]


def is_antisymmetric(m: Sequence[Sequence[bool]]) -> bool:
    n = len(m)
    return not any(m[i][j] and m[j][i] for i in range(n) for j in range(i + 1, n))


def synthesize_weak_triangular_order(q: Quiver) -> LinearOrder:
    """Repeatedly extract a quasi-source of what remains.

    Ties go to the earliest declared vertex.  Every non-loop arrow then
    points upward in the resulting order.
    """
    remaining = list(q.vertices)
    ranked = []
    while remaining:
        qs = quasi_sources(q, remaining)
        if not qs:
            raise ProperCycleError("quiver has a proper oriented cycle; no weakly triangular order exists")
        ranked.append(qs[0])
        remaining.remove(qs[0])
    return LinearOrder(tuple(ranked))


@dataclass(frozen=True)
class Refinements:
    orders: tuple[LinearOrder, ...]
    truncated: bool

    def __iter__(self):
        return iter(self.orders)

    def __len__(self):
        return len(self.orders)


def linear_refinements(q: Quiver, limit: int = 1000) -> Refinements:
    """Linear orders extending the reachability order, lexicographic by
    declaration order, at most ``limit`` of them."""
    m = reachability_preorder(q)
    if not is_antisymmetric(m):
        raise NotAPosetError("reachability preorder is not antisymmetric (quiver has a proper cycle)")
    n = len(q.vertices)
    preds = [[i for i in range(n) if i != j and m[i][j]] for j in range(n)]
    out: list[LinearOrder] = []
    placed = [False] * n
    prefix: list[int] = []

    def extend() -> bool:
        # returns False once limit + 1 orders have been seen
        if len(prefix) == n:
            if len(out) == limit:
                return False
            out.append(LinearOrder(tuple(q.vertices[i] for i in prefix)))
            return True
        for j in range(n):
            if not placed[j] and all(placed[i] for i in preds[j]):
                placed[j] = True
                prefix.append(j)
                ok = extend()
                prefix.pop()
                placed[j] = False
                if not ok:
                    return False
        return True

    complete = extend()
    return Refinements(tuple(out), truncated=not complete)


def is_refinement(q: Quiver, order: LinearOrder) -> bool:
    m = reachability_preorder(q)
    for i, v in enumerate(q.vertices):
        for j, w in enumerate(q.vertices):
            if i != j and m[i][j] and order.rank(v) > order.rank(w):
                return False
    return True


def on_oriented_cycle(q: Quiver, v: str) -> bool:
    """True iff ``v`` lies on an oriented cycle, loops included."""
    if loop_count(q, v):
        return True
    m = reachability_preorder(q)
    i = q.index(v)
    return any(m[i][j] and m[j][i] for j in range(len(q.vertices)) if j != i)
