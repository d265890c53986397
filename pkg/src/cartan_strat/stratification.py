"""Standard modules, Delta-Cartan matrices and stratification predicates.

Matrices produced here are indexed by rank in the given order: row and
column ``r`` refer to the vertex ``order.vertices[r]``.

Delta-filtration test.  Work down the order.  At the current top vertex n
let U be the submodule generated by the n-component.  The standard
modules below n have no composition factor at n, so in any filtration by
standard modules the Delta(n)-layers make up exactly U, and U must be a
direct sum of copies of Delta(n).  U is generated by its n-component, so
it is a quotient of Delta(n)^r with r = dim top(U); the two are isomorphic
iff the dimensions agree.  The quotient by U is a module over the algebra
with vertex n removed, where the standard modules below n are unchanged,
so the test recurses on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .lattice import AbelianGroup, cokernel, group_exponent, group_order, is_diagonal
from .modules import (
    Infinite,
    ModuleRep,
    certified_projective_dimension,
    direct_sum,
    projective,
    quotient,
    simple,
    top,
    trace,
)
from .presentation import AlgebraPresentation
from .quiver import (
    LinearOrder,
    PathWord,
    Quiver,
    is_refinement,
    loop_count,
    on_oriented_cycle,
    proper_cycle_exists,
    quasi_sources,
    reachability_preorder,
)
from .rewriting import AlgebraBasis, build_algebra, corner_algebra


class NotWeaklyTriangular(ValueError):
    pass


class NotRadicalSquareZero(ValueError):
    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(message)


def _check_order(b: AlgebraBasis, order: LinearOrder) -> None:
    order.check_covers(b.quiver)


def standard_module(b: AlgebraBasis, order: LinearOrder, i: str) -> ModuleRep:
    """P(i) modulo the trace of the projectives above i."""
    _check_order(b, order)
    p = projective(b, i)
    d = quotient(p, trace(p, order.above(i)))
    d.label = f"Delta({i})"
    return d


def standard_modules(b: AlgebraBasis, order: LinearOrder) -> dict[str, ModuleRep]:
    return {v: standard_module(b, order, v) for v in order}


def cartan_in_order(b: AlgebraBasis, order: LinearOrder) -> list[list[int]]:
    return [[len(b.normal_forms(i, j)) for j in order] for i in order]


def delta_cartan_matrix(b: AlgebraBasis, order: LinearOrder, deltas: dict | None = None) -> list[list[int]]:
    """Entry (r, s) is the dimension at ``order[r]`` of Delta(order[s])."""
    deltas = deltas or standard_modules(b, order)
    return [[deltas[j].dims[i] for j in order] for i in order]


@dataclass
class FiltrationResult:
    holds: bool
    multiplicities: dict = field(default_factory=dict)
    failing_vertex: Optional[str] = None
    detail: str = ""

    def __bool__(self):
        return self.holds


def is_delta_filtered(
    b: AlgebraBasis, order: LinearOrder, m: ModuleRep, deltas: dict | None = None
) -> FiltrationResult:
    deltas = deltas or standard_modules(b, order)
    current = m
    mult = {}
    for n in reversed(order.vertices):
        u = trace(current, [n])
        r = top(u.module).dims[n]
        need = r * deltas[n].dimension
        if u.dimension != need:
            return FiltrationResult(
                False,
                mult,
                n,
                f"trace at {n} has dimension {u.dimension}, but {r} copies of Delta({n}) have dimension {need}",
            )
        mult[n] = r
        current = quotient(current, u)
        if current.dims[n]:
            return FiltrationResult(False, mult, n, f"quotient keeps a component at {n}")
    return FiltrationResult(True, {v: mult[v] for v in order})


def is_standardly_stratified(b: AlgebraBasis, order: LinearOrder, deltas: dict | None = None) -> bool:
    deltas = deltas or standard_modules(b, order)
    return all(is_delta_filtered(b, order, projective(b, v), deltas).holds for v in order)


def is_weakly_triangular(b: AlgebraBasis, order: LinearOrder) -> bool:
    """No nonzero normal-form path runs from a higher to a lower vertex."""
    _check_order(b, order)
    vs = order.vertices
    return not any(b.normal_forms(vs[r], vs[s]) for r in range(len(vs)) for s in range(r + 1, len(vs)))


def end_dimensions(deltas: dict) -> dict[str, int]:
    """[Delta(i) : S_i], the dimension of End Delta(i) for these algebras."""
    return {v: d.dims[v] for v, d in deltas.items()}


def is_quasi_hereditary(b: AlgebraBasis, order: LinearOrder, deltas: dict | None = None) -> bool:
    deltas = deltas or standard_modules(b, order)
    return is_standardly_stratified(b, order, deltas) and all(x == 1 for x in end_dimensions(deltas).values())


@dataclass
class IdentityCheck:
    name: str
    holds: bool
    lhs: Any
    rhs: Any

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs)}


def _jsonable(x):
    if isinstance(x, AbelianGroup):
        return x.to_dict()
    if isinstance(x, float) and math.isinf(x):
        return "infinite"
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class StratificationReport:
    order: LinearOrder
    standard_dims: dict
    delta_cartan: list
    cartan: list
    cartan_group: AbelianGroup
    delta_group: AbelianGroup
    flags: dict
    end_dims: dict
    identity_checks: list
    certificate: Any = None
    total_dimension: int = 0
    simple_pd: dict = field(default_factory=dict)
    caveats: list = field(default_factory=list)

    @property
    def standardly_stratified(self) -> bool:
        return self.flags["standardly_stratified"]

    @property
    def all_checks_hold(self) -> bool:
        return all(c.holds for c in self.identity_checks)

    def to_dict(self) -> dict:
        return {
            "order": list(self.order.vertices),
            "total_dimension": self.total_dimension,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "cartan": self.cartan,
            "delta_cartan": self.delta_cartan,
            "standard_dims": {v: list(d) for v, d in self.standard_dims.items()},
            "end_dims": dict(self.end_dims),
            "cartan_group": self.cartan_group.to_dict(),
            "cartan_group_order": _jsonable(group_order(self.cartan_group)),
            "cartan_group_exponent": _jsonable(group_exponent(self.cartan_group)),
            "delta_cartan_group": self.delta_group.to_dict(),
            "flags": dict(self.flags),
            "identity_checks": [c.to_dict() for c in self.identity_checks],
            "simple_pd": dict(self.simple_pd),
            "caveats": list(self.caveats),
        }


def analyze(b: AlgebraBasis, order: LinearOrder, pd_cap: int | None = None) -> StratificationReport:
    _check_order(b, order)
    deltas = standard_modules(b, order)
    c = cartan_in_order(b, order)
    cd = delta_cartan_matrix(b, order, deltas)
    g = cokernel(c)
    gd = cokernel(cd)
    ss = is_standardly_stratified(b, order, deltas)
    wt = is_weakly_triangular(b, order)
    ends = end_dimensions(deltas)
    diag = is_diagonal(cd)
    qh = ss and all(x == 1 for x in ends.values())
    flags = {
        "standardly_stratified": ss,
        "weakly_triangular": wt,
        "quasi_hereditary": qh,
        "delta_cartan_diagonal": diag,
    }
    checks = [IdentityCheck("delta_cartan_diagonal_iff_weakly_triangular", diag == wt, diag, wt)]
    if ss:
        product = math.prod(ends.values())
        order_g = group_order(g)
        checks.append(IdentityCheck("cartan_group_equals_delta_cokernel", g == gd, g, gd))
        checks.append(IdentityCheck("group_order_equals_end_product", order_g == product, order_g, product))
        if diag:
            dims = [deltas[v].dimension for v in order]
            predicted = AbelianGroup.from_cyclic_orders(dims)
            checks.append(IdentityCheck("cartan_group_equals_sum_of_cyclic", g == predicted, g, predicted))
        checks.append(IdentityCheck("quasi_hereditary_iff_group_trivial", qh == g.is_trivial, qh, g.is_trivial))
        exp = group_exponent(g)
        ok = exp != math.inf and all(exp % d == 0 for d in ends.values())
        checks.append(IdentityCheck("exponent_multiple_of_end_dims", ok, exp, list(ends.values())))
    simple_pd = {}
    caveats = [
        "Membership of all finite projective dimension modules in the Delta-filtered class is not decided; "
        "only projective dimensions of simples are reported as evidence."
    ]
    if pd_cap is not None:
        for v in order:
            simple_pd[v] = str(certified_projective_dimension(simple(b, v), pd_cap))
    return StratificationReport(
        order=order,
        standard_dims={v: deltas[v].dimension_vector() for v in order},
        delta_cartan=cd,
        cartan=c,
        cartan_group=g,
        delta_group=gd,
        flags=flags,
        end_dims=ends,
        identity_checks=checks,
        certificate=b.rewrite_system.certificate,
        total_dimension=b.total_dimension,
        simple_pd=simple_pd,
        caveats=caveats,
    )


@dataclass
class CornerSummary:
    vertices: tuple
    dimension: int
    standardly_stratified: bool
    delta_cartan: list
    delta_cartan_diagonal: bool

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "dimension": self.dimension,
            "standardly_stratified": self.standardly_stratified,
            "delta_cartan": self.delta_cartan,
            "delta_cartan_diagonal": self.delta_cartan_diagonal,
        }


@dataclass
class BlockSplitReport:
    split: int
    lower: CornerSummary
    upper: CornerSummary
    bimodule_dims: tuple
    bimodule_filtered: bool
    whole_condition: bool  # SS with diagonal Delta-Cartan matrix
    split_condition: bool  # both corners SS and diagonal, bimodule filtered

    @property
    def passes(self) -> bool:
        return self.whole_condition == self.split_condition

    def to_dict(self) -> dict:
        return {
            "split": self.split,
            "lower": self.lower.to_dict(),
            "upper": self.upper.to_dict(),
            "bimodule_dims": list(self.bimodule_dims),
            "bimodule_filtered": self.bimodule_filtered,
            "whole_condition": self.whole_condition,
            "split_condition": self.split_condition,
            "passes": self.passes,
        }


def _corner_summary(b: AlgebraBasis, order: LinearOrder) -> tuple[CornerSummary, dict]:
    deltas = standard_modules(b, order)
    cd = delta_cartan_matrix(b, order, deltas)
    ss = is_standardly_stratified(b, order, deltas)
    return CornerSummary(tuple(order.vertices), b.total_dimension, ss, cd, is_diagonal(cd)), deltas


def bimodule(b: AlgebraBasis, upper: AlgebraBasis, lower_vertices) -> ModuleRep:
    """Span of normal-form paths from lower to upper vertices, as a module
    over the upper corner algebra."""
    uq = upper.quiver
    parts = []
    for v in lower_vertices:
        dims = {w: len(b.paths_between(v, w)) for w in uq.vertices}
        actions = {a.name: b.arrow_actions[(a.name, v)] for a in uq.arrows}
        parts.append((dims, actions))
    mods = [ModuleRep(upper, d, a, "") for d, a in parts]
    m = direct_sum(mods, upper)
    m.label = "M"
    return m


def block_split_check(b: AlgebraBasis, order: LinearOrder, i: int) -> BlockSplitReport:
    """Compare the whole algebra with its two corners at split rank ``i``."""
    _check_order(b, order)
    n = len(order)
    if not 1 <= i < n:
        raise ValueError(f"split index must lie in [1, {n - 1}], got {i}")
    if not is_weakly_triangular(b, order):
        raise NotWeaklyTriangular(f"order {order} is not weakly triangular")
    low = order.vertices[:i]
    high = order.vertices[i:]
    sigma = corner_algebra(b, low)
    gamma = corner_algebra(b, high)
    lower, _ = _corner_summary(sigma, order.restrict(low))
    upper, gamma_deltas = _corner_summary(gamma, order.restrict(high))
    m = bimodule(b, gamma, low)
    filtered = is_delta_filtered(gamma, order.restrict(high), m, gamma_deltas).holds if not m.is_zero() else True
    deltas = standard_modules(b, order)
    whole = is_standardly_stratified(b, order, deltas) and is_diagonal(delta_cartan_matrix(b, order, deltas))
    split = (
        lower.standardly_stratified
        and lower.delta_cartan_diagonal
        and upper.standardly_stratified
        and upper.delta_cartan_diagonal
        and filtered
    )
    return BlockSplitReport(i, lower, upper, m.dimension_vector(), filtered, whole, split)


# ---------------------------------------------------------------------------
# radical square zero


SS_FOR_EVERY_REFINEMENT = "SSForEveryRefinement"
SS_FOR_NO_REFINEMENT = "SSForNoRefinement"


@dataclass
class Rad2Classification:
    eligible: bool
    no_proper_cycles: bool
    loops_only_at_quasi_sources: bool
    verdict: str
    loops: dict
    predicted_delta_diagonal: Optional[list] = None
    predicted_group: Optional[AbelianGroup] = None
    sink_free: bool = False
    order: Optional[LinearOrder] = None
    order_is_refinement: Optional[bool] = None
    order_standardly_stratified: Optional[bool] = None
    predicted_group_order: Optional[int] = None
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "eligible": self.eligible,
            "no_proper_cycles": self.no_proper_cycles,
            "loops_only_at_quasi_sources": self.loops_only_at_quasi_sources,
            "verdict": self.verdict,
            "loops": dict(self.loops),
            "predicted_delta_diagonal": self.predicted_delta_diagonal,
            "predicted_group": self.predicted_group.to_dict() if self.predicted_group else None,
            "sink_free": self.sink_free,
            "order": list(self.order.vertices) if self.order else None,
            "order_is_refinement": self.order_is_refinement,
            "order_standardly_stratified": self.order_standardly_stratified,
            "predicted_group_order": self.predicted_group_order,
            "warnings": list(self.warnings),
        }


def _length_two_paths(q: Quiver):
    for a in q.arrows:
        for c in q.arrows_from(a.target):
            yield a, c


def radical_square_zero_algebra(p: AlgebraPresentation, degree_cap: int = 64) -> AlgebraBasis:
    """Build the algebra and confirm every path of length two vanishes."""
    q = p.quiver
    try:
        b = build_algebra(p, degree_cap)
    except ValueError as exc:
        first = next(_length_two_paths(q), None)
        name = f"{first[0].name}.{first[1].name}" if first else None
        raise NotRadicalSquareZero(f"not radical square zero: {exc}", name) from None
    for a, c in _length_two_paths(q):
        if b.rewrite_system.normal_form(PathWord(a.source, c.target, (a.name, c.name))):
            raise NotRadicalSquareZero(f"path {a.name}.{c.name} is nonzero modulo the relations", f"{a.name}.{c.name}")
    return b


def classify_rad_square_zero(
    p: AlgebraPresentation, order: LinearOrder | None = None, degree_cap: int = 64
) -> Rad2Classification:
    """Graph classification of a radical square zero algebra.

    Every refinement of the reachability order is standardly stratified
    exactly when the quiver has no proper oriented cycle and loops sit only
    at quasi-sources; otherwise none is.  Orders outside the refinements are
    not covered by the verdict.
    """
    b = radical_square_zero_algebra(p, degree_cap)
    q = p.quiver
    loops = {v: loop_count(q, v) for v in q.vertices}
    acyclic = not proper_cycle_exists(q)
    qs = set(quasi_sources(q))
    loops_ok = all(v in qs for v, n in loops.items() if n)
    every = acyclic and loops_ok
    out = Rad2Classification(
        eligible=True,
        no_proper_cycles=acyclic,
        loops_only_at_quasi_sources=loops_ok,
        verdict=SS_FOR_EVERY_REFINEMENT if every else SS_FOR_NO_REFINEMENT,
        loops=loops,
        sink_free=not q.sinks(),
    )
    if every:
        out.predicted_delta_diagonal = [1 + loops[v] for v in q.vertices]
        out.predicted_group = AbelianGroup.from_cyclic_orders(out.predicted_delta_diagonal)
    out.warnings.append(
        "The verdict covers refinements of the reachability order only; other orders may still be "
        "standardly stratified (for an arrow 1 -> 2 with a loop at 2, the order 2 < 1 is)."
    )
    if order is not None:
        order.check_covers(q)
        out.order = order
        out.order_is_refinement = acyclic and is_refinement(q, order)
        out.order_standardly_stratified = is_standardly_stratified(b, order)
        if not out.order_is_refinement:
            out.warnings.append(f"Order {order} is not a refinement of the reachability order.")
        if out.sink_free and out.order_standardly_stratified:
            out.predicted_group_order = math.prod(len(b.normal_forms(v, v)) for v in q.vertices)
    return out


def pd_infinite_on_cycle(q: Quiver, v: str) -> bool:
    """Cycle criterion: S(v) has infinite projective dimension when v lies
    on an oriented cycle (loops included) of a radical square zero algebra."""
    return on_oriented_cycle(q, v)


def reaches_oriented_cycle(q: Quiver, v: str) -> bool:
    """Whether some oriented cycle is reachable from ``v`` (v itself allowed)."""
    m = reachability_preorder(q)
    i = q.index(v)
    return any(m[i][q.index(w)] and on_oriented_cycle(q, w) for w in q.vertices)


def rad2_simple_pd(b: AlgebraBasis, v: str, cap: int = 16):
    """Projective dimension of S(v) over a radical square zero algebra.

    The first syzygy of S(v) is the direct sum of S(w) over arrows v -> w,
    so the dimension is infinite exactly when a cycle is reachable from v;
    otherwise the bounded resolution finishes.
    """
    if reaches_oriented_cycle(b.quiver, v):
        return Infinite("an oriented cycle is reachable")
    return certified_projective_dimension(simple(b, v), cap)
