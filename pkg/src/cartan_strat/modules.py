"""Finite-dimensional left modules as quiver representations.

A module stores one coordinate space per vertex and, for each arrow
``a: u -> w``, a matrix from the u-space to the w-space acting on column
vectors.  A path ``a.b`` acts as ``M_b @ M_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import Subspace, apply, is_zero_matrix, matmul, nullspace, zeros
from .quiver import PathWord
from .rewriting import AlgebraBasis


class NotActionClosed(ValueError):
    pass


@dataclass(eq=False)
class ModuleRep:
    algebra: AlgebraBasis
    dims: dict
    actions: dict
    label: str = ""

    def __post_init__(self):
        q = self.algebra.quiver
        self.dims = {v: int(self.dims.get(v, 0)) for v in q.vertices}
        f = self.algebra.field
        acts = {}
        for a in q.arrows:
            m = self.actions.get(a.name)
            acts[a.name] = m if m is not None else zeros(f, self.dims[a.target], self.dims[a.source])
        self.actions = acts

    @property
    def field(self):
        return self.algebra.field

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.algebra.quiver.vertices

    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.vertices)

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dimension == 0

    def is_semisimple(self) -> bool:
        return all(is_zero_matrix(m) for m in self.actions.values())

    def path_matrix(self, arrows: Sequence[str], start: str) -> list:
        """Matrix of a path (traversal order) starting at ``start``."""
        f = self.field
        n = self.dims[start]
        mat = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
        for name in arrows:
            a = self.algebra.quiver.arrow(name)
            mat = matmul(f, self.actions[name], mat, inner=self.dims[a.source], cols=n)
        return mat

    def act(self, path: PathWord, vec: list) -> list:
        out = vec
        for name in path.arrows:
            out = apply(self.field, self.actions[name], out)
        return out

    def annihilates_relations(self) -> bool:
        """Every ideal generator acts as zero."""
        f = self.field
        for rel in self.algebra.relations():
            src, dst = rel[0][1].source, rel[0][1].target
            total = zeros(f, self.dims[dst], self.dims[src])
            for c, w in rel:
                m = self.path_matrix(w.arrows, src)
                total = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(total, m)]
            if not is_zero_matrix(total):
                return False
        return True

    def same_data(self, other: "ModuleRep") -> bool:
        return self.dims == other.dims and all(
            self.actions[a] == other.actions[a] for a in self.actions
        )

    def __repr__(self):
        return f"ModuleRep({self.label or '?'}, dims={self.dimension_vector()})"


def zero_module(b: AlgebraBasis, label: str = "0") -> ModuleRep:
    return ModuleRep(b, {}, {}, label)


def projective(b: AlgebraBasis, v: str) -> ModuleRep:
    dims = b.dims_of_projective(v)
    actions = {a.name: b.arrow_actions[(a.name, v)] for a in b.quiver.arrows}
    return ModuleRep(b, dims, actions, f"P({v})")


def simple(b: AlgebraBasis, v: str) -> ModuleRep:
    if v not in b.quiver.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    return ModuleRep(b, {v: 1}, {}, f"S({v})")


@dataclass(eq=False)
class Submodule:
    """An action-closed family of subspaces of ``ambient``.

    ``module`` is the induced module on the echelon bases of the spaces and
    ``inclusion[v]`` has those basis vectors as columns.
    """

    ambient: ModuleRep
    spaces: dict
    module: ModuleRep = field(init=False)
    inclusion: dict = field(init=False)

    def __post_init__(self):
        m = self.ambient
        f = m.field
        dims = {v: self.spaces[v].dimension for v in m.vertices}
        actions = {}
        for a in m.algebra.quiver.arrows:
            src, dst = self.spaces[a.source], self.spaces[a.target]
            mat = zeros(f, dims[a.target], dims[a.source])
            for j, row in enumerate(src.rows):
                img = apply(f, m.actions[a.name], row)
                if img not in dst:
                    raise NotActionClosed(f"arrow {a.name} leaves the subspace")
                for i, c in enumerate(dst.coordinates(img)):
                    mat[i][j] = c
            actions[a.name] = mat
        self.module = ModuleRep(m.algebra, dims, actions, f"sub({m.label})")
        self.inclusion = {
            v: [[row[i] for row in self.spaces[v].rows] for i in range(m.dims[v])] for v in m.vertices
        }

    @property
    def dims(self) -> dict:
        return self.module.dims

    @property
    def dimension(self) -> int:
        return self.module.dimension


def _close(m: ModuleRep, gens: Iterable[tuple[str, list]]) -> dict:
    f = m.field
    spaces = {v: Subspace(f, m.dims[v]) for v in m.vertices}
    out_arrows = {v: m.algebra.quiver.arrows_from(v) for v in m.vertices}
    stack = list(gens)
    while stack:
        v, vec = stack.pop()
        if spaces[v].add(vec):
            for a in out_arrows[v]:
                stack.append((a.target, apply(f, m.actions[a.name], vec)))
    return spaces


def submodule_generated(m: ModuleRep, gens: Iterable[tuple[str, list]]) -> Submodule:
    """Smallest submodule containing the vertex-homogeneous generators
    ``(vertex, vector)``."""
    gens = list(gens)
    for v, vec in gens:
        if len(vec) != m.dims[v]:
            raise ValueError(f"generator at {v} has length {len(vec)}, expected {m.dims[v]}")
    return Submodule(m, _close(m, gens))


def _unit(f, n: int, i: int) -> list:
    return [f.one if k == i else f.zero for k in range(n)]


def trace(m: ModuleRep, vs: Iterable[str]) -> Submodule:
    """Trace of the projectives at ``vs``: generated by those components."""
    f = m.field
    gens = [(v, _unit(f, m.dims[v], i)) for v in vs for i in range(m.dims[v])]
    return submodule_generated(m, gens)


def quotient(m: ModuleRep, sub: Submodule) -> ModuleRep:
    """Quotient on the non-pivot unit vectors of each subspace."""
    if sub.ambient is not m:
        raise ValueError("submodule belongs to a different module")
    f = m.field
    spaces = sub.spaces
    for a in m.algebra.quiver.arrows:
        for row in spaces[a.source].rows:
            if apply(f, m.actions[a.name], row) not in spaces[a.target]:
                raise NotActionClosed(f"arrow {a.name} does not preserve the subspace")
    comp = {v: spaces[v].complement_indices() for v in m.vertices}
    dims = {v: len(comp[v]) for v in m.vertices}
    actions = {}
    for a in m.algebra.quiver.arrows:
        mat = zeros(f, dims[a.target], dims[a.source])
        for j, k in enumerate(comp[a.source]):
            img = [row[k] for row in m.actions[a.name]]
            for i, c in enumerate(spaces[a.target].quotient_coordinates(img)):
                mat[i][j] = c
        actions[a.name] = mat
    return ModuleRep(m.algebra, dims, actions, f"{m.label}/sub")


def radical(m: ModuleRep) -> Submodule:
    gens = []
    for a in m.algebra.quiver.arrows:
        mat = m.actions[a.name]
        for j in range(m.dims[a.source]):
            gens.append((a.target, [row[j] for row in mat]))
    return submodule_generated(m, gens)


def top(m: ModuleRep) -> ModuleRep:
    t = quotient(m, radical(m))
    t.label = f"top({m.label})"
    return t


def direct_sum(mods: Sequence[ModuleRep], b: AlgebraBasis | None = None) -> ModuleRep:
    if not mods:
        if b is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_module(b)
    b = mods[0].algebra
    f = b.field
    dims = {v: sum(m.dims[v] for m in mods) for v in b.quiver.vertices}
    actions = {}
    for a in b.quiver.arrows:
        mat = zeros(f, dims[a.target], dims[a.source])
        r0 = c0 = 0
        for m in mods:
            block = m.actions[a.name]
            for i, row in enumerate(block):
                for j, x in enumerate(row):
                    mat[r0 + i][c0 + j] = x
            r0 += m.dims[a.target]
            c0 += m.dims[a.source]
        actions[a.name] = mat
    return ModuleRep(b, dims, actions, " + ".join(m.label for m in mods))


@dataclass(eq=False)
class ProjectiveCover:
    cover: ModuleRep
    summands: list  # vertex of each indecomposable summand, in order
    surjection: dict  # vertex -> matrix cover_v -> m_v
    kernel: Submodule


def projective_cover(m: ModuleRep) -> ProjectiveCover:
    """Cover by lifting the unit vectors complementary to the radical."""
    if m.is_zero():
        raise ValueError("the zero module has no nonzero projective cover")
    b = m.algebra
    f = m.field
    rad = radical(m)
    gens = [(v, _unit(f, m.dims[v], k)) for v in m.vertices for k in rad.spaces[v].complement_indices()]
    pieces = [projective(b, v) for v, _ in gens]
    cover = direct_sum(pieces)
    surj = {w: [[f.zero] * cover.dims[w] for _ in range(m.dims[w])] for w in m.vertices}
    offset = dict.fromkeys(m.vertices, 0)
    for (v, vec), piece in zip(gens, pieces):
        for w in m.vertices:
            for p in b.paths_between(v, w):
                img = m.act(p, vec)
                col = offset[w] + b.local_index(p)
                for i, x in enumerate(img):
                    surj[w][i][col] = x
            offset[w] += piece.dims[w]
    kernel_gens = [(w, vec) for w in m.vertices for vec in nullspace(f, surj[w], cover.dims[w])]
    kernel = submodule_generated(cover, kernel_gens)
    return ProjectiveCover(cover, [v for v, _ in gens], surj, kernel)


@dataclass(frozen=True)
class Finite:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class AtLeast:
    value: int

    def __str__(self):
        return f">={self.value}"


@dataclass(frozen=True)
class Infinite:
    reason: str = ""

    def __str__(self):
        return "infinite"


@dataclass(eq=False)
class Resolution:
    """Bounded minimal projective resolution.

    ``steps[k]`` is the projective cover of the k-th syzygy.  ``repeat``
    holds ``(j, k)`` when syzygy k was recognized as having the same
    projective dimension as syzygy j < k; since k - j more steps cannot
    shorten a finite resolution, the dimension is infinite.
    """

    module: ModuleRep
    steps: list
    syzygies: list
    verdict: object
    repeat: tuple | None = None


def _same_syzygy(x: ModuleRep, y: ModuleRep) -> bool:
    """Sufficient test for equal projective dimension of two syzygies.

    Semisimple modules with the same support have the same projective
    dimension whatever the multiplicities; otherwise exact equality of the
    action data is required.
    """
    if x.is_zero() or y.is_zero():
        return False
    if x.is_semisimple() and y.is_semisimple():
        return {v for v, d in x.dims.items() if d} == {v for v, d in y.dims.items() if d}
    return x.same_data(y)


def resolve(m: ModuleRep, cap: int = 16) -> Resolution:
    """Iterate projective covers until a kernel vanishes, a syzygy repeats,
    or ``cap`` covers have been taken."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if m.is_zero():
        raise ValueError("projective dimension of the zero module is undefined")
    steps, syz = [], [m]
    for k in range(cap):
        pc = projective_cover(syz[-1])
        steps.append(pc)
        nxt = pc.kernel.module
        if nxt.is_zero():
            return Resolution(m, steps, syz, Finite(k))
        syz.append(nxt)
        for j in range(len(syz) - 1):
            if _same_syzygy(syz[j], nxt):
                return Resolution(m, steps, syz, AtLeast(cap), (j, len(syz) - 1))
    return Resolution(m, steps, syz, AtLeast(cap))


def projective_dimension(m: ModuleRep, cap: int = 16):
    """``Finite(d)`` or ``AtLeast(cap)``."""
    return resolve(m, cap).verdict


def certified_projective_dimension(m: ModuleRep, cap: int = 16):
    """Like :func:`projective_dimension` but reports ``Infinite`` when a
    syzygy repeat was found."""
    res = resolve(m, cap)
    if res.repeat is not None:
        j, k = res.repeat
        return Infinite(f"syzygy {k} repeats syzygy {j}")
    return res.verdict
