"""Random instance generators and brute-force oracles shared by the tests."""

from __future__ import annotations

import os
import random
from fractions import Fraction

from cartan_strat.fields import FieldSpec
from cartan_strat.linalg import rank
from cartan_strat.presentation import AlgebraPresentation, Relation
from cartan_strat.quiver import Arrow, PathWord, Quiver

SEED = int(os.environ.get("CARTAN_STRAT_SEED", "20261015"))


def rng(salt: int = 0) -> random.Random:
    return random.Random(SEED * 1000003 + salt)


def all_paths(q: Quiver, max_len: int) -> list[PathWord]:
    """Every path of length 0..max_len, stationary paths included."""
    out = [PathWord.stationary(v) for v in q.vertices]
    frontier = [p for p in out]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for a in q.arrows_from(p.target):
                nxt.append(PathWord(p.source, a.target, p.arrows + (a.name,)))
        out += nxt
        frontier = nxt
    return out


def paths_of_length(q: Quiver, n: int) -> list[PathWord]:
    return [p for p in all_paths(q, n) if p.length == n]


def concat(p: PathWord, r: PathWord) -> PathWord:
    return PathWord(p.source, r.target, p.arrows + r.arrows)


def oracle_block_dims(p: AlgebraPresentation, truncation: int) -> dict:
    """dim e_i (kQ/I) e_j by linear algebra over all paths shorter than
    ``truncation``, assuming every path of that length lies in I."""
    q = p.quiver
    f = p.field
    short = [x for x in all_paths(q, truncation - 1)]
    out = {}
    for i in q.vertices:
        for j in q.vertices:
            block = [x for x in short if x.source == j and x.target == i]
            index = {x: k for k, x in enumerate(block)}
            rows = []
            for rel in p.all_relations():
                for u in all_paths(q, truncation - 2):
                    if u.source != j or u.target != rel.source:
                        continue
                    for w in all_paths(q, truncation - 2 - u.length):
                        if w.source != rel.target or w.target != i:
                            continue
                        vec = [f.zero] * len(block)
                        for c, t in rel.terms:
                            full = concat(concat(u, t), w)
                            if full.length < truncation:
                                vec[index[full]] = vec[index[full]] + c
                        if any(vec):
                            rows.append(vec)
            out[(i, j)] = len(block) - (rank(f, rows) if rows else 0)
    return out


def random_quiver(r: random.Random, n_vertices: int, n_arrows: int, *, loops=True, acyclic=False) -> Quiver:
    vs = [str(k + 1) for k in range(n_vertices)]
    arrows = []
    for k in range(n_arrows):
        s = r.randrange(n_vertices)
        t = r.randrange(n_vertices)
        if acyclic:
            if s == t:
                continue
            s, t = min(s, t), max(s, t)
        elif s == t and not loops:
            continue
        arrows.append(Arrow(f"x{k}", vs[s], vs[t]))
    return Quiver(tuple(vs), tuple(arrows))


def random_binomial_presentation(r: random.Random, field: FieldSpec) -> tuple[AlgebraPresentation, int]:
    """At most 3 vertices, relations of degree at most 3, and every path of
    the returned truncation length killed explicitly."""
    q = random_quiver(r, r.randint(1, 3), r.randint(1, 3))
    k = r.randint(3, 4)
    rels = [Relation(((field.one, w),)) for w in paths_of_length(q, k)]
    candidates = [x for x in all_paths(q, 3) if x.length >= 2]
    for _ in range(r.randint(0, 3)):
        if not candidates:
            break
        w = r.choice(candidates)
        parallel = [x for x in candidates if (x.source, x.target) == (w.source, w.target) and x != w]
        terms = [(field(r.choice([1, -1, 2, Fraction(1, 2)])), w)]
        if parallel and r.random() < 0.7:
            terms.append((field(r.choice([1, -1, 3])), r.choice(parallel)))
        try:
            rels.append(Relation(tuple(terms)))
        except ValueError:
            pass
    return AlgebraPresentation(q, field, tuple(rels)), k


def random_monomial_presentation(r: random.Random, max_vertices: int = 5) -> AlgebraPresentation:
    """A finite dimensional monomial algebra on at most ``max_vertices``."""
    n = r.randint(1, max_vertices)
    acyclic = r.random() < 0.35
    q = random_quiver(r, n, r.randint(0, n + 2), acyclic=acyclic)
    one = Fraction(1)
    rels = []
    if not acyclic or r.random() < 0.5:
        k = r.randint(2, 4)
        rels += [Relation(((one, w),)) for w in paths_of_length(q, k)]
        extra = [x for x in all_paths(q, k - 1) if x.length >= 2]
        for w in r.sample(extra, min(len(extra), r.randint(0, 2))):
            rels.append(Relation(((one, w),)))
    else:
        extra = [x for x in all_paths(q, 3) if x.length >= 2]
        for w in r.sample(extra, min(len(extra), r.randint(0, 2))):
            rels.append(Relation(((one, w),)))
    return AlgebraPresentation(q, FieldSpec(0), tuple(rels))


def random_acyclic_free_presentation(r: random.Random, max_vertices: int = 5) -> AlgebraPresentation:
    n = r.randint(1, max_vertices)
    q = random_quiver(r, n, r.randint(0, n + 2), acyclic=True)
    return AlgebraPresentation(q, FieldSpec(0), ())


def random_rad2_presentation(r: random.Random, max_vertices: int = 6, *, allow_cycles=False, max_arrows=None):
    n = r.randint(1, max_vertices)
    limit = max_arrows if max_arrows is not None else n + 2
    arrows = []
    for k in range(r.randint(0, limit)):
        s = r.randrange(n)
        t = r.randrange(n)
        if not allow_cycles and s != t:
            s, t = min(s, t), max(s, t)
        arrows.append(Arrow(f"x{k}", str(s + 1), str(t + 1)))
    # loops at a random subset, sometimes at quasi-sources only
    for v in range(n):
        if r.random() < 0.25:
            arrows.append(Arrow(f"l{v}", str(v + 1), str(v + 1)))
    perm = list(range(n))
    r.shuffle(perm)
    vs = tuple(str(perm[k] + 1) for k in range(n))
    q = Quiver(vs, tuple(arrows))
    return AlgebraPresentation(q, FieldSpec(0), (), None, True)
