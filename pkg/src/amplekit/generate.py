"""Concept-class generators and the batch experiment driver."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import core, graph, shatter
from .core import ConceptClass, Cube, bits_of, full_mask, mask_of, popcount
from .errors import ContractError


def cube_class(n: int) -> ConceptClass:
    return ConceptClass(n, tuple(range(1 << n)))


def hamming_ball(n: int, d: int) -> ConceptClass:
    """All concepts of weight at most d; maximum of VC-dimension d."""
    if not 0 <= d <= n:
        raise ContractError(f"radius {d} outside 0..{n}")
    return ConceptClass(n, tuple(c for c in range(1 << n) if popcount(c) <= d))


def simplicial_class(n: int, facets) -> ConceptClass:
    """Characteristic vectors of all faces of the complex generated by the
    given facets (coordinate sets): a bouquet of cubes glued at the origin."""
    members = {0}
    for f in facets:
        if f & ~full_mask(n):
            raise ContractError("facet outside domain")
        sub = f
        while sub:
            members.add(sub)
            sub = (sub - 1) & f
    return ConceptClass(n, tuple(members))


def random_ample(n: int, size: int, seed: int,
                 max_dim: Optional[int] = None) -> ConceptClass:
    """Grow an ample class one concept at a time, keeping each stage isometric
    (which keeps it ample and makes the construction order a corner peeling
    in reverse).  max_dim additionally caps the VC dimension."""
    if size < 1 or size > 1 << n:
        raise ContractError("size out of range")
    rng = random.Random(seed)
    start = rng.randrange(1 << n)
    chosen = [start]
    cset = {start}
    while len(chosen) < size:
        frontier = sorted({c ^ b for c in chosen for b in bits_of(full_mask(n))
                           if c ^ b not in cset})
        rng.shuffle(frontier)
        placed = False
        for t in frontier:
            cand = ConceptClass(n, tuple(chosen) + (t,))
            if not graph.is_isometric(cand, "full"):
                continue
            if max_dim is not None and shatter.vc_dim(cand) > max_dim:
                continue
            chosen.append(t)
            cset.add(t)
            placed = True
            break
        if not placed:
            break  # saturated under the dimension cap
    return ConceptClass(n, tuple(chosen))


def random_downset_class(n: int, seed: int) -> ConceptClass:
    """Down-sets of a random partial order on the coordinates: closed under
    intersection and union, contains the empty set, and every member is
    generated by its extremal points."""
    rng = random.Random(seed)
    below = [0] * (n + 1)       # below[x] = coordinates strictly below x
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for idx, x in enumerate(order):
        for y in order[:idx]:
            if rng.random() < 0.4:
                below[x] |= core.bit(y) | below[y]
    downsets = [0]
    for c in range(1, 1 << n):
        if all(below[x] & ~c == 0 for x in core.coords(c)):
            downsets.append(c)
    return ConceptClass(n, tuple(downsets))


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int = 0
    d: int = 0
    size: int = 0
    seed: int = 0
    facets: tuple = ()
    factors: tuple = ()   # for kind="product": two GeneratorSpecs


def generate(spec: GeneratorSpec) -> ConceptClass:
    if spec.kind == "cube":
        return cube_class(spec.n)
    if spec.kind == "hamming_ball":
        return hamming_ball(spec.n, spec.d)
    if spec.kind == "simplicial":
        return simplicial_class(spec.n, spec.facets)
    if spec.kind == "random_ample":
        return random_ample(spec.n, spec.size, spec.seed)
    if spec.kind == "product":
        if len(spec.factors) != 2:
            raise ContractError("product takes exactly two factor specs")
        return core.product(generate(spec.factors[0]), generate(spec.factors[1]))
    raise ContractError(f"unknown generator kind {spec.kind!r}")


BATCH_COLUMNS = ("file", "n", "size", "vc_dim", "shattered",
                 "strongly_shattered", "ample", "maximum")


def batch_row(name: str, C: ConceptClass) -> tuple:
    sh = shatter.shattered_complex(C)
    st = shatter.strongly_shattered_complex(C)
    return (name, C.n, C.size, sh.dim(), sh.size, st.size,
            int(st.size == C.size and sh.size == C.size),
            int(shatter.is_maximum(C)))


def batch_csv(rows) -> str:
    lines = [",".join(BATCH_COLUMNS)]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
