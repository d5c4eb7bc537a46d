"""One-inclusion graph structure: edges, cubes, corners, isometry, galleries, convexity."""
from __future__ import annotations

from collections import deque
from typing import Optional

from . import core
from .core import ConceptClass, Cube, bits_of, concept_to_string, interval, popcount
from .errors import ContractError, NotConnectedError


def edges(C: ConceptClass) -> list[tuple[int, int, int]]:
    """Edges of G(C) as (c, c', x) with c < c' and x the differing coordinate."""
    s = C.concept_set
    out = []
    for c in C:
        for x in range(1, C.n + 1):
            d = c | core.bit(x)
            if d != c and d in s:
                out.append((c, d, x))
    return out


def neighbors(C: ConceptClass, c: int) -> list[int]:
    s = C.concept_set
    return [c ^ b for b in bits_of(C.domain_mask) if c ^ b in s]


def is_connected(C: ConceptClass) -> bool:
    s = C.concept_set
    start = C.concepts[0]
    seen = {start}
    q = deque([start])
    doms = bits_of(C.domain_mask)
    while q:
        c = q.popleft()
        for b in doms:
            d = c ^ b
            if d in s and d not in seen:
                seen.add(d)
                q.append(d)
    return len(seen) == C.size


def cube_tags(C: ConceptClass) -> dict:
    """support -> set of tags of all full support-cubes in C, grown levelwise.

    A (Y|x)-cube with tag t exists iff both t and t|x are tags of Y-cubes.
    """
    tags: dict = {0: set(C.concepts)}
    doms = bits_of(C.domain_mask)
    frontier = [0]
    while frontier:
        nxt = []
        seen = set()
        for Y in frontier:
            ts = tags[Y]
            for b in doms:
                if b & Y:
                    continue
                Z = Y | b
                if Z in seen:
                    continue
                seen.add(Z)
                if any((Z ^ bb) not in tags for bb in bits_of(Z)):
                    continue
                base = None
                for bb in bits_of(Z):
                    cand = tags[Z ^ bb]
                    if base is None or len(cand) < len(base):
                        base, split = cand, bb
                new = {t & ~split for t in base if (t ^ split) in base and not t & split}
                if new:
                    tags[Z] = new
                    nxt.append(Z)
        frontier = nxt
    return tags


def all_cubes(C: ConceptClass) -> list[Cube]:
    out = []
    for Y, ts in cube_tags(C).items():
        out.extend(Cube(t, Y) for t in ts)
    return sorted(out, key=lambda B: (popcount(B.support), B.support, B.tag))


def maximal_cubes(C: ConceptClass) -> list[Cube]:
    """Cubes of C not properly contained in another cube of C."""
    tags = cube_tags(C)
    doms = bits_of(C.domain_mask)
    out = []
    for Y, ts in tags.items():
        for t in ts:
            grows = False
            for b in doms:
                if b & Y:
                    continue
                up = tags.get(Y | b)
                if up is not None and (t & ~b) in up:
                    grows = True
                    break
            if not grows:
                out.append(Cube(t, Y))
    return sorted(out, key=lambda B: (popcount(B.support), B.support, B.tag))


def cubes_through(C: ConceptClass, c: int) -> list[Cube]:
    """All cubes of C containing the concept c, found by growing supports locally."""
    s = C.concept_set
    nbr = [b for b in bits_of(C.domain_mask) if c ^ b in s]
    good = {0}
    frontier = [0]
    while frontier:
        nxt = []
        seen = set()
        for Y in frontier:
            for b in nbr:
                if b & Y or (Y | b) in seen:
                    continue
                Z = Y | b
                seen.add(Z)
                if any((Z ^ bb) not in good for bb in bits_of(Z)):
                    continue
                if all((c & ~Z) | sub in s for sub in Cube(0, Z).vertices()):
                    good.add(Z)
                    nxt.append(Z)
        frontier = nxt
    return [Cube(c & ~Y, Y) for Y in sorted(good)]


def is_corner(C: ConceptClass, c: int) -> bool:
    """True when c lies in a unique maximal cube of C.

    The supports of cubes through c form a family closed under subsets; c is a
    corner iff that family has a unique maximal element (a cube through c that
    is maximal among them is also maximal in C, since any larger cube would
    again pass through c).
    """
    sups = {B.support for B in cubes_through(C, c)}
    maxi = [Y for Y in sups if not any(Y != Z and Y & ~Z == 0 for Z in sups)]
    return len(maxi) == 1


def corners(C: ConceptClass) -> list[int]:
    return [c for c in C if is_corner(C, c)]


def _bfs_dist(C: ConceptClass, start: int) -> dict:
    s = C.concept_set
    doms = bits_of(C.domain_mask)
    dist = {start: 0}
    q = deque([start])
    while q:
        c = q.popleft()
        for b in doms:
            d = c ^ b
            if d in s and d not in dist:
                dist[d] = dist[c] + 1
                q.append(d)
    return dist


def is_isometric(C: ConceptClass, mode: str = "full") -> bool:
    """Graph distance in G(C) equals Hamming distance.

    mode="weak" checks only pairs at Hamming distance 2 (common neighbor in C);
    disconnected classes are not isometric (infinite graph distance).
    """
    if mode not in ("full", "weak"):
        raise ContractError(f"unknown isometry mode {mode!r}")
    s = C.concept_set
    if mode == "weak":
        for i, c in enumerate(C.concepts):
            for d in C.concepts[i + 1:]:
                diff = c ^ d
                if popcount(diff) == 2:
                    b1 = diff & -diff
                    if (c ^ b1) not in s and (c ^ b1 ^ diff) not in s:
                        return False
        return True
    for c in C:
        dist = _bfs_dist(C, c)
        if len(dist) != C.size:
            return False
        for d, k in dist.items():
            if k != popcount(c ^ d):
                return False
    return True


def gallery(C: ConceptClass, Q1: Cube, Q2: Cube) -> list[Cube]:
    """Shortest chain of parallel cubes from Q1 to Q2, consecutive unions being
    cubes of C; BFS over the tags of the common support's reduction."""
    if Q1.support != Q2.support:
        raise ContractError("gallery endpoints must be parallel cubes")
    Y = Q1.support
    tags = core.reduction_tags(C.concepts, Y)
    if Q1.tag not in tags or Q2.tag not in tags:
        raise ContractError("gallery endpoints must be cubes of the class")
    if Q1.tag == Q2.tag:
        return [Q1]
    doms = [b for b in bits_of(C.domain_mask) if not b & Y]
    prev = {Q1.tag: None}
    q = deque([Q1.tag])
    while q:
        t = q.popleft()
        for b in doms:
            u = t ^ b
            if u in tags and u not in prev:
                prev[u] = t
                if u == Q2.tag:
                    path = [u]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return [Cube(t, Y) for t in reversed(path)]
                q.append(u)
    raise NotConnectedError("no gallery connects the two cubes")


def _sub_concepts(C: ConceptClass, sub) -> list[int]:
    subset = set(sub)
    if not subset <= C.concept_set:
        raise ContractError("subclass concepts must belong to the class")
    return sorted(subset)


def is_locally_convex(C: ConceptClass, sub) -> bool:
    """Every pair of subclass concepts at Hamming distance 2 has its interval's
    C-concepts inside the subclass."""
    cs = _sub_concepts(C, sub)
    subset = set(cs)
    s = C.concept_set
    for i, c in enumerate(cs):
        for d in cs[i + 1:]:
            diff = c ^ d
            if popcount(diff) == 2:
                b = diff & -diff
                for mid in (c ^ b, c ^ b ^ diff):
                    if mid in s and mid not in subset:
                        return False
    return True


def is_convex(C: ConceptClass, sub) -> bool:
    """interval(c, d) ∩ C ⊆ subclass for every pair of subclass concepts."""
    cs = _sub_concepts(C, sub)
    subset = set(cs)
    for i, c in enumerate(cs):
        for d in cs[i + 1:]:
            B = interval(c, d)
            for v in B.vertices():
                if v in C.concept_set and v not in subset:
                    return False
    return True


def to_dot(C: ConceptClass) -> str:
    lines = ["graph inclusion {"]
    for c in C:
        lines.append(f'  "{concept_to_string(c, C.n)}";')
    for c, d, x in edges(C):
        lines.append(
            f'  "{concept_to_string(c, C.n)}" -- "{concept_to_string(d, C.n)}" [label="{x}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
