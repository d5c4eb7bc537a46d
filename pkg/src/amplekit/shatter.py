"""Shattering, VC dimension, and recognition of ample / maximum classes."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from . import core
from .core import ConceptClass, Cube, bits_of, coords, popcount
from .errors import ContractError


@dataclass(frozen=True)
class SetFamily:
    """A simplicial complex on coordinates 1..n, members as bitmasks."""

    n: int
    members: frozenset

    @property
    def size(self) -> int:
        return len(self.members)

    def dim(self) -> int:
        return max(popcount(m) for m in self.members) if self.members else -1

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __len__(self) -> int:
        return len(self.members)


def _shattered_sets(C: ConceptClass) -> set:
    """All shattered coordinate sets, grown levelwise.

    Y+x is shattered iff Y is shattered by both halves C[x=0] and C[x=1]:
    both restrictions to Y live inside 2^Y, so their being full is the same
    as their intersection being full, which is exactly (C^x)|Y = 2^Y
    together with Y shattered.
    """
    doms = bits_of(C.domain_mask)
    shattered = {0}
    frontier = [0]
    while frontier:
        nxt = []
        seen = set()
        for Y in frontier:
            for b in doms:
                if b & Y or (Y | b) in seen:
                    continue
                Z = Y | b
                # all strict subsets of Z of size |Z|-1 must be shattered
                ok = True
                for bb in bits_of(Z):
                    if (Z ^ bb) not in shattered:
                        ok = False
                        break
                if not ok:
                    seen.add(Z)
                    continue
                if _is_shattered(C.concepts, Z):
                    shattered.add(Z)
                    nxt.append(Z)
                seen.add(Z)
        frontier = nxt
    return shattered


def _is_shattered(concepts, Y: int) -> bool:
    want = 1 << popcount(Y)
    seen = set()
    for c in concepts:
        seen.add(c & Y)
        if len(seen) == want:
            return True
    return False


def _strongly_shattered_sets(C: ConceptClass) -> set:
    """Coordinate sets Y such that C contains a full Y-cube.

    Strong shattering is downward closed, so it is grown levelwise as well.
    """
    doms = bits_of(C.domain_mask)
    strong = {0}
    frontier = [0]
    while frontier:
        nxt = []
        seen = set()
        for Y in frontier:
            for b in doms:
                if b & Y or (Y | b) in seen:
                    continue
                Z = Y | b
                seen.add(Z)
                ok = True
                for bb in bits_of(Z):
                    if (Z ^ bb) not in strong:
                        ok = False
                        break
                if ok and core.reduction_tags(C.concepts, Z):
                    strong.add(Z)
                    nxt.append(Z)
        frontier = nxt
    return strong


def shattered_complex(C: ConceptClass) -> SetFamily:
    return SetFamily(C.n, frozenset(_shattered_sets(C)))


def strongly_shattered_complex(C: ConceptClass) -> SetFamily:
    return SetFamily(C.n, frozenset(_strongly_shattered_sets(C)))


def vc_dim(C: ConceptClass) -> int:
    return max(popcount(Y) for Y in _shattered_sets(C))


def phi(d: int, n: int) -> int:
    """Number of subsets of an n-set of size at most d."""
    return sum(comb(n, i) for i in range(min(d, n) + 1))


def _is_ample_fast(C: ConceptClass) -> bool:
    """Ampleness test that aborts as soon as the shattered count exceeds |C|."""
    limit = C.size
    doms = bits_of(C.domain_mask)
    shattered = {0}
    frontier = [0]
    count = 1
    while frontier:
        nxt = []
        seen = set()
        for Y in frontier:
            for b in doms:
                if b & Y or (Y | b) in seen:
                    continue
                Z = Y | b
                seen.add(Z)
                ok = all((Z ^ bb) in shattered for bb in bits_of(Z))
                if ok and _is_shattered(C.concepts, Z):
                    shattered.add(Z)
                    nxt.append(Z)
                    count += 1
                    if count > limit:
                        return False
        frontier = nxt
    return count == limit


def is_ample(C: ConceptClass) -> tuple[bool, Optional[int]]:
    """(ample?, witness).

    The witness for a non-ample class is the lex-smallest (ordered by
    coordinate tuple) set that is shattered but not strongly shattered.
    """
    sh = _shattered_sets(C)
    if len(sh) == C.size:
        return True, None
    st = _strongly_shattered_sets(C)
    gap = sh - st
    witness = min(gap, key=lambda Y: (popcount(Y), tuple(coords(Y))))
    return False, witness


def is_maximum(C: ConceptClass) -> bool:
    return C.size == phi(vc_dim(C), C.n)


@dataclass(frozen=True)
class ForbiddenLabel:
    """A labelled set of d+1 coordinates that C cannot realise: C|support misses pattern."""

    support: int
    pattern: int


def forbidden_labels(C: ConceptClass, Y: int) -> list[ForbiddenLabel]:
    """All patterns over Y missing from C|Y, for |Y| = vc_dim(C)+1."""
    if Y & ~C.domain_mask:
        raise ContractError("coordinate set outside domain")
    d = vc_dim(C)
    if popcount(Y) != d + 1:
        raise ContractError(f"need a set of size vc_dim+1 = {d + 1}, got {popcount(Y)}")
    seen = {c & Y for c in C}
    out = []
    for p in Cube(0, Y).vertices():
        if p not in seen:
            out.append(ForbiddenLabel(Y, p))
    return sorted(out, key=lambda fl: fl.pattern)


@dataclass(frozen=True)
class AmpleReport:
    """Outcomes of the independent ample characterisations.

    Each field is True/False, or None when that test was skipped because the
    domain is too wide to enumerate it honestly.  The empty class (which can
    only appear here as a complement) counts as ample.
    """

    definition: bool                        # every shattered set supports a full cube
    complement_ample: bool                  # 2^X \ C is ample too
    complexes_equal: bool                   # shattered == strongly shattered
    strongly_shattered_count: bool          # |strongly shattered complex| == |C|
    shattered_count: bool                   # |shattered complex| == |C|
    cube_intersections: Optional[bool]      # C ∩ B ample for every cube B
    partition_exchange: Optional[bool]      # (C^Y)_Z == (C_Z)^Y over all partitions Y ∪̇ Z
    partition_lopsided: Optional[bool]      # each partition: Y-cube in C or Z-cube in complement
    reductions_connected: Optional[bool]    # every nonempty reduction C^Y is connected
    connected_hyperplanes_ample: bool       # C connected and every C^x ample

    def values(self) -> list:
        return [
            self.definition, self.complement_ample, self.complexes_equal,
            self.strongly_shattered_count, self.shattered_count,
            self.cube_intersections, self.partition_exchange,
            self.partition_lopsided, self.reductions_connected,
            self.connected_hyperplanes_ample,
        ]

    @property
    def agree(self) -> bool:
        vals = [v for v in self.values() if v is not None]
        return all(vals) or not any(vals)

    @property
    def ample(self) -> bool:
        return self.shattered_count


_CUBE_CAP = 12        # 3^n cubes: fine up to here
_PARTITION_CAP = 10   # 2^n partitions, each needing cube / restriction work


def all_cubes_of_domain(n: int):
    """Every subcube of the full n-cube (3^n of them)."""
    for support in range(1 << n):
        free = core.full_mask(n) & ~support
        sub = 0
        while True:
            yield Cube(sub, support)
            if sub == free:
                break
            sub = (sub - free) & free


def _cube_intersections_ok(C: ConceptClass) -> bool:
    for B in all_cubes_of_domain(C.n):
        sub = core.intersect_cube(C, B)
        if sub is not None and not _is_ample_fast(sub):
            return False
    return True


def _partition_exchange_ok(C: ConceptClass) -> bool:
    """(C^Y)_Z = (C_Z)^Y for all partitions X = Y ∪̇ Z.

    With Z the complement of Y both sides live on the empty domain, so the
    identity says: C contains a Y-cube  iff  C|Y is the full cube on Y.
    """
    for Y in range(0, C.domain_mask + 1):
        has_cube = bool(core.reduction_tags(C.concepts, Y))
        if has_cube != _is_shattered(C.concepts, Y):
            return False
    return True


def _partition_lopsided_ok(C: ConceptClass, st: set) -> bool:
    """For every partition X = Y ∪̇ Z: Y strongly shattered by C, or Z by 2^X \\ C."""
    comp = [c for c in range(1 << C.n) if c not in C.concept_set]
    st_comp = set()
    if comp:
        st_comp = _strongly_shattered_sets(ConceptClass(C.n, tuple(comp)))
    for Y in range(0, C.domain_mask + 1):
        if Y not in st and (C.domain_mask & ~Y) not in st_comp:
            return False
    return True


def ample_characterization_report(C: ConceptClass) -> AmpleReport:
    from . import graph  # local import: graph depends only on core

    sh = _shattered_sets(C)
    st = _strongly_shattered_sets(C)
    definition = sh <= st
    complexes_equal = sh == st
    shattered_count = len(sh) == C.size
    strongly_count = len(st) == C.size

    if C.is_full_cube():
        complement_ample = True  # empty class is vacuously ample
    else:
        complement_ample = _is_ample_fast(core.complement(C))

    if C.n <= _CUBE_CAP:
        cube_intersections = _cube_intersections_ok(C)
        partition_lopsided = _partition_lopsided_ok(C, st)
        reductions_connected = True
        for Y in range(0, C.domain_mask + 1):
            R = core.reduce(C, Y)
            if R is not None and not graph.is_connected(R):
                reductions_connected = False
                break
    else:
        cube_intersections = None
        partition_lopsided = None
        reductions_connected = None

    if C.n <= _PARTITION_CAP:
        partition_exchange = _partition_exchange_ok(C)
    else:
        partition_exchange = None

    chp = graph.is_connected(C)
    if chp:
        for x in range(1, C.n + 1):
            R = core.reduce(C, core.bit(x))
            if R is not None and not _is_ample_fast(R):
                chp = False
                break

    return AmpleReport(
        definition=definition,
        complement_ample=complement_ample,
        complexes_equal=complexes_equal,
        strongly_shattered_count=strongly_count,
        shattered_count=shattered_count,
        cube_intersections=cube_intersections,
        partition_exchange=partition_exchange,
        partition_lopsided=partition_lopsided,
        reductions_connected=reductions_connected,
        connected_hyperplanes_ample=chp,
    )
