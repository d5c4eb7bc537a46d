"""Ordering classifiers, corner-peeling search, guaranteed peelings,
collapsing sequences, and the shelling correspondence."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import core, graph, shatter
from .core import ConceptClass, Cube, bit, bits_of, popcount
from .errors import ContractError, IntegrityError, OrderingValidationError


@dataclass(frozen=True)
class OrderingReport:
    ample: bool
    corner_peeling: bool
    isometric: bool
    weakly_isometric: bool

    @property
    def all_equal(self) -> bool:
        return len({self.ample, self.corner_peeling,
                    self.isometric, self.weakly_isometric}) == 1


def _check_permutation(C: ConceptClass, ordering) -> list[int]:
    order = list(ordering)
    if sorted(order) != list(C.concepts):
        raise ContractError("ordering is not a permutation of the class")
    return order


def classify_ordering(C: ConceptClass, ordering) -> OrderingReport:
    """Evaluate the four level-set properties of an ordering, each directly."""
    order = _check_permutation(C, ordering)
    ample = corner = isometric = weak = True
    for i in range(1, len(order) + 1):
        level = ConceptClass(C.n, tuple(order[:i]))
        if ample and not shatter._is_ample_fast(level):
            ample = False
        if corner and not graph.is_corner(level, order[i - 1]):
            corner = False
        if isometric and not graph.is_isometric(level, "full"):
            isometric = False
        if weak and not graph.is_isometric(level, "weak"):
            weak = False
        if not (ample or corner or isometric or weak):
            break
    return OrderingReport(ample, corner, isometric, weak)


@dataclass(frozen=True)
class PeelingResult:
    ordering: Optional[tuple]
    proven: bool          # meaningful when ordering is None: search space exhausted
    expansions: int

    @property
    def peelable(self) -> bool:
        return self.ordering is not None


def corner_peeling_search(C: ConceptClass, budget: int = 10**6) -> PeelingResult:
    """Find a corner peeling by greedy removal with chronological backtracking.

    Removing a corner of an ample class leaves an ample class, so only
    cornerhood needs re-checking along the way.  A None ordering with
    proven=True means the exhaustive search finished without success;
    proven=False means the expansion budget ran out first.
    """
    if not shatter._is_ample_fast(C):
        raise ContractError("corner peeling search requires an ample class")
    expansions = 0
    failed: set = set()
    peeled: list[int] = []
    remaining = list(C.concepts)

    def dfs() -> bool:
        nonlocal expansions
        if len(remaining) == 1:
            peeled.append(remaining[0])
            return True
        state = frozenset(remaining)
        if state in failed:
            return False
        level = ConceptClass(C.n, tuple(remaining))
        for c in sorted(graph.corners(level)):
            expansions += 1
            if expansions > budget:
                return False
            remaining.remove(c)
            peeled.append(c)
            if dfs():
                return True
            peeled.pop()
            remaining.append(c)
            if expansions > budget:
                return False
        failed.add(state)
        return False

    if dfs():
        return PeelingResult(tuple(reversed(peeled)), True, expansions)
    return PeelingResult(None, expansions <= budget, expansions)


def _closure(C: ConceptClass, s: int) -> Optional[int]:
    """Smallest member of the intersection-closed class containing s."""
    acc = None
    for c in C:
        if s & ~c == 0:
            acc = c if acc is None else acc & c
    return acc


def extremal_points(C: ConceptClass, c: int) -> int:
    s = C.concept_set
    return sum(b for b in bits_of(c) if (c ^ b) in s)


def antimatroid_peeling(C: ConceptClass) -> tuple:
    """Size-monotone corner peeling of a conditional antimatroid."""
    if 0 not in C.concept_set:
        raise ContractError("not a conditional antimatroid: empty set missing")
    s = C.concept_set
    for i, c in enumerate(C.concepts):
        for d in C.concepts[i + 1:]:
            if c & d not in s:
                raise ContractError(
                    "not a conditional antimatroid: not closed under intersection")
    for c in C:
        if _closure(C, extremal_points(C, c)) != c:
            raise ContractError(
                "not a conditional antimatroid: a member is not generated "
                "by its extremal points")
    return tuple(sorted(C.concepts, key=lambda c: (popcount(c), c)))


def two_dim_peeling(C: ConceptClass) -> tuple:
    """Max-adjacency growth ordering; a corner peeling for ample classes of
    VC-dimension at most 2."""
    if not shatter._is_ample_fast(C):
        raise ContractError("two-dimensional peeling requires an ample class")
    if shatter.vc_dim(C) > 2:
        raise ContractError("two-dimensional peeling requires VC-dimension <= 2")
    s = C.concept_set
    doms = bits_of(C.domain_mask)
    order = [C.concepts[0]]
    placed = {C.concepts[0]}
    while len(order) < C.size:
        best = None
        best_deg = -1
        for c in C:
            if c in placed:
                continue
            deg = sum(1 for b in doms if c ^ b in placed)
            if deg > best_deg or (deg == best_deg and c < best):
                best, best_deg = c, deg
        order.append(best)
        placed.add(best)
    return tuple(order)


# -- collapsing sequences -----------------------------------------------------

CollapseSequence = list[tuple[Cube, Cube]]


def _collapse_rec(n: int, concepts: tuple) -> tuple[CollapseSequence, int]:
    """Collapsing sequence of the cube complex plus the surviving vertex.

    Recursion on the highest support coordinate x: collapse the half C_x
    first, then lift each pair through the x-direction.  A cube Q of C_x is
    "thick" when both its side copies (x=0 and x=1) lie in C, in which case
    its preimage is the (dim+1)-cube spanning the x-direction.
    """
    if len(concepts) == 1:
        return [], concepts[0]
    support = 0
    lo = concepts[0]
    for c in concepts:
        support |= c ^ lo
    xb = 1 << (support.bit_length() - 1)  # highest varying coordinate
    s = set(concepts)
    below = tuple(sorted({c & ~xb for c in concepts}))
    seq_x, survivor_x = _collapse_rec(n, below)

    def side_cubes(Q: Cube) -> tuple[Optional[Cube], Optional[Cube]]:
        c0 = all(v in s for v in Q.vertices())
        c1 = all(v | xb in s for v in Q.vertices())
        side0 = Q if c0 else None
        side1 = Cube(Q.tag | xb, Q.support) if c1 else None
        return side0, side1

    seq: CollapseSequence = []
    for Q, Qp in seq_x:
        q0, q1 = side_cubes(Q)
        p0, p1 = side_cubes(Qp)
        q_thick = q0 is not None and q1 is not None
        p_thick = p0 is not None and p1 is not None
        if q_thick and p_thick:
            thickQ = Cube(Q.tag, Q.support | xb)
            thickP = Cube(Qp.tag, Qp.support | xb)
            seq.append((thickQ, thickP))
            seq.append((q0, p0))
            seq.append((q1, p1))
        elif q_thick:
            # the coface lifts to one side only; pair the thick cube of Q
            # with the surviving side of Qp, and the other side of Q stays
            # paired through the x-direction
            thickQ = Cube(Q.tag, Q.support | xb)
            if p0 is not None:
                seq.append((q1, thickQ))
                seq.append((q0, p0))
            else:
                seq.append((q0, thickQ))
                seq.append((q1, p1))
        else:
            # a thin free face under a thick coface cannot occur: a thick
            # coface forces both sides of its facets into the class
            if p_thick:
                raise IntegrityError("collapse lift failed: thin face, thick coface")
            if q0 is not None and p0 is not None:
                seq.append((q0, p0))
            elif q1 is not None and p1 is not None:
                seq.append((q1, p1))
            else:
                raise IntegrityError("collapse lift failed: sides do not align")
    # the survivor vertex of C_x: collapse its x-edge if it exists
    v0 = survivor_x
    v1 = survivor_x | xb
    if v0 in s and v1 in s:
        seq.append((Cube(v1, 0), Cube(v0, xb)))
        survivor = v0
    elif v0 in s:
        survivor = v0
    else:
        survivor = v1
    return seq, survivor


def collapse_sequence(C: ConceptClass) -> CollapseSequence:
    """Collapsing sequence of Q(C) down to one vertex, validated by replay."""
    if not shatter._is_ample_fast(C):
        raise ContractError("collapse sequences are built for ample classes only")
    seq, survivor = _collapse_rec(C.n, C.concepts)
    replay_collapse(C, seq, survivor)
    return seq


def replay_collapse(C: ConceptClass, seq: CollapseSequence, survivor: Optional[int] = None):
    """Check that seq is a valid collapsing sequence of Q(C): every pair is a
    (free face, unique proper coface) in the current complex, and one vertex
    remains at the end.

    Since the face set stays closed under subcubes throughout a collapse,
    a face is free exactly when it has a single remaining coface one
    dimension up (two intermediate faces would survive under any higher
    containment).
    """
    faces = {(B.tag, B.support) for B in graph.all_cubes(C)}
    cofaces: dict = {f: set() for f in faces}
    for (t, S) in faces:
        for b in bits_of(S):
            for facet in ((t, S ^ b), (t | b, S ^ b)):
                cofaces[facet].add((t, S))
    for i, (Q, Qp) in enumerate(seq):
        fq, fp = (Q.tag, Q.support), (Qp.tag, Qp.support)
        if not Qp.contains_cube(Q) or Qp.dim != Q.dim + 1:
            raise IntegrityError(f"pair {i}: not a facet/coface pair")
        if fq not in faces or fp not in faces:
            raise IntegrityError(f"pair {i}: face already removed or absent")
        if cofaces[fq] != {fp}:
            raise IntegrityError(
                f"pair {i}: face is not free ({len(cofaces[fq])} cofaces)")
        for f in (fq, fp):
            faces.discard(f)
            for b in bits_of(f[1]):
                for facet in ((f[0], f[1] ^ b), (f[0] | b, f[1] ^ b)):
                    cofaces[facet].discard(f)
    if len(faces) != 1:
        raise IntegrityError(f"{len(faces)} faces remain after replay")
    (tag, sup), = faces
    if sup != 0 or (survivor is not None and tag != survivor):
        raise IntegrityError("replay did not end at the expected vertex")


# -- shelling correspondence --------------------------------------------------

@dataclass(frozen=True)
class ShellingOrder:
    """Ordering of cross-polytope facets; facet sigma is encoded as a concept
    bitmask (bit x set = the positive element of the antipodal pair x)."""

    n: int
    facets: tuple


def validate_shelling(sh: ShellingOrder) -> None:
    """Partial shelling: for i<j some k<j shares a ridge with facet j and
    captures the i,j intersection.  In bitmask terms the facet k differs from
    facet j in exactly one coordinate, and that coordinate is one where
    facets i and j disagree."""
    fs = sh.facets
    seen = set()
    for j, fj in enumerate(fs):
        if fj in seen:
            raise OrderingValidationError("repeated facet", j)
        if fj >= 1 << sh.n:
            raise OrderingValidationError("facet out of range", j)
        seen.add(fj)
        for i in range(j):
            diff_ij = fs[i] ^ fj
            ok = False
            for k in range(j):
                dk = fs[k] ^ fj
                if popcount(dk) == 1 and dk & diff_ij:
                    ok = True
                    break
            if ok:
                continue
            raise OrderingValidationError(
                "partial shelling condition fails", j)


def ordering_to_shelling(C: ConceptClass, ordering) -> ShellingOrder:
    order = _check_permutation(C, ordering)
    for i in range(1, len(order) + 1):
        if not graph.is_isometric(ConceptClass(C.n, tuple(order[:i])), "full"):
            raise OrderingValidationError("level set is not isometric", i - 1)
    sh = ShellingOrder(C.n, tuple(order))
    validate_shelling(sh)
    return sh


def shelling_to_ordering(sh: ShellingOrder) -> tuple[ConceptClass, tuple]:
    validate_shelling(sh)
    C = ConceptClass(sh.n, sh.facets)
    ordering = sh.facets
    for i in range(1, len(ordering) + 1):
        if not graph.is_isometric(ConceptClass(sh.n, tuple(ordering[:i])), "full"):
            raise IntegrityError(
                f"shelling produced a non-isometric level set at index {i - 1}")
    return C, ordering
