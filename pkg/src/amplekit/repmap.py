"""Representation maps: verification, construction for maximum classes,
USO conversions, substructure maps, pre-representation maps, ISR instances,
and the tail-matching analysis.

A RepMap (and an orientation out-map) is a plain dict mapping each concept of
the class to a coordinate-set bitmask.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import core, graph, matching, shatter
from .core import ConceptClass, Cube, bit, bits_of, coords, mask_of, popcount
from .errors import ContractError, IntegrityError, ParseError

RepMap = dict


@dataclass(frozen=True)
class Check:
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class RepMapReport:
    r1: Check
    r2: Check
    r3: Check
    r4: Check
    bijective: Check
    c1: Check
    c2: Check

    @property
    def valid(self) -> bool:
        return all(c.ok for c in (self.r1, self.r2, self.r3, self.r4,
                                  self.bijective, self.c1, self.c2))


def _check_total(C: ConceptClass, r: RepMap) -> None:
    if set(r) != set(C.concepts):
        raise ContractError("map is not total on the class")
    for v in r.values():
        if v & ~C.domain_mask:
            raise ContractError("image coordinate set outside domain")


def _check_pairwise(C: ConceptClass, r: RepMap, symmetric_diff: bool) -> Check:
    cs = C.concepts
    for i, c in enumerate(cs):
        rc = r[c]
        for d in cs[i + 1:]:
            sets = (rc ^ r[d]) if symmetric_diff else (rc | r[d])
            if not (c ^ d) & sets:
                return Check(False, (c, d))
    return Check(True)


def _check_r2(C: ConceptClass, r: RepMap) -> Check:
    """Unique reconstruction: for every sample domain Y, each realized pattern
    has exactly one consistent concept with r(c) ⊆ Y."""
    for Y in range(1 << C.n):
        hits: dict = {}
        for c in C:
            hits.setdefault(c & Y, 0)
            if r[c] & ~Y == 0:
                hits[c & Y] += 1
        for pat, k in hits.items():
            if k != 1:
                return Check(False, (Y, pat))
    return Check(True)


def _check_r3(C: ConceptClass, r: RepMap) -> Check:
    """Cube injectivity, grouped per support: two concepts in a common cube of
    support S share the tag c & ~S, so collisions of (tag, r(c) & S) are
    exactly the injectivity failures over all cubes with that support."""
    for S in range(1 << C.n):
        seen: dict = {}
        for c in C:
            key = (c & ~S, r[c] & S)
            if key in seen:
                return Check(False, (Cube(c & ~S, S), seen[key], c))
            seen[key] = c
    return Check(True)


def _check_c1(C: ConceptClass, r: RepMap) -> Check:
    s = C.concept_set
    for c in C:
        B = Cube(c & ~r[c], r[c])
        if not all(v in s for v in B.vertices()):
            return Check(False, c)
    return Check(True)


def _check_c2(C: ConceptClass, r: RepMap) -> Check:
    for Y, ts in sorted(graph.cube_tags(C).items()):
        sinks: dict = {t: 0 for t in ts}
        for c in C:
            t = c & ~Y
            if t in sinks and r[c] & Y == 0:
                sinks[t] += 1
        for t, k in sorted(sinks.items()):
            if k != 1:
                return Check(False, Cube(t, Y))
    return Check(True)


def verify_repmap(C: ConceptClass, r: RepMap) -> RepMapReport:
    _check_total(C, r)
    xc = shatter._strongly_shattered_sets(C)
    image = list(r.values())
    if len(set(image)) != len(image):
        dup = next(v for v in image if image.count(v) > 1)
        bij = Check(False, dup)
    elif set(image) != xc:
        off = min(set(image) ^ xc)
        bij = Check(False, off)
    else:
        bij = Check(True)
    return RepMapReport(
        r1=_check_pairwise(C, r, symmetric_diff=False),
        r2=_check_r2(C, r),
        r3=_check_r3(C, r),
        r4=_check_pairwise(C, r, symmetric_diff=True),
        bijective=bij,
        c1=_check_c1(C, r),
        c2=_check_c2(C, r),
    )


# -- construction for maximum classes -----------------------------------------

def _sources_for_missed_simplices(concepts: list, sub: list, alive: int, d: int) -> dict:
    """source concept -> support, for the pair (class, subclass) of maximum
    classes of dimensions d and d-1 over the alive coordinates.

    Every size-d subset of the alive coordinates is a missed simplex; each
    supports a unique cube of the class, whose source realises the one
    pattern missing from the subclass's restriction.
    """
    out: dict = {}
    alive_coords = coords(alive)
    sub_set = set(sub)
    for sel in combinations(alive_coords, d):
        sigma = mask_of(sel)
        groups: dict = {}
        for c in concepts:
            groups.setdefault(c & ~sigma, []).append(c)
        full = [t for t, g in groups.items() if len(g) == 1 << d]
        if len(full) != 1:
            raise IntegrityError(
                f"{len(full)} cubes with a missed-simplex support, expected 1")
        t = full[0]
        patterns = set(Cube(0, sigma).vertices())
        for c in sub:
            patterns.discard(c & sigma)
        if len(patterns) != 1:
            raise IntegrityError(
                f"{len(patterns)} missing patterns on a missed simplex, expected 1")
        src = t | patterns.pop()
        if src in out:
            raise IntegrityError("concept is the source of two incomplete cubes")
        out[src] = sigma
    return out


def _build_max_rec(concepts: list, alive: int, d: int) -> dict:
    if d == 0 or alive == 0:
        return {concepts[0]: 0}
    xb = 1 << (alive.bit_length() - 1)
    below = alive & ~xb
    cset = set(concepts)
    reduction = sorted(c for c in concepts if not c & xb and (c | xb) in cset)
    restriction = sorted({c & ~xb for c in concepts})
    r_red = _build_max_rec(reduction, below, d - 1)
    extra = _sources_for_missed_simplices(restriction, reduction, below, d)
    tail = [c for c in restriction if c not in r_red]
    if sorted(extra) != tail:
        raise IntegrityError("source map is not a bijection onto the tail")
    r_x = dict(r_red)
    r_x.update(extra)
    red_set = set(reduction)
    r: dict = {}
    for c in concepts:
        cx = c & ~xb
        if c & xb and cx in red_set:
            r[c] = r_x[cx] | xb
        else:
            r[c] = r_x[cx]
    return r


def build_maximum_repmap(C: ConceptClass) -> RepMap:
    """Representation map for a maximum class by recursion on the highest
    coordinate; deterministic."""
    if not shatter.is_maximum(C):
        raise ContractError("construction requires a maximum class")
    d = shatter.vc_dim(C)
    r = _build_max_rec(list(C.concepts), C.domain_mask, d)
    image = set(r.values())
    if len(image) != len(r) or any(popcount(Y) > d for Y in image):
        raise IntegrityError("constructed map is not a bijection onto the complex")
    return r


def incomplete_cube_sources(C: ConceptClass, D: ConceptClass) -> dict:
    """Bijection concept -> its incomplete cube, for maximum C of dimension d
    and maximum subclass D of dimension d-1 on the same domain."""
    if D.n != C.n:
        raise ContractError("subclass must share the domain")
    if not D.concept_set <= C.concept_set:
        raise ContractError("subclass is not contained in the class")
    if not shatter.is_maximum(C) or not shatter.is_maximum(D):
        raise ContractError("both classes must be maximum")
    d = shatter.vc_dim(C)
    if shatter.vc_dim(D) != d - 1:
        raise ContractError("subclass dimension must be one less")
    src = _sources_for_missed_simplices(
        list(C.concepts), list(D.concepts), C.domain_mask, d)
    if sorted(src) != sorted(C.concept_set - D.concept_set):
        raise IntegrityError("source map is not a bijection onto C \\ D")
    return {c: Cube(c & ~sigma, sigma) for c, sigma in src.items()}


# -- unique sink orientations --------------------------------------------------

def _check_orientation(C: ConceptClass, o: RepMap) -> None:
    """o must orient exactly the edges of G(C), each one way."""
    _check_total(C, o)
    s = C.concept_set
    for c in C:
        for b in bits_of(o[c]):
            if c ^ b not in s:
                raise ContractError(
                    f"out-map leaves the class on coordinate {b.bit_length()}")
            if o[c ^ b] & b:
                raise ContractError("edge oriented both ways")


@dataclass(frozen=True)
class UsoReport:
    is_orientation: bool
    c1: Check
    c2: Check

    @property
    def ok(self) -> bool:
        return self.is_orientation and self.c1.ok and self.c2.ok


def check_uso(C: ConceptClass, o: RepMap) -> UsoReport:
    try:
        _check_orientation(C, o)
    except ContractError:
        return UsoReport(False, Check(False), Check(False))
    return UsoReport(True, _check_c1(C, o), _check_c2(C, o))


def _find_cycle(C: ConceptClass, o: RepMap) -> Optional[list]:
    color: dict = {}
    for start in C:
        if start in color:
            continue
        stack = [(start, iter(bits_of(o[start])))]
        color[start] = 1
        path = [start]
        while stack:
            node, it = stack[-1]
            advanced = False
            for b in it:
                w = node ^ b
                if color.get(w) == 1:
                    return path[path.index(w):]
                if w not in color:
                    color[w] = 1
                    path.append(w)
                    stack.append((w, iter(bits_of(o[w]))))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                path.pop()
                stack.pop()
    return None


def uso_to_peeling(C: ConceptClass, o: RepMap) -> tuple:
    """Corner peeling from an acyclic USO: peel sources, reverse."""
    rep = check_uso(C, o)
    if not rep.ok:
        raise ContractError(f"not a unique sink orientation: {rep}")
    cyc = _find_cycle(C, o)
    if cyc is not None:
        raise ContractError(f"orientation has a cycle through {cyc}")
    remaining = set(C.concepts)
    doms = bits_of(C.domain_mask)
    peeled = []
    while remaining:
        source = None
        for c in sorted(remaining):
            if all(c ^ b not in remaining or o[c] & b for b in doms):
                source = c
                break
        if source is None:
            raise IntegrityError("acyclic orientation without a source")
        remaining.discard(source)
        peeled.append(source)
    return tuple(reversed(peeled))


def peeling_to_uso(C: ConceptClass, ordering) -> RepMap:
    """Out-map orienting every edge from the later concept to the earlier."""
    from . import peeling as peeling_mod

    report = peeling_mod.classify_ordering(C, ordering)
    if not report.corner_peeling:
        raise ContractError("ordering is not a corner peeling")
    index = {c: i for i, c in enumerate(ordering)}
    s = C.concept_set
    o = {}
    for c in C:
        o[c] = sum(b for b in bits_of(C.domain_mask)
                   if c ^ b in s and index[c ^ b] < index[c])
    return o


# -- substructure maps ---------------------------------------------------------

def _require_valid(C: ConceptClass, r: RepMap, check: bool) -> None:
    if check and not verify_repmap(C, r).valid:
        raise ContractError("not a valid representation map")


def sub_repmap_cube(C: ConceptClass, r: RepMap, B: Cube,
                    check: bool = True) -> tuple[ConceptClass, RepMap]:
    """Representation map c -> r(c) ∩ supp(B) for C ∩ B (same domain)."""
    _require_valid(C, r, check)
    sub = core.intersect_cube(C, B)
    if sub is None:
        raise ContractError("cube does not meet the class")
    return sub, {c: r[c] & B.support for c in sub}


def _translate(masks: dict, Y_drop: int, n: int) -> dict:
    """Re-index masks over X \\ Y_drop to the compressed domain 1..n-|Y|."""
    ys = coords(core.full_mask(n) & ~Y_drop)
    return {core._project(c, ys): core._project(v, ys) for c, v in masks.items()}


def sub_repmap_reduction(C: ConceptClass, r: RepMap, Y: int,
                         check: bool = True) -> tuple[ConceptClass, RepMap]:
    """r^Y(c) = r(source of c's Y-cube) \\ Y, over the re-indexed domain."""
    _require_valid(C, r, check)
    red = core.reduce(C, Y)
    if red is None:
        raise ContractError("empty reduction has no representation map")
    out: dict = {}
    for t in core.reduction_tags(C.concepts, Y):
        sources = [v for v in Cube(t, Y).vertices() if r[v] & Y == Y]
        if len(sources) != 1:
            raise IntegrityError(f"{len(sources)} sources in a Y-cube, expected 1")
        out[t] = r[sources[0]] & ~Y
    return red, _translate(out, Y, C.n)


def sub_repmap_restriction(C: ConceptClass, r: RepMap, Y: int,
                           check: bool = True) -> tuple[ConceptClass, RepMap]:
    """r_Y(c) = r(unique sink of C ∩ (c's Y-cylinder)), over the re-indexed domain."""
    _require_valid(C, r, check)
    res = core.drop(C, Y)
    out: dict = {}
    for c in C:
        t = c & ~Y
        if t in out:
            continue
        sinks = [v for v in C if v & ~Y == t and r[v] & Y == 0]
        if len(sinks) != 1:
            raise IntegrityError(f"{len(sinks)} sinks in a cylinder, expected 1")
        out[t] = r[sinks[0]]
    return res, _translate(out, Y, C.n)


# -- pre-representation maps ----------------------------------------------------

def pre_rep_c1(C: ConceptClass) -> RepMap:
    """Bijection r': C -> X(C) with every r'(c)-cube through c inside C,
    via a perfect matching in the carrier incidence graph."""
    if not shatter._is_ample_fast(C):
        raise ContractError("pre-representation maps require an ample class")
    xc = sorted(shatter._strongly_shattered_sets(C))
    s = C.concept_set
    adj = {}
    for Y in xc:
        adj[Y] = [c for c in C
                  if all((c & ~Y) | sub in s for sub in Cube(0, Y).vertices())]
    m = matching.hopcroft_karp(adj)
    if len(m) != len(xc):
        raise IntegrityError("carrier graph has no perfect matching")
    r = {c: Y for Y, c in m.items()}
    chk = _check_c1(C, r)
    if not chk.ok:
        raise IntegrityError(f"matching produced a non-C1 map at {chk.witness}")
    return r


def pre_rep_c2(C: ConceptClass) -> RepMap:
    """Injection r'': C -> 2^X with a unique sink on every cube of C, by
    orienting each x-level's edges downward on top of the recursion for C_x."""
    if not shatter._is_ample_fast(C):
        raise ContractError("pre-representation maps require an ample class")
    r = _pre_rep_c2_rec(C.concepts, C.support())
    vals = list(r.values())
    if len(set(vals)) != len(vals):
        raise IntegrityError("recursion produced a non-injective map")
    chk = _check_c2(C, r)
    if not chk.ok:
        raise IntegrityError(f"recursion produced a non-C2 map at {chk.witness}")
    return r


def _pre_rep_c2_rec(concepts: tuple, support: int) -> dict:
    if support == 0:
        return {c: 0 for c in concepts}
    xb = 1 << (support.bit_length() - 1)
    cset = set(concepts)
    below = tuple(sorted({c & ~xb for c in concepts}))
    sub_support = 0
    lo = below[0]
    for c in below:
        sub_support |= c ^ lo
    r_x = _pre_rep_c2_rec(below, sub_support)
    r: dict = {}
    for c in concepts:
        cx = c & ~xb
        if not c & xb:
            r[c] = r_x[cx]
        elif cx not in cset:
            r[c] = r_x[cx]
        else:
            r[c] = r_x[cx] | xb
    return r


# -- ISR instances ----------------------------------------------------------------

@dataclass(frozen=True)
class ISRInstance:
    C: ConceptClass
    vertices: tuple        # (concept, coordset) pairs
    parts: dict            # concept -> tuple of vertex indices
    edges: tuple           # (i, j) index pairs, i < j


def isr_instance(C: ConceptClass) -> ISRInstance:
    if not shatter._is_ample_fast(C):
        raise ContractError("ISR instances are defined for ample classes")
    supports = {c: {B.support for B in graph.cubes_through(C, c)} for c in C}
    vertices = [(c, Y) for c in C for Y in sorted(supports[c])]
    index = {v: i for i, v in enumerate(vertices)}
    parts = {c: tuple(index[(c, Y)] for Y in sorted(supports[c])) for c in C}
    edges = []
    cs = C.concepts
    for a, c1 in enumerate(cs):
        for c2 in cs[a + 1:]:
            diff = c1 ^ c2
            common = [S for S in supports[c1] if diff & ~S == 0]
            if not common:
                continue
            for Y1 in supports[c1]:
                for Y2 in supports[c2]:
                    if any(Y1 & S == Y2 & S for S in common):
                        i, j = index[(c1, Y1)], index[(c2, Y2)]
                        edges.append((i, j) if i < j else (j, i))
    return ISRInstance(C, tuple(vertices), parts, tuple(sorted(set(edges))))


@dataclass(frozen=True)
class ISRResult:
    assignment: Optional[dict]   # concept -> coordset
    proven: bool                 # exhaustive when no assignment found
    expansions: int


def isr_solve(inst: ISRInstance, budget: int = 10**6) -> ISRResult:
    adj: dict = {i: set() for i in range(len(inst.vertices))}
    for i, j in inst.edges:
        adj[i].add(j)
        adj[j].add(i)
    order = sorted(inst.parts, key=lambda c: len(inst.parts[c]))
    chosen: list = []
    blocked: set = set()
    expansions = 0

    def dfs(k: int) -> bool:
        nonlocal expansions
        if k == len(order):
            return True
        for i in inst.parts[order[k]]:
            if i in blocked:
                continue
            expansions += 1
            if expansions > budget:
                return False
            newly = adj[i] - blocked
            blocked.update(newly)
            chosen.append(i)
            if dfs(k + 1):
                return True
            chosen.pop()
            blocked.difference_update(newly)
            if expansions > budget:
                return False
        return False

    if dfs(0):
        assignment = {inst.vertices[i][0]: inst.vertices[i][1] for i in chosen}
        if not verify_repmap(inst.C, assignment).valid:
            raise IntegrityError("ISR did not convert to a representation map")
        return ISRResult(assignment, True, expansions)
    return ISRResult(None, expansions <= budget, expansions)


# -- tail matching ----------------------------------------------------------------

@dataclass(frozen=True)
class TailMatchingReport:
    coord: int
    reduced: ConceptClass            # C^x over the re-indexed domain
    tails: tuple                     # tail concepts, re-indexed
    labels: tuple                    # (support, pattern) pairs, re-indexed
    edges: tuple                     # (tail concept, label index)
    status: str                      # no_perfect_matching | unique | multiple
    matching: dict                   # tail concept -> label index, when perfect
    degree_one_tails: tuple
    degree_one_labels: tuple


def tail_matching_analysis(C: ConceptClass, x: int) -> TailMatchingReport:
    if not shatter.is_maximum(C):
        raise ContractError("tail matching is defined for maximum classes")
    d = shatter.vc_dim(C)
    xb = bit(x)
    red = core.reduce(C, xb)
    res = core.drop(C, xb)
    if red is None:
        raise ContractError("reduction is empty; the class has no x-edge")
    tails = tuple(sorted(res.concept_set - red.concept_set))
    labels = []
    for sel in combinations(range(1, red.n + 1), d):
        sigma = mask_of(sel)
        labels.extend((fl.support, fl.pattern)
                      for fl in shatter.forbidden_labels(red, sigma))
    labels = tuple(sorted(labels))
    edges = tuple((t, i) for t in tails
                  for i, (sigma, pat) in enumerate(labels) if t & sigma == pat)
    adj = {t: [i for tt, i in edges if tt == t] for t in tails}
    m = matching.hopcroft_karp(adj)
    if len(tails) != len(labels) or len(m) != len(tails):
        status = "no_perfect_matching"
        m = {}
    elif matching.is_unique_perfect_matching(adj, m):
        status = "unique"
    else:
        status = "multiple"
    deg_t = tuple(t for t in tails if len(adj[t]) == 1)
    counts = [0] * len(labels)
    for _, i in edges:
        counts[i] += 1
    deg_l = tuple(labels[i] for i, k in enumerate(counts) if k == 1)
    return TailMatchingReport(x, red, tails, labels, edges, status, m, deg_t, deg_l)


# -- repmap file format -------------------------------------------------------------

def parse_repmap_text(text: str, n: Optional[int] = None) -> RepMap:
    """Parse '<concept-bitstring> -> <coordset-bitstring>' lines; the width is
    taken from the first line when not given."""
    r: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise ParseError("expected '<concept> -> <coordset>'", line=lineno)
        left, right = parts[0].strip(), parts[1].strip()
        if n is None:
            n = len(left)
        if len(left) != n or len(right) != n:
            raise ParseError(f"expected two bitstrings of width {n}", line=lineno)
        c = core.concept_from_string(left)
        if c in r:
            raise ParseError("duplicate concept", line=lineno)
        r[c] = core.concept_from_string(right)
    if not r:
        raise ParseError("empty representation map file")
    return r


def format_repmap(r: RepMap, n: int) -> str:
    lines = [f"{core.concept_to_string(c, n)} -> {core.concept_to_string(r[c], n)}"
             for c in sorted(r)]
    return "\n".join(lines) + "\n"
