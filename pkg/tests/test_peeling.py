import itertools

import pytest

from amplekit import core, generate, graph, peeling, shatter
from amplekit.core import ConceptClass, Cube, bit, mask_of
from amplekit.errors import ContractError, IntegrityError, OrderingValidationError


def cc(*strings):
    return ConceptClass.from_strings(list(strings))


def ample_classes(n, max_size=None):
    for mask in range(1, 1 << (1 << n)):
        concepts = tuple(c for c in range(1 << n) if mask >> c & 1)
        if max_size is not None and len(concepts) > max_size:
            continue
        C = ConceptClass(n, concepts)
        if shatter.is_ample(C)[0]:
            yield C


# ---------------------------------------------------------------- classify

def test_classify_ordering_all_true():
    Q2 = ConceptClass.of(2, range(4))
    rep = peeling.classify_ordering(Q2, (0, 2, 1, 3))
    assert rep.ample and rep.corner_peeling and rep.isometric and rep.weakly_isometric
    assert rep.all_equal


def test_classify_ordering_all_false():
    Q2 = ConceptClass.of(2, range(4))
    # prefix {00, 11} is disconnected: fails every property at level 2
    rep = peeling.classify_ordering(Q2, (0, 3, 2, 1))
    assert not (rep.ample or rep.corner_peeling or rep.isometric
                or rep.weakly_isometric)
    assert rep.all_equal


def test_classify_rejects_non_permutation():
    Q2 = ConceptClass.of(2, range(4))
    with pytest.raises(ContractError):
        peeling.classify_ordering(Q2, (0, 0, 1, 3))


def test_four_properties_equivalent_small_exhaustive():
    # all orderings of every ample class on n <= 2
    for C in ample_classes(2):
        for perm in itertools.permutations(C.concepts):
            assert peeling.classify_ordering(C, perm).all_equal


# ---------------------------------------------------------------- search

def test_search_three_vertex_path():
    C = cc("00", "01", "10")
    res = peeling.corner_peeling_search(C)
    assert res.peelable and res.proven
    assert peeling.classify_ordering(C, res.ordering).corner_peeling


def test_search_cube():
    for d in (1, 2, 3):
        Q = ConceptClass.of(d, range(1 << d))
        res = peeling.corner_peeling_search(Q)
        assert res.peelable
        assert peeling.classify_ordering(Q, res.ordering).corner_peeling


def test_search_requires_ample():
    with pytest.raises(ContractError):
        peeling.corner_peeling_search(cc("00", "11"))


def test_search_budget_flag():
    C = generate.hamming_ball(4, 1)
    res = peeling.corner_peeling_search(C, budget=0)
    # with no budget the search cannot finish nor prove anything
    assert not res.peelable and not res.proven


def test_found_peelings_are_corner_peelings_n3():
    for C in ample_classes(3):
        res = peeling.corner_peeling_search(C)
        assert res.peelable          # every ample class on n=3 is dismantlable
        rep = peeling.classify_ordering(C, res.ordering)
        assert rep.all_equal and rep.corner_peeling


# ------------------------------------------------------- corner properties

def test_corner_removal_preserves_ample():
    for C in ample_classes(3):
        for c in graph.corners(C):
            if C.size == 1:
                continue
            rest = ConceptClass.of(3, [d for d in C if d != c])
            assert shatter.is_ample(rest)[0]


def test_isometric_extension_is_ample_with_corner():
    # if C ∪ {t} stays isometric then it is ample and t is a corner of it
    for C in ample_classes(3, max_size=7):
        for t in range(8):
            if t in C.concept_set:
                continue
            ext = ConceptClass.of(3, list(C.concepts) + [t])
            if not graph.is_isometric(ext, "full"):
                continue
            assert shatter.is_ample(ext)[0]
            assert graph.is_corner(ext, t)


def test_outside_neighbor_minimal_cube():
    # for ample C and t outside with neighbors in C, the cube spanned by t
    # and its C-neighbors lies inside C ∪ {t}
    for C in ample_classes(3, max_size=7):
        s = C.concept_set
        for t in range(8):
            if t in s:
                continue
            nbr_coords = [x for x in (1, 2, 3) if (t ^ bit(x)) in s]
            if not nbr_coords:
                continue
            support = mask_of(nbr_coords)
            tag = t & ~support
            verts = set(Cube(tag, support).vertices())
            assert verts <= s | {t}


# ------------------------------------------------------- guaranteed peels

def test_antimatroid_peeling_examples():
    chain = cc("00", "10", "11")            # down-sets of a 2-chain
    order = peeling.antimatroid_peeling(chain)
    assert order == (0, bit(1), mask_of([1, 2]))
    full = ConceptClass.of(2, range(4))
    order = peeling.antimatroid_peeling(full)
    assert [core.popcount(c) for c in order] == sorted(core.popcount(c) for c in full)
    star = cc("00", "10", "01")
    assert peeling.antimatroid_peeling(star)[0] == 0


def test_antimatroid_peeling_is_corner_peeling():
    for seed in range(10):
        C = generate.random_downset_class(4, seed)
        order = peeling.antimatroid_peeling(C)
        assert peeling.classify_ordering(C, order).corner_peeling


def test_antimatroid_axiom_errors():
    with pytest.raises(ContractError, match="empty set"):
        peeling.antimatroid_peeling(cc("10", "11"))
    with pytest.raises(ContractError, match="intersection"):
        peeling.antimatroid_peeling(cc("000", "110", "011"))
    # {∅, {1,2}}: the pair {1,2} has no extremal points, closure(∅) = ∅ ≠ it
    with pytest.raises(ContractError, match="extremal"):
        peeling.antimatroid_peeling(cc("00", "11"))


def test_two_dim_peeling_examples():
    C = cc("00", "01", "10")
    order = peeling.two_dim_peeling(C)
    assert peeling.classify_ordering(C, order).corner_peeling
    Q2 = ConceptClass.of(2, range(4))
    assert peeling.classify_ordering(Q2, peeling.two_dim_peeling(Q2)).corner_peeling


def test_two_dim_peeling_six_cycle():
    # the 6-cycle of Q_3 has vc_dim 2 but is not ample (7 shattered sets,
    # 6 concepts), so the precondition check must refuse it
    cycle = ConceptClass.of(3, [c for c in range(8) if c not in (0, 7)])
    assert not shatter.is_ample(cycle)[0]
    assert shatter.vc_dim(cycle) == 2
    with pytest.raises(ContractError):
        peeling.two_dim_peeling(cycle)
    # vc-dim-2 ample variant: Q_3 minus a single vertex
    C = ConceptClass.of(3, range(7))
    assert shatter.is_ample(C)[0] and shatter.vc_dim(C) == 2
    order = peeling.two_dim_peeling(C)
    assert peeling.classify_ordering(C, order).corner_peeling


def test_two_dim_peeling_rejects_high_dim():
    with pytest.raises(ContractError):
        peeling.two_dim_peeling(ConceptClass.of(3, range(8)))


# ---------------------------------------------------------------- collapse

def test_collapse_single_edge():
    C = ConceptClass.of(1, [0, 1])
    seq = peeling.collapse_sequence(C)
    assert len(seq) == 1
    q, p = seq[0]
    assert q.dim == 0 and p.dim == 1


def test_collapse_square_pair_count():
    # face poset of Q_2 has 9 faces: 4 pairs + 1 surviving vertex
    Q2 = ConceptClass.of(2, range(4))
    seq = peeling.collapse_sequence(Q2)
    assert len(seq) == 4


def test_collapse_requires_ample():
    with pytest.raises(ContractError):
        peeling.collapse_sequence(cc("00", "11"))


def test_collapse_replay_validates_n3():
    for C in ample_classes(3):
        seq = peeling.collapse_sequence(C)
        faces = len(graph.all_cubes(C))
        assert 2 * len(seq) + 1 == faces
        peeling.replay_collapse(C, seq)


def test_replay_rejects_bad_sequence():
    Q2 = ConceptClass.of(2, range(4))
    seq = peeling.collapse_sequence(Q2)
    with pytest.raises(IntegrityError):
        peeling.replay_collapse(Q2, list(reversed(seq)))
    with pytest.raises(IntegrityError):
        peeling.replay_collapse(Q2, seq[:-1])


# ---------------------------------------------------------------- shelling

def test_ordering_to_shelling_square():
    Q2 = ConceptClass.of(2, range(4))
    order = (0, 1, 3, 2)
    sh = peeling.ordering_to_shelling(Q2, order)
    assert len(sh.facets) == 4
    peeling.validate_shelling(sh)


def test_shelling_singleton():
    C = cc("01")
    sh = peeling.ordering_to_shelling(C, (bit(2),))
    assert sh.facets == (bit(2),)
    C2, order = peeling.shelling_to_ordering(sh)
    assert order == (bit(2),)


def test_shelling_round_trip_identity():
    for C in ample_classes(3, max_size=5):
        res = peeling.corner_peeling_search(C)
        order = res.ordering
        sh = peeling.ordering_to_shelling(C, order)
        peeling.validate_shelling(sh)
        C2, order2 = peeling.shelling_to_ordering(sh)
        assert C2.concepts == C.concepts
        assert tuple(order2) == tuple(order)


def test_shelling_validators_reject():
    Q2 = ConceptClass.of(2, range(4))
    with pytest.raises(OrderingValidationError) as exc:
        peeling.ordering_to_shelling(Q2, (0, 3, 1, 2))   # prefix {00,11}
    assert exc.value.index == 1
    with pytest.raises(OrderingValidationError):
        peeling.validate_shelling(peeling.ShellingOrder(2, (0, 3, 1, 2)))
    with pytest.raises(OrderingValidationError):
        peeling.validate_shelling(peeling.ShellingOrder(2, (0, 0)))


def test_shelling_agrees_with_isometric_classifier():
    # an ordering maps to a valid partial shelling iff it is isometric
    for C in ample_classes(2):
        for perm in itertools.permutations(C.concepts):
            rep = peeling.classify_ordering(C, perm)
            try:
                sh = peeling.ordering_to_shelling(C, perm)
                peeling.validate_shelling(sh)
                ok = True
            except OrderingValidationError:
                ok = False
            assert ok == rep.isometric
