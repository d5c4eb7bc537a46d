import itertools
from math import comb

import pytest

from amplekit import core, shatter
from amplekit.core import ConceptClass, bit, mask_of
from amplekit.errors import ContractError


def cc(*strings):
    return ConceptClass.from_strings(list(strings))


# ---------------------------------------------------------------- oracles

def shattered_oracle(C, Y):
    patterns = {c & Y for c in C}
    return len(patterns) == 1 << bin(Y).count("1")


def strongly_shattered_oracle(C, Y):
    s = C.concept_set
    for c in C:
        tag = c & ~Y
        if all((tag | sub) in s for sub in _subsets(Y)):
            return True
    return False


def _subsets(Y):
    sub = Y
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & Y


def all_classes(n, max_size=None):
    universe = list(range(1 << n))
    for mask in range(1, 1 << (1 << n)):
        concepts = [c for c in universe if mask >> c & 1]
        if max_size is not None and len(concepts) > max_size:
            continue
        yield ConceptClass(n, tuple(concepts))


# ---------------------------------------------------------------- complexes

def test_shattered_complex_examples():
    C = cc("00", "01", "10")
    assert shatter.shattered_complex(C).members == {0, bit(1), bit(2)}
    Q3 = ConceptClass.of(3, range(8))
    assert shatter.shattered_complex(Q3).members == set(range(8))
    assert shatter.shattered_complex(cc("0110")).members == {0}


def test_strongly_shattered_complex_examples():
    C = cc("00", "01", "10")
    assert shatter.strongly_shattered_complex(C).members == {0, bit(1), bit(2)}
    assert shatter.strongly_shattered_complex(cc("00", "11")).members == {0}
    Q3 = ConceptClass.of(3, range(8))
    assert shatter.strongly_shattered_complex(Q3).members == set(range(8))


def test_complexes_match_oracle_exhaustive_n3():
    for C in all_classes(3):
        sh = shatter.shattered_complex(C).members
        st = shatter.strongly_shattered_complex(C).members
        for Y in range(8):
            assert (Y in sh) == shattered_oracle(C, Y)
            assert (Y in st) == strongly_shattered_oracle(C, Y)
        assert st <= sh


def test_complexes_downward_closed():
    for C in all_classes(3):
        for fam in (shatter.shattered_complex(C), shatter.strongly_shattered_complex(C)):
            for m in fam.members:
                for sub in _subsets(m):
                    assert sub in fam.members


# ---------------------------------------------------------------- vc / phi

def test_phi_values():
    assert shatter.phi(3, 12) == 299
    assert shatter.phi(1, 3) == 4
    for d in range(5):
        for n in range(d, 8):
            assert shatter.phi(d, n) == sum(comb(n, i) for i in range(d + 1))


def test_vc_dim():
    assert shatter.vc_dim(ConceptClass.of(3, range(8))) == 3
    assert shatter.vc_dim(cc("000", "001", "010", "100")) == 1
    assert shatter.vc_dim(cc("0110")) == 0


# ---------------------------------------------------------------- predicates

def test_is_ample_examples():
    ok, wit = shatter.is_ample(cc("00", "01", "10"))
    assert ok and wit is None
    ok, wit = shatter.is_ample(cc("00", "11"))
    assert not ok and wit == bit(1)   # lexicographically smallest witness
    assert shatter.is_ample(ConceptClass.of(4, range(16)))[0]


def test_is_maximum_examples():
    assert shatter.is_maximum(cc("00", "01", "10"))
    assert shatter.is_maximum(ConceptClass.of(2, range(4)))
    assert not shatter.is_maximum(cc("00", "11"))


def test_maximum_implies_ample_and_hereditary():
    # restrictions and reductions of maximum classes are maximum
    from amplekit import generate
    C = generate.hamming_ball(5, 2)
    assert shatter.is_maximum(C) and shatter.is_ample(C)[0]
    for x in range(1, 6):
        assert shatter.is_maximum(core.drop(C, bit(x)))
        R = core.reduce(C, bit(x))
        assert R is not None and shatter.is_maximum(R)


def test_ample_iff_complement_ample_n3():
    for C in all_classes(3):
        if C.size == 8:
            continue
        a = shatter.is_ample(C)[0]
        b = shatter.is_ample(core.complement(C))[0]
        assert a == b


# ---------------------------------------------------------------- report

def test_report_examples():
    rep = shatter.ample_characterization_report(cc("00", "01", "10"))
    assert rep.agree and rep.ample
    assert all(rep.values())
    rep = shatter.ample_characterization_report(cc("00", "11"))
    assert rep.agree and not rep.ample
    assert not any(rep.values())
    rep = shatter.ample_characterization_report(ConceptClass.of(3, range(8)))
    assert rep.agree and rep.ample


def test_report_agrees_on_random_classes():
    import random
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 4)
        size = rng.randint(1, 1 << n)
        C = ConceptClass.of(n, rng.sample(range(1 << n), size))
        rep = shatter.ample_characterization_report(C)
        assert rep.agree, (C, rep)
        assert rep.ample == shatter.is_ample(C)[0]


# ---------------------------------------------------------------- sandwich

def test_sandwich_and_sauer_exhaustive_n3():
    for C in all_classes(3):
        sh = shatter.shattered_complex(C)
        st = shatter.strongly_shattered_complex(C)
        assert st.size <= C.size <= sh.size
        assert C.size <= shatter.phi(sh.dim(), 3)


# ---------------------------------------------------------------- labels

def test_forbidden_labels_examples():
    C = cc("00", "01", "10")
    labels = shatter.forbidden_labels(C, mask_of([1, 2]))
    assert len(labels) == 1
    assert labels[0].support == mask_of([1, 2])
    assert labels[0].pattern == mask_of([1, 2])   # missing pattern 11
    with pytest.raises(ContractError):
        shatter.forbidden_labels(ConceptClass.of(2, range(4)), mask_of([1, 2]))


def test_forbidden_labels_unique_for_maximum():
    from amplekit import generate
    C = generate.hamming_ball(5, 2)
    for sel in itertools.combinations(range(1, 6), 3):
        labels = shatter.forbidden_labels(C, mask_of(sel))
        assert len(labels) == 1
