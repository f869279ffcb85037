import random

import pytest
from hypothesis import given, settings, strategies as st

from jnum.effectivity import EFFECTIVE, NOT_EFFECTIVE, EffectivityOracle
from jnum.errors import IterationCapExceeded, UnknownEffectivity
from jnum.model import (
    AFFINE,
    EXCEPTIONAL,
    Divisor,
    ExceptionalGeometry,
    PrimeDivisorEntry,
    ResolutionData,
    from_dict,
    make_example2,
)
from jnum.unloading import antieffective_closure, is_antieffective

from oracles import laufer_closure, random_surface


def test_example1_closure(example1):
    D, trace = antieffective_closure(example1, Divisor(E2=1, E4=1))
    assert D == Divisor(E1=1, E2=1, E3=2, E4=3, E5=1, E6=1)
    assert trace.final == D
    assert all(example1.prime(lab).exceptional for _, s in trace.steps for lab in s)


def test_example1_verdicts(example1):
    verdict, decisions = is_antieffective(example1, Divisor(E1=1, E2=1, E3=2, E4=3, E5=1, E6=1))
    assert verdict == EFFECTIVE
    verdict, decisions = is_antieffective(example1, Divisor(E2=1, E4=1))
    assert verdict == NOT_EFFECTIVE
    assert decisions["E1"].verdict == NOT_EFFECTIVE


def test_aad14_F_is_antieffective(aad14):
    assert is_antieffective(aad14, aad14.F)[0] == EFFECTIVE


def test_cusp_hand_unloading(cusp):
    D, trace = antieffective_closure(cusp, Divisor(E3=1))
    assert D == Divisor(E1=1, E2=1, E3=2)
    assert [set(s) for _, s in trace.steps] == [{"E1", "E2"}, {"E3"}]


def test_already_antieffective_is_fixed(example1):
    D = Divisor(E1=1, E2=1, E3=2, E4=3, E5=1, E6=1)
    out, trace = antieffective_closure(example1, D)
    assert out == D and trace.steps == []


def test_affine_coefficients_untouched(cusp):
    out, _ = antieffective_closure(cusp, Divisor(D_aff=-3, E3=1))
    assert out["D_aff"] == -3


def test_negative_exceptional_coefficients(cusp):
    out, _ = antieffective_closure(cusp, Divisor(E1=-4, E2=-4, E3=-4))
    assert out >= Divisor(E1=-4, E2=-4, E3=-4)
    assert is_antieffective(cusp, out)[0] == EFFECTIVE


def test_orbit_is_raised_for_all_members():
    r = make_example2(3)
    # -D|Ep violates a1 <= ap; one step raises the shared coefficient of all 21 members
    out, trace = antieffective_closure(r, Divisor(E1=1, E2=1, E3=2))
    assert out == Divisor(E1=1, Ep=1, E2=1, E3=2)
    assert trace.steps == [(0, frozenset({"Ep"}))]


def test_unknown_blocks_loudly():
    r = make_example2(3)
    # nothing is refuted, but negative fibre degrees are undecided on E1, E2, E3
    with pytest.raises(UnknownEffectivity) as exc:
        antieffective_closure(r, Divisor(E1=2, Ep=3, E2=2, E3=4))
    assert exc.value.blocking == {"E1": (2, -1), "E2": (0, -15), "E3": (0, -15)}


def _runaway():
    # self-restriction of the wrong sign: adding E only makes -D|_E worse
    o = EffectivityOracle(generators=((1,),), necessary=((1,),))
    geom = ExceptionalGeometry("E", 1, ("deg",), {"A": (0,), "E": (1,)}, False, o)
    return ResolutionData(
        (PrimeDivisorEntry("A", AFFINE, 1, 0), PrimeDivisorEntry("E", EXCEPTIONAL, 1, 1)), (geom,)
    )


def test_iteration_cap():
    with pytest.raises(IterationCapExceeded):
        antieffective_closure(_runaway(), Divisor(E=1), iter_cap=50)


def test_modes_and_permutations_agree(example1):
    rng = random.Random(2)
    for _ in range(20):
        D = Divisor({lab: rng.randint(-2, 3) for lab in example1.exceptional_labels})
        base = antieffective_closure(example1, D)[0]
        assert antieffective_closure(example1, D, mode="sequential")[0] == base
        order = example1.exceptional_labels[:]
        rng.shuffle(order)
        assert antieffective_closure(example1, D, mode="sequential", order=order)[0] == base


def test_bad_order_rejected(cusp):
    with pytest.raises(ValueError):
        antieffective_closure(cusp, Divisor(), mode="sequential", order=["E1"])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_two_dimensional_closure_matches_laufer(seed):
    rng = random.Random(seed)
    doc = random_surface(rng)
    r = from_dict(doc)
    D = {lab: rng.randint(-4, 4) for lab in r.labels}
    ours = antieffective_closure(r, Divisor(D))[0]
    ref = laufer_closure(doc["matrix"], doc["affine_rows"], D)
    assert ours == Divisor(ref)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_two_dimensional_monotone_and_idempotent(seed):
    rng = random.Random(seed)
    r = from_dict(random_surface(rng))
    D1 = Divisor({lab: rng.randint(-4, 4) for lab in r.exceptional_labels})
    D2 = D1 + Divisor({lab: rng.randint(0, 3) for lab in r.exceptional_labels})
    c1 = antieffective_closure(r, D1)[0]
    c2 = antieffective_closure(r, D2)[0]
    assert D1 <= c1 and c1 <= c2
    assert antieffective_closure(r, c1)[0] == c1
    assert is_antieffective(r, c1.meet(c2))[0] == EFFECTIVE
