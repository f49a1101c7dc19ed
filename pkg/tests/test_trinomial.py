import json
import random

import pytest

from maxkernel import _core, linpoly as lp, trinomial as tr
from maxkernel.errors import BudgetExceeded, PreconditionFailed, RangeError
from maxkernel.gf import field_new
from maxkernel.trinomial import TrinomialInstance, Verdict

# exhaustive oracle counts, frozen after an independent scan
ORACLE_COUNTS = {
    (2, 3, 4): 0, (2, 3, 5): 0, (2, 3, 6): 9, (2, 3, 7): 127, (2, 3, 8): 510,
    (3, 3, 6): 28, (3, 3, 7): 0, (2, 4, 8): 17, (2, 4, 5): 0, (2, 4, 6): 0,
}


def _field(p, n):
    return field_new(p, 1, n, 1)


@pytest.mark.parametrize("key", sorted(ORACLE_COUNTS))
def test_oracle_counts(key):
    p, d, n = key
    pairs = tr.max_kernel_pairs(_field(p, n), d)
    assert len(pairs) == ORACLE_COUNTS[key]
    assert pairs == sorted(pairs)


def test_oracle_matches_root_counting_on_small_field():
    from conftest import root_count_dim
    F = _field(2, 5)
    found = set(tr.max_kernel_pairs(F, 2))
    expected = {(a, b) for a in F.elements() for b in F.elements()
                if root_count_dim(lp.trinomial(F, a, b, 2)) == 2}
    assert found == expected


@pytest.mark.parametrize("p,n", [(2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 6)])
def test_d3_characterization_matches_oracle(p, n):
    F = _field(p, n)
    oracle = set(tr.max_kernel_pairs(F, 3))
    accepted = {(a, b) for a in F.elements() for b in F.elements()
                if tr.d3_characterize(F, a, b).is_max}
    assert accepted == oracle


@pytest.mark.parametrize("p,n", [(2, 5), (2, 6), (2, 7), (2, 8), (3, 6)])
def test_classify_matches_oracle(p, n):
    F = _field(p, n)
    oracle = set(tr.max_kernel_pairs(F, 3))
    accepted = {(a, b) for a in F.elements() for b in F.elements()
                if tr.classify(TrinomialInstance(F, 3, a, b)).is_max}
    assert accepted == oracle


def test_q3_n7_nothing_accepted():
    F = _field(3, 7)
    assert tr.max_kernel_pairs(F, 3) == []
    rng = random.Random(7)
    cands = [(a, tr.case_c_b(F, a, 3)) for a in F.nonzero() if F.norm(a, 1) == 1]
    cands += [(F.random_element(rng), F.random_element(rng)) for _ in range(2000)]
    for a, b in cands:
        inst = TrinomialInstance(F, 3, a, b)
        assert not tr.check_case_c(inst).is_max
        assert not tr.d3_characterize(F, a, b).is_max
    assert "d-1 is not a power of p" in tr.check_case_c(TrinomialInstance(F, 3, *cands[0])).witness


def test_small_n_examples():
    F = _field(2, 6)
    ones = [a for a in F.nonzero() if F.pow(a, 9) == 1]
    assert len(ones) == 9
    for a in ones:
        r = tr.classify_small_n(TrinomialInstance(F, 3, a, 0))
        assert r.is_max and r.rule == "T13b"
        assert not tr.classify_small_n(TrinomialInstance(F, 3, a, 1)).is_max
    r = tr.classify_small_n(TrinomialInstance(_field(2, 5), 3, 1, 0))
    assert r.verdict is Verdict.NOT_MAX_KERNEL and r.rule == "T13a"
    with pytest.raises(RangeError):
        tr.classify_small_n(TrinomialInstance(_field(2, 7), 3, 1, 0))


def test_case_c_family_n7(f2_7):
    F = f2_7
    fam = {(a, F.pow(a, 19)) for a in F.nonzero() if F.norm(a, 1) == 1}
    assert len(fam) == 127
    assert fam == set(tr.max_kernel_pairs(F, 3))
    for a, b in list(fam)[:10]:
        assert b == tr.case_c_b(F, a, 3)
        assert tr.check_case_c(TrinomialInstance(F, 3, a, b)).rule == "T13c"
    with pytest.raises(RangeError):
        tr.check_case_c(TrinomialInstance(_field(2, 8), 3, 1, 1))


def test_case_c_q3_d4_n13():
    F = field_new(3, 1, 13, 1)
    rng = random.Random(1)
    checked = 0
    while checked < 2:
        a = F.random_nonzero(rng)
        if F.norm(a, 1) != F.neg(1):
            continue
        inst = TrinomialInstance(F, 4, a, tr.case_c_b(F, a, 4))
        assert tr.check_case_c(inst).is_max
        assert tr.d4_characterize(F, inst.a, inst.b).is_max
        assert inst.kernel_dim() == 4
        checked += 1


def test_n8_alpha_family(f2_8):
    F = f2_8
    alphas = F.cube_roots_of_unity()
    fam = {(a, tr.d8_b(F, a, al)) for a in F.nonzero() if F.norm(a, 1) == 1 for al in alphas}
    assert len(fam) == 510
    assert fam == set(tr.max_kernel_pairs(F, 3))


def test_q4_n8_no_pairs_with_b_nonzero():
    F = field_new(2, 2, 8, 1)
    assert F.q % 3 == 1
    ctx = F.ctx
    plan = ctx.plan(F, 3)
    rng = random.Random(4)
    avals = [a for a in F.nonzero() if F.norm(a, 1) == 1]
    bvals = []
    for i, a in enumerate(avals):
        bvals.append(tr.d8_b(F, a, F.cube_roots_of_unity()[i % 2]))
    avals += [F.random_element(rng) for _ in range(20000)]
    bvals += [F.random_nonzero(rng) for _ in range(20000)]
    nul = _core.impl.pair_nullities(ctx, plan, avals, bvals)
    assert all(v < 3 * F.h for v in nul)


def test_main_system_exhaustive_d3():
    for n in (7, 8):
        F = _field(2, n)
        oracle = set(tr.max_kernel_pairs(F, 3))
        accepted = {(a, b) for a in F.elements() for b in F.elements()
                    if tr.main_system_check(TrinomialInstance(F, 3, a, b)).is_max}
        assert accepted == oracle


@pytest.mark.parametrize("d,g", [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
def test_main_system_random(d, g):
    F = _field(2, d * (d - 1) + g)
    rng = random.Random(100 * d + g)
    for _ in range(500):
        inst = TrinomialInstance(F, d, F.random_element(rng), F.random_element(rng))
        assert tr.main_system_check(inst).is_max == inst.has_max_kernel()
    # also hit the accepting branch where a known family lives
    if (d, g) == (4, 3):
        for _ in range(50):
            a = F.random_nonzero(rng)
            a = F.div(a, F.sigma(a, 1))  # norm one
            inst = TrinomialInstance(F, 4, a, tr.even_family_b(F, a, 4))
            assert tr.main_system_check(inst).is_max and inst.has_max_kernel()


def test_main_system_zero_a_and_range(f2_7):
    r = tr.main_system_check(TrinomialInstance(f2_7, 3, 0, 5))
    assert not r.is_max and r.witness == (tr.NORM_WITNESS,)
    with pytest.raises(RangeError):
        tr.main_system_check(TrinomialInstance(_field(2, 6), 3, 1, 1))


def test_ladder_targets_match_c_on_family(f2_15):
    F = f2_15
    rng = random.Random(5)
    for _ in range(5):
        a = F.random_nonzero(rng)
        a = F.div(a, F.sigma(a, 1))
        b = tr.even_family_b(F, a, 4)
        assert lp.c_coeff_recursive(F, a, b, 4, 3, 12) == tr.ladder_targets(F, a, b, 4, 3)


def test_necessary_conditions_on_oracle_pairs():
    for n in (7, 8):
        F = _field(2, n)
        pairs = tr.max_kernel_pairs(F, 3)
        assert all(tr.necessary_conditions(TrinomialInstance(F, 3, a, b)) for a, b in pairs)
    F = _field(2, 7)
    rng = random.Random(1)
    witness = None
    while witness is None:
        inst = TrinomialInstance(F, 3, F.random_nonzero(rng), F.random_nonzero(rng))
        if not inst.has_max_kernel() and not tr.necessary_conditions(inst):
            witness = inst
    assert tr.necessary_condition_flags(TrinomialInstance(F, 3, 0, 1)) == (False, False)


def test_necessary_conditions_on_even_family(f2_15):
    F = f2_15
    members = list(tr.even_family_members(F, 4))
    assert all(tr.necessary_conditions(m) for m in members[::97])


def test_cor41_exponents_shape():
    Sg, Sg1, ge1, ge2 = tr.cor41_exponents(4, 3)
    F = _field(2, 15)
    assert F.exponent(Sg) == 1 + 2 + 4
    assert F.exponent(Sg1) == 1 + 2
    assert F.exponent(ge1) == (2 ** 3) * (1 + 2 ** 4 + 2 ** 8)
    assert F.exponent(ge2) == (2 ** 2) * (2 ** 3 + 2 ** 6 + 2 ** 9)


def test_family_even_preconditions(f2_15):
    F = f2_15
    # over F_2 every nonzero element has norm 1, so only a = 0 fails the norm bullet
    with pytest.raises(PreconditionFailed) as exc:
        tr.family_even(F, 4, 0)
    assert exc.value.failed == ["N(a) = 1"]
    with pytest.raises(PreconditionFailed) as exc:
        tr.family_even(_field(3, 8), 4, 1)
    assert "q is even" in exc.value.failed and "n = d^2 - 1" in exc.value.failed
    with pytest.raises(PreconditionFailed) as exc:
        tr.family_even(_field(2, 8), 3, 1)
    assert "d is a power of 2 (d >= 4)" in exc.value.failed


def test_family_even_sample(f2_15):
    F = f2_15
    members = list(tr.even_family_members(F, 4))
    assert len(members) == 32767
    for m in members[::1000]:
        assert m.kernel_dim() == 4
        assert m.b == tr.d4_n15_b(F, m.a)
        assert tr.d4_characterize(F, m.a, m.b).is_max


def test_d4_exponents_agree():
    # σ^4 e_1 and σ^4 + σ^8 + σ^12 are the same integer mod 2^15 - 1
    from maxkernel.gf import FrobExponent
    F = _field(2, 15)
    e1 = FrobExponent.geometric(3, 4)
    assert F.exponent(e1.shift(4)) == F.exponent(FrobExponent.geometric(3, 4, 4)) == 16 + 256 + 4096


def test_d4_small_n_matches_oracle():
    for n in (5, 6, 7, 8):
        F = _field(2, n)
        oracle = set(tr.max_kernel_pairs(F, 4))
        accepted = {(a, b) for a in F.elements() for b in F.elements()
                    if tr.d4_characterize(F, a, b).is_max}
        assert accepted == oracle


def test_d4_negative_cases():
    F = _field(2, 13)
    rng = random.Random(13)
    for _ in range(200):
        a = F.random_nonzero(rng)
        assert not tr.d4_characterize(F, a, tr.d4_n13_b(F, a)).is_max
    F3 = field_new(3, 1, 15, 1)
    for _ in range(3):
        a = F3.random_nonzero(rng)
        a = F3.div(a, F3.sigma(a, 1))
        b = tr.d4_n15_b(F3, a)
        r = tr.d4_characterize(F3, a, b)
        assert not r.is_max and "q is odd" in r.witness
        assert TrinomialInstance(F3, 4, a, b).kernel_dim() < 4
    with pytest.raises(RangeError):
        tr.d4_characterize(_field(2, 16), 1, 1)


def test_d4_n14_uses_ladder():
    F = _field(2, 14)
    rng = random.Random(14)
    for _ in range(200):
        a, b = F.random_nonzero(rng), F.random_element(rng)
        inst = TrinomialInstance(F, 4, a, b)
        r = tr.d4_characterize(F, a, b)
        assert r.rule == "P62-14"
        assert r.is_max == tr.main_system_check(inst).is_max == inst.has_max_kernel()
        assert len(tr.d4_n14_display(F, a, b)) == 4


def test_scaling_invariance(rng):
    F = _field(2, 8)
    pairs = tr.max_kernel_pairs(F, 3)
    sample = [rng.choice(pairs) for _ in range(20)]
    sample += [(F.random_element(rng), F.random_element(rng)) for _ in range(20)]
    for a, b in sample:
        f = lp.trinomial(F, a, b, 3)
        g = f.scale(F.random_nonzero(rng))
        assert lp.kernel_dim(g) == lp.kernel_dim(f)
        h = lp.normalize(g)
        assert h.coeffs == f.coeffs
        assert tr.classify(TrinomialInstance(F, 3, h.coeff(0), h.coeff(1))).is_max == ((a, b) in pairs)


def test_budget_and_workers():
    F = _field(2, 15)
    with pytest.raises(BudgetExceeded) as exc:
        tr.max_kernel_pairs(F, 4)
    assert exc.value.required == 2 ** 30 and exc.value.budget == tr.DEFAULT_BUDGET
    G = _field(2, 8)
    assert tr.max_kernel_pairs(G, 3, workers=2) == tr.max_kernel_pairs(G, 3)
    only_one = tr.max_kernel_pairs(G, 3, a_filter=lambda a: a == 1)
    assert all(a == 1 for a, _ in only_one) and len(only_one) == 2
    with pytest.raises(RangeError):
        tr.max_kernel_pairs(G, 9)


def test_instance_validation_and_json(f2_7):
    with pytest.raises(RangeError):
        TrinomialInstance(f2_7, 1, 1, 1)
    with pytest.raises(RangeError):
        TrinomialInstance(f2_7, 8, 1, 1)
    inst = next(tr.enumerate_max_kernel(f2_7, 3))
    r = tr.classify(inst)
    d = json.loads(json.dumps(r.to_dict(inst)))
    assert d["verdict"] == "MaxKernel" and d["rule"] == "T13c" and d["n"] == 7
    assert set(d) == {"d", "n", "field", "a", "b", "verdict", "rule", "witness"}


def test_brute_force_rule():
    F = _field(2, 4)
    r = tr.classify(TrinomialInstance(F, 2, 1, 1))
    assert r.rule == "BruteForce"
    assert r.is_max == TrinomialInstance(F, 2, 1, 1).has_max_kernel()


def test_is_power_of():
    assert tr.is_power_of(1, 3) and tr.is_power_of(9, 3) and not tr.is_power_of(6, 2)
    assert not tr.is_power_of(0, 2)


# maximum-kernel pairs at q=2, d=4, n=14, taken from an exhaustive scan (32766 pairs in total)
N14_PAIRS = [(7, 875), (7, 9701), (7, 9870), (9, 1404), (9, 15221), (11, 6330), (13, 965)]


def test_n14_display_second_equation_disagrees():
    F = _field(2, 14)
    for a, b in N14_PAIRS:
        inst = TrinomialInstance(F, 4, a, b)
        assert inst.kernel_dim() == 4
        assert tr.d4_characterize(F, a, b).is_max
        assert tr.d4_n14_display(F, a, b) == (True, False, True, True)
