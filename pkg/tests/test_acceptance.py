"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from pathlib import Path

import pytest

from maxkernel import _core, codes, linpoly as lp, trinomial as tr
from maxkernel.gf import field_new
from maxkernel.trinomial import TrinomialInstance

RESULTS: dict[int, tuple[bool, str, float]] = {}

_cache: dict = {}


def _f(p, n, h=1):
    return field_new(p, h, n, 1)


def _pairs(p, n, d):
    key = (p, n, d)
    if key not in _cache:
        _cache[key] = tr.max_kernel_pairs(_f(p, n), d)
    return _cache[key]


def _record(num: int, fn):
    t = time.perf_counter()
    ok, detail = fn()
    RESULTS[num] = (ok, detail, time.perf_counter() - t)
    return ok, detail


def line(num: int) -> str:
    ok, detail, secs = RESULTS[num]
    return f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}  [{secs:.1f}s]"


# ---------------------------------------------------------------------------


def c1():
    F = _f(2, 7)
    ctx, plan = F.ctx, F.ctx.plan(F, 3)
    vec_hits = {(a, b) for a in F.elements() for b in _core.impl.vector_criterion_bs(ctx, plan, a)}
    bad = 0
    for a in F.elements():
        nul = _core.impl.trinomial_nullities(ctx, plan, a)
        for b in F.elements():
            f = lp.trinomial(F, a, b, 3)
            kd3 = int(nul[b]) == 3
            if not (lp.has_max_kernel_companion(f) == lp.has_max_kernel_vector(f) == kd3
                    == ((a, b) in vec_hits)):
                bad += 1
    return bad == 0, f"16384 pairs, {bad} disagreements among companion/vector/kernel_dim"


def c2():
    F = _f(2, 7)
    fam = {(a, F.pow(a, 19)) for a in F.nonzero() if F.norm(a, 1) == 1}
    found = set(_pairs(2, 7, 3))
    return found == fam and len(found) == 127, f"{len(found)} max-kernel pairs, equal to family: {found == fam}"


def c3():
    F = _f(2, 8)
    fam = {(a, tr.d8_b(F, a, al)) for a in F.nonzero() if F.norm(a, 1) == 1
           for al in F.cube_roots_of_unity()}
    found = set(_pairs(2, 8, 3))
    D = codes.weight_census(F, 3).count(5)
    ok = found == fam and len(found) == 510 and D == 130050 == 2 * 255 ** 2
    return ok, f"{len(found)} pairs (alpha family {len(fam)}), weight-5 count {D}"


def c4():
    F = _f(2, 6)
    found = _pairs(2, 6, 3)
    shape = all(b == 0 and F.pow(a, 9) == 1 for a, b in found)
    D = codes.weight_census(F, 3).count(3)
    ok = len(found) == 9 and shape and D == 567 == 63 * 9
    return ok, f"{len(found)} pairs, b=0 and a^9=1: {shape}, weight-3 count {D}"


def c5():
    F = _f(2, 15)
    members = list(tr.even_family_members(F, 4))
    ctx = F.ctx
    nul = _core.impl.pair_nullities(ctx, ctx.plan(F, 4), [m.a for m in members], [m.b for m in members])
    verified = sum(1 for v in nul if int(v) == 4)
    # distinct monic-negated classes times their q^n - 1 scalar multiples
    lower = verified * (F.order - 1)
    bound = (2 ** 15 - 1) ** 2
    ok = len(members) == verified == 32767 and lower >= bound
    return ok, f"{verified}/{len(members)} members with kernel dim 4; D >= {lower} >= {bound}"


def c6():
    F = _f(2, 13)
    ctx, plan = F.ctx, F.ctx.plan(F, 4)
    rng = random.Random(2026)
    N = 10 ** 6
    A = [rng.randrange(F.order) for _ in range(N)]
    B = [rng.randrange(F.order) for _ in range(N)]
    hits = sum(1 for v in _core.impl.pair_nullities(ctx, plan, A, B) if int(v) == 4)
    fam = list(F.nonzero())  # N(a) = (-1)^3 = 1 holds for every nonzero a over F_2
    fam_hits = sum(1 for v in _core.impl.pair_nullities(ctx, plan, fam, [tr.case_c_b(F, a, 4) for a in fam])
                   if int(v) == 4)
    q3 = len(tr.max_kernel_pairs(_f(3, 7), 3))
    ok = hits == fam_hits == q3 == 0
    return ok, (f"q=2 n=13: {hits} in 10^6 random, {fam_hits} in {len(fam)} case-c members; "
                f"q=3 n=7 exhaustive: {q3}")


def c7():
    rng = random.Random(7)
    bad_exp = 0
    for _ in range(200):
        p = rng.choice([2, 3])
        d = rng.choice([3, 4])
        n = rng.randrange(d + 1, 14 if p == 2 else 9)
        F = field_new(p, 1, n, rng.choice([s for s in range(1, n) if math.gcd(s, n) == 1]))
        a, b = F.random_element(rng), F.random_element(rng)
        k = n - d + 1
        for j in range(1, min(d - 1, (k - 1) // d + 1) + 1):
            closed = [lp.c_coeff_closed(F, a, b, d, j, t, k) for t in range(j + 1)]
            if closed != lp.c_coeff_recursive(F, a, b, d, j, k) or not lp.expansion_holds(F, a, b, d, j, k, closed):
                bad_exp += 1
    F = _f(2, 15)
    bad_bin = 0
    for _ in range(200):
        x = F.random_nonzero(rng)
        a = F.div(x, F.sigma(x, 1))
        b = tr.even_family_b(F, a, 4)
        if not lp.commutation_holds(F, a, b, 4):
            bad_bin += 1
            continue
        for j in range(1, 4):
            c = lp.c_coeff_recursive(F, a, b, 4, j, 12)
            for i in range(j + 1):
                z = lp.z_recursion(F, a, b, 4, j, i, 12, "a")
                if z != lp.z_recursion(F, a, b, 4, j, i, 12, "b") or \
                        c[i] != F.mul(F.scalar(lp.binom_mod_p(j, i, 2)), z):
                    bad_bin += 1
    return bad_exp == bad_bin == 0, (f"200 closed-vs-recursive instances ({bad_exp} bad), "
                                     f"200 c = binom*z instances ({bad_bin} bad)")


def c8():
    checked = bad = 0
    for n in (7, 8):
        F = _f(2, n)
        for a, b in _pairs(2, n, 3):
            checked += 1
            bad += not tr.necessary_conditions(TrinomialInstance(F, 3, a, b))
    return bad == 0 and checked == 637, f"{checked} pairs from n=7,8 checked, {bad} violations (n=6 has g=0)"


def c9():
    F7 = _f(2, 7)
    V7 = codes.kernel_subspace(lp.trinomial(F7, 1, tr.case_c_b(F7, 1, 3), 3))
    C7 = codes.build_orbit_code(V7, certify=True)
    F15 = _f(2, 15)
    m = tr.family_even(F15, 4, 1)
    V15 = codes.kernel_subspace(m.poly)
    C15 = codes.build_orbit_code(V15, certify=True)
    ok = (V7.k, C7.size, C7.min_distance) == (3, 127, 4) and (V15.k, C15.size, C15.min_distance) == (4, 32767, 6)
    return ok, (f"n=7: size {C7.size} distance {C7.min_distance}; "
                f"n=15: size {C15.size} distance {C15.min_distance}")


def c10():
    F = _f(2, 15)
    rep = codes.quasi_subfield_check(tr.family_even(F, 4, 1).poly)
    ok = bool(rep) and rep.splits and rep.degree_ok and rep.lambda_qdegree * 15 < 16
    return ok, f"quasi-subfield {bool(rep)} (splits {rep.splits}, {rep.lambda_qdegree} < 16/15: {rep.degree_ok})"


def c11():
    fails = []
    for seed in (1, 2, 3):
        rng = random.Random(seed)
        for shape in [(2, 1, 6), (3, 1, 4), (2, 2, 4)]:
            F = field_new(shape[0], shape[1], shape[2], 1)
            for _ in range(200):
                x, y, z = (F.random_element(rng) for _ in range(3))
                if F.mul(x, F.add(y, z)) != F.add(F.mul(x, y), F.mul(x, z)) or \
                        F.mul(F.mul(x, y), z) != F.mul(x, F.mul(y, z)) or \
                        (x and F.mul(x, F.inv(x)) != 1):
                    fails.append(("axioms", seed, shape))
                t = rng.choice([t for t in range(1, F.n + 1) if F.n % t == 0])
                if F.norm(F.mul(x, y), t) != F.mul(F.norm(x, t), F.norm(y, t)):
                    fails.append(("norm", seed, shape))
                if F.sigma(x, F.n) != x:
                    fails.append(("sigma", seed, shape))
            g = F.generator
            if [j for j in range(1, F.n + 1) if F.sigma(g, j) == g][0] != F.n:
                fails.append(("sigma-order", seed, shape))
            nul = _core.impl.pair_nullities(F.ctx, F.ctx.plan(F, 2),
                                            [F.random_element(rng) for _ in range(300)],
                                            [F.random_element(rng) for _ in range(300)])
            if any(int(v) % F.h for v in nul):
                fails.append(("h-divisibility", seed, shape))
        G = _f(2, 6)
        subs = []
        while len(subs) < 8:
            V = codes.Subspace.span(G, [G.random_nonzero(rng) for _ in range(rng.randrange(1, 4))])
            subs.append(V)
        dist = codes.subspace_distance
        for U in subs:
            for V in subs:
                if dist(U, V) != dist(V, U) or (dist(U, V) == 0) != (U == V):
                    fails.append(("metric", seed))
                for W in subs:
                    if dist(U, W) > dist(U, V) + dist(V, W):
                        fails.append(("triangle", seed))
        for p, n in [(2, 5), (3, 4)]:
            C = codes.weight_census(_f(p, n), 3)
            if C.total != p ** (3 * n) - 1:
                fails.append(("census-total", seed, p, n))
    return not fails, f"seeds 1,2,3: {len(fails)} property failures"


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10, 11: c11}


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    ok, detail = _record(num, CRITERIA[num])
    print(line(num))
    assert ok, detail


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    failed = 0
    for num in sorted(CRITERIA):
        ok, _ = _record(num, CRITERIA[num])
        failed += not ok
        print(line(num), flush=True)
    sys.exit(1 if failed else 0)
