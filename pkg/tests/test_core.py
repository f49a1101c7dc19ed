import random

import pytest

from maxkernel import _core, _fallback
from maxkernel.gf import field_new

BACKENDS = _core.backends()


def test_backend_selection_reports_a_known_name():
    assert _core.BACKEND in BACKENDS
    assert BACKENDS["python"] is _fallback


@pytest.mark.parametrize("shape,d", [((2, 1, 7, 1), 3), ((3, 1, 5, 2), 3), ((2, 2, 4, 3), 2),
                                     ((5, 1, 3, 1), 2)])
def test_backends_agree(shape, d):
    F = field_new(*shape)
    ctx = F.ctx
    plan = ctx.plan(F, d)
    rng = random.Random(5)
    avals = [0, 1] + [F.random_nonzero(rng) for _ in range(3)]
    pairs = [(rng.randrange(F.order), rng.randrange(F.order)) for _ in range(50)]
    results = {}
    for name, impl in BACKENDS.items():
        nul = [list(map(int, impl.trinomial_nullities(ctx, plan, a))) for a in avals]
        pn = list(map(int, impl.pair_nullities(ctx, plan, [a for a, _ in pairs], [b for _, b in pairs])))
        vb = [list(impl.vector_criterion_bs(ctx, plan, a)) for a in avals]
        results[name] = (nul, pn, vb)
    assert len({repr(v) for v in results.values()}) == 1


def test_rank_backends_agree():
    rng = random.Random(2)
    for p, m in [(2, 10), (3, 6), (7, 4)]:
        for _ in range(30):
            cols = [rng.randrange(p ** m) for _ in range(rng.randrange(1, m + 3))]
            ranks = {name: impl.rank_fp(cols, p, m) for name, impl in BACKENDS.items()}
            assert len(set(ranks.values())) == 1


def test_orbit_histogram_backends_agree():
    F = field_new(2, 1, 7, 1)
    basis = [1, 2, 4]
    hists = {name: list(impl.orbit_rank_histogram(F.ctx, basis, F.N)) for name, impl in BACKENDS.items()}
    assert len({tuple(h) for h in hists.values()}) == 1


def test_nullspace_and_echelon():
    # the identity map minus itself: everything is in the kernel
    assert _core.nullspace_fp([0, 0, 0], 2, 3) == [4, 2, 1]
    assert _core.echelon_fp([3, 1], 2, 2) == [2, 1]
    assert _core.rank_fp([1, 2, 3], 2, 2) == 2


def test_vector_kernel_backends_agree_on_every_a():
    F = field_new(2, 1, 7, 1)
    plan = F.ctx.plan(F, 3)
    hits = {name: [b for a in F.nonzero() for b in impl.vector_criterion_bs(F.ctx, plan, a)]
            for name, impl in BACKENDS.items()}
    assert len({tuple(h) for h in hits.values()}) == 1
    assert len(next(iter(hits.values()))) == 127


def test_pure_python_selection_end_to_end():
    import os
    import subprocess
    import sys
    code = ("from maxkernel import _core, trinomial as tr; from maxkernel.gf import field_new; "
            "print(_core.BACKEND, len(tr.max_kernel_pairs(field_new(2, 1, 7, 1), 3)))")
    env = dict(os.environ, MAXKERNEL_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "127"]
