"""Maximum-kernel characterizations for L(x) = a x + b x^σ - x^{σ^d}.

Every checker returns a :class:`ClassificationResult`; the brute-force
enumerator at the bottom is the oracle they are all tested against.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator

from . import linpoly
from .errors import BudgetExceeded, PreconditionFailed, RangeError
from .gf import Field, FrobExponent

DEFAULT_BUDGET = 1 << 26

NORM_WITNESS = "a = 0: the norm condition N(a_0) = ±N(a_d) cannot hold"


class Verdict(str, enum.Enum):
    MAX_KERNEL = "MaxKernel"
    NOT_MAX_KERNEL = "NotMaxKernel"


@dataclass(frozen=True)
class TrinomialInstance:
    field: Field
    d: int
    a: int
    b: int

    def __post_init__(self):
        if self.d < 2:
            raise RangeError(f"σ-degree d={self.d} must be at least 2")
        if self.d > self.field.n:
            raise RangeError(f"σ-degree d={self.d} exceeds n={self.field.n}")

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def poly(self) -> linpoly.SigmaPoly:
        return linpoly.trinomial(self.field, self.a, self.b, self.d)

    def kernel_dim(self) -> int:
        return linpoly.kernel_dim(self.poly)

    def has_max_kernel(self) -> bool:
        return self.kernel_dim() == self.d

    def to_dict(self) -> dict:
        F = self.field
        return {"field": F.to_dict(), "d": self.d,
                "a": F.element_to_hex(self.a), "b": F.element_to_hex(self.b)}


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    rule: str
    witness: tuple[str, ...] = dc_field(default=())

    @property
    def is_max(self) -> bool:
        return self.verdict is Verdict.MAX_KERNEL

    def to_dict(self, inst: TrinomialInstance) -> dict:
        F = inst.field
        return {"d": inst.d, "n": inst.n, "field": F.to_dict(),
                "a": F.element_to_hex(inst.a), "b": F.element_to_hex(inst.b),
                "verdict": self.verdict.value, "rule": self.rule,
                "witness": list(self.witness)}


def _result(failed: list[str], rule: str) -> ClassificationResult:
    verdict = Verdict.NOT_MAX_KERNEL if failed else Verdict.MAX_KERNEL
    return ClassificationResult(verdict, rule, tuple(failed))


def is_power_of(x: int, p: int) -> bool:
    """x = p^e for some e >= 0."""
    if x < 1:
        return False
    while x % p == 0:
        x //= p
    return x == 1


def _sign(F: Field, e: int) -> int:
    return F.neg(1) if e % 2 else 1


def _split_n(n: int, d: int) -> int:
    """g with n = d(d-1) + g, 1 <= g <= d-1."""
    g = n - d * (d - 1)
    if not 1 <= g <= d - 1:
        raise RangeError(f"n={n} is not d(d-1)+g with 1 <= g <= d-1 for d={d}")
    return g


# ---------------------------------------------------------------------------
# n <= d(d-1) and n = d(d-1)+1


def classify_small_n(inst: TrinomialInstance) -> ClassificationResult:
    F, d, n = inst.field, inst.d, inst.n
    if d < 3:
        raise RangeError("classification needs d >= 3")
    if n > d * (d - 1):
        raise RangeError(f"n={n} exceeds d(d-1)={d * (d - 1)}")
    if n % d:
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, "T13a", ("d does not divide n",))
    failed = []
    if inst.b:
        failed.append("b != 0")
    if F.norm(inst.a, d) != 1:
        failed.append("N_{q^n/q^d}(a) != 1")
    return _result(failed, "T13b")


def case_c_b(field: Field, a: int, d: int) -> int:
    """-a^{σ f_1} with f_1 = Σ_{i<d} σ^{id}."""
    f1 = FrobExponent.geometric(d, d)
    return field.neg(field.power_by_exponent(a, f1.shift(1)))


def check_case_c(inst: TrinomialInstance) -> ClassificationResult:
    F, d, n = inst.field, inst.d, inst.n
    if n != d * (d - 1) + 1:
        raise RangeError(f"n={n} is not d(d-1)+1")
    if not inst.a:
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, "T13c", (NORM_WITNESS,))
    failed = []
    if F.norm(inst.a, 1) != _sign(F, d - 1):
        failed.append("N(a) != (-1)^(d-1)")
    if inst.b != case_c_b(F, inst.a, d):
        failed.append("b != -a^(σ f_1)")
    if not is_power_of(d - 1, F.p):
        failed.append("d-1 is not a power of p")
    return _result(failed, "T13c")


# ---------------------------------------------------------------------------
# n = d(d-1) + g: the c_{d-1,t} ladder


def ladder_targets(field: Field, a: int, b: int, d: int, g: int) -> list[int]:
    """Required values of c_{d-1,t}, t = 0..d-1, for maximum kernel (a != 0)."""
    F = field
    target = [0] * d
    bprod, ainv = 1, F.inv(a)  # Π_{i<u} b^{σ^i}, Π_{i<=u} a^{-σ^i}
    for u in range(g):
        if u:
            bprod = F.mul(bprod, F.sigma(b, u - 1))
            ainv = F.mul(ainv, F.inv(F.sigma(a, u)))
        target[d - g + u] = F.mul(_sign(F, u), F.mul(bprod, ainv))
    # t = 0 adds one more b-factor to the last rung
    target[0] = F.mul(_sign(F, g), F.mul(F.mul(bprod, F.sigma(b, g - 1)), ainv))
    return target


def main_system_check(inst: TrinomialInstance) -> ClassificationResult:
    F, d, n = inst.field, inst.d, inst.n
    if d < 3:
        raise RangeError("main system needs d >= 3")
    g = _split_n(n, d)
    if not inst.a:
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, "T14-system", (NORM_WITNESS,))
    c = linpoly.c_coeff_recursive(F, inst.a, inst.b, d, d - 1, n - d + 1)
    target = ladder_targets(F, inst.a, inst.b, d, g)
    failed = [f"c[{d - 1},{t}] mismatch" for t in range(d) if c[t] != target[t]]
    return _result(failed, "T14-system")


def cor41_exponents(d: int, g: int):
    """(S_g, S_{g-1}, σ^g e_1, σ^{g-1} e_2) as formal exponents."""
    S = lambda r: FrobExponent.geometric(r)  # noqa: E731
    e1 = FrobExponent.geometric(d - 1, d)
    e2 = FrobExponent.geometric(d - 1, d - 1, d - 1)
    return S(g), S(g - 1), e1.shift(g), e2.shift(g - 1)


def necessary_condition_flags(inst: TrinomialInstance) -> tuple[bool, bool]:
    """Truth of the two identities forced on maximum-kernel trinomials."""
    F, d = inst.field, inst.d
    g = _split_n(inst.n, d)
    if not inst.a:
        return False, False
    a, b = inst.a, inst.b
    Sg, Sg1, ge1, ge2 = cor41_exponents(d, g)
    a_neg = F.inv(F.power_by_exponent(a, Sg))
    lhs1 = F.mul(F.power_by_exponent(b, Sg), a_neg)
    rhs1 = F.mul(_sign(F, g), F.power_by_exponent(a, ge1))
    lhs2 = F.mul(F.power_by_exponent(b, Sg1), a_neg)
    rhs2 = F.mul(_sign(F, g - 1), F.power_by_exponent(b, ge2))
    return lhs1 == rhs1, lhs2 == rhs2


def necessary_conditions(inst: TrinomialInstance) -> bool:
    return all(necessary_condition_flags(inst))


# ---------------------------------------------------------------------------
# explicit families


def even_family_b(field: Field, a: int, d: int) -> int:
    """a^{-σ^d e_1} with e_1 = Σ_{i<d-1} σ^{id}."""
    e1 = FrobExponent.geometric(d - 1, d)
    return field.power_by_exponent(a, -e1.shift(d))


def family_even(field: Field, d: int, a: int) -> TrinomialInstance:
    failed = []
    if field.p != 2:
        failed.append("q is even")
    if not (d >= 4 and is_power_of(d, 2)):
        failed.append("d is a power of 2 (d >= 4)")
    if field.n != d * d - 1:
        failed.append("n = d^2 - 1")
    if field.norm(a, 1) != 1:
        failed.append("N(a) = 1")
    if failed:
        raise PreconditionFailed(failed)
    return TrinomialInstance(field, d, a, even_family_b(field, a, d))


def even_family_members(field: Field, d: int) -> Iterator[TrinomialInstance]:
    """All family_even instances, in increasing order of a."""
    for a in field.nonzero():
        if field.norm(a, 1) == 1:
            yield family_even(field, d, a)


def d8_b(field: Field, a: int, alpha: int) -> int:
    """-α / a^{σ^6+σ^3}, the d=3, n=8 coefficient."""
    e = FrobExponent(((1, 6), (1, 3)))
    return field.neg(field.div(alpha, field.power_by_exponent(a, e)))


def d3_characterize(field: Field, a: int, b: int) -> ClassificationResult:
    n = field.n
    if not 3 <= n <= 8:
        raise RangeError(f"d=3 characterization covers 3 <= n <= 8, got n={n}")
    rule = f"P61-{n}"
    if n in (4, 5):
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, rule, ("n <= 5 and n != 3",))
    if n in (3, 6):
        failed = (["b != 0"] if b else []) + (["N_{q^n/q^3}(a) != 1"] if field.norm(a, 3) != 1 else [])
        return _result(failed, rule)
    if not a:
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, rule, (NORM_WITNESS,))
    failed = []
    if field.norm(a, 1) != 1:
        failed.append("N(a) != 1")
    if n == 7:
        if b != case_c_b(field, a, 3):
            failed.append("b != -a^(σ(1+σ^3+σ^6))")
        if field.p != 2:
            failed.append("q is odd")
        return _result(failed, rule)
    if field.q % 3 == 1:
        failed.append("q = 1 mod 3")
    if all(b != d8_b(field, a, alpha) for alpha in field.cube_roots_of_unity()):
        failed.append("b != -α/a^(σ^6+σ^3) for every root α of x^2+x+1")
    return _result(failed, rule)


def d4_n13_b(field: Field, a: int) -> int:
    return case_c_b(field, a, 4)


def d4_n15_b(field: Field, a: int) -> int:
    """1 / a^{σ^4+σ^8+σ^12}."""
    return field.power_by_exponent(a, -FrobExponent.geometric(3, 4, 4))


def d4_n14_display(field: Field, a: int, b: int) -> tuple[bool, bool, bool, bool]:
    """The n=14 four-equation system exactly as usually displayed.

    The second equation (a^{1+σ} b^{σ^6+σ^3} = -b) disagrees with the
    c_{3,3} rung of the ladder; the verdict in :func:`d4_characterize`
    therefore uses the ladder, and this display is kept for comparison.
    """
    F = field
    s = F.sigma
    c32 = F.sum([
        F.prod([s(a, 10), s(b, 6), s(b, 3)]),
        F.prod([s(b, 10), s(a, 7), s(b, 3)]),
        F.prod([s(b, 10), s(b, 7), s(a, 4)]),
    ])
    c31 = F.sum([
        F.prod([s(a, 10), s(a, 6), s(b, 2)]),
        F.prod([s(a, 10), s(b, 6), s(a, 3)]),
        F.prod([s(b, 10), s(a, 7), s(a, 3)]),
    ])
    pw = F.power_by_exponent
    a1s = pw(a, FrobExponent.geometric(2))
    eq2 = F.mul(a1s, pw(b, FrobExponent(((1, 6), (1, 3))))) == F.neg(b)
    eq3 = pw(a, FrobExponent(((1, 0), (1, 1), (1, 2), (1, 6), (1, 10)))) == pw(b, FrobExponent.geometric(2))
    return F.mul(a, c32) == 1, eq2, eq3, c31 == 0


def d4_characterize(field: Field, a: int, b: int) -> ClassificationResult:
    n = field.n
    if not 4 <= n <= 15:
        raise RangeError(f"d=4 characterization covers 4 <= n <= 15, got n={n}")
    rule = f"P62-{n}"
    if n in (4, 8, 12):
        failed = (["b != 0"] if b else []) + (["N_{q^n/q^4}(a) != 1"] if field.norm(a, 4) != 1 else [])
        return _result(failed, rule)
    if n <= 11:
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, rule, ("n <= 11 and n not in {4, 8}",))
    if not a:
        return ClassificationResult(Verdict.NOT_MAX_KERNEL, rule, (NORM_WITNESS,))
    if n == 14:
        res = main_system_check(TrinomialInstance(field, 4, a, b))
        return ClassificationResult(res.verdict, rule, res.witness)
    failed = []
    if n == 13:
        if field.norm(a, 1) != field.neg(1):
            failed.append("N(a) != -1")
        if b != d4_n13_b(field, a):
            failed.append("b != -a^(σ(1+σ^4+σ^8+σ^12))")
        if field.p != 3:
            failed.append("q is not a power of 3")
    else:
        if field.norm(a, 1) != 1:
            failed.append("N(a) != 1")
        if field.p != 2:
            failed.append("q is odd")
        if b != d4_n15_b(field, a):
            failed.append("b != 1/a^(σ^4+σ^8+σ^12)")
    return _result(failed, rule)


def classify(inst: TrinomialInstance) -> ClassificationResult:
    """Dispatch to whichever characterization covers (d, n); else brute force."""
    d, n = inst.d, inst.n
    if d >= 3 and n <= d * (d - 1):
        return classify_small_n(inst)
    if d >= 3 and n == d * (d - 1) + 1:
        return check_case_c(inst)
    if d >= 3 and n < d * d:
        return main_system_check(inst)
    verdict = Verdict.MAX_KERNEL if inst.has_max_kernel() else Verdict.NOT_MAX_KERNEL
    return ClassificationResult(verdict, "BruteForce")


# ---------------------------------------------------------------------------
# brute-force enumeration


def _scan_chunk(field: Field, d: int, avals: list[int]) -> list[tuple[int, int]]:
    from . import _core

    ctx = field.ctx
    plan = ctx.plan(field, d)
    target = d * field.h
    out = []
    for a in avals:
        nul = _core.impl.trinomial_nullities(ctx, plan, a)
        out.extend((a, b) for b, v in enumerate(nul) if v == target)
    return out


def max_kernel_pairs(field: Field, d: int,
                     a_filter: Callable[[int], bool] | None = None,
                     budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[tuple[int, int]]:
    """Every (a, b) with kernel_dim = d, sorted by (a, b)."""
    if d < 1 or d > field.n:
        raise RangeError(f"σ-degree d={d} outside [1, n]")
    avals = [a for a in field.elements() if a_filter is None or a_filter(a)]
    required = len(avals) * field.order
    if required > budget:
        raise BudgetExceeded(required, budget)
    if workers <= 1 or len(avals) < 2 * workers:
        return _scan_chunk(field, d, avals)
    size = -(-len(avals) // (4 * workers))
    chunks = [avals[i:i + size] for i in range(0, len(avals), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_scan_chunk, [field] * len(chunks), [d] * len(chunks), chunks)
        pairs = [pr for part in parts for pr in part]
    return sorted(pairs)


def enumerate_max_kernel(field: Field, d: int,
                         a_filter: Callable[[int], bool] | None = None,
                         budget: int = DEFAULT_BUDGET,
                         workers: int = 1) -> Iterator[TrinomialInstance]:
    for a, b in max_kernel_pairs(field, d, a_filter, budget, workers):
        yield TrinomialInstance(field, d, a, b)
