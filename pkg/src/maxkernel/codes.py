"""Rank-metric censuses, quasi-subfield checks and cyclic orbit codes."""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _core, linpoly
from .errors import (
    BudgetExceeded,
    DivisionByZero,
    MalformedShape,
    NotSubspace,
    RangeError,
    SigmaMismatch,
    ZeroBelowTop,
)
from .gf import Field
from .trinomial import DEFAULT_BUDGET, is_power_of


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """An F_q-subspace of F_{q^n}, stored as an echelonized F_p-basis."""

    field: Field
    fp_basis: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, elems) -> "Subspace":
        """F_q-span of arbitrary elements."""
        scalars = field.fixed_basis(1)
        gens = [field.mul(lam, v) for v in elems for lam in scalars]
        return cls(field, tuple(_core.echelon_fp(gens, field.p, field.m)))

    @classmethod
    def from_fq_basis(cls, field: Field, elems) -> "Subspace":
        """Span of ``elems``, which must be F_q-linearly independent."""
        V = cls.span(field, elems)
        if V.k != len(elems):
            raise NotSubspace("basis elements are F_q-linearly dependent")
        return V

    @classmethod
    def from_fp_basis(cls, field: Field, elems) -> "Subspace":
        """Wrap an F_p-spanning set after certifying closure under F_q."""
        basis = _core.echelon_fp(list(elems), field.p, field.m)
        V = cls(field, tuple(basis))
        if not V.is_fq_closed():
            raise NotSubspace("F_p-span is not closed under F_q-scaling")
        return V

    @property
    def k(self) -> int:
        return len(self.fp_basis) // self.field.h

    def is_fq_closed(self) -> bool:
        F = self.field
        if len(self.fp_basis) % F.h:
            return False
        gens = [F.mul(lam, v) for v in self.fp_basis for lam in F.fixed_basis(1)]
        return _core.rank_fp(list(self.fp_basis) + gens, F.p, F.m) == len(self.fp_basis)

    def fq_basis(self) -> list[int]:
        """A greedy F_q-basis drawn from the F_p-basis."""
        out: list[int] = []
        for v in self.fp_basis:
            if Subspace.span(self.field, out + [v]).k > len(out):
                out.append(v)
        return out

    def elements(self) -> list[int]:
        F = self.field
        out = [0]
        for v in self.fp_basis:
            out = [F.add(x, F.mul(F.scalar(c), v)) for x in out for c in range(F.p)]
        return sorted(out)

    def contains(self, x: int) -> bool:
        F = self.field
        return _core.rank_fp(list(self.fp_basis) + [x], F.p, F.m) == len(self.fp_basis)

    def to_dict(self) -> dict:
        F = self.field
        return {"field": F.to_dict(), "k": self.k,
                "basis": [F.element_to_hex(v) for v in self.fp_basis]}


def kernel_subspace(f: linpoly.SigmaPoly) -> Subspace:
    return Subspace.from_fp_basis(f.field, linpoly.kernel_basis(f))


def _require_q_powers(field: Field):
    if field.s != 1:
        raise SigmaMismatch("subspace polynomials use σ = x^q (s = 1)")


def subspace_polynomial(V: Subspace) -> linpoly.SigmaPoly:
    """The monic q-polynomial whose roots are exactly V."""
    F = V.field
    _require_q_powers(F)
    coeffs = [1]
    for u in V.fq_basis():
        c = linpoly.evaluate(linpoly.SigmaPoly(F, tuple(coeffs)), u)
        if not c:
            raise NotSubspace("basis element already a root")
        scale = F.pow(c, F.q - 1)
        shifted = [0] + [F.sigma(x, 1) for x in coeffs]
        coeffs = [F.sub(shifted[i], F.mul(scale, coeffs[i]) if i < len(coeffs) else 0)
                  for i in range(len(shifted))]
    return linpoly.SigmaPoly(F, tuple(coeffs))


def gap(f: linpoly.SigmaPoly, strict: bool = True) -> int:
    """k - i, with i the largest index below the top carrying a nonzero coefficient.

    With nothing below the top the gap is undefined; ``strict=False`` reports
    k in that case instead of raising.
    """
    k = f.sdegree
    for i in range(k - 1, -1, -1):
        if f.coeff(i):
            return k - i
    if strict:
        raise ZeroBelowTop("no nonzero coefficient below the leading one")
    return k


def cyclic_shift(V: Subspace, alpha: int) -> Subspace:
    F = V.field
    if not alpha:
        raise DivisionByZero("cyclic shift by zero")
    basis = _core.echelon_fp([F.mul(alpha, v) for v in V.fp_basis], F.p, F.m)
    return Subspace(F, tuple(basis))


def shift_polynomial(f: linpoly.SigmaPoly, alpha: int) -> linpoly.SigmaPoly:
    """α^{q^k} f(α^{-1} x), expanded coefficientwise."""
    F = f.field
    k = f.sdegree
    top = F.sigma(alpha, k)
    ainv = F.inv(alpha)
    return linpoly.SigmaPoly(F, tuple(F.mul(top, F.mul(c, F.sigma(ainv, i)))
                                      for i, c in enumerate(f.coeffs[: k + 1])))


def subspace_distance(U: Subspace, V: Subspace) -> int:
    F = U.field
    total = _core.rank_fp(list(U.fp_basis) + list(V.fp_basis), F.p, F.m) // F.h
    return 2 * total - U.k - V.k


# ---------------------------------------------------------------------------
# orbit codes


@dataclass(frozen=True)
class OrbitCode:
    generator: Subspace
    size: int
    t: int
    min_distance: int | None = None

    @property
    def certified(self) -> bool:
        return self.min_distance is not None

    def to_dict(self) -> dict:
        V = self.generator
        return {"generator": V.to_dict(), "size": self.size, "t": self.t,
                "min_distance": self.min_distance, "certified": self.certified}


def stabilizer_degree(V: Subspace) -> int:
    """Largest t | n with F_{q^t} V = V."""
    F = V.field
    for t in sorted((t for t in range(1, F.n + 1) if F.n % t == 0), reverse=True):
        gens = [F.mul(lam, v) for v in V.fp_basis for lam in F.fixed_basis(t)]
        if _core.rank_fp(list(V.fp_basis) + gens, F.p, F.m) == len(V.fp_basis):
            return t
    return 1  # pragma: no cover - t = 1 always stabilizes an F_q-subspace


def build_orbit_code(V: Subspace, certify: bool = False,
                     budget: int = DEFAULT_BUDGET) -> OrbitCode:
    """Orbit {αV}; with ``certify`` the minimum distance is computed exactly.

    Distance is invariant under a common shift, so comparing V with every
    other orbit member g^i V (g primitive, 0 < i < size) covers all pairs.
    """
    F = V.field
    if V.k < 2:
        raise RangeError("orbit codes need dim V >= 2")
    t = stabilizer_degree(V)
    size = (F.q ** F.n - 1) // (F.q ** t - 1)
    if not certify:
        return OrbitCode(V, size, t)
    if size - 1 > budget:
        raise BudgetExceeded(size - 1, budget)
    ctx = F.ctx
    # shifts by powers of the primitive element used for the log tables
    hist = _core.impl.orbit_rank_histogram(ctx, list(V.fp_basis), size)
    ranks = [r for r, c in enumerate(hist) if c]
    dist = min(2 * (r // F.h) - 2 * V.k for r in ranks) if ranks else 0
    if dist == 0 and size > 1:
        raise AssertionError("a shift inside the orbit range fixes V")
    return OrbitCode(V, size, t, dist)


# ---------------------------------------------------------------------------
# quasi-subfield polynomials


@dataclass(frozen=True)
class QuasiSubfieldReport:
    splits: bool
    degree_ok: bool
    d: int
    lambda_qdegree: int

    def __bool__(self) -> bool:
        return self.splits and self.degree_ok

    def to_dict(self) -> dict:
        return {"quasi_subfield": bool(self), "splits": self.splits,
                "degree_ok": self.degree_ok, "d": self.d,
                "lambda_qdegree": self.lambda_qdegree}


def quasi_subfield_check(f: linpoly.SigmaPoly) -> QuasiSubfieldReport:
    """x^{q^d} - λ(x) with kernel dim d and q-degree(λ) * n < d^2.

    log_q(deg λ) is the q-degree of λ, so the degree clause is an integer test.
    Leading coefficient -1 is accepted and read as the negated shape.
    """
    F = f.field
    _require_q_powers(F)
    d = f.sdegree
    if d < 1 or f.coeff(d) not in (1, F.neg(1)):
        raise MalformedShape("expected x^(q^d) - λ(x) with leading coefficient ±1")
    lam = linpoly.SigmaPoly(F, f.coeffs[:d])
    r = lam.sdegree
    if r < 0:
        raise MalformedShape("λ is zero")
    return QuasiSubfieldReport(splits=linpoly.kernel_dim(f) == d,
                               degree_ok=r * F.n < d * d, d=d, lambda_qdegree=r)


# ---------------------------------------------------------------------------
# weight census of C_{d,n,σ} = <x, x^σ, x^{σ^d}>


@dataclass(frozen=True)
class LowerBound:
    value: int


class _Unknown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Unknown"


Unknown = _Unknown()


@dataclass(frozen=True)
class WeightCensus:
    field: Field
    d: int
    counts: dict

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, weight: int) -> int:
        return self.counts.get(weight, 0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "count"])
        for k in sorted(self.counts):
            w.writerow([k, self.counts[k]])
        return buf.getvalue()

    def summary(self) -> dict:
        observed = self.count(self.n - self.d)
        formula = d_closed_form(self.field, self.d)
        return {"d": self.d, "n": self.n, "q": self.field.q,
                "D_observed": observed, "D_formula": formula_to_json(formula),
                "agree": formula_agrees(formula, observed)}


def formula_to_json(formula):
    if isinstance(formula, LowerBound):
        return {"lower_bound": formula.value}
    if formula is Unknown:
        return None
    return formula


def formula_agrees(formula, observed: int):
    """True/False against an exact value or bound; None when unknown."""
    if formula is Unknown:
        return None
    if isinstance(formula, LowerBound):
        return observed >= formula.value
    return observed == formula


def d_closed_form(field: Field, d: int):
    """Number D of weight n-d codewords in C_{d,n,σ} where a closed form is known."""
    q, n, p = field.q, field.n, field.p
    Q = q ** n - 1
    if d < 3 or n <= d:
        return Unknown
    if d == 3 and n == 8:
        return {0: Q * Q // (q - 1), 1: 0, 2: 2 * Q * Q // (q - 1)}[q % 3]
    if d == 4 and n == 15:
        return Q * Q // (q - 1) if p == 2 else 0
    if n <= d * (d - 1):
        return Q * Q // (q ** d - 1) if n % d == 0 else 0
    if n == d * (d - 1) + 1:
        return Q * Q // (q - 1) if is_power_of(d - 1, p) else 0
    if n == d * d - 1 and p == 2 and is_power_of(d, 2):
        return LowerBound(Q * Q // (q - 1))
    return Unknown


def census_cost(field: Field) -> int:
    P = field.order
    return P * P + P


def _census_chunk(field: Field, d: int, avals: list[int]) -> Counter:
    ctx = field.ctx
    plan = ctx.plan(field, d)
    hist: Counter = Counter()
    for a in avals:
        hist.update(int(v) for v in _core.impl.trinomial_nullities(ctx, plan, a))
    return hist


def weight_census(field: Field, d: int, budget: int = DEFAULT_BUDGET,
                  workers: int = 1) -> WeightCensus:
    """Exact weight distribution of the nonzero codewords of C_{d,n,σ}.

    Codewords with a nonzero x^{σ^d} coefficient are scalar multiples of a
    unique a x + b x^σ - x^{σ^d}; those without are multiples of a x - x^σ or
    of x alone.
    """
    F = field
    if not 2 <= d <= F.n:
        raise RangeError(f"need 2 <= d <= n, got d={d}")
    required = census_cost(F)
    if required > budget:
        raise BudgetExceeded(required, budget)
    P, h, n = F.order, F.h, F.n
    avals = list(range(P))
    if workers <= 1:
        hist = _census_chunk(F, d, avals)
    else:
        size = -(-P // (4 * workers))
        chunks = [avals[i:i + size] for i in range(0, P, size)]
        hist = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_census_chunk, [F] * len(chunks), [d] * len(chunks), chunks):
                hist.update(part)
    ctx = F.ctx
    lin = _core.impl.pair_nullities(ctx, ctx.plan(F, 1), avals, [0] * P)
    hist.update(int(v) for v in lin)
    counts: Counter = Counter()
    for nul, c in hist.items():
        assert nul % h == 0
        counts[n - nul // h] += c * (P - 1)
    counts[n] += P - 1
    return WeightCensus(F, d, dict(sorted(counts.items())))
