"""σ-linearized polynomials, kernel dimensions and the companion-matrix criterion.

Throughout, the trinomial under study is L(x) = a x + b x^σ - x^{σ^d} and
M_{l,k} is the (l, d) entry of A_k = C_L C_L^σ ... C_L^{σ^{k-1}}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import _core
from .errors import (
    HypothesisViolated,
    IndexOutOfRange,
    NotMonicNegated,
    ZeroPolynomial,
)
from .gf import Field


@dataclass(frozen=True)
class SigmaPoly:
    """Σ coeffs[i] x^{σ^i} over ``field``."""

    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def sdegree(self) -> int:
        """σ-degree; -1 for the zero polynomial."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    @property
    def is_zero(self) -> bool:
        return self.sdegree < 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def scale(self, eta: int) -> "SigmaPoly":
        F = self.field
        return SigmaPoly(F, tuple(F.mul(eta, c) for c in self.coeffs))

    def to_dict(self) -> dict:
        F = self.field
        return {"field": F.to_dict(), "sdegree": self.sdegree,
                "coeffs": [F.element_to_list(c) for c in self.coeffs[: self.sdegree + 1]]}

    @classmethod
    def from_dict(cls, d: dict) -> "SigmaPoly":
        F = Field.from_dict(d["field"])
        poly = cls(F, tuple(F.from_coeffs(c) for c in d["coeffs"]))
        if poly.sdegree != d["sdegree"]:
            raise ValueError("sdegree does not match the coefficients")
        return poly


def trinomial(field: Field, a: int, b: int, d: int) -> SigmaPoly:
    """a x + b x^σ - x^{σ^d}."""
    coeffs = [0] * (d + 1)
    coeffs[0] = a
    coeffs[1] = field.add(coeffs[1], b)
    coeffs[d] = field.add(coeffs[d], field.neg(1))
    return SigmaPoly(field, tuple(coeffs))


def evaluate(f: SigmaPoly, x: int) -> int:
    F = f.field
    acc = 0
    for i, c in enumerate(f.coeffs):
        if c:
            acc = F.add(acc, F.mul(c, F.sigma(x, i)))
    return acc


def fp_matrix_columns(f: SigmaPoly) -> list[int]:
    """Images f(θ^i), i < m: the F_p-matrix of f, one packed column per entry."""
    F = f.field
    return [evaluate(f, F.theta_power(i)) for i in range(F.m)]


def kernel_dim(f: SigmaPoly) -> int:
    """dim over F_q of the roots of f in F_{q^n}."""
    if f.is_zero:
        raise ZeroPolynomial("kernel of the zero polynomial")
    F = f.field
    nullity = F.m - _core.rank_fp(fp_matrix_columns(f), F.p, F.m)
    assert nullity % F.h == 0, "F_p-nullity not divisible by h: map is not F_q-linear"
    return nullity // F.h


def kernel_basis(f: SigmaPoly) -> list[int]:
    """An echelonized F_p-basis of ker f."""
    F = f.field
    return _core.nullspace_fp(fp_matrix_columns(f), F.p, F.m)


def weight(f: SigmaPoly) -> int:
    """Rank of f as an F_q-linear map, i.e. n - kernel_dim(f)."""
    return f.field.n - kernel_dim(f)


def gow_norm_condition(f: SigmaPoly) -> bool:
    """N(a_0) == (-1)^{nk} N(a_k), the necessary condition for maximum kernel."""
    F = f.field
    k = f.sdegree
    if k < 0:
        raise ZeroPolynomial("norm condition of the zero polynomial")
    lhs = F.norm(f.coeff(0), 1)
    rhs = F.norm(f.coeff(k), 1)
    if (F.n * k) % 2:
        rhs = F.neg(rhs)
    return lhs == rhs


def normalize(f: SigmaPoly) -> SigmaPoly:
    """Rescale f so that its leading coefficient is -1."""
    F = f.field
    k = f.sdegree
    if k < 0:
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    eta = F.inv(F.neg(f.coeff(k)))
    return SigmaPoly(F, tuple(F.mul(eta, c) for c in f.coeffs[: k + 1]))


# ---------------------------------------------------------------------------
# companion matrices


def _check_monic_negated(f: SigmaPoly) -> int:
    k = f.sdegree
    if k < 1 or f.coeff(k) != f.field.neg(1):
        raise NotMonicNegated("leading coefficient must be -1 with σ-degree >= 1")
    return k


def companion_matrix(f: SigmaPoly) -> list[list[int]]:
    k = _check_monic_negated(f)
    C = [[0] * k for _ in range(k)]
    for r in range(1, k):
        C[r][r - 1] = 1
    for r in range(k):
        C[r][k - 1] = f.coeff(r)
    return C


def _matmul(F: Field, A, B):
    n, inner, cols = len(A), len(B), len(B[0])
    out = [[0] * cols for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(inner):
            if Ai[t]:
                Bt = B[t]
                for j in range(cols):
                    if Bt[j]:
                        row[j] = F.add(row[j], F.mul(Ai[t], Bt[j]))
    return out


def _sigma_matrix(F: Field, C, i: int):
    return [[F.sigma(x, i) for x in row] for row in C]


def companion_product(f: SigmaPoly) -> list[list[int]]:
    """C_f C_f^σ ... C_f^{σ^{n-1}}."""
    F = f.field
    C = companion_matrix(f)
    P = C
    for i in range(1, F.n):
        P = _matmul(F, P, _sigma_matrix(F, C, i))
    return P


def has_max_kernel_companion(f: SigmaPoly) -> bool:
    P = companion_product(f)
    k = len(P)
    return all(P[i][j] == int(i == j) for i in range(k) for j in range(k))


def has_max_kernel_vector(f: SigmaPoly) -> bool:
    """Only the first column: C_f ... C_f^{σ^{n-1}} e_0 == e_0."""
    k = _check_monic_negated(f)
    F = f.field
    low = [f.coeff(r) for r in range(k)]
    w = [1] + [0] * (k - 1)
    for i in range(F.n - 1, -1, -1):
        last = w[-1]
        new = [F.mul(F.sigma(low[0], i), last)]
        for r in range(1, k):
            new.append(F.add(w[r - 1], F.mul(F.sigma(low[r], i), last)))
        w = new
    return w[0] == 1 and not any(w[1:])


# ---------------------------------------------------------------------------
# the M_{l,k} recursion and its closed forms


class MEntryTable:
    """Memoised M_{l,k} for the trinomial a x + b x^σ - x^{σ^d}.

    Base cases M_{l,l-d} = 1 and M_{l,k} = 0 for other k <= 0; for k >= 1
    M_{l,k} = M_{l,k-d} a^{σ^{k-1}} + M_{l,k-d+1} b^{σ^{k-1}}.
    Not safe to share between concurrent workers.
    """

    def __init__(self, field: Field, a: int, b: int, d: int):
        if d < 2:
            raise IndexOutOfRange("σ-degree must be at least 2")
        self.field, self.a, self.b, self.d = field, a, b, d
        self._rows: dict[int, list[int]] = {}

    def __call__(self, l: int, k: int) -> int:
        d = self.d
        if not 1 <= l <= d:
            raise IndexOutOfRange(f"row index l={l} outside [1, {d}]")
        if k <= 0:
            return int(k == l - d)
        row = self._rows.setdefault(l, [])
        F, a, b = self.field, self.a, self.b
        while len(row) < k:
            kk = len(row) + 1
            prev = [self._get(row, l, kk - d), self._get(row, l, kk - d + 1)]
            row.append(F.add(F.mul(prev[0], F.sigma(a, kk - 1)),
                             F.mul(prev[1], F.sigma(b, kk - 1))))
        return row[k - 1]

    def _get(self, row, l, k):
        if k <= 0:
            return int(k == l - self.d)
        return row[k - 1]

    def matrix(self, k: int) -> list[list[int]]:
        """A_k for k >= d, assembled from entries: (l, j) -> M_{l,k-d+j}."""
        d = self.d
        if k < d:
            raise IndexOutOfRange("A_k is read off the recursion only for k >= d")
        return [[self(l, k - d + j) for j in range(1, d + 1)] for l in range(1, d + 1)]


def m_entry(field: Field, a: int, b: int, d: int, l: int, k: int) -> int:
    return MEntryTable(field, a, b, d)(l, k)


def c_coeff_recursive(field: Field, a: int, b: int, d: int, j: int, k: int) -> list[int]:
    """[c^k_{j,0}, ..., c^k_{j,j}] obtained by unrolling the recursion j times.

    After j steps M_{l,k} = Σ_t c^k_{j,t} M_{l,k-jd+t}; one more step on the
    term with index k-(j-1)d+t contributes a^{σ^{k-(j-1)d+t-1}} to t and
    b^{σ^{k-(j-1)d+t-1}} to t+1.
    """
    F = field
    row = [1]
    for step in range(1, j + 1):
        new = [0] * (step + 1)
        for t, c in enumerate(row):
            if not c:
                continue
            e = k - (step - 1) * d + t - 1
            new[t] = F.add(new[t], F.mul(c, F.sigma(a, e)))
            new[t + 1] = F.add(new[t + 1], F.mul(c, F.sigma(b, e)))
        row = new
    return row


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` nonnegative ints summing to ``total``."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for bar in bars:
            out.append(bar - prev - 1)
            prev = bar
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def c_coeff_closed(field: Field, a: int, b: int, d: int, j: int, t: int, k: int) -> int:
    """c^k_{j,t} as an explicit sum over the ways to interleave t b-steps.

    (i_0, ..., i_t) counts the a-steps before, between and after the t
    b-steps; the u-th b-step carries b^{σ^{k-(i_0+...+i_u+u)d+u-1}} and the
    a-steps of block u carry a^{σ^{k-(i_0+...+i_{u-1}+u-1+j_u)d+u-1}}.
    """
    if not 0 <= t <= j:
        raise IndexOutOfRange(f"need 0 <= t <= j, got t={t}, j={j}")
    F = field
    total = 0
    for parts in _compositions(j - t, t + 1):
        term = 1
        before = 0  # i_0 + ... + i_{u-1}
        for u, iu in enumerate(parts):
            for ju in range(1, iu + 1):
                if u == 0:
                    e = k - (ju - 1) * d - 1
                else:
                    e = k - (before + ju + u - 1) * d + u - 1
                term = F.mul(term, F.sigma(a, e))
            before += iu
            if u < t:
                term = F.mul(term, F.sigma(b, k - (before + u) * d + u - 1))
        total = F.add(total, term)
    return total


def expansion_holds(field: Field, a: int, b: int, d: int, j: int, k: int,
                    coeffs: Sequence[int] | None = None) -> bool:
    """Check M_{l,k} = Σ_t c^k_{j,t} M_{l,k-jd+t} for every row l."""
    F = field
    if coeffs is None:
        coeffs = [c_coeff_closed(F, a, b, d, j, t, k) for t in range(j + 1)]
    M = MEntryTable(F, a, b, d)
    for l in range(1, d + 1):
        rhs = F.sum(F.mul(c, M(l, k - j * d + t)) for t, c in enumerate(coeffs))
        if rhs != M(l, k):
            return False
    return True


def commutation_holds(field: Field, a: int, b: int, d: int) -> bool:
    """a^{σ^d} b == a^σ b^{σ^d}."""
    F = field
    return F.mul(F.sigma(a, d), b) == F.mul(F.sigma(a, 1), F.sigma(b, d))


def z_recursion(field: Field, a: int, b: int, d: int, j: int, i: int, k: int,
                branch: str = "a") -> int:
    """z^k_{j,i} under the commutation hypothesis a^{σ^d} b = a^σ b^{σ^d}.

    For 0 < i < j the recursion offers two equal updates; ``branch`` picks
    the one through z_{j-1,i} ("a") or through z_{j-1,i-1} ("b").
    """
    if not commutation_holds(field, a, b, d):
        raise HypothesisViolated("a^{σ^d} b != a^σ b^{σ^d}")
    if k < d + 1:
        raise IndexOutOfRange(f"need k >= d+1, got k={k}")
    if not 0 <= i <= j:
        raise IndexOutOfRange(f"need 0 <= i <= j, got i={i}, j={j}")
    F = field
    row = [1]
    for jj in range(1, j + 1):
        base = k - (jj - 1) * d
        new = [F.mul(row[0], F.sigma(a, base - 1))]
        for ii in range(1, jj):
            if branch == "a":
                new.append(F.mul(row[ii], F.sigma(a, base + ii - 1)))
            else:
                new.append(F.mul(row[ii - 1], F.sigma(b, base + ii - 2)))
        new.append(F.mul(row[jj - 1], F.sigma(b, base + jj - 2)))
        row = new
    return row[i]


def binom_mod_p(j: int, i: int, p: int) -> int:
    """C(j, i) mod p as the product of digit binomials (Lucas)."""
    if not 0 <= i <= j:
        return 0
    out = 1
    while j or i:
        jd, id_ = j % p, i % p
        if id_ > jd:
            return 0
        out = out * _small_binom(jd, id_) % p
        j //= p
        i //= p
    return out


def _small_binom(n: int, r: int) -> int:
    out = 1
    for t in range(r):
        out = out * (n - t) // (t + 1)
    return out


def m_entry_small_k(field: Field, a: int, b: int, d: int, l: int, k: int) -> int:
    """Closed values of M_{l,k} for 2 <= l <= d and k <= d-1."""
    if not 2 <= l <= d or k > d - 1:
        raise IndexOutOfRange(f"closed table covers 2 <= l <= d, k <= d-1; got l={l}, k={k}")
    if k <= 0:
        return int(k == l - d)
    if k == l - 1:
        return field.sigma(b, l - 2)
    if k == l:
        return field.sigma(a, l - 1)
    return 0


def m1_zero_indices(d: int) -> list[int]:
    """Indices j with M_{1,j} = 0 for every trinomial of σ-degree d."""
    return [j for i in range(d - 2) for j in range(i * d + 2, (i + 1) * d - i)]


def first_column_criterion(field: Field, a: int, b: int, d: int) -> bool:
    """M_{1,n-d+1} = 1 and M_{l,n-d+1} = 0 for l >= 2."""
    M = MEntryTable(field, a, b, d)
    k = field.n - d + 1
    return M(1, k) == 1 and all(M(l, k) == 0 for l in range(2, d + 1))
