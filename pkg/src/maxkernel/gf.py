"""Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^n}.

The big field F_{q^n} = F_{p^m} (m = h*n) is realised as F_p[θ]/(f) for the
lexicographically smallest monic irreducible f of degree m.  Elements are
plain Python ints: the coordinate vector (c_0, ..., c_{m-1}) of
c_0 + c_1 θ + ... + c_{m-1} θ^{m-1} packed as little-endian base-p digits.
So 0 and 1 are the field's zero and one, and θ^i is ``p**i``.

Fields with at most ``TABLE_LIMIT`` elements carry log/exp/Zech tables and
every operation is a couple of list lookups; larger fields fall back to
polynomial arithmetic.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import sympy

from .errors import (
    DivisionByZero,
    FieldTooLarge,
    GcdViolation,
    MaxKernelError,
    NonDivisor,
    NonPrimeP,
    NoRoot,
)

TABLE_LIMIT = 1 << 20
MAX_BITS = 126


class InvalidParameter(MaxKernelError, ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials over F_p as coefficient lists, constant term first


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    f = list(f)
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    frob = [x]  # frob[k] = x^(p^k) mod f
    for _ in range(m):
        frob.append(_ppowmod(frob[-1], p, f, p))
    if _trim(list(frob[m])) != x:
        return False
    for ell in sympy.primefactors(m):
        g = list(frob[m // ell]) + [0, 0]
        g[1] = (g[1] - 1) % p
        if len(_pgcd(f, g, p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m over F_p.

    Candidates are ordered by their packed value Σ c_i p^i, i.e. the
    highest non-leading coefficient is most significant; for p = 2, m = 3
    this gives x^3 + x + 1.  Returned constant term first.
    """
    arith = _PolyArith(p, m, [0] * m + [1])
    for v in range(p**m):
        f = arith.digits(v) + [1]
        if m > 1 and any(_peval(f, c, p) == 0 for c in range(min(p, 64))):
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _peval(f, c, p):
    acc = 0
    for coef in reversed(f):
        acc = (acc * c + coef) % p
    return acc


# ---------------------------------------------------------------------------
# packed-int polynomial arithmetic modulo the field modulus


class _PolyArith:
    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.order = p**m
        self.top = p ** (m - 1)
        # θ^m = Σ low[i] θ^i
        self.low = [(-c) % p for c in modulus[:m]]
        if p == 2:
            self.modint = sum(c << i for i, c in enumerate(modulus))

    def digits(self, x: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def pack(self, ds: Sequence[int]) -> int:
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def add(self, x, y):
        if self.p == 2:
            return x ^ y
        p = self.p
        return self.pack([(u + v) % p for u, v in zip(self.digits(x), self.digits(y))])

    def neg(self, x):
        if self.p == 2:
            return x
        p = self.p
        return self.pack([(-u) % p for u in self.digits(x)])

    def mul_theta(self, x):
        if self.p == 2:
            x <<= 1
            if x >> self.m:
                x ^= self.modint
            return x
        hi, rest = divmod(x, self.top)
        x = rest * self.p
        if hi:
            p = self.p
            ds = self.digits(x)
            x = self.pack([(d + hi * c) % p for d, c in zip(ds, self.low)])
        return x

    def mul(self, x, y):
        if not x or not y:
            return 0
        if self.p == 2:
            acc = 0
            while y:
                if y & 1:
                    acc ^= x
                y >>= 1
                x <<= 1
            m, mod = self.m, self.modint
            for i in range(acc.bit_length() - 1, m - 1, -1):
                if acc >> i & 1:
                    acc ^= mod << (i - m)
            return acc
        p, m = self.p, self.m
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        low = self.low
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i, li in enumerate(low):
                    prod[k - m + i] += c * li
        return self.pack([c % p for c in prod[:m]])

    def pow(self, x, e):
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrobExponent:
    """Formal integer combination Σ c_i σ^{e_i} used as an exponent.

    On a nonzero element it acts as x ↦ x^E with
    E = Σ c_i q^{s e_i} mod (p^m - 1).
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for c, e in self.terms:
            merged[e] = merged.get(e, 0) + c
        terms = sorted(((c, e) for e, c in merged.items() if c), key=lambda t: t[1])
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def sigma(cls, power: int = 1, coef: int = 1) -> "FrobExponent":
        return cls(((coef, power),))

    @classmethod
    def geometric(cls, count: int, step: int = 1, start: int = 0) -> "FrobExponent":
        """Σ_{i<count} σ^{start + i*step}; empty when count <= 0."""
        return cls(tuple((1, start + i * step) for i in range(max(count, 0))))

    def __add__(self, other: "FrobExponent") -> "FrobExponent":
        return FrobExponent(self.terms + other.terms)

    def __neg__(self) -> "FrobExponent":
        return FrobExponent(tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other: "FrobExponent") -> "FrobExponent":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FrobExponent(tuple((c * other, e) for c, e in self.terms))
        return FrobExponent(
            tuple((c1 * c2, e1 + e2) for c1, e1 in self.terms for c2, e2 in other.terms)
        )

    __rmul__ = __mul__

    def shift(self, k: int) -> "FrobExponent":
        """σ^k · self."""
        return FrobExponent(tuple((c, e + k) for c, e in self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nonnegative(self) -> bool:
        return all(c >= 0 for c, _ in self.terms)


class Field:
    """The field F_{q^n}, q = p^h, with σ: x ↦ x^{q^s}.

    Build instances with :func:`field_new`; the constructor trusts its
    arguments except for cheap shape checks.
    """

    def __init__(self, p: int, h: int, n: int, s: int, modulus: Sequence[int],
                 table_limit: int = TABLE_LIMIT):
        self.p, self.h, self.n, self.s = p, h, n, s
        self.m = h * n
        self.q = p**h
        self.order = p**self.m
        self.N = self.order - 1
        self.modulus = tuple(int(c) for c in modulus)
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise InvalidParameter("modulus must be monic of degree h*n")
        self._arith = _PolyArith(p, self.m, self.modulus)
        self._log = self._exp = self._zech = None
        self._half = self.N // 2 if p != 2 else 0
        self._ctx = None
        self.generator = None
        if self.order <= table_limit:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _build_tables(self):
        N, arith = self.N, self._arith
        factors = sympy.primefactors(N) if N > 1 else []

        def primitive(g):
            return all(arith.pow(g, N // r) != 1 for r in factors)

        g = next(x for x in range(1, self.order) if primitive(x))
        exp = [0] * (2 * N)
        log = [-1] * self.order
        x = 1
        step = arith.mul_theta if g == self.p else (lambda v: arith.mul(v, g))
        for k in range(N):
            exp[k] = x
            log[x] = k
            x = step(x)
        exp[N:] = exp[:N]
        self.generator = g
        self._exp, self._log = exp, log
        if self.p != 2:
            p = self.p
            zech = [-1] * N
            for k in range(N):
                v = exp[k]
                v1 = v - v % p + (v % p + 1) % p
                zech[k] = log[v1]
            self._zech = zech

    def __reduce__(self):
        return (_cached_field, (self.p, self.h, self.n, self.s, self.modulus))

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.p, self.h, self.n, self.s, self.modulus)

    def __repr__(self):
        return f"Field(p={self.p}, h={self.h}, n={self.n}, s={self.s}, modulus={list(self.modulus)})"

    @property
    def has_tables(self) -> bool:
        return self._log is not None

    # -- arithmetic ----------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if not x:
            return y
        if not y:
            return x
        if self._log is None:
            return self._arith.add(x, y)
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % self.N]
        return 0 if z < 0 else self._exp[lx + z]

    def neg(self, x: int) -> int:
        if self.p == 2 or not x:
            return x
        if self._log is None:
            return self._arith.neg(x)
        return self._exp[self._log[x] + self._half]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if not x or not y:
            return 0
        if self._log is None:
            return self._arith.mul(x, y)
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if not x:
            raise DivisionByZero("inverse of zero")
        if self._log is None:
            return self._arith.pow(x, self.N - 1)
        return self._exp[(self.N - self._log[x]) % self.N]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if not x:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        if self._log is None:
            if e < 0:
                x, e = self.inv(x), -e
            return self._arith.pow(x, e % self.N)
        return self._exp[self._log[x] * e % self.N]

    def scalar(self, c: int) -> int:
        """The prime-field element c mod p."""
        return c % self.p

    def prod(self, values) -> int:
        acc = 1
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # -- automorphisms and norms ----------------------------------------------

    def frob_power(self, x: int, k: int) -> int:
        """x^(p^k) by k-fold p-power Frobenius."""
        if not x:
            return 0
        k %= self.m
        if self._log is not None:
            return self._exp[self._log[x] * pow(self.p, k, self.N) % self.N]
        for _ in range(k):
            x = self._arith.pow(x, self.p)
        return x

    def sigma(self, x: int, j: int = 1) -> int:
        """σ^j(x) = x^(q^(s*j mod n))."""
        return self.frob_power(x, self.h * (self.s * j % self.n))

    def sigma_log_factor(self, j: int) -> int:
        """Multiplier M with log σ^j(x) = M * log x mod N."""
        return pow(self.q, self.s * j % self.n, self.N) if self.N > 1 else 0

    def norm(self, x: int, t: int = 1) -> int:
        """Relative norm N_{q^n/q^t}(x) = x^((q^n-1)/(q^t-1)); norm(0) = 0."""
        if t < 1 or self.n % t:
            raise NonDivisor(f"{t} does not divide n={self.n}")
        if not x:
            return 0
        return self.pow(x, (self.q**self.n - 1) // (self.q**t - 1))

    def in_subfield(self, x: int, t: int) -> bool:
        """True iff x lies in F_{q^t}."""
        return self.frob_power(x, self.h * t) == x

    # -- Frobenius exponents --------------------------------------------------

    def exponent(self, e: FrobExponent) -> int:
        """Evaluate Σ c_i q^{s e_i} modulo p^m - 1, in [0, p^m - 1)."""
        N = self.N
        total = 0
        for c, pw in e.terms:
            total += c * pow(self.q, self.s * (pw % self.n), N)
        return total % N

    def power_by_exponent(self, x: int, e: FrobExponent) -> int:
        if not x:
            if e.is_zero:
                return 1
            if e.nonnegative:
                return 0
            raise DivisionByZero("zero raised to an exponent with negative terms")
        return self.pow(x, self.exponent(e))

    # -- element handling ------------------------------------------------------

    def elements(self) -> Iterator[int]:
        """All elements, each once, in increasing packed-integer order."""
        return iter(range(self.order))

    def nonzero(self) -> Iterator[int]:
        return iter(range(1, self.order))

    def coeffs(self, x: int) -> list[int]:
        return self._arith.digits(x)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) != self.m or any(not 0 <= c < self.p for c in cs):
            raise InvalidParameter("coefficient vector has wrong length or range")
        return self._arith.pack(cs)

    def theta_power(self, i: int) -> int:
        """θ^i for 0 <= i < m, i.e. the i-th basis vector over F_p."""
        return self.p**i

    def log(self, x: int) -> int:
        if self._log is None:
            raise InvalidParameter("field has no log tables")
        if not x:
            raise DivisionByZero("log of zero")
        return self._log[x]

    def exp(self, k: int) -> int:
        if self._exp is None:
            raise InvalidParameter("field has no log tables")
        return self._exp[k % self.N]

    def random_element(self, rng) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.order)

    def fixed_basis(self, t: int) -> list[int]:
        """An F_p-basis of the subfield F_{q^t}, echelonized."""
        from . import _core

        if self.n % t:
            raise NonDivisor(f"{t} does not divide n={self.n}")
        k = self.h * t
        cols = [self.sub(self.frob_power(self.theta_power(i), k), self.theta_power(i))
                for i in range(self.m)]
        return _core.nullspace_fp(cols, self.p, self.m)

    def cube_roots_of_unity(self) -> list[int]:
        """All roots of x^2 + x + 1 in the field, sorted."""
        if self.p == 3:
            return [1]
        if self.N % 3:
            return []
        e = self.N // 3
        candidates = [self.generator] if self.generator else []
        for x in itertools.chain(candidates, range(2, self.order)):
            y = self.pow(x, e)
            if y != 1:
                return sorted([y, self.mul(y, y)])
        raise AssertionError("unreachable")  # pragma: no cover

    def find_cube_root_of_unity(self) -> int:
        roots = self.cube_roots_of_unity()
        if not roots:
            raise NoRoot("x^2 + x + 1 has no root in this field")
        return roots[0]

    sigma_apply = sigma
    relative_norm = norm
    exponent_eval = exponent
    enumerate_elements = elements

    # -- serialization -----------------------------------------------------------

    def to_dict(self) -> dict:
        return {"p": self.p, "h": self.h, "n": self.n, "s": self.s,
                "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "Field":
        f = _cached_field(int(d["p"]), int(d["h"]), int(d["n"]), int(d["s"]),
                          tuple(int(c) for c in d["modulus"]))
        if not is_irreducible(f.modulus, f.p):
            raise InvalidParameter("modulus is not irreducible")
        return f

    def element_to_list(self, x: int) -> list[int]:
        return self.coeffs(x)

    def element_to_hex(self, x: int) -> str:
        return hex(x)

    def element_from_hex(self, text: str) -> int:
        x = int(text, 16)
        if not 0 <= x < self.order:
            raise InvalidParameter(f"{text} is not an element of a field of order {self.order}")
        return x

    # -- compiled-core context -------------------------------------------------

    @property
    def ctx(self):
        """Table bundle consumed by the kernels in :mod:`maxkernel._core`."""
        if self._ctx is None:
            from . import _core

            if self._log is None:
                raise InvalidParameter("hot kernels need a field with log tables")
            self._ctx = _core.make_ctx(self)
        return self._ctx


@functools.lru_cache(maxsize=64)
def _cached_field(p, h, n, s, modulus):
    return Field(p, h, n, s, modulus)


def field_new(p: int, h: int = 1, n: int = 1, s: int = 1) -> Field:
    """Validate (p, h, n, s) and return the field with the canonical modulus."""
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if h < 1 or n < 1:
        raise InvalidParameter("h and n must be positive")
    if not (1 <= s < n or (n == 1 and s == 1)):
        if math.gcd(s, n) != 1:
            raise GcdViolation(f"gcd(s={s}, n={n}) != 1")
        raise InvalidParameter(f"s={s} must satisfy 1 <= s < n")
    if math.gcd(s, n) != 1:
        raise GcdViolation(f"gcd(s={s}, n={n}) != 1")
    m = h * n
    if p**m > 1 << MAX_BITS:
        raise FieldTooLarge(f"p^m = {p}^{m} exceeds 2^{MAX_BITS}")
    return _cached_field(p, h, n, s, smallest_irreducible(p, m))
