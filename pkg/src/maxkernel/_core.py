"""Backend selection for the hot kernels.

The compiled ``_ccore`` extension is used when it imports; otherwise, or
when ``MAXKERNEL_PURE=1`` is set, the pure-Python ``_fallback`` module is.
Both expose the same functions and return identical values.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

_compiled = None
if not os.environ.get("MAXKERNEL_PURE"):
    try:
        from . import _ccore as _compiled
    except ImportError:  # extension not built
        _compiled = None

impl = _compiled if _compiled is not None else _fallback
BACKEND = "compiled" if _compiled is not None else "python"


def backends() -> dict:
    """Available kernel implementations by name."""
    out = {"python": _fallback}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


class Ctx:
    """Field tables in the shapes both kernel backends consume."""

    def __init__(self, field):
        self.p, self.m, self.n, self.h = field.p, field.m, field.n, field.h
        self.N, self.order = field.N, field.order
        self.exp, self.log = field._exp, field._log
        self.zech = field._zech if field._zech is not None else [-1]
        self.exp_np = np.asarray(self.exp, dtype=np.int64)
        self.log_np = np.asarray(self.log, dtype=np.int64)
        self.zech_np = np.asarray(self.zech, dtype=np.int64)
        self._plans: dict[int, TrinomialPlan] = {}

    def plan(self, field, d: int) -> "TrinomialPlan":
        if d not in self._plans:
            self._plans[d] = TrinomialPlan(field, d)
        return self._plans[d]


class TrinomialPlan:
    """Per-(field, d) constants for scanning a x + b x^σ - x^{σ^d}."""

    def __init__(self, field, d: int):
        self.d = d
        basis = [field.theta_power(i) for i in range(field.m)]
        self.lt = [field.log(v) for v in basis]
        self.lst = [field.log(field.sigma(v, 1)) for v in basis]
        self.negcd = [field.neg(field.sigma(v, d)) for v in basis]
        self.sig = [field.sigma_log_factor(i) for i in range(field.n)]
        self.lt_np = np.asarray(self.lt, dtype=np.int64)
        self.lst_np = np.asarray(self.lst, dtype=np.int64)
        self.negcd_np = np.asarray(self.negcd, dtype=np.int64)
        self.sig_np = np.asarray(self.sig, dtype=np.int64)


def make_ctx(field) -> Ctx:
    return Ctx(field)


def rank_fp(cols, p: int, m: int) -> int:
    return int(impl.rank_fp(list(cols), p, m))


# ---------------------------------------------------------------------------
# F_p linear algebra on packed vectors; not hot, shared by both backends


def _unpack(v, p, m):
    out = []
    for _ in range(m):
        v, d = divmod(v, p)
        out.append(d)
    return out


def _pack(ds, p):
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def echelon_fp(vectors, p: int, m: int) -> list[int]:
    """Reduced row echelon basis of the F_p-span of packed vectors."""
    rows = [_unpack(v, p, m) for v in vectors]
    out = []
    for c in range(m - 1, -1, -1):
        piv = next((i for i, r in enumerate(rows) if r[c]), None)
        if piv is None:
            continue
        prow = rows.pop(piv)
        inv = pow(prow[c], -1, p)
        prow = [x * inv % p for x in prow]
        rows = [[(x - r[c] * y) % p for x, y in zip(r, prow)] if r[c] else r for r in rows]
        out = [[(x - r[c] * y) % p for x, y in zip(r, prow)] if r[c] else r for r in out]
        out.append(prow)
    return sorted((_pack(r, p) for r in out), reverse=True)


def nullspace_fp(cols, p: int, m: int) -> list[int]:
    """Basis of {x in F_p^k : Σ x_i cols[i] = 0}, as packed vectors of length k.

    ``cols`` are the images of the basis vectors θ^0, ..., θ^{k-1}, so the
    returned vectors are exactly the kernel elements in packed form.
    """
    k = len(cols)
    # augment each image with an identity tag and eliminate on the image part
    rows = [_unpack(v, p, m) + [int(i == j) for j in range(k)] for i, v in enumerate(cols)]
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, k) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(k):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    kernel = [_pack(row[m:], p) for row in rows[r:]]
    return echelon_fp(kernel, p, k)
