"""Pure-Python hot kernels.

Same signatures and results as the compiled ``_ccore`` module; selected by
:mod:`maxkernel._core` when the extension is missing or disabled.
"""


def rank_fp(cols, p, m):
    """Rank over F_p of packed base-p column vectors."""
    if p == 2:
        basis = {}
        r = 0
        for v in cols:
            while v:
                top = v.bit_length() - 1
                b = basis.get(top)
                if b is None:
                    basis[top] = v
                    r += 1
                    break
                v ^= b
        return r
    rows = []
    for v in cols:
        ds = []
        for _ in range(m):
            v, d = divmod(v, p)
            ds.append(d)
        rows.append(ds)
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


def _fadd(ctx, x, y):
    if not x:
        return y
    if not y:
        return x
    log = ctx.log
    lx = log[x]
    z = ctx.zech[(log[y] - lx) % ctx.N]
    return 0 if z < 0 else ctx.exp[lx + z]


def trinomial_nullities(ctx, plan, a):
    """F_p-nullity of a x + b x^σ - x^{σ^d} for every b, indexed by b."""
    p, m, N = ctx.p, ctx.m, ctx.N
    exp, log = ctx.exp, ctx.log
    lt, lst, negcd = plan.lt, plan.lst, plan.negcd
    if a:
        la = log[a]
        base = [exp[la + lt[i]] for i in range(m)]
    else:
        base = [0] * m
    if p == 2:
        base = [base[i] ^ negcd[i] for i in range(m)]
        out = [m - rank_fp(base, 2, m)]
        for b in range(1, ctx.order):
            lb = log[b]
            cols = [base[i] ^ exp[lb + lst[i]] for i in range(m)]
            out.append(m - rank_fp(cols, 2, m))
        return out
    base = [_fadd(ctx, base[i], negcd[i]) for i in range(m)]
    out = [m - rank_fp(base, p, m)]
    for b in range(1, ctx.order):
        lb = log[b]
        cols = [_fadd(ctx, base[i], exp[lb + lst[i]]) for i in range(m)]
        out.append(m - rank_fp(cols, p, m))
    return out


def pair_nullities(ctx, plan, avals, bvals):
    """F_p-nullity of a x + b x^σ - x^{σ^d} for each (a, b) pair."""
    p, m = ctx.p, ctx.m
    exp, log = ctx.exp, ctx.log
    lt, lst, negcd = plan.lt, plan.lst, plan.negcd
    out = []
    for a, b in zip(avals, bvals):
        cols = list(negcd)
        if a:
            la = log[a]
            cols = [_fadd(ctx, cols[i], exp[la + lt[i]]) if p != 2 else cols[i] ^ exp[la + lt[i]]
                    for i in range(m)]
        if b:
            lb = log[b]
            cols = [_fadd(ctx, cols[i], exp[lb + lst[i]]) if p != 2 else cols[i] ^ exp[lb + lst[i]]
                    for i in range(m)]
        out.append(m - rank_fp(cols, p, m))
    return out


def vector_criterion_bs(ctx, plan, a):
    """All b for which C C^σ ... C^{σ^{n-1}} e_0 = e_0 (trinomial companion)."""
    if not a:
        return []
    N, exp, log = ctx.N, ctx.exp, ctx.log
    d, n, sig = plan.d, ctx.n, plan.sig
    la = log[a]
    las = [la * sig[i] % N for i in range(n)]
    found = []
    for b in range(ctx.order):
        lb = log[b] if b else -1
        w = [0] * d
        w[0] = 1
        for i in range(n - 1, -1, -1):
            last = w[d - 1]
            if last:
                ll = log[last]
                top = exp[las[i] + ll]
                second = exp[lb * sig[i] % N + ll] if b else 0
            else:
                top = second = 0
            w = [top, _add(ctx, w[0], second)] + w[1:d - 1]
        if w[0] == 1 and not any(w[1:]):
            found.append(b)
    return found


def _add(ctx, x, y):
    if ctx.p == 2:
        return x ^ y
    return _fadd(ctx, x, y)


def orbit_rank_histogram(ctx, basis, size):
    """Histogram of rank(V + g^i V) over F_p for 1 <= i < size."""
    p, m, N = ctx.p, ctx.m, ctx.N
    exp, log = ctx.exp, ctx.log
    lv = [log[v] for v in basis]
    hist = [0] * (2 * len(basis) + 1)
    for i in range(1, size):
        shifted = [exp[(l + i) % N] for l in lv]
        hist[rank_fp(list(basis) + shifted, p, m)] += 1
    return hist
