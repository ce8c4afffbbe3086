"""Independent reference computations used by the tests.

Nothing here calls into the package's linear algebra or complex builders:
ranks come from sympy, tensors are enumerated with itertools, and series
are expanded by brute force over exponent vectors.
"""

import itertools
from fractions import Fraction

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def _domain(p):
    return QQ if p == 0 else GF(p)


def dense_rank(p, rows, ncols):
    """Rank of a dense matrix (list of rows) over Q (p = 0) or F_p."""
    if not rows or not ncols:
        return 0
    K = _domain(p)
    conv = (lambda a: QQ(Fraction(a).numerator, Fraction(a).denominator)) if p == 0 \
        else (lambda a: K(int(a) % p))
    return DomainMatrix([[conv(a) for a in r] for r in rows], (len(rows), ncols), K).rank()


def full_tensors(c, k, t):
    """All of ``(C^{(x) k})_t`` including unit slots, as name tuples."""
    names = [(n, d) for n, d in c.space.items()]
    out = []
    for combo in itertools.product(names, repeat=k):
        if sum(d for _, d in combo) == t:
            out.append(tuple(n for n, _ in combo))
    return out


def _add(acc, key, a, p):
    v = acc.get(key, 0) + a
    if p:
        v %= p
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def raw_coface(c, x, i, p):
    """Coface written straight from the cyclic cobar formula."""
    deg = c.degree
    n = len(x) - 1
    out = {}
    if i <= n:
        for (a, b), k in c.comult[x[i]].items():
            _add(out, x[:i] + (a, b) + x[i + 1:], int(k) if p else Fraction(k), p)
        return out
    rest = sum(deg(y) for y in x[1:])
    for (a, b), k in c.comult[x[0]].items():
        sign = -1 if (deg(a) * (deg(b) + rest)) % 2 else 1
        _add(out, (b,) + x[1:] + (a,), sign * (int(k) if p else Fraction(k)), p)
    return out


def unnormalized_cohh_dims(c, S, D):
    """``dim H^s`` of the full cosimplicial cochain complex for s <= S, t <= D.

    Uses all tensors (units allowed), so it checks the normalization
    independently of the normalized coordinates used by the package.
    """
    p = c.field.characteristic
    dims = {}
    for t in range(D + 1):
        levels = [full_tensors(c, s + 1, t) for s in range(S + 2)]
        ranks = []
        for s in range(S + 1):
            src, tgt = levels[s], levels[s + 1]
            idx = {y: j for j, y in enumerate(tgt)}
            rows = [[0] * len(src) for _ in tgt]
            for col, x in enumerate(src):
                acc = {}
                for i in range(s + 2):
                    sgn = -1 if i % 2 else 1
                    for y, a in raw_coface(c, x, i, p).items():
                        _add(acc, y, sgn * a, p)
                for y, a in acc.items():
                    rows[idx[y]][col] = a
            ranks.append(dense_rank(p, rows, len(src)))
        for s in range(S + 1):
            h = len(levels[s]) - ranks[s] - (ranks[s - 1] if s else 0)
            if h:
                dims[(s, t)] = h
    return dims


def series_expand(gens, D):
    """Brute-force bigraded series of a free graded-commutative object.

    ``gens`` is a list of ``(s, t, exterior)``; exponents of exterior
    generators are 0 or 1, the rest are unbounded (truncated at t <= D).
    """
    ranges = []
    for s, t, ext in gens:
        top = 1 if ext else D // t
        ranges.append(range(top + 1))
    out = {}
    for exps in itertools.product(*ranges):
        s = sum(e * g[0] for e, g in zip(exps, gens))
        t = sum(e * g[1] for e, g in zip(exps, gens))
        if t <= D:
            out[(s, t)] = out.get((s, t), 0) + 1
    return out


def total_series(gens_by_total, max_total):
    """Poincare series in one grading; ``gens_by_total`` is a list of (degree, exterior)."""
    ranges = []
    for d, ext in gens_by_total:
        ranges.append(range(2) if ext else range(max_total // d + 1))
    out = [0] * (max_total + 1)
    for exps in itertools.product(*ranges):
        n = sum(e * g[0] for e, g in zip(exps, gens_by_total))
        if n <= max_total:
            out[n] += 1
    return out


def count_monomials(degrees, D, exterior_odd=True):
    """Per-degree count of monomials on generators (odd ones exterior if asked)."""
    gens = [(0, d, exterior_odd and d % 2 == 1) for d in degrees]
    series = series_expand(gens, D)
    return tuple(series.get((0, t), 0) for t in range(D + 1))
