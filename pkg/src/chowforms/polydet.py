"""Determinants of matrices with polynomial entries.

Engines, in increasing sophistication:

* :func:`det_cofactor` — Laplace expansion, dimension <= 6, test oracle.
* :func:`det_bareiss` — fraction-free elimination directly over MPoly
  entries with exact division; the workhorse for symbolic resultants.
* :func:`det_univariate_interp` — evaluation at integer points, integer
  Bareiss determinants, exact Lagrange interpolation.
* :func:`det_kronecker` — pack multivariate entries to univariates,
  interpolate, unpack by mixed-radix digits.
"""

from __future__ import annotations

import math

from .errors import InternalError, UsageError
from .mpoly import MPoly, VarTable, divexact, kronecker_pack, kronecker_unpack


class PolyMatrix:
    """Immutable square matrix of MPoly entries over one shared VarTable."""

    __slots__ = ("dim", "vars", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(r) for r in entries)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise UsageError("matrix must be square and nonempty")
        vars = rows[0][0].vars
        for r in rows:
            for e in r:
                if e.vars != vars:
                    raise UsageError("matrix entries use different VarTables")
        self.dim = m
        self.vars = vars
        self.entries = rows

    @classmethod
    def from_ints(cls, vars, rows):
        return cls([[MPoly.const(vars, c) for c in r] for r in rows])

    def max_partial_degrees(self):
        return [max(e.partial_degree(i) for r in self.entries for e in r)
                for i in range(self.vars.nvars)]

    def evaluate(self, point):
        """Integer matrix (list of lists) at the given {name: int} point."""
        return [[e.evaluate(point) for e in r] for r in self.entries]

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(str(e) for e in r) + "]" for r in self.entries)
        return f"PolyMatrix(dim={self.dim},\n{body})"


def det_cofactor(M):
    """Exact determinant by Laplace expansion; oracle only, dim <= 6."""
    if M.dim > 6:
        raise UsageError("det_cofactor is limited to dimension <= 6")
    return _cofactor(M.entries, M.vars)


def _cofactor(rows, vars):
    m = len(rows)
    if m == 1:
        return rows[0][0]
    total = MPoly.zero(vars)
    for j in range(m):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _cofactor(minor, vars)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_integer(rows):
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    sign = 1
    prev = 1
    for k in range(m - 1):
        piv = next((i for i in range(k, m) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, m):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, m):
                row_i[j] = (pk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * a[m - 1][m - 1]


def det_bareiss(M):
    """Fraction-free Bareiss determinant over MPoly entries.

    Pivots are chosen among nonzero candidates by fewest terms to slow
    coefficient growth; every interior division is exact by construction.
    """
    a = [list(r) for r in M.entries]
    m = M.dim
    vars = M.vars
    sign = 1
    prev = MPoly.const(vars, 1)
    for k in range(m - 1):
        piv = None
        best = None
        for i in range(k, m):
            if not a[i][k].is_zero():
                size = len(a[i][k].terms)
                if best is None or size < best:
                    best, piv = size, i
        if piv is None:
            return MPoly.zero(vars)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, m):
            aik = a[i][k]
            for j in range(k + 1, m):
                num = pk * a[i][j] - aik * a[k][j]
                a[i][j] = divexact(num, prev)
            a[i][k] = MPoly.zero(vars)
        prev = pk
    d = a[m - 1][m - 1]
    return -d if sign < 0 else d


def _eval_nodes(count):
    """0, 1, -1, 2, -2, ... — symmetric to keep evaluated bitsizes small."""
    nodes = [0]
    k = 1
    while len(nodes) < count:
        nodes.append(k)
        if len(nodes) < count:
            nodes.append(-k)
        k += 1
    return nodes[:count]


try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    def _mpz(x):
        return x


def _interpolate_exact(nodes, values):
    """Exact integer-coefficient interpolation through (nodes, values).

    The nodes must form a contiguous integer range (which the symmetric
    node sequence always does), so every Lagrange denominator divides N!
    and the weights are signed binomial coefficients — pure integer
    arithmetic throughout.  Raises InternalError if the data is not an
    integer polynomial (cannot happen for determinant data).
    """
    lo, hi = min(nodes), max(nodes)
    n = len(nodes)
    if hi - lo != n - 1:
        raise InternalError("interpolation nodes must be a contiguous range")
    d = n - 1
    # W(x) = prod over the range of (x - a), ascending coefficients.
    w = [_mpz(1)]
    for a in range(lo, hi + 1):
        w = [_mpz(0)] + w
        for i in range(len(w) - 1):
            w[i] -= a * w[i + 1]
    fact = [_mpz(1)] * n
    for i in range(1, n):
        fact[i] = fact[i - 1] * i
    nfact = fact[d]
    acc = [_mpz(0)] * n
    vmap = dict(zip(nodes, values))
    for a in range(lo, hi + 1):
        v = vmap[a]
        if v == 0:
            continue
        # Synthetic division: q = W / (x - a), ascending order.
        q = [_mpz(0)] * n
        carry = w[n]
        for i in range(d, -1, -1):
            q[i] = carry
            carry = w[i] + a * carry
        # 1/prod_{b != a}(a - b) = (-1)^(hi-a) / ((a-lo)! (hi-a)!)
        c = v * (nfact // (fact[a - lo] * fact[hi - a]))
        if (hi - a) % 2:
            c = -c
        for i in range(n):
            acc[i] += c * q[i]
    out = []
    for c in acc:
        if c % nfact:
            raise InternalError("interpolation data is not an integer polynomial")
        out.append(int(c // nfact))
    return out


def det_univariate_interp(M, D):
    """Determinant of a univariate PolyMatrix by evaluation–interpolation.

    ``D`` must be at least the degree of the determinant; an undersized cap
    is caught by a verification evaluation at one fresh point.
    """
    if M.vars.nvars != 1:
        raise UsageError("det_univariate_interp needs a single-variable matrix")
    name = M.vars.names[0]
    nodes = _eval_nodes(D + 1)
    values = [det_integer(M.evaluate({name: a})) for a in nodes]
    coeffs = _interpolate_exact(nodes, values)
    det = MPoly(M.vars, {(i,): c for i, c in enumerate(coeffs)})
    fresh = max(abs(a) for a in nodes) + 1
    if det.evaluate({name: fresh}) != det_integer(M.evaluate({name: fresh})):
        raise UsageError("degree cap D too small for det_univariate_interp")
    return det


def det_kronecker(M, bounds):
    """Determinant via Kronecker packing of the entries.

    ``bounds[i]`` must dominate the determinant's partial degree in
    variable i (e.g. dim * max entry degree); too-small caps surface as an
    unpack range error or the interpolation verification failure.
    """
    if len(bounds) != M.vars.nvars:
        raise UsageError("need one degree cap per variable")
    entry_deg = M.max_partial_degrees()
    for cap, deg in zip(bounds, entry_deg):
        if deg > cap:
            raise UsageError("degree cap below an entry's partial degree")
    zvars = VarTable(("z",))
    packed = PolyMatrix([[kronecker_pack(e, bounds, zvars) for e in r]
                         for r in M.entries])
    entry_packed_deg = packed.max_partial_degrees()[0]
    radix = 1
    for cap in bounds:
        radix *= cap + 1
    # The packed determinant has degree <= dim * max packed entry degree,
    # and anything unpackable lies below the radix.
    cap = min(M.dim * entry_packed_deg, radix - 1)
    packed_det = det_univariate_interp(packed, cap)
    return kronecker_unpack(packed_det, bounds, M.vars)
