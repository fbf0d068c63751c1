"""Multihomogeneous (sparse) resultants via Canny–Emiris matrices.

The supports are products of dilated simplices (one per projective block);
a random integer lifting induces a regular fine mixed subdivision of the
Minkowski sum, queried one point at a time through its lower envelope.
Rows of the resultant matrix are indexed by the lattice points of the
shifted Minkowski sum; the resultant is the matrix determinant divided by
the principal minor on the points in non-mixed cells.  A bad lifting
(coarse subdivision, vanishing minor, inexact division) triggers a retry
with fresh randomness.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import DegenerateError, IndeterminateError, UsageError
from .mpoly import MPoly, VarTable, divexact
from .polydet import PolyMatrix, det_bareiss, det_integer
from .resultant import drop_variables


class _BadLifting(Exception):
    """Internal: this lifting/perturbation did not produce a usable matrix."""


class MultiResSystem:
    """Square multihomogeneous elimination instance over l projective blocks.

    ``x_blocks`` lists the homogeneous variable names of each block (the
    first name of a block is the dehomogenizing one); there must be exactly
    sum(n_i) + 1 polynomials, each multihomogeneous across the blocks.
    """

    def __init__(self, polys, x_blocks):
        if not polys:
            raise UsageError("empty system")
        vars = polys[0].vars
        self.block_idx = tuple(tuple(vars.index(n) for n in blk) for blk in x_blocks)
        self.block_names = tuple(tuple(blk) for blk in x_blocks)
        self.nsizes = tuple(len(b) - 1 for b in self.block_idx)
        if any(n < 1 for n in self.nsizes):
            raise UsageError("each block needs at least two variables")
        N = sum(self.nsizes)
        if len(polys) != N + 1:
            raise UsageError(f"need exactly {N + 1} polynomials, got {len(polys)}")
        all_x = [i for b in self.block_idx for i in b]
        self.x_idx = tuple(all_x)
        mdegs = []
        for f in polys:
            if f.vars != vars:
                raise UsageError("system polynomials use different VarTables")
            if f.is_zero():
                raise UsageError("zero polynomial in system")
            degs = None
            for exp in f.terms:
                bd = tuple(sum(exp[i] for i in blk) for blk in self.block_idx)
                if degs is None:
                    degs = bd
                elif bd != degs:
                    raise UsageError("system polynomials must be multihomogeneous "
                                     "in the x-blocks")
            mdegs.append(degs)
        self.vars = vars
        self.polys = tuple(polys)
        self.mdegs = tuple(mdegs)
        self.N = N
        self.l = len(self.block_idx)

    def bezout_bounds(self):
        """Degree of the resultant in the coefficients of each polynomial:
        the multihomogeneous Bezout count of the remaining system."""
        aux = VarTable(tuple(f"t{j}" for j in range(self.l)))
        target = tuple(self.nsizes)
        out = []
        for k in range(len(self.polys)):
            prod = MPoly.const(aux, 1)
            for i, d in enumerate(self.mdegs):
                if i == k:
                    continue
                prod = prod * MPoly(aux, {tuple(int(j == b) for j in range(self.l)): d[b]
                                          for b in range(self.l) if d[b]})
            out.append(prod.terms.get(target, 0))
        return out

    def affine_support(self, i):
        """Full product-of-simplices support of poly i in affine exponents
        (per block, the first variable is dropped)."""
        per_block = []
        for j, blk in enumerate(self.block_idx):
            d = self.mdegs[i][j]
            n = self.nsizes[j]
            pts = [e for e in itertools.product(range(d + 1), repeat=n)
                   if sum(e) <= d]
            per_block.append(pts)
        return [sum(combo, ()) for combo in itertools.product(*per_block)]

    def coeff_table(self, i):
        """Map affine exponent -> coefficient MPoly (parameters only kept as
        a polynomial over the full table with x-exponents zeroed)."""
        buckets = {}
        for exp, c in self.polys[i].terms.items():
            key = []
            for blk in self.block_idx:
                key.extend(exp[idx] for idx in blk[1:])
            e = list(exp)
            for idx in self.x_idx:
                e[idx] = 0
            buckets.setdefault(tuple(key), {})[tuple(e)] = c
        return {k: MPoly(self.vars, terms) for k, terms in buckets.items()}

    def param_project(self, f):
        g, _ = drop_variables(f, self.x_idx)
        return g


def _solve_fraction(a, b):
    """Solve the square rational system a x = b exactly; None if singular."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _locate_cell(supports, liftings, N, x, cache):
    """Cell of the regular mixed subdivision containing the point x.

    The cell is the face of the lower envelope of the lifted Minkowski sum
    at x: minimize sum_i w_i(a) lambda_{i,a} subject to the points averaging
    to x with one convex combination per polytope.  A float LP locates the
    candidate cell, then everything is certified exactly over the rationals:
    the cell's affine support function must lie weakly below every lifted
    point (strictly off the cell) and x must be a strictly positive convex
    combination of the cell.  Any failure means the lifting or perturbation
    was not generic and raises ``_BadLifting`` for a retry.
    """
    from scipy.optimize import linprog

    k = len(supports)
    idx = [(i, a) for i, sup in enumerate(supports) for a in sup]
    c = [float(liftings[i][a]) for i, a in idx]
    A = [[float(a[j]) for _, a in idx] for j in range(N)]
    for i in range(k):
        A.append([1.0 if ii == i else 0.0 for ii, _ in idx])
    b = [float(xi) for xi in x] + [1.0] * k
    res = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    if not res.success:
        raise _BadLifting
    sigmas = [[] for _ in range(k)]
    for (i, a), lam in zip(idx, res.x):
        if lam > 1e-9:
            sigmas[i].append(a)
    if any(not s for s in sigmas) or sum(len(s) for s in sigmas) != N + k:
        raise _BadLifting  # not the interior of a fine mixed cell
    key = tuple(tuple(sorted(s)) for s in sigmas)
    if key not in cache:
        rows = []
        rhs = []
        for i, s in enumerate(sigmas):
            for a in s:
                rows.append(list(a) + [int(ii == i) for ii in range(k)])
                rhs.append(liftings[i][a])
        sol = _solve_fraction(rows, rhs)
        if sol is None:
            raise _BadLifting
        gamma, cv = sol[:N], sol[N:]
        for i, sup in enumerate(supports):
            on_cell = set(sigmas[i])
            for a in sup:
                h = sum(g * ai for g, ai in zip(gamma, a)) + cv[i]
                w = liftings[i][a]
                if w < h or (w == h and a not in on_cell):
                    raise _BadLifting
        cache[key] = True
    cols = [(i, a) for i, s in enumerate(sigmas) for a in s]
    rows = [[Fraction(a[j]) for _, a in cols] for j in range(N)]
    for i in range(k):
        rows.append([Fraction(int(ii == i)) for ii, _ in cols])
    lam = _solve_fraction(rows, list(x) + [Fraction(1)] * k)
    if lam is None or any(v <= 0 for v in lam):
        raise _BadLifting  # x on a cell boundary: perturbation not generic
    return sigmas


def _lattice_points(nsizes, sums):
    """Points p >= 1 with per-block coordinate sums <= s_j, descending lex."""
    per_block = []
    for n, s in zip(nsizes, sums):
        pts = [e for e in itertools.product(range(1, s + 1), repeat=n)
               if sum(e) <= s]
        per_block.append(pts)
    out = [sum(combo, ()) for combo in itertools.product(*per_block)]
    out.sort(reverse=True)
    return out


def _build_matrix(sys, rng):
    supports = [sys.affine_support(i) for i in range(len(sys.polys))]
    liftings = [{a: rng.randint(1, 2 ** 16) for a in sup} for sup in supports]
    cell_cache = {}
    denom = 2 ** 20 + 7
    delta = [Fraction(rng.randint(1, 2 ** 10), denom * (sys.N + 1))
             for _ in range(sys.N)]
    sums = [sum(d[j] for d in sys.mdegs) for j in range(sys.l)]
    points = _lattice_points(sys.nsizes, sums)
    index = {p: i for i, p in enumerate(points)}
    coeffs = [sys.coeff_table(i) for i in range(len(sys.polys))]
    zero = MPoly.zero(sys.vars)
    rows = []
    mixed_flags = []
    for p in points:
        x = [pi - di for pi, di in zip(p, delta)]
        sigmas = _locate_cell(supports, liftings, sys.N, x, cell_cache)
        singles = [i for i, s in enumerate(sigmas) if len(s) == 1]
        if not singles:
            raise _BadLifting
        ip = max(singles)
        ap = sigmas[ip][0]
        mixed_flags.append(len(singles) == 1)
        row = [zero] * len(points)
        for a, cf in coeffs[ip].items():
            q = tuple(pi - api + ai for pi, api, ai in zip(p, ap, a))
            col = index.get(q)
            if col is None:
                raise _BadLifting
            row[col] = cf
        rows.append(row)
    sub = [i for i, m in enumerate(mixed_flags) if not m]
    return rows, sub


def resultant_multihomogeneous(sys, seed=0, retries=8):
    """Sparse multihomogeneous resultant, up to sign and integer content.

    Symbolic in whatever parameter variables the coefficients carry; a
    purely numeric system yields an integer constant (zero iff the system
    has a common root in the product of projective spaces, for generic
    vanishing patterns).

    The resultant always divides the matrix determinant, but the quotient
    by the non-mixed minor equals the resultant only for sufficiently
    well-behaved liftings, so a quotient is accepted only once two
    independent liftings agree on it (up to sign).
    """
    rng = random.Random(seed)
    symbolic = any(any(idx not in sys.x_idx and f.partial_degree(idx) > 0
                       for idx in range(sys.vars.nvars)) for f in sys.polys)
    seen = []
    for _ in range(2 * retries):
        try:
            rows, sub = _build_matrix(sys, rng)
        except _BadLifting:
            continue
        try:
            if symbolic:
                det = det_bareiss(PolyMatrix(rows))
                if not sub:
                    minor = MPoly.const(sys.vars, 1)
                else:
                    minor = det_bareiss(PolyMatrix([[rows[i][j] for j in sub]
                                                    for i in sub]))
                if minor.is_zero():
                    continue
                if det.is_zero():
                    cand = sys.param_project(MPoly.zero(sys.vars))
                else:
                    cand = sys.param_project(divexact(det, minor)).normalized()
            else:
                irows = [[e.constant_value() for e in r] for r in rows]
                det = det_integer(irows)
                minor = det_integer([[irows[i][j] for j in sub] for i in sub]) \
                    if sub else 1
                if minor == 0:
                    continue
                if det % minor:
                    continue
                cand = abs(det // minor)
        except UsageError:
            continue
        if cand in seen:
            if symbolic:
                return cand
            return sys.param_project(MPoly.const(sys.vars, cand))
        seen.append(cand)
    raise IndeterminateError("no two liftings agreed on the "
                             "multihomogeneous resultant")


def resultant_multihomogeneous_interp(sys, param_blocks, bounds, grid,
                                      tag="mres-interp"):
    """Sparse multihomogeneous resultant by evaluation and interpolation.

    Avoids the symbolic determinant: the Canny-Emiris matrix structure is
    built once per lifting, every sample is an integer determinant
    quotient at a numeric parameter point, and the polynomial is recovered
    by Newton interpolation on a product of lattice simplices (one per
    ``param_blocks`` entry, with per-block total-degree bound ``bounds``;
    these are upper bounds, e.g. the Bezout counts, so the blocks are
    interpolated inhomogeneously).  A result is accepted once two
    independent liftings agree on the normalized polynomial.
    """
    import itertools

    from .resultant import _newton_assemble, _simplex_points

    out_names = tuple(n for blk in param_blocks for n in blk)
    out_blocks = []
    pos = 0
    for blk in param_blocks:
        out_blocks.append(tuple(range(pos, pos + len(blk))))
        pos += len(blk)
    out_vars = VarTable(out_names, out_blocks)
    block_sizes = [len(blk) for blk in param_blocks]
    per_block = [_simplex_points(nb, d) for nb, d in zip(block_sizes, bounds)]
    alphas = [sum(combo, ()) for combo in itertools.product(*per_block)]
    base_point = {n: 0 for n in sys.vars.names}

    class _BadGrid(Exception):
        pass

    def quotient(rows, sub, point):
        irows = [[e.evaluate(point) for e in r] for r in rows]
        minor = det_integer([[irows[i][j] for j in sub] for i in sub]) \
            if sub else 1
        if minor == 0:
            raise _BadGrid
        det = det_integer(irows)
        if det % minor:
            raise _BadLifting
        return det // minor

    rng = grid.rng(tag)
    seen = []
    # Bad liftings are detected cheaply (first sample), so a generous
    # budget costs little while specialized coefficient patterns can push
    # the per-lifting success rate well below one half.
    for lift_try in range(8 * grid.retries):
        try:
            rows, sub = _build_matrix(sys, rng)
        except _BadLifting:
            continue
        cand = None
        for attempt in range(grid.retries):
            offsets = [rng.randint(0, 64 * (attempt + 1)) for _ in out_names]
            try:
                values = {}
                for alpha in alphas:
                    point = dict(base_point)
                    point.update(zip(out_names,
                                     (o + a for o, a in zip(offsets, alpha))))
                    values[alpha] = quotient(rows, sub, point)
                poly = _newton_assemble(values, alphas, block_sizes, bounds,
                                        offsets, out_vars, homogenize=False)
                fresh = [rng.randint(100, 10 ** 4) for _ in out_names]
                point = dict(base_point)
                point.update(zip(out_names, fresh))
                if poly.evaluate(dict(zip(out_names, fresh))) != \
                        quotient(rows, sub, point):
                    raise _BadLifting
                cand = poly.normalized()
                break
            except _BadGrid:
                continue
            except _BadLifting:
                cand = None
                break
        if cand is None:
            continue
        if any(cand == s for s in seen):
            return cand
        seen.append(cand)
    raise IndeterminateError("no two liftings agreed on the interpolated "
                             "multihomogeneous resultant")
