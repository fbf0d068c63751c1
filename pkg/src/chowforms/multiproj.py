"""Multiprojective varieties: supports, multidegrees, hypersurface formats
and multigraded Chow forms.

A format is a componentwise dimension vector for a product of linear
subspaces, one factor per projective block.  The support of a variety
collects the formats of complementary dimension whose generic subspaces
meet it; everything here reduces to the table of projection dimensions
dim pi_I(V) and to sparse multihomogeneous resultants.
"""

from __future__ import annotations

import itertools
import math

from .dimension import RandomGrid, dim_projection
from .errors import UsageError
from .mixedres import MultiResSystem, resultant_multihomogeneous_interp
from .mpoly import MPoly, VarTable, gcd, square_free_part
from .polydet import det_integer
from .chow import LambdaMatrix, _rank_over_q


class MultiprojVariety:
    """Zero locus of multihomogeneous polynomials in a product of
    projective spaces, with the block structure of its coordinates."""

    def __init__(self, vars, polys, dim=None):
        if vars.nblocks < 1:
            raise UsageError("variable table must carry at least one block")
        if not polys:
            raise UsageError("need at least one defining polynomial")
        self.vars = vars
        self.x_blocks = tuple(tuple(vars.names[i] for i in blk)
                              for blk in vars.blocks)
        self.nvec = tuple(len(b) - 1 for b in self.x_blocks)
        if any(n < 1 for n in self.nvec):
            raise UsageError("each block needs at least two variables")
        self.l = len(self.nvec)
        mdegs = []
        for f in polys:
            if f.vars != vars:
                raise UsageError("polynomials use different VarTables")
            if f.is_zero():
                raise UsageError("zero polynomial among the generators")
            mdegs.append(f.block_degrees())
        self.polys = tuple(polys)
        self.mdegs = tuple(mdegs)
        self.dim = dim

    @property
    def total_dim(self):
        return sum(self.nvec)

    def codim(self):
        if self.dim is None:
            raise UsageError("variety dimension is not set")
        return self.total_dim - self.dim


def _nonempty_subsets(l):
    for size in range(1, l + 1):
        yield from itertools.combinations(range(l), size)


def dim_table(V, grid):
    """Map from each nonempty block index set I to dim pi_I(V)."""
    return {I: dim_projection(list(V.polys), V.x_blocks, list(I), grid)
            for I in _nonempty_subsets(V.l)}


def _check_table(V, table):
    for I in _nonempty_subsets(V.l):
        if I not in table:
            raise UsageError(f"dimension table is missing the index set {I}")


def formats_of_size(nvec, total):
    """All alpha <= nvec with |alpha| = total."""
    out = []
    for alpha in itertools.product(*[range(n + 1) for n in nvec]):
        if sum(alpha) == total:
            out.append(alpha)
    return out


def support(V, table):
    """Formats beta of size codim V whose generic subspaces meet V:
    beta is in the support iff sum_{i in I}(n_i - beta_i) <= dim pi_I(V)
    for every nonempty I."""
    _check_table(V, table)
    codim = V.codim()
    out = []
    for beta in formats_of_size(V.nvec, codim):
        if all(sum(V.nvec[i] - beta[i] for i in I) <= table[I]
               for I in _nonempty_subsets(V.l)):
            out.append(beta)
    return set(out)


def chow_hypersurface_formats(V, table):
    """Formats alpha of size codim V - 1 whose incidence variety is a
    hypersurface: sum_{i in I}(n_i - alpha_i) - 1 <= dim pi_I(V) for all
    nonempty I (equivalently alpha <= beta for some support beta)."""
    _check_table(V, table)
    codim = V.codim()
    out = []
    for alpha in formats_of_size(V.nvec, codim - 1):
        if all(sum(V.nvec[i] - alpha[i] for i in I) - 1 <= table[I]
               for I in _nonempty_subsets(V.l)):
            out.append(alpha)
    return set(out)


def hurwitz_hypersurface_formats(V, table, mdeg_fn):
    """Formats alpha of size codim V whose non-transversality locus is a
    hypersurface.

    Outside the support the criterion is sum_{i in I}(n_i - alpha_i) <=
    dim pi_I(V) + 1 for all nonempty I; on the support the locus is a
    hypersurface exactly when the multidegree at alpha is not 1.
    """
    _check_table(V, table)
    codim = V.codim()
    supp = support(V, table)
    out = []
    for alpha in formats_of_size(V.nvec, codim):
        if alpha in supp:
            if mdeg_fn(alpha) != 1:
                out.append(alpha)
        elif all(sum(V.nvec[i] - alpha[i] for i in I) <= table[I] + 1
                 for I in _nonempty_subsets(V.l)):
            out.append(alpha)
    return set(out)


def multi_degree_equalize(V):
    """Pad every polynomial up to the componentwise-max multidegree by
    multiplying with all monomials filling the per-block gaps; the zero
    locus is unchanged."""
    dmax = tuple(max(d[j] for d in V.mdegs) for j in range(V.l))
    out = []
    for f, d in zip(V.polys, V.mdegs):
        gaps = [dm - dj for dm, dj in zip(dmax, d)]
        if not any(gaps):
            out.append(f)
            continue
        pads = []
        for blk, gap in zip(V.x_blocks, gaps):
            mons = []
            for exps in itertools.product(range(gap + 1), repeat=len(blk)):
                if sum(exps) == gap:
                    m = MPoly.const(V.vars, 1)
                    for name, e in zip(blk, exps):
                        if e:
                            m = m * MPoly.var(V.vars, name, e)
                    mons.append(m)
            pads.append(mons)
        for combo in itertools.product(*pads):
            g = f
            for m in combo:
                g = g * m
            out.append(g)
    return MultiprojVariety(V.vars, out, dim=V.dim)


def u_form_names(i, j, n):
    """Coefficient names of the j-th generic linear form on block i."""
    return tuple(f"u{i}_{j}_{k}" for k in range(n + 1))


def _attach_forms(V, alpha):
    """Extend the table by one coefficient block per generic linear form
    (n_i - alpha_i forms on block i) and return (wide, forms, u_blocks)."""
    wide = V.vars
    u_blocks = []
    for i, (n, a) in enumerate(zip(V.nvec, alpha), start=1):
        for j in range(n - a):
            names = u_form_names(i, j, n)
            wide = wide.extend(names)
            u_blocks.append(names)
    forms = []
    for i, (n, a) in enumerate(zip(V.nvec, alpha), start=1):
        for j in range(n - a):
            U = MPoly.zero(wide)
            for k, xname in enumerate(V.x_blocks[i - 1]):
                U = U + MPoly.var(wide, f"u{i}_{j}_{k}") * \
                    MPoly.var(wide, xname)
            forms.append(U)
    return wide, forms, u_blocks


class MultiChowForm:
    """Normalized square-free multigraded Chow form with its format."""

    def __init__(self, poly, alpha, provenance):
        self.poly = poly
        self.alpha = tuple(alpha)
        self.provenance = provenance

    @property
    def block_degrees(self):
        return self.poly.block_degrees()

    @property
    def bitsize(self):
        return self.poly.bitsize()

    def __repr__(self):
        return f"MultiChowForm({self.poly.to_text()})"


def multi_chow_form_ci(V, alpha, grid=None, table=None):
    """Chow form of a multiprojective complete intersection for format
    alpha: eliminate all x-blocks from the system extended by n_i - alpha_i
    generic linear forms per block, then take the square-free part.

    When a projection-dimension ``table`` is supplied, the format is first
    checked to cut out a hypersurface in the product of Grassmannians."""
    if grid is None:
        grid = RandomGrid(seed=0)
    alpha = tuple(alpha)
    if len(alpha) != V.l or any(a > n for a, n in zip(alpha, V.nvec)):
        raise UsageError("format does not fit the block sizes")
    if table is not None and \
            alpha not in chow_hypersurface_formats(V, table):
        raise UsageError(f"format {alpha} does not give a hypersurface")
    need = sum(alpha) + 1  # codimension of a CI with this Chow format
    if len(V.polys) != need:
        raise UsageError(f"complete intersection for this format needs "
                         f"{need} polynomials, got {len(V.polys)}")
    wide, forms, u_blocks = _attach_forms(V, alpha)
    polys = [f.rename_into(wide) for f in V.polys] + forms
    sys = MultiResSystem(polys, V.x_blocks)
    bounds = sys.bezout_bounds()[len(V.polys):]
    R = resultant_multihomogeneous_interp(sys, u_blocks, bounds, grid,
                                          tag=f"mchow-{alpha}")
    if R.is_zero() or R.is_constant():
        raise UsageError("the multigraded elimination degenerated; the "
                         "incidence variety is not a hypersurface here")
    cf = square_free_part(R).normalized()
    return MultiChowForm(cf, alpha, "ci")


def multidegree(V, alpha, grid, table=None):
    """Number of points in which a generic subspace of format alpha meets
    V: slice by n_i - alpha_i random linear forms per block, append a
    multilinear form restricted to a random parameter line, and read off
    the degree of the square-free part of the eliminant."""
    if grid is None:
        grid = RandomGrid(seed=0)
    alpha = tuple(alpha)
    if table is None:
        table = dim_table(V, grid)
    if alpha not in support(V, table):
        raise UsageError(f"format {alpha} is not in the support")
    answers = []
    for trial in range(2 * grid.retries):
        rng = grid.rng("mdeg", alpha, trial)
        wide = V.vars.extend(("t_",))
        t = MPoly.var(wide, "t_")
        # A random invertible change of coordinates in each block leaves
        # the multidegree unchanged and makes the coefficient patterns
        # generic enough for the sparse elimination.
        subs = {}
        for blk in V.x_blocks:
            nb = len(blk)
            while True:
                C = [[rng.randint(-9, 9) for _ in range(nb)]
                     for _ in range(nb)]
                if det_integer(C):
                    break
            for j, name in enumerate(blk):
                g = MPoly.zero(wide)
                for k, other in enumerate(blk):
                    if C[j][k]:
                        g = g + C[j][k] * MPoly.var(wide, other)
                subs[name] = g
        polys = [f.rename_into(wide).substitute(subs) for f in V.polys]
        for i, (n, a) in enumerate(zip(V.nvec, alpha)):
            for _ in range(n - a):
                L = MPoly.zero(wide)
                for xname in V.x_blocks[i]:
                    L = L + rng.randint(1, grid.bound) * MPoly.var(wide, xname)
                polys.append(L)
        M = MPoly.zero(wide)
        for combo in itertools.product(*[blk for blk in V.x_blocks]):
            m = MPoly.const(wide, rng.randint(1, grid.bound)) + \
                rng.randint(1, grid.bound) * t
            for xname in combo:
                m = m * MPoly.var(wide, xname)
            M = M + m
        polys.append(M)
        sys = MultiResSystem(polys, V.x_blocks)
        bound = sys.bezout_bounds()[-1]
        R = resultant_multihomogeneous_interp(sys, [("t_",)], [bound], grid,
                                              tag=("mdeg", alpha, trial))
        if R.is_zero():
            continue
        count = square_free_part(R).total_degree()
        if count in answers:
            return count
        answers.append(count)
    raise UsageError("multidegree slices kept disagreeing; the format may "
                     "be degenerate for this variety")


def _multi_dim_leq(V, r, grid):
    return dim_projection(list(V.polys), V.x_blocks, list(range(V.l)),
                          grid) <= r


def _combo(V, rows):
    polys = []
    for row in rows:
        g = MPoly.zero(V.vars)
        for c, f in zip(row, V.polys):
            g = g + c * f
        if g.is_zero():
            raise UsageError("degenerate combination")
        polys.append(g)
    return MultiprojVariety(V.vars, polys, dim=V.dim)


def multi_generic_lc(V, r, grid):
    """Verified random combination matrices cutting dimension-r varieties
    whose intersection is V, as in the projective case but with the
    multihomogeneous degree bound and block-wise dimension checks."""
    m = len(V.polys)
    k = V.total_dim - r
    if k < 1:
        raise UsageError("need r < total dimension")
    if len({d for d in V.mdegs}) != 1:
        raise UsageError("multi_generic_lc requires equalized multidegrees")
    dtot = sum(V.mdegs[0])
    N = math.ceil(m / k)
    if m == k:
        ident = [[int(i == j) for j in range(m)] for i in range(k)]
        return [LambdaMatrix(ident, seed=None)]
    bound = min(N * k * dtot ** k + m + 1, 2 ** 15)
    last_err = "no attempt made"
    for attempt in range(grid.retries):
        rng = grid.rng("mglc", attempt)
        lambdas = [[[rng.randint(1, bound) for _ in range(m)]
                    for _ in range(k)] for _ in range(N)]
        stacked = [row for lam in lambdas for row in lam]
        if _rank_over_q(stacked) < min(m, N * k):
            last_err = "stacked matrix not of full rank"
            continue
        ok = True
        for lam in lambdas:
            try:
                W = _combo(V, lam)
            except UsageError:
                ok = False
                last_err = "a combination vanished identically"
                break
            if not _multi_dim_leq(W, r, grid):
                ok = False
                last_err = "a combination variety has dimension > r"
                break
        if ok:
            return [LambdaMatrix(lam, seed=(grid.seed, attempt))
                    for lam in lambdas]
    raise UsageError(f"multi_generic_lc failed after {grid.retries} "
                     f"attempts: {last_err}")


def multi_chow_form(V, r, alpha, grid):
    """General-case multigraded Chow form: equalize multidegrees, reduce to
    complete intersections by verified combinations, fold with gcd."""
    Veq = multi_degree_equalize(V)
    Veq.dim = r
    lambdas = multi_generic_lc(Veq, r, grid)
    result = None
    for lam in lambdas:
        W = _combo(Veq, lam.rows)
        cf = multi_chow_form_ci(W, alpha, grid)
        result = cf.poly if result is None else gcd(result, cf.poly)
    cf = square_free_part(result).normalized()
    return MultiChowForm(cf, alpha, f"gcd-of-{len(lambdas)}")


def multi_bounds(V, alpha):
    """Closed-form size bounds for the format-alpha elimination."""
    alpha = tuple(alpha)
    n = V.total_dim
    r = n - sum(alpha) - 1
    d = max(max(dv) for dv in V.mdegs)
    total = 0
    for i in range(V.l):
        parts = list(alpha)
        parts[i] += 1
        total += math.factorial(n - r) // math.prod(
            math.factorial(p) for p in parts) if sum(parts) == n - r else 0
    degree_bound = d ** (n - r) * total
    A = sum((ni - ai) * (ni + 1) for ni, ai in zip(V.nvec, alpha))
    return {"degree_bound": degree_bound,
            "variable_count": A,
            "block_degree_bound": d ** (n - r)}
