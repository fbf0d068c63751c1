"""Monte Carlo geometric predicates built on resultants.

Projective solvability, dimension upper bounds, and dimensions of
coordinate-block projections are all reduced to small elimination
instances: linear equations are substituted away exactly (over the
rationals, with denominators cleared), leftover polynomials are combined
into a square system by random linear combinations, and the verdict is
read off the s-valuation of a generalized characteristic polynomial.

Verdict sidedness: an "empty" answer is a certificate whenever the random
slice/combination was generic (a nonzero resultant of a larger system);
a "nonempty" answer can in principle be a coincidence of the random
choices, so those are re-derived with fresh randomness.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from .errors import UsageError
from .mpoly import MPoly, VarTable
from .resultant import MacaulaySystem, gcp_resultant


class ProjectiveVariety:
    """V(f_1..f_m) in P^n: homogeneous polynomials over one x-block."""

    def __init__(self, vars, polys, dim=None):
        if vars.nblocks != 1:
            raise UsageError("ProjectiveVariety expects a single variable block")
        for f in polys:
            if f.vars != vars:
                raise UsageError("polynomials use different VarTables")
            if f.is_zero():
                raise UsageError("zero polynomial among the defining equations")
            if not f.is_homogeneous_in(range(vars.nvars)):
                raise UsageError("defining polynomials must be homogeneous")
        if not polys:
            raise UsageError("need at least one defining polynomial")
        self.vars = vars
        self.polys = tuple(polys)
        self.n = vars.nvars - 1
        self.dim = dim


class RandomGrid:
    """Seeded randomness policy: grid bound and retry budget."""

    def __init__(self, seed=0, bound=2 ** 15, retries=3):
        if bound < 1 or retries < 1:
            raise UsageError("grid bound and retries must be positive")
        self.seed = seed
        self.bound = min(bound, 2 ** 15)
        self.retries = retries

    def rng(self, *tag):
        return random.Random(f"{self.seed}|" + "|".join(map(str, tag)))


# -- exact linear algebra over the rationals ---------------------------

def _row_reduce(rows):
    """In-place RREF over Fraction rows; returns pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def solve_affine_linear(eqs, nvars):
    """Solve a . x + c = 0 exactly; eqs are (coeff list, constant) pairs.

    Returns (x0, basis) with a particular rational solution and a basis of
    the homogeneous null space, or None if inconsistent.
    """
    rows = [[Fraction(v) for v in a] + [Fraction(c)] for a, c in eqs]
    pivots = _row_reduce(rows)
    if nvars in pivots:
        return None  # pivot in the constants column: inconsistent
    x0 = [Fraction(0)] * nvars
    for row, p in zip(rows, pivots):
        x0[p] = -row[nvars]
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * nvars
        vec[fcol] = Fraction(1)
        for row, p in zip(rows, pivots):
            vec[p] = -row[fcol]
        basis.append(vec)
    return x0, basis


def _linear_parts(f, idx):
    """(coeffs over idx, constant) for an affine-linear polynomial."""
    coeffs = [0] * len(idx)
    const = 0
    pos = {v: i for i, v in enumerate(idx)}
    for exp, c in f.terms.items():
        supp = [i for i, e in enumerate(exp) if e]
        if not supp:
            const = c
        else:
            coeffs[pos[supp[0]]] = c
    return coeffs, const


def _is_affine_linear(f):
    return f.total_degree() <= 1


def substitute_affine(polys, x0, basis, tvars):
    """Substitute x = x0 + basis . t into integer polynomials.

    Denominators are cleared by evaluating the degree-d homogenization at
    w = D, so the results are integer polynomials in t (each taken
    primitive); the zero sets correspond exactly.
    """
    nvars = len(x0)
    dens = [v.denominator for v in x0]
    for vec in basis:
        dens.extend(v.denominator for v in vec)
    D = lcm(*dens) if dens else 1
    images = []
    for i in range(nvars):
        terms = {}
        ze = (0,) * tvars.nvars
        c0 = int(x0[i] * D)
        if c0:
            terms[ze] = c0
        for j, vec in enumerate(basis):
            cj = int(vec[i] * D)
            if cj:
                e = [0] * tvars.nvars
                e[j] = 1
                terms[tuple(e)] = cj
        images.append(MPoly(tvars, terms))
    out = []
    for f in polys:
        d = f.total_degree()
        acc = MPoly.zero(tvars)
        for exp, c in f.terms.items():
            t = MPoly.const(tvars, c * D ** (d - sum(exp)))
            for i, e in enumerate(exp):
                if e:
                    t = t * images[i] ** e
            acc = acc + t
        out.append(acc.primitive())
    return out


def substitute_projective(polys, basis, zvars):
    """Substitute x = basis . z (homogeneous case, columns integer-scaled)."""
    x0 = [Fraction(0)] * (len(basis[0]) if basis else 0)
    scaled = []
    for vec in basis:
        D = lcm(*(v.denominator for v in vec))
        scaled.append([v * D for v in vec])
    return substitute_affine(polys, x0, scaled, zvars)


# -- projective solvability and dimension ------------------------------

def _fresh_table(prefix, count):
    return VarTable(tuple(f"{prefix}{i}" for i in range(count)))


def _fresh(base, vars):
    name = base
    i = 0
    while name in vars.names:
        name = f"{base}{i}"
        i += 1
    return name


def _degree_equalize_list(polys, vars):
    d = max(f.total_degree() for f in polys)
    out = []
    for f in polys:
        gap = d - f.total_degree()
        if gap == 0:
            out.append(f)
        else:
            for name in vars.names:
                out.append(f * MPoly.var(vars, name, gap))
    return out


def _proj_round(polys, vars, rng, bound):
    """One randomized projective-solvability verdict (True may be spurious,
    False is a certificate)."""
    polys = [f for f in polys if not f.is_zero()]
    if any(f.is_constant() for f in polys):
        return False
    if not polys:
        return True
    linear = [f for f in polys if f.total_degree() == 1]
    rest = [f for f in polys if f.total_degree() > 1]
    if linear:
        eqs = [_linear_parts(f, range(vars.nvars)) for f in linear]
        sol = solve_affine_linear([(a, 0) for a, _ in eqs], vars.nvars)
        x0, basis = sol  # homogeneous system: always consistent
        if not basis:
            return False  # only the trivial zero of the cone
        zvars = _fresh_table("z", len(basis))
        polys = [f for f in substitute_projective(rest, basis, zvars)
                 if not f.is_zero()]
        if any(f.is_constant() for f in polys):
            return False
        if not polys:
            return True
        vars = zvars
    k = vars.nvars  # n' + 1
    if len(polys) < k:
        return True  # fewer than n'+1 forms always share a projective zero
    if k == 1:
        return False  # nonzero forms in one variable have no zero in P^0
    if len(polys) > k:
        polys = _degree_equalize_list(polys, vars)
        combos = []
        for _ in range(k):
            g = MPoly.zero(vars)
            for f in polys:
                g = g + rng.randint(1, bound) * f
            if g.is_zero():
                return True  # degenerate combination; count as inconclusive
            combos.append(g)
        polys = combos
    sys = MacaulaySystem(polys, vars.names)
    _, val = gcp_resultant(sys, with_valuation=True)
    return val >= 1


def has_projective_zero(V, grid):
    """Monte Carlo, one-sided: False is certain, True is high-probability."""
    for round_no in range(grid.retries):
        rng = grid.rng("hpz", round_no)
        if not _proj_round(list(V.polys), V.vars, rng, grid.bound):
            return False
    return True


def dim_leq(V, r, grid):
    """True iff dim V <= r: V plus r+1 random hyperplanes misses P^n."""
    if not 0 <= r <= V.n:
        raise UsageError("need 0 <= r <= n")
    for round_no in range(grid.retries):
        rng = grid.rng("dimleq", r, round_no)
        forms = []
        for _ in range(r + 1):
            forms.append(MPoly(V.vars, {
                tuple(int(j == i) for j in range(V.vars.nvars)):
                    rng.randint(1, grid.bound)
                for i in range(V.vars.nvars)}))
        if not _proj_round(list(V.polys) + forms, V.vars, rng, grid.bound):
            return True
    return False


def find_dimension(V, grid):
    """Smallest r with dim_leq(V, r); -1 when V is projectively empty."""
    if not has_projective_zero(V, grid):
        return -1
    for r in range(V.n + 1):
        if dim_leq(V, r, grid):
            return r
    return V.n


# -- affine solvability and projection dimension -----------------------

def _affine_round(polys, vars, rng, bound):
    """One randomized affine-solvability verdict over the complex numbers."""
    polys = [f for f in polys if not f.is_zero()]
    while True:
        if any(f.is_constant() for f in polys):
            return False
        linear = [f for f in polys if _is_affine_linear(f)]
        rest = [f for f in polys if not _is_affine_linear(f)]
        if linear:
            eqs = [_linear_parts(f, range(vars.nvars)) for f in linear]
            sol = solve_affine_linear(eqs, vars.nvars)
            if sol is None:
                return False
            x0, basis = sol
            tvars = _fresh_table("t", max(len(basis), 1))
            polys = [f for f in substitute_affine(rest, x0, basis, tvars)
                     if not f.is_zero()]
            if not basis:
                # Unique solution of the linear part; the rest reduced to
                # constants, so a zero exists iff they all vanished.
                return not polys
            vars = tvars
            if any(f.is_constant() for f in polys):
                return False
        if not polys:
            return True
        k = vars.nvars
        if len(polys) < k:
            # Slice with generic affine hyperplanes (Krull: every component
            # has dimension >= k - #eqs, so nonemptiness is preserved).
            pads = []
            for _ in range(k - len(polys)):
                terms = {(0,) * k: rng.randint(1, bound)}
                for i in range(k):
                    e = [0] * k
                    e[i] = 1
                    terms[tuple(e)] = rng.randint(1, bound)
                pads.append(MPoly(vars, terms))
            polys = polys + pads
            continue  # substitute the new linear forms away
        if len(polys) > k:
            # Combine to k+1 generic combinations (junk components then have
            # negative dimension) and add a slack variable to stay square.
            slack = vars.extend((_fresh("slack", vars),))
            polys = [f.rename_into(slack) for f in polys]
            combos = []
            for _ in range(k + 1):
                g = MPoly.zero(slack)
                for f in polys:
                    g = g + rng.randint(1, bound) * f
                combos.append(g)
            polys = [g for g in combos if not g.is_zero()]
            vars = slack
            k = vars.nvars
            if len(polys) < k:
                continue
        break
    # Square affine system: homogenize, append the affine u-form
    # m0*w + sum c_i t_i, and ask whether the trailing coefficient of the
    # generalized characteristic polynomial depends on m0.
    k = vars.nvars
    wide = VarTable(("w",) + vars.names, ((tuple(range(k + 1)),))).extend(("m0",))
    homog = []
    for f in polys:
        d = f.total_degree()
        terms = {}
        for exp, c in f.terms.items():
            terms[(d - sum(exp),) + exp + (0,)] = c
        homog.append(MPoly(wide, terms))
    m_form = MPoly.var(wide, "m0") * MPoly.var(wide, "w")
    for name in vars.names:
        m_form = m_form + rng.randint(1, bound) * MPoly.var(wide, name)
    sys = MacaulaySystem(homog + [m_form], ("w",) + vars.names)
    trailing = gcp_resultant(sys, range(len(homog)))
    return trailing.partial_degree(trailing.vars.index("m0")) > 0


def affine_solvable(polys, vars, grid, tag="aff"):
    """Monte Carlo: do the polynomials share a zero over complex affine
    space?  Disagreeing rounds are resolved by majority."""
    votes = []
    for round_no in range(grid.retries):
        rng = grid.rng(tag, round_no)
        votes.append(_affine_round(list(polys), vars, rng, grid.bound))
        if len(votes) >= 2 and len(set(votes)) == 1:
            break
    return sum(votes) * 2 > len(votes)


def dim_projection(polys, x_blocks, I, grid):
    """Dimension of the projection of V onto the blocks in I.

    ``polys`` are the multihomogeneous defining polynomials, ``x_blocks``
    the per-block homogeneous variable names, and I a nonempty iterable of
    block indices.  Works on the multi-affine cone: proj-dim = cone-dim of
    the projected cone minus |I|.
    """
    I = sorted(set(I))
    if not I:
        raise UsageError("I must be a nonempty set of block indices")
    vars = polys[0].vars if polys else None
    if vars is None:
        raise UsageError("need at least one defining polynomial")
    proj_names = [n for j in I for n in x_blocks[j]]
    ambient = len(proj_names)
    lo, hi = 0, ambient  # affine cone dimension bounds; s=0 always holds
    # Binary search the largest s with V meeting a generic codim-s preimage.
    while lo < hi:
        mid = (lo + hi + 1) // 2
        rng = grid.rng("proj", tuple(I), mid)
        slices = []
        for _ in range(mid):
            terms = {(0,) * vars.nvars: rng.randint(1, grid.bound)}
            for name in proj_names:
                e = [0] * vars.nvars
                e[vars.index(name)] = 1
                terms[tuple(e)] = rng.randint(1, grid.bound)
            slices.append(MPoly(vars, terms))
        if affine_solvable(list(polys) + slices, vars, grid,
                           tag=("proj", tuple(I), mid)):
            lo = mid
        else:
            hi = mid - 1
    return lo - len(I)
