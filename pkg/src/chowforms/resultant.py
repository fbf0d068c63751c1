"""Dense (Macaulay) resultants and the generalized characteristic polynomial.

A :class:`MacaulaySystem` is a square homogeneous elimination instance:
n+1 polynomials, homogeneous in the eliminated block x_0..x_n, whose
coefficients may involve further parameter variables.  The resultant is
the quotient det M / det M_0 of two Macaulay determinants; when det M_0
vanishes identically, :func:`gcp_resultant` perturbs the system with a
fresh variable s and returns the trailing s-coefficient instead.
"""

from __future__ import annotations

from .errors import DegenerateError, InternalError, UsageError
from .mpoly import MPoly, VarTable, divexact
from .polydet import PolyMatrix, det_bareiss


def monomials_of_degree(nvars, total):
    """All exponent tuples with the given sum, in descending lex order."""
    if nvars == 1:
        return [(total,)]
    out = []
    for e in range(total, -1, -1):
        for rest in monomials_of_degree(nvars - 1, total - e):
            out.append((e,) + rest)
    return out


def drop_variables(f, drop_idx, target=None):
    """Project f onto the table without the given variables.

    Every term must have zero exponent on the dropped variables.  Returns
    (g, target_table); pass ``target`` to reuse a table across calls.
    """
    vars = f.vars
    drop = set(drop_idx)
    keep = [i for i in range(vars.nvars) if i not in drop]
    if target is None:
        names = [vars.names[i] for i in keep]
        pos = {old: new for new, old in enumerate(keep)}
        blocks = []
        for b in vars.blocks:
            nb = [pos[i] for i in b if i in pos]
            if nb:
                blocks.append(nb)
        target = VarTable(names, blocks)
    out = {}
    for exp, c in f.terms.items():
        if any(exp[i] for i in drop):
            raise InternalError("projection would lose a variable occurrence")
        out[tuple(exp[i] for i in keep)] = c
    return MPoly(target, out), target


class MacaulaySystem:
    """n+1 polynomials homogeneous in an eliminated block of n+1 variables."""

    def __init__(self, polys, elim_names):
        if not polys:
            raise UsageError("empty system")
        vars = polys[0].vars
        elim_idx = [vars.index(n) for n in elim_names]
        if len(polys) != len(elim_idx):
            raise UsageError(
                f"need exactly {len(elim_idx)} polynomials for {len(elim_idx)} "
                f"eliminated variables, got {len(polys)}")
        degrees = []
        for f in polys:
            if f.vars != vars:
                raise UsageError("system polynomials use different VarTables")
            if f.is_zero() or not f.is_homogeneous_in(elim_idx):
                raise UsageError("system polynomials must be homogeneous in the "
                                 "eliminated variables")
            d = max(sum(exp[i] for i in elim_idx) for exp in f.terms)
            if d < 1:
                raise UsageError("every polynomial must have degree >= 1 in the "
                                 "eliminated variables")
            degrees.append(d)
        self.vars = vars
        self.polys = tuple(polys)
        self.elim_names = tuple(elim_names)
        self.elim_idx = tuple(elim_idx)
        self.degrees = tuple(degrees)
        self.n = len(elim_idx) - 1

    @property
    def critical_degree(self):
        return sum(d - 1 for d in self.degrees) + 1

    def param_project(self, f):
        """Re-express an elimination result over the parameter variables only."""
        g, _ = drop_variables(f, self.elim_idx)
        return g


def _shift_mul(f, elim_idx, shift):
    """f * x^shift where shift lives on the eliminated variables."""
    out = {}
    for exp, c in f.terms.items():
        e = list(exp)
        for i, s in zip(elim_idx, shift):
            e[i] += s
        out[tuple(e)] = c
    return MPoly(f.vars, out)


def macaulay_matrix(sys):
    """Classical Macaulay pair (M, M0) at the critical degree.

    Columns are the degree-t monomials in the eliminated variables; the row
    for monomial x^a is (x^a / x_i^{d_i}) * f_i with i the least index whose
    power divides x^a.  M0 is the principal submatrix on the non-reduced
    monomials (divisible by x_i^{d_i} for more than one i), so that the
    resultant is det M / det M0.
    """
    t = sys.critical_degree
    elim_idx = sys.elim_idx
    k = len(elim_idx)
    cols = monomials_of_degree(k, t)
    col_pos = {a: j for j, a in enumerate(cols)}
    zero = MPoly.zero(sys.vars)
    rows = []
    reduced = []
    for a in cols:
        owners = [i for i in range(k) if a[i] >= sys.degrees[i]]
        if not owners:
            raise InternalError("critical-degree monomial with no owner")
        i = owners[0]
        reduced.append(len(owners) == 1)
        shift = list(a)
        shift[i] -= sys.degrees[i]
        rp = _shift_mul(sys.polys[i], elim_idx, shift)
        # Split the row polynomial by its eliminated-monomial part.
        buckets = {}
        for exp, c in rp.terms.items():
            key = tuple(exp[j] for j in elim_idx)
            e = list(exp)
            for j in elim_idx:
                e[j] = 0
            buckets.setdefault(key, {})[tuple(e)] = c
        row = [zero] * len(cols)
        for key, terms in buckets.items():
            row[col_pos[key]] = MPoly(sys.vars, terms)
        rows.append(row)
    M = PolyMatrix(rows)
    sub = [j for j, r in enumerate(reduced) if not r]
    if sub:
        M0 = PolyMatrix([[rows[i][j] for j in sub] for i in sub])
    else:
        M0 = PolyMatrix([[MPoly.const(sys.vars, 1)]])
    return M, M0


def resultant_dense(sys):
    """Macaulay resultant det M / det M0, over the parameter variables.

    Raises DegenerateError when det M0 vanishes identically; callers should
    fall back to gcp_resultant.
    """
    M, M0 = macaulay_matrix(sys)
    d0 = det_bareiss(M0)
    if d0.is_zero():
        raise DegenerateError("Macaulay minor vanishes identically; "
                              "use gcp_resultant")
    d = det_bareiss(M)
    return sys.param_project(divexact(d, d0))


def _fresh_name(vars, base):
    if base not in vars._index:
        return base
    i = 0
    while f"{base}{i}" in vars._index:
        i += 1
    return f"{base}{i}"


def perturbed_macaulay(sys, perturb_indices=None, shift=0):
    """Macaulay pair of the s-perturbed system f_i + s * x_{i mod n+1}^{d_i}.

    ``shift`` rotates which variable perturbs which polynomial; different
    shifts give independent perturbations, useful for gcd-folding away
    perturbation-dependent factors.  Returns (M, M0, wide, sname) where
    wide is the table extended by the fresh perturbation variable sname.
    """
    if perturb_indices is None:
        perturb_indices = range(len(sys.polys))
    perturb = set(perturb_indices)
    sname = _fresh_name(sys.vars, "s")
    wide = sys.vars.extend((sname,))
    s = MPoly.var(wide, sname)
    k = len(sys.elim_idx)
    polys = []
    for i, f in enumerate(sys.polys):
        g = f.rename_into(wide)
        if i in perturb:
            xi = sys.elim_names[(i + shift) % k]
            g = g + s * MPoly.var(wide, xi, sys.degrees[i])
        polys.append(g)
    psys = MacaulaySystem(polys, sys.elim_names)
    M, M0 = macaulay_matrix(psys)
    return M, M0, wide, sname


def gcp_resultant(sys, perturb_indices=None, with_valuation=False):
    """Generalized characteristic polynomial rescue.

    Perturbs the selected polynomials to f_i + s * x_i^{d_i} (index taken
    modulo n+1), computes the resultant exactly in ZZ[params][s], and
    returns the lowest-s-degree nonzero coefficient.  With
    ``with_valuation`` returns (coefficient, s-valuation); a positive
    valuation means the unperturbed resultant vanishes identically.
    """
    M, M0, wide, sname = perturbed_macaulay(sys, perturb_indices)
    d0 = det_bareiss(M0)
    if d0.is_zero():
        raise InternalError("perturbed Macaulay minor vanished; "
                            "ill-posed perturbation")
    d = det_bareiss(M)
    if d.is_zero():
        raise InternalError("perturbed resultant is identically zero")
    rhat = divexact(d, d0)
    s_idx = wide.index(sname)
    low = min(exp[s_idx] for exp in rhat.terms)
    trailing = {exp[:s_idx] + (0,) + exp[s_idx + 1:]: c
                for exp, c in rhat.terms.items() if exp[s_idx] == low}
    result, _ = drop_variables(MPoly(wide, trailing), list(sys.elim_idx) + [s_idx])
    if with_valuation:
        return result, low
    return result


class _BadGrid(Exception):
    """Internal: an evaluation grid hit a degenerate locus; reshift and retry."""


def _simplex_points(nvars, total):
    """Exponent tuples with sum <= total, any order."""
    out = []
    for t in range(total + 1):
        out.extend(monomials_of_degree(nvars, t))
    return out


def _split_by_s(f, s_idx):
    """List of s-coefficients of f (index = s-exponent), s removed."""
    top = f.partial_degree(s_idx)
    buckets = [dict() for _ in range(top + 1)]
    for exp, c in f.terms.items():
        e = exp[:s_idx] + (0,) + exp[s_idx + 1:]
        buckets[exp[s_idx]][e] = c
    return [MPoly(f.vars, b) for b in buckets]


def _udiv_exact(num, den):
    """Exact division of integer coefficient lists (ascending); _BadGrid if
    the division leaves a remainder."""
    from fractions import Fraction
    while num and num[-1] == 0:
        num = num[:-1]
    while den and den[-1] == 0:
        den = den[:-1]
    if not den:
        raise _BadGrid
    if not num:
        return []
    if len(num) < len(den):
        raise _BadGrid
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = [Fraction(c) for c in num]
    for i in range(len(q) - 1, -1, -1):
        q[i] = rem[i + len(den) - 1] / den[-1]
        if q[i]:
            for j, dc in enumerate(den):
                rem[i + j] -= q[i] * dc
    if any(rem) or any(c.denominator != 1 for c in q):
        raise _BadGrid
    return [int(c) for c in q]


def _matrix_evaluator(M, wide, sname):
    """Precompute the s-coefficient split of every entry; returns
    (eval_fn, s_degree_cap) where eval_fn(point) -> list of coefficient
    lists of det(M) in s is deferred to the caller (it returns the integer
    matrix as a function of the s-node)."""
    s_idx = wide.index(sname)
    split = [[_split_by_s(e, s_idx) for e in row] for row in M.entries]
    cap = sum(max(len(parts) - 1 for parts in row) for row in split)
    def at_point(point):
        numeric = [[[p.evaluate(point) for p in parts] for parts in row]
                   for row in split]
        def at_node(a):
            return [[sum(c * a ** k for k, c in enumerate(parts))
                     for parts in row] for row in numeric]
        return at_node
    return at_point, cap


def _det_poly_in_s(at_node, cap):
    """Coefficient list (ascending in s) of det of an integer matrix family."""
    from .polydet import _eval_nodes, _interpolate_exact, det_integer
    nodes = _eval_nodes(cap + 1)
    values = [det_integer(at_node(a)) for a in nodes]
    coeffs = _interpolate_exact(nodes, values)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def gcp_block_interpolation(sys, perturb_indices, blocks, degrees, grid,
                            tag="gcp-interp", s_profile=None, shift=0):
    """GCP trailing coefficient by evaluation and interpolation.

    Requires the parameters of ``sys`` to be exactly the names in
    ``blocks`` (a list of name tuples) and the trailing coefficient to be
    homogeneous of degree ``degrees[b]`` in each block — true when each
    block is the coefficient vector of one unperturbed polynomial, with
    degree the Bezout product of the other degrees.  Dramatically faster
    than the symbolic route: every sample is an integer determinant
    quotient, and the sample count is the monomial-count bound
    prod_b C(degrees[b] + len(block) - 1, len(block) - 1).

    When the perturbed polynomials themselves carry block-homogeneous
    coefficients, every s-power displaces one coefficient slot, lowering
    the block degrees of the trailing coefficient by ``s_profile`` per
    unit of valuation (all perturbed polynomials must share that profile);
    ``degrees`` then bounds the valuation-0 coefficient.

    Returns (trailing_coefficient, s_valuation) over a parameter table
    whose blocks are exactly ``blocks``.
    """
    import itertools

    M, M0, wide, sname = perturbed_macaulay(sys, perturb_indices, shift)
    evalM, capM = _matrix_evaluator(M, wide, sname)
    evalM0, capM0 = _matrix_evaluator(M0, wide, sname)
    base_point = {n: 0 for n in wide.names}

    out_names = tuple(n for blk in blocks for n in blk)
    out_blocks = []
    pos = 0
    for blk in blocks:
        out_blocks.append(tuple(range(pos, pos + len(blk))))
        pos += len(blk)
    out_vars = VarTable(out_names, out_blocks)

    # Affine coordinates: first variable of each block is the
    # dehomogenizing one, pinned to 1 on the grid.
    affine_names = [n for blk in blocks for n in blk[1:]]
    dehom_names = [blk[0] for blk in blocks]
    block_sizes = [len(blk) - 1 for blk in blocks]
    per_block = [_simplex_points(nb, d) if nb else [()]
                 for nb, d in zip(block_sizes, degrees)]
    alphas = [sum(combo, ()) for combo in itertools.product(*per_block)]

    def point_of(values):
        point = dict(base_point)
        for n in dehom_names:
            point[n] = 1
        for n, v in zip(affine_names, values):
            point[n] = v
        return point

    def sample(point):
        at_node = evalM(point)
        at_node0 = evalM0(point)
        den = _det_poly_in_s(at_node0, capM0)
        if not den:
            raise _BadGrid
        num = _det_poly_in_s(at_node, capM)
        return _udiv_exact(num, den)

    for attempt in range(grid.retries):
        rng = grid.rng(tag, attempt)
        offsets = [rng.randint(0, 64 * (attempt + 1)) for _ in affine_names]
        # Individual grid points may hit the degenerate locus of the minor;
        # mark them and fail only if one lands in the sub-simplex that the
        # interpolation ends up needing.
        table = {}
        val = None
        all_bad = True
        for alpha in alphas:
            try:
                q = sample(point_of([o + a for o, a in zip(offsets, alpha)]))
            except _BadGrid:
                table[alpha] = None
                continue
            all_bad = False
            table[alpha] = q
            v = next((i for i, c in enumerate(q) if c), None)
            if v is not None and (val is None or v < val):
                val = v
        if all_bad:
            continue
        if val is None:
            raise UsageError("resultant vanishes identically on the system")
        if s_profile is None:
            adj_degrees = list(degrees)
            use_alphas = alphas
        else:
            adj_degrees = [d - val * p for d, p in zip(degrees, s_profile)]
            if any(d < 0 for d in adj_degrees):
                raise InternalError("valuation exceeds the degree budget")
            use_alphas = []
            for alpha in alphas:
                pos = 0
                ok = True
                for nb, d in zip(block_sizes, adj_degrees):
                    if sum(alpha[pos:pos + nb]) > d:
                        ok = False
                        break
                    pos += nb
                if ok:
                    use_alphas.append(alpha)
        if any(table[a] is None for a in use_alphas):
            continue
        use_set = set(use_alphas)
        values = {a: (q[val] if val < len(q) else 0)
                  for a, q in table.items() if a in use_set and q is not None}
        poly = _newton_assemble(values, use_alphas, block_sizes, adj_degrees,
                                offsets, out_vars)
        # Verify at a fresh random point: guards the degree bounds.
        for _ in range(4):
            fresh = [rng.randint(100, 10 ** 4) for _ in affine_names]
            try:
                q = sample(point_of(fresh))
                break
            except _BadGrid:
                continue
        else:
            continue
        got = q[val] if val < len(q) else 0
        point = {n: 1 for n in dehom_names}
        point.update(zip(affine_names, fresh))
        if poly.evaluate(point) != got:
            raise InternalError("interpolated resultant failed verification")
        return poly, val
    raise UsageError(f"gcp_block_interpolation found no usable grid in "
                     f"{grid.retries} attempts")


def _newton_assemble(values, alphas, block_sizes, degrees, offsets, out_vars,
                     homogenize=True):
    """Multivariate Newton forward-difference interpolation on a product of
    lattice simplices.

    With ``homogenize`` the first variable of each block is the pinned
    dehomogenizing one and the result is rehomogenized to the exact block
    degrees; without it every block variable is an interpolation axis and
    ``degrees`` are only upper bounds on the per-block total degree.
    """
    from fractions import Fraction
    from math import factorial

    naff = sum(block_sizes)
    diffs = dict(values)
    # Forward differences along each affine axis in turn; the triangular
    # in-place scheme leaves diffs[alpha] = (mixed difference Delta^alpha)(0).
    for axis in range(naff):
        by_axis = sorted(alphas, key=lambda a: -a[axis])
        maxk = by_axis[0][axis] if by_axis else 0
        for j in range(1, maxk + 1):
            for alpha in by_axis:
                if alpha[axis] < j:
                    break
                prev = alpha[:axis] + (alpha[axis] - 1,) + alpha[axis + 1:]
                diffs[alpha] = diffs[alpha] - diffs[prev]
    # Basis polynomial per axis: C(x - offset, k) as Fraction coefficients.
    aff_idx = []
    for blk_idx, nb in enumerate(block_sizes):
        start = out_vars.blocks[blk_idx][0]
        first = start + 1 if homogenize else start
        aff_idx.extend(range(first, first + nb))
    acc = {}
    nout = out_vars.nvars
    for alpha in alphas:
        d = diffs[alpha]
        if d == 0:
            continue
        term = {tuple([0] * nout): Fraction(d)}
        for axis, k in enumerate(alpha):
            if k == 0:
                continue
            # (x - o)(x - o - 1)...(x - o - k + 1) / k! in variable aff_idx[axis]
            coeffs = [Fraction(1)]
            for t in range(k):
                root = offsets[axis] + t
                shifted = [Fraction(0)] + coeffs          # x * p
                scaled = [root * c for c in coeffs] + [Fraction(0)]
                coeffs = [a - b for a, b in zip(shifted, scaled)]
            kfact = factorial(k)
            coeffs = [c / kfact for c in coeffs]
            new_term = {}
            vi = aff_idx[axis]
            for exp, c in term.items():
                for e, bc in enumerate(coeffs):
                    if bc == 0:
                        continue
                    ne = list(exp)
                    ne[vi] += e
                    ne = tuple(ne)
                    new_term[ne] = new_term.get(ne, Fraction(0)) + c * bc
            term = new_term
        for exp, c in term.items():
            acc[exp] = acc.get(exp, Fraction(0)) + c
    out = {}
    for exp, c in acc.items():
        if c == 0:
            continue
        if c.denominator != 1:
            raise InternalError("interpolation produced non-integer coefficients")
        e = list(exp)
        for blk_idx, blk in enumerate(out_vars.blocks):
            s = sum(exp[i] for i in blk)
            if s > degrees[blk_idx]:
                raise InternalError("interpolant exceeds its block degree bound")
            if homogenize:
                e[blk[0]] += degrees[blk_idx] - s
        out[tuple(e)] = int(c)
    return MPoly(out_vars, out)


def bezout_bounds(sys):
    """Per-k products of the degrees of all equations except the k-th.

    For multihomogeneous systems the product is the multihomogeneous Bezout
    count: the coefficient of prod y_j^{n_j} in prod_{i != k} (sum_j d_ij y_j).
    """
    from .mixedres import MultiResSystem  # local import to avoid a cycle
    if isinstance(sys, MultiResSystem):
        return sys.bezout_bounds()
    out = []
    for k in range(len(sys.degrees)):
        p = 1
        for i, d in enumerate(sys.degrees):
            if i != k:
                p *= d
        out.append(p)
    return out


def resultant_multihomogeneous(sys, seed=0, retries=8):
    """Multihomogeneous (toric) resultant; see the mixedres module."""
    from .mixedres import resultant_multihomogeneous as impl
    return impl(sys, seed=seed, retries=retries)
