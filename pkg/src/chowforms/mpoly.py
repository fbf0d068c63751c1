"""Sparse multivariate polynomials over the integers, exact throughout.

Variables live in a :class:`VarTable` and are grouped into ordered blocks
(one block in the plain projective case).  Terms are stored as a dict from
exponent tuples to nonzero integer coefficients; Python integers give
arbitrary precision for free.  The canonical term order is graded
lexicographic by block, then by variable index.
"""

from __future__ import annotations

import math
import re

from .errors import ParseError, UsageError

# Exponents are stored in machine-int range; degrees anywhere near this are
# unreachable at desk scale and almost certainly indicate a bug upstream.
MAX_EXPONENT = 2**31


class VarTable:
    """Ordered variable names partitioned into ordered blocks."""

    __slots__ = ("names", "blocks", "_index", "_block_of")

    def __init__(self, names, blocks=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UsageError("duplicate variable names: %r" % (names,))
        if blocks is None:
            blocks = (tuple(range(len(names))),) if names else ()
        else:
            blocks = tuple(tuple(b) for b in blocks)
            flat = [i for b in blocks for i in b]
            if sorted(flat) != list(range(len(names))):
                raise UsageError("blocks must partition the variable indices")
        self.names = names
        self.blocks = blocks
        self._index = {n: i for i, n in enumerate(names)}
        self._block_of = [0] * len(names)
        for bi, b in enumerate(blocks):
            for i in b:
                self._block_of[i] = bi

    @property
    def nvars(self):
        return len(self.names)

    @property
    def nblocks(self):
        return len(self.blocks)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    def block_of(self, i):
        return self._block_of[i]

    def block_names(self, bi):
        return tuple(self.names[i] for i in self.blocks[bi])

    def extend(self, new_names, new_block=True):
        """Return a table with extra variables appended.

        With ``new_block`` each call appends one fresh block; otherwise the
        new variables join the last block.
        """
        new_names = tuple(new_names)
        names = self.names + new_names
        added = tuple(range(self.nvars, self.nvars + len(new_names)))
        if new_block or not self.blocks:
            blocks = self.blocks + (added,)
        else:
            blocks = self.blocks[:-1] + (self.blocks[-1] + added,)
        return VarTable(names, blocks)

    def __eq__(self, other):
        return (isinstance(other, VarTable)
                and self.names == other.names and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.names, self.blocks))

    def __repr__(self):
        inner = ")(".join(" ".join(self.block_names(b)) for b in range(self.nblocks))
        return f"VarTable(({inner}))"


class DegreeProfile:
    """Per-variable, per-block and total degrees of a polynomial."""

    __slots__ = ("partial", "block", "total")

    def __init__(self, partial, block, total):
        self.partial = tuple(partial)
        self.block = tuple(block)
        self.total = total

    def __repr__(self):
        return f"DegreeProfile(partial={self.partial}, block={self.block}, total={self.total})"

    def __eq__(self, other):
        return (isinstance(other, DegreeProfile)
                and self.partial == other.partial
                and self.block == other.block
                and self.total == other.total)


class MPoly:
    """Immutable sparse polynomial in ``ZZ[vars]``.

    Do not mutate ``terms`` after construction; every operation returns a
    fresh value, so instances can be shared freely across threads.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = vars
        clean = {}
        n = vars.nvars
        for exp, c in terms.items():
            if c == 0:
                continue
            if len(exp) != n:
                raise UsageError("exponent vector length does not match VarTable")
            if any(e < 0 or e >= MAX_EXPONENT for e in exp):
                raise UsageError("exponent out of supported range")
            clean[exp] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c):
        if c == 0:
            return cls(vars, {})
        return cls(vars, {(0,) * vars.nvars: int(c)})

    @classmethod
    def var(cls, vars, name, power=1):
        exp = [0] * vars.nvars
        exp[vars.index(name)] = power
        return cls(vars, {tuple(exp): 1})

    @classmethod
    def from_dict(cls, vars, d):
        """Build from {name: exponent} term dicts: [({'x':2,'y':1}, -3), ...]."""
        terms = {}
        for mono, c in d:
            exp = [0] * vars.nvars
            for name, e in mono.items():
                exp[vars.index(name)] = e
            key = tuple(exp)
            terms[key] = terms.get(key, 0) + c
        return cls(vars, terms)

    # -- predicates and degrees ---------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self):
        z = (0,) * self.vars.nvars
        if self.terms and set(self.terms) != {z}:
            raise UsageError("polynomial is not constant")
        return self.terms.get(z, 0)

    def partial_degree(self, i):
        if not self.terms:
            return 0
        return max(exp[i] for exp in self.terms)

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(exp) for exp in self.terms)

    def block_degree(self, bi):
        idx = self.vars.blocks[bi]
        if not self.terms:
            return 0
        return max(sum(exp[i] for i in idx) for exp in self.terms)

    def block_degrees(self, exp=None):
        if exp is not None:
            return tuple(sum(exp[i] for i in b) for b in self.vars.blocks)
        return tuple(self.block_degree(b) for b in range(self.vars.nblocks))

    def profile(self):
        block = self.block_degrees()
        return DegreeProfile(
            [self.partial_degree(i) for i in range(self.vars.nvars)],
            block, self.total_degree())

    def mdeg(self):
        """Per-block degree vector (the multidegree for multihomogeneous input)."""
        return self.block_degrees()

    def is_multihomogeneous(self):
        if not self.terms:
            return True
        seen = None
        for exp in self.terms:
            bd = self.block_degrees(exp)
            if seen is None:
                seen = bd
            elif bd != seen:
                return False
        return True

    def is_homogeneous_in(self, var_indices):
        """Homogeneous when grading only the given variables."""
        degs = {sum(exp[i] for i in var_indices) for exp in self.terms}
        return len(degs) <= 1

    def bitsize(self):
        if not self.terms:
            return 0
        return max(abs(c).bit_length() for c in self.terms.values())

    # -- term order ----------------------------------------------------

    def _key(self, exp):
        return (self.block_degrees(exp), exp)

    def leading_term(self):
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        exp = max(self.terms, key=self._key)
        return exp, self.terms[exp]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self._key(t[0]), reverse=True)

    # -- ring operations ----------------------------------------------

    def _check_same_table(self, other):
        if self.vars != other.vars:
            raise UsageError("operands use different VarTables")

    def __add__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        self._check_same_table(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            elif exp in terms:
                del terms[exp]
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MPoly.zero(self.vars)
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check_same_table(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(exp, 0) + c1 * c2
                if s:
                    out[exp] = s
                elif exp in out:
                    del out[exp]
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, m):
        if m < 0:
            raise UsageError("negative power")
        result = MPoly.const(self.vars, 1)
        base = self
        while m:
            if m & 1:
                result = result * base
            base_needed = m >> 1
            if base_needed:
                base = base * base
            m = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == MPoly.const(self.vars, other).terms
        return isinstance(other, MPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and substitution ------------------------------------

    def derivative(self, name):
        i = self.vars.index(name)
        out = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e:
                nexp = exp[:i] + (e - 1,) + exp[i + 1:]
                out[nexp] = out.get(nexp, 0) + c * e
        return MPoly(self.vars, out)

    def substitute(self, mapping, target=None):
        """Compose with ``mapping`` from variable name to MPoly or int.

        Unmapped variables must exist in the target table and map to
        themselves.  ``target`` defaults to this polynomial's table.
        """
        if target is None:
            target = self.vars
            for v in mapping.values():
                if isinstance(v, MPoly):
                    target = v.vars
                    break
        images = []
        for name in self.vars.names:
            if name in mapping:
                v = mapping[name]
                if isinstance(v, int):
                    v = MPoly.const(target, v)
                elif v.vars != target:
                    raise UsageError("substitution images use different VarTables")
                images.append(v)
            else:
                images.append(MPoly.var(target, name))
        cache = [dict() for _ in images]
        result = MPoly.zero(target)
        for exp, c in self.terms.items():
            t = MPoly.const(target, c)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                if e not in cache[i]:
                    cache[i][e] = images[i] ** e
                t = t * cache[i][e]
            result = result + t
        return result

    def evaluate(self, point):
        """Evaluate at an integer point given as {name: int}."""
        idx = [point[name] for name in self.vars.names]
        total = 0
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    v *= idx[i] ** e
            total += v
        return total

    def rename_into(self, target, mapping=None):
        """Re-express over a (super)table containing the same variable
        names, optionally translating names through ``mapping`` first."""
        if mapping is None:
            names = self.vars.names
        else:
            names = [mapping.get(n, n) for n in self.vars.names]
        pos = [target.index(n) for n in names]
        out = {}
        for exp, c in self.terms.items():
            nexp = [0] * target.nvars
            for p, e in zip(pos, exp):
                nexp[p] = e
            key = tuple(nexp)
            out[key] = out.get(key, 0) + c
        return MPoly(target, out)

    # -- normalization ------------------------------------------------

    def content(self):
        """Integer content (gcd of coefficients), 0 for the zero polynomial."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def primitive(self):
        g = self.content()
        if g in (0, 1):
            return self
        return MPoly(self.vars, {e: c // g for e, c in self.terms.items()})

    def normalized(self):
        """Primitive part with positive leading coefficient (canonical form)."""
        if not self.terms:
            return self
        p = self.primitive()
        _, lc = p.leading_term()
        if lc < 0:
            p = -p
        return p

    # -- textual form --------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(self.vars.names[i])
                elif e > 1:
                    factors.append(f"{self.vars.names[i]}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"MPoly({self.to_text()})"


# -- parsing ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", column=pos + 1)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, vars):
        self.tokens = tokens
        self.vars = vars
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg):
        kind, val, col = self.peek()
        raise ParseError(msg + (f" (got {val!r})" if kind != "end" else " (at end of input)"),
                         column=col + 1)

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        result = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                result = result * self.factor()
            else:
                return result

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, _ = self.peek()
            if kind != "int":
                self.fail("expected integer exponent after '^'")
            self.next()
            return base ** int(val)
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.next()
            return MPoly.const(self.vars, int(val))
        if kind == "name":
            if val not in self.vars._index:
                self.fail(f"unknown variable {val!r}")
            self.next()
            return MPoly.var(self.vars, val)
        if kind == "op" and val == "(":
            self.next()
            inner = self.expr()
            kind, val, _ = self.peek()
            if not (kind == "op" and val == ")"):
                self.fail("expected ')'")
            self.next()
            return inner
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        self.fail("expected a term")


def parse_poly(text, vars):
    """Parse the canonical polynomial grammar (`+ - * ^`, integers, names)."""
    p = _Parser(_tokenize(text), vars)
    result = p.expr()
    kind, val, col = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", column=col + 1)
    return result


# -- exact division, gcd, square-free part -----------------------------

def divexact(f, g):
    """Exact quotient f/g; raises UsageError if g is zero or does not divide f."""
    if g.is_zero():
        raise UsageError("division by zero polynomial")
    if f.is_zero():
        return f
    f._check_same_table(g)
    gexp, gc = g.leading_term()
    q = {}
    r = dict(f.terms)

    def lead(terms):
        return max(terms, key=f._key)

    while r:
        rexp = lead(r)
        rc = r[rexp]
        exp = tuple(a - b for a, b in zip(rexp, gexp))
        if any(e < 0 for e in exp) or rc % gc != 0:
            raise UsageError("not an exact division")
        c = rc // gc
        q[exp] = c
        for e2, c2 in g.terms.items():
            key = tuple(a + b for a, b in zip(exp, e2))
            s = r.get(key, 0) - c * c2
            if s:
                r[key] = s
            elif key in r:
                del r[key]
    return MPoly(f.vars, q)


def divides(g, f):
    try:
        divexact(f, g)
        return True
    except UsageError:
        return False


def _main_var(f, g):
    """Highest variable index occurring in f or g, or None."""
    for i in reversed(range(f.vars.nvars)):
        if f.partial_degree(i) > 0 or g.partial_degree(i) > 0:
            return i
    return None


def _univ_coeffs(f, v):
    """Split f as a polynomial in variable v: {deg: coefficient MPoly}."""
    out = {}
    for exp, c in f.terms.items():
        e = exp[v]
        nexp = exp[:v] + (0,) + exp[v + 1:]
        d = out.setdefault(e, {})
        d[nexp] = d.get(nexp, 0) + c
    return {e: MPoly(f.vars, d) for e, d in out.items()}


def _from_univ(coeffs, v, vars):
    out = {}
    for e, p in coeffs.items():
        for exp, c in p.terms.items():
            key = exp[:v] + (e,) + exp[v + 1:]
            out[key] = out.get(key, 0) + c
    return MPoly(vars, out)


def _content_wrt(f, v):
    """Gcd of the coefficients of f viewed as univariate in variable v."""
    coeffs = list(_univ_coeffs(f, v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = gcd(g, c)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    return g.normalized()


def _prem(a, b, v):
    """Sparse pseudo-remainder of a by b with respect to variable v."""
    bc = _univ_coeffs(b, v)
    db = max(bc)
    lb = bc[db]
    r = a
    while True:
        rc = _univ_coeffs(r, v)
        dr = max(rc) if rc else 0
        if r.is_zero() or dr < db:
            return r
        lr = rc[dr]
        shift = MPoly.var(r.vars, r.vars.names[v], dr - db) if dr > db \
            else MPoly.const(r.vars, 1)
        r = lb * r - lr * shift * b


def _eval_one_var(f, v, xi):
    """f with variable v set to the integer xi (exponent on v zeroed)."""
    out = {}
    for exp, c in f.terms.items():
        e = exp[:v] + (0,) + exp[v + 1:]
        out[e] = out.get(e, 0) + c * xi ** exp[v]
    return MPoly(f.vars, out)


def _balanced_digit(p, xi):
    """Split p = r + xi * q with the coefficients of r in (-xi/2, xi/2]."""
    rterms, qterms = {}, {}
    for exp, c in p.terms.items():
        r = c % xi
        if r > xi // 2:
            r -= xi
        q = (c - r) // xi
        if r:
            rterms[exp] = r
        if q:
            qterms[exp] = q
    return MPoly(p.vars, rterms), MPoly(p.vars, qterms)


def _heu_gcd_inner(f, g, tries):
    """Heuristic gcd with integer content included (evaluate the main
    variable at a huge integer, recurse, read the candidate back off the
    balanced base-xi digits, verify by exact division).  The integer
    content of the evaluated gcd encodes the factors in the eliminated
    variable, so it must never be stripped mid-recursion.
    """
    v = _main_var(f, g)
    if v is None:
        return MPoly.const(f.vars, math.gcd(f.constant_value(),
                                            g.constant_value()))
    hmax = max(max(abs(c) for c in f.terms.values()),
               max(abs(c) for c in g.terms.values()))
    xi = 2 * hmax + 29
    dv = max(f.partial_degree(v), g.partial_degree(v))
    if xi.bit_length() * (dv + 1) > 3 * 10 ** 6:
        return None
    content = math.gcd(f.content(), g.content())
    for _ in range(tries):
        fv = _eval_one_var(f, v, xi)
        gv = _eval_one_var(g, v, xi)
        if fv.is_zero() or gv.is_zero():
            xi = xi * 23 // 3 + 29
            continue
        h_sub = _heu_gcd_inner(fv, gv, tries=2)
        if h_sub is None:
            return None
        digits = []
        p = h_sub
        while not p.is_zero():
            r, p = _balanced_digit(p, xi)
            digits.append(r)
        terms = {}
        for j, d in enumerate(digits):
            for exp, c in d.terms.items():
                terms[exp[:v] + (j,) + exp[v + 1:]] = c
        h = MPoly(f.vars, terms)
        if not h.is_zero():
            # The digits may carry a spurious integer factor from the
            # evaluated cofactors; rescale to the true integer content.
            h = divexact(h, MPoly.const(h.vars, h.content())) * content
            if divides(h, f) and divides(h, g):
                return h
        xi = xi * 23 // 3 + 29
    return None


def _heu_gcd(f, g):
    """Verified heuristic gcd, primitive with positive leading coefficient;
    None when the heuristic gave up (callers fall back to the PRS)."""
    h = _heu_gcd_inner(f, g, tries=4)
    return None if h is None else h.normalized()


def gcd(f, g):
    """Greatest common divisor, primitive with positive leading coefficient.

    A verified heuristic big-integer path first; recursive primitive-PRS
    (one variable at a time with content/primitive splitting) as fallback.
    """
    if f.is_zero() and g.is_zero():
        raise UsageError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    f._check_same_table(g)
    v = _main_var(f, g)
    if v is None:
        return MPoly.const(f.vars, math.gcd(f.constant_value(), g.constant_value()))
    h = _heu_gcd(f, g)
    if h is not None:
        return h
    cf = _content_wrt(f, v)
    cg = _content_wrt(g, v)
    c = gcd(cf, cg)
    a = divexact(f, cf)
    b = divexact(g, cg)
    if a.partial_degree(v) < b.partial_degree(v):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, v)
        if r.is_zero():
            a = b
            break
        a, b = b, divexact(r, _content_wrt(r, v))
    return (c * a.normalized()).normalized()


def square_free_part(f):
    """Product of the distinct irreducible factors of f, normalized."""
    if f.is_zero():
        raise UsageError("square-free part of zero is undefined")
    g = None
    for i in range(f.vars.nvars):
        if f.partial_degree(i) == 0:
            continue
        d = f.derivative(f.vars.names[i])
        g = d if g is None else gcd(g, d)
        if g.is_constant() and abs(g.constant_value()) == 1:
            return f.normalized()
    if g is None:  # constant polynomial
        return MPoly.const(f.vars, 1)
    h = gcd(f, g)
    return divexact(f.normalized(), h).normalized()


# -- Kronecker substitution -------------------------------------------

def kronecker_pack(f, bounds, zvars=None):
    """Pack f into a univariate polynomial via mixed-radix substitution.

    ``bounds[i]`` caps the partial degree of variable i; the substitution is
    y_1 -> z, y_2 -> z^(D_1+1), ..., with weights multiplying up the caps.
    """
    if len(bounds) != f.vars.nvars:
        raise UsageError("need one degree cap per variable")
    for i, cap in enumerate(bounds):
        if f.partial_degree(i) > cap:
            raise UsageError(
                f"partial degree of {f.vars.names[i]} exceeds its cap {cap}")
    if zvars is None:
        zvars = VarTable(("z",))
    weights = []
    w = 1
    for cap in bounds:
        weights.append(w)
        w *= cap + 1
    out = {}
    for exp, c in f.terms.items():
        packed = sum(e * wt for e, wt in zip(exp, weights))
        out[(packed,)] = out.get((packed,), 0) + c
    return MPoly(zvars, out)


def kronecker_unpack(g, bounds, vars):
    """Inverse of :func:`kronecker_pack` by mixed-radix digit decomposition."""
    if g.vars.nvars != 1:
        raise UsageError("packed polynomial must be univariate")
    radix = 1
    for cap in bounds:
        radix *= cap + 1
    out = {}
    for (packed,), c in g.terms.items():
        if packed >= radix:
            raise UsageError("packed exponent out of radix range; caps too small")
        exp = []
        rest = packed
        for cap in bounds:
            exp.append(rest % (cap + 1))
            rest //= cap + 1
        out[tuple(exp)] = c
    return MPoly(vars, out)
