"""Sparse multivariate polynomials over C and the signed-permutation action.

Polynomials are stored as a map from exponent tuples to complex
coefficients, e.g. ``x1*x2 - 1`` in two variables is ``{(1, 1): 1, (0, 0): -1}``.
All values are immutable after construction; arithmetic returns new objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# Coefficients below this magnitude are dropped during normalization to
# keep cancellation noise from blowing up term counts.
COEFF_DROP_TOL = 1e-14


class PolyError(Exception):
    pass


class PolyParseError(PolyError):
    """Syntax error while parsing a polynomial expression."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndeterminateError(Exception):
    """Raised when a numerical verdict cannot honestly be decided."""


class MultiPoly:
    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars, terms=None):
        if num_vars < 1:
            raise PolyError("num_vars must be positive")
        self.num_vars = int(num_vars)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != num_vars:
                    raise PolyError(
                        f"exponent vector {exps} has length {len(exps)}, expected {num_vars}"
                    )
                c = complex(c)
                if abs(c) == 0.0:
                    continue
                clean[tuple(int(e) for e in exps)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars):
        return cls(num_vars, {})

    @classmethod
    def constant(cls, num_vars, c):
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars, index):
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, {tuple(exps): 1.0})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other):
        if self.num_vars != other.num_vars:
            raise PolyError("operands have different numbers of variables")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = MultiPoly.constant(self.num_vars, other)
        self._check_compatible(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return MultiPoly(self.num_vars, _normalized(terms))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = MultiPoly.constant(self.num_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return MultiPoly(
                self.num_vars,
                _normalized({e: c * other for e, c in self.terms.items()}),
            )
        self._check_compatible(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0.0) + c1 * c2
        return MultiPoly(self.num_vars, _normalized(terms))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0 or k != int(k):
            raise PolyError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.num_vars, 1.0)
        base = self
        k = int(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation and calculus ------------------------------------------

    def eval(self, x):
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.num_vars,):
            raise PolyError(
                f"point has shape {x.shape}, expected ({self.num_vars},)"
            )
        total = 0.0 + 0.0j
        for exps, c in self.terms.items():
            v = c
            for xi, e in zip(x, exps):
                if e:
                    v *= xi**e
            total += v
        return total

    def grad(self):
        """Gradient as a list of partial derivatives."""
        out = []
        for i in range(self.num_vars):
            terms = {}
            for exps, c in self.terms.items():
                e = exps[i]
                if e == 0:
                    continue
                new = list(exps)
                new[i] = e - 1
                key = tuple(new)
                terms[key] = terms.get(key, 0.0) + c * e
            out.append(MultiPoly(self.num_vars, _normalized(terms)))
        return out

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return f"MultiPoly({self.num_vars}, {self.pretty()!r})"

    def pretty(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.num_vars)]
        pieces = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[exps]
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = _format_coeff(c, bare=not factors)
            if cs == "-":
                pieces.append("-" + "*".join(factors))
            elif cs:
                pieces.append("*".join([cs] + factors))
            else:
                pieces.append("*".join(factors))
        return " + ".join(pieces).replace("+ -", "- ")


def _normalized(terms):
    return {e: c for e, c in terms.items() if abs(c) > COEFF_DROP_TOL}


def _format_coeff(c, bare):
    if c.imag == 0:
        r = c.real
        if r == 1 and not bare:
            return ""
        if r == -1 and not bare:
            return "-"
        if r == int(r):
            return str(int(r))
        return repr(r)
    if c.real == 0:
        im = c.imag
        if im == int(im):
            return f"{int(im)}*i" if im != 1 else "i"
        return f"{im!r}*i"
    return f"({c.real!r} + {c.imag!r}*i)"


# ---------------------------------------------------------------------------
# Parsing


class _Parser:
    """Recursive-descent parser for `+ - * ^`, parentheses, `i`, decimals."""

    def __init__(self, text, var_index, num_vars):
        self.text = text
        self.pos = 0
        self.var_index = var_index
        self.num_vars = num_vars

    def parse(self):
        p = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise PolyParseError(
                f"unexpected character {self.text[self.pos]!r}", self.pos
            )
        return p

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        sign = 1.0
        while self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return p

    def factor(self):
        p = self.base()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                raise PolyParseError("exponent must be a nonnegative integer", start)
            p = p ** int(self.text[start : self.pos])
        return p

    def base(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                raise PolyParseError("expected ')'", self.pos)
            self.pos += 1
            return p
        if ch == "-":
            self.pos += 1
            return -self.base()
        if ch.isdigit() or ch == ".":
            while self.pos < len(self.text) and (
                self.text[self.pos].isdigit() or self.text[self.pos] == "."
            ):
                self.pos += 1
            lit = self.text[start : self.pos]
            try:
                value = float(lit)
            except ValueError:
                raise PolyParseError(f"bad numeric literal {lit!r}", start) from None
            return MultiPoly.constant(self.num_vars, value)
        if ch.isalpha() or ch == "_":
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            ident = self.text[start : self.pos]
            if ident == "i":
                return MultiPoly.constant(self.num_vars, 1j)
            if ident not in self.var_index:
                raise PolyParseError(f"unknown identifier {ident!r}", start)
            return MultiPoly.variable(self.num_vars, self.var_index[ident])
        raise PolyParseError("expected a number, variable, or '('", self.pos)


def parse_poly(text, variables):
    """Parse an expression string into a MultiPoly over the given variables."""
    var_index = {name: k for k, name in enumerate(variables)}
    if "i" in var_index:
        raise PolyError("'i' is reserved for the imaginary unit")
    return _Parser(text, var_index, len(variables)).parse()


# ---------------------------------------------------------------------------
# Signed permutations


@dataclass(frozen=True)
class SignedPermutation:
    """An element of the group of signed permutations of n coordinates.

    ``perm[i] = j`` means coordinate i maps to coordinate j; signs are +-1.
    Acting on a point: ``(g . x)_i = signs[i] * x[perm[i]]``.
    """

    perm: tuple
    signs: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise PolyError("perm is not a permutation")
        if len(self.signs) != n or any(s not in (-1, 1) for s in self.signs):
            raise PolyError("signs must be a vector of +-1 of matching length")

    @property
    def n(self):
        return len(self.perm)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def transposition(cls, n, i, j):
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return cls(tuple(perm), (1,) * n)

    @classmethod
    def sign_flip(cls, n, i):
        signs = [1] * n
        signs[i] = -1
        return cls(tuple(range(n)), tuple(signs))

    def apply_point(self, x):
        x = np.asarray(x)
        return np.array([self.signs[i] * x[self.perm[i]] for i in range(self.n)])

    def compose(self, other):
        """Composition acting as ``self`` after ``other`` on points."""
        perm = tuple(other.perm[self.perm[i]] for i in range(self.n))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(self.n))
        return SignedPermutation(perm, signs)


def act(g, p):
    """Substitute x_i -> signs[i] * x_{perm[i]} into p, i.e. x -> f(g.x)."""
    if g.n != p.num_vars:
        raise PolyError("group element and polynomial dimensions differ")
    terms = {}
    for exps, c in p.terms.items():
        new = [0] * p.num_vars
        coeff = c
        for i, e in enumerate(exps):
            new[g.perm[i]] += e
            if e % 2 == 1 and g.signs[i] == -1:
                coeff = -coeff
        key = tuple(new)
        terms[key] = terms.get(key, 0.0) + coeff
    return MultiPoly(p.num_vars, _normalized(terms))


def group_generators(n):
    """Adjacent transpositions and single-coordinate sign flips."""
    gens = [SignedPermutation.transposition(n, i, i + 1) for i in range(n - 1)]
    gens += [SignedPermutation.sign_flip(n, i) for i in range(n)]
    return gens


def all_signed_permutations(n):
    """The full group, of order 2^n * n!. Guarded by callers for small n."""
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)


# ---------------------------------------------------------------------------
# Absolute symmetry check


def _span_coeff_matrix(polys):
    exps = sorted({e for p in polys for e in p.terms})
    index = {e: k for k, e in enumerate(exps)}
    mat = np.zeros((len(exps), len(polys)), dtype=complex)
    for j, p in enumerate(polys):
        for e, c in p.terms.items():
            mat[index[e], j] = c
    return mat, index


def _in_span(p, generators):
    mat, index = _span_coeff_matrix(generators)
    vec = np.zeros(mat.shape[0], dtype=complex)
    for e, c in p.terms.items():
        if e not in index:
            return False
        vec[index[e]] = c
    if mat.shape[1] == 0:
        return not p.terms
    sol, *_ = np.linalg.lstsq(mat, vec, rcond=None)
    return np.linalg.norm(mat @ sol - vec) < 1e-9 * max(1.0, np.linalg.norm(vec))


def _sample_zero_set(generators, num_samples, rng, max_iters=100):
    """Gauss-Newton samples of the common zero set from random complex starts."""
    n = generators[0].num_vars
    grads = [p.grad() for p in generators]
    samples = []
    for _ in range(num_samples):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        ok = False
        for _ in range(max_iters):
            f = np.array([p.eval(x) for p in generators])
            if np.max(np.abs(f)) < 1e-11:
                ok = True
                break
            jac = np.array([[g.eval(x) for g in gr] for gr in grads])
            dx, *_ = np.linalg.lstsq(jac, -f, rcond=None)
            if not np.all(np.isfinite(dx)):
                break
            x = x + dx
        if ok:
            samples.append(x)
    return samples


def is_abs_symmetric(generators, rng_seed=0):
    """Whether the common zero set is invariant under all signed permutations.

    Tries span membership of each transformed generator first; falls back to
    sampling the zero set by Newton's method. Raises IndeterminateError when
    too few samples converge to decide honestly.
    """
    generators = list(generators)
    if not generators:
        return True
    n = generators[0].num_vars
    if any(p.num_vars != n for p in generators):
        raise PolyError("generators have different numbers of variables")
    gens = group_generators(n)

    if all(_in_span(act(g, p), generators) for g in gens for p in generators):
        return True

    rng = np.random.default_rng(rng_seed)
    samples = _sample_zero_set(generators, 50, rng)
    if len(samples) < 10:
        raise IndeterminateError(
            f"only {len(samples)}/50 zero-set samples converged; symmetry undecided"
        )
    for g in gens:
        for p in generators:
            q = act(g, p)
            scale = max(1.0, max(abs(c) for c in p.terms.values()))
            for x in samples:
                if abs(q.eval(x)) > 1e-7 * scale * max(1.0, np.linalg.norm(x)) ** max(
                    1, p.degree()
                ):
                    return False
    return True
