"""Sparse exact multivariate polynomials, products of linear forms, circuits.

A Polynomial maps exponent tuples to nonzero Fractions.  Canonical term
order is graded lexicographic.  A PiSigmaPoly is a scalar times a multiset
of normalized linear forms (first nonzero coefficient 1); expanding it
reproduces the associated Polynomial exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from sps2 import algebra
from sps2.algebra import Form, normalize, span_dim
from sps2.errors import DimensionMismatch, NonDivisibleError, ZeroFormError


def _grlex_key(expo):
    return (sum(expo), expo)


class Polynomial:
    """Sparse polynomial over Q in n variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        cleaned = {}
        if terms:
            for expo, coeff in terms.items():
                if len(expo) != n:
                    raise DimensionMismatch("exponent length != variable count")
                c = Fraction(coeff)
                if c != 0:
                    cleaned[tuple(expo)] = c
        self.terms = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def from_form(cls, f: Form) -> "Polynomial":
        n = len(f)
        terms = {}
        for i, c in enumerate(f):
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(n, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.n, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self):
        """(exponent, coeff) maximal in graded-lex order."""
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def coefficient(self, expo) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and self.n == other.n and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for expo in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[expo]
            mono = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                            for i, e in enumerate(expo) if e)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise DimensionMismatch("polynomials over different variable counts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.n, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return Polynomial(self.n, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, {e: c * v for e, v in self.terms.items()})

    def power(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def divide_exact(self, q: "Polynomial") -> "Polynomial":
        """Exact division; raises NonDivisibleError when q does not divide."""
        self._check(q)
        if q.is_zero():
            raise NonDivisibleError("division by zero polynomial")
        if self.is_zero():
            return Polynomial.zero(self.n)
        rem = {e: c for e, c in self.terms.items()}
        qe, qc = q.leading_term()
        quot = {}
        while rem:
            re = max(rem, key=_grlex_key)
            rc = rem[re]
            de = tuple(a - b for a, b in zip(re, qe))
            if any(d < 0 for d in de):
                raise NonDivisibleError("not an exact multiple")
            dc = rc / qc
            quot[de] = quot.get(de, Fraction(0)) + dc
            for e2, c2 in q.terms.items():
                e = tuple(a + b for a, b in zip(de, e2))
                nv = rem.get(e, Fraction(0)) - dc * c2
                if nv == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = nv
        return Polynomial(self.n, quot)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.divide_exact(self)
            return True
        except NonDivisibleError:
            return False

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point) -> Fraction:
        if len(point) != self.n:
            raise DimensionMismatch("point length != variable count")
        point = [Fraction(p) for p in point]
        caches = [{0: Fraction(1)} for _ in range(self.n)]

        def pw(i, e):
            cache = caches[i]
            if e not in cache:
                cache[e] = point[i] ** e
            return cache[e]

        total = Fraction(0)
        for expo, c in self.terms.items():
            v = c
            for i, e in enumerate(expo):
                if e:
                    v *= pw(i, e)
            total += v
        return total

    def substitute_linear(self, rows) -> "Polynomial":
        """Replace x_i by the linear form rows[i] (length m each); returns a
        polynomial in m variables.  Ring homomorphism; singular maps allowed."""
        if len(rows) != self.n:
            raise DimensionMismatch("need one output form per variable")
        m = len(rows[0]) if rows else 0
        images = [Polynomial.from_form(tuple(Fraction(c) for c in r)) for r in rows]
        pow_cache = [dict() for _ in range(self.n)]

        def img_pow(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = images[i].power(e)
            return cache[e]

        out = Polynomial.zero(m)
        for expo, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, e in enumerate(expo):
                if e:
                    term = term * img_pow(i, e)
            out = out + term
        return out

    def apply_form_map(self, mat) -> "Polynomial":
        """Apply the linear map `mat` (n x n, acting on coefficient vectors of
        linear forms) to every form in the polynomial: each factor c of a
        product maps to mat @ c.  Implemented as x_i := sum_j mat[j][i] x_j."""
        n = self.n
        rows = [[Fraction(mat[j][i]) for j in range(n)] for i in range(n)]
        return self.substitute_linear(rows)

    def set_variable(self, i: int, value) -> "Polynomial":
        """Substitute x_i := value (a Fraction)."""
        value = Fraction(value)
        out = {}
        for expo, c in self.terms.items():
            e = expo[i]
            nc = c * (value ** e) if e else c
            if nc == 0:
                continue
            ne = expo[:i] + (0,) + expo[i + 1:]
            out[ne] = out.get(ne, Fraction(0)) + nc
        return Polynomial(self.n, out)

    def drop_variable(self, i: int) -> "Polynomial":
        """Remove variable i; requires it to be absent from all terms."""
        out = {}
        for expo, c in self.terms.items():
            if expo[i] != 0:
                raise ValueError("variable still present")
            out[expo[:i] + expo[i + 1:]] = c
        return Polynomial(self.n - 1, out)

    def homogenize(self) -> "Polynomial":
        """Homogenize with a fresh last variable; setting it to 1 recovers
        the input."""
        if self.is_zero():
            raise ValueError("cannot homogenize the zero polynomial")
        d = self.degree()
        out = {}
        for expo, c in self.terms.items():
            out[expo + (d - sum(expo),)] = c
        return Polynomial(self.n + 1, out)

    def dehomogenize(self) -> "Polynomial":
        """Set the last variable to 1 and drop it."""
        out = {}
        for expo, c in self.terms.items():
            e = expo[:-1]
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.n - 1, out)

    def partial(self, i: int) -> "Polynomial":
        out = {}
        for expo, c in self.terms.items():
            e = expo[i]
            if e:
                ne = expo[:i] + (e - 1,) + expo[i + 1:]
                out[ne] = out.get(ne, Fraction(0)) + c * e
        return Polynomial(self.n, out)

    def gradient_at(self, point):
        return tuple(self.partial(i).evaluate(point) for i in range(self.n))

    def essential_rank(self) -> int:
        """Dimension of the span of the first partial derivatives: the number
        of variables after an optimal linear change of coordinates."""
        parts = [self.partial(i) for i in range(self.n)]
        monos = sorted({e for p in parts for e in p.terms})
        idx = {e: j for j, e in enumerate(monos)}
        rows = []
        for p in parts:
            row = [Fraction(0)] * len(monos)
            for e, c in p.terms.items():
                row[idx[e]] = c
            rows.append(tuple(row))
        if not monos:
            return 0
        return span_dim(rows)


def multiplicity(l: Form, p: Polynomial) -> int:
    """Largest t with l^t dividing p, by repeated exact division."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial is undefined")
    if algebra.is_zero_form(l):
        raise ZeroFormError("zero form has no multiplicity")
    lf = Polynomial.from_form(l)
    t = 0
    cur = p
    while True:
        try:
            cur = cur.divide_exact(lf)
        except NonDivisibleError:
            return t
        t += 1


# ---------------------------------------------------------------------------
# Products of linear forms


@dataclass(frozen=True)
class PiSigmaPoly:
    """scale * product of normalized linear forms (with multiplicities)."""

    n: int
    scale: Fraction = Fraction(1)
    factors: tuple = ()          # tuple[(Form, int), ...] canonical order

    @classmethod
    def from_factors(cls, n: int, forms, scale=Fraction(1)) -> "PiSigmaPoly":
        """forms: iterable of Form or (Form, mult); normalizes each factor and
        folds the normalization constants into the scale."""
        scale = Fraction(scale)
        counts = {}
        for item in forms:
            if isinstance(item, tuple) and item and isinstance(item[0], tuple):
                f, m = item
            else:
                f, m = item, 1
            f = tuple(Fraction(c) for c in f)
            lead = next((c for c in f if c != 0), None)
            if lead is None:
                raise ZeroFormError("zero form in product")
            nf = normalize(f)
            scale *= lead ** m
            counts[nf] = counts.get(nf, 0) + m
        facs = tuple(sorted(counts.items()))
        return cls(n=n, scale=scale, factors=facs)

    @classmethod
    def one(cls, n: int, scale=Fraction(1)) -> "PiSigmaPoly":
        return cls(n=n, scale=Fraction(scale), factors=())

    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def is_constant(self) -> bool:
        return not self.factors

    def factor_list(self):
        """Distinct normalized factors, ignoring multiplicity."""
        return [f for f, _ in self.factors]

    def iter_with_multiplicity(self):
        return iter(self.factors)

    def expand(self) -> Polynomial:
        out = Polynomial.constant(self.n, self.scale)
        for f, m in self.factors:
            out = out * Polynomial.from_form(f).power(m)
        return out

    def __mul__(self, other) -> "PiSigmaPoly":
        if isinstance(other, (int, Fraction)):
            return PiSigmaPoly(self.n, self.scale * Fraction(other), self.factors)
        if self.n != other.n:
            raise DimensionMismatch("products over different variable counts")
        counts = dict(self.factors)
        for f, m in other.factors:
            counts[f] = counts.get(f, 0) + m
        return PiSigmaPoly(self.n, self.scale * other.scale,
                           tuple(sorted(counts.items())))

    def multiply_form(self, f: Form, mult: int = 1) -> "PiSigmaPoly":
        return self * PiSigmaPoly.from_factors(self.n, [(tuple(f), mult)])

    def divide_factor(self, f: Form, mult: int = 1) -> "PiSigmaPoly":
        nf = normalize(tuple(Fraction(c) for c in f))
        counts = dict(self.factors)
        if counts.get(nf, 0) < mult:
            raise NonDivisibleError("factor not present with that multiplicity")
        counts[nf] -= mult
        if counts[nf] == 0:
            del counts[nf]
        lead = next(c for c in f if c != 0)
        return PiSigmaPoly(self.n, self.scale / lead ** mult,
                           tuple(sorted(counts.items())))

    def multiplicity_of(self, f: Form) -> int:
        nf = normalize(tuple(Fraction(c) for c in f))
        return dict(self.factors).get(nf, 0)

    def apply_form_map(self, mat) -> "PiSigmaPoly":
        n = self.n
        mapped = []
        for f, m in self.factors:
            img = tuple(sum((Fraction(mat[i][j]) * f[j] for j in range(n)),
                            Fraction(0)) for i in range(n))
            mapped.append((img, m))
        return PiSigmaPoly.from_factors(n, mapped, scale=self.scale)


def gcd_pisigma(p1: PiSigmaPoly, p2: PiSigmaPoly) -> PiSigmaPoly:
    """Multiset intersection of normalized factors, scale 1."""
    c1 = dict(p1.factors)
    out = {}
    for f, m in p2.factors:
        if f in c1:
            out[f] = min(m, c1[f])
    return PiSigmaPoly(p1.n, Fraction(1), tuple(sorted(out.items())))


# ---------------------------------------------------------------------------
# Circuits and decompositions


@dataclass(frozen=True)
class Sps2Circuit:
    """f = G * (alpha0 * T0 + alpha1 * T1) with gcd(T0, T1) = 1."""

    G: PiSigmaPoly
    alpha0: Fraction
    alpha1: Fraction
    T0: PiSigmaPoly
    T1: PiSigmaPoly

    @property
    def n(self) -> int:
        return self.G.n

    @property
    def gate_degree(self) -> int:
        return self.T0.degree()

    @property
    def degree(self) -> int:
        return self.G.degree() + self.T0.degree()

    def expand(self) -> Polynomial:
        s = (self.T0.expand().scale(self.alpha0)
             + self.T1.expand().scale(self.alpha1))
        return self.G.expand() * s

    def gate(self, i: int) -> PiSigmaPoly:
        """The full multiplication gate alpha_i * G * T_i."""
        t = self.T0 if i == 0 else self.T1
        a = self.alpha0 if i == 0 else self.alpha1
        return (self.G * t) * a

    def canonical(self) -> "Sps2Circuit":
        """Push all scales into alpha0/alpha1, order gates deterministically."""
        g = PiSigmaPoly(self.G.n, Fraction(1), self.G.factors)
        a0 = self.alpha0 * self.G.scale * self.T0.scale
        a1 = self.alpha1 * self.G.scale * self.T1.scale
        t0 = PiSigmaPoly(self.T0.n, Fraction(1), self.T0.factors)
        t1 = PiSigmaPoly(self.T1.n, Fraction(1), self.T1.factors)
        if (t1.factors, a1) < (t0.factors, a0):
            t0, t1, a0, a1 = t1, t0, a1, a0
        return Sps2Circuit(G=g, alpha0=a0, alpha1=a1, T0=t0, T1=t1)

    def all_forms(self):
        """Distinct normalized forms appearing anywhere in the circuit."""
        seen = []
        for part in (self.G, self.T0, self.T1):
            for f, _ in part.factors:
                if f not in seen:
                    seen.append(f)
        return seen


def simple_rank(c: Sps2Circuit) -> int:
    """Rank of the simplification: span of the gate factors after removing
    the gcd of T0 and T1."""
    g = gcd_pisigma(c.T0, c.T1)
    t0, t1 = c.T0, c.T1
    for f, m in g.factors:
        t0 = t0.divide_factor(f, m)
        t1 = t1.divide_factor(f, m)
    forms = {f for f, _ in t0.factors} | {f for f, _ in t1.factors}
    if not forms:
        return 0
    return span_dim(sorted(forms))


def verify_equivalence(c1: Sps2Circuit, c2: Sps2Circuit) -> bool:
    """Structural equality up to gate swap and scalar moves.  Raises if the
    circuits do not even compute the same polynomial."""
    if c1.expand() != c2.expand():
        raise ValueError("circuits compute different polynomials")
    a, b = c1.canonical(), c2.canonical()
    if a.G.factors != b.G.factors:
        return False
    pairs_a = {(a.T0.factors, a.alpha0 * a.G.scale), (a.T1.factors, a.alpha1 * a.G.scale)}
    pairs_b = {(b.T0.factors, b.alpha0 * b.G.scale), (b.T1.factors, b.alpha1 * b.G.scale)}
    return pairs_a == pairs_b


@dataclass
class Decomposition:
    """Result record: when iscorrect, f = M0 + M1 exactly."""

    iscorrect: bool
    f: Polynomial | None = None
    M0: PiSigmaPoly | None = None
    M1: PiSigmaPoly | None = None
    path: str = ""
    notes: list = field(default_factory=list)

    @classmethod
    def failure(cls, *notes) -> "Decomposition":
        return cls(iscorrect=False, notes=list(notes))

    def check_identity(self) -> bool:
        if not self.iscorrect:
            return False
        return (self.M0.expand() + self.M1.expand()) == self.f
