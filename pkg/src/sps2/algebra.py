"""Exact linear algebra over Q: forms, bases, projections, incidence utilities.

A linear form a_1*x_1 + ... + a_n*x_n is represented by its coefficient
tuple (a_1, ..., a_n) of Fractions.  Forms double as points of Q^n; the
incidence utilities below (flats, elementary flats, semi-ordinary lines,
the delta-SG_k check) treat them as points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sps2.errors import DimensionMismatch, ZeroFormError, NotStandardizable

Form = tuple  # tuple[Fraction, ...]


def form(*coeffs) -> Form:
    """Build a linear form from ints/Fractions/strings like '2/3'."""
    return tuple(Fraction(c) for c in coeffs)


def zero_form(n: int) -> Form:
    return (Fraction(0),) * n


def unit_form(n: int, i: int) -> Form:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def is_zero_form(f: Form) -> bool:
    return all(c == 0 for c in f)


def add_forms(f: Form, g: Form) -> Form:
    if len(f) != len(g):
        raise DimensionMismatch(f"form lengths {len(f)} vs {len(g)}")
    return tuple(a + b for a, b in zip(f, g))


def sub_forms(f: Form, g: Form) -> Form:
    if len(f) != len(g):
        raise DimensionMismatch(f"form lengths {len(f)} vs {len(g)}")
    return tuple(a - b for a, b in zip(f, g))


def scale_form(c, f: Form) -> Form:
    c = Fraction(c)
    return tuple(c * a for a in f)


def dot(f: Form, point) -> Fraction:
    if len(f) != len(point):
        raise DimensionMismatch(f"form length {len(f)} vs point {len(point)}")
    return sum((a * b for a, b in zip(f, point)), Fraction(0))


def normalize(f: Form) -> Form:
    """Scale so the first nonzero coefficient is 1."""
    for c in f:
        if c != 0:
            inv = Fraction(1) / c
            return tuple(inv * a for a in f)
    raise ZeroFormError("cannot normalize the zero form")


def parallel(f: Form, g: Form) -> bool:
    """True iff the two nonzero forms are scalar multiples of each other."""
    if is_zero_form(f) or is_zero_form(g):
        return False
    return normalize(f) == normalize(g)


# ---------------------------------------------------------------------------
# Exact matrix kernels


def _clear_row(row):
    """Scale a row of Fractions to a primitive integer row."""
    den = 1
    for c in row:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in row]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def span_dim(forms) -> int:
    """Rank of the coefficient matrix, by fraction-free (Bareiss) elimination."""
    forms = list(forms)
    if not forms:
        return 0
    n = len(forms[0])
    for f in forms:
        if len(f) != n:
            raise DimensionMismatch("mixed ambient dimensions")
    rows = [_clear_row(list(f)) for f in forms]
    rows = [r for r in rows if any(r)]
    rank = 0
    prev = 1
    col = 0
    m = len(rows)
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, m):
            ri = rows[i]
            rp = rows[rank]
            c = ri[col]
            for j in range(col, n):
                ri[j] = (p * ri[j] - c * rp[j]) // prev
        prev = p
        rank += 1
        col += 1
    return rank


def solve_linear(rows, rhs):
    """Solve A x = b exactly (A given by rows).  Returns None if inconsistent;
    for underdetermined consistent systems returns one solution with free
    variables set to 0."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


def matrix_inverse(rows):
    """Exact inverse of a square Fraction matrix, or None if singular."""
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = Fraction(1) / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[c])]
    return [row[n:] for row in a]


def determinant(rows) -> Fraction:
    n = len(rows)
    a = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = Fraction(1) / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [v - f * w for v, w in zip(a[i], a[c])]
    return det


# ---------------------------------------------------------------------------
# Bases, blocks and projections


@dataclass(frozen=True)
class BasisDecomposition:
    """An ordered basis of Q^n together with a partition of its indices into
    named blocks.  project() is the coordinate projection induced by the
    basis: the component of v supported on one block's basis vectors."""

    basis: tuple          # tuple[Form, ...], linearly independent
    blocks: dict          # name -> tuple of indices into basis

    def __post_init__(self):
        n = len(self.basis[0])
        if len(self.basis) != n:
            raise DimensionMismatch("basis must have n forms of length n")
        if span_dim(self.basis) != n:
            raise ValueError("basis is linearly dependent")
        seen = sorted(i for idx in self.blocks.values() for i in idx)
        if seen != list(range(n)):
            raise ValueError("blocks must partition the basis indices")
        inv = matrix_inverse([list(b) for b in self.basis])
        object.__setattr__(self, "_inv_cols", inv)

    @property
    def n(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Form):
        """Coefficients c with v = sum c_i * basis_i."""
        # v = c @ B  =>  c = v @ B^{-1}
        inv = self._inv_cols
        n = self.n
        return tuple(sum((v[k] * inv[k][i] for k in range(n)), Fraction(0))
                     for i in range(n))

    def from_coordinates(self, coords) -> Form:
        n = self.n
        out = [Fraction(0)] * n
        for c, b in zip(coords, self.basis):
            if c != 0:
                for j in range(n):
                    out[j] += c * b[j]
        return tuple(out)

    def project(self, v: Form, block: str) -> Form:
        if block not in self.blocks:
            raise KeyError(f"unknown block {block!r}")
        coords = self.coordinates(v)
        keep = set(self.blocks[block])
        kept = [c if i in keep else Fraction(0) for i, c in enumerate(coords)]
        return self.from_coordinates(kept)

    def projection_matrix(self, block: str):
        """Matrix P with P @ v = project(v, block), acting on coefficient
        vectors; suitable for mapping every linear form of a polynomial."""
        n = self.n
        cols = [self.project(unit_form(n, i), block) for i in range(n)]
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def standard_decomposition(n: int, block_indices: dict) -> BasisDecomposition:
    basis = tuple(unit_form(n, i) for i in range(n))
    return BasisDecomposition(basis=basis, blocks=block_indices)


def standardize(l: Form, basis: BasisDecomposition | None = None) -> Form:
    """Scale l so the coefficient of the first basis vector equals 1.

    Without a basis this is the coefficient of x_1.  A zero leading
    coefficient raises NotStandardizable (the caller resamples its random
    transformation).
    """
    if basis is None:
        lead = l[0]
    else:
        lead = basis.coordinates(l)[0]
    if lead == 0:
        raise NotStandardizable("coefficient of the leading basis vector is zero")
    inv = Fraction(1) / lead
    return tuple(inv * c for c in l)


def is_standard(l: Form) -> bool:
    return len(l) > 0 and l[0] == 1


# ---------------------------------------------------------------------------
# Flats and incidence utilities (forms viewed as points)


def _in_affine_hull(l: Form, S) -> bool:
    n = len(l)
    rows = [[S[j][i] for j in range(len(S))] for i in range(n)]
    rows.append([Fraction(1)] * len(S))
    rhs = list(l) + [Fraction(1)]
    return solve_linear(rows, rhs) is not None


def in_flat(l: Form, S) -> bool:
    """True iff l is an affine combination of the independent points S with
    coefficients summing to 1."""
    S = list(S)
    if span_dim(S) != len(S):
        raise ValueError("flat generators must be linearly independent")
    return _in_affine_hull(l, S)


def in_span(l: Form, S) -> bool:
    S = list(S)
    if not S:
        return is_zero_form(l)
    n = len(l)
    rows = [[S[j][i] for j in range(len(S))] for i in range(n)]
    return solve_linear(rows, list(l)) is not None


def is_elementary_flat(S, P) -> bool:
    """True iff the flat spanned by S meets the point set P in exactly S.

    S must be an independent subset of P.
    """
    S = list(S)
    pts = set(P)
    if any(s not in pts for s in S):
        raise ValueError("flat generators must belong to the point set")
    if span_dim(S) != len(S):
        raise ValueError("flat generators must be linearly independent")
    sset = set(S)
    for p in pts:
        if p in sset:
            continue
        if in_flat(p, S):
            return False
    return True


def find_semiordinary_line(X, Y):
    """Scan all lines through one X point and one Y point; return the first
    meeting Y exactly once and X at least once, or None.

    X and Y must be disjoint point sets.
    """
    X = list(dict.fromkeys(X))
    Y = list(dict.fromkeys(Y))
    if set(X) & set(Y):
        raise ValueError("point sets must be disjoint")
    for y in Y:
        for x in X:
            if x == y:
                continue
            line = (x, y)
            y_hits = sum(1 for q in Y if q == y or _on_line(q, line))
            if y_hits != 1:
                continue
            x_hits = sum(1 for q in X if q == x or _on_line(q, line))
            if x_hits >= 1:
                return line
    return None


def _on_line(p: Form, line) -> bool:
    a, b = line
    d = sub_forms(b, a)
    v = sub_forms(p, a)
    # p on the affine line a + t*(b - a)
    t = None
    for dv, vv in zip(d, v):
        if dv != 0:
            t = vv / dv
            break
        if vv != 0:
            return False
    if t is None:
        return all(c == 0 for c in v)
    return all(vv == t * dv for dv, vv in zip(d, v))


def is_delta_sg_k(S, delta, k: int) -> bool:
    """Brute-force check of the delta-SG_k property.

    For every independent k-subset (s_1..s_k) of S there must be at least
    delta*|S| points t in S with t in fl(s_1..s_k), or with the flat
    fl(s_1..s_k, t) containing some further point of S.  Exponential in |S|;
    intended for |S| <= ~12.
    """
    S = list(dict.fromkeys(S))
    npts = len(S)
    if npts < k:
        raise ValueError("need |S| >= k")
    threshold = Fraction(delta) * npts
    for sub in itertools.combinations(range(npts), k):
        gens = [S[i] for i in sub]
        if span_dim(gens) != k:
            continue
        count = 0
        subset = set(sub)
        for ti, t in enumerate(S):
            if _in_affine_hull(t, gens):
                count += 1
                continue
            ext = gens + [t]
            hit = False
            for ui, u in enumerate(S):
                if ui == ti or ui in subset:
                    continue
                if _in_affine_hull(u, ext):
                    hit = True
                    break
            if hit:
                count += 1
        if count < threshold:
            return False
    return True
