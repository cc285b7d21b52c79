"""Graded polynomial plumbing over Q(i).

HomogPoly is a sparse homogeneous polynomial keyed by exponent tuples.
Monomial bases are lexicographically descending, so coordinate layouts are
reproducible across runs.  UniPoly is the univariate workhorse for pencil
minor gcds and binary forms.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .linalg import ExactMatrix
from .scalars import GaussianRational

_ZERO = GaussianRational(0)


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, lex descending."""
    if degree < 0:
        return ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for tail in monomial_basis(num_vars - 1, degree - e):
            out.append((e,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(num_vars, degree))}


def monomial_count(num_vars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + num_vars - 1, num_vars - 1)


class HomogPoly:
    """Homogeneous polynomial; empty coefficient dict is the zero form."""

    __slots__ = ("num_vars", "degree", "coeffs")

    def __init__(self, num_vars: int, degree: int, coeffs: dict | None = None):
        clean = {}
        for mono, c in (coeffs or {}).items():
            if not isinstance(c, GaussianRational):
                c = GaussianRational(c)
            if c.is_zero():
                continue
            if len(mono) != num_vars or sum(mono) != degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} not of degree {degree}")
            clean[tuple(mono)] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HomogPoly is immutable")

    @staticmethod
    def variable(num_vars: int, i: int) -> "HomogPoly":
        mono = tuple(1 if j == i else 0 for j in range(num_vars))
        return HomogPoly(num_vars, 1, {mono: GaussianRational(1)})

    @staticmethod
    def linear_form(coeffs) -> "HomogPoly":
        n = len(coeffs)
        d = {}
        for i, c in enumerate(coeffs):
            d[tuple(1 if j == i else 0 for j in range(n))] = c
        return HomogPoly(n, 1, d)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, HomogPoly)
            and self.num_vars == other.num_vars
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.num_vars, self.degree, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if self.num_vars != other.num_vars or self.degree != other.degree:
            raise ValueError("degree mismatch")
        c = dict(self.coeffs)
        for m, v in other.coeffs.items():
            c[m] = c.get(m, _ZERO) + v
        return HomogPoly(self.num_vars, self.degree, c)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomogPoly(
            self.num_vars, self.degree, {m: -v for m, v in self.coeffs.items()}
        )

    def scale(self, c) -> "HomogPoly":
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return HomogPoly(
            self.num_vars, self.degree, {m: v * c for m, v in self.coeffs.items()}
        )

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prev = out.get(m)
                out[m] = c1 * c2 if prev is None else prev + c1 * c2
        return HomogPoly(self.num_vars, self.degree + other.degree, out)

    def mul_monomial(self, mono: tuple, c=None) -> "HomogPoly":
        shift = {
            tuple(a + b for a, b in zip(m, mono)): (v if c is None else v * c)
            for m, v in self.coeffs.items()
        }
        return HomogPoly(self.num_vars, self.degree + sum(mono), shift)

    def evaluate(self, point):
        """Exact evaluation at a tuple of GaussianRational (or int) values."""
        vals = [
            p if isinstance(p, GaussianRational) else GaussianRational(p)
            for p in point
        ]
        total = _ZERO
        for mono, c in self.coeffs.items():
            term = c
            for v, e in zip(vals, mono):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def substitute(self, images: list) -> "HomogPoly":
        """Ring substitution x_i -> images[i] (homogeneous of equal degree)."""
        deg = images[0].degree
        n = images[0].num_vars
        one = HomogPoly(n, 0, {tuple([0] * n): GaussianRational(1)})
        total = HomogPoly(n, self.degree * deg, {})
        for mono, c in self.coeffs.items():
            term = one
            for img, e in zip(images, mono):
                for _ in range(e):
                    term = term * img
            total = total + term.scale(c)
        return total

    def conj_coeffs(self) -> "HomogPoly":
        return HomogPoly(
            self.num_vars, self.degree, {m: v.conj() for m, v in self.coeffs.items()}
        )

    def coefficient_vector(self) -> list:
        basis = monomial_basis(self.num_vars, self.degree)
        return [self.coeffs.get(m, _ZERO) for m in basis]

    def __repr__(self):
        if not self.coeffs:
            return "HomogPoly(0)"
        names = "xyzw" if self.num_vars <= 4 else None
        parts = []
        for m in sorted(self.coeffs, reverse=True):
            c = self.coeffs[m]
            mono = "*".join(
                (names[i] if names else f"x{i}") + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            )
            parts.append(f"({c}){mono or '1'}")
        return " + ".join(parts)


class GradedMap:
    """Linear map between graded pieces of free modules, in monomial bases.

    Coordinates are component-major: index = component * n_monomials + mono.
    """

    __slots__ = ("source_degree", "target_degree", "source_mult", "target_mult",
                 "num_vars", "matrix")

    def __init__(self, source_degree, target_degree, source_mult, target_mult,
                 num_vars, matrix):
        for k, v in (
            ("source_degree", source_degree), ("target_degree", target_degree),
            ("source_mult", source_mult), ("target_mult", target_mult),
            ("num_vars", num_vars), ("matrix", matrix),
        ):
            object.__setattr__(self, k, v)

    def __setattr__(self, name, value):
        raise AttributeError("GradedMap is immutable")

    @property
    def source_dim(self) -> int:
        return self.source_mult * monomial_count(self.num_vars, self.source_degree)

    @property
    def target_dim(self) -> int:
        return self.target_mult * monomial_count(self.num_vars, self.target_degree)


def graded_matrix(phi: list, source_degree: int, num_vars: int) -> GradedMap:
    """Matrix of v -> phi @ v on degree-source_degree polynomial vectors.

    phi is a rectangular list-of-lists of HomogPoly, all of one degree e;
    target degree is source_degree + e.  Inhomogeneous or mixed-degree entries
    are rejected with their position.
    """
    p = len(phi)
    q = len(phi[0]) if p else 0
    e = None
    for i in range(p):
        if len(phi[i]) != q:
            raise ValueError("ragged polynomial matrix")
        for j in range(q):
            entry = phi[i][j]
            if not isinstance(entry, HomogPoly) or entry.num_vars != num_vars:
                raise ValueError(f"entry ({i},{j}) is not a {num_vars}-variable form")
            if e is None:
                e = entry.degree
            elif entry.degree != e:
                raise ValueError(f"entry ({i},{j}) has degree {entry.degree}, expected {e}")
    if e is None:
        raise ValueError("empty polynomial matrix")
    tdeg = source_degree + e
    smonos = monomial_basis(num_vars, source_degree)
    tindex = monomial_index(num_vars, tdeg)
    n_s, n_t = len(smonos), len(tindex)
    mat = [[_ZERO] * (q * n_s) for _ in range(p * n_t)]
    for j in range(q):
        for s_idx, s_mono in enumerate(smonos):
            col = j * n_s + s_idx
            for i in range(p):
                for mono, c in phi[i][j].coeffs.items():
                    t_mono = tuple(a + b for a, b in zip(mono, s_mono))
                    row = i * n_t + tindex[t_mono]
                    mat[row][col] = mat[row][col] + c
    matrix = ExactMatrix(mat, cols=q * n_s) if mat else ExactMatrix([], cols=q * n_s)
    return GradedMap(source_degree, tdeg, q, p, num_vars, matrix)


# ---------------------------------------------------------------------------
# univariate polynomials over Q(i)


class UniPoly:
    """Dense univariate polynomial; coeffs[k] multiplies x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [
            c if isinstance(c, GaussianRational) else GaussianRational(c)
            for c in coeffs
        ]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else _ZERO
            b = other.coeffs[k] if k < len(other.coeffs) else _ZERO
            out.append(a + b)
        return UniPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([]), self
        quot = [_ZERO] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return UniPoly(quot), UniPoly(rem[: len(other.coeffs) - 1])

    def evaluate(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        return "UniPoly(" + ", ".join(str(c) for c in self.coeffs) + ")"


def uni_interpolate(points, values) -> UniPoly:
    """Unique polynomial of degree < len(points) through (point, value) pairs."""
    pts = [p if isinstance(p, GaussianRational) else GaussianRational(p) for p in points]
    vals = [v if isinstance(v, GaussianRational) else GaussianRational(v) for v in values]
    if len(pts) != len(vals) or not pts:
        raise ValueError("need matching nonempty points and values")
    # Newton divided differences
    coef = list(vals)
    n = len(pts)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - j])
    poly = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-pts[i], GaussianRational(1)]) + UniPoly([coef[i]])
    return poly


def uni_gcd(polys) -> UniPoly:
    """Monic gcd of a family of UniPoly via the Euclidean algorithm."""
    g = UniPoly([])
    for p in polys:
        a, b = g, p
        while not b.is_zero():
            _, rem = a.divmod(b)
            a, b = b, rem
        g = a.monic()
        if g.is_constant() and not g.is_zero():
            return g  # already trivial, no need to continue
    return g
