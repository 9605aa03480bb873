"""Exact rational arithmetic: multivariate polynomials, truncated power
series, polynomial determinants and rational linear solving.

Coefficients are `fractions.Fraction` throughout; nothing here rounds.
Values are immutable once built and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

# Exponents are machine-width by design; anything this large is a bug.
MAX_EXPONENT = 2**31


class DimensionError(ValueError):
    """Matrix shape does not admit the requested operation."""


class SingularSeriesError(ZeroDivisionError):
    """Series inversion requires a nonzero constant term."""


class TruncationBoundError(ValueError):
    """Coefficient query lies beyond the series' truncation bound."""


def _frac(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {type(value).__name__}")


class MultiPoly:
    """A multivariate polynomial over a fixed, ordered tuple of names.

    Stored as a map from exponent vectors to nonzero Fraction
    coefficients, so equality is structural.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Exponent, Scalar] = ()):
        names = tuple(names)
        clean: Dict[Exponent, Fraction] = {}
        for exp, coeff in dict(terms).items():
            exp = tuple(exp)
            if len(exp) != len(names):
                raise ValueError(f"exponent {exp} does not match variables {names}")
            for e in exp:
                if not 0 <= e <= MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} out of range")
            c = _frac(coeff)
            if c:
                clean[exp] = c
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, names: Sequence[str]) -> "MultiPoly":
        return cls(names, {})

    @classmethod
    def const(cls, names: Sequence[str], value: Scalar) -> "MultiPoly":
        names = tuple(names)
        return cls(names, {(0,) * len(names): _frac(value)})

    @classmethod
    def variable(cls, names: Sequence[str], name: str) -> "MultiPoly":
        names = tuple(names)
        idx = names.index(name)
        exp = [0] * len(names)
        exp[idx] = 1
        return cls(names, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, names: Sequence[str], exp: Exponent, coeff: Scalar = 1) -> "MultiPoly":
        return cls(names, {tuple(exp): _frac(coeff)})

    # -- ring operations ----------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.names != other.names:
            raise ValueError(f"variable mismatch: {self.names} vs {other.names}")

    def __add__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.names, other)
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return MultiPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.names, other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "MultiPoly":
        return MultiPoly.const(self.names, other) - self

    def __mul__(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _frac(other)
            return MultiPoly(self.names, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return MultiPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.names, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.names == other.names
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.names), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        idx = self.names.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def sorted_terms(self):
        """Terms in a canonical order: total degree, then lexicographic."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    # -- calculus and substitution --------------------------------------

    def diff(self, name: str) -> "MultiPoly":
        idx = self.names.index(name)
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            e = exp[idx]
            if e:
                nexp = exp[:idx] + (e - 1,) + exp[idx + 1 :]
                out[nexp] = out.get(nexp, Fraction(0)) + c * e
        return MultiPoly(self.names, out)

    def substitute(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for variables.

        Every image must live over one common variable tuple; variables
        absent from `mapping` are not allowed.
        """
        images = dict(mapping)
        missing = [n for n in self.names if n not in images]
        if missing:
            raise ValueError(f"no substitution given for {missing}")
        target = next(iter(images.values())).names
        for img in images.values():
            if img.names != target:
                raise ValueError("substitution images use mixed variable tuples")
        result = MultiPoly.zero(target)
        for exp, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for name, e in zip(self.names, exp):
                if e:
                    term = term * images[name] ** e
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        out = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for name, e in zip(self.names, exp):
                if e:
                    term *= _frac(values[name]) ** e
            out += term
        return out

    def truncate(self, bound: int, caps: Optional[Mapping[str, int]] = None) -> "MultiPoly":
        idx_caps = None
        if caps:
            idx_caps = {self.names.index(n): c for n, c in caps.items()}
        keep = {}
        for exp, c in self.terms.items():
            if sum(exp) > bound:
                continue
            if idx_caps and any(exp[i] > cap for i, cap in idx_caps.items()):
                continue
            keep[exp] = c
        return MultiPoly(self.names, keep)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact polynomial division; raises if the division is not exact."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = max(divisor.terms)  # lex order
        lead_c = divisor.terms[lead]
        rem = dict(self.terms)
        out: Dict[Exponent, Fraction] = {}
        while rem:
            exp = max(rem)
            diff = tuple(a - b for a, b in zip(exp, lead))
            if any(d < 0 for d in diff):
                raise ValueError("polynomial division is not exact")
            q = rem[exp] / lead_c
            out[diff] = out.get(diff, Fraction(0)) + q
            for dexp, dc in divisor.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, dexp))
                val = rem.get(tgt, Fraction(0)) - q * dc
                if val:
                    rem[tgt] = val
                else:
                    rem.pop(tgt, None)
        return MultiPoly(self.names, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        joined = " + ".join(parts)
        return joined.replace("+ -", "- ")

    __repr__ = __str__


def poly_ring(*names: str) -> Tuple[MultiPoly, ...]:
    """Generator polynomials for the given variable names."""
    return tuple(MultiPoly.variable(names, n) for n in names)


class TruncSeries:
    """MultiPoly truncated by total degree (optional per-variable caps)."""

    __slots__ = ("poly", "bound", "caps")

    def __init__(self, poly: MultiPoly, bound: int, caps: Optional[Mapping[str, int]] = None):
        if bound < 0:
            raise ValueError("truncation bound must be non-negative")
        caps = dict(caps) if caps else None
        object.__setattr__(self, "poly", poly.truncate(bound, caps))
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "caps", caps)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("TruncSeries is immutable")

    def _join(self, other: "TruncSeries") -> Tuple[int, Optional[Dict[str, int]]]:
        bound = min(self.bound, other.bound)
        caps: Optional[Dict[str, int]] = None
        if self.caps or other.caps:
            caps = {}
            for src in (self.caps or {}), (other.caps or {}):
                for k, v in src.items():
                    caps[k] = min(v, caps.get(k, v))
        return bound, caps

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        bound, caps = self._join(other)
        return TruncSeries(self.poly + other.poly, bound, caps)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        bound, caps = self._join(other)
        return TruncSeries(self.poly - other.poly, bound, caps)

    def __mul__(self, other: Union["TruncSeries", MultiPoly, Scalar]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            bound, caps = self._join(other)
            return TruncSeries(self.poly * other.poly, bound, caps)
        return TruncSeries(self.poly * other, self.bound, self.caps)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.bound == other.bound
            and self.poly == other.poly
        )

    def __hash__(self) -> int:
        return hash((self.poly, self.bound))

    def coeff(self, exp: Exponent) -> Fraction:
        """Exact coefficient; refuses monomials beyond the truncation bound."""
        exp = tuple(exp)
        if sum(exp) > self.bound:
            raise TruncationBoundError(
                f"monomial of total degree {sum(exp)} exceeds bound {self.bound}"
            )
        if self.caps:
            names = self.poly.names
            for name, cap in self.caps.items():
                if exp[names.index(name)] > cap:
                    raise TruncationBoundError(f"monomial exceeds cap on {name}")
        return self.poly.coeff(exp)

    def __str__(self) -> str:
        return f"{self.poly} + O(deg>{self.bound})"

    __repr__ = __str__


def coeff(series: TruncSeries, exp: Exponent) -> Fraction:
    return series.coeff(exp)


def series_inverse(p: MultiPoly, bound: int, caps: Optional[Mapping[str, int]] = None) -> TruncSeries:
    """Multiplicative inverse of `p` as a series up to total degree `bound`."""
    c0 = p.constant_term()
    if c0 == 0:
        raise SingularSeriesError("cannot invert a series with zero constant term")
    # p = c0*(1 - r) with r of positive order, so 1/p = (1/c0) * sum r^k.
    r = (MultiPoly.const(p.names, 1) - p * (1 / c0)).truncate(bound, caps)
    acc = MultiPoly.const(p.names, 1)
    power = MultiPoly.const(p.names, 1)
    for _ in range(bound):
        power = (power * r).truncate(bound, caps)
        if power.is_zero():
            break
        acc = acc + power
    return TruncSeries(acc * (1 / c0), bound, caps)


def geometric_series(factors: Sequence[MultiPoly], bound: int) -> TruncSeries:
    """Product of 1/f for each factor f, truncated by total degree."""
    if not factors:
        raise ValueError("need at least one factor")
    out = series_inverse(factors[0], bound)
    for f in factors[1:]:
        out = out * series_inverse(f, bound)
    return out


# -- determinants ------------------------------------------------------


def _square_check(matrix: Sequence[Sequence[MultiPoly]]) -> int:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DimensionError("determinant needs a square matrix")
    return n


def poly_det(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square MultiPoly matrix by fraction-free elimination.

    Bareiss elimination keeps every intermediate value a polynomial, which
    avoids rational-function blow-up for small dense matrices.
    """
    n = _square_check(matrix)
    names = matrix[0][0].names
    m = [[entry for entry in row] for row in matrix]
    for row in m:
        for entry in row:
            if entry.names != names:
                raise ValueError("matrix entries use mixed variable tuples")
    sign = 1
    prev = MultiPoly.const(names, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(names)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = MultiPoly.zero(names)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_det_cofactor(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Cofactor-expansion determinant; the independent oracle for poly_det."""
    n = _square_check(matrix)
    names = matrix[0][0].names
    if n == 1:
        return matrix[0][0]
    out = MultiPoly.zero(names)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * poly_det_cofactor(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


# -- rational linear algebra -----------------------------------------


class LinearSolution:
    """Result of solving A x = b over the rationals.

    kind is one of 'unique', 'parametric', 'inconsistent'.  For solvable
    systems `particular` is one exact solution and `basis` spans the
    homogeneous solution space (empty when unique).
    """

    __slots__ = ("kind", "particular", "basis")

    def __init__(self, kind: str, particular, basis):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "particular", particular)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("LinearSolution is immutable")

    def __repr__(self) -> str:
        return f"LinearSolution({self.kind}, {self.particular}, {self.basis})"


def linsolve_rational(
    a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]
) -> LinearSolution:
    """Exact Gaussian elimination with full solution-set description."""
    rows = len(a)
    if rows != len(b):
        raise DimensionError("matrix/vector size mismatch")
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise DimensionError("ragged matrix")
    aug = [[_frac(v) for v in row] + [_frac(b[i])] for i, row in enumerate(a)]

    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break

    for i in range(r, rows):
        if aug[i][cols] != 0:
            return LinearSolution("inconsistent", None, None)

    free_cols = [c for c in range(cols) if c not in pivot_cols]
    particular = [Fraction(0)] * cols
    for i, c in enumerate(pivot_cols):
        particular[c] = aug[i][cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivot_cols):
            vec[c] = -aug[i][fc]
        basis.append(vec)
    kind = "unique" if not basis else "parametric"
    return LinearSolution(kind, particular, basis)


def nullspace_rational(a: Sequence[Sequence[Scalar]]) -> list:
    """Basis of the rational nullspace of `a`."""
    rows = len(a)
    sol = linsolve_rational(a, [0] * rows)
    return sol.basis or []
