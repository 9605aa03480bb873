"""The Master Theorem: condensed generating functions for coefficient
extraction, and the derangement family it was built to solve.

For linear forms X_i = sum_j a_ij x_j, the coefficient of
x1^e1 ... xn^en in prod X_i^{e_i} equals the same coefficient in
1/det(I - diag(x) A).  The determinant route turns redundant product
expansions into a single condensed series.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactcore import (
    MultiPoly,
    TruncSeries,
    poly_ring,
    series_inverse,
)

Multidegree = Tuple[int, ...]

DEFAULT_DEGREE_CAP = 30


def _names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def master_denominator(matrix: Sequence[Sequence[int]]) -> MultiPoly:
    """V_n = det(I - diag(x1..xn) * A), exact over the rationals."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("coefficient matrix must be square")
    names = _names(n)
    xs = poly_ring(*names)
    from .exactcore import poly_det

    entries = [
        [
            (MultiPoly.const(names, 1) if i == j else MultiPoly.zero(names))
            - xs[i] * matrix[i][j]
            for j in range(n)
        ]
        for i in range(n)
    ]
    return poly_det(entries)


def master_series(matrix: Sequence[Sequence[int]], bound: int) -> TruncSeries:
    """1/V_n as a truncated series."""
    return series_inverse(master_denominator(matrix), bound)


def master_coefficient(
    matrix: Sequence[Sequence[int]],
    multidegree: Multidegree,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> Fraction:
    """Coefficient of prod x_i^{e_i} in 1/V_n.

    Exact: the coefficient is settled at total degree sum(e); the series
    is expanded two degrees past it.
    """
    multidegree = tuple(multidegree)
    if len(multidegree) != len(matrix):
        raise ValueError("multidegree length must match the matrix size")
    if any(e < 0 for e in multidegree):
        raise ValueError("multidegree entries must be non-negative")
    total = sum(multidegree)
    if total > degree_cap:
        raise ValueError(f"total degree {total} exceeds the cap {degree_cap}")
    return master_series(matrix, total + 2).coeff(multidegree)


def linear_forms(matrix: Sequence[Sequence[int]]) -> List[MultiPoly]:
    """The forms X_i = sum_j a_ij x_j over x1..xn."""
    n = len(matrix)
    names = _names(n)
    xs = poly_ring(*names)
    return [
        sum((xs[j] * matrix[i][j] for j in range(n)), MultiPoly.zero(names))
        for i in range(n)
    ]


def redundant_coefficient(
    matrix: Sequence[Sequence[int]], multidegree: Multidegree
) -> Fraction:
    """Coefficient of x^multidegree in prod X_i^{e_i}.

    This is the redundant-generating-function route; the Master Theorem
    asserts it agrees with `master_coefficient`.
    """
    forms = linear_forms(matrix)
    names = forms[0].names
    product = MultiPoly.const(names, 1)
    for form, e in zip(forms, multidegree):
        product = product * form**e
    return product.coeff(tuple(multidegree))


def derangement_matrix(n: int) -> List[List[int]]:
    """Zeros on the diagonal, ones elsewhere."""
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def derangements(n: int) -> int:
    """P_n by the condensed-series recurrence
    P_n = sum_{j=2..n} (j-1) C(n, j) P_{n-j}, with P_0 = 1, P_1 = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    table = [1, 0]
    for m in range(2, n + 1):
        total = 0
        for j in range(2, m + 1):
            total += (j - 1) * math.comb(m, j) * table[m - j]
        table.append(total)
    return table[n]


def brute_force_derangements(n: int) -> int:
    """Fixed-point-free permutations of n symbols by direct enumeration."""
    return sum(
        1
        for perm in itertools.permutations(range(n))
        if all(perm[i] != i for i in range(n))
    )


def _distinct_words(reference: Tuple[int, ...]):
    seen = set()
    for word in itertools.permutations(reference):
        if word not in seen:
            seen.add(word)
            yield word


def generalized_rencontres(m: int, multidegree: Multidegree) -> int:
    """{m; e1 e2 ... en}: distinct arrangements of the multiset
    1^e1 2^e2 ... n^en leaving exactly m positions unchanged."""
    multidegree = tuple(multidegree)
    if any(e < 0 for e in multidegree) or not any(multidegree):
        raise ValueError("multidegree must be non-negative and nonzero")
    total = sum(multidegree)
    if not 0 <= m <= total:
        raise ValueError("m out of range")
    reference: Tuple[int, ...] = ()
    for symbol, e in enumerate(multidegree, start=1):
        reference += (symbol,) * e
    count = 0
    for word in _distinct_words(reference):
        fixed = sum(1 for a, b in zip(word, reference) if a == b)
        if fixed == m:
            count += 1
    return count


def multiset_derangement_count(multidegree: Multidegree) -> int:
    """{0; e1 ... en}: no position keeps its original symbol."""
    return generalized_rencontres(0, multidegree)
