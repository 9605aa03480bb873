"""Classical invariant theory of binary quantics.

Annihilator operators, covariant regeneration from seminvariant seeds,
seminvariant kernels and their dimension laws, invariance verification
under linear substitution, Hammond protomorphs, syzygant search, and the
root-identity checks.

Coefficient polynomials live over variables a0..ap (optionally plus x
and y for covariants).  The binomial convention writes the quantic as
sum C(p,k) a_k x^(p-k) y^k; the plain convention drops the binomial
factors.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactcore import MultiPoly, linsolve_rational, nullspace_rational, poly_ring


def avar_names(p: int, with_xy: bool = False) -> Tuple[str, ...]:
    names = tuple(f"a{k}" for k in range(p + 1))
    return names + ("x", "y") if with_xy else names


def coeff_poly(p: int, terms, with_xy: bool = False) -> MultiPoly:
    return MultiPoly(avar_names(p, with_xy), terms)


@dataclass(frozen=True)
class BinaryQuantic:
    """Binary form of order p with symbolic coefficients a0..ap."""

    order: int
    convention: str = "binomial"

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if self.convention not in ("binomial", "plain"):
            raise ValueError("convention must be 'binomial' or 'plain'")

    def polynomial(self) -> MultiPoly:
        """The quantic as a polynomial in a0..ap, x, y."""
        p = self.order
        names = avar_names(p, with_xy=True)
        out = MultiPoly.zero(names)
        for k in range(p + 1):
            weight = math.comb(p, k) if self.convention == "binomial" else 1
            exp = [0] * len(names)
            exp[k] = 1
            exp[-2] = p - k
            exp[-1] = k
            out = out + MultiPoly.monomial(names, tuple(exp), weight)
        return out


def convert_coefficients(
    values: Sequence[Fraction], from_convention: str, to_convention: str
) -> Tuple[Fraction, ...]:
    """Convert concrete coefficient vectors between conventions.

    Plain coefficients c_k relate to binomial ones by c_k = C(p,k) a_k.
    """
    p = len(values) - 1
    if from_convention == to_convention:
        return tuple(Fraction(v) for v in values)
    if (from_convention, to_convention) == ("binomial", "plain"):
        return tuple(Fraction(v) * math.comb(p, k) for k, v in enumerate(values))
    if (from_convention, to_convention) == ("plain", "binomial"):
        return tuple(Fraction(v) / math.comb(p, k) for k, v in enumerate(values))
    raise ValueError("unknown convention")


def _a_index(name: str) -> Optional[int]:
    if name.startswith("a") and name[1:].isdigit():
        return int(name[1:])
    return None


def omega(f: MultiPoly, p: int) -> MultiPoly:
    """The annihilator a0 d/da1 + 2 a1 d/da2 + ... + p a_{p-1} d/da_p."""
    out = MultiPoly.zero(f.names)
    for k in range(1, p + 1):
        src, dst = f"a{k}", f"a{k - 1}"
        if src in f.names:
            out = out + f.diff(src) * MultiPoly.variable(f.names, dst) * k
    return out


def oop(f: MultiPoly, p: int) -> MultiPoly:
    """The companion operator p a1 d/da0 + (p-1) a2 d/da1 + ... + a_p d/da_{p-1}."""
    out = MultiPoly.zero(f.names)
    for k in range(0, p):
        src, dst = f"a{k}", f"a{k + 1}"
        if src in f.names:
            out = out + f.diff(src) * MultiPoly.variable(f.names, dst) * (p - k)
    return out


def degree_and_weight(f: MultiPoly) -> Tuple[int, int]:
    """(degree, weight) of an isobaric homogeneous coefficient polynomial.

    Degree counts a-factors; weight sums their suffixes.  Raises when
    terms disagree.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no degree-weight")
    seen = set()
    for exp in f.terms:
        d = w = 0
        for name, e in zip(f.names, exp):
            idx = _a_index(name)
            if idx is None:
                if e:
                    raise ValueError("degree-weight defined for pure coefficient polys")
                continue
            d += e
            w += idx * e
        seen.add((d, w))
    if len(seen) != 1:
        raise ValueError(f"polynomial is not isobaric: {sorted(seen)}")
    return seen.pop()


def covariant_from_seed(seed: MultiPoly, p: int) -> MultiPoly:
    """Covariant sum_k (O^k seed / k!) x^(order-k) y^k from an Omega-killed seed.

    The order is p*degree - 2*weight; one further O application must
    vanish, which is verified.
    """
    if not omega(seed, p).is_zero():
        raise ValueError("seed is not annihilated by the Omega operator")
    j, w = degree_and_weight(seed)
    order = p * j - 2 * w
    if order < 0:
        raise ValueError("seed weight exceeds p*degree/2; no covariant exists")
    if seed.names != avar_names(p):
        raise ValueError("seed must be a polynomial in a0..ap only")
    names = avar_names(p, with_xy=True)
    lifted = MultiPoly(names, {exp + (0, 0): c for exp, c in seed.terms.items()})
    out = MultiPoly.zero(names)
    current = lifted
    for k in range(order + 1):
        coeff_k = current * Fraction(1, math.factorial(k))
        x_exp = [0] * len(names)
        x_exp[-2] = order - k
        x_exp[-1] = k
        out = out + coeff_k * MultiPoly.monomial(names, tuple(x_exp), 1)
        current = oop(current, p)
    if not current.is_zero():
        raise AssertionError("operator chain failed to terminate at the covariant order")
    return out


# -- seminvariant kernels -------------------------------------------------


def _isobaric_monomials(p: int, j: int, w: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []

    def rec(idx: int, deg_left: int, weight_left: int, acc: List[int]):
        if idx == p + 1:
            if deg_left == 0 and weight_left == 0:
                out.append(tuple(acc))
            return
        for e in range(deg_left + 1):
            if idx * e > weight_left:
                break
            rec(idx + 1, deg_left - e, weight_left - idx * e, acc + [e])

    rec(0, j, w, [])
    return out


def seminvariant_basis(p: int, j: int, w: int) -> List[MultiPoly]:
    """Integer basis of the Omega kernel on degree-j weight-w monomials."""
    if p < 1 or j < 1 or w < 0:
        raise ValueError("need p, j >= 1 and w >= 0")
    names = avar_names(p)
    src = _isobaric_monomials(p, j, w)
    if not src:
        return []
    if w == 0:
        return [MultiPoly.monomial(names, src[0], 1)]
    dst = _isobaric_monomials(p, j, w - 1)
    dst_index = {m: i for i, m in enumerate(dst)}
    rows = [[0] * len(src) for _ in dst]
    for ci, mono in enumerate(src):
        for k in range(1, p + 1):
            e = mono[k]
            if e:
                img = list(mono)
                img[k] -= 1
                img[k - 1] += 1
                rows[dst_index[tuple(img)]][ci] += k * e
    basis = nullspace_rational(rows) if rows else [
        [Fraction(1 if i == t else 0) for i in range(len(src))] for t in range(len(src))
    ]
    out = []
    for vec in basis:
        lcm = 1
        for v in vec:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        ints = [v * lcm for v in vec]
        g = 0
        for v in ints:
            g = math.gcd(g, int(v))
        ints = [int(v) // g for v in ints]
        # sign: make the lexicographically greatest monomial positive
        lead = max((m for m, c in zip(src, ints) if c), default=None)
        if lead is not None and ints[src.index(lead)] < 0:
            ints = [-v for v in ints]
        out.append(MultiPoly(names, dict(zip(src, ints))))
    return out


def seminvariant_dimension(p: int, j: int, w: int) -> int:
    return len(seminvariant_basis(p, j, w))


def new_seminvariant_dimension(p: int, j: int, w: int) -> int:
    """Seminvariants of degree exactly j: kernel dimension minus the
    a0-multiples of the degree j-1 kernel."""
    lower = seminvariant_dimension(p, j - 1, w) if j > 1 else 0
    return seminvariant_dimension(p, j, w) - lower


def non_unitary_contains_count(w: int, j: int) -> int:
    """Partitions of w with no part 1, parts at most j, and j as a part."""
    if w < 0 or j < 1:
        return 0

    def parts(n: int, cap: int):
        if n == 0:
            yield ()
            return
        for v in range(min(cap, n), 1, -1):
            for rest in parts(n - v, v):
                yield (v,) + rest

    return sum(1 for lam in parts(w, j) if j in lam)


def box_partition_difference(p: int, j: int, w: int) -> int:
    """Partitions of w minus partitions of w-1, both into at most j parts
    each at most p, floored at zero: the classical count of the full
    kernel dimension.  (Past the midpoint w > j*p/2 the raw difference
    turns negative while the kernel is empty.)"""

    def count(v: int) -> int:
        if v < 0:
            return 0

        def rec(n: int, cap: int, slots: int) -> int:
            if n == 0:
                return 1
            if slots == 0:
                return 0
            return sum(rec(n - first, first, slots - 1) for first in range(min(cap, n), 0, -1))

        return rec(v, p, j)

    return max(count(w) - count(w - 1), 0)


# -- invariance under linear substitution ---------------------------------


@dataclass(frozen=True)
class LinearTransform2:
    """x = l X + m Y, y = lp X + mp Y with nonzero modulus l*mp - lp*m."""

    l: Fraction
    m: Fraction
    lp: Fraction
    mp: Fraction

    def __post_init__(self):
        for f in ("l", "m", "lp", "mp"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        if self.modulus() == 0:
            raise ValueError("transform must be invertible")

    def modulus(self) -> Fraction:
        return self.l * self.mp - self.lp * self.m


def transformed_coefficients(p: int, t: LinearTransform2) -> List[MultiPoly]:
    """A_k of the substituted quantic, as linear polynomials in a0..ap.

    Binomial convention: both quantics carry C(p,k) weights.
    """
    names = avar_names(p, with_xy=True)
    quantic = BinaryQuantic(p, "binomial").polynomial()
    x = MultiPoly.variable(names, "x")
    y = MultiPoly.variable(names, "y")
    images = {n: MultiPoly.variable(names, n) for n in names}
    images["x"] = x * t.l + y * t.m
    images["y"] = x * t.lp + y * t.mp
    substituted = quantic.substitute(images)
    out = []
    xi, yi = names.index("x"), names.index("y")
    for k in range(p + 1):
        collected: Dict[Tuple[int, ...], Fraction] = {}
        for exp, c in substituted.terms.items():
            if exp[xi] == p - k and exp[yi] == k:
                reduced = exp[:xi] + (0,) + exp[xi + 1 : yi] + (0,)
                collected[reduced] = collected.get(reduced, Fraction(0)) + c
        a_k = MultiPoly(names, collected) * Fraction(1, math.comb(p, k))
        out.append(a_k)
    return out


def invariance_check(
    f: MultiPoly, p: int, t: LinearTransform2, max_exponent: int = 64
) -> Tuple[bool, Optional[int]]:
    """Test f(A) = M^s f(a) (or the covariant version) exactly.

    Returns (True, s) for the smallest working exponent, else (False, None).
    """
    names = avar_names(p, with_xy=True)
    if f.names == avar_names(p):
        lifted = MultiPoly(names, {exp + (0, 0): c for exp, c in f.terms.items()})
    elif f.names == names:
        lifted = f
    else:
        raise ValueError("polynomial must live over a0..ap (optionally with x, y)")
    a_images = {f"a{k}": img for k, img in enumerate(transformed_coefficients(p, t))}
    x = MultiPoly.variable(names, "x")
    y = MultiPoly.variable(names, "y")
    lhs = lifted.substitute({**a_images, "x": x, "y": y})
    rhs_base = lifted.substitute(
        {
            **{n: MultiPoly.variable(names, n) for n in avar_names(p)},
            "x": x * t.l + y * t.m,
            "y": x * t.lp + y * t.mp,
        }
    )
    modulus = t.modulus()
    power = Fraction(1)
    for s in range(max_exponent + 1):
        if lhs == rhs_base * power:
            return True, s
        power *= modulus
    return False, None


def invariant_weight(i: int, p: int) -> Optional[int]:
    """w = i*p/2 for an invariant of degree i of the p-ic; None if i*p is odd."""
    if i < 1 or p < 1:
        raise ValueError("degree and order must be positive")
    return (i * p) // 2 if (i * p) % 2 == 0 else None


# -- protomorphs and syzygants --------------------------------------------


def quadrinvariant(p: int, weight: int) -> MultiPoly:
    """Q_{2m} = (1/2) sum_k (-1)^k C(2m,k) a_k a_{2m-k}; Q_2 is the
    Hessian-leading source a0 a2 - a1^2."""
    if weight % 2 or weight < 2:
        raise ValueError("quadrinvariants have even weight >= 2")
    if weight > p:
        raise ValueError(f"weight {weight} needs order at least {weight}")
    names = avar_names(p)
    out = MultiPoly.zero(names)
    for k in range(weight + 1):
        exp = [0] * (p + 1)
        exp[k] += 1
        exp[weight - k] += 1
        out = out + MultiPoly.monomial(names, tuple(exp), Fraction(math.comb(weight, k), 2) * (-1) ** k)
    return out


def odd_source(p: int, weight: int) -> MultiPoly:
    """The degree-3 source of odd weight (C_3, C_5, ...), from the kernel.

    The new degree-3 seminvariant space at odd weight is one-dimensional,
    so normalization by integer content and sign is canonical.
    """
    if weight % 2 == 0 or weight < 3:
        raise ValueError("odd sources have odd weight >= 3")
    if weight > p:
        raise ValueError(f"weight {weight} needs order at least {weight}")
    basis = seminvariant_basis(p, 3, weight)
    if len(basis) != 1:
        raise AssertionError(f"expected a unique degree-3 source at weight {weight}")
    return basis[0]


def protomorphs(p: int, max_weight: int) -> List[MultiPoly]:
    """Hammond's sources U, H, C3, Q4, ... up to the given weight.

    Every returned polynomial is verified to be annihilated by Omega.
    """
    if p < 2:
        raise ValueError("order must be at least 2")
    names = avar_names(p)
    out = [MultiPoly.variable(names, "a0")]
    for w in range(2, min(max_weight, p) + 1):
        source = quadrinvariant(p, w) if w % 2 == 0 else odd_source(p, w)
        if not omega(source, p).is_zero():
            raise AssertionError(f"source of weight {w} is not Omega-annihilated")
        out.append(source)
    return out


@dataclass(frozen=True)
class SyzygantSolution:
    alphas: Tuple[Fraction, ...]
    quotient: MultiPoly


def syzygant_search(sources: Sequence[MultiPoly], k: int) -> List[SyzygantSolution]:
    """Rational combinations of the sources divisible by a0^k.

    Returns one solution per nullspace basis vector; each quotient is
    verified to be a seminvariant.  Sources must share degree and weight.
    """
    if not sources:
        raise ValueError("need at least one source")
    names = sources[0].names
    dw = {degree_and_weight(s) for s in sources}
    if len(dw) != 1:
        raise ValueError(f"sources mix degree-weights: {sorted(dw)}")
    (j, w) = dw.pop()
    p = len(names) - 1
    a0_idx = names.index("a0")
    constrained = sorted(
        {exp for s in sources for exp in s.terms if exp[a0_idx] < k}
    )
    rows = [[s.terms.get(exp, Fraction(0)) for s in sources] for exp in constrained]
    basis = nullspace_rational(rows) if rows else [
        [Fraction(1 if i == t else 0) for i in range(len(sources))]
        for t in range(len(sources))
    ]
    a0k = MultiPoly.variable(names, "a0") ** k
    out = []
    for vec in basis:
        combo = MultiPoly.zero(names)
        for alpha, s in zip(vec, sources):
            combo = combo + s * alpha
        quotient = combo.exact_div(a0k) if not combo.is_zero() else combo
        if not omega(quotient, p).is_zero():
            raise AssertionError("syzygant quotient is not a seminvariant")
        out.append(SyzygantSolution(tuple(vec), quotient))
    return out


# -- root identities -------------------------------------------------------


def coefficients_from_roots(roots: Sequence[Fraction]) -> List[Fraction]:
    """Plain coefficients of prod (x - r y): a_k = (-1)^k e_k(roots)."""
    roots = [Fraction(r) for r in roots]
    n = len(roots)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = Fraction(1)
    for r in roots:
        for k in range(n, 0, -1):
            coeffs[k] = coeffs[k] - r * coeffs[k - 1]
    return coeffs


def sum_of_squares_identity(roots: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
    """(2 a2 - a1^2, -sum r^2): the two sides of the q2 root identity."""
    coeffs = coefficients_from_roots(roots)
    q2 = 2 * coeffs[2] - coeffs[1] ** 2
    return q2, -sum(Fraction(r) ** 2 for r in roots)


def prior_product(a1: Fraction, a2: Fraction, a3: Fraction) -> Fraction:
    """The two-factor product that equals 9 whenever a1 + a2 + a3 = 0."""
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    if a1 + a2 + a3 != 0:
        raise ValueError("identity requires a1 + a2 + a3 = 0")
    if a1 == 0 or a2 == 0 or a3 == 0 or a1 == a2 or a1 == a3 or a2 == a3:
        raise ValueError("degenerate triple")
    first = a1 / (a2 - a3) - a2 / (a1 - a3) + a3 / (a1 - a2)
    second = (a2 - a3) / a1 - (a1 - a3) / a2 + (a1 - a2) / a3
    return first * second


@dataclass(frozen=True)
class RootsReport:
    trials: int
    q2_identity_ok: bool
    prior_product_ok: bool


def roots_correspondence_check(p: int, trials: int, seed: int = 0) -> RootsReport:
    """Random rational root sets: verify the q2 identity for order p and
    the three-variable product identity (= 9) exactly."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    q2_ok = True
    for _ in range(trials):
        roots = [draw() for _ in range(p)]
        lhs, rhs = sum_of_squares_identity(roots)
        q2_ok = q2_ok and lhs == rhs
    prior_ok = True
    done = 0
    while done < trials:
        a1, a2 = draw(), draw()
        a3 = -a1 - a2
        try:
            value = prior_product(a1, a2, a3)
        except ValueError:
            continue  # degenerate sample; redraw
        prior_ok = prior_ok and value == 9
        done += 1
    return RootsReport(trials, q2_ok, prior_ok)


# -- named quartic objects used throughout ---------------------------------


def hessian_seed(p: int = 4) -> MultiPoly:
    """a0 a2 - a1^2."""
    return quadrinvariant(p, 2)


def quartic_invariant_i() -> MultiPoly:
    """I = a0 a4 - 4 a1 a3 + 3 a2^2."""
    return quadrinvariant(4, 4)


def quartic_invariant_j() -> MultiPoly:
    """J = a0 a2 a4 - a0 a3^2 - a2^3 + 2 a1 a2 a3 - a1^2 a4."""
    names = avar_names(4)
    return MultiPoly(
        names,
        {
            (1, 0, 1, 0, 1): 1,
            (1, 0, 0, 2, 0): -1,
            (0, 0, 3, 0, 0): -1,
            (0, 1, 1, 1, 0): 2,
            (0, 2, 0, 0, 1): -1,
        },
    )


def cubic_discriminant() -> MultiPoly:
    """(a0 a3 - a1 a2)^2 - 4 (a0 a2 - a1^2)(a1 a3 - a2^2), over a0..a3."""
    names = avar_names(3)
    a0, a1, a2, a3 = (MultiPoly.variable(names, n) for n in names)
    return (a0 * a3 - a1 * a2) ** 2 - 4 * (a0 * a2 - a1**2) * (a1 * a3 - a2**2)
