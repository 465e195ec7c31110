"""Irrationality-measure witnesses: ||q*gamma|| >= 1/(c*q^eta) certificates.

A witness is fitted from exact surd comparisons at convergent denominators
(the minima of q -> q^eta * ||q*gamma|| over any range occur there, by the
best-approximation property) plus an exhaustive sweep over small q.  For
quadratic surds an analytic certificate valid for *all* q is derived from
the minimal polynomial and reported alongside.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .cfrac import CFExpansion, cf_expand, cf_to_surd
from .psifunc import ApproxFunction, integer_nth_root, unwrap_power_law
from .surd import QuadraticSurd, dist_to_nearest_int_exact

ETA_MAX_DEFAULT = 10
C_MAX_DEFAULT = 1 << 64
EXHAUSTIVE_Q = 100


@dataclass(frozen=True)
class NonLiouvilleWitness:
    """(eta, c) with ||q*gamma|| >= 1/(c*q^eta) for all 1 <= q <= q_max,
    together with (C, epsilon) bounding psi(q) <= min{C/q^epsilon, 1/2}."""

    eta: int
    c: Fraction
    C: Fraction
    epsilon: Fraction
    q_max: int
    analytic: bool = False  # True: certificate covers all q, not just q <= q_max

    def __post_init__(self) -> None:
        if self.eta < 1 or self.c <= 0 or self.C <= 0 or self.epsilon <= 0:
            raise ValueError("witness parameters must be positive (eta >= 1)")

    @property
    def M(self) -> int:
        """floor((eta + 1) / epsilon)."""
        return int(Fraction(self.eta + 1) / self.epsilon)

    @property
    def K(self) -> Fraction:
        """(2*C*c)**(1/epsilon) + 1, exact when 1/epsilon is an integer;
        otherwise the smallest 96-bit dyadic upper bound (reporting only)."""
        base = 2 * self.C * self.c
        en, ed = self.epsilon.numerator, self.epsilon.denominator
        if en == 1:
            return base ** ed + 1
        powed = base ** ed
        scale = 1 << 96
        root = integer_nth_root(powed.numerator * scale ** en // powed.denominator,
                                en) + 1
        return Fraction(root, scale) + 1


@dataclass(frozen=True)
class WitnessFitFailure:
    """No (eta <= eta_max, c <= c_max) certificate fits the checked range:
    Liouville-like behavior at this range."""

    eta_max: int
    c_max: int
    q_max: int
    worst_q: int  # checked q defeating even (eta_max, c_max)

    def __bool__(self) -> bool:
        return False


def vanish_threshold(w: NonLiouvilleWitness, d: int) -> int:
    """ceil(d**((eta+1)/epsilon) * (2*C*c)**(1/epsilon)): parallel overlaps
    whose smaller norm exceeds this value are provably zero."""
    if d < 1:
        raise ValueError("d must be >= 1")
    en, ed = w.epsilon.numerator, w.epsilon.denominator
    base = 2 * w.C * w.c
    # threshold^en = d^((eta+1)*ed) * base^ed; take the exact integer ceiling
    num = d ** ((w.eta + 1) * ed) * base.numerator ** ed
    den = base.denominator ** ed
    m = integer_nth_root(num // den, en)
    while m ** en * den < num:
        m += 1
    return m


def _read_C_epsilon(psi: ApproxFunction) -> tuple[Fraction, Fraction]:
    core = unwrap_power_law(psi)
    if core is None:
        raise ValueError(
            "witness fitting reads (C, epsilon) off a power-law family psi"
        )
    if core.a <= 0:
        raise ValueError("psi must decay: power-law exponent a > 0 required")
    return core.c0, core.a


def _gamma_to_surd(gamma: QuadraticSurd | CFExpansion) -> QuadraticSurd:
    if isinstance(gamma, CFExpansion):
        return cf_to_surd(gamma)
    return gamma


def _quotient_iter(cf: CFExpansion):
    return itertools.chain(cf.preperiod, itertools.cycle(cf.period))


def check_points(gamma: QuadraticSurd, q_max: int) -> list[int]:
    """Convergent denominators <= q_max plus the exhaustive small-q guard."""
    cf = cf_expand(gamma)
    qs = set(range(1, min(EXHAUSTIVE_Q, q_max) + 1))
    q_prev, q = 0, 1
    for a in _quotient_iter(cf):
        q, q_prev = a * q + q_prev, q
        if q > q_max:
            break
        qs.add(q)
    return sorted(qs)


def analytic_witness_c(gamma: QuadraticSurd) -> Fraction:
    """c with ||q*gamma|| >= 1/(c*q) for all q >= 1, from the minimal
    polynomial A x^2 + B x + C of gamma:

        |A p^2 + B p q + C q^2| >= 1  and factoring over the conjugate root
        give ||q*gamma|| >= 1 / (A q (|gamma - gamma'| + 1/2)).
    """
    if gamma.is_rational:
        raise ValueError("analytic witness requires an irrational surd")
    a, b, r, d = gamma.a, gamma.b, gamma.r, gamma.d
    # minimal polynomial: r^2 x^2 - 2 a r x + (a^2 - d b^2), made primitive
    A, B, C = r * r, -2 * a * r, a * a - d * b * b
    g = gcd(gcd(A, abs(B)), abs(C))
    A //= g
    # ceil(|gamma - gamma'|) = ceil(2|b|sqrt(d)/r); the argument is
    # irrational, so floor + 1 is the exact ceiling
    spread_ceil = isqrt(4 * b * b * d) // r + 1
    return Fraction(A * (spread_ceil + 1))


def _dist_ge(dist, c: Fraction, q: int, eta: int) -> bool:
    """Exact test ||q*gamma|| >= 1/(c*q^eta) given the cached distance."""
    num, den = c.denominator, c.numerator * q ** eta
    if isinstance(dist, Fraction):
        return dist >= Fraction(num, den)
    return dist.cmp_fraction(num, den) >= 0


def fit_witness(gamma: QuadraticSurd | CFExpansion, psi: ApproxFunction,
                q_max: int, eta_max: int = ETA_MAX_DEFAULT,
                c_max: int = C_MAX_DEFAULT,
                ) -> NonLiouvilleWitness | WitnessFitFailure:
    """Smallest eta, then smallest power-of-two c, certifying the range.

    Validity is decided exactly (surd comparisons) at convergent
    denominators <= q_max and exhaustively for q <= 100; an intermediate
    q violating the bound would force a violating convergent, so the
    checked points cover the whole range.
    """
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    surd = _gamma_to_surd(gamma)
    if surd.is_rational:
        raise ValueError("gamma must be irrational")
    Cpsi, eps = _read_C_epsilon(psi)
    dists = [(q, dist_to_nearest_int_exact(surd, q))
             for q in check_points(surd, q_max)]

    for eta in range(1, eta_max + 1):
        c = Fraction(1)
        while c <= c_max:
            if all(_dist_ge(dist, c, q, eta) for q, dist in dists):
                return NonLiouvilleWitness(eta=eta, c=c, C=Cpsi, epsilon=eps,
                                           q_max=q_max)
            c *= 2
    c_top = Fraction(1 << (int(c_max).bit_length() - 1))  # largest tried c
    worst = next(q for q, dist in dists if not _dist_ge(dist, c_top, q, eta_max))
    return WitnessFitFailure(eta_max=eta_max, c_max=c_max, q_max=q_max,
                             worst_q=worst)


def analytic_witness(gamma: QuadraticSurd, psi: ApproxFunction,
                     q_max: int) -> NonLiouvilleWitness:
    """Witness with eta = 1 valid for every q (quadratic surds only)."""
    Cpsi, eps = _read_C_epsilon(psi)
    return NonLiouvilleWitness(eta=1, c=analytic_witness_c(gamma), C=Cpsi,
                               epsilon=eps, q_max=q_max, analytic=True)
