"""Exact measures and pairwise overlaps of the sets

    A(d, t) = {alpha in T   : ||d*alpha - sigma|| <= t}        (1-D)
    A_q     = {alpha in T^2 : ||q.alpha  - gamma|| <= psi(|q|)} (2-D)

A(d, t) is a union of d arcs of radius t/d centered at (sigma + a)/d; with
t <= 1/2 the arcs are disjoint (up to touching endpoints), so the overlap
of two such unions is an exact finite sum of pairwise arc overlaps.  The
pair gaps fall into lcm(d, e) residue classes, each hit gcd(d, e) times,
which is the residue-class identity driving ``overlap_exact_1d``; the
independent check ``overlap_sweep_oracle`` computes the same measure by an
endpoint sweep instead.

Irrational shifts enter through their fixed-point representatives, so all
arithmetic below is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .fixedpoint import DEFAULT_SCALE_BITS, FixedPoint
from .lattice import LatticeVector
from .psifunc import ApproxFunction, eval_psi
from .surd import QuadraticSurd
from .witness import NonLiouvilleWitness, vanish_threshold

HALF = Fraction(1, 2)


def as_shift(x, scale_bits: int = DEFAULT_SCALE_BITS) -> Fraction:
    """Exact rational shift value; surds are rounded down at scale_bits."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, FixedPoint):
        return x.to_fraction()
    if isinstance(x, QuadraticSurd):
        return x.to_fraction_floor(scale_bits)
    raise TypeError(f"cannot interpret {type(x).__name__} as a torus shift")


def _as_vec(v) -> LatticeVector:
    return v if isinstance(v, LatticeVector) else LatticeVector(*v)


@dataclass(frozen=True)
class TorusSet1D:
    """{alpha in T: ||d*alpha - shift|| <= t}; measure 2t for t <= 1/2."""

    d: int
    shift: Fraction
    t: Fraction

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("frequency d must be >= 1")
        object.__setattr__(self, "shift", as_shift(self.shift))
        object.__setattr__(self, "t", Fraction(self.t))
        if not 0 <= self.t <= HALF:
            raise ValueError("radius t must lie in [0, 1/2]")

    @property
    def measure(self) -> Fraction:
        return 2 * self.t

    def arcs(self) -> list[tuple[Fraction, Fraction]]:
        """The d arcs as (lo, hi) with hi - lo = 2t/d (lo may be negative)."""
        r = self.t / self.d
        return [((self.shift + a) / self.d - r, (self.shift + a) / self.d + r)
                for a in range(self.d)]

    def contains(self, alpha: Fraction) -> bool:
        v = (self.d * alpha - self.shift) % 1
        return min(v, 1 - v) <= self.t


@dataclass(frozen=True)
class TorusSet2D:
    """{alpha in T^2: ||q.alpha - shift|| <= radius}; measure 2*radius."""

    q_vec: LatticeVector
    shift: Fraction
    radius: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "q_vec", _as_vec(self.q_vec))
        object.__setattr__(self, "shift", as_shift(self.shift))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if not 0 <= self.radius <= HALF:
            raise ValueError("radius must lie in [0, 1/2]")

    @property
    def measure(self) -> Fraction:
        return 2 * self.radius


@dataclass(frozen=True)
class OverlapGeometry:
    """Derived quantities of an ordered 1-D pair (A, B)."""

    delta: Fraction
    Delta: Fraction
    g: int
    L: int
    shift_offset: Fraction  # (e*sigma_A - d*sigma_B) / g

    @classmethod
    def from_pair(cls, A: TorusSet1D, B: TorusSet1D) -> "OverlapGeometry":
        g = gcd(A.d, B.d)
        r1, r2 = A.t / A.d, B.t / B.d
        return cls(delta=min(r1, r2), Delta=max(r1, r2), g=g,
                   L=A.d * B.d // g,
                   shift_offset=(B.d * A.shift - A.d * B.shift) / g)


def weight_w(y, geom: OverlapGeometry) -> Fraction:
    """The even piecewise-linear weight: 2*delta on [0, Delta-delta],
    linear down to 0 at Delta+delta, zero beyond."""
    y = abs(Fraction(y))
    if y <= geom.Delta - geom.delta:
        return 2 * geom.delta
    if y <= geom.Delta + geom.delta:
        return geom.Delta + geom.delta - y
    return Fraction(0)


def weight_integral(geom: OverlapGeometry) -> Fraction:
    """Exact integral of w over the line: 4*delta*Delta."""
    d, D = geom.delta, geom.Delta
    # flat part 2delta * 2(Delta-delta), plus two triangles of area 2delta^2
    return 4 * d * (D - d) + 4 * d * d


def _arc_pair_overlap(u: Fraction, r1: Fraction, r2: Fraction) -> Fraction:
    """Overlap length of circle arcs with center distance u in [0, 1/2]."""
    near = min(r1, u + r2) - max(-r1, u - r2)
    far = min(r1, u - 1 + r2) - max(-r1, u - 1 - r2)
    total = Fraction(0)
    if near > 0:
        total += near
    if far > 0:
        total += far
    return total


def overlap_exact_1d(A: TorusSet1D, B: TorusSet1D) -> Fraction:
    """lambda_1(A intersect B) via the residue-class identity.

    Only the O(1) residues whose gap lands in the support of the arc-pair
    overlap are evaluated.
    """
    return overlap_1d_core(A.d, A.t, A.shift, B.d, B.t, B.shift)


def overlap_1d_core(d: int, t1: Fraction, s1: Fraction,
                    e: int, t2: Fraction, s2: Fraction) -> Fraction:
    """Raw-argument overlap of A(d, t1) shifted by s1 with A(e, t2) shifted
    by s2.  The inner loop runs on plain integers over a common denominator
    (exact; Fraction normalization is too slow for the variance sweeps that
    call this millions of times).
    """
    if t1 == HALF:  # full circle
        return 2 * t2
    if t2 == HALF:
        return 2 * t1
    if t1 == 0 or t2 == 0:
        return Fraction(0)
    g = gcd(d, e)
    L = d * e // g
    an, ad = s1.numerator, s1.denominator
    bn, bd = s2.numerator, s2.denominator
    sd = ad * bd // gcd(ad, bd)
    # shift_offset = (e*s1 - d*s2)/g = E/(g*sd)
    E = e * an * (sd // ad) - d * bn * (sd // bd)
    t1n, t1d = t1.numerator, t1.denominator
    t2n, t2d = t2.numerator, t2.denominator

    # gap numerators N_c = c*g*sd + E over DEN = d*e*sd; radii and the
    # unit circle over CD = DEN * t1d * t2d
    gsd = g * sd
    DEN = d * e * sd
    tdd = t1d * t2d
    CD = DEN * tdd
    R1 = t1n * e * sd * t2d   # (t1/d) * CD
    R2 = t2n * d * sd * t1d   # (t2/e) * CD

    # window of residues c with gap distance <= r1 + r2
    num_j = t1n * t2d * e + t2n * t1d * d
    J = -((-num_j) // (g * t1d * t2d)) + 1
    if 2 * J + 3 >= L:
        cs = range(L)
    else:
        # the far side of the circle needs r1 + r2 >= 1/2, which would
        # force the full-enumeration branch above
        base = ((-E) % (L * gsd)) // gsd
        cs = {(base + j) % L for j in range(-J, J + 1)}

    total = 0
    for c in cs:
        M = (c * gsd + E) % DEN
        U = min(M, DEN - M) * tdd
        near = min(R1, U + R2) - max(-R1, U - R2)
        if near > 0:
            total += near
        far = min(R1, U - CD + R2) - max(-R1, U - CD - R2)
        if far > 0:
            total += far
    return Fraction(g * total, CD)


def overlap_sweep_oracle(A: TorusSet1D, B: TorusSet1D) -> Fraction:
    """Independent overlap computation: materialize all arc endpoints on
    the circle and accumulate the jointly covered length by a sweep.

    Positions are scaled to integers over one common denominator up front,
    so the sweep itself is exact integer arithmetic.
    """
    den = 1
    for s in (A.shift.denominator * A.t.denominator * A.d,
              B.shift.denominator * B.t.denominator * B.d):
        den = den * s // gcd(den, s)

    events: list[tuple[int, int, int]] = []  # (scaled pos, dA, dB)

    def add_arcs(S: TorusSet1D, da: int, db: int) -> None:
        step = den // S.d
        center0 = S.shift.numerator * (den // S.shift.denominator) // S.d
        radius = S.t.numerator * (den // S.t.denominator) // S.d
        for a in range(S.d):
            lo = (center0 + a * step - radius) % den
            span = 2 * radius
            if span >= den:
                events.append((0, da, db))
                events.append((den, -da, -db))
                continue
            hi = lo + span
            if hi <= den:
                events.append((lo, da, db))
                events.append((hi, -da, -db))
            else:
                events.append((lo, da, db))
                events.append((den, -da, -db))
                events.append((0, da, db))
                events.append((hi - den, -da, -db))

    add_arcs(A, 1, 0)
    add_arcs(B, 0, 1)
    events.sort()

    total = 0
    depth_a = depth_b = 0
    prev = None
    i = 0
    while i < len(events):
        pos = events[i][0]
        if prev is not None and depth_a > 0 and depth_b > 0:
            total += pos - prev
        while i < len(events) and events[i][0] == pos:
            depth_a += events[i][1]
            depth_b += events[i][2]
            i += 1
        prev = pos
    return Fraction(total, den)


def measure_2d(q_vec, psi: ApproxFunction) -> Fraction:
    """lambda_2(A_q) = 2*psi(|q|)."""
    v = _as_vec(q_vec)
    return 2 * eval_psi(psi, v.norm)


def reduce_parallel_pair(q_vec, r_vec, psi: ApproxFunction, gamma,
                         scale_bits: int = DEFAULT_SCALE_BITS,
                         ) -> tuple[TorusSet1D, TorusSet1D]:
    """1-D sets whose overlap equals lambda_2(A_q intersect A_r) for
    parallel q = s1*d*P, r = s2*e*P (P primitive): A(d, psi(|q|)) with
    shift s1*gamma and A(e, psi(|r|)) with shift s2*gamma."""
    q, r = _as_vec(q_vec), _as_vec(r_vec)
    _, s1 = q.canonical_direction()
    _, s2 = r.canonical_direction()
    shift = as_shift(gamma, scale_bits)
    A = TorusSet1D(q.g, s1 * shift, eval_psi(psi, q.norm))
    B = TorusSet1D(r.g, s2 * shift, eval_psi(psi, r.norm))
    return A, B


def is_parallel(q_vec, r_vec) -> bool:
    q, r = _as_vec(q_vec), _as_vec(r_vec)
    return q.q1 * r.q2 - q.q2 * r.q1 == 0


def overlap_2d(q_vec, r_vec, psi: ApproxFunction, gamma,
               scale_bits: int = DEFAULT_SCALE_BITS) -> tuple[Fraction, str]:
    """lambda_2(A_q intersect A_r) with a provenance tag.

    Non-parallel pairs factor exactly into the product of measures;
    parallel pairs reduce to the 1-D overlap along the primitive direction
    (both sign combinations handled exactly via two independent shifts).
    """
    q, r = _as_vec(q_vec), _as_vec(r_vec)
    if not is_parallel(q, r):
        return measure_2d(q, psi) * measure_2d(r, psi), "independent"
    A, B = reduce_parallel_pair(q, r, psi, gamma, scale_bits)
    value = overlap_exact_1d(A, B)
    diag = (q.q1, q.q2) in ((r.q1, r.q2), (-r.q1, -r.q2))
    return value, "diagonal" if diag else "parallel-reduced"


# -- grid oracle ---------------------------------------------------------------


def _membership_table(q: LatticeVector, t: Fraction, shift: Fraction,
                      resolution: int) -> np.ndarray:
    """Membership of cell centers, keyed by the residue a of
    q1*(2i+1) + q2*(2j+1) mod 2*resolution, which determines the exact
    value of ||q.center - shift||."""
    two_r = 2 * resolution
    gn, gd = shift.numerator, shift.denominator
    D = two_r * gd
    tn, td = t.numerator, t.denominator
    out = np.zeros(two_r, dtype=bool)
    for a in range(two_r):
        w = (a * gd - two_r * gn) % D
        out[a] = min(w, D - w) * td <= tn * D
    return out


def _cells_cut_bound(q: LatticeVector, resolution: int) -> int:
    """Cells that can straddle the boundary of A_q at this resolution."""
    a1, a2 = abs(q.q1), abs(q.q2)
    n_lines = 2 * (a1 + a2 + 1)
    mx = max(a1, a2)
    per_line = (resolution * (a1 + a2) + mx - 1) // mx + 3
    return n_lines * per_line


def overlap_2d_grid_oracle(q_vec, r_vec, psi: ApproxFunction, gamma,
                           resolution: int,
                           scale_bits: int = DEFAULT_SCALE_BITS,
                           ) -> tuple[Fraction, Fraction]:
    """(estimate, error bound): fraction of cell centers lying in both
    sets, with a rigorous bound counting boundary-straddling cells."""
    if resolution < 100:
        raise ValueError("resolution must be >= 100")
    q, r = _as_vec(q_vec), _as_vec(r_vec)
    shift = as_shift(gamma, scale_bits)
    tq, tr = eval_psi(psi, q.norm), eval_psi(psi, r.norm)
    two_r = 2 * resolution
    table_q = _membership_table(q, tq, shift, resolution)
    table_r = _membership_table(r, tr, shift, resolution)

    i = np.arange(resolution, dtype=np.int64)
    odd = 2 * i + 1

    def residue_grid(v: LatticeVector) -> np.ndarray:
        u = (v.q1 * odd) % two_r
        w = (v.q2 * odd) % two_r
        return (u[:, None] + w[None, :]) % two_r

    inside = table_q[residue_grid(q)] & table_r[residue_grid(r)]
    count = int(np.count_nonzero(inside))
    estimate = Fraction(count, resolution ** 2)
    bound = Fraction(_cells_cut_bound(q, resolution)
                     + _cells_cut_bound(r, resolution), resolution ** 2)
    return estimate, bound


# -- the refined parallel-overlap bound ----------------------------------------


@dataclass(frozen=True)
class ParallelBoundResult:
    """Either a proof of zero overlap or the explicit bound value."""

    kind: str  # 'zero' | 'bound'
    threshold: int
    value: Fraction | None
    d: int
    e: int

    @property
    def provably_zero(self) -> bool:
        return self.kind == "zero"


def parallel_overlap_bound(q_vec, r_vec, psi: ApproxFunction,
                           w: NonLiouvilleWitness) -> ParallelBoundResult:
    """Vanishing certificate / bound for a parallel pair with |r| < |q|.

    Zero when |r| exceeds the vanish threshold for d = gcd(q); otherwise
    the bound 4*psi(q)*psi(r) + 4*(psi(q)/d)*gcd(d, e).
    """
    q, r = _as_vec(q_vec), _as_vec(r_vec)
    if not is_parallel(q, r):
        raise ValueError("bound applies to parallel pairs only")
    if not r.norm < q.norm:
        raise ValueError("need |r| < |q|")
    if not w.analytic and w.q_max < q.norm:
        raise ValueError(f"witness certified only up to q_max={w.q_max}")
    d, e = q.g, r.g
    thr = vanish_threshold(w, d)
    if r.norm > thr:
        return ParallelBoundResult("zero", thr, None, d, e)
    pq, pr = eval_psi(psi, q.norm), eval_psi(psi, r.norm)
    value = 4 * pq * pr + 4 * (pq / d) * gcd(d, e)
    return ParallelBoundResult("bound", thr, value, d, e)
