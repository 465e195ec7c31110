"""Exact pairwise variance sums over sup-norm ranges and order windows,
the vanishing/bound sweep for parallel pairs, and the higher-dimensional
bound shape.

For the full range |q|, |r| <= Q the non-parallel pairs contribute their
product of measures exactly, so the variance reduces to a sum over
parallel pairs of (overlap - product).  Parallel pairs are grouped by
primitive direction; all 4*phi(n) direction classes of norm n share the
same multiplier table, so each (n, d, e, sign) overlap is evaluated once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .fixedpoint import DEFAULT_SCALE_BITS
from .lattice import LatticeVector, phi, shell, shell_size
from .psifunc import ApproxFunction, eval_psi
from .torus import as_shift, overlap_1d_core, overlap_2d
from .witness import NonLiouvilleWitness, vanish_threshold


@dataclass(frozen=True)
class VarianceReport:
    """Pair-overlap sum, measure sum, and the variance decomposition."""

    label: str
    sum_pair_overlaps: Fraction
    sum_measures: Fraction
    variance: Fraction
    diagonal: Fraction          # sum over vectors of (measure - measure^2)
    parallel_offdiag: Fraction
    nonparallel: Fraction       # identically 0 (independence of non-parallel pairs)
    max_measure: Fraction
    n_overlap_evals: int
    shift_error_bound: float    # evals * 2^(8 - scale_bits)

    @property
    def ratio(self) -> Fraction:
        if self.sum_measures == 0:
            return Fraction(0)
        return self.variance / self.sum_measures

    def json_dict(self) -> dict:
        return {
            "label": self.label,
            "sum_pair_overlaps": str(self.sum_pair_overlaps),
            "sum_measures": str(self.sum_measures),
            "variance": str(self.variance),
            "ratio": float(self.ratio),
            "diagonal": str(self.diagonal),
            "parallel_offdiag": str(self.parallel_offdiag),
            "nonparallel": str(self.nonparallel),
            "max_measure": str(self.max_measure),
            "n_overlap_evals": self.n_overlap_evals,
            "shift_error_bound": self.shift_error_bound,
        }


class _PairEngine:
    """Shared 1-D overlap evaluation for parallel multiplier pairs."""

    def __init__(self, psi: ApproxFunction, gamma, scale_bits: int,
                 q_max: int) -> None:
        self.shift = as_shift(gamma, scale_bits)
        self.psi_val: list[Fraction] = [Fraction(0)] * (q_max + 1)
        for n in range(1, q_max + 1):
            self.psi_val[n] = eval_psi(psi, n)
        self.evals = 0
        self.scale_bits = scale_bits

    def overlap(self, np_: int, d: int, e: int, same_sign: bool) -> Fraction:
        """lambda_2 overlap of (s1*d*P, s2*e*P) for any direction P of norm
        np_ (the value does not depend on P, only on the norms and the
        relative sign)."""
        self.evals += 1
        t1, t2 = self.psi_val[d * np_], self.psi_val[e * np_]
        s2 = self.shift if same_sign else -self.shift
        return overlap_1d_core(d, t1, self.shift, e, t2, s2)

    def measure(self, norm: int) -> Fraction:
        return 2 * self.psi_val[norm]


def _class_sums(engine: _PairEngine, np_: int, d_lo: int, d_hi: int,
                ) -> tuple[Fraction, Fraction]:
    """(overlap sum, product sum) over all ordered signed multiplier pairs
    of one direction class with multipliers in [d_lo, d_hi]."""
    if d_lo > d_hi:
        return Fraction(0), Fraction(0)
    ov = Fraction(0)
    meas_total = Fraction(0)
    for d in range(d_lo, d_hi + 1):
        meas_total += 2 * engine.measure(d * np_)  # both signs
        for e in range(d_lo, d + 1):
            vs = engine.overlap(np_, d, e, True)
            vo = engine.overlap(np_, d, e, False)
            ov += (2 if d == e else 4) * (vs + vo)
    return ov, meas_total ** 2


def variance_full(Q: int, psi: ApproxFunction, gamma,
                  scale_bits: int = DEFAULT_SCALE_BITS) -> VarianceReport:
    """Exact variance of the indicator sum over all 0 < |q| <= Q.

    Non-parallel pairs are accounted analytically (their overlap equals the
    product of measures); only parallel multiplier pairs are enumerated.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    engine = _PairEngine(psi, gamma, scale_bits, Q)

    sum_measures = Fraction(0)
    diagonal = Fraction(0)
    max_measure = Fraction(0)
    for n in range(1, Q + 1):
        m = engine.measure(n)
        sum_measures += shell_size(n) * m
        diagonal += shell_size(n) * (m - m * m)
        max_measure = max(max_measure, m)

    variance = Fraction(0)
    overlaps_par = Fraction(0)
    products_par = Fraction(0)
    for n in range(1, Q + 1):
        ov, prod = _class_sums(engine, n, 1, Q // n)
        n_classes = 4 * phi(n)
        variance += n_classes * (ov - prod)
        overlaps_par += n_classes * ov
        products_par += n_classes * prod

    sum_pair_overlaps = sum_measures ** 2 - products_par + overlaps_par
    return VarianceReport(
        label=f"Q={Q}",
        sum_pair_overlaps=sum_pair_overlaps,
        sum_measures=sum_measures,
        variance=variance,
        diagonal=diagonal,
        parallel_offdiag=variance - diagonal,
        nonparallel=Fraction(0),
        max_measure=max_measure,
        n_overlap_evals=engine.evals,
        shift_error_bound=engine.evals * 2.0 ** (8 - scale_bits),
    )


# -- order windows ---------------------------------------------------------------


def _window_boundary(n: int, lo_vec: LatticeVector | None,
                     hi_vec: LatticeVector | None) -> list[LatticeVector]:
    """Vectors of shell n inside the order window (lo <= . <= hi)."""
    out = []
    for v in shell(n):
        if lo_vec is not None and v.order_key() < lo_vec.order_key():
            continue
        if hi_vec is not None and v.order_key() > hi_vec.order_key():
            continue
        out.append(v)
    return out


def variance_window(u: LatticeVector, v: LatticeVector, psi: ApproxFunction,
                    gamma, scale_bits: int = DEFAULT_SCALE_BITS,
                    ) -> VarianceReport:
    """Exact variance of the indicator sum over the order window u..v
    (inclusive) of the total order (norm, q1, q2).

    Full inner shells are handled with the same direction-class grouping as
    ``variance_full``; the partial shells at both ends are enumerated
    explicitly.
    """
    u, v = LatticeVector(*u), LatticeVector(*v)
    if u.order_key() > v.order_key():
        raise ValueError("need u before v in the total order")
    nu, nv = u.norm, v.norm
    engine = _PairEngine(psi, gamma, scale_bits, nv)

    if nu == nv:
        boundary = _window_boundary(nu, u, v)
    else:
        boundary = _window_boundary(nu, u, None) + _window_boundary(nv, None, v)

    def d_range(np_: int) -> tuple[int, int]:
        # interior multipliers: nu < d*np_ < nv
        return nu // np_ + 1, (nv - 1) // np_

    # interior x interior, grouped
    variance = Fraction(0)
    for np_ in range(1, max(nv - 1, 0) + 1):
        d_lo, d_hi = d_range(np_)
        if d_lo > d_hi:
            continue
        ov, prod = _class_sums(engine, np_, d_lo, d_hi)
        variance += 4 * phi(np_) * (ov - prod)

    # boundary x interior (ordered pairs, hence factor 2)
    for b in boundary:
        pb, _ = b.canonical_direction()
        np_ = max(abs(pb[0]), abs(pb[1]))
        db = b.g
        d_lo, d_hi = d_range(np_)
        if d_lo > d_hi:
            continue
        lam_b = engine.measure(b.norm)
        cross = Fraction(0)
        prods = Fraction(0)
        for e in range(d_lo, d_hi + 1):
            cross += engine.overlap(np_, db, e, True)
            cross += engine.overlap(np_, db, e, False)
            prods += lam_b * 2 * engine.measure(e * np_)
        variance += 2 * (cross - prods)

    # boundary x boundary (all ordered pairs, including b with itself)
    by_dir: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for b in boundary:
        pb, sb = b.canonical_direction()
        by_dir.setdefault(pb, []).append((b.g, sb))
    for pb, members in by_dir.items():
        np_ = max(abs(pb[0]), abs(pb[1]))
        for d1, s1 in members:
            for d2, s2 in members:
                ov = engine.overlap(np_, d1, d2, s1 == s2)
                variance += ov - engine.measure(d1 * np_) * engine.measure(d2 * np_)

    # measure sums and diagonal over the whole window
    sum_measures = Fraction(0)
    diagonal = Fraction(0)
    max_measure = Fraction(0)
    for n in range(nu + 1, nv):
        m = engine.measure(n)
        sum_measures += shell_size(n) * m
        diagonal += shell_size(n) * (m - m * m)
        max_measure = max(max_measure, m)
    for b in boundary:
        m = engine.measure(b.norm)
        sum_measures += m
        diagonal += m - m * m
        max_measure = max(max_measure, m)

    return VarianceReport(
        label=f"window[{u.q1},{u.q2}..{v.q1},{v.q2}]",
        sum_pair_overlaps=variance + sum_measures ** 2,
        sum_measures=sum_measures,
        variance=variance,
        diagonal=diagonal,
        parallel_offdiag=variance - diagonal,
        nonparallel=Fraction(0),
        max_measure=max_measure,
        n_overlap_evals=engine.evals,
        shift_error_bound=engine.evals * 2.0 ** (8 - scale_bits),
    )


def variance_bruteforce(vectors: list[LatticeVector], psi: ApproxFunction,
                        gamma, scale_bits: int = DEFAULT_SCALE_BITS,
                        ) -> Fraction:
    """All-pairs oracle: sum of overlap_2d minus (sum of measures)^2."""
    total = Fraction(0)
    meas = Fraction(0)
    for a in vectors:
        meas += 2 * eval_psi(psi, a.norm)
        for b in vectors:
            total += overlap_2d(a, b, psi, gamma, scale_bits)[0]
    return total - meas ** 2


# -- the vanishing/bound sweep ---------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    d: int
    e: int
    r: int
    q: int
    threshold: int
    overlap: Fraction
    bound: Fraction | None
    status: str  # zero-confirmed | bound-satisfied | VIOLATION
    rel: str     # same | opp


@dataclass
class SweepSummary:
    n_rows: int = 0
    n_zero_confirmed: int = 0
    n_bound_satisfied: int = 0
    n_violations: int = 0
    max_bound_ratio: Fraction = Fraction(0)

    def ok(self) -> bool:
        return self.n_violations == 0


def vanishing_bound_sweep(Q: int, psi: ApproxFunction, w: NonLiouvilleWitness,
                          gamma, scale_bits: int = DEFAULT_SCALE_BITS,
                          collect_rows: bool = True,
                          ) -> tuple[list[SweepRow], SweepSummary]:
    """Check every parallel pair class with |r| < |q| <= Q against the
    vanishing threshold and the overlap bound, in both relative signs.

    A class is (direction norm, d, e): the overlap does not depend on which
    of the 4*phi(n) primitive directions of norm n carries the pair.
    """
    if not w.analytic and w.q_max < Q:
        raise ValueError(f"witness certified only up to {w.q_max} < Q={Q}")
    engine = _PairEngine(psi, gamma, scale_bits, Q)
    rows: list[SweepRow] = []
    summary = SweepSummary()
    for np_ in range(1, Q + 1):
        for d in range(2, Q // np_ + 1):
            thr = vanish_threshold(w, d)
            q_norm = d * np_
            pq = engine.psi_val[q_norm]
            for e in range(1, d):
                r_norm = e * np_
                bound = 4 * pq * engine.psi_val[r_norm] + 4 * (pq / d) * gcd(d, e)
                for rel in ("same", "opp"):
                    ov = engine.overlap(np_, d, e, rel == "same")
                    if r_norm > thr:
                        status = "zero-confirmed" if ov == 0 else "VIOLATION"
                        row_bound = None
                    else:
                        status = "bound-satisfied" if ov <= bound else "VIOLATION"
                        row_bound = bound
                        if bound > 0:
                            summary.max_bound_ratio = max(
                                summary.max_bound_ratio, ov / bound)
                    summary.n_rows += 1
                    if status == "zero-confirmed":
                        summary.n_zero_confirmed += 1
                    elif status == "bound-satisfied":
                        summary.n_bound_satisfied += 1
                    else:
                        summary.n_violations += 1
                    if collect_rows:
                        rows.append(SweepRow(d, e, r_norm, q_norm, thr, ov,
                                             row_bound, status, rel))
    return rows, summary


# -- higher-dimensional bound shape ----------------------------------------------


@dataclass(frozen=True)
class HighDimBound:
    base: Fraction    # 4 psi(q) psi(r) + 4 (psi(q)/q) gcd(q, r)
    m: int
    value: Fraction   # base ** m


def highdim_bound_check(q: int, r: int, psi: ApproxFunction, m: int,
                        ) -> HighDimBound:
    """Evaluate (4 psi(q) psi(r) + 4 (psi(q)/q) (q,r))**m exactly.

    Only the bound's right side: exact overlaps in dimension m >= 2 are out
    of scope here."""
    if not r < q:
        raise ValueError("need r < q")
    if m < 1:
        raise ValueError("m must be >= 1")
    pq, pr = eval_psi(psi, q), eval_psi(psi, r)
    base = 4 * pq * pr + 4 * (pq / q) * gcd(q, r)
    return HighDimBound(base=base, m=m, value=base ** m)


def gcd_norm_identity(q_vec, r_vec) -> tuple[Fraction, Fraction]:
    """For parallel q = d*P, r = e*P: gcd(d,e)/d versus gcd(|q|,|r|)/|q|.

    These agree (both equal gcd(d,e)/(d)); the m = 1 consistency check
    between the multiplier form and the norm form of the bound."""
    q = LatticeVector(*q_vec)
    r = LatticeVector(*r_vec)
    d, e = q.g, r.g
    lhs = Fraction(gcd(d, e), d)
    rhs = Fraction(gcd(q.norm, r.norm), q.norm)
    return lhs, rhs
