"""Z^2 enumeration by sup-norm shells, gcd/primitive structure, and exact
divisor/gcd-sum diagnostics (tau, phi, restricted gcd-power sums).

All counts are exact integers; phi and tau use trial-division
factorization (desk scale), with a smallest-prime-factor sieve for bulk
sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd


@dataclass(frozen=True)
class LatticeVector:
    """Nonzero integer vector with sup-norm / gcd / primitive-part structure."""

    q1: int
    q2: int

    def __post_init__(self) -> None:
        if self.q1 == 0 and self.q2 == 0:
            raise ValueError("lattice vector must be nonzero")

    @cached_property
    def norm(self) -> int:
        return max(abs(self.q1), abs(self.q2))

    @cached_property
    def g(self) -> int:
        return gcd(abs(self.q1), abs(self.q2))

    @cached_property
    def primitive(self) -> tuple[int, int]:
        return (self.q1 // self.g, self.q2 // self.g)

    def canonical_direction(self) -> tuple[tuple[int, int], int]:
        """(P, s) with primitive part = s*P and P lexicographically positive."""
        p1, p2 = self.primitive
        if p1 < 0 or (p1 == 0 and p2 < 0):
            return (-p1, -p2), -1
        return (p1, p2), 1

    def order_key(self) -> tuple[int, int, int]:
        return (self.norm, self.q1, self.q2)

    def __iter__(self):
        return iter((self.q1, self.q2))


def order_key(v: LatticeVector | tuple[int, int]) -> tuple[int, int, int]:
    """Total order on Z^2 minus 0: (norm, q1, q2) lexicographically.
    Smaller norm always sorts first."""
    q1, q2 = v
    return (max(abs(q1), abs(q2)), q1, q2)


def shell(n: int) -> list[LatticeVector]:
    """All vectors of sup-norm exactly n, in total-order order."""
    if n < 1:
        raise ValueError("shell index must be >= 1")
    out = []
    for q1 in range(-n, n + 1):
        if abs(q1) == n:
            out.extend(LatticeVector(q1, q2) for q2 in range(-n, n + 1))
        else:
            out.append(LatticeVector(q1, -n))
            out.append(LatticeVector(q1, n))
    return out


def shell_size(n: int) -> int:
    """|shell(n)| = (2n+1)^2 - (2n-1)^2 = 8n."""
    return 8 * n


def parallel_class(q: LatticeVector, r_norm: int) -> list[LatticeVector]:
    """All r with |r| = r_norm parallel to q: empty unless (|q|/gcd(q))
    divides r_norm, in which case exactly the two sign representatives."""
    if r_norm < 1:
        raise ValueError("r_norm must be >= 1")
    pnorm = q.norm // q.g
    if r_norm % pnorm:
        return []
    e = r_norm // pnorm
    p1, p2 = q.primitive
    return [LatticeVector(e * p1, e * p2), LatticeVector(-e * p1, -e * p2)]


# -- multiplicative helpers -------------------------------------------------


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n >= 1, desk scale)."""
    if n < 1:
        raise ValueError("need n >= 1")
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def tau(n: int) -> int:
    """Number of positive divisors."""
    t = 1
    for e in factorize(n).values():
        t *= e + 1
    return t


def phi(n: int) -> int:
    """Euler totient."""
    v = n
    for p in factorize(n):
        v -= v // p
    return v


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p ** i for d in ds for i in range(e + 1)]
    return sorted(ds)


def primitive_shell_count(n: int) -> int:
    """Number of primitive vectors of sup-norm n: 8*phi(n).

    Each of the four sides contributes the lattice points (±n, j) or
    (i, ±n) with the off coordinate in [-n, n] coprime to n; corners have
    gcd n and never double count (n = 1 included: all 8 vectors)."""
    return 8 * phi(n)


def count_gcd_shell(n: int, d: int, method: str = "auto") -> int:
    """Number of vectors with sup-norm n and gcd exactly d (d | n).

    'enumerate' walks the shell; 'formula' uses 8*phi(n/d) (the gcd-d
    vectors are d times the primitive vectors of norm n/d); 'auto' uses the
    formula, which the test suite pins against enumeration.
    """
    if n < 1 or d < 1 or n % d:
        raise ValueError("need d | n with n, d >= 1")
    if method == "enumerate":
        return sum(1 for v in shell(n) if v.g == d)
    if method in ("formula", "auto"):
        return primitive_shell_count(n // d)
    raise ValueError(f"unknown method {method!r}")


def gcd_shell_bound_ok(n: int, d: int) -> tuple[int, Fraction, bool]:
    """Check the claimed bound count <= 4n/d; returns (count, bound, ok).

    The enumerated count is 8*phi(n/d), which exceeds 4n/d whenever
    phi(n/d) > n/(2d); violations are reported verbatim, not asserted away.
    """
    count = count_gcd_shell(n, d)
    bound = Fraction(4 * n, d)
    return count, bound, Fraction(count) <= bound


# -- gcd power sums ----------------------------------------------------------


def _cap_holds(dv: int, q: int, cap: Fraction) -> bool:
    """dv < q**cap with rational cap, decided in integers."""
    return dv ** cap.denominator < q ** cap.numerator


def gcd_power_sum(q: int, k: int, cap: Fraction | None = None,
                  ) -> tuple[int, Fraction]:
    """(S, S/q^k) with S = sum over 1 <= r <= q, gcd(q,r) < q^cap of
    gcd(q, r)^k, computed exactly via sum over divisors d of d^k phi(q/d).

    cap = None means no restriction (the r = q term contributes q^k).
    """
    if q < 2 or k < 1:
        raise ValueError("need q >= 2, k >= 1")
    total = 0
    for dv in divisors(q):
        if cap is not None and not _cap_holds(dv, q, cap):
            continue
        total += dv ** k * phi(q // dv)
    return total, Fraction(total, q ** k)


def gcd_power_sum_naive(q: int, k: int, cap: Fraction | None = None) -> int:
    """O(q) oracle for gcd_power_sum."""
    total = 0
    for r in range(1, q + 1):
        g = gcd(q, r)
        if cap is not None and not _cap_holds(g, q, cap):
            continue
        total += g ** k
    return total


def spf_sieve(limit: int) -> list[int]:
    """Smallest prime factor table for 0..limit."""
    spf = list(range(limit + 1))
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def _divisors_phi_from_spf(n: int, spf: list[int]) -> list[tuple[int, int]]:
    """(d, phi(n/d)) for all divisors d of n, via the SPF table."""
    fact = []
    m = n
    while m > 1:
        p = spf[m]
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        fact.append((p, e))
    # phi(n/d): build divisors with exponent vectors
    items = [(1, n)]  # (d, n/d)
    for p, e in fact:
        items = [(d * p ** i, cod // p ** i) for d, cod in items
                 for i in range(e + 1)]
    out = []
    for d, cod in items:
        ph = cod
        mm = cod
        while mm > 1:
            p = spf[mm]
            ph -= ph // p
            while mm % p == 0:
                mm //= p
        out.append((d, ph))
    return out


def gcd_power_sum_sweep(q_max: int, k: int, cap: Fraction | None = None,
                        ) -> list[tuple[int, int, Fraction]]:
    """(q, S, S/q^k) for all 2 <= q <= q_max, using one SPF sieve."""
    spf = spf_sieve(q_max)
    out = []
    for q in range(2, q_max + 1):
        total = 0
        for dv, ph in _divisors_phi_from_spf(q, spf):
            if cap is not None and not _cap_holds(dv, q, cap):
                continue
            total += dv ** k * ph
        out.append((q, total, Fraction(total, q ** k)))
    return out


def primorials(count: int) -> list[int]:
    """First ``count`` primorials 2, 6, 30, 210, ..."""
    out = []
    value, p = 1, 2
    while len(out) < count:
        if all(p % r for r in range(2, p)):
            value *= p
            out.append(value)
        p += 1
    return out
