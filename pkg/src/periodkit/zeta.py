"""Completed Riemann zeta with rigorous error bounds, and the Gindikin-Karpelevich product.

Intervals come from mpmath's interval context.  The Dirichlet series is summed
by Euler-Maclaurin; for real s the tail after the last Bernoulli term is bounded
by the first omitted term, and we double that bound for safety.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import bernfrac, iv, mp, mpf
from mpmath.libmp import mpf_pos, round_ceiling, round_floor

from .errors import PoleError
from .weyl import SignedPerm, coroot, dot, inversions

_LOCK = threading.RLock()  # mpmath's interval context keeps its precision globally


def _to_iv(s) -> "iv.mpf":
    if isinstance(s, Fraction):
        return iv.mpf(s.numerator) / iv.mpf(s.denominator)
    if isinstance(s, int):
        return iv.mpf(s)
    if isinstance(s, str):
        return _to_iv(Fraction(s))
    return iv.mpf(s)


def _is_int(s) -> bool:
    try:
        return Fraction(s).denominator == 1
    except (TypeError, ValueError):
        return False


def _zeta_em(s: "iv.mpf", digits: int) -> "iv.mpf":
    n_terms = digits + 20
    n = iv.mpf(n_terms)
    total = iv.mpf(0)
    for k in range(1, n_terms):
        total += iv.mpf(k) ** (-s)
    total += n ** (1 - s) / (s - 1) + n ** (-s) / 2
    poch = s
    npow = n ** (-s - 1)
    fact = iv.mpf(2)
    m = digits + 10
    for j in range(1, m + 1):
        p, q = bernfrac(2 * j)
        total += iv.mpf(p) / q / fact * poch * npow
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        npow = npow / (n * n)
        fact = fact * (2 * j + 1) * (2 * j + 2)
    p, q = bernfrac(2 * m + 2)
    tail = abs(iv.mpf(p) / q / fact * poch * npow) * 2
    bound = tail.b
    return total + iv.mpf([-bound, bound])


def completed_zeta(s, digits: int = 30) -> "iv.mpf":
    """Interval enclosure of pi^{-s/2} Gamma(s/2) zeta(s) for real s."""
    if _is_int(s) and Fraction(s) in (0, 1):
        raise PoleError(f"completed zeta has a pole at s = {s}")
    with _LOCK:
        old = iv.prec
        # partial sums grow like N^(1-s) before cancelling, so left of 1 we need guard bits
        guard = max(0, math.ceil((1 - float(s)) * math.log2(digits + 20)))
        iv.prec = int(digits * 3.33) + 40 + guard
        try:
            if _is_int(s) and Fraction(s) < 0 and Fraction(s) % 2 == 0:
                # Gamma(s/2) has a pole cancelled by a trivial zero; use the reflected point
                s = 1 - Fraction(s)
            x = _to_iv(s)
            return iv.pi ** (-x / 2) * iv.gamma(x / 2) * _zeta_em(x, digits)
        finally:
            iv.prec = old


@dataclass(frozen=True)
class IntervalValue:
    lower: mpf
    upper: mpf
    digits: int

    @property
    def mid(self) -> mpf:
        with mp.workdps(self.digits + 20):
            return (self.lower + self.upper) / 2

    @property
    def radius(self) -> mpf:
        with mp.workdps(self.digits + 20):
            return (self.upper - self.lower) / 2

    def to_json(self) -> dict:
        with mp.workdps(self.digits + 20):
            return {
                "value": mp.nstr(self.mid, self.digits),
                "error_bound": mp.nstr(self.radius, 3, min_fixed=1, max_fixed=0),
                "digits": self.digits,
            }


def _interval(x, digits: int) -> IntervalValue:
    # round outward so the reported interval still encloses the true value
    prec = int(digits * 3.33) + 60
    with mp.workprec(prec):
        lower = mpf(mpf_pos(x._mpi_[0], prec, round_floor))
        upper = mpf(mpf_pos(x._mpi_[1], prec, round_ceiling))
    return IntervalValue(lower, upper, digits)


def completed_zeta_value(s, digits: int = 30) -> IntervalValue:
    return _interval(completed_zeta(s, digits), digits)


def pairings(w: SignedPerm, nu: Sequence) -> list[Fraction]:
    """<nu, beta^vee> over the inversion set of w."""
    return [dot(nu, coroot(beta)) for beta in inversions(w)]


def c_factor(w: SignedPerm, nu: Sequence, digits: int = 30) -> IntervalValue:
    """prod over inversions beta of zeta*(<nu, beta^vee>) / zeta*(<nu, beta^vee> + 1)."""
    nu = [Fraction(v) for v in nu]
    values = pairings(w, nu)
    for z in values:
        if z in (0, 1, -1):
            raise PoleError(f"pairing {z} hits a singularity of the completed zeta ratio")
    with _LOCK:
        old = iv.prec
        try:
            out = iv.mpf(1)
            for z in values:
                num = completed_zeta(z, digits + 5)
                den = completed_zeta(z + 1, digits + 5)
                iv.prec = int(digits * 3.33) + 40
                out = out * num / den
            return _interval(out, digits)
        finally:
            iv.prec = old
