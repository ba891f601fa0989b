"""Numeric cross-checks for the exact engine.

The oracle samples elements on a geometric grid u_j = 2^(-j/8) and
estimates scale order from the slope of log|x(u)| against log u.  It is
deliberately independent of the exact machinery: everything here goes
through pointwise rational evaluation followed by floating arithmetic at
high precision.  Disagreement between a slope estimate and an exact
answer is reported as inconclusive, never as an engine failure, unless
the gap survives the stated tolerance.
"""

from dataclasses import dataclass
from fractions import Fraction as Q

import mpmath

from ..errors import AllSamplesZero

__all__ = [
    "OracleConfig",
    "ValuationEstimate",
    "oracle_valuation",
    "oracle_sign_on",
    "oracle_vanishes_on",
    "sample_points",
]


@dataclass(frozen=True)
class OracleConfig:
    """Grid and precision parameters for the numeric oracle.

    depth:      deepest grid index J; samples use u = 2^(-j/8), j <= J.
    window:     number of deepest usable samples entering the slope fit.
    precision:  mpmath working precision in decimal digits.
    tolerance:  half-width accepted around an exact valuation.
    quantifier_bound:  existential scale quantifiers are probed up to
                this exponent only (the oracle shadows "exists n" by
                "exists n <= bound").
    min_scale:  samples below this magnitude are treated as zero; probes
                never look past it (delta >= 2^-120 in the default).
    """

    depth: int = 1600
    window: int = 200
    precision: int = 60
    tolerance: Q = Q(1, 20)
    quantifier_bound: int = 8
    min_scale: Q = Q(1, 2 ** 120)

    def grid(self):
        return [Q(1, 2) ** Q(j, 8) for j in range(8, self.depth + 1)]


@dataclass(frozen=True)
class ValuationEstimate:
    lo: float
    hi: float
    diverging: bool

    def contains(self, v) -> bool:
        if v is None:
            return self.diverging
        return self.lo <= float(v) <= self.hi


def _logabs(q: Q):
    """log|q| without building floats from huge integers directly."""
    return mpmath.log(abs(q.numerator)) - mpmath.log(q.denominator)


def _slope(points):
    """Least-squares slope of log|x| against log u."""
    n = len(points)
    sx = mpmath.fsum(p[0] for p in points)
    sy = mpmath.fsum(p[1] for p in points)
    sxx = mpmath.fsum(p[0] * p[0] for p in points)
    sxy = mpmath.fsum(p[0] * p[1] for p in points)
    den = n * sxx - sx * sx
    return (n * sxy - sx * sy) / den


def oracle_valuation(x, cfg: OracleConfig = OracleConfig()) -> ValuationEstimate:
    """Estimate the scale order of x by log-log regression.

    Returns an interval [lo, hi] expected to contain the exact
    valuation, or a diverging flag when the local slope keeps growing
    with depth (the numeric signature of a negligible element).
    """
    with mpmath.workdps(cfg.precision):
        # fit against the per-block maximum of |x|: pointwise samples dip
        # arbitrarily low near interior zeros of a window profile, which
        # would bias a raw regression
        best = {}
        last_full = cfg.depth // 8 - 1
        for j in range(8, cfg.depth + 1):
            k = j // 8
            if k > last_full:
                break
            u = Q(1, 2) ** Q(j, 8)
            val = x.eval(u)
            if val == 0:
                continue
            la = _logabs(val)
            if k not in best or la > best[k]:
                best[k] = la
        if not best:
            raise AllSamplesZero("element vanished at every grid point")
        log2 = mpmath.log(2)
        logs = [(-log2 * k, best[k]) for k in sorted(best)]
        wn = max(2, min(cfg.window // 8, len(logs) // 2))
        win = logs[-wn:]
        prev = logs[-2 * wn:-wn] or win
        s_deep = _slope(win)
        s_prev = _slope(prev)
        drift = float(s_deep - s_prev)
        if drift > 0.5 and float(s_deep) > float(s_prev) * 1.1 + 0.5:
            return ValuationEstimate(float(s_deep), mpmath.inf, True)
        tol = float(cfg.tolerance)
        spread = abs(drift)
        half = max(tol, spread)
        mid = float(s_deep)
        return ValuationEstimate(mid - half, mid + half, False)


def sample_points(S, cfg: OracleConfig, per_block: int = 5):
    """Grid points of cfg that land inside the asymptotic set S."""
    out = []
    for u in cfg.grid():
        if u >= cfg.min_scale and S.contains(u):
            out.append(u)
            if len(out) >= per_block * 64:
                break
    return out


def oracle_vanishes_on(x, S, cfg: OracleConfig = OracleConfig()):
    """Grid shadow of "x restricts to zero on S".

    True when |x(u)| <= u^n for every sampled u in S for some probe
    exponent n growing without bound within the quantifier budget; the
    check is |x(u)| <= u^bound at all sampled points deeper than
    min_scale^(1/bound) style thresholds.  Returns True/False/None where
    None means the samples were inconclusive.
    """
    pts = sample_points(S, cfg)
    if not pts:
        return None
    deep = [u for u in pts if u <= Q(1, 2 ** 16)]
    if not deep:
        return None
    n = cfg.quantifier_bound
    ok = all(abs(x.eval(u)) <= u ** n for u in deep)
    if ok:
        return True
    # distinguish a clear failure from a near miss at low exponent
    if any(abs(x.eval(u)) > u for u in deep):
        return False
    return None


def oracle_sign_on(x, S, cfg: OracleConfig = OracleConfig()):
    """Grid shadow of eventual strict positivity of x on S."""
    pts = [u for u in sample_points(S, cfg) if u <= Q(1, 2 ** 16)]
    if not pts:
        return None
    vals = [x.eval(u) for u in pts]
    if all(v > 0 for v in vals):
        return True
    if any(v < 0 for v in vals):
        return False
    return None
