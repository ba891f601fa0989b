"""The quotient ring: moderate elements modulo super-polynomially small ones.

A GenConstant wraps a canonical PwFunction.  Equality, negligibility and the
sharp valuation only see the r = 0 components; everything with r > 0 is
invisible in the quotient.  Restriction predicates (x vanishes on S, x is
invertible on S) are decided exactly through the sign engine, and the
constructive operations (inversion, separating profiles, extension sets,
zero-product splitting, Cauchy gluing) return objects whose defining
properties are verified exactly by the same machinery.
"""

from __future__ import annotations

import math
from fractions import Fraction as Q

from .errors import (ModulusViolated, PreconditionViolated, ProductNotZero,
                     RepresentabilityError)
from .ivset import Iv, IvSet
from .pwfunc import PwFunction, TailComponent, dominance_data
from .scaleset import AsymptoticSet, circle_closure, unify_sets
from .signs import (NONNEG, POS, ZERO, bad_structure, common_window,
                    eventual_sign_on, flat_common_zero,
                    isolated_common_zeros)
from .signs import restr_invertible_bool as _inv_bool
from .signs import restr_zero as _restr_zero_pw
from .polytools import pmul
from .window import Piecewise, Seg


class GenConstant:
    """An element of the quotient ring, stored by a canonical
    representative."""

    __slots__ = ("rep", "_dom")

    def __init__(self, rep: PwFunction):
        self.rep = rep
        self._dom = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c, sigma=Q(1, 2), D=1) -> "GenConstant":
        return GenConstant(PwFunction.const(c, sigma, D))

    @staticmethod
    def zero(sigma=Q(1, 2), D=1) -> "GenConstant":
        return GenConstant(PwFunction.zero(sigma, D))

    @staticmethod
    def rho(sigma=Q(1, 2), D=1) -> "GenConstant":
        """The canonical infinitesimal: the parametrization scale itself."""
        return GenConstant(PwFunction.upower(D, sigma, D))

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        return GenConstant(self.rep.add(_rep(other)))

    def __sub__(self, other):
        return GenConstant(self.rep.sub(_rep(other)))

    def __mul__(self, other):
        return GenConstant(self.rep.mul(_rep(other)))

    def __neg__(self):
        return GenConstant(self.rep.neg())

    def __pow__(self, n):
        return GenConstant(self.rep.pow(n))

    def scale(self, q) -> "GenConstant":
        return GenConstant(self.rep.scale(q))

    def __eq__(self, other):
        if not isinstance(other, (GenConstant, PwFunction)):
            return NotImplemented
        return self.rep.equiv(_rep(other))

    __hash__ = None

    def __repr__(self):
        return f"GenConstant({self.rep!r})"

    # -- quotient-level queries -----------------------------------------

    def is_negligible(self) -> bool:
        return self.rep.is_negligible()

    def is_zero(self) -> bool:
        return self.is_negligible()

    def valuation(self):
        """Sharp valuation; +infinity exactly for the zero class."""
        v = self.rep.valuation()
        return math.inf if v is None else v

    def dominance(self):
        if self._dom is None:
            self._dom = dominance_data(self.rep)
        return self._dom

    def eval(self, u) -> Q:
        return self.rep.eval(u)


def _rep(x) -> PwFunction:
    return x.rep if isinstance(x, GenConstant) else x


def is_moderate(rep: PwFunction) -> bool:
    """Always true for constructed representatives; the grammar refuses
    r < 0 at component construction."""
    return all(c.r >= 0 for c in rep.comps)


def is_negligible(x) -> bool:
    return _rep(x).is_negligible()


def valuation(x):
    v = _rep(x).valuation()
    return math.inf if v is None else v


def sharp_dist(x, y) -> float:
    """The ultrametric exp(-v(x - y))."""
    v = valuation(GenConstant(_rep(x).sub(_rep(y))))
    return 0.0 if v is math.inf else math.exp(-v)


# -- restriction predicates ----------------------------------------------


def restr_zero(x, S: AsymptoticSet) -> bool:
    """Whether x vanishes faster than every scale power on S."""
    return _restr_zero_pw(_rep(x), S)


def restr_invertible(x, S: AsymptoticSet):
    """Whether |x| is eventually bounded below by a scale power on S.

    Returns (False, None, None) or (True, n, delta): |x| >= eps^n holds on
    S intersected with (0, delta), with n minimal for the element.
    """
    xr = _rep(x)
    if not _inv_bool(xr, S):
        return (False, None, None)
    xw, shape = common_window(xr, S)
    nmax = max([0] + [max(0, -(-c.s // xw.D)) for c in xw.live_comps()]) + 1
    for n in range(nmax + 1):
        z = xw.mul(xw).sub(xw.eps_power(2 * n))
        if eventual_sign_on(z, AsymptoticSet(xw.sigma, shape, D=xw.D)) in \
                (POS, NONNEG, ZERO):
            break
    else:  # pragma: no cover - the bool decision guarantees a witness
        raise AssertionError("invertibility witness search failed")
    K = _certified_start(z, shape)
    if K is None:
        K = _scanned_start(z, shape)
    delta = z.sigma ** K * z.c0
    return (True, n, delta)


# -- explicit-threshold certification ------------------------------------
#
# Given that z >= 0 holds on the trace at all small enough scales, produce
# an explicit block K beyond which it holds.  Per trace cell the
# lexicographically dominant component either bounds the others through a
# geometric exponent gap, or every component is nonnegative on the cell
# (so the sum is nonnegative at every scale), or the cell carries no
# component at all.


def _exponent(c: TailComponent, k: int) -> int:
    return c.s * k + c.r * k * (k - 1) // 2


def _gap_start(c0: TailComponent, c: TailComponent) -> int:
    """First k from which exponent(c) - exponent(c0) is nondecreasing."""
    if c.r == c0.r:
        return 0
    return max(0, (c0.s - c.s) // (c.r - c0.r) + 1)


def _dominance_start(sigma: Q, j0, m: Q, others) -> int:
    """Smallest certified k with m * sigma^e0(k) > sum of the other
    components' bounds, stable under increasing k."""
    k = max([0] + [_gap_start(j0, c) for c, _ in others])
    while True:
        tail = sum(M * sigma ** (_exponent(c, k) - _exponent(j0, k))
                   for c, M in others)
        if tail < m:
            return k
        k += 1
        if k > 4096:  # pragma: no cover - geometric gaps close fast
            raise AssertionError("dominance threshold runaway")


def _certified_start(z: PwFunction, shape: IvSet):
    """Explicit K with z >= 0 on the shape trace for every block k >= K,
    or None when the bounded cell strategies do not apply."""
    comps = sorted(z.comps, key=lambda c: (c.r, c.s))
    if not comps:
        return 0
    sigma = z.sigma
    C = circle_closure(shape, sigma)
    K = 0
    for p in C.points():
        k = _point_start(sigma, comps, p)
        if k is None:
            return None
        K = max(K, k)
    for iv in C.fat_part().ivs:
        k = _cell_start(sigma, comps, iv.lo, iv.hi)
        if k is None:
            return None
        K = max(K, k)
    return K


def _point_start(sigma, comps, p):
    vals = [(c, c.g.eval(p)) for c in comps]
    vals = [(c, v) for c, v in vals if v != 0]
    if not vals:
        return 0
    j0, v0 = vals[0]
    if v0 < 0:
        return None
    return _dominance_start(sigma, j0, v0,
                            [(c, abs(v)) for c, v in vals[1:]])


def _cell_start(sigma, comps, a, b, depth=0):
    if depth > 8:
        return None
    live = [c for c in comps if not c.g.restrict(a, b).is_zero()]
    if not live:
        return 0
    # sign-agreement rescue: a sum of nonnegative terms needs no threshold
    if all(c.g.restrict(a, b).nonneg_on_all() for c in live):
        return 0
    j0 = live[0]
    g0 = j0.g.restrict(a, b)
    flat = g0.flat_zero()
    cuts = {a, b}
    for iv in flat.ivs:
        cuts.add(iv.lo)
        cuts.add(iv.hi)
    for zp in g0.isolated_zeros():
        lo, hi = _rational_enclosure(zp, a, b, (b - a) / 16)
        cuts.add(lo)
        cuts.add(hi)
    pts = sorted(cuts)
    K = 0
    for lo, hi in zip(pts, pts[1:]):
        if flat.contains((lo + hi) / 2):
            # the dominant profile is identically zero here; recurse on the
            # remaining components
            k = _cell_start(sigma, [c for c in live if c is not j0],
                            lo, hi, depth + 1)
        else:
            sub = g0.restrict(lo, hi)
            m = sub.abs_lower_bound_if_nonvanishing()
            if m is None:
                # sliver around a zero of the dominant profile
                if all(c.g.restrict(lo, hi).nonneg_on_all() for c in live):
                    k = 0
                else:
                    k = None
            elif sub.eval((lo + hi) / 2) < 0:
                k = None
            else:
                others = [(c, c.g.restrict(lo, hi).abs_upper_bound())
                          for c in live[1:]]
                k = _dominance_start(sigma, j0, m, others)
        if k is None:
            return None
        K = max(K, k)
    return K


def _rational_enclosure(zp, a, b, width):
    if isinstance(zp, Q):
        pad = width / 2
        return max(a, zp - pad), min(b, zp + pad)
    while zp.hi - zp.lo > width:
        zp.refine()
    return max(a, zp.lo), min(b, zp.hi)


def _scanned_start(z: PwFunction, shape: IvSet, span: int = 48) -> int:
    """Fallback threshold: the start of the longest verified suffix of an
    exact block-by-block scan.  The eventual claim is already established
    by the sign engine; this pins a concrete block, checked exactly on
    every scanned block."""
    K = 0
    for k in range(span):
        if not _block_nonneg(z, k, shape):
            K = k + 1
    return K


def _block_nonneg(z: PwFunction, k: int, shape: IvSet) -> bool:
    total = None
    for c in z.comps:
        piece = c.g.scale(c.weight(z.sigma, k))
        total = piece if total is None else total.add(piece)
    if total is None:
        return True
    for iv in shape.ivs:
        if iv.is_point():
            if total.eval(iv.lo) < 0:
                return False
        elif not total.restrict(iv.lo, iv.hi).nonneg_on_all():
            return False
    return True


# -- separating profiles -------------------------------------------------


def urysohn(S: AsymptoticSet, T: AsymptoticSet) -> GenConstant:
    """A piecewise linear profile with values in [0, 1], vanishing on S and
    identically 1 outside the interior of T.  Needs S preceding T."""
    if not S.precedes(T):
        raise PreconditionViolated("urysohn needs the first set to precede "
                                   "the second")
    s, t = unify_sets(S, T)
    sg, D = s.sigma, s.D
    if s.is_empty():
        return GenConstant.const(1, sg, D)
    B = t.interior().complement()
    if B.is_empty():
        return GenConstant.zero(sg, D)
    zeros = _closed_circle(s.shape, sg)
    ones = _closed_circle(B.shape, sg)
    # the window trace is periodic under the ratio, so interpolate against
    # the neighbour copies; the seam values then agree exactly
    if ones.is_empty():
        gw = Piecewise.const(sg, Q(1), Q(0))
    elif zeros.is_empty():
        gw = Piecewise.const(sg, Q(1), Q(1))
    else:
        gw = _pl_between(zeros, ones, sg, Q(sg), Q(1), wrap=True)
    sc, bc = s.closure(), B.closure()
    c0 = min(sc.c0, bc.c0)
    if c0 == 1:
        return GenConstant(PwFunction(sg, (TailComponent(0, 0, gw),),
                                      None, Q(1), D))
    hz = sc.lower_anchor_to(c0).head
    ho = bc.lower_anchor_to(c0).head
    gh = _pl_between(hz, ho, sg, c0, Q(1), wrap=False,
                     anchor_value=gw.eval(Q(1)))
    return GenConstant(PwFunction(sg, (TailComponent(0, 0, gw),),
                                  gh, c0, D))


def _closed_circle(shape: IvSet, sigma: Q) -> IvSet:
    cc = circle_closure(shape, sigma)
    return IvSet([Iv(iv.lo, iv.hi, True, True) for iv in cc.ivs])


def _pl_between(zeros: IvSet, ones: IvSet, sigma: Q, lo: Q, hi: Q,
                wrap: bool, anchor_value=None) -> Piecewise:
    """Piecewise linear interpolation on [lo, hi]: 0 on `zeros`, 1 on
    `ones`, linear across the gaps.  With `wrap` the constraint families
    are extended by their scaled neighbour copies; without it one-sided
    gaps extend flat."""
    if wrap:
        zeros = zeros.union(zeros.scale(sigma)).union(zeros.scale(1 / sigma))
        ones = ones.union(ones.scale(sigma)).union(ones.scale(1 / sigma))
    marks = [(iv.lo, iv.hi, Q(0)) for iv in zeros.ivs] + \
            [(iv.lo, iv.hi, Q(1)) for iv in ones.ivs]
    if anchor_value is not None:
        marks.append((lo, lo, Q(anchor_value)))
    marks.sort()
    if not marks:
        marks = [(lo, lo, Q(0))]

    def value_at(w):
        below = above = None
        for (a, b, v) in marks:
            if a <= w <= b:
                return v
            if b < w and (below is None or b > below[0]):
                below = (b, v)
            if a > w and (above is None or a < above[0]):
                above = (a, v)
        if below is None and above is None:
            raise RepresentabilityError("separating profile gap is "
                                        "unbounded")
        if below is None:
            return above[1]
        if above is None:
            return below[1]
        (wb, vb), (wa, va) = below, above
        return vb + (va - vb) * (w - wb) / (wa - wb)

    nodes = {lo, hi}
    for (a, b, _) in marks:
        for e in (a, b):
            if lo < e < hi:
                nodes.add(e)
    return Piecewise.linear_interp([(w, value_at(w)) for w in sorted(nodes)])


# -- inversion ------------------------------------------------------------


def invert_on(x, S: AsymptoticSet) -> GenConstant:
    """An element y with x*y = 1 on S exactly.  The representative must
    carry its polynomial scale in a single component."""
    xr = _rep(x)
    ok, n, delta = restr_invertible(x, S)
    if not ok:
        raise PreconditionViolated("element is not invertible on the set")
    live = [c for c in xr.comps if c.r == 0 and not c.g.is_zero()]
    if len(live) != 1:
        raise RepresentabilityError(
            "inversion needs a single polynomial-scale component")
    T = extend_invertible(x, S)
    psi = GenConstant.const(1, xr.sigma, xr.D) - urysohn(S, T)
    return _divide_profile(psi.rep, xr, live[0])


def _divide_profile(psi: PwFunction, x: PwFunction, comp: TailComponent):
    """psi / x where psi vanishes outside the region where the single live
    component of x is nonvanishing."""
    from .pwfunc import unify
    a, b = unify(psi, x)
    live = [c for c in b.comps if c.r == 0 and not c.g.is_zero()]
    comp = live[0]
    gpsi = _only_profile(a)
    gy = _pl_quotient(gpsi, comp.g)
    head = None
    if a.c0 < 1:
        # only the tail carries the inversion contract; any continuous
        # head matching the seam works
        head = Piecewise.const(a.c0, Q(1), gy.eval(Q(1)))
    y = PwFunction(a.sigma, (TailComponent(-comp.s, 0, gy),),
                   head, a.c0, a.D)
    return GenConstant(y)


def _only_profile(psi: PwFunction) -> Piecewise:
    live = [c for c in psi.comps if c.r == 0]
    if len(live) != 1 or live[0].s != 0:
        raise RepresentabilityError("separating profile has an unexpected "
                                    "shape")
    return live[0].g


def _pl_quotient(num: Piecewise, den: Piecewise) -> Piecewise:
    """num / den, segment by segment; segments where num vanishes stay
    zero, elsewhere den must be root-free (certified at segment
    construction)."""
    cuts = sorted(set(num.breakpoints()) | set(den.breakpoints()))
    parts = []
    for a, b in zip(cuts, cuts[1:]):
        ns = num.restrict(a, b)
        if ns.is_zero():
            parts.append(Piecewise.zero(a, b))
            continue
        ds = den.restrict(a, b)
        for sn, sd in zip(ns.segs, _resplit(ds, ns).segs):
            parts.append(Piecewise((Seg(sn.lo, sn.hi,
                                        pmul(sn.num, sd.den),
                                        pmul(sn.den, sd.num)),),
                                   check_continuity=False))
    return Piecewise.concat(parts)


def _resplit(f: Piecewise, like: Piecewise) -> Piecewise:
    cuts = sorted(set(f.breakpoints()) | set(like.breakpoints()))
    return Piecewise.concat([f.restrict(a, b)
                             for a, b in zip(cuts, cuts[1:])])


def _pw_quotient(num: Piecewise, den: Piecewise) -> Piecewise:
    return _pl_quotient(num, den)


# -- extension sets -------------------------------------------------------


def extend_invertible(x, S: AsymptoticSet) -> AsymptoticSet:
    """A set T preceded by S on which x stays invertible: the closed trace
    fattened halfway toward the obstruction structure of x."""
    xr = _rep(x)
    if not _inv_bool(xr, S):
        raise PreconditionViolated("element is not invertible on the set")
    xw, shape = common_window(xr, S)
    sg = xw.sigma
    C = circle_closure(shape, sg)
    flat, badpts = bad_structure(xw)
    obstacles = flat
    for b in badpts:
        lo, hi = _rational_enclosure(b.pos, sg, Q(1), Q(1, 64))
        obstacles = obstacles.union(IvSet([Iv(lo, hi, True, True)]))
    if obstacles.is_empty():
        return AsymptoticSet.full(sg, S.D)
    eta = _circle_gap(C, obstacles, sg) / 2
    grown = _grow_circle(C, eta, sg)
    return _orbit_with_full_head(grown, sg, S)


def extend_zero(x, S: AsymptoticSet) -> AsymptoticSet:
    """A set T preceded by S on which x still vanishes: the closed trace
    fattened halfway inside the common zero region of x."""
    xr = _rep(x)
    if not restr_zero(x, S):
        raise PreconditionViolated("element does not vanish on the set")
    if xr.is_negligible():
        return AsymptoticSet.full(xr.sigma, S.D)
    xw, shape = common_window(xr, S)
    sg = xw.sigma
    C = circle_closure(shape, sg)
    Z = _closed_circle(flat_common_zero(xw), sg)
    zext = Z.union(Z.scale(sg)).union(Z.scale(1 / sg))
    pieces = []
    for iv in C.ivs:
        host = None
        for ze in zext.ivs:
            if ze.lo <= iv.lo and iv.hi <= ze.hi:
                host = ze
                break
        if host is None:
            raise RepresentabilityError(
                "trace touches an isolated zero; no self-similar "
                "neighborhood keeps the element vanishing")
        lo2 = iv.lo if host.lo == iv.lo else (host.lo + iv.lo) / 2
        hi2 = iv.hi if host.hi == iv.hi else (host.hi + iv.hi) / 2
        if lo2 == iv.lo and iv.is_point():
            raise RepresentabilityError(
                "trace touches the boundary of the zero region")
        pieces.append(Iv(lo2, hi2, True, True))
    grown = _wrap_to_window(IvSet(pieces), sg)
    T = _orbit_with_full_head(grown, sg, S)
    if not S.precedes(T):
        raise RepresentabilityError(
            "trace touches the boundary of the zero region")
    return T


def _circle_gap(C: IvSet, O: IvSet, sigma: Q) -> Q:
    oext = O.union(O.scale(sigma)).union(O.scale(1 / sigma))
    best = None
    for c in C.ivs:
        for o in oext.ivs:
            if o.lo > c.hi:
                d = o.lo - c.hi
            elif c.lo > o.hi:
                d = c.lo - o.hi
            else:
                d = Q(0)
            best = d if best is None else min(best, d)
    if best is None or best == 0:
        raise RepresentabilityError("no gap between the trace and the "
                                    "obstruction structure")
    return best


def _grow_circle(C: IvSet, eta: Q, sigma: Q) -> IvSet:
    grown = IvSet([Iv(iv.lo - eta, iv.hi + eta, True, True)
                   for iv in C.ivs])
    return _wrap_to_window(grown, sigma)


def _wrap_to_window(s: IvSet, sigma: Q) -> IvSet:
    """Fold interval parts outside (sigma, 1] back through the seam."""
    win = IvSet([Iv(sigma, 1, False, True)])
    out = s.intersect(win)
    low = s.intersect(IvSet([Iv(sigma * sigma, sigma, True, True)]))
    if low:
        out = out.union(low.scale(1 / sigma).intersect(win))
    high = s.intersect(IvSet([Iv(Q(1), 1 / sigma, False, True)]))
    if high:
        out = out.union(high.scale(sigma).intersect(win))
    return circle_closure(out, sigma)


def _orbit_with_full_head(shape: IvSet, sigma: Q, S: AsymptoticSet):
    c0 = S.c0 * S.sigma
    return AsymptoticSet(sigma, shape,
                         IvSet([Iv(c0, 1, False, True)]), c0, S.D)


# -- zero-product splitting ----------------------------------------------


def zero_product_split(a, b, S: AsymptoticSet | None = None):
    """Closed sets (T, U) whose interiors cover S, with a vanishing on T
    and b vanishing on U.  Needs a*b = 0 exactly."""
    ar, br = _rep(a), _rep(b)
    if not ar.mul(br).is_zero():
        raise ProductNotZero("the product is not the zero function")
    if S is None:
        S = AsymptoticSet.full(ar.sigma, ar.D)
    aw, _ = common_window(ar, S)
    bw, _ = common_window(br, S)
    sg = aw.sigma
    T = _zero_orbit(aw, sg, S)
    U = _zero_orbit(bw, sg, S)
    cover = T.interior().union(U.interior())
    if not S.subset_of(cover):
        raise RepresentabilityError(
            "the pointwise zero regions do not cover the set")
    return T, U


def _zero_orbit(xw: PwFunction, sg: Q, S: AsymptoticSet) -> AsymptoticSet:
    Z = _closed_circle(flat_common_zero(xw), sg)
    for p in isolated_common_zeros(xw):
        if isinstance(p, Q):
            Z = Z.union(IvSet.point(p))
    return _orbit_with_full_head(_wrap_to_window(Z, sg), sg, S)


# -- Cauchy gluing --------------------------------------------------------


def cauchy_glue(xs, moduli) -> GenConstant:
    """Glue a finite certified Cauchy prefix: |x_n - x_(n-1)| <= eps^n must
    hold from the n-th threshold scale down, checked exactly; the result s
    satisfies valuation(s - x_n) >= n - 2 for every provided n."""
    xs = [_rep(x) for x in xs]
    if not xs:
        raise PreconditionViolated("nothing to glue")
    if len(moduli) != len(xs):
        raise PreconditionViolated("one threshold scale per element")
    out = xs[0]
    sg, D = xs[0].sigma, xs[0].D
    for n in range(1, len(xs)):
        d = xs[n].sub(xs[n - 1])
        _check_modulus(d, n, Q(moduli[n]))
        chi = _head_cutoff(Q(moduli[n]), sg, D)
        out = out.add(chi.mul(d))
    s = GenConstant(out)
    for n in range(len(xs)):
        gap = GenConstant(out.sub(xs[n])).valuation()
        if gap is not math.inf and gap < n - 2:
            raise AssertionError("glued element misses the sharp bound")
    return s


def _check_modulus(d: PwFunction, n: int, eps_n: Q):
    """Certify |d| <= eps^n for u <= eps_n, exactly."""
    if d.is_zero():
        return
    z = d.eps_power(2 * n).sub(d.mul(d))
    full = AsymptoticSet.full(z.sigma, z.D)
    if eventual_sign_on(z, full) not in (POS, NONNEG, ZERO):
        raise ModulusViolated(f"step {n} breaks its certified bound")
    win = IvSet([Iv(z.sigma, 1, False, True)])
    K = _certified_start(z, win)
    if K is None:
        K = _scanned_start(z, win)
    # every block from the threshold scale to the certified start is
    # checked exactly, as is the stored head part below the threshold
    if eps_n > z.c0 and z.head is not None and \
            not z.head.restrict(z.c0, min(eps_n, Q(1))).nonneg_on_all():
        raise ModulusViolated(f"step {n} breaks its certified bound above "
                              "the anchor")
    k0 = z.block_of(eps_n) if eps_n <= z.c0 else 0
    for k in range(k0, K):
        if not _block_nonneg(z, k, win):
            raise ModulusViolated(f"step {n} breaks its certified bound "
                                  f"on block {k}")


def _head_cutoff(eps_n: Q, sg: Q, D: int) -> PwFunction:
    """A profile equal to 1 below the threshold scale, ramping to 0 over
    the block above it.  The threshold must sit on the geometric grid."""
    if eps_n >= 1:
        return PwFunction.const(1, sg, D)
    c0 = eps_n
    g = Piecewise.const(sg, Q(1), Q(1))
    ramp_hi = min(Q(1), c0 / sg)
    pieces = [Piecewise.linear_interp([(c0, Q(1)), (ramp_hi, Q(0))])]
    if ramp_hi < 1:
        pieces.append(Piecewise.zero(ramp_hi, Q(1)))
    head = Piecewise.concat(pieces)
    return PwFunction(sg, (TailComponent(0, 0, g),), head, c0, D)


# -- idempotents ----------------------------------------------------------


def idempotent_class(e) -> int | None:
    """0 or 1 if e is that constant in the quotient, None otherwise; the
    ring has no other idempotents, which callers verify by checking
    e*e = e implies a non-None answer."""
    er = _rep(e)
    if er.is_negligible():
        return 0
    one = PwFunction.const(1, er.sigma, er.D)
    if er.equiv(one.lower_anchor_to(er.c0) if er.c0 < 1 else one):
        return 1
    return None
