"""Self-similar subsets of (0, 1] and their asymptotic topology.

A set is stored the same way as an element: a ratio sigma, an anchor c0
(a power of sigma), a "shape" subset of the block window (sigma, 1]
replicated on every block (sigma^(k+1) c0, sigma^k c0], and an explicit
"head" subset of (c0, 1].  A set accumulates at 0 exactly when its shape is
nonempty.

The window behaves like a circle: w = 1 on block k+1 is glued to w -> sigma+
on block k.  Closure and interior are computed exactly; the only subtle point
is the junction between the head and the first block, which is handled by
unrolling one block before taking closures.
"""

from __future__ import annotations

from fractions import Fraction as Q

from .errors import (EmptySet, GridMismatch, IncommensurableRatio,
                     NotCharacteristic, ParseError, PreconditionViolated,
                     RepresentabilityError)
from .ivset import Iv, IvSet


def circle_closure(shape: IvSet, sigma: Q) -> IvSet:
    """Closure of a shape inside the window circle (sigma, 1]."""
    out = list(shape.closure().ivs)
    res = IvSet(out).intersect(IvSet([Iv(sigma, 1, False, True)]))
    if shape.limit_from_right(sigma):
        res = res.union(IvSet.point(1))
    return res


def circle_interior(shape: IvSet, sigma: Q) -> IvSet:
    dom = Iv(sigma, 1, False, True)
    return circle_closure(shape.complement(dom), sigma).complement(dom)


class AsymptoticSet:
    """A self-similar subset of (0, 1]."""

    __slots__ = ("D", "sigma", "c0", "shape", "head")

    def __init__(self, sigma, shape: IvSet, head: IvSet | None = None,
                 c0=Q(1), D=1):
        self.sigma = Q(sigma)
        self.c0 = Q(c0)
        self.D = int(D)
        if not (0 < self.sigma < 1):
            raise ValueError("ratio must lie in (0,1)")
        if not _is_power(self.c0, self.sigma):
            raise IncommensurableRatio(
                f"anchor {self.c0} is not a power of {self.sigma}")
        win = IvSet([Iv(self.sigma, 1, False, True)])
        self.shape = shape.intersect(win)
        if self.shape != shape:
            raise ValueError("shape must lie inside the window (sigma, 1]")
        if self.c0 == 1:
            if head is not None and head:
                raise ValueError("a head needs an anchor < 1")
            self.head = IvSet.empty()
        else:
            hd = head if head is not None else IvSet.empty()
            dome = IvSet([Iv(self.c0, 1, False, True)])
            self.head = hd.intersect(dome)
            if self.head != hd:
                raise ValueError("head must lie inside (anchor, 1]")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def orbit(shape: IvSet, sigma=Q(1, 2), D=1) -> "AsymptoticSet":
        return AsymptoticSet(sigma, shape, D=D)

    @staticmethod
    def orbit_interval(lo, hi, sigma=Q(1, 2), lc=True, hc=True, D=1):
        return AsymptoticSet(sigma, IvSet.interval(lo, hi, lc, hc), D=D)

    @staticmethod
    def orbit_point(w, sigma=Q(1, 2), D=1):
        return AsymptoticSet(sigma, IvSet.point(w), D=D)

    @staticmethod
    def full(sigma=Q(1, 2), D=1) -> "AsymptoticSet":
        return AsymptoticSet(sigma, IvSet([Iv(Q(sigma), 1, False, True)]), D=D)

    @staticmethod
    def empty(sigma=Q(1, 2), D=1) -> "AsymptoticSet":
        return AsymptoticSet(sigma, IvSet.empty(), D=D)

    @staticmethod
    def initial(c0, sigma=Q(1, 2), D=1) -> "AsymptoticSet":
        """The initial segment (0, c0]."""
        sg = Q(sigma)
        return AsymptoticSet(sg, IvSet([Iv(sg, 1, False, True)]),
                             IvSet.empty(), c0=Q(c0), D=D)

    # -- basic queries --------------------------------------------------

    def __repr__(self):
        return (f"AsymptoticSet(sigma={self.sigma}, c0={self.c0}, "
                f"shape={self.shape}, head={self.head})")

    def is_empty(self) -> bool:
        return self.shape.is_empty() and self.head.is_empty()

    def is_characteristic(self) -> bool:
        """Whether the set accumulates at 0."""
        return not self.shape.is_empty()

    def contains(self, u) -> bool:
        u = Q(u)
        if not (0 < u <= 1):
            return False
        if u > self.c0:
            return self.head.contains(u)
        k, w = self.block_coord(u)
        return self.shape.contains(w)

    def block_coord(self, u):
        u = Q(u)
        k = 0
        edge = self.c0 * self.sigma
        while u <= edge:
            edge *= self.sigma
            k += 1
        return k, u / (self.sigma ** k * self.c0)

    # -- grid rewriting -------------------------------------------------

    def lower_anchor(self, t: int) -> "AsymptoticSet":
        if t == 0:
            return self
        head = self.head
        for k in range(t):
            head = head.union(self.shape.scale(self.sigma ** k * self.c0))
        return AsymptoticSet(self.sigma, self.shape, head,
                             c0=self.sigma ** t * self.c0, D=self.D)

    def lower_anchor_to(self, new_c0) -> "AsymptoticSet":
        new_c0 = Q(new_c0)
        t, c = 0, self.c0
        while c > new_c0:
            c *= self.sigma
            t += 1
        if c != new_c0:
            raise IncommensurableRatio(
                f"cannot move anchor from {self.c0} to {new_c0}")
        return self.lower_anchor(t)

    def coarsen(self, m: int) -> "AsymptoticSet":
        if m == 1:
            return self
        sg = self.sigma
        # the anchor can always be lowered until it fits the coarse ratio
        t = 0
        while t < m and not _is_power(self.c0 * sg ** t, sg ** m):
            t += 1
        if t:
            return self.lower_anchor(t).coarsen(m)
        if not _is_power(self.c0, sg ** m):
            raise IncommensurableRatio("anchor does not fit the coarse ratio")
        shape = IvSet.empty()
        for i in range(m):
            shape = shape.union(self.shape.scale(sg ** i))
        return AsymptoticSet(sg ** m, shape, self.head, c0=self.c0, D=self.D)

    # -- boolean algebra ------------------------------------------------

    def union(self, other) -> "AsymptoticSet":
        a, b = unify_sets(self, other)
        return AsymptoticSet(a.sigma, a.shape.union(b.shape),
                             a.head.union(b.head), c0=a.c0, D=a.D)

    def intersect(self, other) -> "AsymptoticSet":
        a, b = unify_sets(self, other)
        return AsymptoticSet(a.sigma, a.shape.intersect(b.shape),
                             a.head.intersect(b.head), c0=a.c0, D=a.D)

    def complement(self) -> "AsymptoticSet":
        win = Iv(self.sigma, 1, False, True)
        sh = self.shape.complement(win)
        hd = IvSet.empty()
        if self.c0 < 1:
            hd = self.head.complement(Iv(self.c0, 1, False, True))
        return AsymptoticSet(self.sigma, sh, hd, c0=self.c0, D=self.D)

    def difference(self, other) -> "AsymptoticSet":
        return self.intersect(other.complement_like(self))

    def complement_like(self, template) -> "AsymptoticSet":
        a, _ = unify_sets(self, template)
        return a.complement()

    def set_eq(self, other) -> bool:
        a, b = unify_sets(self, other)
        return a.shape == b.shape and a.head == b.head

    def subset_of(self, other) -> bool:
        a, b = unify_sets(self, other)
        return a.shape.subset_of(b.shape) and a.head.subset_of(b.head)

    # -- topology -------------------------------------------------------

    def closure(self) -> "AsymptoticSet":
        S = self.lower_anchor(1)
        sh = circle_closure(S.shape, S.sigma)
        dome = Iv(S.c0, 1, False, True)
        hd = S.head.closure().intersect(IvSet([dome]))
        return AsymptoticSet(S.sigma, sh, hd, c0=S.c0, D=S.D)

    def interior(self) -> "AsymptoticSet":
        return self.complement().closure().complement()

    def is_closed(self) -> bool:
        return self.set_eq(self.closure())

    def is_open(self) -> bool:
        return self.set_eq(self.interior())

    def precedes(self, other) -> bool:
        """The extension order: closure(self) inside interior(other)."""
        return self.closure().subset_of(other.interior())

    # -- representation helpers ----------------------------------------

    def is_pure_orbit(self) -> bool:
        """Whether the set equals the full orbit of its own shape."""
        return self.set_eq(AsymptoticSet(self.sigma, self.shape, D=self.D))

    def as_pure_orbit(self) -> "AsymptoticSet":
        if not self.is_pure_orbit():
            raise RepresentabilityError(
                "operation needs a set that is the full orbit of its shape")
        return AsymptoticSet(self.sigma, self.shape, D=self.D)

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "sigma": str(self.sigma),
            "anchor": str(self.c0),
            "shape": _ivs_to_list(self.shape),
            "head": _ivs_to_list(self.head),
        }

    @staticmethod
    def from_dict(d: dict) -> "AsymptoticSet":
        try:
            return AsymptoticSet(
                Q(d["sigma"]), _ivs_from_list(d["shape"]),
                _ivs_from_list(d.get("head", [])),
                c0=Q(d.get("anchor", 1)), D=int(d.get("D", 1)))
        except (KeyError, ValueError, TypeError) as e:
            raise ParseError(f"malformed set record: {e}") from None


def _is_power(c0: Q, sigma: Q) -> bool:
    c0 = Q(c0)
    if c0 == 1:
        return True
    while c0 < 1:
        if c0 == sigma:
            return True
        c0 /= sigma
        if c0 > 1:
            return False
    return False


def unify_sets(a: AsymptoticSet, b: AsymptoticSet):
    if a.D != b.D:
        raise GridMismatch(f"different grid refinements {a.D} and {b.D}")
    if a.sigma != b.sigma:
        m1, m2 = _common_power(a.sigma, b.sigma)
        a = _align(a, m1).coarsen(m1)
        b = _align(b, m2).coarsen(m2)
    if a.c0 != b.c0:
        if a.c0 > b.c0:
            a = a.lower_anchor_to(b.c0)
        else:
            b = b.lower_anchor_to(a.c0)
    return a, b


def _align(s: AsymptoticSet, m: int) -> AsymptoticSet:
    t = 0
    c = s.c0
    while not _is_power(c, s.sigma ** m):
        c *= s.sigma
        t += 1
        if t > 64:
            raise IncommensurableRatio("anchor alignment failed")
    return s.lower_anchor(t)


def _common_power(s1: Q, s2: Q):
    for total in range(2, 26):
        for m1 in range(1, total):
            m2 = total - m1
            if s1 ** m1 == s2 ** m2:
                return m1, m2
    raise IncommensurableRatio(f"no common ratio for {s1} and {s2}")


def _ivs_to_list(s: IvSet):
    return [{"lo": str(iv.lo), "hi": str(iv.hi),
             "lc": iv.lc, "hc": iv.hc} for iv in s.ivs]


def _ivs_from_list(lst):
    return IvSet([Iv(Q(d["lo"]), Q(d["hi"]), bool(d["lc"]), bool(d["hc"]))
                  for d in lst])


# -- metric machinery (used by the separation constructions) -------------

def pl_distance(cands: IvSet, lo, hi):
    """Piecewise linear distance on [lo, hi] to a nonempty closed interval
    set (flags are ignored; endpoints count as members)."""
    from .window import Piecewise
    ivs = cands.ivs
    if not ivs:
        raise EmptySet("distance to the empty set is undefined")
    lo, hi = Q(lo), Q(hi)

    def dist_at(w):
        best = None
        for iv in ivs:
            if iv.lo <= w <= iv.hi:
                return Q(0)
            d = iv.lo - w if w < iv.lo else w - iv.hi
            best = d if best is None else min(best, d)
        return best

    marks = {lo, hi}
    for iv in ivs:
        for e in (iv.lo, iv.hi):
            if lo <= e <= hi:
                marks.add(e)
    # midpoints of gaps create the tent apexes
    for a, b in zip(ivs, ivs[1:]):
        mid = (a.hi + b.lo) / 2
        if lo <= mid <= hi:
            marks.add(mid)
    nodes = [(w, dist_at(w)) for w in sorted(marks)]
    return Piecewise.linear_interp(nodes)


def _closed_ivs(s: IvSet) -> IvSet:
    return IvSet([Iv(iv.lo, iv.hi, True, True) for iv in s.ivs])


def window_distance_pl(shape: IvSet, sigma: Q):
    """Piecewise linear distance d(w) on [sigma, 1] to the union of the
    closed set `shape` and its immediate scaled neighbours.

    Because a nonempty shape puts points on every block, the nearest point
    of the orbit is never more than one block away, so the neighbour copies
    shape/sigma and shape*sigma capture the true metric on deep blocks.
    """
    if shape.is_empty():
        raise NotCharacteristic("distance to an empty shape is undefined")
    closed = _closed_ivs(circle_closure(shape, sigma))
    cands = closed.union(closed.scale(sigma)).union(closed.scale(1 / sigma))
    return pl_distance(cands, sigma, 1)


def _head_cands(s: AsymptoticSet) -> IvSet:
    """Closed candidate set whose u-distance is exact on [sigma*c0, 1]:
    the head plus the top two tail blocks.  Any lower block is farther than
    the nearest candidate for every u in that range."""
    out = _closed_ivs(s.head.closure())
    sh = _closed_ivs(s.shape.closure())
    out = out.union(sh.scale(s.c0)).union(sh.scale(s.sigma * s.c0))
    return out


def pl_nonpos_region(f) -> IvSet:
    """The closed set {w : f(w) <= 0} of a piecewise linear function as an
    exact interval set over its domain."""
    cuts = {Q(f.lo), Q(f.hi)}
    for b in f.breakpoints():
        cuts.add(Q(b))
    for z in f.isolated_zeros():
        if not isinstance(z, Q):
            raise RepresentabilityError(
                "sign region needs rational breakpoints")
        cuts.add(z)
    pts = sorted(cuts)
    out = f.flat_zero()
    for p in pts:
        if f.eval(p) <= 0:
            out = out.union(IvSet.point(p))
    for a, b in zip(pts, pts[1:]):
        if f.eval((a + b) / 2) <= 0:
            out = out.union(IvSet([Iv(a, b, True, True)]))
    return out


def distance_profile(S: AsymptoticSet):
    """The u-coordinate distance to a nonempty set, as an exact
    piecewise-linear self-similar element (degree 1 on the tail)."""
    from .pwfunc import PwFunction, TailComponent
    from .window import Piecewise
    if S.is_empty():
        raise EmptySet("distance to the empty set is undefined")
    S = S.closure()
    sg = S.sigma
    if S.is_characteristic():
        # anchor two blocks down: the window formula is exact once both
        # neighbour blocks are genuine tail blocks
        S1 = S.lower_anchor(1)
        c0d = sg * S1.c0
        dw = window_distance_pl(S1.shape, sg)
        if dw.is_zero():
            comps = ()
        else:
            comps = (TailComponent(1, 0, dw.scale(c0d)),)
        if c0d == 1:
            return PwFunction(sg, comps, None, Q(1), S.D)
        head = pl_distance(_head_cands(S1), c0d, Q(1))
        return PwFunction(sg, comps, head, c0d, S.D)
    # no tail: distance below the anchor is (nearest head point) - u
    a = min(iv.lo for iv in S.head.closure().ivs)
    c0 = S.c0
    head = pl_distance(_closed_ivs(S.head.closure()), c0, Q(1))
    comps = (TailComponent(0, 0, Piecewise.const(sg, Q(1), a)),
             TailComponent(1, 0, Piecewise.linear_interp(
                 [(sg, -c0 * sg), (Q(1), -c0)])))
    return PwFunction(sg, comps, head, c0, S.D)


def _metric_median(A: AsymptoticSet, B: AsymptoticSet) -> AsymptoticSet:
    """The closed set {u : d(u, A) <= d(u, B)} for closed A, B, with the
    convention d(u, empty) = +infinity."""
    A, B = unify_sets(A.closure(), B.closure())
    sg, D = A.sigma, A.D
    if B.is_empty():
        return AsymptoticSet.full(sg, D)
    if A.is_empty():
        return AsymptoticSet.empty(sg, D)
    # Anchor low enough that the self-similar tail rule is exact: one block
    # down unconditionally, and below half the minimum of any side that does
    # not accumulate at 0.
    mins = [min(iv.lo for iv in X.head.ivs) / 2
            for X in (A, B) if not X.is_characteristic()]
    c0 = A.c0 * sg
    while mins and c0 >= min(mins):
        c0 *= sg
    A = A.lower_anchor_to(c0)
    B = B.lower_anchor_to(c0)
    win = IvSet([Iv(sg, 1, False, True)])
    if A.is_characteristic() and B.is_characteristic():
        f = window_distance_pl(A.shape, sg).sub(
            window_distance_pl(B.shape, sg))
        shape = pl_nonpos_region(f).intersect(win)
    elif A.is_characteristic():
        shape = win
    elif B.is_characteristic():
        shape = IvSet.empty()
    else:
        aA = min(iv.lo for iv in A.head.ivs)
        aB = min(iv.lo for iv in B.head.ivs)
        shape = win if aA <= aB else IvSet.empty()
    fh = pl_distance(_head_cands(A), c0, Q(1)).sub(
        pl_distance(_head_cands(B), c0, Q(1)))
    head = pl_nonpos_region(fh).intersect(IvSet([Iv(c0, 1, False, True)]))
    return AsymptoticSet(sg, shape, head, c0, D)


def insert_between(S: AsymptoticSet, T: AsymptoticSet) -> AsymptoticSet:
    """A set strictly between S and T in the extension order: the points at
    least as close to cl S as to the complement of int T."""
    if not S.precedes(T):
        raise PreconditionViolated("insert_between needs the first set to "
                                   "precede the second")
    a, b = unify_sets(S, T)
    return _metric_median(a.closure(),
                          b.interior().complement().closure())


def _unify_many(sets):
    sets = list(sets)
    for idx in list(range(len(sets) - 1)) + list(range(len(sets) - 2, -1, -1)):
        sets[idx], sets[idx + 1] = unify_sets(sets[idx], sets[idx + 1])
    return sets


def prec_union(S: AsymptoticSet, T: AsymptoticSet, U: AsymptoticSet):
    """Split a covered set: V preceding S and W preceding T with
    U inside V union W, via distance comparison against the complements."""
    s, t, u = _unify_many([S, T, U])
    for X in (s, t, u):
        if X.is_empty() or not X.is_open():
            raise PreconditionViolated(
                "prec_union needs open nonempty sets")
    clu = u.closure()
    if not clu.subset_of(s.union(t)):
        raise PreconditionViolated(
            "the closure of the covered set must lie inside the union")
    coS = s.complement().closure()
    coT = t.complement().closure()
    V = _metric_median(coT, coS).intersect(clu)
    W = _metric_median(coS, coT).intersect(clu)
    return V, W
