"""Group law on degree-zero divisor classes via unique reduced
representatives.

A class is stored as (dtilde, r) with dtilde effective of degree r,
0 <= r <= g, reduction place A outside the support of dtilde; the class
is [dtilde - r*A].  Uniqueness makes equality a byte comparison of the
canonical ideal pair.  Reduction finds the minimal r with
l(D + r*A) = 1 through shortcut searches, then adds the principal
divisor of the found function.
"""

from .divisors import (Divisor, finite_places_above, infinite_places,
                       infinite_valuations)
from .polys import Poly
from .orders import (Ideal, ideal_one, ideal_mul, ideal_inv,
                     principal_ideal)
from .riemann_roch import _inf_profile, ssrr_reduce


class OpCounters:
    """Operation tallies shared by both maximal orders of a field."""

    __slots__ = ("ssrr_calls", "partial_additions", "ssrr_cache_hits",
                 "ssrr_cache_misses", "infinite_cache_hits",
                 "infinite_cache_misses", "heights")

    def __init__(self):
        self.reset()

    def reset(self):
        self.ssrr_calls = 0
        self.partial_additions = 0
        self.ssrr_cache_hits = 0
        self.ssrr_cache_misses = 0
        self.infinite_cache_hits = 0
        self.infinite_cache_misses = 0
        self.heights = []

    def record_height(self, h: int):
        self.heights.append(h)

    def as_dict(self):
        return {
            "ssrr_calls": self.ssrr_calls,
            "partial_additions": self.partial_additions,
            "ssrr_cache_hits": self.ssrr_cache_hits,
            "ssrr_cache_misses": self.ssrr_cache_misses,
            "infinite_cache_hits": self.infinite_cache_hits,
            "infinite_cache_misses": self.infinite_cache_misses,
        }


class JacElem:
    """Reduced representative: effective dtilde = (fin, inf ideal, vec)
    of degree r, class [dtilde - r*A]."""

    __slots__ = ("fin", "inf", "vec", "r")

    def __init__(self, fin: Ideal, inf: Ideal, vec, r: int):
        self.fin = fin
        self.inf = inf
        self.vec = tuple(vec)
        self.r = r

    def key(self):
        return (self.fin.key(), self.inf.key())

    def __eq__(self, other):
        return isinstance(other, JacElem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def reduced_divisor(self) -> Divisor:
        field = self.fin.order.field
        return Divisor(field, self.fin, self.vec)

    def class_divisor(self, a_index: int) -> Divisor:
        field = self.fin.order.field
        vec = list(self.vec)
        vec[a_index] -= self.r
        return Divisor(field, self.fin, vec)

    def __repr__(self):
        return "JacElem(r=%d)" % self.r


class JacobianCtx:
    """Arithmetic context: reduction place, strategy, caches, counters."""

    def __init__(self, field, strategy: str = "linear",
                 caching: bool = True, cache_cap: int = None):
        if strategy not in ("linear", "binary"):
            raise ValueError("strategy must be linear or binary")
        self.field = field
        self.g = field.genus()
        self.strategy = strategy
        self.caching = bool(caching)
        self.cache_cap = cache_cap
        places = infinite_places(field)
        deg1 = [i for i, pl in enumerate(places) if pl.degree() == 1]
        if not deg1:
            raise ValueError("no degree-one infinite place to reduce along")
        self.a_index = deg1[0]
        self.A = places[self.a_index]
        self.pa = self.A.prime
        self.places = places
        self.t = len(places)
        self.inf_add_cache = {}
        self.ssrr_profiles = {}
        self.counters = OpCounters()
        field.finite_order().counters = self.counters
        field.infinite_order().counters = self.counters
        # reduction shifts reach these exponents; memoized uncounted
        self.pa.power(-1)
        self.pa.power(max(0, self.g - 1))
        if strategy == "binary":
            self.pa.power(self.g)

    # -- cached infinite-side primitives ----------------------------------

    def _inf_mul(self, a: Ideal, b: Ideal) -> Ideal:
        if not self.caching:
            return ideal_mul(a, b)
        key = (a.key(), b.key())
        if key[0] > key[1]:
            key = (key[1], key[0])
        out = self.inf_add_cache.get(key)
        if out is None:
            self.counters.infinite_cache_misses += 1
            out = ideal_mul(a, b)
            if self.cache_cap is None or len(self.inf_add_cache) < self.cache_cap:
                self.inf_add_cache[key] = out
        else:
            self.counters.infinite_cache_hits += 1
        return out

    def _materialize(self, vec) -> Ideal:
        out = None
        for pl, v in zip(self.places, vec):
            if not v:
                continue
            part = pl.prime.power(v)
            out = part if out is None else self._inf_mul(out, part)
        return out if out is not None else ideal_one(self.field.infinite_order())

    def _profile(self, jq: Ideal):
        if not self.caching:
            return _inf_profile(self.field, ideal_inv(jq))
        key = jq.key()
        prof = self.ssrr_profiles.get(key)
        if prof is None:
            self.counters.ssrr_cache_misses += 1
            prof = _inf_profile(self.field, ideal_inv(jq))
            if self.cache_cap is None or len(self.ssrr_profiles) < self.cache_cap:
                self.ssrr_profiles[key] = prof
        else:
            self.counters.ssrr_cache_hits += 1
        return prof

    # -- HR-Min search -----------------------------------------------------

    def _query(self, iinv, jbase, vec_base, shift, fin_h):
        jq = self._inf_mul(jbase, self.pa.power(shift)) if shift else jbase
        h = fin_h
        for i, (pl, v) in enumerate(zip(self.places, vec_base)):
            if i == self.a_index:
                v += shift
            h += abs(v) * pl.degree()
        ctr = self.counters
        ctr.ssrr_calls += 1
        ctr.record_height(h)
        return ssrr_reduce(self.field, iinv, self._profile(jq))

    def _hr_min_linear(self, iinv, jbase, vec_base, off, fin_h):
        g = self.g
        if g == 0:
            return 0, self._query(iinv, jbase, vec_base, off, fin_h)
        a = self._query(iinv, jbase, vec_base, g - 1 + off, fin_h)
        if a is None:
            # zero at g-1 forces the answer g by monotonicity
            return g, self._query(iinv, jbase, vec_base, g + off, fin_h)
        for m in range(g - 2, -1, -1):
            nxt = self._query(iinv, jbase, vec_base, m + off, fin_h)
            if nxt is None:
                return m + 1, a
            a = nxt
        return 0, a

    def _hr_min_binary(self, iinv, jbase, vec_base, off, fin_h):
        g = self.g
        lo, hi = 0, g
        lo_checked = False
        witness = None
        while not (lo_checked and hi == lo + 1):
            if hi == lo:
                break
            m = hi - (hi - lo) // 2 if hi - lo >= 2 else lo
            a = self._query(iinv, jbase, vec_base, m + off, fin_h)
            if a is None:
                lo = m
                lo_checked = True
            elif m == lo:
                return m, a
            else:
                hi = m
                witness = a
        if witness is None:
            witness = self._query(iinv, jbase, vec_base, hi + off, fin_h)
        return hi, witness

    def _reduce_raw(self, fin, fin_inv, jbase, vec_base, off, fin_h):
        """Reduce the class of (fin, vec_base + off*A); fin_inv inverts fin."""
        if self.strategy == "linear":
            r, a = self._hr_min_linear(fin_inv, jbase, vec_base, off, fin_h)
        else:
            r, a = self._hr_min_binary(fin_inv, jbase, vec_base, off, fin_h)
        o0 = self.field.finite_order()
        ia = principal_ideal(o0, o0.from_power(a.num), a.den)
        fin3 = ideal_mul(fin, ia)
        veca = infinite_valuations(self.field, a)
        vec3 = list(vec_base)
        vec3[self.a_index] += r + off
        vec3 = tuple(v + w for v, w in zip(vec3, veca))
        inf3 = self._materialize(vec3)
        assert 0 <= r <= self.g
        assert fin3.is_integral() and all(v >= 0 for v in vec3)
        assert vec3[self.a_index] == 0
        assert fin3.norm_degree() + sum(
            v * pl.degree() for v, pl in zip(vec3, self.places)) == r
        return JacElem(fin3, inf3, vec3, r)

    # -- public group operations -------------------------------------------

    def _attach(self):
        # several contexts may share one field; counters follow the caller
        self.field.finite_order().counters = self.counters
        self.field.infinite_order().counters = self.counters

    def zero(self) -> JacElem:
        return JacElem(ideal_one(self.field.finite_order()),
                       ideal_one(self.field.infinite_order()),
                       (0,) * self.t, 0)

    def add(self, x: JacElem, y: JacElem) -> JacElem:
        self._attach()
        fin = ideal_mul(x.fin, y.fin)
        jbase = self._inf_mul(x.inf, y.inf)
        vec = tuple(a + b for a, b in zip(x.vec, y.vec))
        return self._reduce_raw(fin, ideal_inv(fin), jbase, vec,
                                -(x.r + y.r), fin.norm_degree())

    def neg(self, x: JacElem) -> JacElem:
        if x.r == 0:
            return x
        self._attach()
        fin = ideal_inv(x.fin)
        vec = list(-v for v in x.vec)
        vec[self.a_index] += x.r
        jbase = self._materialize(vec)
        return self._reduce_raw(fin, x.fin, jbase, tuple(vec), 0,
                                x.fin.norm_degree())

    def sub(self, x: JacElem, y: JacElem) -> JacElem:
        return self.add(x, self.neg(y))

    def scalar_mul(self, k: int, x: JacElem) -> JacElem:
        if k < 0:
            return self.scalar_mul(-k, self.neg(x))
        acc = self.zero()
        sq = x
        while k:
            if k & 1:
                acc = self.add(acc, sq)
            k >>= 1
            if k:
                sq = self.add(sq, sq)
        return acc

    def reduce_divisor(self, div: Divisor) -> JacElem:
        """Reduced representative of the class of a degree-zero divisor."""
        if div.degree() != 0:
            raise ValueError("divisor must have degree zero")
        self._attach()
        fin_h = sum(abs(v) * pl.degree() for pl, v in div.finite_support())
        return self._reduce_raw(div.fin, ideal_inv(div.fin),
                                self._materialize(div.inf_vec),
                                div.inf_vec, 0, fin_h)

    def element_of_place(self, place, mult: int = 1) -> JacElem:
        """Class of mult*(P - deg(P)*A)."""
        D = Divisor.from_place(place, mult) - Divisor.from_place(
            self.A, mult * place.degree())
        return self.reduce_divisor(D)


def random_class(ctx: JacobianCtx, rng) -> JacElem:
    """Reduce a sum of max(g, 1) random finite places, each balanced by A.

    rng is a random.Random; the draw is deterministic for a fixed seed.
    """
    field = ctx.field
    D = Divisor.zero(field)
    for _ in range(max(ctx.g, 1)):
        q = Poly([-rng.randrange(field.p) % field.p, 1], field.p)
        above = finite_places_above(field, q)
        pl = above[rng.randrange(len(above))]
        D = D + Divisor.from_place(pl, 1) - Divisor.from_place(
            ctx.A, pl.degree())
    return ctx.reduce_divisor(D)
