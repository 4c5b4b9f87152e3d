"""Function spaces L(D) via reduction of mixed lattice bases.

A function a lies in L(D) when it belongs to the inverse of the finite
part of D as a module over K[x] and satisfies the degree conditions at
the infinite places.  Writing a = c * R for the rows R of the finite
module, the infinite conditions become pure degree bounds on c * T for a
polynomial matrix T assembled from the two integral bases: no pole at
u = 0 of the infinite coordinates is a numerator-versus-denominator
degree comparison, and common polynomial factors cannot disturb it.  Row
reduction of T with a companion matrix then yields dimension and basis.
"""

from .divisors import Divisor, infinite_places
from .field import FFElem
from .orders import Ideal, ideal_inv, ideal_mul, ideal_one
from .polymat import lower_tri_inverse, mat_mul, row_reduce
from .polys import Poly, _inv_mod


def inf_inverse_ideal(field, vec) -> Ideal:
    """Ideal of the infinite order with valuation -vec[i] at place i."""
    oi = field.infinite_order()
    out = ideal_one(oi)
    for v, pl in zip(vec, infinite_places(field)):
        if v:
            out = ideal_mul(out, pl.prime.power(-v))
    return out


def _inf_profile(field, jinv: Ideal):
    """Degree data of the infinite module with inverse lattice jinv.

    Returns (vmat, tau_inf): a polynomial matrix and the part of the
    degree bound that does not depend on the finite module.
    """
    p = field.p
    e = field.cf
    oi = field.infinite_order()
    binv, bdet = oi.tri_inverse()
    hjinv, hjdet = lower_tri_inverse(jinv.h, p)
    g = mat_mul(binv, hjinv, p)
    rho = bdet * hjdet
    den_w = jinv.den * oi.den
    dg = max(x.deg for row in g for x in row if not x.is_zero())
    dw = den_w.deg
    rhat = den_w.reverse(dw)
    zero = Poly.zero(p)
    vmat = []
    for mi, row in enumerate(g):
        out = []
        for x in row:
            if x.is_zero():
                out.append(zero)
            else:
                out.append((x.reverse(dg) * rhat).shift(e * mi))
        vmat.append(out)
    s0 = rho.deg - dg - dw
    tau_inf = rho.reverse(rho.deg).deg - s0
    return vmat, tau_inf


class SsrrCache:
    """Memo of infinite-side profiles keyed by the inverse lattice."""

    __slots__ = ("data", "hits", "misses")

    def __init__(self):
        self.data = {}
        self.hits = 0
        self.misses = 0

    def profile(self, field, jinv: Ideal):
        k = jinv.key()
        prof = self.data.get(k)
        if prof is None:
            self.misses += 1
            prof = _inf_profile(field, jinv)
            self.data[k] = prof
        else:
            self.hits += 1
        return prof

    def __len__(self):
        return len(self.data)


def _lattice_data(field, iinv: Ideal, jinv: Ideal, profile=None):
    o = field.finite_order()
    p = field.p
    if profile is None:
        profile = _inf_profile(field, jinv)
    vmat, tau_inf = profile
    uy = mat_mul(iinv.h, o.basis, p)
    den_u = iinv.den * o.den
    that = mat_mul(uy, vmat, p)
    tau = tau_inf + den_u.deg
    return uy, den_u, that, tau


def rr_basis(field, divisor: Divisor):
    """(dim L(D), basis as field elements)."""
    iinv = ideal_inv(divisor.fin)
    jinv = inf_inverse_ideal(field, divisor.inf_vec)
    uy, den_u, that, tau = _lattice_data(field, iinv, jinv)
    _, degs, comp, _ = row_reduce(that, field.p, companion=uy)
    dim = 0
    basis = []
    for j, d in enumerate(degs):
        take = tau - d + 1
        if take <= 0:
            continue
        dim += take
        for k in range(take):
            basis.append(FFElem(field, [c.shift(k) for c in comp[j]], den_u))
    return dim, basis


def rr_dim(field, divisor: Divisor) -> int:
    return rr_basis(field, divisor)[0]


def ssrr_profile(field, jinv: Ideal):
    """Reusable infinite-side data for shortcut searches against jinv."""
    return _inf_profile(field, jinv)


def ssrr_reduce(field, iinv: Ideal, profile):
    """Shortcut search for one nonzero function of the lattice pair.

    Stops the reduction at the first row meeting the degree bound and
    returns the matching element with a deterministic normalization, or
    None when the space is zero.
    """
    uy, den_u, that, tau = _lattice_data(field, iinv, None, profile)
    _, degs, comp, hit = row_reduce(that, field.p, companion=uy,
                                    threshold=tau)
    if hit is None:
        return None
    num = comp[hit]
    for c in num:
        if not c.is_zero():
            sc = _inv_mod(c.lc, field.p)
            if sc != 1:
                num = [e.scale(sc) for e in num]
            break
    return FFElem(field, num, den_u)


def ssrr(field, iinv: Ideal, jinv: Ideal, cache: SsrrCache = None):
    profile = cache.profile(field, jinv) if cache is not None \
        else _inf_profile(field, jinv)
    return ssrr_reduce(field, iinv, profile)


def compute_genus(field) -> int:
    """Genus from the dimension of a high-degree place multiple."""
    gb = field.genus_bound()
    pl = infinite_places(field)[0]
    dp = pl.degree()
    m = max(1, -(-(2 * gb + 1) // dp))
    div = Divisor.from_place(pl, m)
    dim = rr_dim(field, div)
    return m * dp + 1 - dim
