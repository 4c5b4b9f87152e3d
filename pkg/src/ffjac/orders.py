"""Maximal orders and fractional ideals of function fields.

An order of F = K(x)[t]/(f) is a full K[x]-lattice closed under
multiplication, stored as a basis matrix over the power basis
1, t, ..., t^(n-1) together with a common monic denominator.  Fractional
ideals keep their rows in the coordinates of the owning order.  Every
lattice is normalized to canonical Hermite form with a minimal monic
denominator, so equal modules have identical keys.
"""

import random

import numpy as np

from .extpoly import (Fq, fqp_deg, fqp_divmod, fqp_factor, fqp_gcd,
                      fqp_is_zero, fqp_mul, fqp_trim)
from .field import _bt_mul, _bt_sub
from .polymat import (
    bareiss_det,
    fp_kernel,
    fp_solve,
    hnf_square,
    in_lattice,
    left_kernel,
    lower_tri_inverse,
    mat_key,
    mat_mul,
)
from .polys import Poly, poly_factor, poly_gcd


def _matmul_mod(a, b, p: int):
    """(a @ b) % p without int64 overflow for large p."""
    if b.shape[0] * (p - 1) * (p - 1) < (1 << 63):
        return (a @ b) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def _content(rows, p: int) -> Poly:
    g = Poly.zero(p)
    for row in rows:
        for e in row:
            if not e.is_zero():
                g = poly_gcd(g, e)
                if g.is_one():
                    return g
    return g


def _vm(v, rows, p: int):
    """Vector times matrix over K[x]."""
    width = len(rows[0])
    out = [Poly.zero(p)] * width
    for i, c in enumerate(v):
        if c.is_zero():
            continue
        row = rows[i]
        for j in range(width):
            if not row[j].is_zero():
                out[j] = out[j] + c * row[j]
    return out


def _vec_mod(v, q: Poly):
    return [e % q for e in v]


def _reduce_mod_lattice(v, h):
    """Canonical representative of v modulo the row span of the HNF h."""
    v = list(v)
    for j in range(len(h) - 1, -1, -1):
        qt = v[j] // h[j][j]
        if qt.is_zero():
            continue
        row = h[j]
        for k in range(j + 1):
            if not row[k].is_zero():
                v[k] = v[k] - qt * row[k]
    return v


def _q_multiplicity(g: Poly, q: Poly) -> int:
    cnt = 0
    while not g.is_zero():
        quo, rem = g.divmod(q)
        if not rem.is_zero():
            break
        g = quo
        cnt += 1
    return cnt


class Order:
    """K[x]-order given by a basis matrix over the power basis and a
    denominator: the i-th basis element is (1/den) * sum_j basis[i][j] t^j.
    """

    __slots__ = ("field", "basis", "den", "one_coords", "counters", "_table",
                 "_decomp", "_key", "_tri")

    def __init__(self, field, rows, den: Poly):
        p = field.p
        h = hnf_square(rows, p)
        g = poly_gcd(_content(h, p), den)
        if not g.is_one():
            h = [[e.exact_div(g) for e in row] for row in h]
            den = den.exact_div(g)
        if den.lc != 1:
            raise ArithmeticError("order denominator must be monic")
        self.field = field
        self.basis = h
        self.den = den
        target = [den if j == 0 else Poly.zero(p) for j in range(field.n)]
        one = in_lattice(target, h, p)
        if one is None:
            raise ArithmeticError("lattice does not contain 1")
        self.one_coords = one
        self.counters = None
        self._table = None
        self._decomp = {}
        self._key = None
        self._tri = None

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return self.field.n

    def key(self) -> bytes:
        if self._key is None:
            self._key = mat_key(self.basis) + b"/" + self.den.key()
        return self._key

    def det(self) -> Poly:
        d = self.basis[0][0]
        for j in range(1, self.n):
            d = d * self.basis[j][j]
        return d

    def index_poly(self) -> Poly:
        """Index of the equation order K[x][t]/(f) in this order."""
        return (self.den ** self.n).exact_div(self.det())

    def tri_inverse(self):
        """(G, d) with G * basis = d * Id, d the basis determinant."""
        if self._tri is None:
            self._tri = lower_tri_inverse(self.basis, self.p)
        return self._tri

    # -- multiplication table ------------------------------------------

    def table(self):
        if self._table is None:
            fld = self.field
            p, n, d = self.p, self.n, self.den
            T = [[None] * n for _ in range(n)]
            for a in range(n):
                for b in range(a, n):
                    conv = [Poly.zero(p)] * (2 * n - 1)
                    ra, rb = self.basis[a], self.basis[b]
                    for i in range(n):
                        if ra[i].is_zero():
                            continue
                        for j in range(n):
                            if not rb[j].is_zero():
                                conv[i + j] = conv[i + j] + ra[i] * rb[j]
                    vec = fld.reduce_tpoly(conv)
                    scaled = [e.exact_div(d) for e in vec]
                    c = in_lattice(scaled, self.basis, p)
                    if c is None:
                        raise ArithmeticError("lattice not closed under "
                                              "multiplication")
                    T[a][b] = T[b][a] = c
            self._table = T
        return self._table

    def elem_mul_matrix(self, v):
        """Rows: coordinates of (basis element a) * (element with coords v)."""
        T = self.table()
        p, n = self.p, self.n
        out = []
        for a in range(n):
            row = [Poly.zero(p)] * n
            for k in range(n):
                c = v[k]
                if c.is_zero():
                    continue
                tk = T[a][k]
                for j in range(n):
                    if not tk[j].is_zero():
                        row[j] = row[j] + c * tk[j]
            out.append(row)
        return out

    def mul_coords(self, u, v):
        return _vm(u, self.elem_mul_matrix(v), self.p)

    # -- coordinate conversion -------------------------------------------

    def to_power(self, c):
        """Power-basis numerator of the element with coordinates c; the
        implied denominator is self.den."""
        return _vm(c, self.basis, self.p)

    def from_power(self, vec):
        """Coordinates of sum vec[j] t^j, or None when not in the order."""
        return in_lattice([e * self.den for e in vec], self.basis, self.p)


class Ideal:
    """Fractional ideal (1/den) * rowspan(h) in order coordinates."""

    __slots__ = ("order", "h", "den", "_key")

    def __init__(self, order: Order, rows, den: Poly = None):
        p = order.p
        if den is None:
            den = Poly.one(p)
        h = hnf_square(rows, p)
        if not den.is_one():
            # full cancellation is the common case; test it before the gcd
            if all((e % den).is_zero() for row in h for e in row):
                h = [[e.exact_div(den) for e in row] for row in h]
                den = Poly.one(p)
            else:
                g = poly_gcd(_content(h, p), den)
                if not g.is_one():
                    h = [[e.exact_div(g) for e in row] for row in h]
                    den = den.exact_div(g)
        if den.lc != 1:
            raise ArithmeticError("ideal denominator must be monic")
        self.order = order
        self.h = h
        self.den = den
        self._key = None

    def key(self) -> bytes:
        if self._key is None:
            self._key = mat_key(self.h) + b"/" + self.den.key()
        return self._key

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.order is other.order \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_integral(self) -> bool:
        return self.den.is_one()

    def det(self) -> Poly:
        d = self.h[0][0]
        for j in range(1, self.order.n):
            d = d * self.h[j][j]
        return d

    def norm_degree(self) -> int:
        s = sum(self.h[j][j].deg for j in range(self.order.n))
        return s - self.order.n * self.den.deg

    def scale(self, g: Poly) -> "Ideal":
        return Ideal(self.order, [[e * g for e in row] for row in self.h],
                     self.den)

    def contains(self, c, cden: Poly = None) -> bool:
        """Membership of the element with order coordinates c / cden."""
        p = self.order.p
        num = [e * self.den for e in c]
        if cden is None or cden.is_one():
            return in_lattice(num, self.h, p) is not None
        rows = [[e * cden for e in row] for row in self.h]
        return in_lattice(num, rows, p) is not None


def ideal_one(order: Order) -> Ideal:
    p = order.p
    rows = [[Poly.one(p) if i == j else Poly.zero(p) for j in range(order.n)]
            for i in range(order.n)]
    return Ideal(order, rows)


def principal_ideal(order: Order, c, cden: Poly = None) -> Ideal:
    if all(e.is_zero() for e in c):
        raise ZeroDivisionError("principal ideal of zero")
    return Ideal(order, order.elem_mul_matrix(c), cden)


def _ideal_mul_raw(a: Ideal, b: Ideal) -> Ideal:
    order = a.order
    p = order.p
    rows = []
    for v in b.h:
        m = order.elem_mul_matrix(v)
        for u in a.h:
            rows.append(_vm(u, m, p))
    return Ideal(order, rows, a.den * b.den)


def ideal_mul(a: Ideal, b: Ideal) -> Ideal:
    ctr = a.order.counters
    if ctr is not None:
        ctr.partial_additions += 1
    return _ideal_mul_raw(a, b)


def ideal_pow(a: Ideal, k: int) -> Ideal:
    if k < 0:
        return ideal_pow(ideal_inv(a), -k)
    out = ideal_one(a.order)
    base = a
    while k:
        if k & 1:
            out = ideal_mul(out, base)
        k >>= 1
        if k:
            base = ideal_mul(base, base)
    return out


def _colon_lattice(order: Order, gen_mats, rhs_rows):
    """HNF basis of {c : c * M ideal-contained in rowspan(rhs_rows) for
    every multiplication matrix M in gen_mats}."""
    p, n = order.p, order.n
    k = len(gen_mats)
    ncols = n * k
    zero = Poly.zero(p)
    big = []
    for i in range(n):
        big.append([gen_mats[j][i][l] for j in range(k) for l in range(n)])
    for j in range(k):
        for r in range(n):
            row = [zero] * ncols
            for l in range(n):
                row[j * n + l] = rhs_rows[r][l]
            big.append(row)
    ker = left_kernel(big, p)
    return hnf_square([kr[:n] for kr in ker], p)


def ideal_inv(a: Ideal) -> Ideal:
    """Inverse fractional ideal; the order must be maximal.

    Computes the colon lattice {x : x * a inside O} as the dual of the
    sum of the transposed multiplication lattices of the generators:
    one HNF plus a triangular inversion, no kernel computation.
    """
    order = a.order
    p, n = order.p, order.n
    rows = []
    for w in a.h:
        m = order.elem_mul_matrix(w)
        for i in range(n):
            rows.append([m[j][i] for j in range(n)])
    hs = hnf_square(rows, p)
    g, d = lower_tri_inverse(hs, p)
    L = [[g[j][i] * a.den for j in range(n)] for i in range(n)]
    return Ideal(order, L, d)


class PrimeIdeal(Ideal):
    """Prime of an order above the monic irreducible q of K[x]."""

    __slots__ = ("q", "e", "f", "_pows", "_inv", "_inv_pows")

    def __init__(self, order: Order, rows, q: Poly, f: int, e: int = None):
        super().__init__(order, rows)
        if not self.den.is_one():
            raise ArithmeticError("prime ideal must be integral")
        self.q = q
        self.e = e
        self.f = f
        self._pows = None
        self._inv = None
        self._inv_pows = None

    def degree(self) -> int:
        """Residue degree over the constant field."""
        return self.q.deg * self.f

    def _in_power(self, c, k: int) -> bool:
        return in_lattice(c, self.power(k).h, self.order.p) is not None

    def val_coords(self, c) -> int:
        """Valuation of the integral element with order coordinates c.

        Gallops on membership in memoized powers of the prime, so the
        cost is logarithmic in the valuation instead of linear.
        """
        if all(e.is_zero() for e in c):
            raise ZeroDivisionError("valuation of zero")
        if not self._in_power(c, 1):
            return 0
        lo, hi = 1, 2
        while self._in_power(c, hi):
            lo, hi = hi, hi * 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._in_power(c, mid):
                lo = mid
            else:
                hi = mid
        return lo

    def val_fraction(self, c, cden: Poly) -> int:
        return self.val_coords(c) - self.e * _q_multiplicity(cden, self.q)

    def val_ideal(self, ideal: Ideal) -> int:
        v = min(self.val_coords(row) for row in ideal.h)
        return v - self.e * _q_multiplicity(ideal.den, self.q)

    def power(self, k: int) -> Ideal:
        # memoized both ways; extension is setup work, kept out of counters
        if self._pows is None:
            self._pows = [ideal_one(self.order), Ideal(self.order, self.h)]
        if k >= 0:
            pows = self._pows
            while len(pows) <= k:
                pows.append(_ideal_mul_raw(pows[-1], pows[1]))
            return pows[k]
        if self._inv is None:
            self._inv = ideal_inv(self)
            self._inv_pows = [ideal_one(self.order), self._inv]
        pows = self._inv_pows
        while len(pows) <= -k:
            pows.append(_ideal_mul_raw(pows[-1], pows[1]))
        return pows[-k]


# -- discriminant and the round-two construction -------------------------


def separant_coeffs(field):
    """Coefficients of df/dt, highest degree last, or None if zero."""
    p = field.p
    n = field.n
    fc = list(field.coeffs) + [Poly.one(p)]
    dcs = [fc[i].scale(i % p) for i in range(1, n + 1)]
    while dcs and dcs[-1].is_zero():
        dcs.pop()
    return dcs or None


def discriminant_support(field) -> Poly:
    """Resultant of f and df/dt with respect to t, as a monic polynomial."""
    p = field.p
    n = field.n
    fc = list(field.coeffs) + [Poly.one(p)]
    dcs = separant_coeffs(field)
    if dcs is None:
        raise ArithmeticError("defining polynomial is inseparable")
    dp = len(dcs) - 1
    size = n + dp
    zero = Poly.zero(p)
    frow = fc[::-1]
    grow = dcs[::-1]
    rows = []
    for i in range(dp):
        rows.append([zero] * i + frow + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + grow + [zero] * (size - dp - 1 - i))
    det = bareiss_det(rows, p)
    if det.is_zero():
        raise ArithmeticError("vanishing discriminant")
    return det.monic()


def _fbar(field, ctx: Fq):
    return [ctx.reduce(c) for c in field.coeffs] + [ctx.one()]


def _dedekind_q_maximal(field, q: Poly) -> bool:
    """Dedekind criterion: is the equation order maximal at q?"""
    p = field.p
    ctx = Fq(q)
    fbar = _fbar(field, ctx)
    _, facs = fqp_factor(ctx, fbar)
    gbar = [ctx.one()]
    for gi, _ in facs:
        gbar = fqp_mul(ctx, gbar, gi)
    hbar, rem = fqp_divmod(ctx, fbar, gbar)
    if not fqp_is_zero(rem):
        raise ArithmeticError("inexact division in residue factorization")
    # natural lifts: residue coefficients are already polynomials of
    # degree < deg q
    flist = list(field.coeffs) + [Poly.one(p)]
    prod = _bt_mul(list(gbar), list(hbar), p, None)
    diff = _bt_sub(prod, flist, p)
    F = [c.exact_div(q) for c in diff]
    Fbar = fqp_trim([ctx.reduce(c) for c in F])
    z = fqp_gcd(ctx, fqp_gcd(ctx, gbar, hbar), Fbar)
    return fqp_deg(z) <= 0


def _pow_coords_mod(order: Order, v, e: int, q: Poly):
    result = _vec_mod(order.one_coords, q)
    base = _vec_mod(v, q)
    while e:
        if e & 1:
            result = _vec_mod(order.mul_coords(result, base), q)
        e >>= 1
        if e:
            base = _vec_mod(order.mul_coords(base, base), q)
    return result


def _radical_ideal(order: Order, q: Poly) -> Ideal:
    """q-radical of the order, containing q * O."""
    p, n = order.p, order.n
    qp = p ** q.deg
    Q = qp
    while Q < n:
        Q *= qp
    frob = []
    for i in range(n):
        ei = [Poly.one(p) if j == i else Poly.zero(p) for j in range(n)]
        frob.append(_pow_coords_mod(order, ei, Q, q))
    stack = list(frob)
    for i in range(n):
        stack.append([q if j == i else Poly.zero(p) for j in range(n)])
    ker = left_kernel(stack, p)
    return Ideal(order, [row[:n] for row in ker])


def _maximalize_at(order: Order, q: Poly) -> Order:
    field = order.field
    p, n = order.p, order.n
    qid_key = mat_key([[q if i == j else Poly.zero(p) for j in range(n)]
                       for i in range(n)])
    for _ in range(500):
        rad = _radical_ideal(order, q)
        mats = [order.elem_mul_matrix(w) for w in rad.h]
        rhs = [[e * q for e in row] for row in rad.h]
        L = _colon_lattice(order, mats, rhs)
        if mat_key(L) == qid_key:
            return order
        rows = mat_mul(L, order.basis, p)
        order = Order(field, rows, q * order.den)
    raise ArithmeticError("order enlargement did not stabilize")


def maximal_order(field) -> Order:
    p, n = field.p, field.n
    disc = discriminant_support(field)
    _, facs = poly_factor(disc)
    rows = [[Poly.one(p) if i == j else Poly.zero(p) for j in range(n)]
            for i in range(n)]
    order = Order(field, rows, Poly.one(p))
    for q, mult in facs:
        if mult < 2:
            continue
        if _dedekind_q_maximal(field, q):
            continue
        order = _maximalize_at(order, q)
    return order


# -- prime decomposition -------------------------------------------------


def _decompose_kummer(order: Order, q: Poly):
    field = order.field
    p = order.p
    ctx = Fq(q)
    _, facs = fqp_factor(ctx, _fbar(field, ctx))
    primes = []
    for gbar, e in facs:
        vec = field.reduce_tpoly(list(gbar))
        c = order.from_power(vec)
        if c is None:
            raise ArithmeticError("lift left the order")
        rows = order.elem_mul_matrix(c)
        for i in range(order.n):
            rows.append([q if j == i else Poly.zero(p)
                         for j in range(order.n)])
        primes.append(PrimeIdeal(order, rows, q, f=fqp_deg(gbar), e=e))
    return primes


def _decompose_radical_split(order: Order, q: Poly):
    """Primes above q through the semisimple quotient O / rad(qO)."""
    p, n = order.p, order.n
    d = q.deg
    rad = _radical_ideal(order, q)
    h = rad.h
    qpos = [j for j in range(n) if h[j][j].deg > 0]
    if not qpos:
        raise ArithmeticError("radical equals the order")
    dimv = d * len(qpos)
    slot = {j: i for i, j in enumerate(qpos)}

    def flat(coords):
        v = _reduce_mod_lattice(coords, h)
        out = np.zeros(dimv, dtype=np.int64)
        for j in qpos:
            cs = v[j].coeffs
            out[slot[j] * d:slot[j] * d + len(cs)] = cs
        return out

    def unflat(vec):
        coords = [Poly.zero(p)] * n
        for j in qpos:
            coords[j] = Poly(vec[slot[j] * d:(slot[j] + 1) * d], p)
        return coords

    def vmul(a, b):
        prod = order.mul_coords(unflat(a), unflat(b))
        return flat(_vec_mod(prod, q))

    one_f = flat(order.one_coords)
    seed = int.from_bytes(q.key(), "little") % (1 << 31)
    rng = random.Random(seed ^ p)
    work = [(np.eye(dimv, dtype=np.int64), one_f)]
    done = []
    guard = 0
    while work:
        guard += 1
        if guard > 200 * max(n, 2):
            raise ArithmeticError("component splitting did not converge")
        basis, ident = work.pop()
        dim = len(basis)
        if dim % d != 0:
            raise ArithmeticError("component dimension mismatch")
        if dim == d:
            done.append(basis)
            continue
        zvec = np.array([rng.randrange(p) for _ in range(dim)],
                        dtype=np.int64)
        z = _matmul_mod(zvec, basis, p)
        if not z.any():
            work.append((basis, ident))
            continue
        pows = [ident]
        loc_rows = [fp_solve(basis, ident, p)]
        cur = ident
        mu = None
        for _ in range(dim):
            cur = vmul(cur, z)
            lc = fp_solve(basis, cur, p)
            if lc is None:
                raise ArithmeticError("component is not closed")
            dep = fp_solve(np.array(loc_rows), lc, p)
            if dep is not None:
                mu = Poly([(-int(t)) % p for t in dep] + [1], p)
                break
            loc_rows.append(lc)
            pows.append(cur)
        if mu is None:
            raise ArithmeticError("minimal polynomial not found")
        _, mfacs = poly_factor(mu)
        if any(m > 1 for _, m in mfacs):
            raise ArithmeticError("quotient is not semisimple")
        if len(mfacs) == 1:
            if mfacs[0][0].deg == dim:
                done.append(basis)
            else:
                # the sample generated a proper subfield; try another
                work.append((basis, ident))
            continue
        for hpoly, _ in mfacs:
            w = np.zeros(dimv, dtype=np.int64)
            for i, cf in enumerate(hpoly.coeffs):
                if cf:
                    w = (w + cf * pows[i]) % p
            rows = [fp_solve(basis, vmul(b, w), p) for b in basis]
            ker = fp_kernel(np.array(rows), p)
            if not (0 < len(ker) < dim):
                raise ArithmeticError("degenerate split")
            kbasis = _matmul_mod(ker, basis, p)
            kd = len(kbasis)
            amat = np.zeros((kd, kd * dimv), dtype=np.int64)
            rhs = np.zeros(kd * dimv, dtype=np.int64)
            for j in range(kd):
                rhs[j * dimv:(j + 1) * dimv] = kbasis[j]
                for i in range(kd):
                    amat[i, j * dimv:(j + 1) * dimv] = vmul(kbasis[i],
                                                            kbasis[j])
            cvec = fp_solve(amat, rhs, p)
            if cvec is None:
                raise ArithmeticError("component has no identity")
            ide = _matmul_mod(cvec, kbasis, p)
            work.append((kbasis, ide))

    primes = []
    for l, bl in enumerate(done):
        rows = [list(row) for row in h]
        for m, bm in enumerate(done):
            if m == l:
                continue
            for vec in bm:
                rows.append(unflat(vec))
        primes.append(PrimeIdeal(order, rows, q, f=len(bl) // d))
    return primes


def decompose_prime(order: Order, q: Poly):
    """Primes of the maximal order above the monic irreducible q, sorted
    canonically, as PrimeIdeal objects with ramification data filled in."""
    ck = q.key()
    cached = order._decomp.get(ck)
    if cached is not None:
        return cached
    if q.divides(order.index_poly()):
        primes = _decompose_radical_split(order, q)
    else:
        primes = _decompose_kummer(order, q)
    qone = [e * q for e in order.one_coords]
    for pr in primes:
        ev = pr.val_coords(qone)
        if pr.e is not None and pr.e != ev:
            raise ArithmeticError("inconsistent ramification index")
        pr.e = ev
    if sum(pr.e * pr.f for pr in primes) != order.n:
        raise ArithmeticError("e*f does not sum to the degree")
    primes.sort(key=lambda pr: (pr.e, pr.f, pr.key()))
    order._decomp[ck] = primes
    return primes
