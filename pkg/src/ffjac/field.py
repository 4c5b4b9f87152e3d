"""Function fields K(x)[t]/(f) for K = F_p.

f is monic in t with K[x] coefficients, f = t^n + a_{n-1} t^{n-1} + ... +
a_0. The field carries the twist exponent e = max over nonzero a_i of
ceil(deg a_i / (n - i)); substituting x = 1/u, t = s/u^e turns f into a
second monic model over K[u] whose integral closure describes the places
over the degree valuation. Elements are stored as coordinate rows in the
power basis 1, t, ..., t^{n-1} over K(x) with a cleared denominator.
"""

from __future__ import annotations

import json

from .polys import (
    Poly,
    RatFunc,
    poly_gcd,
    poly_is_irreducible,
    poly_xgcd,
)
from .polymat import bareiss_det


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d = m - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def compute_cf(coeffs, n: int) -> int:
    """Twist exponent: max of ceil(deg a_i / (n - i)) over nonzero a_i."""
    e = 1
    for i, a in enumerate(coeffs):
        if a.is_zero():
            continue
        need = -((-a.deg) // (n - i))  # ceil division
        if need > e:
            e = need
    return e


class FunctionField:
    """K(x)[t]/(f) with f = t^n + sum coeffs[i] * t^i."""

    __slots__ = (
        "p",
        "n",
        "coeffs",
        "cf",
        "_tpow",
        "_inf_model",
        "_fin_order",
        "_inf_order",
        "_genus",
        "_inf_places",
    )

    def __init__(self, coeffs, p: int, check: bool = True):
        if not _is_prime(p) or p >= 1 << 31:
            raise ValueError("p must be a prime below 2^31")
        coeffs = tuple(
            c if isinstance(c, Poly) else Poly(c, p) for c in coeffs
        )
        n = len(coeffs)
        if n < 2:
            raise ValueError("need degree at least 2 in t")
        for c in coeffs:
            if c.p != p:
                raise ValueError("coefficient field mismatch")
        if check and not is_irreducible(coeffs, p):
            raise ValueError("defining polynomial is reducible")
        self.p = p
        self.n = n
        self.coeffs = coeffs
        self.cf = compute_cf(coeffs, n)
        self._tpow = None
        self._inf_model = None
        self._fin_order = None
        self._inf_order = None
        self._genus = None
        self._inf_places = None

    # -- basic structure ------------------------------------------------

    def key(self) -> bytes:
        parts = [b"%d,%d:" % (self.p, self.n)]
        parts.extend(c.key() for c in self.coeffs)
        return b"|".join(parts)

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "FunctionField(p=%d, n=%d, cf=%d)" % (self.p, self.n, self.cf)

    def specialize(self, c: int) -> Poly:
        """f(c, t) as a univariate polynomial over F_p."""
        vals = [a.evaluate(c) for a in self.coeffs] + [1]
        return Poly(vals, self.p)

    def _tpow_table(self):
        # coordinate rows of t^k mod f for k = n .. 2n-2
        if self._tpow is None:
            n = self.n
            rows = []
            cur = [-a for a in self.coeffs]  # t^n
            rows.append(list(cur))
            for _ in range(n - 2):
                top = cur[n - 1]
                nxt = [Poly.zero(self.p)] + cur[: n - 1]
                if not top.is_zero():
                    for i in range(n):
                        nxt[i] = nxt[i] - top * self.coeffs[i]
                rows.append(nxt)
                cur = nxt
            self._tpow = rows
        return self._tpow

    def reduce_tpoly(self, clist):
        """Coordinates of sum clist[k] t^k, len(clist) <= 2n-1."""
        n = self.n
        out = list(clist[:n])
        while len(out) < n:
            out.append(Poly.zero(self.p))
        table = self._tpow_table()
        for k in range(n, len(clist)):
            c = clist[k]
            if c.is_zero():
                continue
            row = table[k - n]
            for i in range(n):
                if not row[i].is_zero():
                    out[i] = out[i] + c * row[i]
        return out

    # -- twist / infinite model ------------------------------------------

    def twist_coeffs(self):
        """Coefficients of the model at infinity over K[u]."""
        e = self.cf
        n = self.n
        out = []
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                out.append(a)
                continue
            shift = e * (n - i) - a.deg
            out.append(a.reverse(a.deg).shift(shift))
        return out

    def infinite_model(self) -> "FunctionField":
        if self._inf_model is None:
            self._inf_model = FunctionField(
                self.twist_coeffs(), self.p, check=False
            )
        return self._inf_model

    def elem(self, num, den=None) -> "FFElem":
        return FFElem(self, num, den)

    def one(self) -> "FFElem":
        num = [Poly.one(self.p)] + [Poly.zero(self.p)] * (self.n - 1)
        return FFElem(self, num)

    def zero(self) -> "FFElem":
        return FFElem(self, [Poly.zero(self.p)] * self.n)

    def gen(self) -> "FFElem":
        num = [Poly.zero(self.p)] * self.n
        num[1] = Poly.one(self.p)
        return FFElem(self, num)

    # -- lazy heavy structure ---------------------------------------------

    def finite_order(self):
        if self._fin_order is None:
            from .orders import maximal_order

            self._fin_order = maximal_order(self)
        return self._fin_order

    def infinite_order(self):
        if self._inf_order is None:
            from .orders import maximal_order

            self._inf_order = maximal_order(self.infinite_model())
        return self._inf_order

    def genus(self) -> int:
        if self._genus is None:
            from .riemann_roch import compute_genus

            self._genus = compute_genus(self)
        return self._genus

    def genus_bound(self) -> int:
        return ((self.cf * self.n - 2) * (self.n - 1)) // 2

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "coeffs": [[int(v) for v in a.c] for a in self.coeffs],
        }

    @staticmethod
    def from_dict(d: dict, check: bool = True) -> "FunctionField":
        p = int(d["p"])
        n = int(d["n"])
        coeffs = [Poly(c, p) for c in d["coeffs"]]
        if len(coeffs) != n:
            raise ValueError("coefficient count does not match degree")
        return FunctionField(coeffs, p, check=check)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_json(s: str, check: bool = True) -> "FunctionField":
        return FunctionField.from_dict(json.loads(s), check=check)


def make_field(p: int, n: int, coeffs, check: bool = True) -> FunctionField:
    """Validated construction from integer coefficient lists or Polys."""
    coeffs = [c if isinstance(c, Poly) else Poly(c, p) for c in coeffs]
    if len(coeffs) != n:
        raise ValueError("expected %d coefficients, got %d" % (n, len(coeffs)))
    return FunctionField(coeffs, p, check=check)


class FFElem:
    """Element in power-basis coordinates num/den, den in K[x]."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num, den=None):
        p = field.p
        num = [c if isinstance(c, Poly) else Poly(c, p) for c in num]
        if len(num) != field.n:
            raise ValueError("coordinate count mismatch")
        if den is None:
            den = Poly.one(p)
        elif not isinstance(den, Poly):
            den = Poly(den, p)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = den
        for c in num:
            g = poly_gcd(g, c)
            if g.deg == 0:
                break
        if g.deg > 0:
            num = [c.exact_div(g) for c in num]
            den = den.exact_div(g)
        lc = den.lc
        if lc != 1:
            from .polys import _inv_mod

            inv = _inv_mod(lc, p)
            num = [c.scale(inv) for c in num]
            den = den.scale(inv)
        self.field = field
        self.num = tuple(num)
        self.den = den

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.num)

    def key(self) -> bytes:
        parts = [self.den.key()]
        parts.extend(c.key() for c in self.num)
        return b"|".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, FFElem)
            and self.field == other.field
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        self._check(other)
        da, db = self.den, other.den
        num = [a * db + b * da for a, b in zip(self.num, other.num)]
        return FFElem(self.field, num, da * db)

    def __sub__(self, other):
        self._check(other)
        da, db = self.den, other.den
        num = [a * db - b * da for a, b in zip(self.num, other.num)]
        return FFElem(self.field, num, da * db)

    def __neg__(self):
        return FFElem(self.field, [-c for c in self.num], self.den)

    def __mul__(self, other):
        self._check(other)
        n = self.field.n
        conv = [Poly.zero(self.field.p)] * (2 * n - 1)
        for i, a in enumerate(self.num):
            if a.is_zero():
                continue
            for j, b in enumerate(other.num):
                if not b.is_zero():
                    conv[i + j] = conv[i + j] + a * b
        red = self.field.reduce_tpoly(conv)
        return FFElem(self.field, red, self.den * other.den)

    def mul_matrix_rows(self):
        """Rows over K[x]: coordinates of num * t^j for j = 0..n-1."""
        n = self.field.n
        rows = []
        for j in range(n):
            clist = [Poly.zero(self.field.p)] * j + list(self.num)
            rows.append(self.field.reduce_tpoly(clist))
        return rows

    def norm(self) -> RatFunc:
        det = bareiss_det(self.mul_matrix_rows(), self.field.p)
        dpow = self.den ** self.field.n
        return RatFunc(det, dpow)

    def inverse(self) -> "FFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        one = Poly.one(f.p)
        fc = [RatFunc(a, one) for a in f.coeffs] + [RatFunc(one, one)]
        ac = [RatFunc(a, one) for a in self.num]
        g, s = _rt_half_xgcd(ac, fc, f.p)
        if len(g) != 1:
            raise ArithmeticError("element not invertible; f reducible?")
        ginv = g[0].inverse()
        vals = [c * ginv for c in s]
        while len(vals) < f.n:
            vals.append(RatFunc(Poly.zero(f.p), one))
        vals = vals[: f.n]
        den_lcm = one
        for v in vals:
            den_lcm = den_lcm.exact_div(poly_gcd(den_lcm, v.den)) * v.den
        num = [v.num * den_lcm.exact_div(v.den) for v in vals]
        # self = num_row / den: inverse = den * (num_row)^{-1}
        num = [c * self.den for c in num]
        return FFElem(f, num, den_lcm)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c.is_zero():
                continue
            terms.append("(%s)t^%d" % (c, i))
        body = " + ".join(terms) if terms else "0"
        return "FFElem((%s) / (%s))" % (body, self.den)


# -- rational-coefficient polynomial helpers (cold path, tiny degrees) ------


def _rt_trim(f):
    while f and f[-1].is_zero():
        f.pop()
    return f


def _rt_zero(p):
    return RatFunc(Poly.zero(p), Poly.one(p))


def _rt_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    q = [_rt_zero(p)] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] * inv
        q[k] = c
        for i in range(db + 1):
            a[k + i] = a[k + i] - c * b[i]
        _rt_trim(a)
    return q, a


def _rt_half_xgcd(a, b, p):
    """gcd and first Bezout coefficient for t-polynomials over K(x)."""
    zero = _rt_zero(p)
    one = RatFunc(Poly.one(p), Poly.one(p))
    r0, r1 = list(a), list(b)
    s0, s1 = [one], []
    while r1:
        q, r = _rt_divmod(r0, r1, p)
        r0, r1 = r1, r
        prod = _rt_mul_q(q, s1, zero)
        s0, s1 = s1, _rt_sub(s0, prod, zero)
    return r0, s0


def _rt_mul_q(q, s, zero):
    if not q or not s:
        return []
    out = [zero] * (len(q) + len(s) - 1)
    for i, c in enumerate(q):
        if c.is_zero():
            continue
        for j, d in enumerate(s):
            out[i + j] = out[i + j] + c * d
    return _rt_trim(out)


def _rt_sub(a, b, zero):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x - y)
    return _rt_trim(out)


# -- irreducibility ---------------------------------------------------------


def _bt_trim(f):
    while f and f[-1].is_zero():
        f.pop()
    return f


def _bt_trunc(f, cap):
    if cap is None:
        return f
    from .polys import _mk, _trim

    out = []
    for c in f:
        if c.deg >= cap:
            out.append(_mk(_trim(c.c[:cap].copy()), c.p))
        else:
            out.append(c)
    return _bt_trim(out)


def _bt_add(a, b, p):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else Poly.zero(p)
        y = b[i] if i < len(b) else Poly.zero(p)
        out.append(x + y)
    return _bt_trim(out)


def _bt_mul(a, b, p, cap):
    if not a or not b:
        return []
    out = [Poly.zero(p)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c.is_zero():
            continue
        for j, d in enumerate(b):
            if not d.is_zero():
                out[i + j] = out[i + j] + c * d
    return _bt_trunc(out, cap) if cap is not None else _bt_trim(out)


def _bt_sub(a, b, p):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else Poly.zero(p)
        y = b[i] if i < len(b) else Poly.zero(p)
        out.append(x - y)
    return _bt_trim(out)


def _bt_divmod(a, b, p, cap):
    """Division by b monic in t (leading coefficient the constant 1)."""
    a = list(a)
    db = len(b) - 1
    q = [Poly.zero(p)] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1]
        q[k] = c
        for i in range(db + 1):
            prod = c * b[i]
            a[k + i] = a[k + i] - prod
        a = _bt_trunc(a, cap) if cap is not None else a
        _bt_trim(a)
    return _bt_trim(q), a


def _uni_to_bt(f: Poly, p: int):
    return [Poly.const(int(c), p) for c in f.c]


def _hensel_tree(fT, facs, p, cap):
    """Lift the pairwise-coprime monic factorization of fT mod x to x^cap."""
    if len(facs) == 1:
        return [_bt_trunc(fT, cap)]
    half = len(facs) // 2
    left, right = facs[:half], facs[half:]
    g0 = Poly.one(p)
    for q in left:
        g0 = g0 * q
    h0 = Poly.one(p)
    for q in right:
        h0 = h0 * q
    g, h = _hensel_pair(fT, g0, h0, p, cap)
    return _hensel_tree(g, left, p, cap) + _hensel_tree(h, right, p, cap)


def _hensel_pair(fT, g0, h0, p, cap):
    """One coprime pair lifted x-adically from mod x to mod x^cap."""
    gcdv, s0, t0 = poly_xgcd(g0, h0)
    if gcdv.deg != 0:
        raise ArithmeticError("modular factors not coprime")
    g = _uni_to_bt(g0, p)
    h = _uni_to_bt(h0, p)
    s = _uni_to_bt(s0, p)
    t = _uni_to_bt(t0, p)
    m = 1
    while m < cap:
        m2 = min(2 * m, cap)
        e = _bt_sub(_bt_trunc(fT, m2), _bt_mul(g, h, p, m2), p)
        if e:
            q, r = _bt_divmod(_bt_mul(s, e, p, m2), h, p, m2)
            te = _bt_mul(t, e, p, m2)
            qg = _bt_mul(q, g, p, m2)
            g = _bt_trunc(_bt_add(_bt_add(g, te, p), qg, p), m2)
            h = _bt_trunc(_bt_add(h, r, p), m2)
        b = _bt_sub(
            _bt_add(_bt_mul(s, g, p, m2), _bt_mul(t, h, p, m2), p),
            [Poly.one(p)],
            p,
        )
        if b:
            c, d = _bt_divmod(_bt_mul(s, b, p, m2), h, p, m2)
            s = _bt_sub(s, d, p)
            tb = _bt_mul(t, b, p, m2)
            cg = _bt_mul(c, g, p, m2)
            t = _bt_sub(_bt_sub(t, tb, p), cg, p)
        m = m2
    if not g or g[-1] != Poly.one(p):
        raise ArithmeticError("lift lost monicity")
    return g, h


def _field_gcd_t(coeffs_full, p):
    """gcd in t of f and df/dt over K(x); returns the t-degree."""
    one = Poly.one(p)
    a = [RatFunc(c, one) for c in coeffs_full]
    b = []
    for i in range(1, len(coeffs_full)):
        b.append(RatFunc(coeffs_full[i].scale(i % p), one))
    _rt_trim(b)
    if not b:
        return -1
    r0, r1 = a, b
    while r1:
        _, r = _rt_divmod(r0, r1, p)
        r0, r1 = r1, r
    return len(r0) - 1


def is_irreducible(coeffs, p: int, _twisted: bool = False) -> bool:
    """Whether t^n + sum coeffs[i] t^i is irreducible over F_p(x).

    Fast path: an irreducible specialization at some point of F_p or a
    small extension proves irreducibility. Decisive path: lift the
    factorization at a squarefree specialization point x-adically and
    test every recombination of the lifted factors by exact division.
    When no squarefree point exists in F_p the same test runs once on
    the model at infinity, which adds the point over u = 0; only if that
    model has no squarefree rational point either does this raise
    ArithmeticError (possible only for tiny p).
    """
    coeffs = tuple(c if isinstance(c, Poly) else Poly(c, p) for c in coeffs)
    n = len(coeffs)
    if n == 0:
        raise ValueError("constant polynomial")
    if n == 1:
        return True

    # derivative in t identically zero: f = h(t^p)
    if n % p == 0 and all(coeffs[i].is_zero() for i in range(n) if i % p):
        h = [coeffs[i] for i in range(0, n, p)]
        # f reducible iff h reducible or every coefficient of h is a p-th
        # power in K = F_p(x), i.e. only exponents divisible by p occur
        all_pth = True
        for c in h:
            if any(int(v) and (k % p) for k, v in enumerate(c.c)):
                all_pth = False
                break
        if all_pth:
            return False
        return is_irreducible(h, p)

    full = list(coeffs) + [Poly.one(p)]
    gdeg = _field_gcd_t(full, p)
    if gdeg >= 1:
        return False  # not squarefree over K(x), so a proper square factor

    def spec(c):
        return Poly([a.evaluate(c) for a in coeffs] + [1], p)

    # fast accept at rational points
    pts = list(range(min(p, 40)))
    if p > 40:
        step = p // 40
        pts.extend(range(40, p, max(step, 1)))
        pts = pts[:80]
    good = None
    for c in pts:
        fc = spec(c)
        if poly_is_irreducible(fc):
            return True
        if poly_gcd(fc, fc.derivative()).deg == 0:
            if good is None:
                good = c
    if good is None:
        for c in range(p):
            fc = spec(c)
            if poly_gcd(fc, fc.derivative()).deg == 0:
                good = c
                break
    if good is None and p <= 16:
        # fast accept at small extension points before giving up
        from .extpoly import fqp_is_irreducible, make_field_ext

        for d in (2, 3, 4):
            ctx = make_field_ext(p, d)
            for trial in range(ctx.order):
                v = trial
                cc = []
                for _ in range(d):
                    cc.append(v % p)
                    v //= p
                pt = Poly(cc, p)
                fc = [_horner_ext(ctx, a, pt) for a in coeffs]
                fc.append(ctx.one())
                while fc and fc[-1].is_zero():
                    fc.pop()
                if fqp_is_irreducible(ctx, fc):
                    return True
    if good is None and not _twisted:
        # same field presented over K[u]; a monic factorization transfers
        # both ways, and u = 0 is a fresh specialization point
        e = compute_cf(coeffs, n)
        tw = []
        for i, a in enumerate(coeffs):
            if a.is_zero():
                tw.append(a)
            else:
                tw.append(a.reverse(a.deg).shift(e * (n - i) - a.deg))
        return is_irreducible(tw, p, _twisted=True)
    if good is None:
        raise ArithmeticError(
            "no squarefree specialization point in F_p; cannot decide"
        )

    # decisive: shift so the good point is x = 0, lift, recombine
    shifted = [_taylor_shift(a, good) for a in coeffs]
    cf = compute_cf(coeffs, n)
    cap = n * cf + 1
    f0 = Poly([a.evaluate(0) for a in shifted] + [1], p)
    from .polys import poly_factor

    lead, facs0 = poly_factor(f0, seed=2)
    assert lead == 1 and all(m == 1 for _, m in facs0)
    mods = [g for g, _ in facs0]
    if len(mods) == 1:
        # specialization irreducible would have been caught above
        return True

    fT = list(shifted) + [Poly.one(p)]
    lifted = _hensel_tree(fT, mods, p, cap)
    r = len(lifted)
    from itertools import combinations

    for size in range(1, r // 2 + 1):
        for picks in combinations(range(r), size):
            cand = [Poly.one(p)]
            for i in picks:
                cand = _bt_mul(cand, lifted[i], p, cap)
            # exact bivariate trial division, no truncation
            _, rr = _bt_divmod(fT, cand, p, None)
            if not rr:
                return False
    return True


def _taylor_shift(a: Poly, c: int) -> Poly:
    """a(x + c) by Horner over F_p."""
    if c == 0 or a.is_zero():
        return a
    p = a.p
    x_plus = Poly([c % p, 1], p)
    acc = Poly.zero(p)
    for v in a.c[::-1]:
        acc = acc * x_plus + Poly.const(int(v), p)
    return acc


def _horner_ext(ctx, a: Poly, pt: Poly) -> Poly:
    acc = ctx.zero()
    for v in a.c[::-1]:
        acc = ctx.reduce(acc * pt + Poly.const(int(v), ctx.p))
    return acc
