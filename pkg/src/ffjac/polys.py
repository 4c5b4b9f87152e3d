"""Dense univariate polynomial arithmetic over prime fields F_p.

Coefficients are stored as numpy int64 arrays of residues, lowest degree
first, with the zero polynomial represented by the empty array (so the zero
polynomial never contributes a degree to any maximum). Products go through
numpy convolution when p is small enough that convolution sums cannot
overflow int64, and through Kronecker substitution on Python big ints
otherwise, so every prime p < 2^31 is exact.

All values are immutable; every operation returns fresh objects, so objects
can be shared freely across threads.
"""

from __future__ import annotations

import numpy as np

# Above this modulus a convolution sum of int64 products could overflow,
# products switch to Kronecker substitution on Python ints.
_CONV_LIMIT = 1 << 21

_ZERO = np.zeros(0, dtype=np.int64)


def _inv_mod(a: int, p: int) -> int:
    """Inverse of a modulo p by extended Euclid. Raises on a == 0 mod p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of zero in F_%d" % p)
    return pow(a, -1, p)


class FieldElem:
    """An element of F_p, p prime. Residues are canonical in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _check(self, other: "FieldElem") -> None:
        if self.p != other.p:
            raise ValueError("field mismatch: F_%d vs F_%d" % (self.p, other.p))

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.value - other.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.value * other.value, self.p)

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> "FieldElem":
        return FieldElem(_inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.p == other.p
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "FieldElem(%d, p=%d)" % (self.value, self.p)


def fe_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def fe_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def fe_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def _trim(c: np.ndarray) -> np.ndarray:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n] if n < len(c) else c


class Poly:
    """Polynomial over F_p, coefficients lowest degree first."""

    __slots__ = ("p", "c")

    def __init__(self, coeffs, p: int):
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
            c = coeffs % p
        else:
            c = np.asarray([int(v) % p for v in coeffs], dtype=np.int64)
        c = _trim(c)
        self.p = p
        self.c = c
        c.setflags(write=False)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def zero(p: int) -> "Poly":
        return _mk(_ZERO, p)

    @staticmethod
    def one(p: int) -> "Poly":
        return _mk(np.ones(1, dtype=np.int64), p)

    @staticmethod
    def const(v: int, p: int) -> "Poly":
        return Poly([v], p)

    @staticmethod
    def x(p: int) -> "Poly":
        return Poly([0, 1], p)

    @staticmethod
    def x_pow(k: int, p: int) -> "Poly":
        c = np.zeros(k + 1, dtype=np.int64)
        c[k] = 1
        return _mk(c, p)

    # -- basic queries --------------------------------------------------------

    @property
    def deg(self) -> int:
        """Degree; -1 for the zero polynomial (kept out of maxima by callers)."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def is_const(self) -> bool:
        return len(self.c) <= 1

    @property
    def lc(self) -> int:
        """Leading coefficient as an int residue; 0 for the zero polynomial."""
        return int(self.c[-1]) if len(self.c) else 0

    def coeff(self, k: int) -> int:
        return int(self.c[k]) if 0 <= k < len(self.c) else 0

    @property
    def coeffs(self) -> tuple:
        return tuple(int(v) for v in self.c)

    def key(self) -> bytes:
        """Canonical bytes, usable as a dict key within one field."""
        return self.c.tobytes()

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        if len(b):
            out[: len(b)] = (out[: len(b)] + b) % self.p
        return _mk(_trim(out), self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        a, b = self.c, other.c
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=np.int64)
        out[: len(a)] = a
        if len(b):
            out[: len(b)] = (out[: len(b)] - b) % self.p
        return _mk(_trim(out), self.p)

    def __neg__(self) -> "Poly":
        return _mk((-self.c) % self.p, self.p)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b, p = self.c, other.c, self.p
        if len(a) == 0 or len(b) == 0:
            return _mk(_ZERO, p)
        if len(a) == 1:
            return _mk((b * int(a[0])) % p, p)
        if len(b) == 1:
            return _mk((a * int(b[0])) % p, p)
        if p < _CONV_LIMIT:
            return _mk(np.convolve(a, b) % p, p)
        return self._mul_kronecker(other)

    def _mul_kronecker(self, other: "Poly") -> "Poly":
        """Exact product via packing into one big integer; any p < 2^31."""
        p = self.p
        la, lb = len(self.c), len(other.c)
        bits = 2 * (p - 1).bit_length() + (min(la, lb)).bit_length() + 1
        pa = sum(int(v) << (bits * i) for i, v in enumerate(self.c))
        pb = sum(int(v) << (bits * i) for i, v in enumerate(other.c))
        prod = pa * pb
        mask = (1 << bits) - 1
        out = np.zeros(la + lb - 1, dtype=np.int64)
        for i in range(la + lb - 1):
            out[i] = (prod & mask) % p
            prod >>= bits
        return _mk(out, p)

    def scale(self, v: int) -> "Poly":
        v %= self.p
        if v == 0:
            return _mk(_ZERO, self.p)
        if v == 1:
            return self
        return _mk((self.c * v) % self.p, self.p)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero() or k == 0:
            return self
        out = np.zeros(len(self.c) + k, dtype=np.int64)
        out[k:] = self.c
        return _mk(out, self.p)

    def monic(self) -> "Poly":
        if self.is_zero() or self.lc == 1:
            return self
        return self.scale(_inv_mod(self.lc, self.p))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        out = Poly.one(self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- Euclidean structure ----------------------------------------------------

    def divmod(self, other: "Poly"):
        """Quotient and remainder; other must be nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        db, da = other.deg, self.deg
        if da < db:
            return _mk(_ZERO, p), self
        if db == 0:
            return self.scale(_inv_mod(other.lc, p)), _mk(_ZERO, p)
        inv_lc = _inv_mod(other.lc, p)
        rem = self.c.copy()
        q = np.zeros(da - db + 1, dtype=np.int64)
        b = other.c
        for k in range(da - db, -1, -1):
            coef = rem[k + db] % p
            if coef:
                coef = (coef * inv_lc) % p
                q[k] = coef
                rem[k : k + db + 1] = (rem[k : k + db + 1] - coef * b) % p
        return _mk(_trim(q), p), _mk(_trim(rem[:db]), p)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("exact_div with nonzero remainder")
        return q

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def derivative(self) -> "Poly":
        if self.deg < 1:
            return _mk(_ZERO, self.p)
        k = np.arange(1, len(self.c), dtype=np.int64)
        return _mk(_trim((self.c[1:] * k) % self.p), self.p)

    def evaluate(self, v: int) -> int:
        """Horner evaluation at an element of F_p."""
        acc = 0
        p = self.p
        v %= p
        for coef in self.c[::-1]:
            acc = (acc * v + int(coef)) % p
        return acc

    def reverse(self, n: int) -> "Poly":
        """x^n * f(1/x); n must be at least deg(f)."""
        if n < self.deg:
            raise ValueError("reverse length below degree")
        out = np.zeros(n + 1, dtype=np.int64)
        if len(self.c):
            out[n - self.deg :] = self.c[::-1]
        return _mk(_trim(out), self.p)

    def compose_xpow(self, k: int) -> "Poly":
        """f(x^k), k >= 1."""
        if k < 1:
            raise ValueError("compose_xpow needs k >= 1")
        if self.is_zero():
            return self
        out = np.zeros(self.deg * k + 1, dtype=np.int64)
        out[::k][: len(self.c)] = self.c
        return _mk(_trim(out), self.p)

    # -- comparisons ---------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.p == other.p
            and len(self.c) == len(other.c)
            and bool(np.all(self.c == other.c))
        )

    def __hash__(self):
        return hash((self.p, self.c.tobytes()))

    def __bool__(self):
        return len(self.c) != 0

    def __repr__(self):
        return "Poly(%s, p=%d)" % (poly_str(self), self.p)


def _mk(c: np.ndarray, p: int) -> Poly:
    obj = Poly.__new__(Poly)
    obj.p = p
    obj.c = c
    c.setflags(write=False)
    return obj


def poly_str(f: Poly, var: str = "x") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.deg, -1, -1):
        v = f.coeff(k)
        if v == 0:
            continue
        if k == 0:
            parts.append(str(v))
        elif k == 1:
            parts.append("%s%s" % ("" if v == 1 else "%d*" % v, var))
        else:
            parts.append("%s%s^%d" % ("" if v == 1 else "%d*" % v, var, k))
    return " + ".join(parts)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g, g the monic gcd."""
    p = a.p
    r0, r1 = a, b
    s0, s1 = Poly.one(p), Poly.zero(p)
    t0, t1 = Poly.zero(p), Poly.one(p)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = _inv_mod(r0.lc, p)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    """base^e mod mod, square and multiply."""
    out = Poly.one(base.p)
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def _pth_root(f: Poly) -> Poly:
    """For f = g(x^p) over F_p returns the p-th root h with h^p = f."""
    p = f.p
    return _mk(f.c[::p].copy(), p)


def poly_squarefree_decomposition(f: Poly):
    """List of (factor, multiplicity) with factor squarefree, char p aware."""
    p = f.p
    out = []
    if f.deg < 1:
        return out

    def rec(g: Poly, mult: int):
        if g.deg < 1:
            return
        dg = g.derivative()
        if dg.is_zero():
            rec(_pth_root(g), mult * p)
            return
        w = poly_gcd(g, dg)
        v = g.exact_div(w)  # product of squarefree part's factors
        k = 1
        while v.deg >= 1:
            h = poly_gcd(v, w)
            piece = v.exact_div(h)
            if piece.deg >= 1:
                out.append((piece.monic(), mult * k))
            v = h
            w = w.exact_div(h)
            k += 1
        if w.deg >= 1:
            rec(w, mult)

    rec(f.monic(), 1)
    return out


def _ddf(f: Poly):
    """Distinct degree factorization of squarefree monic f over F_p."""
    p = f.p
    out = []
    h = Poly.x(p) % f
    rem = f
    d = 0
    x = Poly.x(p)
    while rem.deg > 0:
        d += 1
        if 2 * d > rem.deg:
            out.append((rem, rem.deg))
            break
        h = poly_powmod(h, p, rem)
        g = poly_gcd(h - x, rem)
        if g.deg > 0:
            out.append((g, d))
            rem = rem.exact_div(g)
            h = h % rem
    return out


def _edf(f: Poly, d: int, rng) -> list:
    """Equal degree factorization: f squarefree monic, all factors degree d."""
    p = f.p
    n = f.deg
    if n == d:
        return [f]
    work = [f]
    out = []
    while work:
        g = work.pop()
        if g.deg == d:
            out.append(g)
            continue
        r = Poly([rng.randrange(p) for _ in range(g.deg)], p)
        if r.deg < 1:
            work.append(g)
            continue
        if p == 2:
            # trace map splits products of degree-d factors in char 2
            t = r % g
            acc = t
            for _ in range(d - 1):
                t = (t * t) % g
                acc = (acc + t) % g
            cand = poly_gcd(acc, g)
        else:
            e = (p**d - 1) // 2
            cand = poly_gcd(poly_powmod(r, e, g) - Poly.one(p), g)
        if 0 < cand.deg < g.deg:
            work.append(cand)
            work.append(g.exact_div(cand))
        else:
            work.append(g)
    return out


def poly_factor(f: Poly, seed: int = 1):
    """Full factorization into monic irreducibles.

    Returns (lc, [(irreducible, multiplicity), ...]) sorted by (degree, key)
    so the result is deterministic for a fixed seed.
    """
    import random

    rng = random.Random(seed)
    if f.is_zero():
        raise ValueError("factor of zero polynomial")
    lead = f.lc
    out = []
    for sq, mult in poly_squarefree_decomposition(f):
        for part, d in _ddf(sq):
            for irr in _edf(part, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (t[0].deg, t[0].key()))
    return lead, out


def poly_is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^{p^n} = x mod f and gcd conditions at maximal subdegrees."""
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    p = f.p
    n = f.deg
    x = Poly.x(p)
    primes = set()
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    for q in primes:
        h = x
        for _ in range(n // q):
            h = poly_powmod(h, p, f)
        if poly_gcd(h - x, f).deg != 0:
            return False
    h = x
    for _ in range(n):
        h = poly_powmod(h, p, f)
    return (h - x) % f == Poly.zero(p)


def enumerate_monic_irreducibles(p: int, d: int):
    """Yield every monic irreducible of degree d over F_p (p^d candidates)."""
    base = np.zeros(d + 1, dtype=np.int64)
    base[d] = 1
    for idx in range(p**d):
        c = base.copy()
        v = idx
        for k in range(d):
            c[k] = v % p
            v //= p
        f = _mk(c, p)
        if d == 1 or poly_is_irreducible(f):
            yield f


class RatFunc:
    """Rational function num/den over F_p, canonical: den monic, coprime."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None, reduce: bool = True):
        if den is None:
            den = Poly.one(num.p)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = Poly.one(num.p)
            else:
                g = poly_gcd(num, den)
                if g.deg > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                if den.lc != 1:
                    inv = _inv_mod(den.lc, den.p)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(f: Poly) -> "RatFunc":
        return RatFunc(f, Poly.one(f.p), reduce=False)

    @staticmethod
    def zero(p: int) -> "RatFunc":
        return RatFunc(Poly.zero(p), Poly.one(p), reduce=False)

    @staticmethod
    def one(p: int) -> "RatFunc":
        return RatFunc(Poly.one(p), Poly.one(p), reduce=False)

    @property
    def p(self) -> int:
        return self.num.p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    @property
    def deg(self) -> int:
        """Degree as a rational function: deg(num) - deg(den); -inf style -1 slot
        is avoided, callers guard the zero case."""
        return self.num.deg - self.den.deg

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_poly():
            return "RatFunc(%s)" % poly_str(self.num)
        return "RatFunc((%s)/(%s))" % (poly_str(self.num), poly_str(self.den))


def rat_from_int(v: int, p: int) -> RatFunc:
    return RatFunc(Poly.const(v, p), Poly.one(p), reduce=False)
