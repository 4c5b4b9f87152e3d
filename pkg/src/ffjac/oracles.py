"""Slow independent checks: exhaustive reduction search, place counting,
and the class number from the zeta function.

Everything here favors obviousness over speed and stays off the fast
paths, so disagreement with the main algorithms points at a real bug.
"""

from fractions import Fraction

from .divisors import Divisor, finite_places_above, infinite_places
from .polys import enumerate_monic_irreducibles
from .riemann_roch import rr_basis


def brute_hr_min(ctx, div: Divisor):
    """Minimal r with l(D + rA) = 1 and a witness, by scanning r = 0..g.

    Uses full basis computations only.  A degree-zero divisor always
    reduces within the genus, so falling through is a library bug.
    """
    for m in range(ctx.g + 1):
        dim, basis = rr_basis(ctx.field,
                              div + Divisor.from_place(ctx.A, m))
        if dim > 0:
            return m, basis[0]
    raise AssertionError("no reduction height within the genus bound")


def places_by_degree(field, dmax: int) -> dict:
    """Counts {d: number of places of degree d} for d <= dmax."""
    counts = {}
    for pl in infinite_places(field):
        d = pl.degree()
        if d <= dmax:
            counts[d] = counts.get(d, 0) + 1
    for d in range(1, dmax + 1):
        for q in enumerate_monic_irreducibles(field.p, d):
            for pl in finite_places_above(field, q):
                dd = pl.degree()
                if dd <= dmax:
                    counts[dd] = counts.get(dd, 0) + 1
    return counts


def count_degree_one_places(field, m: int = 1) -> int:
    """Degree-one places of the constant-field extension of degree m.

    N_m = sum over d | m of d * B_d with B_d the count of degree-d
    places, so no extension field is ever constructed.
    """
    if field.p ** m > 1 << 16:
        raise ValueError("place count only supported for p^m <= 2^16")
    counts = places_by_degree(field, m)
    return sum(d * counts.get(d, 0) for d in range(1, m + 1) if m % d == 0)


def jacobian_order(field) -> int:
    """Class number as L(1), L the zeta numerator from N_1..N_g.

    Newton's identities turn power sums S_m = q^m + 1 - N_m into the
    first g coefficients; the functional equation supplies the rest.
    Guarded to small fields and g <= 3 where the place counts stay
    enumerable.
    """
    g = field.genus()
    if g == 0:
        return 1
    if g > 3:
        raise ValueError("zeta oracle limited to genus <= 3")
    q = field.p
    S = [0] * (g + 1)
    for m in range(1, g + 1):
        S[m] = q ** m + 1 - count_degree_one_places(field, m)
    # k*e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} S_i, with a_k = (-1)^k e_k
    e = [Fraction(1)] + [Fraction(0)] * g
    for k in range(1, g + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * S[i]
            acc += term if i % 2 else -term
        e[k] = acc / k
    a = [0] * (2 * g + 1)
    for k in range(g + 1):
        ak = e[k] if k % 2 == 0 else -e[k]
        if ak.denominator != 1:
            raise ArithmeticError("zeta coefficients must be integers")
        a[k] = int(ak)
    for i in range(g):
        a[2 * g - i] = q ** (g - i) * a[i]
    order = sum(a)
    if order <= 0:
        raise ArithmeticError("class number must be positive")
    return order
