"""Kernels for dense polynomials with integer coefficients.

A polynomial is a tuple of Python ints, lowest power first, with no
trailing zeros; the zero polynomial is ``()``.  Everything above this
layer (QPoly, QRatFun, CycloFraction) stores integer coefficient tuples
and calls into these functions, so this is where the time goes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

ZPoly = tuple  # tuple[int, ...]

ZERO: ZPoly = ()
ONE: ZPoly = (1,)

# below this size schoolbook multiplication beats Kronecker packing
_KRONECKER_MIN = 12


def trim(c) -> ZPoly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def sub(a: ZPoly, b: ZPoly) -> ZPoly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return trim(out)


def neg(a: ZPoly) -> ZPoly:
    return tuple(-x for x in a)


def scale(a: ZPoly, k: int) -> ZPoly:
    if not k:
        return ZERO
    return tuple(x * k for x in a)


def shift(a: ZPoly, e: int) -> ZPoly:
    """Multiply by q**e (e >= 0)."""
    if not a or not e:
        return a
    return (0,) * e + a


def monomial(k: int, e: int) -> ZPoly:
    return (0,) * e + (k,) if k else ZERO


def _pack(c: ZPoly, nbytes: int) -> int:
    pos = bytearray()
    negs = bytearray()
    for x in c:
        if x >= 0:
            pos += x.to_bytes(nbytes, "little")
            negs += bytes(nbytes)
        else:
            pos += bytes(nbytes)
            negs += (-x).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(negs, "little")


def _unpack(v: int, length: int, nbytes: int) -> list:
    sign = 1
    if v < 0:
        sign, v = -1, -v
    raw = v.to_bytes(length * nbytes + 1, "little")
    full = 1 << (8 * nbytes)
    half = full >> 1
    out = []
    carry = 0
    for i in range(length):
        x = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if x >= half:
            x -= full
            carry = 1
        else:
            carry = 0
        out.append(sign * x)
    return out


def mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ZERO
    la, lb = len(a), len(b)
    if min(la, lb) < _KRONECKER_MIN:
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = [0] * (la + lb - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return tuple(out)
    # Kronecker substitution: evaluate at 2**(8*nbytes), multiply, read digits back
    bound = min(la, lb) * max(map(abs, a)) * max(map(abs, b))
    nbytes = (bound.bit_length() + 2) // 8 + 1
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return tuple(_unpack(prod, la + lb - 1, nbytes))


def power(a: ZPoly, e: int) -> ZPoly:
    result = ONE
    while e:
        if e & 1:
            result = mul(result, a)
        e >>= 1
        if e:
            a = mul(a, a)
    return result


def content(a: ZPoly) -> int:
    return gcd(*a) if a else 0


def primitive(a: ZPoly) -> ZPoly:
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return a
    c = gcd(*a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def divmod_exact(a: ZPoly, b: ZPoly):
    """Return the quotient of a by b if it exists in Z[q], else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO
    la, lb = len(a), len(b)
    if la < lb:
        return None
    lead = b[-1]
    rem = list(a)
    quo = [0] * (la - lb + 1)
    for i in range(la - lb, -1, -1):
        top = rem[i + lb - 1]
        if top:
            k, r = divmod(top, lead)
            if r:
                return None
            quo[i] = k
            for j in range(lb):
                rem[i + j] -= k * b[j]
    if any(rem[:lb - 1]):
        return None
    return tuple(quo)


def div_exact(a: ZPoly, b: ZPoly) -> ZPoly:
    q = divmod_exact(a, b)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return q


def prem(a: ZPoly, b: ZPoly) -> ZPoly:
    """Pseudo-remainder of a by b."""
    la, lb = len(a), len(b)
    if la < lb:
        return a
    lead = b[-1]
    rem = list(a)
    for i in range(la - lb, -1, -1):
        top = rem[i + lb - 1]
        rem = [x * lead for x in rem]
        if top:
            for j in range(lb):
                rem[i + j] -= top * b[j]
    return trim(rem)


def _prs_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    # primitive PRS; slow but unconditional
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, primitive(prem(a, b))
    return primitive(a)


def _interpolate(h: int, x: int) -> ZPoly:
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    return tuple(out)


def _eval_int(a: ZPoly, x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _heuristic_gcd(f: ZPoly, g: ZPoly):
    # GCDHEU (Char, Geddes, Gonnet); None means fall back to PRS
    fn = max(map(abs, f))
    gn = max(map(abs, g))
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(fn // abs(f[-1]), gn // abs(g[-1])) + 2)
    for _ in range(6):
        ff = _eval_int(f, x)
        gg = _eval_int(g, x)
        if ff and gg:
            h = gcd(ff, gg)
            cand = primitive(_interpolate(h, x))
            if cand and divmod_exact(f, cand) is not None and divmod_exact(g, cand) is not None:
                return cand
            cff = _interpolate(ff // h, x)
            if cff:
                cand = divmod_exact(f, cff)
                if cand:
                    cand = primitive(cand)
                    if divmod_exact(g, cand) is not None:
                        return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def gcd_poly(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive gcd (positive leading coefficient) of two integer polynomials."""
    if not a and not b:
        raise ValueError("gcd undefined for two zero polynomials")
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    if len(a) == 1 or len(b) == 1:
        return ONE
    # strip a common power of q first; both heuristics and PRS like nonzero constants
    ta = next(i for i, x in enumerate(a) if x)
    tb = next(i for i, x in enumerate(b) if x)
    t = min(ta, tb)
    a, b = a[ta:], b[tb:]
    if len(a) == 1 or len(b) == 1:
        h = ONE
    else:
        h = _heuristic_gcd(primitive(a), primitive(b))
        if h is None:
            h = _prs_gcd(a, b)
    return shift(h, t)


def eval_fraction(a: ZPoly, x: Fraction) -> Fraction:
    """Exact value at a rational point, via a single integer Horner pass."""
    x = Fraction(x)
    p, r = x.numerator, x.denominator
    if not a:
        return Fraction(0)
    d = len(a) - 1
    v = 0
    rpow = 1
    # sum c_i p^i r^(d-i), built top-down
    for c in reversed(a):
        v = v * p + c * rpow
        rpow *= r
    return Fraction(v, r ** d)


def reverse(a: ZPoly) -> ZPoly:
    """Coefficients reversed (q^deg a(1/q)), with leading zeros trimmed."""
    return trim(a[::-1])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> ZPoly:
    """The d-th cyclotomic polynomial, monic with integer coefficients."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    num = (-1,) + (0,) * (d - 1) + (1,)
    for e in divisors(d)[:-1]:
        num = div_exact(num, cyclotomic(e))
    return num


@lru_cache(maxsize=None)
def divisors(k: int) -> tuple:
    return tuple(d for d in range(1, k + 1) if k % d == 0)
