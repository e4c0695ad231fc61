"""Exact polynomials and rational functions in q over the rationals.

Scalars are :class:`fractions.Fraction`.  Internally both :class:`QPoly`
and :class:`QRatFun` keep integer coefficient tuples (see ``_zpoly``),
which keeps the hot loops in plain ``int`` arithmetic.

:class:`QRatFun` is always canonical: numerator and denominator coprime,
denominator monic.  Equality is field comparison.

:class:`CycloFraction` is a faster accumulator for values whose
denominators are products of ``q`` and cyclotomic polynomials, which is
every nested sum this package builds.  Adding two of them never needs a
gcd; only :meth:`CycloFraction.to_ratfun` canonicalizes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

from . import _zpoly as Z

Scalar = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


class QPoly:
    """Dense polynomial in q with rational coefficients.

    Stored as integer coefficients over a positive common denominator,
    reduced so the two share no factor.
    """

    __slots__ = ("_c", "_den")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = Z.trim([c.numerator * (den // c.denominator) for c in coeffs])
        self._c, self._den = _reduce(ints, den)

    @classmethod
    def _raw(cls, ints, den: int = 1) -> "QPoly":
        p = object.__new__(cls)
        p._c, p._den = ints, den
        return p

    @classmethod
    def from_ints(cls, ints: Iterable[int], den: int = 1) -> "QPoly":
        return cls._raw(*_reduce(Z.trim(list(ints)), den))

    @classmethod
    def monomial(cls, coeff: Scalar, power: int) -> "QPoly":
        if power < 0:
            raise ValueError("negative power; use QRatFun for Laurent terms")
        return cls([0] * power + [coeff])

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self._den) for c in self._c)

    @property
    def degree(self) -> float:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else float("-inf")

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return self._den == 1

    @property
    def leading(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return Fraction(self._c[-1], self._den)

    def __len__(self):
        return len(self._c)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._den)
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._c == other._c and self._den == other._den

    def __hash__(self):
        return hash((self._c, self._den))

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self._den == other._den == 1:
            return QPoly._raw(Z.add(self._c, other._c))
        return QPoly.from_ints(
            Z.add(Z.scale(self._c, other._den), Z.scale(other._c, self._den)),
            self._den * other._den,
        )

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw(Z.neg(self._c), self._den)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self._den == other._den == 1:
            return QPoly._raw(Z.mul(self._c, other._c))
        return QPoly.from_ints(Z.mul(self._c, other._c), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        return QPoly.from_ints(Z.power(self._c, e), self._den ** e)

    def divmod(self, other: "QPoly"):
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        lead = div[-1]
        if len(rem) < len(div):
            return QPoly(), self
        quo = [Fraction(0)] * (len(rem) - len(div) + 1)
        for i in range(len(quo) - 1, -1, -1):
            k = rem[i + len(div) - 1] / lead
            quo[i] = k
            if k:
                for j, d in enumerate(div):
                    rem[i + j] -= k * d
        return QPoly(quo), QPoly(rem[:len(div) - 1])

    def __call__(self, x: Scalar) -> Fraction:
        return Z.eval_fraction(self._c, Fraction(x)) / self._den

    def monic(self) -> "QPoly":
        if not self._c:
            return self
        return QPoly.from_ints(self._c, self._c[-1])

    def __repr__(self):
        return f"QPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_coeffs(self.coeffs)


def _reduce(ints, den: int):
    if den < 0:
        ints, den = Z.neg(ints), -den
    if den != 1 and ints:
        g = gcd(den, *ints)
        if g != 1:
            ints = tuple(c // g for c in ints)
            den //= g
    elif not ints:
        den = 1
    return ints, den


def _as_poly(x):
    if isinstance(x, QPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return QPoly([x])
    return None


def format_coeffs(coeffs) -> str:
    return " ".join(str(c) for c in coeffs) if coeffs else "0"


def poly_arith(a: QPoly, b: QPoly, op: str) -> QPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic greatest common divisor over the rationals."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined")
    g = Z.gcd_poly(a._c, b._c)
    return QPoly.from_ints(g, g[-1])


class QRatFun:
    """Canonical rational function in q.

    Internally ``_n / _d`` with integer coefficients, gcd 1 over Q, joint
    integer content 1 and positive leading coefficient on ``_d``.  That
    integer form is unique, so it is interchangeable with the monic-denominator
    form exposed as :attr:`num` / :attr:`den`.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num: Union[QPoly, Scalar] = 0, den: Union[QPoly, Scalar] = 1):
        num, den = _as_poly(num), _as_poly(den)
        if den is None or num is None:
            raise TypeError("QRatFun expects polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # num._c/num._den over den._c/den._den
        n = Z.scale(num._c, den._den)
        d = Z.scale(den._c, num._den)
        self._n, self._d = _canon(n, d)

    @classmethod
    def _raw(cls, n, d) -> "QRatFun":
        f = object.__new__(cls)
        f._n, f._d = n, d
        return f

    @classmethod
    def _from_ints(cls, n, d) -> "QRatFun":
        if not d:
            raise ZeroDivisionError("zero denominator")
        return cls._raw(*_canon(n, d))

    @classmethod
    def laurent(cls, coeff: Scalar, power: int) -> "QRatFun":
        """coeff * q**power for any integer power."""
        if power >= 0:
            return cls(QPoly.monomial(coeff, power))
        return cls(coeff, QPoly.monomial(1, -power))

    @property
    def num(self) -> QPoly:
        return QPoly.from_ints(self._n, self._d[-1])

    @property
    def den(self) -> QPoly:
        return QPoly.from_ints(self._d, self._d[-1])

    def is_zero(self) -> bool:
        return not self._n

    def is_polynomial(self) -> bool:
        return len(self._d) == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QPoly)):
            other = QRatFun(other)
        if not isinstance(other, QRatFun):
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((self._n, self._d))

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self._n, self._d, other._n, other._d
        if not a:
            return other
        if not c:
            return self
        if len(b) == 1 and len(d) == 1:
            return QRatFun._from_ints(Z.add(Z.scale(a, d[0]), Z.scale(c, b[0])), Z.mul(b, d))
        g = Z.gcd_poly(b, d)
        if g == Z.ONE:
            return QRatFun._from_ints(Z.add(Z.mul(a, d), Z.mul(c, b)), Z.mul(b, d))
        b1 = Z.div_exact(b, g)
        d1 = Z.div_exact(d, g)
        t = Z.add(Z.mul(a, d1), Z.mul(c, b1))
        if not t:
            return QRatFun._raw(Z.ZERO, Z.ONE)
        g2 = Z.gcd_poly(t, g)
        if g2 != Z.ONE:
            t = Z.div_exact(t, g2)
            d = Z.div_exact(d, g2)
        return QRatFun._from_ints(t, Z.mul(b1, d))

    __radd__ = __add__

    def __neg__(self):
        return QRatFun._raw(Z.neg(self._n), self._d)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self._n, self._d, other._n, other._d
        if not a or not c:
            return QRatFun._raw(Z.ZERO, Z.ONE)
        g1 = Z.gcd_poly(a, d)
        g2 = Z.gcd_poly(c, b)
        if g1 != Z.ONE:
            a, d = Z.div_exact(a, g1), Z.div_exact(d, g1)
        if g2 != Z.ONE:
            c, b = Z.div_exact(c, g2), Z.div_exact(b, g2)
        return QRatFun._from_ints(Z.mul(a, c), Z.mul(b, d))

    __rmul__ = __mul__

    def inverse(self) -> "QRatFun":
        if not self._n:
            raise ZeroDivisionError("inverse of zero rational function")
        return QRatFun._from_ints(self._d, self._n)

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QRatFun._raw(Z.power(self._n, e), Z.power(self._d, e))

    def reciprocal_argument(self) -> "QRatFun":
        """f(1/q) as a canonical rational function in q."""
        if not self._n:
            return self
        dn, dd = len(self._n) - 1, len(self._d) - 1
        n, d = Z.reverse(self._n), Z.reverse(self._d)
        if dd >= dn:
            n = Z.shift(n, dd - dn)
        else:
            d = Z.shift(d, dn - dd)
        return QRatFun._from_ints(n, d)

    def __call__(self, q0: Scalar) -> Fraction:
        return eval_at(self, q0)

    def __repr__(self):
        return f"QRatFun(num=[{format_coeffs(self.num.coeffs)}], den=[{format_coeffs(self.den.coeffs)}])"

    def __str__(self):
        return f"({format_coeffs(self.num.coeffs)})/({format_coeffs(self.den.coeffs)})"


def _canon(n, d):
    if not n:
        return Z.ZERO, Z.ONE
    g = Z.gcd_poly(n, d)
    if g != Z.ONE:
        n, d = Z.div_exact(n, g), Z.div_exact(d, g)
    c = gcd(*n, *d)
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = tuple(x // c for x in n)
        d = tuple(x // c for x in d)
    return n, d


def _as_ratfun(x):
    if isinstance(x, QRatFun):
        return x
    if isinstance(x, CycloFraction):
        return x.to_ratfun()
    if isinstance(x, (int, Fraction, QPoly)):
        return QRatFun(x)
    return None


def ratfun_make(num: QPoly, den: QPoly) -> QRatFun:
    return QRatFun(num, den)


def eval_at(f: QRatFun, q0: Scalar) -> Fraction:
    q0 = Fraction(q0)
    dv = Z.eval_fraction(f._d, q0)
    if not dv:
        raise PoleError(f"pole at q={q0}")
    return Z.eval_fraction(f._n, q0) / dv


# -- cyclotomic-denominator accumulator ---------------------------------------


@lru_cache(maxsize=4096)
def _phi_product(exps: tuple) -> tuple:
    """Product of cyclotomic(d)**e over the (d, e) pairs."""
    out = Z.ONE
    for d, e in exps:
        out = Z.mul(out, Z.power(Z.cyclotomic(d), e))
    return out


class CycloFraction:
    """``num / (q**qexp * prod_d cyclotomic(d)**phis[d])`` with integer ``num``.

    Closed under +, -, * and under multiplication by the reciprocals
    built with :meth:`q_int_power` and :meth:`one_minus_q_power`.  Not
    canonical; call :meth:`to_ratfun` to get the reduced form.
    """

    __slots__ = ("num", "qexp", "phis")

    def __init__(self, num=Z.ONE, qexp: int = 0, phis=None):
        self.num = tuple(num)
        self.qexp = qexp
        self.phis = dict(phis) if phis else {}

    @classmethod
    def from_poly(cls, p: QPoly) -> "CycloFraction":
        if not p.is_integral():
            raise ValueError("CycloFraction numerators must have integer coefficients")
        return cls(p._c)

    @classmethod
    def laurent(cls, coeff: int, power: int) -> "CycloFraction":
        if power >= 0:
            return cls(Z.monomial(coeff, power))
        return cls(Z.monomial(coeff, 0), -power)

    @classmethod
    def q_int_power(cls, k: int, s: int) -> "CycloFraction":
        """1 / [k]_q**s for k >= 1."""
        if k < 1:
            raise ValueError("[k]_q is inverted only for k >= 1")
        return cls(Z.ONE, 0, {d: s for d in Z.divisors(k) if d > 1} if s else None)

    @classmethod
    def one_minus_q_power(cls, k: int, s: int) -> "CycloFraction":
        """1 / (1 - q**k)**s for k >= 1."""
        sign = -1 if s % 2 else 1
        return cls((sign,), 0, {d: s for d in Z.divisors(k)} if s else None)

    def is_zero(self) -> bool:
        return not self.num

    def _lift(self, qexp: int, phis: dict):
        """Numerator of self rewritten over a denominator that contains its own."""
        missing = tuple(sorted((d, e - self.phis.get(d, 0)) for d, e in phis.items()
                               if e > self.phis.get(d, 0)))
        n = self.num
        if missing:
            n = Z.mul(n, _phi_product(missing))
        return Z.shift(n, qexp - self.qexp)

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloFraction((other,) if other else Z.ZERO)
        if not isinstance(other, CycloFraction):
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        qexp = max(self.qexp, other.qexp)
        phis = dict(self.phis)
        for d, e in other.phis.items():
            if e > phis.get(d, 0):
                phis[d] = e
        return CycloFraction(Z.add(self._lift(qexp, phis), other._lift(qexp, phis)), qexp, phis)

    __radd__ = __add__

    def __neg__(self):
        return CycloFraction(Z.neg(self.num), self.qexp, self.phis)

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycloFraction((other,) if other else Z.ZERO)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloFraction(Z.scale(self.num, other), self.qexp, self.phis)
        if isinstance(other, QPoly):
            other = CycloFraction.from_poly(other)
        if not isinstance(other, CycloFraction):
            return NotImplemented
        if not self.num or not other.num:
            return CycloFraction(Z.ZERO)
        phis = dict(self.phis)
        for d, e in other.phis.items():
            phis[d] = phis.get(d, 0) + e
        return CycloFraction(Z.mul(self.num, other.num), self.qexp + other.qexp, phis)

    __rmul__ = __mul__

    def to_ratfun(self) -> QRatFun:
        n = self.num
        if not n:
            return QRatFun._raw(Z.ZERO, Z.ONE)
        qexp = self.qexp
        while qexp and not n[0]:
            n = n[1:]
            qexp -= 1
        phis = {}
        for d, e in sorted(self.phis.items()):
            phi = Z.cyclotomic(d)
            while e:
                quo = Z.divmod_exact(n, phi)
                if quo is None:
                    break
                n = quo
                e -= 1
            if e:
                phis[d] = e
        den = Z.shift(_phi_product(tuple(sorted(phis.items()))), qexp)
        # den is monic and every irreducible factor of it has been divided out of n
        return QRatFun._raw(n, den)

    def __repr__(self):
        return f"CycloFraction({self.num}, qexp={self.qexp}, phis={self.phis})"


# -- q-analogs -----------------------------------------------------------------


@lru_cache(maxsize=None)
def q_integer(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_integer needs n >= 0")
    return QPoly._raw((1,) * n)


@lru_cache(maxsize=None)
def _qbinom_product(n: int, k: int) -> tuple:
    num = Z.ONE
    den = Z.ONE
    for j in range(1, k + 1):
        num = Z.mul(num, Z.sub(Z.ONE, Z.monomial(1, n - k + j)))
        den = Z.mul(den, Z.sub(Z.ONE, Z.monomial(1, j)))
    return Z.div_exact(num, den)


@lru_cache(maxsize=None)
def _qbinom_pascal(n: int, k: int, second: bool) -> tuple:
    if k < 0 or k > n:
        return Z.ZERO
    if k == 0 or k == n:
        return Z.ONE
    if second:
        # [r,k] = q^k [r-1,k] + [r-1,k-1]
        return Z.add(Z.shift(_qbinom_pascal(n - 1, k, True), k), _qbinom_pascal(n - 1, k - 1, True))
    # [r,k] = [r-1,k] + q^(r-k) [r-1,k-1]
    return Z.add(_qbinom_pascal(n - 1, k, False), Z.shift(_qbinom_pascal(n - 1, k - 1, False), n - k))


def q_binomial(n: int, k: int, method: str = "product") -> QPoly:
    """Gaussian binomial coefficient; zero unless 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return QPoly()
    if method == "product":
        return QPoly._raw(_qbinom_product(n, k))
    if method == "pascal_first":
        return QPoly._raw(_qbinom_pascal(n, k, False))
    if method == "pascal_second":
        return QPoly._raw(_qbinom_pascal(n, k, True))
    raise ValueError(f"unknown q-binomial method {method!r}")


def q_shifted_power(x: Scalar, y: Scalar, n: int) -> QPoly:
    """(x + y)_q^n = prod_{k<n} (x + y q^k), a polynomial in q."""
    if n < 0:
        raise ValueError("q_shifted_power needs n >= 0")
    out = QPoly([1])
    for k in range(n):
        out = out * (QPoly([x]) + QPoly.monomial(y, k))
    return out
