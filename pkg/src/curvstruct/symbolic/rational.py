"""Exact multivariate rational functions over Q.

A :class:`RationalFunction` is stored as a pair of integer polynomials
``num / den`` (``flint.fmpz_mpoly`` in graded-lex order) such that

* ``gcd(num, den) == 1`` over Z[x] (this removes integer content too),
* the leading coefficient of ``den`` is positive,
* zero is ``0 / 1``.

This pins the representation down uniquely, so equality and zero tests are
structural comparisons of the two polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import flint

from ..errors import ChartMismatchError, PoleError

ORDER = "deglex"


@lru_cache(maxsize=None)
def poly_context(names: tuple[str, ...]) -> flint.fmpz_mpoly_ctx:
    return flint.fmpz_mpoly_ctx.get(tuple(names), ORDER)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, flint.fmpz):
        return Fraction(int(value))
    if isinstance(value, flint.fmpq):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_polynomial(poly: flint.fmpz_mpoly, names) -> str:
    """Print ``poly`` with terms in graded-lex order, e.g. ``x1^2*x2 - 3*x1 + 1``."""
    if poly.is_zero():
        return "0"
    pieces = []
    for exps, coeff in poly.terms():
        c = int(coeff)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def irreducible_factors(poly: flint.fmpz_mpoly, names) -> list[str]:
    """Nonconstant irreducible factors of ``poly``, each with positive leading coefficient."""
    if poly.is_zero() or poly.is_constant():
        return []
    out = []
    for f, _ in poly.factor()[1]:
        if int(next(iter(f.terms()))[1]) < 0:
            f = -f
        out.append(format_polynomial(f, names))
    return out


def _rebuild(names, num_terms, den_terms):
    ctx = poly_context(tuple(names))
    return RationalFunction(ctx.from_dict(dict(num_terms)), ctx.from_dict(dict(den_terms)))


class RationalFunction:
    """Element of Q(x_1, ..., x_n) in canonical reduced form.

    Instances are immutable. Arithmetic with ``int`` and ``Fraction`` operands
    is supported; mixing functions over different coordinate lists raises
    :class:`ChartMismatchError`.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, reduced=False):
        ctx = num.context()
        if den is None:
            den = ctx.constant(1)
        elif den.context() is not ctx:
            raise ChartMismatchError("numerator and denominator live in different contexts")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = ctx.constant(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num // g
                    den = den // g
        if den.leading_coefficient() < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value, names) -> RationalFunction:
        ctx = poly_context(tuple(names))
        q = _to_fraction(value)
        return cls(ctx.constant(q.numerator), ctx.constant(q.denominator), reduced=True)

    @classmethod
    def zero(cls, names) -> RationalFunction:
        ctx = poly_context(tuple(names))
        return cls(ctx.constant(0), ctx.constant(1), reduced=True)

    @classmethod
    def one(cls, names) -> RationalFunction:
        ctx = poly_context(tuple(names))
        return cls(ctx.constant(1), ctx.constant(1), reduced=True)

    @classmethod
    def variable(cls, index: int, names) -> RationalFunction:
        ctx = poly_context(tuple(names))
        return cls(ctx.gens()[index], ctx.constant(1), reduced=True)

    @classmethod
    def from_terms(cls, num_terms: dict, den_terms: dict | None, names) -> RationalFunction:
        ctx = poly_context(tuple(names))
        den = ctx.from_dict(den_terms) if den_terms is not None else ctx.constant(1)
        return cls(ctx.from_dict(num_terms), den)

    # -- basic properties -------------------------------------------------

    @property
    def context(self):
        return self.num.context()

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.num.context().names())

    @property
    def nvars(self) -> int:
        return self.num.context().nvars()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(int(self.num.leading_coefficient()) if not self.num.is_zero() else 0,
                        int(self.den.leading_coefficient()))

    def __bool__(self):
        return not self.num.is_zero()

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.num.context() is not self.num.context():
                raise ChartMismatchError(
                    f"coordinate lists differ: {self.names} vs {other.names}")
            return other
        try:
            q = _to_fraction(other)
        except TypeError:
            return NotImplemented
        ctx = self.num.context()
        return RationalFunction(ctx.constant(q.numerator), ctx.constant(q.denominator), reduced=True)

    # -- field arithmetic -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return RationalFunction(self.num + other.num, self.den, reduced=True)
            return RationalFunction(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            # coprime denominators: a/b + c/d = (ad + cb)/(bd) is already reduced
            num = self.num * other.den + other.num * self.den
            return RationalFunction(num, self.den * other.den, reduced=not num.is_zero())
        a_cof = self.den // g
        b_cof = other.den // g
        num = self.num * b_cof + other.num * a_cof
        den = a_cof * other.den
        return RationalFunction(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction(self.num.context().constant(0), None, reduced=True)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num * other.num, self.den, reduced=True)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        return RationalFunction(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.num ** exponent, self.den ** exponent, reduced=True)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                q = _to_fraction(other)
            except TypeError:
                return NotImplemented
            return (self.den.is_constant() and self.num.is_constant()
                    and self.constant_value() == q)
        return (self.num.context() is other.num.context()
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    # -- calculus and evaluation -----------------------------------------

    def diff(self, index: int) -> RationalFunction:
        """Partial derivative with respect to coordinate ``index`` (0-based)."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"coordinate index {index} out of range for {self.nvars} variables")
        if self.num.is_zero():
            return self
        if self.den.is_one():
            return RationalFunction(self.num.derivative(index), self.den, reduced=True)
        dn = self.num.derivative(index)
        dd = self.den.derivative(index)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point) -> Fraction:
        """Exact value at ``point``; raises :class:`PoleError` on a vanishing denominator."""
        values = [_to_fraction(v) for v in point]
        if len(values) != self.nvars:
            raise ValueError(f"point has {len(values)} coordinates, expected {self.nvars}")
        den = _eval_poly(self.den, values)
        if den == 0:
            raise PoleError(f"denominator {format_polynomial(self.den, self.names)} vanishes at ({', '.join(str(v) for v in values)})")
        return _eval_poly(self.num, values) / den

    def __float__(self):
        return float(self.constant_value())

    # -- printing ---------------------------------------------------------

    def __str__(self):
        names = self.names
        if self.den.is_one():
            return format_polynomial(self.num, names)
        return f"({format_polynomial(self.num, names)})/({format_polynomial(self.den, names)})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __reduce__(self):
        to_int = lambda p: {k: int(v) for k, v in p.to_dict().items()}
        return (_rebuild, (self.names, to_int(self.num), to_int(self.den)))


def _eval_poly(poly, values) -> Fraction:
    total = Fraction(0)
    for exps, coeff in poly.terms():
        term = Fraction(int(coeff))
        for v, e in zip(values, exps):
            if e:
                term *= v ** int(e)
        total += term
    return total


# Functional surface mirroring the arithmetic above.

def arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def differentiate(f: RationalFunction, index: int) -> RationalFunction:
    return f.diff(index)


def evaluate(f: RationalFunction, point) -> Fraction:
    return f.evaluate(point)


def is_zero(f) -> bool:
    if isinstance(f, RationalFunction):
        return f.is_zero()
    return f == 0
