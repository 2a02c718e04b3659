"""Exact arithmetic in Q[q^±1, t^±1] and the fraction field Q(q,t).

Two value types live here:

* ``QTPoly``: a Laurent polynomial in q and t with ``Fraction`` coefficients,
  stored as a sorted term map.  Used for monomial weights and statistics.
* ``QTRat``: a canonical ratio of integer Laurent polynomials.  This is the
  coefficient field of every symmetric function in the package.

Canonical form of a ``QTRat``: value = q^a t^b * num / den where num and den
are ordinary integer polynomials, neither divisible by q or t, with
gcd(num, den) = 1 over Z[q,t] (so integer contents are coprime too), and the
lexicographically least term of den has a positive coefficient.  Equal values
therefore have identical representations.

Polynomial gcds are delegated to FLINT's multivariate integer polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

import flint

from .errors import NotPolynomialError, ParseError, PoleError

_CTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "lex")
_PQ, _PT = _CTX.gens()
_P0 = _CTX.from_dict({})
_P1 = _CTX.constant(1)


def _poly_terms(p):
    return [((int(i), int(j)), c) for (i, j), c in zip(p.monoms(), p.coeffs())]


def _min_exponents(p):
    ms = p.monoms()
    return int(min(m[0] for m in ms)), int(min(m[1] for m in ms))


def _unshift(p):
    """Split p = q^a t^b * p' with p' not divisible by q or t."""
    a, b = _min_exponents(p)
    if a == 0 and b == 0:
        return p, 0, 0
    return _CTX.from_dict({(i - a, j - b): c for (i, j), c in _poly_terms(p)}), a, b


def _from_laurent(terms):
    """Build (poly, a, b) from an iterable of ((eq, et), integer coeff)."""
    terms = [(e, c) for e, c in terms if c]
    if not terms:
        return _P0, 0, 0
    a = min(e[0] for e, _ in terms)
    b = min(e[1] for e, _ in terms)
    d = {}
    for (i, j), c in terms:
        key = (i - a, j - b)
        d[key] = d.get(key, 0) + c
    return _CTX.from_dict(d), a, b


def _monomial(i, j):
    return _CTX.from_dict({(i, j): 1})


def _leading_low_sign(p):
    # terms come in descending lex order, so the last one is lex-least
    return -1 if p.coeffs()[-1] < 0 else 1


def _canon(num, den, sq, st):
    if den.is_zero():
        raise ZeroDivisionError("QTRat division by zero")
    if num.is_zero():
        return ZERO
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        den, a, b = _unshift(den)
        sq -= a
        st -= b
        if _leading_low_sign(den) < 0:
            num = -num
            den = -den
    num, a, b = _unshift(num)
    return QTRat._raw(num, den, sq + a, st + b)


def _coerce(x):
    if isinstance(x, QTRat):
        return x
    if isinstance(x, int):
        return _int_rat(x)
    if isinstance(x, Fraction):
        return _canon(_CTX.constant(x.numerator), _CTX.constant(x.denominator), 0, 0)
    if isinstance(x, QTPoly):
        return x.to_rat()
    return NotImplemented


@lru_cache(maxsize=4096)
def _int_rat(n):
    if n == 0:
        return QTRat._raw(_P0, _P1, 0, 0)
    return QTRat._raw(_CTX.constant(n), _P1, 0, 0)


def _format_terms(items, var_fmt, mul):
    """Render [( (eq, et), coeff )] as a sum of monomials."""
    if not items:
        return "0"
    pieces = []
    for (i, j), c in items:
        mono = []
        for name, e in (("q", i), ("t", j)):
            if e == 1:
                mono.append(name)
            elif e != 0:
                mono.append(var_fmt(name, e))
        mono_s = mul.join(mono)
        if not mono_s:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono_s
        else:
            body = f"{abs(c)}{mul}{mono_s}" if mul else f"{abs(c)}{mono_s}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def _text_power(name, e):
    return f"{name}^{e}" if e >= 0 else f"{name}^({e})"


def _latex_power(name, e):
    return f"{name}^{{{e}}}"


class QTPoly:
    """Laurent polynomial in q, t with rational coefficients.

    Terms are kept in a dict keyed by (q-exponent, t-exponent), sorted, with no
    zero coefficients, so equality and hashing are structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (i, j), c in items:
                key = (int(i), int(j))
                clean[key] = clean.get(key, 0) + Fraction(c)
        self._terms = {k: v for k, v in sorted(clean.items()) if v}
        self._hash = None

    @classmethod
    def monomial(cls, eq, et, coeff=1):
        return cls({(eq, et): coeff})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def coefficient(self, eq, et):
        return self._terms.get((eq, et), Fraction(0))

    def evaluate(self, qv, tv):
        qv = Fraction(qv) if isinstance(qv, int) else qv
        tv = Fraction(tv) if isinstance(tv, int) else tv
        return sum((c * qv ** i * tv ** j for (i, j), c in self._terms.items()), Fraction(0))

    def to_rat(self):
        if not self._terms:
            return ZERO
        den = lcm(*(c.denominator for c in self._terms.values()))
        poly, a, b = _from_laurent(
            (k, int(c * den)) for k, c in self._terms.items()
        )
        return _canon(poly, _CTX.constant(den), a, b)

    def _binary(self, other, sign):
        if isinstance(other, (int, Fraction)):
            other = QTPoly.constant(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        d = dict(self._terms)
        for k, c in other._terms.items():
            d[k] = d.get(k, 0) + sign * c
        return QTPoly(d)

    def __add__(self, other):
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1)

    def __rsub__(self, other):
        return (-self)._binary(other, 1)

    def __neg__(self):
        return QTPoly({k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QTPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, QTPoly):
            return NotImplemented
        d = {}
        for (i, j), c in self._terms.items():
            for (k, l), e in other._terms.items():
                key = (i + k, j + l)
                d[key] = d.get(key, 0) + c * e
        return QTPoly(d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, QTPoly) and other.is_monomial():
            (i, j), c = next(iter(other._terms.items()))
            return self * QTPoly.monomial(-i, -j, 1 / c)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise NotPolynomialError("negative power of a non-monomial QTPoly")
            (i, j), c = next(iter(self._terms.items()))
            return QTPoly.monomial(i * k, j * k, Fraction(c) ** k)
        out = QTPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QTPoly.constant(other)
        if isinstance(other, QTPoly):
            return self._terms == other._terms
        if isinstance(other, QTRat):
            return self.to_rat() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"QTPoly({self})"

    def __str__(self):
        return _format_terms(list(self._terms.items()), _text_power, "*")


class QTRat:
    """Exact element of Q(q,t) in canonical form.

    Build values from ``Q``, ``T`` and integers with ordinary operators, e.g.
    ``(1 - Q**2) / (1 - Q)``.
    """

    __slots__ = ("_num", "_den", "_sq", "_st", "_hash")

    def __new__(cls, value=0):
        if isinstance(value, QTRat):
            return value
        r = _coerce(value)
        if r is NotImplemented:
            raise TypeError(f"cannot convert {type(value).__name__} to QTRat")
        return r

    @classmethod
    def _raw(cls, num, den, sq, st):
        self = object.__new__(cls)
        self._num = num
        self._den = den
        self._sq = sq
        self._st = st
        self._hash = None
        return self

    @classmethod
    def monomial(cls, eq, et, coeff=1):
        return _coerce(Fraction(coeff)) * cls._raw(_P1, _P1, eq, et)

    # -- structure ----------------------------------------------------------

    def numerator(self):
        """Numerator as a Laurent ``QTPoly`` (monomial shift included)."""
        return QTPoly(
            ((i + self._sq, j + self._st), int(c)) for (i, j), c in _poly_terms(self._num)
        )

    def denominator(self):
        return QTPoly(((i, j), int(c)) for (i, j), c in _poly_terms(self._den))

    def is_zero(self):
        return self._num.is_zero()

    def __bool__(self):
        return not self._num.is_zero()

    def is_polynomial(self):
        """True when the value is a Laurent polynomial (constant denominator)."""
        return self._den.is_constant()

    def to_poly(self):
        if not self._den.is_constant():
            raise NotPolynomialError(f"not a Laurent polynomial: {self}")
        d = int(self._den.coeffs()[0]) if not self._den.is_zero() else 1
        return QTPoly(
            ((i + self._sq, j + self._st), Fraction(int(c), d))
            for (i, j), c in _poly_terms(self._num)
        )

    def is_constant(self):
        return self._num.is_constant() and self._den.is_constant() and (
            self.is_zero() or (self._sq == 0 and self._st == 0)
        )

    def to_fraction(self):
        if not self.is_constant():
            raise NotPolynomialError(f"not a rational constant: {self}")
        if self.is_zero():
            return Fraction(0)
        return Fraction(int(self._num.coeffs()[0]), int(self._den.coeffs()[0]))

    def free_of_t(self):
        return self._st == 0 and self._num.degrees()[1] == 0 and self._den.degrees()[1] == 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        sq = min(self._sq, other._sq)
        st = min(self._st, other._st)
        na = self._num if (self._sq, self._st) == (sq, st) else self._num * _monomial(self._sq - sq, self._st - st)
        nb = other._num if (other._sq, other._st) == (sq, st) else other._num * _monomial(other._sq - sq, other._st - st)
        if self._den == other._den:
            num = na + nb
            den = self._den
            if den.is_one():
                if num.is_zero():
                    return ZERO
                num, a, b = _unshift(num)
                return QTRat._raw(num, den, sq + a, st + b)
            return _canon(num, den, sq, st)
        g = self._den.gcd(other._den)
        da = self._den / g
        db = other._den / g
        return _canon(na * db + nb * da, self._den * db, sq, st)

    __radd__ = __add__

    def __neg__(self):
        return QTRat._raw(-self._num, self._den, self._sq, self._st)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        an, ad, bn, bd = self._num, self._den, other._num, other._den
        if not bd.is_one():
            g = an.gcd(bd)
            if not g.is_one():
                an = an / g
                bd = bd / g
        if not ad.is_one():
            g = bn.gcd(ad)
            if not g.is_one():
                bn = bn / g
                ad = ad / g
        num = an * bn
        den = ad * bd
        if _leading_low_sign(den) < 0:
            num, den = -num, -den
        return QTRat._raw(num, den, self._sq + other._sq, self._st + other._st)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("QTRat division by zero")
        num, den = self._den, self._num
        if _leading_low_sign(den) < 0:
            num, den = -num, -den
        return QTRat._raw(num, den, -self._sq, -self._st)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        if k == 0:
            return ONE
        num = base._num ** k
        den = base._den ** k
        return QTRat._raw(num, den, base._sq * k, base._st * k)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self._sq == other._sq
            and self._st == other._st
            and self._num == other._num
            and self._den == other._den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    self._sq,
                    self._st,
                    tuple((m, int(c)) for m, c in _poly_terms(self._num)),
                    tuple((m, int(c)) for m, c in _poly_terms(self._den)),
                )
            )
        return self._hash

    # -- substitutions ------------------------------------------------------

    def map_exponents(self, qq, qt, tq, tt):
        """Apply the monomial substitution q -> q^qq t^qt, t -> q^tq t^tt."""

        def image(p, sq, st):
            return _from_laurent(
                ((qq * (i + sq) + tq * (j + st), qt * (i + sq) + tt * (j + st)), int(c))
                for (i, j), c in _poly_terms(p)
            )

        num, a1, b1 = image(self._num, self._sq, self._st)
        den, a2, b2 = image(self._den, 0, 0)
        return _canon(num, den, a1 - a2, b1 - b2)

    def invert_vars(self):
        """q -> 1/q, t -> 1/t."""
        return self.map_exponents(-1, 0, 0, -1)

    def power_vars(self, k):
        """q -> q^k, t -> t^k (the coefficient action of p_k plethysm)."""
        if k == 1:
            return self
        if self._num.is_constant() and self._den.is_constant() and self._sq == 0 and self._st == 0:
            return self
        return self.map_exponents(k, 0, 0, k)

    def swap_vars(self):
        return self.map_exponents(0, 1, 1, 0)

    def invert_t(self):
        return self.map_exponents(1, 0, 0, -1)

    def specialize_t1(self):
        """Set t = 1; raises PoleError if the denominator vanishes there."""
        num = self._num.subs({"t": 1})
        den = self._den.subs({"t": 1})
        if den.is_zero():
            raise PoleError(f"pole at t=1: {self}")
        return _canon(num, den, self._sq, 0)

    def specialize_q1(self):
        num = self._num.subs({"q": 1})
        den = self._den.subs({"q": 1})
        if den.is_zero():
            raise PoleError(f"pole at q=1: {self}")
        return _canon(num, den, 0, self._st)

    def evaluate(self, qv, tv):
        """Numeric value at (q, t) = (qv, tv); exact for int and Fraction inputs."""
        if isinstance(qv, int):
            qv = Fraction(qv)
        if isinstance(tv, int):
            tv = Fraction(tv)

        def ev(p):
            return sum(int(c) * qv ** i * tv ** j for (i, j), c in _poly_terms(p))

        den = ev(self._den)
        if den == 0:
            raise PoleError(f"pole at ({qv}, {tv})")
        return ev(self._num) * qv ** self._sq * tv ** self._st / den

    # -- serialization ------------------------------------------------------

    def _laurent_items(self, which):
        if which == "num":
            items = [((i + self._sq, j + self._st), int(c)) for (i, j), c in _poly_terms(self._num)]
        else:
            items = [((i, j), int(c)) for (i, j), c in _poly_terms(self._den)]
        return sorted(items)

    def to_json(self):
        return {
            "num": [[str(c), i, j] for (i, j), c in self._laurent_items("num")],
            "den": [[str(c), i, j] for (i, j), c in self._laurent_items("den")],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            parts = []
            for key in ("num", "den"):
                terms = []
                for c, i, j in obj[key]:
                    if not isinstance(i, int) or not isinstance(j, int):
                        raise ParseError(f"non-integer exponent in {key}")
                    terms.append(((i, j), int(c)))
                parts.append(_from_laurent(terms))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed QTRat JSON: {obj!r}") from exc
        (num, a1, b1), (den, a2, b2) = parts
        if den.is_zero():
            raise ParseError("zero denominator in QTRat JSON")
        return _canon(num, den, a1 - a2, b1 - b2)

    def _render(self, var_fmt, mul, frac):
        num = _format_terms(self._laurent_items("num"), var_fmt, mul)
        if self._den.is_one():
            return num
        den = _format_terms(self._laurent_items("den"), var_fmt, mul)
        return frac(num, den)

    def __str__(self):
        return self._render(_text_power, "*", lambda n, d: f"({n})/({d})")

    def latex(self):
        return self._render(_latex_power, "", lambda n, d: f"\\frac{{{n}}}{{{d}}}")

    def __repr__(self):
        return f"QTRat({self})"


ZERO = QTRat._raw(_P0, _P1, 0, 0)
ONE = QTRat._raw(_P1, _P1, 0, 0)
Q = QTRat._raw(_P1, _P1, 1, 0)
T = QTRat._raw(_P1, _P1, 0, 1)


def qt_arith(a, b, kind):
    """Exact binary operation ``kind`` in {add, sub, mul, div} on two values."""
    a, b = QTRat(a), QTRat(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def substitute(f, q_to, t_to):
    """Image of f under q -> q_to, t -> t_to (both nonzero)."""
    f, q_to, t_to = QTRat(f), QTRat(q_to), QTRat(t_to)
    if q_to.is_zero() or t_to.is_zero():
        raise ZeroDivisionError("substitution targets must be nonzero")

    def ev(p, sq, st):
        total = ZERO
        for (i, j), c in _poly_terms(p):
            total = total + int(c) * q_to ** (i + sq) * t_to ** (j + st)
        return total

    return ev(f._num, f._sq, f._st) / ev(f._den, 0, 0)


def limit_q1(f):
    """Exact limit of f as q -> 1; f must not involve t."""
    f = QTRat(f)
    if not f.free_of_t():
        raise ValueError(f"limit_q1 needs a t-free value, got {f}")
    one_minus_q = 1 - _PQ
    num, den = f._num, f._den
    while den.subs({"q": 1}).is_zero():
        if not num.subs({"q": 1}).is_zero():
            raise PoleError(f"pole at q=1: {f}")
        num = num / one_minus_q
        den = den / one_minus_q
    n1 = int(num.subs({"q": 1}).coeffs()[0]) if not num.subs({"q": 1}).is_zero() else 0
    d1 = int(den.subs({"q": 1}).coeffs()[0])
    return Fraction(n1, d1)


def is_positive_integral(f):
    """(True, None) iff f is a polynomial in q, t with nonnegative integer coefficients.

    On failure the witness is the first offending term, or the reduced
    denominator if f is not a polynomial at all.
    """
    f = QTRat(f)
    if not f.is_polynomial():
        return False, f.denominator()
    for (i, j), c in sorted(f.to_poly().items()):
        if c < 0 or c.denominator != 1 or i < 0 or j < 0:
            return False, QTPoly.monomial(i, j, c)
    return True, None


def elementary(values, k):
    """e_k of the alphabet ``values`` (a list of QTRat-coercible entries)."""
    if k < 0 or k > len(values):
        return ZERO
    e = [ONE] + [ZERO] * k
    for v in values:
        v = QTRat(v)
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


def q_integer(k, var=None):
    """[k]_q = 1 + q + ... + q^{k-1} (or in t when var is T)."""
    var = Q if var is None else var
    total = ZERO
    for i in range(k):
        total = total + var ** i
    return total
