"""Exact scalars: rationals and elements of cyclotomic fields Q(xi_m).

Rationals are ``gmpy2.mpq``.  Elements of Q(xi_m) with deg(Phi_m) > 1 are
:class:`CycloScalar` residues modulo the m-th cyclotomic polynomial.  For
m = 1, 2 the field is Q itself and every scalar stays an ``mpq``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Union

from gmpy2 import mpq

__all__ = [
    "mpq",
    "CycloScalar",
    "Field",
    "FieldMismatch",
    "QQ",
    "cyclotomic_polynomial",
    "root_of_unity",
    "scalar_add",
    "scalar_mul",
    "scalar_neg",
    "scalar_inv",
    "as_scalar",
    "is_zero",
]


class FieldMismatch(ValueError):
    """Operands live in different cyclotomic fields."""


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, coefficient lists low -> high

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([mpq(c) for c in out])


def _pdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    r = [mpq(c) for c in a]
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = _trim(r)
    return _trim(q), r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Coefficients (low to high) of the m-th cyclotomic polynomial.

    Computed as (x^m - 1) divided by the product of Phi_d over proper
    divisors d of m.
    """
    if m < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {m}")
    num = [mpq(-1)] + [mpq(0)] * (m - 1) + [mpq(1)]
    den = [mpq(1)]
    for d in range(1, m):
        if m % d == 0:
            den = _pmul(den, list(cyclotomic_polynomial(d)))
    q, r = _pdivmod(num, den)
    assert not r
    return tuple(q)


@lru_cache(maxsize=None)
def _reduction_table(m: int):
    # rows: x^k mod Phi_m for 0 <= k < 2*deg
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows = []
    for k in range(2 * d):
        _, r = _pdivmod([mpq(0)] * k + [mpq(1)], list(phi))
        rows.append(tuple(r[i] if i < len(r) else mpq(0) for i in range(d)))
    return rows


def _phi_degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CycloScalar:
    """Element of Q(xi_m) stored as its reduced residue mod Phi_m."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Sequence):
        d = _phi_degree(order)
        cs = [mpq(c) for c in coeffs]
        if len(cs) > d:
            cs = _reduce(order, cs)
        else:
            cs = cs + [mpq(0)] * (d - len(cs))
        self.order = order
        self.coeffs = tuple(cs)
        self._hash = None

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycloScalar):
            if other.order != self.order:
                raise FieldMismatch(
                    f"mixed cyclotomic orders {self.order} and {other.order}")
            return other.coeffs
        if isinstance(other, (int, type(mpq(0)))) or hasattr(other, "denominator"):
            return (mpq(other),) + (mpq(0),) * (len(self.coeffs) - 1)
        return None

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.order, [a + b for a, b in zip(self.coeffs, o)])

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.order, [a - b for a, b in zip(self.coeffs, o)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.order, [b - a for a, b in zip(self.coeffs, o)])

    def __mul__(self, other):
        if isinstance(other, CycloScalar):
            if other.order != self.order:
                raise FieldMismatch(
                    f"mixed cyclotomic orders {self.order} and {other.order}")
            prod = _pmul(self.coeffs, other.coeffs)
            return CycloScalar(self.order, _reduce(self.order, prod))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = o[0]
        return CycloScalar(self.order, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        """Inverse via the extended Euclidean algorithm over Q[x]."""
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        phi = list(cyclotomic_polynomial(self.order))
        # invariant: s*a == r (mod phi)
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        return CycloScalar(self.order, _reduce(self.order, [x / c for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, CycloScalar):
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o[0] == 0:
            raise ZeroDivisionError("division by zero")
        return CycloScalar(self.order, [a / o[0] for a in self.coeffs])

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloScalar(self.order, o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycloScalar(self.order, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            return self.order == other.order and self.coeffs == other.coeffs
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"CycloScalar({self.order}, {format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _reduce(m: int, poly) -> list:
    d = _phi_degree(m)
    table = _reduction_table(m)
    out = [mpq(0)] * d
    for k, c in enumerate(poly):
        if c == 0:
            continue
        if k < d:
            out[k] += c
        elif k < 2 * d:
            row = table[k]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
        else:
            _, r = _pdivmod([mpq(0)] * k + [mpq(1)], list(cyclotomic_polynomial(m)))
            for i, rc in enumerate(r):
                out[i] += c * rc
    return out


Scalar = Union[int, "mpq", CycloScalar]


def format_scalar(c) -> str:
    """Render a scalar in the DSL literal syntax (``3/2``, ``xi^2``, ``(1 - xi)``)."""
    if not isinstance(c, CycloScalar):
        return str(mpq(c))
    terms = []
    for k, a in enumerate(c.coeffs):
        if a == 0:
            continue
        mono = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
        if not mono:
            body = str(abs(a))
        elif abs(a) == 1:
            body = mono
        else:
            body = f"{abs(a)}*{mono}"
        terms.append(("-" if a < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s if len(terms) == 1 and terms[0][0] == "+" else f"({s})"


class Field:
    """The coefficient field of a session: Q or one Q(xi_m)."""

    def __init__(self, order: int = 1):
        if order < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {order}")
        self.order = order
        self.degree = _phi_degree(order)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, Field) and self.degree_key() == other.degree_key()

    def __hash__(self):
        return hash(self.degree_key())

    def degree_key(self):
        # Q(xi_1) = Q(xi_2) = Q
        return 1 if self.degree == 1 else self.order

    def __repr__(self):
        return "Field(QQ)" if self.is_rational else f"Field(cyclotomic {self.order})"

    def coerce(self, c):
        if isinstance(c, CycloScalar):
            if self.is_rational:
                if not c.is_rational():
                    raise FieldMismatch(f"{c!r} is not rational")
                return c.coeffs[0]
            if c.order != self.order:
                raise FieldMismatch(f"{c!r} not in Q(xi_{self.order})")
            return c
        return mpq(c)

    def xi(self, e: int = 1):
        return root_of_unity(self.order, e)

    def zero(self):
        return mpq(0)

    def one(self):
        return mpq(1)


QQ = Field(1)


def root_of_unity(m: int, e: int):
    """xi_m ** (e mod m), fully reduced (an ``mpq`` when m <= 2)."""
    e %= m
    if _phi_degree(m) == 1:
        return mpq(1) if (m == 1 or e == 0) else mpq(-1)
    return CycloScalar(m, _reduce(m, [mpq(0)] * e + [mpq(1)]))


def _check_pair(a, b):
    if isinstance(a, CycloScalar) and isinstance(b, CycloScalar) and a.order != b.order:
        raise FieldMismatch(f"mixed cyclotomic orders {a.order} and {b.order}")


def scalar_add(a, b):
    _check_pair(a, b)
    return a + b


def scalar_mul(a, b):
    _check_pair(a, b)
    return a * b


def scalar_neg(a):
    return -a


def scalar_inv(a):
    if isinstance(a, CycloScalar):
        return a.inverse()
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / mpq(a)


def as_scalar(c):
    if isinstance(c, CycloScalar):
        return c
    return mpq(c)


def is_zero(c) -> bool:
    return not c
