"""Dense integer polynomials with exact resultants and discriminants.

Coefficients are stored low degree first, so ``IntPolynomial([1, 1, 1])`` is
``X^2 + X + 1``.  Everything here works over Python integers; nothing is ever
rounded.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "IntPolynomial",
    "ZERO",
    "X",
    "evaluate",
    "resultant",
    "sylvester_resultant",
    "modular_resultant",
    "discriminant",
    "is_perfect_square",
    "is_squarefree",
    "poly_gcd",
    "cyclotomic_polynomial",
    "cyclotomic_factors",
    "euler_phi",
]

# Mersenne prime exponents used by the modular resultant.
_MERSENNE_EXPONENTS = (61, 89, 107, 127, 521, 607, 1279, 2203, 2281, 3217, 4253, 4423, 9689, 9941, 11213, 19937)


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPolynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1; use
    :attr:`is_zero` rather than comparing degrees.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _strip([int(a) for a in coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[j]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if j == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else f"{mag}*") + ("X" if j == 1 else f"X^{j}")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __neg__(self):
        return IntPolynomial([-a for a in self.coeffs])

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, v in enumerate(b):
            out[j] += v
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = IntPolynomial([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        q, r = _divmod_exact(list(self.coeffs), list(_coerce(other).coeffs))
        return IntPolynomial(q), IntPolynomial(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> IntPolynomial:
        return IntPolynomial([j * a for j, a in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def primitive_part(self) -> IntPolynomial:
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial([a // g for a in self.coeffs])

    def compose_neg(self) -> IntPolynomial:
        """Return p(-X)."""
        return IntPolynomial([a if j % 2 == 0 else -a for j, a in enumerate(self.coeffs)])

    def reverse(self) -> IntPolynomial:
        """Return X^deg * p(1/X)."""
        return IntPolynomial(self.coeffs[::-1])


ZERO = IntPolynomial()
X = IntPolynomial([0, 1])


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod_exact(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division with remainder over Z; every quotient step must divide exactly."""
    if not b:
        raise ZeroDivisionError("zero polynomial")
    db, lc = len(b) - 1, b[-1]
    r = list(a)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        top = r[i + db]
        if top == 0:
            continue
        c, rem = divmod(top, lc)
        if rem:
            raise ArithmeticError("division not exact over the integers")
        q[i] = c
        for j, v in enumerate(b):
            r[i + j] -= c * v
    return _strip(q), _strip(r[:db])


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    db, lc = len(b) - 1, b[-1]
    r = list(a)
    e = len(r) - 1 - db + 1
    while r and len(r) - 1 >= db:
        top = r[-1]
        shift = len(r) - 1 - db
        r = [lc * v for v in r]
        for j, v in enumerate(b):
            r[shift + j] -= top * v
        _strip(r)
        e -= 1
    if e > 0:
        f = lc ** e
        r = [f * v for v in r]
    return r


def evaluate(p: IntPolynomial, x: int) -> int:
    acc = 0
    for a in reversed(p.coeffs):
        acc = acc * x + a
    return acc


def _require_nonzero(*polys: IntPolynomial) -> None:
    for p in polys:
        if p.is_zero:
            raise ValueError("zero polynomial")


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) via the subresultant pseudo-remainder sequence."""
    _require_nonzero(p, q)
    a, b = list(p.coeffs), list(q.coeffs)
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if da % 2 and db % 2:
            sign = -1
    if db == 0:
        return sign * b[0] ** da
    ca = math.gcd(*a)
    cb = math.gcd(*b)
    a = [v // ca for v in a]
    b = [v // cb for v in b]
    t = ca ** db * cb ** da
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _prem(a, b)
        if not r:
            return 0
        div = g * h ** delta
        a, b = b, [v // div for v in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)
        if len(b) == 1:
            da = len(a) - 1
            return sign * t * (b[0] ** da // h ** (da - 1))


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> list[list[int]]:
    dp, dq = p.degree, q.degree
    size = dp + dq
    hp, hq = p.coeffs[::-1], q.coeffs[::-1]
    rows = []
    for i in range(dq):
        rows.append([0] * i + list(hp) + [0] * (size - i - dp - 1))
    for i in range(dp):
        rows.append([0] * i + list(hq) + [0] * (size - i - dq - 1))
    return rows


def sylvester_resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) as the determinant of the Sylvester matrix (Bareiss elimination)."""
    _require_nonzero(p, q)
    if p.degree == 0:
        return p.coeffs[0] ** q.degree
    if q.degree == 0:
        return q.coeffs[0] ** p.degree
    return _bareiss_det(sylvester_matrix(p, q))


def _res_mod(a: list[int], b: list[int], P: int) -> int:
    a = [v % P for v in a]
    b = [v % P for v in b]
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, P) % P
        r = a[:]
        inv = pow(b[-1], -1, P)
        for i in range(da - db, -1, -1):
            c = r[i + db] * inv % P
            if c:
                for j in range(db + 1):
                    r[i + j] = (r[i + j] - c * b[j]) % P
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return 0
        if da & db & 1:
            res = -res
        res = res * pow(b[-1], da - len(r) + 1, P) % P
        a, b = b, r


def modular_resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) by Euclid over a Mersenne prime field large enough to hold it.

    The prime exceeds twice the Hadamard bound of the Sylvester matrix, so the
    symmetric residue is the integer resultant.  The leading coefficients are
    below the bound, hence nonzero modulo the prime, so formal degrees survive
    the reduction.
    """
    _require_nonzero(p, q)
    dp, dq = p.degree, q.degree
    if dp == 0 or dq == 0:
        return sylvester_resultant(p, q)
    bound_sq = sum(a * a for a in p.coeffs) ** dq * sum(b * b for b in q.coeffs) ** dp
    for e in _MERSENNE_EXPONENTS:
        P = (1 << e) - 1
        if P * P > 4 * bound_sq:
            break
    else:
        return resultant(p, q)
    a, b = list(p.coeffs), list(q.coeffs)
    sign = 1
    if dp < dq:
        a, b = b, a
        if dp & dq & 1:
            sign = -1
    r = _res_mod(a, b, P)
    if r > P // 2:
        r -= P
    return sign * r


_RESULTANTS = {
    "subresultant": resultant,
    "sylvester": sylvester_resultant,
    "modular": modular_resultant,
}


def discriminant(p: IntPolynomial, method: str = "subresultant") -> int:
    """Discriminant with the sign convention (-1)^(n(n-1)/2) Res(p, p') / lc(p).

    Degree-1 polynomials get discriminant 1.
    """
    n = p.degree
    if n < 1:
        raise ValueError("degree too small")
    try:
        res = _RESULTANTS[method](p, p.derivative())
    except KeyError:
        raise ValueError(f"unknown resultant method {method!r}") from None
    lc = p.coeffs[-1]
    d, rem = divmod(res, lc)
    if rem:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return -d if (n * (n - 1) // 2) % 2 else d


def is_perfect_square(z: int) -> bool:
    """True iff z is the square of an integer; 0 counts as a square."""
    if z < 0:
        return False
    r = math.isqrt(z)
    return r * r == z


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q[X], normalized to positive leading coefficient."""
    a, b = p.primitive_part(), q.primitive_part()
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = IntPolynomial(_prem(list(a.coeffs), list(b.coeffs)))
        a, b = b, r.primitive_part()
    return a.primitive_part()


def is_squarefree(p: IntPolynomial) -> bool:
    if p.degree < 1:
        raise ValueError("degree too small")
    return poly_gcd(p, p.derivative()).degree == 0


def euler_phi(n: int) -> int:
    result, m, q = n, n, 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> IntPolynomial:
    p = IntPolynomial([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            p, rem = divmod(p, _cyclotomic(e))
            assert rem.is_zero
    return p


def cyclotomic_polynomial(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, by dividing X^d - 1 by the lower ones."""
    if d < 1:
        raise ValueError("d must be positive")
    return _cyclotomic(d)


def cyclotomic_factors(p: IntPolynomial) -> list[int]:
    """All d such that the d-th cyclotomic polynomial divides p.

    Only d with phi(d) <= deg p can divide, and phi(d) >= sqrt(d/2) keeps the
    search inside d <= 2 deg^2.
    """
    n = p.degree
    if n < 1:
        raise ValueError("degree too small")
    coeffs = list(p.coeffs)
    found = []
    for d in range(1, 2 * n * n + 1):
        if euler_phi(d) > n:
            continue
        # cyclotomic polynomials are monic, so the division stays in Z
        _, rem = _divmod_exact(coeffs, list(_cyclotomic(d).coeffs))
        if not rem:
            found.append(d)
    return found
