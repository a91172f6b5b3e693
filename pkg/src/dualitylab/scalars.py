"""Scalar backends: tolerance-based complex floats and exact cyclotomic rationals.

The exact backend works in the field of rationals with a primitive N-th root
of unity adjoined.  Values are coefficient tuples against the power basis
1, z, ..., z^(d-1), reduced modulo the N-th cyclotomic polynomial; equality is
literal tuple equality, and inversion runs the extended Euclidean algorithm
against the (irreducible) modulus.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divmod(a, b):
    """Quotient and remainder of a by b over the rationals; b must be nonzero."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    if db < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [_ZERO] * max(len(a) - db, 0)
    while len(_trim(a)) - 1 >= db and a:
        da = len(a) - 1
        coef = a[-1] / lead
        q[da - db] = coef
        for j, bj in enumerate(b):
            a[da - db + j] -= coef * bj
        _trim(a)
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of the proper
    divisors of n; every division is exact.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    poly = [-_ONE] + [_ZERO] * (n - 1) + [_ONE]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(poly, list(cyclotomic_poly(d)))
            if _trim(list(r)):
                raise ArithmeticError(f"non-exact division while building index {n}")
            poly = q
    return tuple(poly)


class ComplexFloatBackend:
    """IEEE complex numbers with a fixed absolute equality tolerance."""

    name = "float"
    exact = False

    def __init__(self, tolerance: float = 1e-9):
        if tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {tolerance}")
        self.tolerance = tolerance
        self.zero = 0j
        self.one = 1 + 0j

    def from_int(self, n: int):
        return complex(n)

    def from_fraction(self, q) -> complex:
        return complex(float(Fraction(q)))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def conj(self, a):
        return a.conjugate()

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1.0 / a

    def scale(self, a, q):
        return a * float(Fraction(q))

    def root(self, k: int, m: int):
        """The k-th power of the primitive m-th root of unity."""
        if m < 1:
            raise ValueError(f"root order must be >= 1, got {m}")
        return cmath.exp(2j * math.pi * (k % m) / m)

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.tolerance

    def is_zero(self, a) -> bool:
        return abs(a) <= self.tolerance

    def to_complex(self, a) -> complex:
        return a

    def residual(self, a, b) -> float:
        return abs(a - b)

    def format(self, a) -> str:
        return f"{a.real:.12g}{a.imag:+.12g}j"

    def __eq__(self, other) -> bool:
        return type(other) is ComplexFloatBackend and other.tolerance == self.tolerance

    def __hash__(self):
        return hash((self.name, self.tolerance))


class CyclotomicBackend:
    """Exact arithmetic in the rationals with a primitive N-th root adjoined."""

    name = "cyclotomic"
    exact = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {n}")
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.degree = len(self.modulus) - 1
        self.zero = tuple([_ZERO] * self.degree)
        self.one = self._reduce([_ONE])
        # x^e mod the modulus, for every exponent mod n
        self._mono = []
        for e in range(n):
            self._mono.append(self._reduce([_ZERO] * e + [_ONE]))

    def _reduce(self, poly) -> tuple[Fraction, ...]:
        _, r = _poly_divmod(list(poly), list(self.modulus))
        r = list(r) + [_ZERO] * (self.degree - len(r))
        return tuple(r[: self.degree])

    def from_int(self, k: int):
        return self._reduce([Fraction(k)])

    def from_fraction(self, q):
        return self._reduce([Fraction(q)])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        if not any(a) or not any(b):
            return self.zero
        return self._reduce(_poly_mul(list(a), list(b)))

    def scale(self, a, q):
        q = Fraction(q)
        return tuple(x * q for x in a)

    def conj(self, a):
        """Complex conjugation: substitute z -> z^(n-1) monomial by monomial."""
        out = [_ZERO] * self.degree
        for k, c in enumerate(a):
            if c:
                mono = self._mono[(k * (self.n - 1)) % self.n]
                for j, m in enumerate(mono):
                    out[j] += c * m
        return tuple(out)

    def inv(self, a):
        """Extended Euclid against the modulus; defined for every nonzero value."""
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        # invariants: r0 = s0 * a (mod modulus), r1 = s1 * a (mod modulus)
        r0, r1 = _trim(list(self.modulus)), _trim(list(a))
        s0, s1 = [_ZERO], [_ONE]
        while _trim(list(r1)):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            qs1 = _poly_mul(q, s1) if q and s1 else []
            s2 = [
                (s0[i] if i < len(s0) else _ZERO) - (qs1[i] if i < len(qs1) else _ZERO)
                for i in range(max(len(s0), len(qs1), 1))
            ]
            s0, s1 = s1, _trim(s2)
        if len(r0) != 1:
            raise ArithmeticError("modulus not coprime to value; reducible modulus?")
        c = r0[0]
        return self._reduce([x / c for x in s0])

    def root(self, k: int, m: int):
        """z_m^k as an element of this field; m must divide the ambient order."""
        if m < 1:
            raise ValueError(f"root order must be >= 1, got {m}")
        if self.n % m != 0:
            raise ValueError(f"order-{m} roots unavailable in the cyclotomic({self.n}) field")
        return self._mono[((k % m) * (self.n // m)) % self.n]

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return not any(a)

    def to_complex(self, a) -> complex:
        z = cmath.exp(2j * math.pi / self.n)
        acc = 0j
        for k in reversed(range(self.degree)):
            acc = acc * z + complex(float(a[k]))
        return acc

    def residual(self, a, b) -> float:
        return 0.0 if a == b else abs(self.to_complex(a) - self.to_complex(b))

    def format(self, a) -> str:
        """Readable polynomial in the primitive root z, e.g. ``1-z^2``."""
        terms = []
        for k, c in enumerate(a):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            power = "z" if k == 1 else f"z^{k}"
            if c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"{c}*{power}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __eq__(self, other) -> bool:
        return type(other) is CyclotomicBackend and other.n == self.n

    def __hash__(self):
        return hash((self.name, self.n))


def make_backend(name: str, tolerance: float = 1e-9, order: int | None = None):
    """Build a backend by name: 'float' or 'cyclotomic' (needs the root order)."""
    if name == "float":
        return ComplexFloatBackend(tolerance=tolerance)
    if name == "cyclotomic":
        if order is None:
            raise ValueError("cyclotomic backend needs the root order")
        return CyclotomicBackend(order)
    raise ValueError(f"unknown backend {name!r} (expected 'float' or 'cyclotomic')")
