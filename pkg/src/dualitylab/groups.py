"""Concrete discrete groups with exact arithmetic and canonical element forms.

Elements are plain tuples in a per-kind normal form, so they hash, compare,
and serialize deterministically.  All arithmetic uses Python integers, which
are arbitrary precision; nothing here can wrap around silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

Element = tuple

SYMMETRIC_DEGREE_CAP = 6

_KINDS = ("finite_abelian", "symmetric", "heisenberg", "free", "free_abelian")


@dataclass(frozen=True)
class GroupSpec:
    """Parsed description of a buildable group."""

    kind: str
    orders: tuple[int, ...] = ()
    rank: int = 0
    degree: int = 0
    label: str = ""

    def __post_init__(self):
        if self.kind == "finite_abelian":
            if not self.orders:
                raise ValueError("finite_abelian needs a non-empty tuple of orders")
            for n in self.orders:
                if not isinstance(n, int) or n <= 0:
                    raise ValueError(f"cyclic factor order must be a positive integer, got {n!r}")
        elif self.kind == "symmetric":
            if not isinstance(self.degree, int) or not 1 <= self.degree <= SYMMETRIC_DEGREE_CAP:
                raise ValueError(
                    f"symmetric degree must be an integer in 1..{SYMMETRIC_DEGREE_CAP}, got {self.degree!r}"
                )
        elif self.kind in ("free", "free_abelian"):
            if not isinstance(self.rank, int) or self.rank < 1:
                raise ValueError(f"{self.kind} rank must be a positive integer, got {self.rank!r}")
        elif self.kind != "heisenberg":
            raise ValueError(f"unknown group kind {self.kind!r} (expected one of {_KINDS})")

    @classmethod
    def finite_abelian(cls, orders: Sequence[int], label: str = "") -> "GroupSpec":
        return cls(kind="finite_abelian", orders=tuple(orders), label=label)

    @classmethod
    def symmetric(cls, degree: int, label: str = "") -> "GroupSpec":
        return cls(kind="symmetric", degree=degree, label=label)

    @classmethod
    def heisenberg(cls, label: str = "") -> "GroupSpec":
        return cls(kind="heisenberg", label=label)

    @classmethod
    def free(cls, rank: int, label: str = "") -> "GroupSpec":
        return cls(kind="free", rank=rank, label=label)

    @classmethod
    def free_abelian(cls, rank: int, label: str = "") -> "GroupSpec":
        return cls(kind="free_abelian", rank=rank, label=label)


class Group:
    """Base class: a group whose elements are canonical tuples.

    Subclasses fix the payload shape and implement the law.  ``check`` is the
    membership gate; every public operation validates through it, so a payload
    from the wrong group raises ValueError instead of corrupting state.
    """

    kind: str = ""
    is_finite: bool = False

    def __init__(self, spec: GroupSpec, label: str):
        self.spec = spec
        self.label = spec.label or label

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    @property
    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        return None

    def check(self, x) -> Element:
        """Validate x as an element and return its canonical form."""
        raise NotImplementedError

    def mul(self, x: Element, y: Element) -> Element:
        raise NotImplementedError

    def inv(self, x: Element) -> Element:
        raise NotImplementedError

    def key(self, x: Element) -> Element:
        """Canonical key: the normal-form payload itself (hashable, ordered)."""
        return self.check(x)

    def elements(self) -> Iterator[Element]:
        """Deterministic enumeration; only finite groups support it."""
        raise ValueError(f"group {self.label!r} is infinite and cannot be enumerated")

    def format(self, x: Element) -> str:
        return repr(self.check(x))

    def power(self, x: Element, n: int) -> Element:
        """x**n for any integer n, by repeated squaring."""
        x = self.check(x)
        if n < 0:
            x, n = self.inv(x), -n
        acc = self.identity
        while n:
            if n & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            n >>= 1
        return acc

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


def _check_int_tuple(x, size: int, what: str) -> tuple:
    if not isinstance(x, tuple) or len(x) != size:
        raise ValueError(f"{what}: expected a tuple of {size} integers, got {x!r}")
    for a in x:
        if not isinstance(a, int):
            raise ValueError(f"{what}: non-integer entry {a!r}")
    return x


class FiniteAbelianGroup(Group):
    """Direct product of cyclic groups Z_{n_1} x ... x Z_{n_r}, residue tuples."""

    kind = "finite_abelian"
    is_finite = True

    def __init__(self, spec: GroupSpec):
        super().__init__(spec, "Z" + "x".join(str(n) for n in spec.orders))
        self.orders = spec.orders
        self._order = 1
        for n in self.orders:
            self._order *= n
        self._identity = tuple(0 for _ in self.orders)

    @property
    def identity(self) -> Element:
        return self._identity

    @property
    def order(self) -> int:
        return self._order

    @property
    def exponent(self) -> int:
        acc = 1
        for n in self.orders:
            g = _gcd(acc, n)
            acc = acc // g * n
        return acc

    def check(self, x) -> Element:
        _check_int_tuple(x, len(self.orders), self.label)
        for a, n in zip(x, self.orders):
            if not 0 <= a < n:
                raise ValueError(f"{self.label}: residue {a} out of range for order {n}")
        return x

    def mul(self, x, y):
        self.check(x), self.check(y)
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def inv(self, x):
        self.check(x)
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def elements(self) -> Iterator[Element]:
        return iter(itertools.product(*(range(n) for n in self.orders)))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class SymmetricGroup(Group):
    """Permutations of {0..n-1} as image tuples; (p*q)[i] = p[q[i]]."""

    kind = "symmetric"
    is_finite = True

    def __init__(self, spec: GroupSpec):
        super().__init__(spec, f"S{spec.degree}")
        self.degree = spec.degree
        self._identity = tuple(range(self.degree))
        self._order = 1
        for k in range(2, self.degree + 1):
            self._order *= k

    @property
    def identity(self) -> Element:
        return self._identity

    @property
    def order(self) -> int:
        return self._order

    def check(self, x) -> Element:
        _check_int_tuple(x, self.degree, self.label)
        if sorted(x) != list(range(self.degree)):
            raise ValueError(f"{self.label}: {x!r} is not a permutation of 0..{self.degree - 1}")
        return x

    def mul(self, x, y):
        # apply y first, then x
        self.check(x), self.check(y)
        return tuple(x[y[i]] for i in range(self.degree))

    def inv(self, x):
        self.check(x)
        out = [0] * self.degree
        for i, xi in enumerate(x):
            out[xi] = i
        return tuple(out)

    def elements(self) -> Iterator[Element]:
        return iter(itertools.permutations(range(self.degree)))


class HeisenbergGroup(Group):
    """Integer triples (a, b, c) under (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b').

    The triple (a, b, c) encodes the unitriangular matrix with a top-middle,
    b middle-right, and c top-right; the law above is exactly that matrix
    product, and (a,b,c)^-1 = (-a, -b, a*b - c).
    """

    kind = "heisenberg"
    is_finite = False

    def __init__(self, spec: GroupSpec):
        super().__init__(spec, "Heis")

    @property
    def identity(self) -> Element:
        return (0, 0, 0)

    def check(self, x) -> Element:
        return _check_int_tuple(x, 3, self.label)

    def mul(self, x, y):
        self.check(x), self.check(y)
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def inv(self, x):
        self.check(x)
        a, b, c = x
        return (-a, -b, a * b - c)


class FreeGroup(Group):
    """Free group on r generators; elements are reduced signed-index words.

    The word (1, -2, 1) means g1 * g2^-1 * g1.  Normal form bans adjacent
    cancelling pairs, and mul re-reduces across the junction.
    """

    kind = "free"
    is_finite = False

    def __init__(self, spec: GroupSpec):
        super().__init__(spec, f"F{spec.rank}")
        self.rank = spec.rank

    @property
    def identity(self) -> Element:
        return ()

    def check(self, x) -> Element:
        if not isinstance(x, tuple):
            raise ValueError(f"{self.label}: expected a tuple word, got {x!r}")
        for s in x:
            if not isinstance(s, int) or s == 0 or abs(s) > self.rank:
                raise ValueError(f"{self.label}: bad letter {s!r} (rank {self.rank})")
        for a, b in zip(x, x[1:]):
            if a == -b:
                raise ValueError(f"{self.label}: word {x!r} is not reduced")
        return x

    def mul(self, x, y):
        self.check(x), self.check(y)
        out = list(x)
        for s in y:
            if out and out[-1] == -s:
                out.pop()
            else:
                out.append(s)
        return tuple(out)

    def inv(self, x):
        self.check(x)
        return tuple(-s for s in reversed(x))


class FreeAbelianGroup(Group):
    """Z^r with componentwise addition; elements are integer vectors."""

    kind = "free_abelian"
    is_finite = False

    def __init__(self, spec: GroupSpec):
        super().__init__(spec, f"Z^{spec.rank}")
        self.rank = spec.rank

    @property
    def identity(self) -> Element:
        return tuple(0 for _ in range(self.rank))

    def check(self, x) -> Element:
        return _check_int_tuple(x, self.rank, self.label)

    def mul(self, x, y):
        self.check(x), self.check(y)
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        self.check(x)
        return tuple(-a for a in x)


class DirectProductGroup(Group):
    """G x H with pair elements (x, y); used by box weights and tensor checks."""

    kind = "product"

    def __init__(self, left: Group, right: Group):
        self.left = left
        self.right = right
        self.spec = None
        self.label = f"({left.label})x({right.label})"
        self.is_finite = left.is_finite and right.is_finite

    @property
    def identity(self) -> Element:
        return (self.left.identity, self.right.identity)

    @property
    def order(self) -> int | None:
        if self.is_finite:
            return self.left.order * self.right.order
        return None

    def check(self, x) -> Element:
        if not isinstance(x, tuple) or len(x) != 2:
            raise ValueError(f"{self.label}: expected a pair, got {x!r}")
        return (self.left.check(x[0]), self.right.check(x[1]))

    def mul(self, x, y):
        self.check(x), self.check(y)
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def inv(self, x):
        self.check(x)
        return (self.left.inv(x[0]), self.right.inv(x[1]))

    def elements(self) -> Iterator[Element]:
        if not self.is_finite:
            return super().elements()
        return iter(itertools.product(self.left.elements(), self.right.elements()))

    def format(self, x):
        x = self.check(x)
        return f"({self.left.format(x[0])}|{self.right.format(x[1])})"


_BUILDERS = {
    "finite_abelian": FiniteAbelianGroup,
    "symmetric": SymmetricGroup,
    "heisenberg": HeisenbergGroup,
    "free": FreeGroup,
    "free_abelian": FreeAbelianGroup,
}


def make_group(spec: GroupSpec) -> Group:
    """Build the group described by spec."""
    return _BUILDERS[spec.kind](spec)


def direct_product(left: Group, right: Group) -> DirectProductGroup:
    return DirectProductGroup(left, right)


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered tuple of generators; order matters for enumerated weights."""

    elements: tuple[Element, ...]
    closed_under_inverse: bool = False


def make_generator_set(group: Group, elements: Sequence[Element], check_generates: bool = True) -> GeneratorSet:
    """Validate generators against the group and package them.

    Duplicates are rejected.  For finite groups the semigroup closure is
    checked against the whole group; infinite built-ins rely on the standard
    sets constructed by ``standard_generators``.
    """
    canon = tuple(group.check(e) for e in elements)
    seen = set()
    for e in canon:
        if e in seen:
            raise ValueError(f"duplicate generator {e!r}")
        seen.add(e)
    closed = all(group.inv(e) in seen for e in canon)
    if check_generates and group.is_finite:
        reached = {group.identity}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for a in canon:
                    y = group.mul(x, a)
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(reached) != group.order:
            raise ValueError(
                f"generators reach only {len(reached)} of {group.order} elements of {group.label}"
            )
    return GeneratorSet(elements=canon, closed_under_inverse=closed)


def standard_generators(group: Group) -> GeneratorSet:
    """The default ordered generating set for each built-in kind.

    Orderings are part of the contract: enumerated weights assign weight k to
    the k-th generator listed here.
    """
    if isinstance(group, FiniteAbelianGroup):
        gens = []
        for i, n in enumerate(group.orders):
            if n > 1:
                gens.append(tuple(1 if j == i else 0 for j in range(len(group.orders))))
        return make_generator_set(group, gens)
    if isinstance(group, SymmetricGroup):
        n = group.degree
        if n == 1:
            return make_generator_set(group, [])
        swap = tuple([1, 0] + list(range(2, n)))
        if n == 2:
            return make_generator_set(group, [swap])
        cycle = tuple(list(range(1, n)) + [0])
        return make_generator_set(group, [swap, cycle])
    if isinstance(group, HeisenbergGroup):
        a, b = (1, 0, 0), (0, 1, 0)
        return make_generator_set(group, [a, group.inv(a), b, group.inv(b)], check_generates=False)
    if isinstance(group, FreeGroup):
        gens = []
        for i in range(1, group.rank + 1):
            gens.extend([(i,), (-i,)])
        return make_generator_set(group, gens, check_generates=False)
    if isinstance(group, FreeAbelianGroup):
        gens = []
        for i in range(group.rank):
            e = tuple(1 if j == i else 0 for j in range(group.rank))
            gens.extend([e, group.inv(e)])
        return make_generator_set(group, gens, check_generates=False)
    raise ValueError(f"no standard generator set for {group.label!r}")


def _listed(p):
    if isinstance(p, list):
        return tuple(_listed(q) for q in p)
    return p


def element_from_payload(group: Group, payload) -> Element:
    """Convert a JSON-style payload (possibly nested lists of ints) to an element."""
    return group.check(_listed(payload))
