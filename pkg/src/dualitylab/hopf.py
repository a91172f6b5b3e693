"""Finite-dimensional Hopf structure tensors over pluggable scalar backends.

Two constructions anchor everything: the algebra of scalar functions on a
finite group (pointwise product, comultiplication along the group law) and its
dual, the group convolution algebra.  Dualization transposes the five
structure tensors; on finite abelian groups the character table gives a
concrete isomorphism whose round trip is asserted as literal matrix equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .groups import (
    DirectProductGroup,
    Element,
    FiniteAbelianGroup,
    Group,
    GroupSpec,
    direct_product,
    make_group,
)
from .reports import CheckResult

TENSOR_DIM_CAP = 10**4
BRUTE_FORCE_DIM_CAP = 64
DUALITY_ORDER_CAP = 256

# Vec maps basis index -> scalar; PairVec maps (index, index) -> scalar.


@dataclass(frozen=True)
class HopfAlgebra:
    """Sparse structure tensors of a finite-dimensional Hopf algebra.

    mul[(i, j)] is the product of basis elements i and j as a Vec; comul[i]
    is the coproduct of basis element i as a PairVec; unit and counit are a
    Vec and a coefficient row; antipode[i] is the image of basis element i.
    Missing entries mean zero.  ``source`` tags the two canonical
    constructions ("functions" or "group", with the group) so closed-form
    shortcuts can be dispatched; it never affects verification.
    """

    dim: int
    labels: tuple[str, ...]
    backend: object
    mul: Mapping
    unit: Mapping
    comul: Mapping
    counit: Mapping
    antipode: Mapping
    source: tuple[str, Group] | None = None

    def basis(self, i: int):
        return {i: self.backend.one}


def function_algebra(group: Group, backend) -> HopfAlgebra:
    """Scalar functions on a finite group: the basis is the indicator family.

    Product is pointwise, the coproduct of an indicator sums the indicator
    pairs over factorizations of its point, the counit evaluates at the
    identity, and the antipode precomposes with inversion.
    """
    if not group.is_finite:
        raise ValueError(f"function algebra needs a finite group, got {group.label!r}")
    elems = list(group.elements())
    index = {x: i for i, x in enumerate(elems)}
    one = backend.one
    mul = {(i, i): {i: one} for i in range(len(elems))}
    unit = {i: one for i in range(len(elems))}
    comul: dict[int, dict] = {i: {} for i in range(len(elems))}
    for s in elems:
        for t in elems:
            comul[index[group.mul(s, t)]][(index[s], index[t])] = one
    e = index[group.identity]
    counit = {e: one}
    antipode = {i: {index[group.inv(x)]: one} for i, x in enumerate(elems)}
    return HopfAlgebra(
        dim=len(elems),
        labels=tuple("1_" + group.format(x) for x in elems),
        backend=backend,
        mul=mul,
        unit=unit,
        comul=comul,
        counit=counit,
        antipode=antipode,
        source=("functions", group),
    )


def group_algebra(group: Group, backend) -> HopfAlgebra:
    """The convolution algebra spanned by group elements (point masses).

    Product follows the group law, every basis vector is grouplike, the
    counit is identically one, and the antipode inverts the point.
    """
    if not group.is_finite:
        raise ValueError(f"group algebra needs a finite group, got {group.label!r}")
    elems = list(group.elements())
    index = {x: i for i, x in enumerate(elems)}
    one = backend.one
    mul = {}
    for i, s in enumerate(elems):
        for j, t in enumerate(elems):
            mul[(i, j)] = {index[group.mul(s, t)]: one}
    unit = {index[group.identity]: one}
    comul = {i: {(i, i): one} for i in range(len(elems))}
    counit = {i: one for i in range(len(elems))}
    antipode = {i: {index[group.inv(x)]: one} for i, x in enumerate(elems)}
    return HopfAlgebra(
        dim=len(elems),
        labels=tuple("d_" + group.format(x) for x in elems),
        backend=backend,
        mul=mul,
        unit=unit,
        comul=comul,
        counit=counit,
        antipode=antipode,
        source=("group", group),
    )


# ---------------------------------------------------------------------------
# sparse vector helpers


def _vec_add_scaled(backend, acc: dict, scalar, vec: Mapping) -> None:
    for k, x in vec.items():
        cur = acc.get(k, backend.zero)
        acc[k] = backend.add(cur, backend.mul(scalar, x))


def mul_vec(h: HopfAlgebra, v: Mapping, w: Mapping) -> dict:
    b = h.backend
    acc: dict = {}
    for i, a in v.items():
        for j, c in w.items():
            cell = h.mul.get((i, j))
            if cell:
                _vec_add_scaled(b, acc, b.mul(a, c), cell)
    return acc


def comul_vec(h: HopfAlgebra, v: Mapping) -> dict:
    b = h.backend
    acc: dict = {}
    for i, a in v.items():
        _vec_add_scaled(b, acc, a, h.comul.get(i, {}))
    return acc


def antipode_vec(h: HopfAlgebra, v: Mapping) -> dict:
    b = h.backend
    acc: dict = {}
    for i, a in v.items():
        _vec_add_scaled(b, acc, a, h.antipode.get(i, {}))
    return acc


def counit_vec(h: HopfAlgebra, v: Mapping):
    b = h.backend
    acc = b.zero
    for i, a in v.items():
        c = h.counit.get(i)
        if c is not None:
            acc = b.add(acc, b.mul(a, c))
    return acc


def pair_mul(h: HopfAlgebra, p: Mapping, q: Mapping) -> dict:
    """Componentwise product in the tensor square."""
    b = h.backend
    acc: dict = {}
    for (a1, a2), x in p.items():
        for (c1, c2), y in q.items():
            left = h.mul.get((a1, c1))
            right = h.mul.get((a2, c2))
            if left and right:
                coeff = b.mul(x, y)
                for k1, s in left.items():
                    cs = b.mul(coeff, s)
                    for k2, t in right.items():
                        key = (k1, k2)
                        acc[key] = b.add(acc.get(key, b.zero), b.mul(cs, t))
    return acc


def _diff_residual(backend, u: Mapping, v: Mapping) -> float:
    worst = 0.0
    for k in set(u) | set(v):
        worst = max(worst, backend.residual(u.get(k, backend.zero), v.get(k, backend.zero)))
    return worst


def _vec_eq(backend, u: Mapping, v: Mapping) -> bool:
    for k in set(u) | set(v):
        if not backend.eq(u.get(k, backend.zero), v.get(k, backend.zero)):
            return False
    return True


def hopf_equal(h1: HopfAlgebra, h2: HopfAlgebra) -> tuple[bool, float]:
    """Tensor-by-tensor equality under h1's backend; returns (equal, residual)."""
    if h1.dim != h2.dim:
        return False, float("inf")
    b = h1.backend
    worst = 0.0
    ok = True
    for i in range(h1.dim):
        for j in range(h1.dim):
            r = _diff_residual(b, h1.mul.get((i, j), {}), h2.mul.get((i, j), {}))
            worst = max(worst, r)
            ok = ok and _vec_eq(b, h1.mul.get((i, j), {}), h2.mul.get((i, j), {}))
    for i in range(h1.dim):
        r = _diff_residual(b, h1.comul.get(i, {}), h2.comul.get(i, {}))
        worst = max(worst, r)
        ok = ok and _vec_eq(b, h1.comul.get(i, {}), h2.comul.get(i, {}))
        ok = ok and _vec_eq(b, h1.antipode.get(i, {}), h2.antipode.get(i, {}))
        worst = max(worst, _diff_residual(b, h1.antipode.get(i, {}), h2.antipode.get(i, {})))
    ok = ok and _vec_eq(b, h1.unit, h2.unit) and _vec_eq(b, h1.counit, h2.counit)
    worst = max(worst, _diff_residual(b, h1.unit, h2.unit), _diff_residual(b, h1.counit, h2.counit))
    return ok, worst


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis: transpose all five tensors.

    Multiplication of the dual is the transpose of the coproduct, the
    coproduct of the dual is the transpose of multiplication, unit and counit
    swap roles, and the antipode transposes.  Applying this twice returns
    literally the same tensors.
    """
    b = h.backend
    mul: dict = {}
    for k, pairs in h.comul.items():
        for (i, j), c in pairs.items():
            mul.setdefault((i, j), {})[k] = c
    comul: dict = {}
    for (i, j), cell in h.mul.items():
        for k, c in cell.items():
            comul.setdefault(k, {})[(i, j)] = c
    antipode: dict = {}
    for j, cell in h.antipode.items():
        for i, c in cell.items():
            antipode.setdefault(i, {})[j] = c
    source = None
    if h.source is not None:
        tag, grp = h.source
        source = ("group" if tag == "functions" else "functions", grp)
    return HopfAlgebra(
        dim=h.dim,
        labels=tuple(lbl + "*" for lbl in h.labels),
        backend=b,
        mul=mul,
        unit=dict(h.counit),
        comul=comul,
        counit=dict(h.unit),
        antipode=antipode,
        source=source,
    )


# ---------------------------------------------------------------------------
# axiom checking


def check_hopf_axioms(h: HopfAlgebra) -> list[CheckResult]:
    """Verify the full axiom set on basis elements; one result per axiom."""
    b = h.backend
    results = []

    def record(name, pairs):
        worst = 0.0
        ok = True
        witness = ""
        for tag, lhs, rhs in pairs:
            r = _diff_residual(b, lhs, rhs)
            if r > worst:
                worst = r
            if not _vec_eq(b, lhs, rhs):
                ok = False
                if not witness:
                    witness = tag
        results.append(CheckResult(name=name, passed=ok, residual=worst, detail=witness))

    dim = h.dim

    def pairs_assoc():
        for i in range(dim):
            for j in range(dim):
                ij = h.mul.get((i, j), {})
                for k in range(dim):
                    lhs = mul_vec(h, ij, h.basis(k))
                    rhs = mul_vec(h, h.basis(i), h.mul.get((j, k), {}))
                    yield f"({i},{j},{k})", lhs, rhs

    record("associativity", pairs_assoc())

    def pairs_unit():
        for i in range(dim):
            yield f"left {i}", mul_vec(h, h.unit, h.basis(i)), h.basis(i)
            yield f"right {i}", mul_vec(h, h.basis(i), h.unit), h.basis(i)

    record("unit", pairs_unit())

    def pairs_coassoc():
        for i in range(dim):
            left: dict = {}
            right: dict = {}
            for (a, c), x in h.comul.get(i, {}).items():
                for (p, q), y in h.comul.get(a, {}).items():
                    key = (p, q, c)
                    left[key] = b.add(left.get(key, b.zero), b.mul(x, y))
                for (p, q), y in h.comul.get(c, {}).items():
                    key = (a, p, q)
                    right[key] = b.add(right.get(key, b.zero), b.mul(x, y))
            yield str(i), left, right

    record("coassociativity", pairs_coassoc())

    def pairs_counit():
        for i in range(dim):
            left: dict = {}
            right: dict = {}
            for (a, c), x in h.comul.get(i, {}).items():
                ea = h.counit.get(a)
                if ea is not None:
                    left[c] = b.add(left.get(c, b.zero), b.mul(x, ea))
                ec = h.counit.get(c)
                if ec is not None:
                    right[a] = b.add(right.get(a, b.zero), b.mul(x, ec))
            yield f"left {i}", left, h.basis(i)
            yield f"right {i}", right, h.basis(i)

    record("counit", pairs_counit())

    def pairs_bialgebra():
        for i in range(dim):
            for j in range(dim):
                lhs = comul_vec(h, h.mul.get((i, j), {}))
                rhs = pair_mul(h, h.comul.get(i, {}), h.comul.get(j, {}))
                yield f"comul x product ({i},{j})", lhs, rhs
        unit_pair: dict = {}
        for i, x in h.unit.items():
            for j, y in h.unit.items():
                unit_pair[(i, j)] = b.mul(x, y)
        yield "comul of unit", comul_vec(h, h.unit), unit_pair
        for i in range(dim):
            for j in range(dim):
                lhs = {0: counit_vec(h, h.mul.get((i, j), {}))}
                rhs = {0: b.mul(h.counit.get(i, b.zero), h.counit.get(j, b.zero))}
                yield f"counit x product ({i},{j})", lhs, rhs
        yield "counit of unit", {0: counit_vec(h, h.unit)}, {0: b.one}

    record("bialgebra", pairs_bialgebra())

    def pairs_antipode():
        for i in range(dim):
            left: dict = {}
            right: dict = {}
            for (a, c), x in h.comul.get(i, {}).items():
                _vec_add_scaled(b, left, x, mul_vec(h, h.antipode.get(a, {}), h.basis(c)))
                _vec_add_scaled(b, right, x, mul_vec(h, h.basis(a), h.antipode.get(c, {})))
            target: dict = {}
            eps = h.counit.get(i, b.zero)
            _vec_add_scaled(b, target, eps, h.unit)
            yield f"left {i}", left, target
            yield f"right {i}", right, target

    record("antipode", pairs_antipode())
    return results


# ---------------------------------------------------------------------------
# grouplike elements


@dataclass(frozen=True)
class GroupPartResult:
    vectors: tuple[dict, ...]
    mode: str
    verified: bool          # every vector passed the coproduct residual test
    closed_under_product: bool
    worst_residual: float

    @property
    def count(self) -> int:
        return len(self.vectors)


def _is_grouplike(h: HopfAlgebra, v: Mapping) -> tuple[bool, float]:
    b = h.backend
    if all(b.is_zero(x) for x in v.values()):
        return False, 0.0
    outer = {}
    for i, a in v.items():
        for j, c in v.items():
            outer[(i, j)] = b.mul(a, c)
    lhs = comul_vec(h, v)
    return _vec_eq(b, lhs, outer), _diff_residual(b, lhs, outer)


def _index_law_from_group(group: Group) -> tuple[list[list[int]], int]:
    elems = list(group.elements())
    index = {x: i for i, x in enumerate(elems)}
    law = [[index[group.mul(s, t)] for t in elems] for s in elems]
    return law, index[group.identity]


def _index_law_from_comul(h: HopfAlgebra) -> tuple[list[list[int]], int] | None:
    """Recover a group law from a coproduct of pure factorization type.

    Requires every coproduct entry to be the backend one and the pair map
    (s, t) -> point to be total; returns None when the shape does not match.
    """
    b = h.backend
    law = [[-1] * h.dim for _ in range(h.dim)]
    for x in range(h.dim):
        for (s, t), c in h.comul.get(x, {}).items():
            if not b.eq(c, b.one):
                return None
            if law[s][t] != -1:
                return None
            law[s][t] = x
    if any(-1 in row for row in law):
        return None
    ident = [i for i in range(h.dim) if b.eq(h.counit.get(i, b.zero), b.one)]
    rest_zero = all(
        b.is_zero(h.counit.get(i, b.zero)) for i in range(h.dim) if i not in ident
    )
    if len(ident) != 1 or not rest_zero:
        return None
    return law, ident[0]


def _mul_is_diagonal(h: HopfAlgebra) -> bool:
    b = h.backend
    for (i, j), cell in h.mul.items():
        if i != j:
            if any(not b.is_zero(x) for x in cell.values()):
                return False
        else:
            if not _vec_eq(b, cell, {i: b.one}):
                return False
    for i in range(h.dim):
        if not _vec_eq(b, h.mul.get((i, i), {}), {i: b.one}):
            return False
    return _vec_eq(b, h.unit, {i: b.one for i in range(h.dim)})


def _element_order(law, e: int, g: int) -> int:
    acc = g
    order = 1
    while acc != e:
        acc = law[acc][g]
        order += 1
    return order


def _span(law, e: int, gens: list[int]) -> set[int]:
    reached = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = law[x][g]
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        frontier = nxt
    return reached


def _multiplicative_functions(law, e: int, backend) -> list[tuple]:
    """All functions u with u(s)u(t) = u(s*t) and u(e) = 1, as value tuples.

    Enumerates root-of-unity assignments on a greedily built generating set,
    extends along the Cayley graph, and keeps the assignments that survive the
    full multiplication-table audit.
    """
    n = len(law)
    gens: list[int] = []
    closure = {e}
    for cand in range(n):
        if cand in closure:
            continue
        gens.append(cand)
        closure = _span(law, e, gens)
        if len(closure) == n:
            break
    orders = [_element_order(law, e, g) for g in gens]
    found: list[tuple] = []
    for expos in itertools.product(*(range(o) for o in orders)):
        values: list = [None] * n
        values[e] = backend.one
        frontier = [e]
        assign = {g: backend.root(k, o) for g, k, o in zip(gens, expos, orders)}
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = law[x][g]
                    if values[y] is None:
                        values[y] = backend.mul(values[x], assign[g])
                        nxt.append(y)
            frontier = nxt
        ok = True
        for s in range(n):
            for t in range(n):
                if not backend.eq(backend.mul(values[s], values[t]), values[law[s][t]]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            tup = tuple(values)
            if not any(all(backend.eq(a, c) for a, c in zip(tup, other)) for other in found):
                found.append(tup)
    return found


def group_part(h: HopfAlgebra, mode: str = "closed_form") -> GroupPartResult:
    """All nonzero vectors whose coproduct is their own tensor square.

    closed_form dispatches on the tagged construction: every point mass in a
    group algebra qualifies; in a function algebra the qualifying vectors are
    exactly the multiplicative root-of-unity functions, enumerated on a
    generating set.  brute_force ignores the tag and works from the tensors
    alone (dimension capped): a basis scan plus, when multiplication is
    pointwise-diagonal, the same multiplicative-function search driven by the
    group law recovered from the coproduct.  Every returned vector is
    residual-verified, and closure under the product is checked.
    """
    b = h.backend
    vectors: list[dict] = []
    if mode == "closed_form":
        if h.source is None:
            raise ValueError("closed_form needs a tagged construction; use brute_force")
        tag, group = h.source
        if tag == "group":
            vectors = [h.basis(i) for i in range(h.dim)]
        elif tag == "functions":
            law, e = _index_law_from_group(group)
            for values in _multiplicative_functions(law, e, b):
                vectors.append({i: v for i, v in enumerate(values) if not b.is_zero(v)})
        else:
            raise ValueError(f"unknown source tag {tag!r}")
    elif mode == "brute_force":
        if h.dim > BRUTE_FORCE_DIM_CAP:
            raise ValueError(f"brute force capped at dimension {BRUTE_FORCE_DIM_CAP}, got {h.dim}")
        for i in range(h.dim):
            ok, _ = _is_grouplike(h, h.basis(i))
            if ok:
                vectors.append(h.basis(i))
        if _mul_is_diagonal(h):
            recovered = _index_law_from_comul(h)
            if recovered is None:
                raise ValueError("diagonal multiplication but no factorization-type coproduct")
            law, e = recovered
            for values in _multiplicative_functions(law, e, b):
                cand = {i: v for i, v in enumerate(values) if not b.is_zero(v)}
                if not any(_vec_eq(b, cand, seen) for seen in vectors):
                    vectors.append(cand)
        elif not vectors:
            raise ValueError(
                "brute force covers basis-grouplike and pointwise-diagonal shapes; "
                "this algebra is neither"
            )
    else:
        raise ValueError(f"unknown mode {mode!r} (expected 'closed_form' or 'brute_force')")

    verified = True
    worst = 0.0
    for v in vectors:
        ok, r = _is_grouplike(h, v)
        worst = max(worst, r)
        verified = verified and ok
    closed = True
    for v in vectors:
        for w in vectors:
            prod = mul_vec(h, v, w)
            if not any(_vec_eq(b, prod, u) for u in vectors):
                closed = False
    return GroupPartResult(
        vectors=tuple(vectors),
        mode=mode,
        verified=verified,
        closed_under_product=closed,
        worst_residual=worst,
    )


# ---------------------------------------------------------------------------
# characters of finite abelian groups and the Fourier transform


@dataclass(frozen=True)
class CharacterGroup:
    """The character group of a finite abelian group, indexed like the group.

    A character with index tuple m sends x to the product over coordinates of
    the order-n_i root of unity raised to m_i * x_i.  The index tuples form
    the same direct product of cyclic groups, which is what ``group`` holds.
    """

    orders: tuple[int, ...]
    group: Group
    exponent: int

    def value(self, m, x, backend):
        k = 0
        for mi, xi, ni in zip(m, x, self.orders):
            k += mi * xi * (self.exponent // ni)
        return backend.root(k % self.exponent, self.exponent)


def _lcm(values) -> int:
    acc = 1
    for v in values:
        g, a = v, acc
        while g:
            a, g = g, a % g
        acc = acc // a * v
    return acc


def dual_group(group: Group) -> CharacterGroup:
    """Character group of a finite abelian group."""
    if not isinstance(group, FiniteAbelianGroup):
        raise ValueError(f"characters need a finite abelian group, got {group.label!r}")
    index_group = make_group(GroupSpec.finite_abelian(group.orders, label=group.label + "^"))
    return CharacterGroup(orders=group.orders, group=index_group, exponent=_lcm(group.orders))


@dataclass(frozen=True)
class LinearMap:
    """A dense matrix between two Hopf algebras; rows index the codomain."""

    domain: HopfAlgebra
    codomain: HopfAlgebra
    matrix: tuple[tuple, ...]

    def apply(self, v: Mapping) -> dict:
        b = self.domain.backend
        acc: dict = {}
        for j, a in v.items():
            for i in range(self.codomain.dim):
                entry = self.matrix[i][j]
                if not b.is_zero(entry):
                    acc[i] = b.add(acc.get(i, b.zero), b.mul(entry, a))
        return acc

    def entry(self, i: int, j: int):
        return self.matrix[i][j]


def fourier(group: Group, backend) -> LinearMap:
    """The character-table map from the group algebra to functions on characters.

    A point mass at t goes to the function evaluating each character at t, so
    the matrix entry in row m (character index) and column t is that
    character's value.  Rows are orthogonal: M conj(M^T) = |G| I.
    """
    chars = dual_group(group)
    dom = group_algebra(group, backend)
    cod = function_algebra(chars.group, backend)
    elems = list(group.elements())
    rows = []
    for m in chars.group.elements():
        rows.append(tuple(chars.value(m, t, backend) for t in elems))
    return LinearMap(domain=dom, codomain=cod, matrix=tuple(rows))


def check_linear_hom(phi: LinearMap) -> list[CheckResult]:
    """The five homomorphism conditions for a map between Hopf algebras."""
    h, k = phi.domain, phi.codomain
    b = h.backend
    results = []

    def record(name, pairs):
        worst = 0.0
        ok = True
        witness = ""
        for tag, lhs, rhs in pairs:
            r = _diff_residual(b, lhs, rhs)
            worst = max(worst, r)
            if not _vec_eq(b, lhs, rhs):
                ok = False
                if not witness:
                    witness = tag
        results.append(CheckResult(name=name, passed=ok, residual=worst, detail=witness))

    def images():
        return [phi.apply(h.basis(i)) for i in range(h.dim)]

    img = images()

    def pairs_mult():
        for i in range(h.dim):
            for j in range(h.dim):
                lhs = phi.apply(h.mul.get((i, j), {}))
                rhs = mul_vec(k, img[i], img[j])
                yield f"({i},{j})", lhs, rhs

    record("multiplicative", pairs_mult())
    record("unital", [("unit", phi.apply(h.unit), dict(k.unit))])

    def pairs_comult():
        for i in range(h.dim):
            lhs: dict = {}
            for (a, c), x in h.comul.get(i, {}).items():
                for p, s in img[a].items():
                    xs = b.mul(x, s)
                    for q, t in img[c].items():
                        key = (p, q)
                        lhs[key] = b.add(lhs.get(key, b.zero), b.mul(xs, t))
            rhs = comul_vec(k, img[i])
            yield str(i), lhs, rhs

    record("comultiplicative", pairs_comult())

    def pairs_counit():
        for i in range(h.dim):
            yield str(i), {0: counit_vec(k, img[i])}, {0: h.counit.get(i, b.zero)}

    record("counital", pairs_counit())

    def pairs_antipode():
        for i in range(h.dim):
            lhs = antipode_vec(k, img[i])
            rhs = phi.apply(h.antipode.get(i, {}))
            yield str(i), lhs, rhs

    record("antipode", pairs_antipode())
    return results


def unitarity_check(phi: LinearMap, order: int) -> CheckResult:
    """Row orthogonality M conj(M^T) = order * I under the backend."""
    b = phi.domain.backend
    n = len(phi.matrix)
    target_diag = b.from_int(order)
    worst = 0.0
    ok = True
    witness = ""
    for i in range(n):
        for j in range(n):
            acc = b.zero
            for t in range(len(phi.matrix[i])):
                acc = b.add(acc, b.mul(phi.matrix[i][t], b.conj(phi.matrix[j][t])))
            want = target_diag if i == j else b.zero
            r = b.residual(acc, want)
            worst = max(worst, r)
            if not b.eq(acc, want):
                ok = False
                if not witness:
                    witness = f"rows ({i},{j})"
    return CheckResult(name="unitarity", passed=ok, residual=worst, detail=witness)


def _transpose_map(phi: LinearMap, new_domain: HopfAlgebra, new_codomain: HopfAlgebra) -> LinearMap:
    rows = len(phi.matrix)
    cols = len(phi.matrix[0]) if rows else 0
    mat = tuple(tuple(phi.matrix[i][j] for i in range(rows)) for j in range(cols))
    return LinearMap(domain=new_domain, codomain=new_codomain, matrix=mat)


def _mat_mul(backend, a, bmat):
    n, mid, m = len(a), len(bmat), len(bmat[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = backend.zero
            for t in range(mid):
                acc = backend.add(acc, backend.mul(a[i][t], bmat[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _conj_transpose(backend, a):
    rows, cols = len(a), len(a[0])
    return tuple(tuple(backend.conj(a[i][j]) for i in range(rows)) for j in range(cols))


@dataclass(frozen=True)
class CycleReport:
    stages: tuple[CheckResult, ...]
    transform: LinearMap

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)


def duality_cycle(group: Group, backend, perturb: tuple[int, int] | None = None) -> CycleReport:
    """Round-trip a finite abelian group through characters and dualization.

    Stages: the character-table map is a Hopf isomorphism; its transpose is a
    Hopf isomorphism from the dual side's group algebra onto functions on the
    original group, sending each point mass at a character to that character's
    value table; rows are orthogonal; and composing the map with the inverse
    of the dual side's transposed map lands back on the identity matrix,
    which realizes the biduality identification as literal equality.

    ``perturb`` bumps one matrix entry before checking; a single corrupted
    entry must trip at least one stage.
    """
    if not isinstance(group, FiniteAbelianGroup):
        raise ValueError(f"duality cycle needs a finite abelian group, got {group.label!r}")
    if group.order > DUALITY_ORDER_CAP:
        raise ValueError(f"duality cycle capped at order {DUALITY_ORDER_CAP}, got {group.order}")
    b = backend
    phi = fourier(group, b)
    if perturb is not None:
        i, j = perturb
        bumped = [list(r) for r in phi.matrix]
        bumped[i][j] = b.add(bumped[i][j], b.one)
        phi = LinearMap(domain=phi.domain, codomain=phi.codomain, matrix=tuple(tuple(r) for r in bumped))
    stages = []

    hom = check_linear_hom(phi)
    stages.append(
        CheckResult(
            name="transform-hom",
            passed=all(c.passed for c in hom),
            residual=max(c.residual for c in hom),
            detail="; ".join(c.name for c in hom if not c.passed),
        )
    )

    # transpose: point mass at a character goes to that character's value table
    chars = dual_group(group)
    dual_dom = group_algebra(chars.group, b)
    cod = function_algebra(group, b)
    tphi = _transpose_map(phi, dual_dom, cod)
    thom = check_linear_hom(tphi)
    stages.append(
        CheckResult(
            name="transpose-hom",
            passed=all(c.passed for c in thom),
            residual=max(c.residual for c in thom),
            detail="; ".join(c.name for c in thom if not c.passed),
        )
    )
    elems = list(group.elements())
    worst = 0.0
    ok = True
    for j, m in enumerate(chars.group.elements()):
        for i, t in enumerate(elems):
            want = chars.value(m, t, b)
            r = b.residual(tphi.matrix[i][j], want)
            worst = max(worst, r)
            ok = ok and b.eq(tphi.matrix[i][j], want)
    stages.append(CheckResult(name="transpose-columns", passed=ok, residual=worst))

    stages.append(unitarity_check(phi, group.order))

    # the dual side's transform, transposed and inverted, closes the cycle
    dual_phi = fourier(chars.group, b)
    s_mat = tuple(
        tuple(dual_phi.matrix[j][i] for j in range(len(dual_phi.matrix)))
        for i in range(len(dual_phi.matrix[0]))
    )
    s_unit = unitarity_check(
        LinearMap(domain=dual_phi.domain, codomain=dual_phi.codomain, matrix=s_mat), group.order
    )
    inv_scale = Fraction(1, group.order)
    s_inv = tuple(
        tuple(b.scale(x, inv_scale) for x in row) for row in _conj_transpose(b, s_mat)
    )
    composite = _mat_mul(b, s_inv, phi.matrix)
    worst = 0.0
    ok = s_unit.passed
    for i in range(group.order):
        for j in range(group.order):
            want = b.one if i == j else b.zero
            r = b.residual(composite[i][j], want)
            worst = max(worst, r, s_unit.residual)
            ok = ok and b.eq(composite[i][j], want)
    stages.append(CheckResult(name="cycle-identity", passed=ok, residual=worst))
    return CycleReport(stages=tuple(stages), transform=phi)


# ---------------------------------------------------------------------------
# tensor products


def tensor_hopf(h: HopfAlgebra, k: HopfAlgebra) -> HopfAlgebra:
    """Tensor product Hopf structure; pair (i, j) gets index i * dim(k) + j."""
    if h.dim * k.dim > TENSOR_DIM_CAP:
        raise ValueError(f"tensor dimension {h.dim * k.dim} exceeds the cap {TENSOR_DIM_CAP}")
    if h.backend != k.backend:
        raise ValueError("tensor factors must share a backend")
    b = h.backend
    dk = k.dim

    def idx(i, j):
        return i * dk + j

    mul: dict = {}
    for (i1, i2), cell_h in h.mul.items():
        for (j1, j2), cell_k in k.mul.items():
            out: dict = {}
            for p, x in cell_h.items():
                for q, y in cell_k.items():
                    out[idx(p, q)] = b.mul(x, y)
            mul[(idx(i1, j1), idx(i2, j2))] = out
    unit: dict = {}
    for i, x in h.unit.items():
        for j, y in k.unit.items():
            unit[idx(i, j)] = b.mul(x, y)
    comul: dict = {}
    for i, pairs_h in h.comul.items():
        for j, pairs_k in k.comul.items():
            out = {}
            for (a, c), x in pairs_h.items():
                for (p, q), y in pairs_k.items():
                    out[(idx(a, p), idx(c, q))] = b.mul(x, y)
            comul[idx(i, j)] = out
    counit: dict = {}
    for i, x in h.counit.items():
        for j, y in k.counit.items():
            counit[idx(i, j)] = b.mul(x, y)
    antipode: dict = {}
    for i, cell_h in h.antipode.items():
        for j, cell_k in k.antipode.items():
            out = {}
            for p, x in cell_h.items():
                for q, y in cell_k.items():
                    out[idx(p, q)] = b.mul(x, y)
            antipode[idx(i, j)] = out
    return HopfAlgebra(
        dim=h.dim * k.dim,
        labels=tuple(
            f"{h.labels[i]}(x){k.labels[j]}" for i in range(h.dim) for j in range(k.dim)
        ),
        backend=b,
        mul=mul,
        unit=unit,
        comul=comul,
        counit=counit,
        antipode=antipode,
    )


def product_iso_check(g1: Group, g2: Group, backend) -> list[CheckResult]:
    """Tensor-by-tensor match between product-group structures and tensor squares.

    The enumeration of a direct product lists pairs in row-major order, which
    is exactly the tensor index convention, so the point-mass bijection is the
    identity matrix and the comparison is literal tensor equality.  Both the
    convolution-side and function-side isomorphisms are checked.
    """
    prod = direct_product(g1, g2)
    results = []
    t = tensor_hopf(group_algebra(g1, backend), group_algebra(g2, backend))
    p = group_algebra(prod, backend)
    ok, worst = hopf_equal(p, t)
    results.append(CheckResult(name="convolution-side", passed=ok, residual=worst))
    t = tensor_hopf(function_algebra(g1, backend), function_algebra(g2, backend))
    p = function_algebra(prod, backend)
    ok, worst = hopf_equal(p, t)
    results.append(CheckResult(name="function-side", passed=ok, residual=worst))
    return results
