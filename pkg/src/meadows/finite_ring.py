"""Finite commutative unital rings on canonical carriers ``0..order-1``.

Every ring materializes its addition and multiplication as read-only numpy
tables, so equality of elements is index equality and all laws can be swept
exhaustively. Constructors record a ``descriptor`` in the ring-spec DSL
(see :mod:`meadows.dsl`) from which the ring can be rebuilt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .checks import DEFAULT_SEED, SAMPLE_SIZE, Report, sweep
from .errors import MeadowError, NotAnIdealError, SizeCapError

DEFAULT_CAP = 4096

# largest order for which ternary ring laws are swept exhaustively
EXHAUSTIVE_RING_ORDER = 256


def _table(a):
    a = np.array(a, dtype=np.int32, copy=True)
    a.flags.writeable = False
    return a


def _check_cap(order, cap, what):
    if cap is not None and order > cap:
        raise SizeCapError(f"{what} has order {order}, above the size cap {cap}")


class FiniteRing:
    """A finite commutative ring with identity, given by operation tables.

    ``add`` and ``mul`` are ``order x order`` integer tables over carrier
    indices. The zero ring (order 1, ``zero == one``) is allowed.
    """

    def __init__(self, add, mul, zero, one, *, descriptor, name=None, labels=None):
        add = _table(add)
        mul = _table(mul)
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n) or n < 1:
            raise MeadowError("operation tables must be square and non-empty")
        self.order = n
        self.add = add
        self.mul = mul
        self.zero = int(zero)
        self.one = int(one)
        if self.zero == self.one and n > 1:
            raise MeadowError("zero equals one in a ring with more than one element")
        self.descriptor = descriptor
        self.name = name or descriptor
        self._labels = None if labels is None else tuple(labels)
        neg = np.argmax(add == self.zero, axis=1)
        if not np.all(add[np.arange(n), neg] == self.zero):
            raise MeadowError(f"{self.name}: addition table has no inverses")
        self.neg = _table(neg)

    def __repr__(self):
        return f"<FiniteRing {self.name} order={self.order}>"

    def __len__(self):
        return self.order

    @property
    def is_zero_ring(self):
        return self.order == 1

    def label(self, i):
        if self._labels is None:
            return str(int(i))
        return self._labels[int(i)]

    def element(self, i):
        return RingElement(self, int(i))

    def elements(self):
        return [RingElement(self, i) for i in range(self.order)]

    @cached_property
    def unit_mask(self):
        m = np.any(self.mul == self.one, axis=1)
        m.flags.writeable = False
        return m

    @cached_property
    def inverse_table(self):
        """``inverse_table[x]`` is the inverse of a unit ``x``, else ``-1``."""
        hit = self.mul == self.one
        inv = np.where(hit.any(axis=1), np.argmax(hit, axis=1), -1)
        return _table(inv)

    @cached_property
    def is_field(self):
        return self.order > 1 and int(self.unit_mask.sum()) == self.order - 1

    @cached_property
    def additive_orders(self):
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        for k in range(1, n + 1):
            hit = (cur == self.zero) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.add[cur, np.arange(n)]
        orders.flags.writeable = False
        return orders

    @cached_property
    def nilpotent_mask(self):
        p = np.arange(self.order)
        for _ in range(max(1, self.order.bit_length())):
            p = self.mul[p, p]
        m = p == self.zero
        m.flags.writeable = False
        return m

    @cached_property
    def idempotent_mask(self):
        idx = np.arange(self.order)
        m = self.mul[idx, idx] == idx
        m.flags.writeable = False
        return m

    def signature(self, x):
        """Isomorphism-invariant data of one element, used to prune searches."""
        return (int(self.additive_orders[x]), bool(self.unit_mask[x]),
                bool(self.idempotent_mask[x]), bool(self.nilpotent_mask[x]))


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ring.order:
            raise MeadowError(f"index {self.index} outside {self.ring.name}")

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise MeadowError("elements belong to different rings")
            return other.index
        return self.ring.element(int(other) % self.ring.order).index

    def __add__(self, other):
        return RingElement(self.ring, int(self.ring.add[self.index, self._other(other)]))

    def __mul__(self, other):
        return RingElement(self.ring, int(self.ring.mul[self.index, self._other(other)]))

    def __neg__(self):
        return RingElement(self.ring, int(self.ring.neg[self.index]))

    def __sub__(self, other):
        return self + (-RingElement(self.ring, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    @property
    def is_unit(self):
        return bool(self.ring.unit_mask[self.index])

    def inverse(self):
        return RingElement(self.ring, unit_inverse(self.ring, self.index))

    def __str__(self):
        return self.ring.label(self.index)


# -- constructors ------------------------------------------------------------


def zero_ring(descriptor="zn:1"):
    return FiniteRing([[0]], [[0]], 0, 0, descriptor=descriptor, name="0")


def make_zn(n, *, cap=DEFAULT_CAP):
    """The ring of integers modulo ``n``; residue ``i`` has index ``i``."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise MeadowError(f"Z_n needs a positive integer n, got {n!r}")
    n = int(n)
    _check_cap(n, cap, f"Z_{n}")
    if n == 1:
        return zero_ring()
    i = np.arange(n)
    return FiniteRing(np.add.outer(i, i) % n, np.multiply.outer(i, i) % n, 0, 1,
                      descriptor=f"zn:{n}", name=f"Z{n}")


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _poly_label(coeffs, var="x"):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


def make_poly_quotient(p, modulus, *, cap=DEFAULT_CAP):
    """``F_p[x]/(modulus)`` for a monic ``modulus`` given little-endian.

    The element with coefficient vector ``(c0, ..., c_{d-1})`` has index
    ``sum(c_k * p**k)``.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise MeadowError(f"p must be prime, got {p!r}")
    p = int(p)
    modulus = [int(c) for c in modulus]
    if any(c < 0 or c >= p for c in modulus):
        raise MeadowError(f"modulus coefficients must lie in 0..{p - 1}")
    d = len(modulus) - 1
    if d < 1:
        raise MeadowError("modulus must have degree at least 1")
    if modulus[-1] != 1:
        raise MeadowError("modulus must be monic")
    order = p ** d
    _check_cap(order, cap, f"F_{p}[x]/({_poly_label(modulus)})")

    idx = np.arange(order)
    powers = p ** np.arange(d)
    coeffs = (idx[:, None] // powers[None, :]) % p

    # reduce[k] = coefficient vector of x^k mod modulus, k < 2d - 1
    reduce = np.zeros((2 * d - 1, d), dtype=np.int64)
    cur = np.zeros(d + 1, dtype=np.int64)
    cur[0] = 1
    for k in range(2 * d - 1):
        if cur[d]:
            cur = (cur - cur[d] * np.array(modulus)) % p
        reduce[k] = cur[:d]
        cur = np.concatenate([[0], cur[:d]])

    add = np.zeros((order, order), dtype=np.int64)
    for k in range(d):
        add += ((coeffs[:, None, k] + coeffs[None, :, k]) % p) * powers[k]
    mul = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        conv = np.zeros((order, 2 * d - 1), dtype=np.int64)
        for i in range(d):
            if coeffs[a, i]:
                conv[:, i:i + d] += coeffs[a, i] * coeffs
        mul[a] = ((conv @ reduce) % p) @ powers

    mod_label = _poly_label(modulus)
    labels = [_poly_label(c) for c in coeffs]
    return FiniteRing(add, mul, 0, 1, descriptor=f"poly:p={p},mod=[{','.join(map(str, modulus))}]",
                      name=f"F{p}[x]/({mod_label})", labels=labels)


def _mixed_radix(sizes):
    strides = [1]
    for s in sizes[:-1]:
        strides.append(strides[-1] * s)
    return strides


def make_product(factors, *, cap=DEFAULT_CAP):
    """Direct product with componentwise operations.

    Index encoding is mixed radix with the first factor least significant.
    """
    factors = list(factors)
    if not factors:
        raise MeadowError("a product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    sizes = [f.order for f in factors]
    order = math.prod(sizes)
    _check_cap(order, cap, "product ring")
    strides = _mixed_radix(sizes)
    idx = np.arange(order)
    comps = [(idx // st) % n for st, n in zip(strides, sizes)]
    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    for f, st, c in zip(factors, strides, comps):
        add += f.add[c[:, None], c[None, :]].astype(np.int64) * st
        mul += f.mul[c[:, None], c[None, :]].astype(np.int64) * st
    zero = sum(f.zero * st for f, st in zip(factors, strides))
    one = sum(f.one * st for f, st in zip(factors, strides))
    labels = ["(" + ",".join(f.label(c[i]) for f, c in zip(factors, comps)) + ")"
              for i in range(order)]
    names = [f.name if "x" not in f.name else f"({f.name})" for f in factors]
    return FiniteRing(add, mul, zero, one,
                      descriptor="prod:(" + ",".join(f.descriptor for f in factors) + ")",
                      name="x".join(names), labels=labels)


def product_components(factors, index):
    """Split a product-ring index into its factor indices."""
    sizes = [f.order for f in factors]
    return tuple((int(index) // st) % n for st, n in zip(_mixed_radix(sizes), sizes))


def product_index(factors, components):
    sizes = [f.order for f in factors]
    return sum(int(c) * st for c, st in zip(components, _mixed_radix(sizes)))


def cyclic_group_table(orders):
    """Addition table and element names of ``Z_{n1} x ... x Z_{nk}``."""
    orders = [int(n) for n in orders]
    size = math.prod(orders)
    strides = _mixed_radix(orders) if orders else []
    idx = np.arange(size)
    table = np.zeros((size, size), dtype=np.int64)
    comps = [(idx // st) % n for st, n in zip(strides, orders)]
    for st, n, c in zip(strides, orders, comps):
        table += ((c[:, None] + c[None, :]) % n) * st
    single = len(orders) == 1
    names = []
    for i in range(size):
        parts = []
        for k, c in enumerate(comps):
            e = int(c[i])
            if e == 0:
                continue
            g = "g" if single else f"g{k + 1}"
            parts.append(g if e == 1 else f"{g}^{e}")
        names.append("*".join(parts) or "1")
    return table, names


def group_algebra(base, group_add, group_names, *, descriptor, name, cap=DEFAULT_CAP):
    """``base[G]`` for a finite abelian group ``G`` given by its addition table.

    Group element 0 must be the identity. The element ``sum r_g g`` has index
    ``sum(r_g * base.order**g)``.
    """
    group_add = np.asarray(group_add)
    size = group_add.shape[0]
    r = base.order
    order = r ** size
    _check_cap(order, cap, name)
    idx = np.arange(order)
    powers = r ** np.arange(size)
    coeffs = (idx[:, None] // powers[None, :]) % r

    add = np.zeros((order, order), dtype=np.int64)
    for g in range(size):
        add += base.add[coeffs[:, None, g], coeffs[None, :, g]].astype(np.int64) * powers[g]

    pairs = [[(h, int(group_add[g, h])) for h in range(size)] for g in range(size)]
    mul = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        acc = np.full((order, size), base.zero, dtype=np.int64)
        for g in range(size):
            ca = coeffs[a, g]
            if ca == base.zero:
                continue
            for h, c in pairs[g]:
                acc[:, c] = base.add[acc[:, c], base.mul[ca, coeffs[:, h]]]
        mul[a] = acc @ powers
    zero = int(base.zero * powers.sum())
    one = int(base.one + base.zero * (powers.sum() - 1))

    def label(i):
        terms = []
        for g in range(size):
            c = coeffs[i, g]
            if c == base.zero:
                continue
            gname = group_names[g]
            if gname == "1":
                terms.append(base.label(c))
            elif c == base.one:
                terms.append(gname)
            else:
                terms.append(f"{base.label(c)}{gname}")
        return "+".join(terms) or base.label(base.zero)

    return FiniteRing(add, mul, zero, one, descriptor=descriptor, name=name,
                      labels=[label(i) for i in range(order)])


def make_group_algebra(base, cyclic_orders, *, cap=DEFAULT_CAP):
    """Group algebra of ``Z_{n1} x ... x Z_{nk}`` over ``base`` (convolution product)."""
    cyclic_orders = [int(n) for n in cyclic_orders]
    if base.order < 2:
        raise MeadowError("group algebra needs a nonzero base ring")
    if any(n < 1 for n in cyclic_orders):
        raise MeadowError("cyclic group orders must be positive")
    size = math.prod(cyclic_orders)
    gname = "x".join(f"C{n}" for n in cyclic_orders) or "1"
    name = f"{base.name}[{gname}]"
    _check_cap(base.order ** size, cap, name)
    table, names = cyclic_group_table(cyclic_orders)
    descriptor = f"ga:base={base.descriptor},group=[{','.join(map(str, cyclic_orders))}]"
    return group_algebra(base, table, names, descriptor=descriptor, name=name, cap=cap)


# -- ideals, quotients, homomorphisms ------------------------------------------


def ideal_violation(r, members):
    """Return a description of why ``members`` is not an ideal, or None."""
    m = np.asarray(sorted(set(int(x) for x in members)), dtype=np.int64)
    if m.size == 0 or r.zero not in set(m.tolist()):
        return "does not contain zero"
    if m.min() < 0 or m.max() >= r.order:
        return "contains indices outside the carrier"
    inside = np.zeros(r.order, dtype=bool)
    inside[m] = True
    if not inside[r.add[np.ix_(m, m)]].all():
        return "not closed under addition"
    if not inside[r.neg[m]].all():
        return "not closed under negation"
    if not inside[r.mul[m, :]].all():
        return "not closed under multiplication by ring elements"
    return None


def make_quotient(r, ideal):
    """``R/I`` with coset representatives the least index in each coset.

    Returns the quotient ring and the projection homomorphism.
    """
    if ideal.ring is not r:
        raise NotAnIdealError("ideal belongs to a different ring")
    why = ideal_violation(r, ideal.members)
    if why:
        raise NotAnIdealError(f"{sorted(ideal.members)} is not an ideal of {r.name}: {why}")
    members = np.asarray(ideal.members, dtype=np.int64)
    rep_of = r.add[:, members].min(axis=1)
    reps = np.unique(rep_of)
    proj = np.searchsorted(reps, rep_of)
    gens = ",".join(str(g) for g in ideal.generators)
    descriptor = f"quot:{r.descriptor}/gens=[{gens}]"
    if reps.size == 1:
        q = zero_ring(descriptor)
    else:
        sub = np.ix_(reps, reps)
        q = FiniteRing(proj[r.add[sub]], proj[r.mul[sub]], proj[r.zero], proj[r.one],
                       descriptor=descriptor, name=f"{r.name}/{ideal.label()}",
                       labels=[r.label(x) for x in reps])
    q.representatives = reps
    return q, RingHom(r, q, proj)


@dataclass(frozen=True, eq=False)
class RingHom:
    """A map of carriers ``source -> target``; see :meth:`violations`."""

    source: FiniteRing
    target: FiniteRing
    map: np.ndarray

    def __post_init__(self):
        m = _table(self.map)
        if m.shape != (self.source.order,):
            raise MeadowError("homomorphism map must have one entry per source element")
        if m.size and (m.min() < 0 or m.max() >= self.target.order):
            raise MeadowError("homomorphism map leaves the target carrier")
        object.__setattr__(self, "map", m)

    def __call__(self, x):
        return int(self.map[x])

    def __eq__(self, other):
        return (isinstance(other, RingHom) and other.source is self.source
                and other.target is self.target and np.array_equal(other.map, self.map))

    __hash__ = object.__hash__

    @classmethod
    def identity(cls, r):
        return cls(r, r, np.arange(r.order))

    def compose(self, inner):
        """``self o inner``: apply ``inner`` first."""
        if inner.target is not self.source:
            raise MeadowError("cannot compose: codomain and domain differ")
        return RingHom(inner.source, self.target, self.map[inner.map])

    def violations(self):
        s, t, f = self.source, self.target, self.map
        out = []
        if f[s.one] != t.one:
            out.append("does not send one to one")
        if f[s.zero] != t.zero:
            out.append("does not send zero to zero")
        if not np.array_equal(f[s.add], t.add[f[:, None], f[None, :]]):
            out.append("does not preserve addition")
        if not np.array_equal(f[s.mul], t.mul[f[:, None], f[None, :]]):
            out.append("does not preserve multiplication")
        if not np.array_equal(f[s.neg], t.neg[f]):
            out.append("does not preserve negation")
        return out

    @property
    def is_valid(self):
        return not self.violations()

    @property
    def is_surjective(self):
        return np.unique(self.map).size == self.target.order

    @property
    def is_injective(self):
        return np.unique(self.map).size == self.source.order

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def kernel(self):
        return tuple(int(x) for x in np.flatnonzero(self.map == self.target.zero))

    def image(self, members):
        return tuple(sorted({int(self.map[x]) for x in members}))


def ring_hom(source, target, mapping):
    """Build a RingHom and reject it unless it is a unital ring homomorphism."""
    f = RingHom(source, target, np.asarray(mapping))
    bad = f.violations()
    if bad:
        raise MeadowError(f"not a ring homomorphism {source.name} -> {target.name}: "
                          + "; ".join(bad))
    return f


# -- element-level queries -----------------------------------------------------


def units(r):
    return frozenset(int(x) for x in np.flatnonzero(r.unit_mask))


def unit_inverse(r, x):
    y = int(r.inverse_table[x])
    if y < 0:
        raise MeadowError(f"{r.label(x)} is not a unit of {r.name}")
    return y


def idempotents(r):
    return frozenset(int(x) for x in np.flatnonzero(r.idempotent_mask))


def primitive_idempotents(r):
    """Nonzero idempotents minimal for ``e <= f iff e*f == e``, ascending."""
    ids = [e for e in sorted(idempotents(r)) if e != r.zero]
    return [e for e in ids
            if not any(f != e and r.mul[e, f] == f for f in ids)]


def corner_ring(r, e):
    """The ring ``eR`` with identity ``e`` and its embedding into ``r``."""
    if not r.idempotent_mask[e]:
        raise MeadowError(f"{r.label(e)} is not idempotent in {r.name}")
    if e == r.zero:
        raise MeadowError("the zero idempotent has no corner ring")
    if e == r.one:
        return r, np.arange(r.order)
    members = np.unique(r.mul[e])
    pos = np.full(r.order, -1, dtype=np.int64)
    pos[members] = np.arange(members.size)
    sub = np.ix_(members, members)
    ring = FiniteRing(pos[r.add[sub]], pos[r.mul[sub]], pos[r.zero], pos[e],
                      descriptor=f"corner:{r.descriptor}/e={int(e)}",
                      name=f"{r.name}[e={r.label(e)}]",
                      labels=[r.label(x) for x in members])
    members.flags.writeable = False
    return ring, members


# -- axioms --------------------------------------------------------------------


def check_ring_axioms(r, *, exhaustive_limit=EXHAUSTIVE_RING_ORDER,
                      samples=SAMPLE_SIZE, seed=DEFAULT_SEED):
    """Sweep the commutative-ring laws over ``r``.

    Ternary laws are exhaustive up to ``exhaustive_limit`` elements and
    sampled with a fixed seed beyond it.
    """
    A, M, N = r.add, r.mul, r.neg
    zero, one = r.zero, r.one
    rng = np.random.default_rng(seed)
    report = Report(f"ring axioms for {r.name}")
    full = r.order <= exhaustive_limit
    render = lambda t: "(" + ", ".join(r.label(x) for x in t) + ")"  # noqa: E731
    laws = [
        ("add associative", 3, lambda x, y, z: A[A[x, y], z] == A[x, A[y, z]]),
        ("add commutative", 2, lambda x, y: A[x, y] == A[y, x]),
        ("add identity", 1, lambda x: A[x, zero] == x),
        ("add inverse", 1, lambda x: A[x, N[x]] == zero),
        ("mul associative", 3, lambda x, y, z: M[M[x, y], z] == M[x, M[y, z]]),
        ("mul commutative", 2, lambda x, y: M[x, y] == M[y, x]),
        ("mul identity", 1, lambda x: M[one, x] == x),
        ("distributive", 3, lambda x, y, z: M[x, A[y, z]] == A[M[x, y], M[x, z]]),
    ]
    for name, arity, law in laws:
        exhaustive = full or arity < 3
        report.add(sweep(name, arity, law, r.order, exhaustive=exhaustive,
                         samples=samples, rng=rng, render=render))
    return report


# -- homomorphism and isomorphism search ---------------------------------------


class _BudgetExhausted(Exception):
    pass


def _additive_generators(r):
    """Greedy generating set of the additive group, largest orders first."""
    order = r.additive_orders
    cand = sorted(range(r.order), key=lambda x: (-int(order[x]), x))
    span = np.zeros(r.order, dtype=bool)
    span[r.zero] = True
    gens = []
    for g in cand:
        if span[g]:
            continue
        gens.append(g)
        cur = np.flatnonzero(span)
        new = span.copy()
        step = cur
        for _ in range(int(order[g])):
            step = r.add[step, g]
            new[step] = True
        span = new
        if span.all():
            break
    return gens


def _extend(r, s, mapping, g, y, injective):
    new = mapping.copy()
    cur_x = np.flatnonzero(mapping >= 0)
    cur_y = mapping[cur_x]
    for _ in range(int(r.additive_orders[g]) - 1):
        cur_x = r.add[cur_x, g]
        cur_y = s.add[cur_y, y]
        prev = new[cur_x]
        if np.any((prev >= 0) & (prev != cur_y)):
            return None
        new[cur_x] = cur_y
    cur_x = r.add[cur_x, g]
    cur_y = s.add[cur_y, y]
    if np.any(new[cur_x] != cur_y):
        return None
    if injective:
        vals = new[new >= 0]
        if np.unique(vals).size != vals.size:
            return None
    return new


def _search_homs(r, s, *, bijective, budget):
    """Yield maps of every ring homomorphism (or isomorphism) ``r -> s``.

    Homomorphisms are additive, so each is determined by the images of an
    additive generating set; candidate images are pruned by element
    invariants and each partial assignment is extended along the generated
    subgroup, rejecting inconsistent ones early.
    """
    gens = _additive_generators(r)
    if bijective:
        sig_s = {}
        for y in range(s.order):
            sig_s.setdefault(s.signature(y), []).append(y)
        cands = [sig_s.get(r.signature(g), []) for g in gens]
    else:
        ro, so = r.additive_orders, s.additive_orders
        cands = [[y for y in range(s.order) if ro[g] % so[y] == 0] for g in gens]
    start = np.full(r.order, -1, dtype=np.int64)
    start[r.zero] = s.zero
    spent = [0]

    def leaf_ok(m):
        if m[r.one] != s.one:
            return False
        return np.array_equal(m[r.mul], s.mul[m[:, None], m[None, :]])

    def rec(k, mapping):
        spent[0] += 1
        if budget is not None and spent[0] > budget:
            raise _BudgetExhausted
        if k == len(gens):
            if leaf_ok(mapping):
                yield mapping
            return
        for y in cands[k]:
            nxt = _extend(r, s, mapping, gens[k], y, bijective)
            if nxt is not None:
                yield from rec(k + 1, nxt)

    if r.order == 1:
        if s.order == 1:
            yield start
        return
    yield from rec(0, start)


def ring_homomorphisms(r, s, *, budget=None, bijective=False):
    """Iterate over all unital ring homomorphisms ``r -> s``."""
    try:
        for m in _search_homs(r, s, bijective=bijective, budget=budget):
            yield RingHom(r, s, m)
    except _BudgetExhausted:
        raise MeadowError("homomorphism search budget exhausted") from None


def ring_isomorphisms(r, s, *, budget=None):
    if r.order != s.order:
        return iter(())
    return ring_homomorphisms(r, s, budget=budget, bijective=True)


@dataclass(frozen=True)
class IsoSearchResult:
    """Three-valued outcome: ``isomorphic``, ``not isomorphic`` or ``unknown``."""

    status: str
    hom: RingHom | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "isomorphic"


def _multiset(values):
    return sorted(values)


def find_ring_isomorphism(r, s, budget=100_000):
    if r is s:
        return IsoSearchResult("isomorphic", RingHom.identity(r), "identical rings")
    if r.order != s.order:
        return IsoSearchResult("not isomorphic", None,
                               f"orders differ ({r.order} vs {s.order})")
    if _multiset(r.additive_orders.tolist()) != _multiset(s.additive_orders.tolist()):
        return IsoSearchResult("not isomorphic", None, "additive element orders differ")
    if int(r.unit_mask.sum()) != int(s.unit_mask.sum()):
        return IsoSearchResult("not isomorphic", None, "unit counts differ")
    if int(r.idempotent_mask.sum()) != int(s.idempotent_mask.sum()):
        return IsoSearchResult("not isomorphic", None, "idempotent counts differ")
    sig_r = _multiset(r.signature(x) for x in range(r.order))
    sig_s = _multiset(s.signature(x) for x in range(s.order))
    if sig_r != sig_s:
        return IsoSearchResult("not isomorphic", None, "element invariants differ")
    try:
        for m in _search_homs(r, s, bijective=True, budget=budget):
            return IsoSearchResult("isomorphic", RingHom(r, s, m), "backtracking search")
    except _BudgetExhausted:
        return IsoSearchResult("unknown", None, f"search budget {budget} exhausted")
    return IsoSearchResult("not isomorphic", None, "exhaustive search found no isomorphism")
