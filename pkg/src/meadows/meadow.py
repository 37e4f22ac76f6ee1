"""Meadows as disjoint unions of the rings of a directed lattice.

An element lives at a vertex ``v`` and is an element of the ring there. Sum
and product push both operands down to the meet of their vertices along the
transition maps and operate in the ring found there. The bottom vertex
carries the zero ring, whose single element is the absorbent ``a``.

Internally elements are numbered by a flat index (vertex blocks laid out in
vertex order); the public :class:`Element` is the pair ``(vertex, index)``
bound to its meadow.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .checks import DEFAULT_SEED, SAMPLE_SIZE, AxiomResult, Report, sweep
from .errors import InternalConsistencyError, MeadowError, NotCommonError
from .finite_ring import RingHom
from .lattice import FiniteLattice, atoms, to_dot as lattice_dot

# full axiom sweep up to this many elements, seeded sampling above
EXHAUSTIVE_LIMIT = 512
# operation tables are materialized up to this many elements
TABLE_LIMIT = 2048
# binary laws stay exhaustive while the pair count is below this
PAIR_LIMIT = 1 << 22


class Element:
    """An element of a meadow: a vertex and a ring-element index there."""

    __slots__ = ("meadow", "flat")

    def __init__(self, meadow, flat):
        self.meadow = meadow
        self.flat = int(flat)

    @property
    def vertex(self):
        return int(self.meadow.vertex_of[self.flat])

    @property
    def index(self):
        return int(self.meadow.local_of[self.flat])

    def astuple(self):
        return (self.vertex, self.index)

    def __eq__(self, other):
        return (isinstance(other, Element) and other.meadow is self.meadow
                and other.flat == self.flat)

    def __hash__(self):
        return hash((id(self.meadow), self.flat))

    def __add__(self, other):
        return madd(self, other)

    def __mul__(self, other):
        return mmul(self, other)

    def __neg__(self):
        return mneg(self)

    def inverse(self):
        return minv(self)

    @property
    def is_a(self):
        return self.flat == self.meadow.a_flat

    def __str__(self):
        return self.meadow.element_label(self.flat)

    def __repr__(self):
        return f"<Element {self}>"


class Meadow:
    """The pre-meadow with ``a`` of a directed lattice of rings.

    Optional metadata: ``base_ring``, ``ideals`` and the quotient maps
    ``projections`` when built as ``M(R)``; ``factors`` and the flat
    ``components`` table when built as a product.
    """

    def __init__(self, dl, *, name=None, base_ring=None, ideals=None, projections=None,
                 factors=None, components=None):
        if dl.size < 2:
            raise MeadowError("a meadow needs a unital ring on top and the zero ring "
                              "at the bottom, so at least two vertices")
        self.dl = dl
        self.lattice = dl.lattice
        self.rings = dl.rings
        self.name = name or f"meadow over {dl.rings[dl.top].name}"
        self.base_ring = base_ring
        self.ideals = None if ideals is None else tuple(ideals)
        self.projections = None if projections is None else tuple(projections)
        self.factors = None if factors is None else tuple(factors)
        self.components = components

        V = dl.size
        sizes = np.array([r.order for r in self.rings], dtype=np.int64)
        self.offsets = _ro(np.concatenate([[0], np.cumsum(sizes)[:-1]]))
        self.size = int(sizes.sum())
        self.vertex_of = _ro(np.repeat(np.arange(V), sizes))
        self.local_of = _ro(np.concatenate([np.arange(s) for s in sizes]))
        push = np.full((V, self.size), -1, dtype=np.int64)
        for v in range(V):
            block = slice(self.offsets[v], self.offsets[v] + sizes[v])
            for t in self.lattice.down_set(v):
                push[t, block] = dl.transition(t, v).map
        self._push = _ro(push)
        self.neg_flat = _ro(self.offsets[self.vertex_of]
                            + np.concatenate([r.neg for r in self.rings]))
        self.zero_of_flat = _ro(self.offsets[self.vertex_of]
                                + np.array([self.rings[v].zero for v in self.vertex_of]))
        top, bottom = dl.top, dl.bottom
        self.a_flat = int(self.offsets[bottom])
        self.zero_flat = int(self.offsets[top] + self.rings[top].zero)
        self.one_flat = int(self.offsets[top] + self.rings[top].one)

    def __repr__(self):
        return f"<Meadow {self.name}: {self.dl.size} vertices, {self.size} elements>"

    def __len__(self):
        return self.size

    # -- element access ---------------------------------------------------

    def element(self, vertex, index):
        vertex, index = int(vertex), int(index)
        if not 0 <= vertex < self.dl.size:
            raise MeadowError(f"no vertex {vertex}")
        if not 0 <= index < self.rings[vertex].order:
            raise MeadowError(f"index {index} outside the ring at vertex {vertex}")
        return Element(self, self.offsets[vertex] + index)

    def from_flat(self, flat):
        return Element(self, flat)

    def elements(self):
        return [Element(self, f) for f in range(self.size)]

    def fiber(self, vertex):
        start = int(self.offsets[vertex])
        return [Element(self, start + i) for i in range(self.rings[vertex].order)]

    @property
    def a(self):
        return Element(self, self.a_flat)

    @property
    def zero(self):
        return Element(self, self.zero_flat)

    @property
    def one(self):
        return Element(self, self.one_flat)

    def vertex_zero(self, vertex):
        return self.element(vertex, self.rings[vertex].zero)

    def vertex_label(self, v):
        return self.dl.label(v)

    def element_label(self, flat):
        if flat == self.a_flat:
            return "a"
        v = int(self.vertex_of[flat])
        return f"{self.rings[v].label(self.local_of[flat])}@{self.vertex_label(v)}"

    # -- flat operations --------------------------------------------------

    def _binop(self, a, b, table):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        t = self.lattice.meet[self.vertex_of[a], self.vertex_of[b]]
        x = self._push[t, a]
        y = self._push[t, b]
        out = np.empty(a.shape, dtype=np.int64)
        for v in np.unique(t):
            m = t == v
            out[m] = self.offsets[v] + getattr(self.rings[v], table)[x[m], y[m]]
        return out

    def _full_table(self, table):
        idx = np.arange(self.size)
        out = self._binop(idx[:, None], idx[None, :], table)
        out.flags.writeable = False
        return out

    @cached_property
    def add_table(self):
        if self.size > TABLE_LIMIT:
            return None
        return self._full_table("add")

    @cached_property
    def mul_table(self):
        if self.size > TABLE_LIMIT:
            return None
        return self._full_table("mul")

    def add_flat(self, a, b):
        t = self.add_table
        return t[a, b] if t is not None else self._binop(a, b, "add")

    def mul_flat(self, a, b):
        t = self.mul_table
        return t[a, b] if t is not None else self._binop(a, b, "mul")

    def push(self, target_vertex, flat):
        """Image of element ``flat`` at a vertex below its own, else -1."""
        return int(self._push[target_vertex, flat])

    # -- inverses ---------------------------------------------------------

    @cached_property
    def _invertibility(self):
        V = self.dl.size
        units_at = np.zeros((V, self.size), dtype=bool)
        for t in range(V):
            p = self._push[t]
            ok = p >= 0
            units_at[t, ok] = self.rings[t].unit_mask[p[ok]]
        member = units_at.T
        strict = self.lattice.leq & ~np.eye(V, dtype=bool)
        above = member.astype(np.int64) @ strict.T.astype(np.int64)
        maximal = member & (above == 0)
        count = maximal.sum(axis=1)
        greatest = np.where(count == 1, np.argmax(maximal, axis=1), -1)
        for arr in (member, maximal, greatest):
            arr.flags.writeable = False
        return member, maximal, greatest

    @cached_property
    def inverse_flat(self):
        """Flat inverse table; raises NotCommonError when some I_x lacks a greatest element."""
        _, maximal, greatest = self._invertibility
        bad = np.flatnonzero(greatest < 0)
        if bad.size:
            x = int(bad[0])
            tops = [int(v) for v in np.flatnonzero(maximal[x])]
            raise NotCommonError(
                f"{self.name} is not a common meadow: the invertibility set of "
                f"{self.element_label(x)} has maximal vertices "
                f"{', '.join(self.vertex_label(v) for v in tops)}",
                witness=Element(self, x), maximal=tuple(tops))
        g = greatest
        local = self._push[g, np.arange(self.size)]
        inv_local = np.array([self.rings[v].inverse_table[i] for v, i in zip(g, local)])
        out = self.offsets[g] + inv_local
        out.flags.writeable = False
        return out


def _ro(a):
    a = np.asarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


def build_meadow(dl, **kwargs):
    return Meadow(dl, **kwargs)


def _same(x, y):
    if not isinstance(x, Element) or not isinstance(y, Element):
        raise TypeError("meadow operations take Element arguments")
    if x.meadow is not y.meadow:
        raise MeadowError("elements belong to different meadows")
    return x.meadow


# -- operations ---------------------------------------------------------------


def madd(x, y):
    m = _same(x, y)
    return Element(m, m.add_flat(x.flat, y.flat))


def mmul(x, y):
    m = _same(x, y)
    return Element(m, m.mul_flat(x.flat, y.flat))


def mneg(x):
    return Element(x.meadow, x.meadow.neg_flat[x.flat])


def zero_of(x):
    """``0 * x``: the zero of the fiber containing ``x``."""
    return Element(x.meadow, x.meadow.zero_of_flat[x.flat])


def is_fiber_zero(z):
    return z.meadow.zero_of_flat[z.flat] == z.flat


def order_leq(z, w):
    """``z <= w`` on ``0*P``, decided by ``z * w == z``."""
    m = _same(z, w)
    for e in (z, w):
        if not is_fiber_zero(e):
            raise MeadowError(f"{e} is not of the form 0*x")
    return int(m.mul_flat(z.flat, w.flat)) == z.flat


def invertibility_set(x):
    """Vertices below ``x`` where the image of ``x`` is a unit, ascending."""
    member, _, _ = x.meadow._invertibility
    return [int(v) for v in np.flatnonzero(member[x.flat])]


@dataclass(frozen=True)
class CommonResult:
    """Outcome of the greatest-element test; truthy when the meadow is common."""

    common: bool
    witness: Element | None = None
    maximal: tuple = ()

    def __bool__(self):
        return self.common

    def describe(self):
        if self.common:
            return "common meadow: every invertibility set has a greatest element"
        m = self.witness.meadow
        tops = ", ".join(m.vertex_label(v) for v in self.maximal)
        return (f"not common: invertibility set of {self.witness} has "
                f"{len(self.maximal)} maximal vertices ({tops})")


def is_common(m):
    _, maximal, greatest = m._invertibility
    bad = np.flatnonzero(greatest < 0)
    if bad.size == 0:
        return CommonResult(True)
    x = int(bad[0])
    return CommonResult(False, Element(m, x), tuple(int(v) for v in np.flatnonzero(maximal[x])))


def maximal_invertibility_vertices(x):
    _, maximal, _ = x.meadow._invertibility
    return [int(v) for v in np.flatnonzero(maximal[x.flat])]


def minv(x):
    """Total inverse: the ring inverse of ``x`` at the greatest vertex of its invertibility set."""
    m = x.meadow
    return Element(m, m.inverse_flat[x.flat])


# -- axiom sweeps ---------------------------------------------------------------


def _modes(m, sampled):
    full = not sampled and m.size <= EXHAUSTIVE_LIMIT
    pairs_ok = not sampled and m.size * m.size <= PAIR_LIMIT
    return {1: not sampled, 2: pairs_ok or full, 3: full}


def _render(m):
    return lambda t: "(" + ", ".join(m.element_label(f) for f in t) + ")"


def check_pre_meadow(m, *, sampled=False, samples=SAMPLE_SIZE, seed=DEFAULT_SEED):
    """Sweep P1-P10 and the conditions of a pre-meadow with ``a``.

    Ternary laws are exhaustive when the carrier has at most
    ``EXHAUSTIVE_LIMIT`` elements; beyond that (or with ``sampled=True``)
    every law is checked on ``samples`` tuples drawn with ``seed``.
    """
    A, M = m.add_flat, m.mul_flat
    N, Z, O = m.neg_flat, m.zero_flat, m.one_flat
    rng = np.random.default_rng(seed)
    modes = _modes(m, sampled)
    render = _render(m)
    laws = [
        ("P1", 3, lambda x, y, z: A(A(x, y), z) == A(x, A(y, z))),
        ("P2", 2, lambda x, y: A(x, y) == A(y, x)),
        ("P3", 1, lambda x: A(x, Z) == x),
        ("P4", 1, lambda x: A(x, N[x]) == M(Z, x)),
        ("P5", 3, lambda x, y, z: M(M(x, y), z) == M(x, M(y, z))),
        ("P6", 2, lambda x, y: M(x, y) == M(y, x)),
        ("P7", 1, lambda x: M(O, x) == x),
        ("P8", 3, lambda x, y, z: M(x, A(y, z)) == A(M(x, y), M(x, z))),
        ("P9", 1, lambda x: N[N[x]] == x),
        ("P10", 2, lambda x, y: M(Z, A(x, y)) == M(M(Z, x), y)),
    ]
    rep = Report(f"pre-meadow axioms for {m.name}")
    for name, arity, law in laws:
        rep.add(sweep(name, arity, law, m.size, exhaustive=modes[arity],
                      samples=samples, rng=rng, render=render))
    rep.extend(_with_a_conditions(m))
    return rep


def _with_a_conditions(m):
    A, M = m.add_flat, m.mul_flat
    rep = Report("pre-meadow with a")
    idx = np.arange(m.size)
    fib = np.asarray(M(m.zero_flat, idx))
    zeros, counts = np.unique(fib, return_counts=True)
    single = zeros[counts == 1]
    if single.size == 1:
        rep.add(AxiomResult("unique singleton fiber", True, m.size))
        a = int(single[0])
    else:
        rep.add(AxiomResult("unique singleton fiber", False, m.size,
                            detail=f"{single.size} singleton fibers"))
        a = m.a_flat
    render = _render(m)
    rep.add(sweep("x + a = a", 1, lambda x: A(x, a) == a, m.size, render=render))
    rep.add(sweep("x * a = a", 1, lambda x: M(x, a) == a, m.size, render=render))
    rep.add(sweep("fibers are the vertex rings", 1, lambda x: fib[x] == m.zero_of_flat[x],
                  m.size, render=render))
    return rep


def check_common(m, *, sampled=False, samples=SAMPLE_SIZE, seed=DEFAULT_SEED):
    """Sweep M1-M4 with the inverse from the greatest-element criterion."""
    rep = Report(f"common-meadow axioms for {m.name}")
    res = is_common(m)
    if not res:
        for name in ("M1", "M2", "M3", "M4"):
            rep.add(AxiomResult(name, False, 0, detail="no inverse: " + res.describe()))
        return rep
    A, M = m.add_flat, m.mul_flat
    I, Z, O = m.inverse_flat, m.zero_flat, m.one_flat
    rng = np.random.default_rng(seed)
    modes = _modes(m, sampled)
    render = _render(m)
    laws = [
        ("M1", 1, lambda x: M(x, I[x]) == A(O, M(Z, I[x]))),
        ("M2", 2, lambda x, y: I[M(x, y)] == M(I[x], I[y])),
        ("M3", 1, lambda x: I[A(O, M(Z, x))] == A(O, M(Z, x))),
    ]
    for name, arity, law in laws:
        rep.add(sweep(name, arity, law, m.size, exhaustive=modes[arity],
                      samples=samples, rng=rng, render=render))
    ok = int(I[Z]) == m.a_flat
    rep.add(AxiomResult("M4", ok, 1, detail="" if ok else
                        f"0^-1 = {m.element_label(int(I[Z]))}"))
    return rep


def check_all(m, **kwargs):
    rep = check_pre_meadow(m, **kwargs)
    rep.extend(check_common(m, **kwargs))
    rep.title = f"meadow axioms for {m.name}"
    return rep


# -- order, atoms, locality ---------------------------------------------------


def zero_lattice(m):
    """The lattice ``0*M`` rebuilt from the operations alone.

    Vertex ``k`` of the result is the fiber zero of vertex ``k`` of the
    directed lattice.
    """
    zs = np.array([m.offsets[v] + m.rings[v].zero for v in range(m.dl.size)])
    prod = np.asarray(m.mul_flat(zs[:, None], zs[None, :]))
    leq = prod == zs[:, None]
    return FiniteLattice.from_leq(leq, m.lattice.labels)


def meadow_atoms(m):
    lat = zero_lattice(m)
    return [m.vertex_zero(v) for v in atoms(lat)]


def is_local_by_definition(m):
    """``x + y = a`` forces ``x = a`` or ``y = a``, over all pairs."""
    rest = np.array([f for f in range(m.size) if f != m.a_flat])
    if rest.size == 0:
        return True
    t = m.add_table
    if t is not None:
        return not bool(np.any(t[np.ix_(rest, rest)] == m.a_flat))
    for x in rest:
        if np.any(m.add_flat(x, rest) == m.a_flat):
            return False
    return True


def is_local(m):
    """Locality by definition, cross-checked against the unique-atom criterion."""
    by_def = is_local_by_definition(m)
    by_atoms = len(meadow_atoms(m)) == 1
    if by_def != by_atoms:
        raise InternalConsistencyError(
            f"{m.name}: locality by definition is {by_def} but the atom count says {by_atoms}")
    return by_def


def is_chain(m):
    lat = m.lattice
    return bool(np.all(lat.leq | lat.leq.T))


# -- transition maps and homomorphisms ----------------------------------------------


def induced_transition(m, lower, upper):
    """The map ``x -> x + 0_lower`` from the fiber at ``upper`` to the fiber at ``lower``."""
    start = int(m.offsets[upper])
    fiber = np.arange(start, start + m.rings[upper].order)
    img = np.asarray(m.add_flat(fiber, m.offsets[lower] + m.rings[lower].zero))
    if np.any(m.vertex_of[img] != lower):
        raise MeadowError("adding the fiber zero left the lower fiber")
    return RingHom(m.rings[upper], m.rings[lower], m.local_of[img])


def check_transition_maps(m):
    """For ``z <= z'``, ``x -> x + z`` is a ring map that composes coherently."""
    rep = Report(f"transition maps of {m.name}")
    leq = m.lattice.leq
    V = m.dl.size
    pairs = [(lo, up) for up in range(V) for lo in range(V) if leq[lo, up]]
    maps = {}
    bad_hom, bad_eq = [], []
    for lo, up in pairs:
        try:
            f = induced_transition(m, lo, up)
        except MeadowError:
            bad_hom.append((lo, up))
            continue
        maps[(lo, up)] = f
        if f.violations():
            bad_hom.append((lo, up))
        if not np.array_equal(f.map, m.dl.transition(lo, up).map):
            bad_eq.append((lo, up))
    rep.add(AxiomResult("x -> x + z is a ring homomorphism", not bad_hom, len(pairs),
                        counterexample=bad_hom[0] if bad_hom else None,
                        detail=f"{len(bad_hom)} exceptions" if bad_hom else ""))
    rep.add(AxiomResult("matches the directed-lattice transition", not bad_eq, len(pairs),
                        counterexample=bad_eq[0] if bad_eq else None,
                        detail=f"{len(bad_eq)} exceptions" if bad_eq else ""))
    triples = bad = 0
    first = None
    for i in range(V):
        for j in range(V):
            if not leq[i, j] or (i, j) not in maps:
                continue
            for k in range(V):
                if not leq[j, k] or (j, k) not in maps or (i, k) not in maps:
                    continue
                triples += 1
                comp = maps[(i, j)].map[maps[(j, k)].map]
                if not np.array_equal(comp, maps[(i, k)].map):
                    bad += 1
                    first = first or (i, j, k)
    rep.add(AxiomResult("coherence f(z,z') o f(z',z'') = f(z,z'')", bad == 0, triples,
                        counterexample=first, detail=f"{bad} exceptions" if bad else ""))
    return rep


def verify_homomorphism(src, dst, mapping):
    """Check that ``mapping`` (flat src -> flat dst) preserves +, * and 1."""
    f = np.asarray(mapping, dtype=np.int64)
    rep = Report(f"homomorphism {src.name} -> {dst.name}")
    if f.shape != (src.size,) or (f.size and (f.min() < 0 or f.max() >= dst.size)):
        rep.add(AxiomResult("well-formed map", False, 0, detail="map has the wrong shape"))
        return rep
    render = _render(src)
    rep.add(sweep("f(x + y) = f(x) + f(y)", 2,
                  lambda x, y: f[src.add_flat(x, y)] == dst.add_flat(f[x], f[y]),
                  src.size, render=render))
    rep.add(sweep("f(x * y) = f(x) * f(y)", 2,
                  lambda x, y: f[src.mul_flat(x, y)] == dst.mul_flat(f[x], f[y]),
                  src.size, render=render))
    rep.add(AxiomResult("f(1) = 1", int(f[src.one_flat]) == dst.one_flat, 1))
    return rep


# -- output ------------------------------------------------------------------------


def to_dot(m, *, name="meadow"):
    return lattice_dot(m.lattice, [m.vertex_label(v) for v in range(m.dl.size)],
                       name=name, bottom_label="{a}")


def to_json(m):
    from .directed_lattice import to_json as dl_json

    res = is_common(m)
    out = {
        "schema": 1,
        "name": m.name,
        "size": m.size,
        "top": m.dl.top,
        "bottom": m.dl.bottom,
        "directed_lattice": dl_json(m.dl),
        "fiber_orders": [r.order for r in m.rings],
        "common": bool(res),
    }
    if m.base_ring is not None:
        out["base_ring"] = m.base_ring.descriptor
    if not res:
        out["witness"] = {"element": str(res.witness),
                          "vertex": m.vertex_label(res.witness.vertex),
                          "maximal": [m.vertex_label(v) for v in res.maximal]}
    return out
