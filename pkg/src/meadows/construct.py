"""Meadows built from rings: ``M(R)``, group-algebra meadows, products,
induced homomorphisms and the decomposition into local factors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checks import AxiomResult, Report
from .directed_lattice import build_directed_lattice
from .errors import MeadowError, NotSurjectiveError
from .finite_ring import (DEFAULT_CAP, corner_ring, cyclic_group_table, find_ring_isomorphism,
                          make_group_algebra, make_product, make_quotient,
                          primitive_idempotents, ring_isomorphisms)
from .ideals import (enumerate_ideals, generated_ideal, is_local_ring,
                     make_ideal)
from .lattice import (FiniteLattice, atoms, hasse_edges, lattice_from_ideals,
                      lattice_isomorphisms, product_lattice)
from .meadow import Meadow, is_local, verify_homomorphism


# -- M(R) ----------------------------------------------------------------------


def _quotient_directed_lattice(r, ideals, lattice, labels):
    """Rings ``R/I`` on the vertices of ``lattice`` with projection transitions."""
    quotients = [make_quotient(r, i) for i in ideals]
    rings = [q for q, _ in quotients]
    projections = [p for _, p in quotients]
    lat = FiniteLattice(lattice.leq, lattice.meet, lattice.join, lattice.top,
                        lattice.bottom, labels)
    maps = {}
    for lo, up in hasse_edges(lat):
        maps[(lo, up)] = projections[lo].map[rings[up].representatives]
    return build_directed_lattice(lat, rings, maps), projections


def build_M(r, *, cap=DEFAULT_CAP):
    """The common meadow of all ideals of ``r``: ring ``R/I`` at vertex ``I``."""
    if r.order < 2:
        raise MeadowError("the zero ring has no meadow")
    ideals = enumerate_ideals(r, cap=cap)
    lattice = lattice_from_ideals(ideals)
    labels = [f"{r.name}/{i.label()}" for i in ideals]
    dl, projections = _quotient_directed_lattice(r, ideals, lattice, labels)
    return Meadow(dl, name=f"M({r.name})", base_ring=r, ideals=ideals,
                  projections=projections)


def vertex_of_ideal(m, ideal_members):
    """Vertex of ``M(R)`` carrying the ideal with these members."""
    members = tuple(sorted(set(int(x) for x in ideal_members)))
    for v, i in enumerate(m.ideals):
        if i.members == members:
            return v
    raise MeadowError("no vertex carries that ideal")


def element_of_coset(m, vertex, x):
    """Flat index of ``x + I`` at the vertex of ideal ``I``."""
    return int(m.offsets[vertex] + m.projections[vertex].map[x])


# -- group algebras -------------------------------------------------------------------


def subgroups(table):
    """All subgroups of a finite group given by its operation table (identity 0).

    Each subgroup is a sorted tuple of element indices; the list is sorted by
    (size, members).
    """
    n = table.shape[0]

    def closure(seed):
        inside = np.zeros(n, dtype=bool)
        inside[0] = True
        inside[list(seed)] = True
        while True:
            m = np.flatnonzero(inside)
            nxt = inside.copy()
            nxt[table[np.ix_(m, m)].ravel()] = True
            if nxt.sum() == inside.sum():
                return tuple(int(x) for x in m)
            inside = nxt

    found = {closure([g]) for g in range(n)}
    work = list(found)
    while work:
        new = []
        for h in work:
            for k in list(found):
                s = closure(set(h) | set(k))
                if s not in found:
                    found.add(s)
                    new.append(s)
        work = new
    return sorted(found, key=lambda s: (len(s), s))


def _subgroup_label(members, names):
    if len(members) == 1:
        return "1"
    return "<" + ",".join(names[g] for g in members if g != 0) + ">"


def build_group_algebra_meadow(base, cyclic_orders, *, cap=DEFAULT_CAP):
    """Meadow with ``base[A/H]`` at each subgroup ``H`` of ``A`` plus an adjoined ``a``.

    ``A`` is the product of cyclic groups of the given orders. Subgroups are
    ordered by reverse inclusion and ``base[A/H]`` is realized as
    ``base[A]`` modulo the ideal generated by ``h - 1`` for ``h`` in ``H``,
    so transitions are the projections ``gH -> gK``. The group algebra
    ``base[A/A]`` is ``base`` itself, so the absorbent element sits on a
    separate bottom vertex below it.
    """
    ga = make_group_algebra(base, cyclic_orders, cap=cap)
    table, names = cyclic_group_table(cyclic_orders)
    groups = subgroups(table)
    powers = base.order ** np.arange(table.shape[0])

    def basis(g):
        coeffs = np.full(table.shape[0], base.zero)
        coeffs[g] = base.one
        return int(coeffs @ powers)

    one = basis(0)
    ideals = []
    for h in groups:
        gens = [int(ga.add[basis(g), ga.neg[one]]) for g in h if g != 0]
        ideals.append(generated_ideal(ga, gens))
    unit = make_ideal(ga, range(ga.order))

    k = len(groups)
    sets = [frozenset(h) for h in groups]
    leq = np.zeros((k + 1, k + 1), dtype=bool)
    for i in range(k):
        for j in range(k):
            leq[i, j] = sets[i] >= sets[j]
    leq[k, :] = True
    gname = "x".join(f"C{n}" for n in cyclic_orders)
    labels = [f"{base.name}[{gname}/{_subgroup_label(h, names)}]" for h in groups]
    labels.append(f"{base.name}[{gname}]/(1)")
    lattice = FiniteLattice.from_leq(leq, labels)
    dl, projections = _quotient_directed_lattice(ga, ideals + [unit], lattice, labels)
    m = Meadow(dl, name=f"M_{base.name}({gname})", projections=projections)
    m.subgroups = tuple(groups)
    m.group_algebra = ga
    return m


# -- homomorphisms and isomorphisms ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MeadowHom:
    """An element map between meadows, flat index to flat index."""

    source: Meadow
    target: Meadow
    element_map: np.ndarray

    def __call__(self, x):
        return self.target.from_flat(self.element_map[x.flat])

    def verify(self):
        return verify_homomorphism(self.source, self.target, self.element_map)


class MeadowIso(MeadowHom):
    def verify(self):
        return verify_meadow_iso(self)


def verify_meadow_iso(iso):
    """Bijectivity plus preservation of +, * and 1, all exhaustive."""
    f = np.asarray(iso.element_map)
    rep = Report(f"isomorphism {iso.source.name} -> {iso.target.name}")
    bij = (iso.source.size == iso.target.size and f.shape == (iso.source.size,)
           and np.array_equal(np.sort(f), np.arange(iso.target.size)))
    rep.add(AxiomResult("bijective", bool(bij), iso.source.size))
    rep.extend(verify_homomorphism(iso.source, iso.target, f))
    return rep


def lift_surjective_hom(f, mr=None, ms=None):
    """The meadow map ``x + I -> f(x) + f(I)`` induced by a surjective ring map.

    Surjectivity is required: the image of an ideal under a ring map is an
    ideal of the target only when the map is onto.
    """
    if not f.is_surjective:
        raise NotSurjectiveError(
            f"{f.source.name} -> {f.target.name} is not surjective, so images of "
            "ideals need not be ideals and x + I -> f(x) + f(I) is undefined")
    mr = mr if mr is not None else build_M(f.source)
    ms = ms if ms is not None else build_M(f.target)
    if mr.base_ring is not f.source or ms.base_ring is not f.target:
        raise MeadowError("meadows must be built from the source and target rings")
    out = np.empty(mr.size, dtype=np.int64)
    for v, ideal in enumerate(mr.ideals):
        w = vertex_of_ideal(ms, f.map[list(ideal.members)])
        reps = mr.rings[v].representatives
        start = mr.offsets[v]
        out[start:start + reps.size] = ms.offsets[w] + ms.projections[w].map[f.map[reps]]
    hom = MeadowHom(mr, ms, out)
    rep = hom.verify()
    if not rep.ok:
        raise MeadowError("lifted map is not a meadow homomorphism:\n" + str(rep))
    return hom


@dataclass(frozen=True)
class IsoStatus:
    """``yes`` (with ``iso``), ``no`` (with an obstruction) or ``unknown``."""

    status: str
    iso: MeadowIso | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "yes"


def _fiber_attrs(m):
    return [m.rings[v].order for v in range(m.dl.size)]


def _lift_ring_iso(m, n, psi):
    out = np.empty(m.size, dtype=np.int64)
    for v, ideal in enumerate(m.ideals):
        w = vertex_of_ideal(n, psi.map[list(ideal.members)])
        reps = m.rings[v].representatives
        start = m.offsets[v]
        out[start:start + reps.size] = n.offsets[w] + n.projections[w].map[psi.map[reps]]
    return MeadowIso(m, n, out)


def meadows_isomorphic(m, n, budget=100_000):
    """Decide ``m ~ n`` by invariants, the base-ring criterion, or bounded search."""
    if m is n:
        return IsoStatus("yes", MeadowIso(m, n, np.arange(m.size)), "identical meadows")
    if m.dl.size != n.dl.size or m.lattice.signature() != n.lattice.signature():
        return IsoStatus("no", None, "lattice shapes differ")
    if sorted(_fiber_attrs(m)) != sorted(_fiber_attrs(n)):
        return IsoStatus("no", None, "fiber orders differ")
    shapes = lattice_isomorphisms(m.lattice, n.lattice)
    if next(iter(shapes), None) is None:
        return IsoStatus("no", None, "lattice shapes differ")
    if next(lattice_isomorphisms(m.lattice, n.lattice, _fiber_attrs(m), _fiber_attrs(n)),
            None) is None:
        return IsoStatus("no", None, "no lattice isomorphism matches fiber orders")

    if m.base_ring is not None and n.base_ring is not None and m.ideals and n.ideals:
        res = find_ring_isomorphism(m.base_ring, n.base_ring, budget=budget)
        if res.status == "unknown":
            return IsoStatus("unknown", None, res.reason)
        if not res:
            return IsoStatus("no", None, f"top rings are not isomorphic: {res.reason}")
        iso = _lift_ring_iso(m, n, res.hom)
        if not verify_meadow_iso(iso).ok:
            raise MeadowError("lifted ring isomorphism failed verification")
        return IsoStatus("yes", iso, "top rings are isomorphic")
    return _search_meadow_iso(m, n, budget)


class _Budget(Exception):
    pass


def _search_meadow_iso(m, n, budget):
    spent = [0]

    def tick():
        spent[0] += 1
        if spent[0] > budget:
            raise _Budget

    # top-down so each vertex sees its upper covers already assigned
    order = sorted(range(m.dl.size), key=lambda v: (int(m.lattice.leq[v, :].sum()), v))
    try:
        for sigma in lattice_isomorphisms(m.lattice, n.lattice, _fiber_attrs(m),
                                          _fiber_attrs(n)):
            tick()
            found = _assign(m, n, sigma, order, 0, {}, tick)
            if found is not None:
                out = np.empty(m.size, dtype=np.int64)
                for v, phi in found.items():
                    start = m.offsets[v]
                    out[start:start + phi.size] = n.offsets[sigma[v]] + phi
                iso = MeadowIso(m, n, out)
                if verify_meadow_iso(iso).ok:
                    return IsoStatus("yes", iso, "backtracking over vertex ring isomorphisms")
    except _Budget:
        return IsoStatus("unknown", None, f"search budget {budget} exhausted")
    return IsoStatus("no", None, "no family of ring isomorphisms commutes with the transitions")


def _assign(m, n, sigma, order, k, chosen, tick):
    if k == len(order):
        return dict(chosen)
    v = order[k]
    w = sigma[v]
    uppers = [u for u in range(m.dl.size) if m.lattice.covers[v, u]]
    for phi in ring_isomorphisms(m.rings[v], n.rings[w]):
        tick()
        phi = np.asarray(phi.map if hasattr(phi, "map") else phi)
        ok = True
        for u in uppers:
            lhs = phi[m.dl.transition(v, u).map]
            rhs = n.dl.transition(w, sigma[u]).map[chosen[u]]
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        if ok:
            chosen[v] = phi
            got = _assign(m, n, sigma, order, k + 1, chosen, tick)
            if got is not None:
                return got
            del chosen[v]
    return None


# -- products ------------------------------------------------------------------------------


def meadow_product(p, q, *more):
    """Componentwise product of meadows.

    The lattice is the product lattice, the ring at ``(z, w, ...)`` is the
    product of the fibers, and transitions act componentwise.
    """
    factors = (p, q, *more)
    lattice = product_lattice(*(f.lattice for f in factors))
    vsizes = [f.dl.size for f in factors]
    strides = np.cumprod([1, *vsizes[:-1]])
    comps = [(k // strides[i]) % vsizes[i] for i in range(len(factors))
             for k in [np.arange(lattice.size)]]
    vertex_parts = np.stack(comps, axis=1)
    rings = [make_product([f.rings[c] for f, c in zip(factors, vertex_parts[k])])
             for k in range(lattice.size)]
    maps = {}
    for lo, up in hasse_edges(lattice):
        lo_parts, up_parts = vertex_parts[lo], vertex_parts[up]
        idx = np.arange(rings[up].order)
        out = np.zeros_like(idx)
        up_stride = lo_stride = 1
        for f, a, b in zip(factors, lo_parts, up_parts):
            size_up = f.rings[b].order
            x = (idx // up_stride) % size_up
            out += f.dl.transition(a, b).map[x] * lo_stride
            up_stride *= size_up
            lo_stride *= f.rings[a].order
        maps[(lo, up)] = out
    dl = build_directed_lattice(lattice, rings, maps)

    # flat element of the product -> flat element of each factor
    total = sum(r.order for r in rings)
    table = np.empty((total, len(factors)), dtype=np.int64)
    pos = 0
    for k, r in enumerate(rings):
        idx = np.arange(r.order)
        stride = 1
        for i, f in enumerate(factors):
            v = vertex_parts[k][i]
            size = f.rings[v].order
            table[pos:pos + r.order, i] = f.offsets[v] + (idx // stride) % size
            stride *= size
        pos += r.order
    table.flags.writeable = False
    name = " x ".join(f.name for f in factors)
    return Meadow(dl, name=name, factors=factors, components=table)


def product_element(prod, *parts):
    """The product element whose components are the given factor elements."""
    flats = tuple(x.flat for x in parts)
    hits = np.flatnonzero(np.all(prod.components == np.asarray(flats), axis=1))
    if hits.size != 1:
        raise MeadowError("no product element with those components")
    return prod.from_flat(int(hits[0]))


def product_parts(x):
    m = x.meadow
    return tuple(f.from_flat(c) for f, c in zip(m.factors, m.components[x.flat]))


def check_product_structure(prod):
    """Fibers, order and operations of a product agree with its factors."""
    comps = prod.components
    factors = prod.factors
    rep = Report(f"product structure of {prod.name}")
    idx = np.arange(prod.size)
    zero_parts = comps[prod.zero_of_flat]
    expected = np.stack([f.zero_of_flat[comps[:, i]] for i, f in enumerate(factors)], axis=1)
    bad = np.flatnonzero(~np.all(zero_parts == expected, axis=1))
    rep.add(AxiomResult("fiber of (x, y) is P_0x times Q_0y", bad.size == 0, prod.size,
                        detail=f"{bad.size} exceptions" if bad.size else ""))

    V = prod.dl.size
    zeros = np.array([prod.offsets[v] + prod.rings[v].zero for v in range(V)])
    mine = prod.mul_flat(zeros[:, None], zeros[None, :]) == zeros[:, None]
    theirs = np.ones((V, V), dtype=bool)
    for i, f in enumerate(factors):
        zi = comps[zeros, i]
        theirs &= f.mul_flat(zi[:, None], zi[None, :]) == zi[:, None]
    bad = int((mine != theirs).sum())
    rep.add(AxiomResult("order on fiber zeros is componentwise", bad == 0, V * V,
                        detail=f"{bad} exceptions" if bad else ""))

    x, y = (g.ravel() for g in np.meshgrid(idx, idx, indexing="ij"))
    for name, op in (("sum is componentwise", "add_flat"), ("product is componentwise", "mul_flat")):
        got = comps[getattr(prod, op)(x, y)]
        want = np.stack([getattr(f, op)(comps[x, i], comps[y, i])
                         for i, f in enumerate(factors)], axis=1)
        bad = int((~np.all(got == want, axis=1)).sum())
        rep.add(AxiomResult(name, bad == 0, x.size, detail=f"{bad} exceptions" if bad else ""))
    return rep


# -- decomposition ----------------------------------------------------------------------


@dataclass
class Decomposition:
    meadow: Meadow
    idempotents: list
    corners: list
    factors: list
    product: Meadow
    iso: MeadowIso
    report: Report = field(repr=False)

    def canonical_forms(self):
        return sorted(canonical_form(f) for f in self.factors)

    def to_json(self):
        r = self.meadow.base_ring
        return {
            "schema": 1,
            "base_ring": r.descriptor,
            "primitive_idempotents": [int(e) for e in self.idempotents],
            "primitive_idempotent_labels": [r.label(e) for e in self.idempotents],
            "factors": [{
                "ring": f.base_ring.descriptor,
                "name": f.base_ring.name,
                "order": f.base_ring.order,
                "vertices": f.dl.size,
                "local": is_local(f),
            } for f in self.factors],
            "iso": {"verified": self.report.ok,
                    "checks": [{"name": a.name, "passed": a.passed, "checked": a.checked}
                               for a in self.report.results]},
        }


def canonical_form(m):
    """Invariant summary used to compare factors up to isomorphism."""
    return (m.rings[m.dl.top].order, tuple(sorted(_fiber_attrs(m))),
            tuple(map(tuple, m.lattice.signature())))


def decompose_local(m, idempotent_order=None):
    """Split ``M(R)`` into ``M(eR)`` over the primitive idempotents ``e`` of ``R``.

    The isomorphism from the product of the factors is explicit: a tuple of
    cosets ``(x_i + I_i)`` goes to ``sum(x_i) + sum(I_i)`` in ``R``.
    ``idempotent_order`` permutes the idempotents before building factors;
    the canonical factor order makes the result independent of it.
    """
    r = m.base_ring
    if r is None or m.ideals is None:
        raise MeadowError("decomposition needs a meadow built as M(R)")
    ids = primitive_idempotents(r)
    if idempotent_order is not None:
        if sorted(idempotent_order) != list(range(len(ids))):
            raise MeadowError("idempotent order must be a permutation of the idempotents")
        ids = [ids[k] for k in idempotent_order]
    corners = [corner_ring(r, e) for e in ids]
    for (c, _), e in zip(corners, ids):
        if not is_local_ring(c):
            raise MeadowError(f"corner ring at {r.label(e)} is not local")
    order = sorted(range(len(ids)), key=lambda k: (corners[k][0].order, corners[k][0].descriptor))
    ids = [ids[k] for k in order]
    corners = [corners[k] for k in order]
    factors = [build_M(c) for c, _ in corners]

    if len(factors) == 1:
        product = factors[0]
        comps = np.arange(product.size)[:, None]
    else:
        product = meadow_product(*factors)
        comps = product.components

    out = np.empty(product.size, dtype=np.int64)
    for v in range(product.dl.size):
        start, size = product.offsets[v], product.rings[v].order
        parts = comps[start:start + size]
        ideal = np.zeros(1, dtype=np.int64) + r.zero
        elem = np.full(size, r.zero, dtype=np.int64)
        for i, (f, (c, emb)) in enumerate(zip(factors, corners)):
            fv = f.vertex_of[parts[0, i]]
            members = emb[list(f.ideals[fv].members)]
            ideal = np.unique(r.add[ideal[:, None], members[None, :]])
            reps = f.rings[fv].representatives[f.local_of[parts[:, i]]]
            elem = r.add[elem, emb[reps]]
        w = vertex_of_ideal(m, ideal)
        out[start:start + size] = m.offsets[w] + m.projections[w].map[elem]
    iso = MeadowIso(product, m, out)
    report = verify_meadow_iso(iso)
    report.add(AxiomResult("every factor is local", all(is_local(f) for f in factors),
                           len(factors)))
    report.add(AxiomResult("factor count equals atom count",
                           len(factors) == len(atoms(m.lattice)), 1))
    return Decomposition(m, ids, corners, factors, product, iso, report)
