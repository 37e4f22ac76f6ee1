"""Lattices whose vertices carry rings and whose order relations carry maps.

For ``i <= j`` the transition ``transition(i, j)`` is a ring homomorphism from
the ring at ``j`` down to the ring at ``i``. Only Hasse edges are supplied; the
remaining transitions are composites, and construction fails unless every
pair of paths between two vertices composes to the same map.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import CoherenceError, MeadowError
from .finite_ring import DEFAULT_CAP, RingHom
from .lattice import FiniteLattice, hasse_edges

SCHEMA = 1


class DirectedLattice:
    """Validated directed lattice of rings. Build with :func:`build_directed_lattice`."""

    def __init__(self, lattice, rings, hasse_maps, transitions):
        self.lattice = lattice
        self.rings = tuple(rings)
        self.hasse_maps = dict(hasse_maps)
        self._transitions = dict(transitions)

    @property
    def size(self):
        return self.lattice.size

    @property
    def top(self):
        return self.lattice.top

    @property
    def bottom(self):
        return self.lattice.bottom

    def ring_at(self, v):
        return self.rings[v]

    def label(self, v):
        return self.lattice.labels[v]

    def transition(self, lower, upper):
        try:
            return self._transitions[(lower, upper)]
        except KeyError:
            raise MeadowError(f"vertex {lower} is not below vertex {upper}") from None

    def comparable_pairs(self):
        return sorted(self._transitions)

    def __repr__(self):
        return f"<DirectedLattice {self.size} vertices, top ring {self.rings[self.top].name}>"


def _as_hom(h, source, target):
    if isinstance(h, RingHom):
        if h.source is not source or h.target is not target:
            raise MeadowError("edge homomorphism has the wrong source or target ring")
        return h
    return RingHom(source, target, np.asarray(h))


def build_directed_lattice(lattice, rings, homs_on_hasse_edges):
    """Validate a labeling of ``lattice`` by rings and edge homomorphisms.

    ``homs_on_hasse_edges`` maps ``(lower, upper)`` to a RingHom (or an
    element-map array) from ``rings[upper]`` to ``rings[lower]``. Edges into
    the bottom vertex may be omitted: the map to the zero ring is unique.
    """
    rings = list(rings)
    n = lattice.size
    if len(rings) != n:
        raise MeadowError(f"{len(rings)} rings for {n} lattice vertices")
    if rings[lattice.bottom].order != 1:
        raise MeadowError("the ring at the bottom vertex must be the zero ring")
    for v, r in enumerate(rings):
        if v != lattice.bottom and r.order < 2:
            raise MeadowError(f"vertex {lattice.labels[v]} carries the zero ring "
                              "but is not the bottom")

    covers = hasse_edges(lattice)
    supplied = {}
    for (lo, up), h in homs_on_hasse_edges.items():
        lo, up = int(lo), int(up)
        if not lattice.lt(lo, up):
            raise MeadowError(f"edge ({lo}, {up}) does not go downward in the lattice")
        supplied[(lo, up)] = _as_hom(h, rings[up], rings[lo])
    for lo, up in covers:
        if (lo, up) not in supplied:
            if lo == lattice.bottom:
                supplied[(lo, up)] = RingHom(rings[up], rings[lo], np.zeros(rings[up].order))
            else:
                raise MeadowError(f"no homomorphism on the edge "
                                  f"{lattice.labels[up]} -> {lattice.labels[lo]}")
    for (lo, up), h in supplied.items():
        bad = h.violations()
        if bad:
            raise MeadowError(f"map {lattice.labels[up]} -> {lattice.labels[lo]} is not a "
                              "ring homomorphism: " + "; ".join(bad))

    lower_covers = {v: [lo for lo, up in covers if up == v] for v in range(n)}
    trans = {}

    def resolve(lo, up):
        key = (lo, up)
        if key in trans:
            return trans[key]
        if lo == up:
            trans[key] = RingHom.identity(rings[up])
            return trans[key]
        result = None
        for c in lower_covers[up]:
            if not lattice.leq[lo, c]:
                continue
            cand = resolve(lo, c).compose(supplied[(c, up)])
            if result is None:
                result = cand
            elif not np.array_equal(result.map, cand.map):
                raise CoherenceError(
                    f"paths from {lattice.labels[up]} to {lattice.labels[lo]} compose to "
                    "different maps", pair=(lo, up))
        trans[key] = result
        return result

    for up in range(n):
        for lo in range(n):
            if lattice.leq[lo, up]:
                resolve(lo, up)

    for (lo, up), h in supplied.items():
        if not np.array_equal(trans[(lo, up)].map, h.map):
            raise CoherenceError(
                f"supplied map {lattice.labels[up]} -> {lattice.labels[lo]} disagrees "
                "with the composite along covering edges", pair=(lo, up))

    hasse = {e: supplied[e] for e in covers}
    return DirectedLattice(lattice, rings, hasse, trans)


def coherence_violations(dl):
    """Pointwise check of ``f(i,j) o f(j,k) == f(i,k)`` over all chains ``i <= j <= k``."""
    bad = []
    leq = dl.lattice.leq
    for i in range(dl.size):
        for j in range(dl.size):
            if not leq[i, j]:
                continue
            for k in range(dl.size):
                if not leq[j, k]:
                    continue
                lhs = dl.transition(i, j).compose(dl.transition(j, k)).map
                if not np.array_equal(lhs, dl.transition(i, k).map):
                    bad.append((i, j, k))
    return bad


# -- JSON ----------------------------------------------------------------------


def from_json(data, *, cap=DEFAULT_CAP):
    """Build a directed lattice from the custom-lattice JSON format.

    ``{"schema": 1, "vertices": [{"name", "ring"}...],
    "edges": [{"upper", "lower", "map"}...]}`` where ``ring`` is a ring-spec
    DSL string and ``map[i]`` is the image of element ``i`` of the upper ring.
    The order is the reflexive-transitive closure of the edges; ``map`` may be
    omitted on edges into the zero ring.
    """
    from .dsl import parse_ring

    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if data.get("schema", SCHEMA) != SCHEMA:
        raise MeadowError(f"unsupported custom-lattice schema {data.get('schema')!r}")
    try:
        verts = data["vertices"]
        edges = data.get("edges", [])
    except (KeyError, TypeError):
        raise MeadowError("custom lattice needs a 'vertices' list") from None
    names = [str(v["name"]) for v in verts]
    if len(set(names)) != len(names):
        raise MeadowError("vertex names must be unique")
    pos = {nm: k for k, nm in enumerate(names)}
    rings = [parse_ring(v["ring"], cap=cap) for v in verts]
    n = len(names)
    leq = np.eye(n, dtype=bool)
    maps = {}
    for e in edges:
        try:
            up, lo = pos[str(e["upper"])], pos[str(e["lower"])]
        except KeyError as exc:
            raise MeadowError(f"edge names an unknown vertex {exc}") from None
        leq[lo, up] = True
        if "map" in e:
            maps[(lo, up)] = list(e["map"])
        elif rings[lo].order != 1:
            raise MeadowError(f"edge {names[up]} -> {names[lo]} needs a map")
    # reflexive-transitive closure
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        raise MeadowError("edges contain a cycle")
    lattice = FiniteLattice.from_leq(leq, [v.get("label", v["name"]) for v in verts])
    return build_directed_lattice(lattice, rings, maps)


def load_json(path, *, cap=DEFAULT_CAP):
    with open(path, encoding="utf-8") as fh:
        return from_json(json.load(fh), cap=cap)


def to_json(dl):
    names = [f"v{v}" for v in range(dl.size)]
    return {
        "schema": SCHEMA,
        "vertices": [{"name": names[v], "label": dl.label(v), "ring": dl.rings[v].descriptor}
                     for v in range(dl.size)],
        "edges": [{"upper": names[up], "lower": names[lo],
                   "map": [int(x) for x in h.map]}
                  for (lo, up), h in sorted(dl.hasse_maps.items())],
    }
