"""Finite bounded lattices on dense vertex ids ``0..size-1``.

Order, meet and join are materialized as numpy tables. ``leq[i, j]`` is
``i <= j``. For lattices of ideals the order is *reverse* inclusion, so the
zero ideal is the top and the unit ideal the bottom, as in the figures of
meadows drawn top-down.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .checks import Report, sweep
from .errors import MeadowError


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.flags.writeable = False
    return a


class FiniteLattice:
    def __init__(self, leq, meet, join, top, bottom, labels=None):
        self.leq = _frozen(leq, bool)
        self.meet = _frozen(meet, np.int64)
        self.join = _frozen(join, np.int64)
        self.size = self.leq.shape[0]
        self.top = int(top)
        self.bottom = int(bottom)
        if labels is None:
            labels = [str(i) for i in range(self.size)]
        self.labels = tuple(labels)

    @classmethod
    def from_leq(cls, leq, labels=None):
        """Derive meet, join, top and bottom from an order relation.

        Raises if ``leq`` is not the order of a bounded lattice.
        """
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        meet = np.empty((n, n), dtype=np.int64)
        join = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a, n):
                lower = np.flatnonzero(leq[:, a] & leq[:, b])
                m = [c for c in lower if leq[lower, c].all()]
                upper = np.flatnonzero(leq[a, :] & leq[b, :])
                j = [c for c in upper if leq[c, upper].all()]
                if len(m) != 1 or len(j) != 1:
                    raise MeadowError(f"vertices {a} and {b} have no "
                                      f"{'meet' if len(m) != 1 else 'join'}")
                meet[a, b] = meet[b, a] = m[0]
                join[a, b] = join[b, a] = j[0]
        tops = [v for v in range(n) if leq[:, v].all()]
        bottoms = [v for v in range(n) if leq[v, :].all()]
        if len(tops) != 1 or len(bottoms) != 1:
            raise MeadowError("order has no top or no bottom")
        return cls(leq, meet, join, tops[0], bottoms[0], labels)

    def __repr__(self):
        return f"<FiniteLattice size={self.size} top={self.top} bottom={self.bottom}>"

    def lt(self, a, b):
        return a != b and bool(self.leq[a, b])

    def down_set(self, v):
        return [int(u) for u in np.flatnonzero(self.leq[:, v])]

    def up_set(self, v):
        return [int(u) for u in np.flatnonzero(self.leq[v, :])]

    @cached_property
    def covers(self):
        """Boolean matrix: ``covers[i, j]`` iff ``j`` covers ``i``."""
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        through = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        c = strict & ~through
        c.flags.writeable = False
        return c

    def signature(self):
        """Sorted (down-set size, up-set size) pairs: a cheap shape invariant."""
        down = self.leq.sum(axis=0)
        up = self.leq.sum(axis=1)
        return sorted(zip(down.tolist(), up.tolist()))


def lattice_from_ideals(ideals):
    """Lattice of ideals under reverse inclusion.

    Meet is the ideal sum, join the intersection, top the zero ideal and bottom
    the unit ideal. The list must be closed under both operations.
    """
    from .ideals import ideal_intersection, ideal_sum

    ideals = list(ideals)
    index = {i.members: k for k, i in enumerate(ideals)}
    n = len(ideals)
    sets = [frozenset(i.members) for i in ideals]
    leq = np.array([[sets[i] >= sets[j] for j in range(n)] for i in range(n)])
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            s = ideal_sum(ideals[a], ideals[b]).members
            t = ideal_intersection(ideals[a], ideals[b]).members
            if s not in index or t not in index:
                raise MeadowError("ideal list is not closed under sum and intersection")
            meet[a, b] = meet[b, a] = index[s]
            join[a, b] = join[b, a] = index[t]
    tops = [k for k, i in enumerate(ideals) if i.is_zero]
    bottoms = [k for k, i in enumerate(ideals) if i.is_unit_ideal]
    if len(tops) != 1 or len(bottoms) != 1:
        raise MeadowError("ideal list must contain the zero and the unit ideal once")
    return FiniteLattice(leq, meet, join, tops[0], bottoms[0],
                         [i.label() for i in ideals])


def atoms(lat):
    return [int(v) for v in np.flatnonzero(lat.covers[lat.bottom])]


def is_atomic(lat):
    """Every non-bottom vertex lies above an atom (always true when finite)."""
    at = atoms(lat)
    return all(v == lat.bottom or any(lat.leq[a, v] for a in at) for v in range(lat.size))


def hasse_edges(lat):
    """Covering pairs ``(lower, upper)`` in lexicographic order."""
    lo, up = np.nonzero(lat.covers)
    return [(int(a), int(b)) for a, b in zip(lo, up)]


def validate_lattice(lat):
    """Check partial-order laws, bounds, and that meet/join are glb/lub."""
    n = lat.size
    L, Mt, Jn = lat.leq, lat.meet, lat.join
    rep = Report("lattice laws")
    rep.add(sweep("reflexive", 1, lambda a: L[a, a], n))
    rep.add(sweep("antisymmetric", 2, lambda a, b: ~(L[a, b] & L[b, a]) | (a == b), n))
    rep.add(sweep("transitive", 3, lambda a, b, c: ~(L[a, b] & L[b, c]) | L[a, c], n))
    rep.add(sweep("top is maximum", 1, lambda a: L[a, lat.top], n))
    rep.add(sweep("bottom is minimum", 1, lambda a: L[lat.bottom, a], n))
    rep.add(sweep("meet is lower bound", 2, lambda a, b: L[Mt[a, b], a] & L[Mt[a, b], b], n))
    rep.add(sweep("meet is greatest", 3,
                  lambda a, b, c: ~(L[c, a] & L[c, b]) | L[c, Mt[a, b]], n))
    rep.add(sweep("join is upper bound", 2, lambda a, b: L[a, Jn[a, b]] & L[b, Jn[a, b]], n))
    rep.add(sweep("join is least", 3,
                  lambda a, b, c: ~(L[a, c] & L[b, c]) | L[Jn[a, b], c], n))
    rep.add(sweep("meet associative", 3, lambda a, b, c: Mt[Mt[a, b], c] == Mt[a, Mt[b, c]], n))
    rep.add(sweep("join associative", 3, lambda a, b, c: Jn[Jn[a, b], c] == Jn[a, Jn[b, c]], n))
    rep.add(sweep("commutative", 2, lambda a, b: (Mt[a, b] == Mt[b, a]) & (Jn[a, b] == Jn[b, a]), n))
    rep.add(sweep("idempotent", 1, lambda a: (Mt[a, a] == a) & (Jn[a, a] == a), n))
    rep.add(sweep("absorption", 2,
                  lambda a, b: (Mt[a, Jn[a, b]] == a) & (Jn[a, Mt[a, b]] == a), n))
    return rep


def product_lattice(*lats):
    """Componentwise order; vertex ids are mixed radix, first factor least significant."""
    if not lats:
        raise MeadowError("product of no lattices")
    out = lats[0]
    for nxt in lats[1:]:
        out = _binary_product(out, nxt)
    return out


def _binary_product(l1, l2):
    n1, n2 = l1.size, l2.size
    idx = np.arange(n1 * n2)
    a, b = idx % n1, idx // n1
    leq = l1.leq[a[:, None], a[None, :]] & l2.leq[b[:, None], b[None, :]]
    meet = l1.meet[a[:, None], a[None, :]] + n1 * l2.meet[b[:, None], b[None, :]]
    join = l1.join[a[:, None], a[None, :]] + n1 * l2.join[b[:, None], b[None, :]]
    labels = [f"({l1.labels[i]}, {l2.labels[j]})" for i, j in zip(a, b)]
    return FiniteLattice(leq, meet, join, l1.top + n1 * l2.top,
                         l1.bottom + n1 * l2.bottom, labels)


def lattice_isomorphism(l1, l2, node_attrs1=None, node_attrs2=None):
    """An order isomorphism ``l1 -> l2`` as a list, or None.

    Optional per-vertex attributes must be matched as well.
    """
    return next(lattice_isomorphisms(l1, l2, node_attrs1, node_attrs2), None)


def lattice_isomorphisms(l1, l2, node_attrs1=None, node_attrs2=None):
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    if l1.size != l2.size or l1.signature() != l2.signature():
        return
    g1, g2 = nx.DiGraph(), nx.DiGraph()
    for g, lat, attrs in ((g1, l1, node_attrs1), (g2, l2, node_attrs2)):
        for v in range(lat.size):
            g.add_node(v, attr=None if attrs is None else attrs[v])
        g.add_edges_from(hasse_edges(lat))
    matcher = DiGraphMatcher(g1, g2, node_match=lambda x, y: x["attr"] == y["attr"])
    for m in matcher.isomorphisms_iter():
        yield [m[v] for v in range(l1.size)]


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(lat, labels=None, *, name="lattice", bottom_label=None):
    """DOT text: one node per vertex, one edge per cover, drawn top-down."""
    labels = list(labels if labels is not None else lat.labels)
    if bottom_label is not None:
        labels[lat.bottom] = bottom_label
    # rank by distance from the top so the drawing matches the usual figures
    depth = _depths(lat)
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
    for v in sorted(range(lat.size), key=lambda v: (depth[v], v)):
        lines.append(f"  v{v} [label={_quote(labels[v])}];")
    for lo, up in sorted(hasse_edges(lat), key=lambda e: (depth[e[1]], e[1], e[0])):
        lines.append(f"  v{up} -> v{lo};")
    for d in sorted(set(depth.values())):
        same = " ".join(f"v{v};" for v in range(lat.size) if depth[v] == d)
        lines.append(f"  {{ rank=same; {same} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _depths(lat):
    depth = {lat.top: 0}
    order = sorted(range(lat.size), key=lambda v: -int(lat.leq[:, v].sum()))
    for v in order:
        if v == lat.top:
            continue
        ups = [u for u in range(lat.size) if lat.covers[v, u]]
        depth[v] = 1 + max(depth[u] for u in ups)
    return depth
