"""Ideals of finite rings, stored extensionally, and their full enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import MeadowError, NotAnIdealError
from .finite_ring import DEFAULT_CAP, _check_cap, ideal_violation


@dataclass(frozen=True, eq=False)
class Ideal:
    """An ideal of ``ring``; ``members`` is sorted, ``generators`` is for display."""

    ring: object
    members: tuple
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(x) for x in self.members))))
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))

    def __eq__(self, other):
        return (isinstance(other, Ideal) and other.ring is self.ring
                and other.members == self.members)

    def __hash__(self):
        return hash((id(self.ring), self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return int(x) in self._set

    @cached_property
    def _set(self):
        return frozenset(self.members)

    @property
    def is_zero(self):
        return self.members == (self.ring.zero,)

    @property
    def is_unit_ideal(self):
        return len(self.members) == self.ring.order

    def issubset(self, other):
        return self._set <= other._set

    def label(self):
        return "(" + ",".join(self.ring.label(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self.label()} of {self.ring.name}, {len(self.members)} elements"

    def to_dict(self):
        return {"ring": self.ring.descriptor, "members": list(self.members),
                "generators": list(self.generators)}

    @classmethod
    def from_dict(cls, data, ring):
        if data.get("ring") not in (None, ring.descriptor):
            raise MeadowError(f"ideal was recorded for ring {data['ring']}, not {ring.descriptor}")
        return make_ideal(ring, data["members"], data.get("generators"))


def make_ideal(ring, members, generators=None):
    """Validate ``members`` as an ideal of ``ring``."""
    why = ideal_violation(ring, members)
    if why:
        raise NotAnIdealError(f"{sorted(set(members))} is not an ideal of {ring.name}: {why}")
    if generators is None:
        generators = _greedy_generators(ring, members)
    return Ideal(ring, tuple(members), tuple(generators))


def _additive_closure(r, seed):
    inside = np.zeros(r.order, dtype=bool)
    inside[r.zero] = True
    inside[np.asarray(list(seed), dtype=np.int64)] = True
    while True:
        m = np.flatnonzero(inside)
        nxt = inside.copy()
        nxt[r.add[np.ix_(m, m)].ravel()] = True
        if nxt.sum() == inside.sum():
            return m
        inside = nxt


def _principal_members(r, x):
    return _additive_closure(r, r.mul[x])


def _greedy_generators(r, members):
    members = sorted(set(int(x) for x in members))
    target = set(members)
    if target == {r.zero}:
        return (r.zero,)
    gens = []
    have = {r.zero}
    for x in members:
        if x in have:
            continue
        gens.append(x)
        seed = set(have) | set(_principal_members(r, x).tolist())
        have = set(_additive_closure(r, seed).tolist())
        if have == target:
            break
    return tuple(gens)


def principal_ideal(r, x):
    """The ideal generated by ``x``: additive closure of ``x*R``."""
    if not 0 <= int(x) < r.order:
        raise MeadowError(f"index {x} outside {r.name}")
    return Ideal(r, tuple(_principal_members(r, int(x)).tolist()), (int(x),))


def generated_ideal(r, gens):
    gens = [int(g) for g in gens] or [r.zero]
    seed = set()
    for g in gens:
        seed |= set(_principal_members(r, g).tolist())
    return Ideal(r, tuple(_additive_closure(r, seed).tolist()), tuple(gens))


def _same_ring(i, j):
    if i.ring is not j.ring:
        raise MeadowError("ideals belong to different rings")


def _merge_generators(a, b):
    out = [g for g in a]
    out += [g for g in b if g not in out]
    return tuple(out)


def ideal_sum(i, j):
    _same_ring(i, j)
    r = i.ring
    a = np.asarray(i.members)
    b = np.asarray(j.members)
    members = np.unique(r.add[np.ix_(a, b)])
    gens = _merge_generators(i.generators, j.generators)
    if len(gens) > 1:
        gens = tuple(g for g in gens if g != r.zero) or (r.zero,)
    return Ideal(r, tuple(members.tolist()), gens)


def ideal_intersection(i, j):
    _same_ring(i, j)
    members = sorted(i._set & j._set)
    return Ideal(i.ring, tuple(members), _greedy_generators(i.ring, members))


def _canonical_key(ideal):
    return (len(ideal.members), ideal.members)


def enumerate_ideals(r, *, cap=DEFAULT_CAP):
    """All ideals of ``r``, sorted by ``(cardinality, members)``.

    Every ideal of a finite ring is a finite sum of principal ideals, so the
    closure of the principal ideals under pairwise sums is complete.
    """
    _check_cap(r.order, cap, f"ideal enumeration of {r.name}")
    found = {}
    for x in range(r.order):
        p = principal_ideal(r, x)
        found.setdefault(p.members, p)
    work = list(found.values())
    while work:
        new = []
        current = list(found.values())
        for i in work:
            for j in current:
                s = ideal_sum(i, j)
                if s.members not in found:
                    found[s.members] = s
                    new.append(s)
        work = new
    out = []
    for members, ideal in found.items():
        # re-derive generators so the label is canonical, not discovery-order
        out.append(Ideal(r, members, _greedy_generators(r, members)))
    out.sort(key=_canonical_key)
    return out


def maximal_ideals(r, ideals=None):
    """Proper ideals maximal under inclusion; empty for the zero ring."""
    if ideals is None:
        ideals = enumerate_ideals(r)
    proper = [i for i in ideals if not i.is_unit_ideal]
    return [i for i in proper
            if not any(j is not i and i.issubset(j) and len(j) > len(i) for j in proper)]


def is_local_ring(r):
    return len(maximal_ideals(r)) == 1
