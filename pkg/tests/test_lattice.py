import numpy as np
import pytest

from meadows.errors import MeadowError
from meadows.finite_ring import make_zn
from meadows.ideals import enumerate_ideals
from meadows.lattice import (FiniteLattice, atoms, hasse_edges, is_atomic,
                             lattice_from_ideals, lattice_isomorphism, product_lattice,
                             to_dot, validate_lattice)


def chain(n):
    leq = np.triu(np.ones((n, n), dtype=bool))
    return FiniteLattice.from_leq(leq)


def test_z6_ideal_lattice_is_diamond():
    lat = lattice_from_ideals(enumerate_ideals(make_zn(6)))
    assert lat.top == 0 and lat.bottom == 3
    assert atoms(lat) == [1, 2]
    assert hasse_edges(lat) == [(1, 0), (2, 0), (3, 1), (3, 2)]
    assert validate_lattice(lat).ok


def test_chain_basics():
    c = chain(3)
    assert c.bottom == 0 and c.top == 2
    assert atoms(c) == [1]
    assert is_atomic(c)
    assert c.down_set(1) == [0, 1]


def test_product_of_chains_is_diamond():
    sq = product_lattice(chain(2), chain(2))
    assert sq.size == 4
    assert validate_lattice(sq).ok
    diamond = lattice_from_ideals(enumerate_ideals(make_zn(6)))
    assert lattice_isomorphism(sq, diamond) is not None


def test_product_atoms():
    l1, l2 = chain(3), product_lattice(chain(2), chain(2))
    prod = product_lattice(l1, l2)
    got = set(atoms(prod))
    want = {a + l1.size * l2.bottom for a in atoms(l1)} | {l1.bottom + l1.size * b for b in atoms(l2)}
    assert got == want
    assert validate_lattice(prod).ok


def test_from_leq_rejects_non_lattice():
    # two incomparable maximal elements: no top
    leq = np.array([[1, 1, 1], [0, 1, 0], [0, 0, 1]], dtype=bool)
    with pytest.raises(MeadowError):
        FiniteLattice.from_leq(leq)


def test_isomorphism_distinguishes_shapes():
    assert lattice_isomorphism(chain(4), product_lattice(chain(2), chain(2))) is None


def test_dot_is_top_down_with_bottom_label():
    lat = lattice_from_ideals(enumerate_ideals(make_zn(6)))
    text = to_dot(lat, bottom_label="{a}")
    assert text.startswith("digraph lattice {")
    assert 'v3 [label="{a}"];' in text
    assert "v0 -> v1;" in text and "v2 -> v3;" in text
    assert "{ rank=same; v1; v2; }" in text


def test_z12_lattice_validates():
    lat = lattice_from_ideals(enumerate_ideals(make_zn(12)))
    assert validate_lattice(lat).ok
    assert len(hasse_edges(lat)) == 7
