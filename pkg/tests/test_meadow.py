import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import CORPUS, load_lattice_meadow
from meadows import build_M
from meadows.errors import InternalConsistencyError, MeadowError, NotCommonError
from meadows.finite_ring import make_poly_quotient, make_zn
from meadows.meadow import (EXHAUSTIVE_LIMIT, Meadow, check_common, check_pre_meadow,
                            check_transition_maps, invertibility_set, is_common, is_local,
                            is_local_by_definition, madd, meadow_atoms, minv, mmul, mneg,
                            order_leq, to_dot, to_json, verify_homomorphism, zero_lattice,
                            zero_of)


def test_z6_carrier_layout(meadow_of):
    m = meadow_of("zn:6")
    assert m.size == 12
    assert [r.order for r in m.rings] == [6, 3, 2, 1]
    assert m.lattice.labels == ("Z6/(0)", "Z6/(3)", "Z6/(2)", "Z6/(1)")
    assert m.a.astuple() == (3, 0)
    assert str(m.a) == "a"


def test_operations_meet_at_lower_vertex(meadow_of):
    m = meadow_of("zn:6")
    x = m.element(1, 1)        # 1 + (3)
    y = m.element(2, 1)        # 1 + (2)
    assert (x + y).is_a        # (3) + (2) = (1)
    five = m.element(0, 5)
    assert (five + x).astuple() == (1, 0)
    assert (five * x).astuple() == (1, 2)
    assert (-five).astuple() == (0, 1)
    assert zero_of(five) == m.zero
    assert zero_of(x) == m.vertex_zero(1)


def test_inverse_in_z6(meadow_of):
    m = meadow_of("zn:6")
    two = m.element(0, 2)
    assert invertibility_set(two) == [1, 3]
    assert minv(two).astuple() == (1, 2)     # 2 * 2 = 1 mod 3
    five = m.element(0, 5)
    assert minv(five) == five
    assert minv(m.zero).is_a
    assert minv(m.a).is_a


def test_elements_of_different_meadows_do_not_mix(meadow_of):
    m = meadow_of("zn:6")
    other = build_M(make_zn(6))
    with pytest.raises(MeadowError):
        madd(m.one, other.one)
    with pytest.raises(TypeError):
        mmul(m.one, 3)
    assert m.one != other.one


def test_order_on_fiber_zeros(meadow_of):
    m = meadow_of("zn:6")
    assert order_leq(m.vertex_zero(1), m.zero)
    assert not order_leq(m.zero, m.vertex_zero(1))
    assert order_leq(m.a, m.vertex_zero(2))
    with pytest.raises(MeadowError):
        order_leq(m.one, m.zero)


def test_element_bounds(meadow_of):
    m = meadow_of("zn:6")
    with pytest.raises(MeadowError):
        m.element(9, 0)
    with pytest.raises(MeadowError):
        m.element(2, 2)


@pytest.mark.parametrize("spec", sorted(CORPUS))
def test_corpus_meadows_are_common(meadow_of, spec):
    m = meadow_of(spec)
    assert m.size == CORPUS[spec]["size"]
    assert check_pre_meadow(m).ok
    assert check_common(m).ok
    assert check_transition_maps(m).ok
    assert is_local(m) == (CORPUS[spec]["maximal"] == 1)
    assert len(meadow_atoms(m)) == CORPUS[spec]["maximal"]


def _to_model(m, r_oracle, convert):
    """Map each flat element of ``M(R)`` to the oracle's (ideal, coset) pair."""
    out = []
    for f in range(m.size):
        v = int(m.vertex_of[f])
        ideal = frozenset(convert(x) for x in m.ideals[v].members)
        rep = convert(int(m.rings[v].representatives[m.local_of[f]]))
        out.append((ideal, oracle.coset(r_oracle, rep, ideal)))
    return out


@pytest.mark.parametrize("spec,model,convert", [
    ("zn:6", lambda: oracle.zn(6), lambda i: i),
    ("zn:12", lambda: oracle.zn(12), lambda i: i),
    ("prod:(zn:2,zn:4)", lambda: oracle.direct_product(oracle.zn(2), oracle.zn(4)),
     lambda i: (i % 2, i // 2)),
])
def test_operations_match_pair_model(meadow_of, spec, model, convert):
    m = meadow_of(spec)
    r = model()
    mod = oracle.MeadowModel(r)
    pairs = _to_model(m, r, convert)
    assert len(set(pairs)) == m.size
    assert set(pairs) == set(mod.elements)
    for f in range(m.size):
        assert pairs[m.inverse_flat[f]] == mod.inverse(pairs[f])
        for g in range(m.size):
            assert pairs[m.add_flat(f, g)] == mod.add(pairs[f], pairs[g])
            assert pairs[m.mul_flat(f, g)] == mod.mul(pairs[f], pairs[g])


def test_diamond_is_pre_meadow_but_not_common(diamond):
    assert check_pre_meadow(diamond).ok
    res = is_common(diamond)
    assert not res
    assert str(res.witness) == "(1,0)@top"
    assert [diamond.vertex_label(v) for v in res.maximal] == ["left", "right"]
    assert is_local(diamond)
    with pytest.raises(NotCommonError) as info:
        minv(res.witness)
    assert info.value.maximal == (1, 2)
    assert not check_common(diamond).ok


def test_transition_report_on_diamond(diamond):
    rep = check_transition_maps(diamond)
    assert rep.ok
    assert rep["coherence f(z,z') o f(z',z'') = f(z,z'')"].checked == 30


def test_zero_ring_only_meadow_rejected():
    from meadows.directed_lattice import build_directed_lattice
    from meadows.lattice import FiniteLattice
    lat = FiniteLattice.from_leq(np.ones((1, 1), dtype=bool))
    dl = build_directed_lattice(lat, [make_zn(1)], {})
    with pytest.raises(MeadowError):
        Meadow(dl)


def test_field_gives_two_chain():
    m = build_M(make_poly_quotient(2, [1, 1, 1]))
    assert m.dl.size == 2
    assert all(minv(m.element(0, k)).vertex == 0 for k in range(1, 4))
    assert is_local(m)


def test_dual_numbers_three_chain(meadow_of):
    m = meadow_of("poly:p=2,mod=[0,0,1]")
    assert [r.order for r in m.rings] == [4, 2, 1]
    assert is_local(m)


def test_locality_cross_check_guards_disagreement(monkeypatch, meadow_of):
    import meadows.meadow as mm
    m = meadow_of("zn:4")
    monkeypatch.setattr(mm, "meadow_atoms", lambda _m: [1, 2])
    with pytest.raises(InternalConsistencyError):
        mm.is_local(m)


def test_zero_lattice_matches_directed_lattice(meadow_of):
    m = meadow_of("zn:12")
    assert np.array_equal(zero_lattice(m).leq, m.lattice.leq)


def test_identity_is_homomorphism(meadow_of):
    m = meadow_of("zn:6")
    assert verify_homomorphism(m, m, np.arange(m.size)).ok
    assert not verify_homomorphism(m, m, np.zeros(m.size, dtype=int)).ok


def test_sampled_mode_is_seeded(meadow_of):
    m = meadow_of("zn:12")
    a = check_pre_meadow(m, sampled=True, samples=500, seed=3)
    b = check_pre_meadow(m, sampled=True, samples=500, seed=3)
    assert a.ok and a.sampled
    assert a.lines() == b.lines()


def test_large_meadow_falls_back_to_sampling():
    m = build_M(make_zn(2 * 3 * 5 * 7))
    assert m.size > EXHAUSTIVE_LIMIT
    rep = check_pre_meadow(m, samples=2000)
    assert rep.ok
    assert rep["P1"].sampled and not rep["P3"].sampled
    assert check_common(m, samples=2000).ok


def test_dot_and_json(meadow_of):
    m = meadow_of("zn:6")
    dot = to_dot(m)
    assert dot.count("->") == 4 and '"{a}"' in dot
    data = to_json(m)
    assert data["schema"] == 1 and data["common"] and data["size"] == 12


def test_invertibility_sets_in_diamond(diamond):
    one = diamond.one
    assert invertibility_set(one) == list(range(5))
    x = diamond.element(0, 1)
    assert invertibility_set(x) == [1, 2, 3, 4]


def test_z4_two_children_is_common():
    m = load_lattice_meadow("z4_two_children")
    assert check_pre_meadow(m).ok and check_common(m).ok
    assert not is_local(m)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 48))
def test_zn_meadows_are_common(n):
    m = build_M(make_zn(n))
    assert bool(is_common(m))
    assert check_common(m).ok
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    assert is_local_by_definition(m) == (len(primes) == 1)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_element_laws_on_random_triples(data):
    m = build_M(make_zn(data.draw(st.sampled_from([6, 12, 18]))))
    pick = st.integers(0, m.size - 1).map(m.from_flat)
    x, y, z = data.draw(pick), data.draw(pick), data.draw(pick)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + mneg(x) == zero_of(x)
    assert minv(x * y) == minv(x) * minv(y)
    assert x * minv(x) == m.one + zero_of(minv(x))
