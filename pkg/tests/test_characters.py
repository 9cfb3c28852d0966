import pytest

from monocat.characters import (
    CharPair,
    central_characters,
    characters,
    conj_character,
    conj_pair,
    kernel,
    pair_leq,
    pair_orbits,
    pairs_poset,
    restrict,
    stabilizer,
    trivial_character,
)
from monocat.cyclo import CycloScalar, one, root_of_unity
from monocat.errors import NotASubgroup
from monocat.group import Subgroup, builtin, center, subgroups, subgroups_containing

X, X2, X3, Y, XY, X2Y, X3Y = 1, 2, 3, 4, 5, 6, 7

MINUS_ONE = CycloScalar.rational(-1)
I = root_of_unity(4, 1)


def d8():
    return builtin("d8")


def find_char(chars, spec):
    """The unique character matching {element: value}."""
    hits = [c for c in chars if all(c(e) == v for e, v in spec.items())]
    assert len(hits) == 1, f"expected unique character for {spec}"
    return hits[0]


def test_characters_of_d8():
    G = d8()
    full = Subgroup(G, range(8))
    chars = characters(full)
    assert len(chars) == 4
    chi1 = find_char(chars, {X: MINUS_ONE, Y: one()})
    chi2 = find_char(chars, {X: one(), Y: MINUS_ONE})
    chi12 = find_char(chars, {X: MINUS_ONE, Y: MINUS_ONE})
    assert chi1(X2) == one() and chi2(X2) == one() and chi12(X2) == one()


def test_characters_of_cyclic_x_in_d8():
    G = d8()
    H = Subgroup(G, (0, X, X2, X3))
    chars = characters(H)
    assert len(chars) == 4
    phi = find_char(chars, {X: I})
    assert phi(X2) == MINUS_ONE
    assert phi(X3) == I.inv()
    # the four characters are 1, phi, phi^2, phi^3
    vals = sorted(tuple(c(X).sort_key(4)) for c in chars)
    expected = sorted(tuple((I ** k).sort_key(4)) for k in range(4))
    assert vals == expected


def test_characters_of_trivial_subgroup():
    G = builtin("s3")
    triv = Subgroup(G, (0,))
    chars = characters(triv)
    assert len(chars) == 1
    assert chars[0].is_trivial()


def test_character_counts_match_abelianization():
    for name in ("s3", "d8", "q8", "a4", "c6", "s4"):
        G = builtin(name)
        for H in subgroups(G):
            from monocat.group import commutator_subgroup, quotient_group
            comm = commutator_subgroup(G, H)
            assert len(characters(H)) == H.order // comm.order


def test_restrict_examples():
    G = d8()
    full = Subgroup(G, range(8))
    Hx = Subgroup(G, (0, X, X2, X3))
    Z = Subgroup(G, (0, X2))
    chi1 = find_char(characters(full), {X: MINUS_ONE, Y: one()})
    assert restrict(chi1, Z).is_trivial()  # chi1(x^2) = chi1(x)^2 = 1
    phi = find_char(characters(Hx), {X: I})
    chi = restrict(phi, Z)
    assert chi(X2) == MINUS_ONE  # Example 3.4: chi on <x^2>
    # restriction of a trivial character is trivial
    assert restrict(trivial_character(full), Z).is_trivial()
    with pytest.raises(NotASubgroup):
        restrict(chi, Hx)


def test_conj_character():
    G = d8()
    Hx = Subgroup(G, (0, X, X2, X3))
    phi2 = find_char(characters(Hx), {X: MINUS_ONE})
    moved = conj_character(G, Y, phi2)
    assert moved == phi2  # phi^2(yxy) = phi^2(x^3) = -1 = phi^2(x)
    Hy = Subgroup(G, (0, X2, Y, X2Y))
    tchi2 = find_char(characters(Hy), {X2: one(), Y: MINUS_ONE})
    moved = conj_character(G, X, tchi2)
    assert moved.subgroup == Hy
    assert moved(X2) == one()
    assert moved(X2Y) == MINUS_ONE
    # abelian domain, conjugator inside: character unchanged
    assert conj_character(G, X2, phi2) == phi2


def test_pairs_poset_d8_trivial():
    G = d8()
    phibar = trivial_character(center(G))
    poset = pairs_poset(G, phibar)
    assert len(poset) == 11
    by_sub = {}
    for p in poset:
        by_sub.setdefault(p.subgroup.elements, []).append(p)
    assert len(by_sub[tuple(range(8))]) == 4
    assert len(by_sub[(0, X, X2, X3)]) == 2
    assert len(by_sub[(0, X2, Y, X2Y)]) == 2
    assert len(by_sub[(0, X2, XY, X3Y)]) == 2
    assert len(by_sub[(0, X2)]) == 1


def test_pairs_poset_d8_chi():
    G = d8()
    Z = center(G)
    chi = find_char(characters(Z), {X2: MINUS_ONE})
    poset = pairs_poset(G, chi)
    assert len(poset) == 7
    by_sub = {}
    for p in poset:
        by_sub.setdefault(p.subgroup.elements, []).append(p)
    assert len(by_sub[(0, X, X2, X3)]) == 2        # phi, phi^3
    assert len(by_sub[(0, X2, Y, X2Y)]) == 2       # tilde-chi1, tilde-chi1*chi2
    assert len(by_sub[(0, X2, XY, X3Y)]) == 2      # hat-chi1, hat-chi1*chi2
    assert len(by_sub[(0, X2)]) == 1               # chi itself
    assert tuple(range(8)) not in by_sub
    # the phi-values on <x> are i and -i
    phis = by_sub[(0, X, X2, X3)]
    assert {p.character(X) for p in phis} == {I, I.inv()}


def test_pairs_poset_c2():
    G = builtin("c2")
    for phibar in central_characters(G):
        assert len(pairs_poset(G, phibar)) == 1


def test_pair_count_double_counting():
    # sum over central characters of |poset| = sum over H >= Z of |H^ab|
    for name in ("d8", "q8", "s3", "c6"):
        G = builtin(name)
        Z = center(G)
        total = sum(len(pairs_poset(G, phibar))
                    for phibar in central_characters(G))
        from monocat.group import commutator_subgroup
        expected = sum(H.order // commutator_subgroup(G, H).order
                       for H in subgroups_containing(G, Z))
        assert total == expected


def test_pair_leq_examples_and_partial_order():
    G = d8()
    Z = center(G)
    phibar = trivial_character(Z)
    poset = pairs_poset(G, phibar)
    z_triv = next(p for p in poset if p.subgroup.elements == (0, X2))
    full_pairs = [p for p in poset if p.subgroup.order == 8]
    assert all(pair_leq(z_triv, p) for p in full_pairs)
    # Example 3.4: (<x^2>, chi) <= (<x>, phi)
    chi = find_char(characters(Z), {X2: MINUS_ONE})
    cposet = pairs_poset(G, chi)
    z_chi = next(p for p in cposet if p.subgroup.elements == (0, X2))
    phi_pair = next(p for p in cposet
                    if p.subgroup.elements == (0, X, X2, X3)
                    and p.character(X) == I)
    assert pair_leq(z_chi, phi_pair)
    # reflexive, antisymmetric, transitive on the whole poset
    for a in poset:
        assert pair_leq(a, a)
    for a in poset:
        for b in poset:
            if pair_leq(a, b) and pair_leq(b, a):
                assert a == b
            for c in poset:
                if pair_leq(a, b) and pair_leq(b, c):
                    assert pair_leq(a, c)


def test_stabilizers_d8():
    G = d8()
    Z = center(G)
    z_triv = CharPair(Z, trivial_character(Z))
    assert stabilizer(G, z_triv).order == 8
    chi = find_char(characters(Z), {X2: MINUS_ONE})
    assert stabilizer(G, CharPair(Z, chi)).order == 8
    # stab(<x^2,y>, tilde-chi1) = <x^2,y> (Example 3.4 depiction)
    Hy = Subgroup(G, (0, X2, Y, X2Y))
    tchi1 = find_char(characters(Hy), {X2: MINUS_ONE, Y: one()})
    st = stabilizer(G, CharPair(Hy, tchi1))
    assert st.elements == (0, X2, Y, X2Y)
    assert kernel(tchi1).elements == (0, Y)


def test_stabilizer_of_central_pair_is_whole_group():
    for name in ("s3", "q8", "c6"):
        G = builtin(name)
        Z = center(G)
        for phibar in central_characters(G):
            assert stabilizer(G, CharPair(Z, phibar)).order == G.order


def test_kernel_normal_in_stabilizer():
    G = d8()
    Z = center(G)
    for phibar in central_characters(Z.parent):
        for p in pairs_poset(G, phibar):
            st = stabilizer(G, p)
            ker = kernel(p.character)
            for z in st.elements:
                for k in ker.elements:
                    assert G.conj(z, k) in ker.set


def test_conjugation_action_is_an_action():
    G = builtin("s3")
    Z = center(G)
    phibar = trivial_character(Z)
    poset = pairs_poset(G, phibar)
    for p in poset:
        for g in range(G.order):
            for h in range(G.order):
                assert conj_pair(G, g, conj_pair(G, h, p)) == \
                    conj_pair(G, G.mul(g, h), p)


def test_pair_orbits_s3():
    G = builtin("s3")
    poset = pairs_poset(G, trivial_character(center(G)))
    assert len(poset) == 12
    orbits = pair_orbits(G, poset)
    sizes = sorted(len(o) for o in orbits)
    assert sizes == [1, 1, 1, 1, 2, 3, 3]
