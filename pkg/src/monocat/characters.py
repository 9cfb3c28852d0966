"""One-dimensional characters of subgroups and the poset of pairs (H, phi).

A pair couples a subgroup H containing the centre with a character phi
extending a fixed central character; pairs carry a conjugation action and
stabilizers.  Orderings are deterministic everywhere: subgroups by
(order, element tuple), characters lexicographically by value vectors
lifted to the conductor exponent(G).
"""

from __future__ import annotations

from .cyclo import CycloScalar, one, root_of_unity, scalar_to_json
from .errors import NotASubgroup
from .group import (
    FiniteGroup,
    Subgroup,
    center,
    commutator_subgroup,
    conjugate_subgroup,
    quotient_group,
    subgroups_containing,
)


class Character:
    """A one-dimensional character of a subgroup, values indexed like its elements."""

    __slots__ = ("subgroup", "values", "_hash")

    def __init__(self, subgroup: Subgroup, values, _validated: bool = False):
        self.subgroup = subgroup
        self.values = tuple(values)
        self._hash = None
        assert len(self.values) == subgroup.order
        if not _validated:
            self._validate()

    def _validate(self):
        G = self.subgroup.parent
        if not self.values[0].is_one():
            raise ValueError("character must send the identity to 1")
        for a in self.subgroup.elements:
            for b in self.subgroup.elements:
                if self(G.mul(a, b)) != self(a) * self(b):
                    raise ValueError(f"not multiplicative at ({a},{b})")

    def __call__(self, e: int) -> CycloScalar:
        return self.values[self.subgroup.position(e)]

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)

    def value_key(self):
        m = self.subgroup.parent.exponent()
        return tuple(v.sort_key(m) for v in self.values)

    def __eq__(self, other):
        return (isinstance(other, Character)
                and self.subgroup == other.subgroup
                and self.values == other.values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.subgroup, self.values))
        return self._hash

    def __repr__(self):
        vals = ",".join(v.render() for v in self.values)
        return f"Character({list(self.subgroup.elements)} -> [{vals}])"


class CharPair:
    """A pair (H, phi): subgroup plus one-dimensional character on it."""

    __slots__ = ("subgroup", "character", "_hash")

    def __init__(self, subgroup: Subgroup, character: Character):
        assert character.subgroup == subgroup
        self.subgroup = subgroup
        self.character = character
        self._hash = None

    @property
    def group(self) -> FiniteGroup:
        return self.subgroup.parent

    def sort_key(self):
        return (self.subgroup.order, self.subgroup.elements,
                self.character.value_key())

    def __eq__(self, other):
        return (isinstance(other, CharPair)
                and self.subgroup == other.subgroup
                and self.character == other.character)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.subgroup, self.character.values))
        return self._hash

    def __repr__(self):
        return f"CharPair({list(self.subgroup.elements)}, {self.character!r})"


def trivial_character(H: Subgroup) -> Character:
    return Character(H, (one(),) * H.order, _validated=True)


def characters(H: Subgroup) -> list[Character]:
    """All |H/[H,H]| one-dimensional characters of H, in deterministic order."""
    G = H.parent
    key = ("characters", H.elements)
    if key in G._caches:
        return G._caches[key]
    comm = commutator_subgroup(G, H)
    Q, proj, _ = quotient_group(G, H, comm)
    qchars = _abelian_characters(Q)
    out = []
    for qc in qchars:
        vals = tuple(qc[proj[h]] for h in H.elements)
        out.append(Character(H, vals, _validated=True))
    out.sort(key=lambda c: c.value_key())
    assert len(out) == Q.order
    G._caches[key] = out
    return out


def _abelian_characters(Q: FiniteGroup) -> list[list[CycloScalar]]:
    """Characters of an abelian group as value lists, by stepwise extension."""
    assert Q.is_abelian()
    span = {0}
    chars: list[dict[int, CycloScalar]] = [{0: one()}]
    for q in range(1, Q.order):
        if q in span:
            continue
        # r = least positive power landing inside the current span
        r, x = 1, q
        while x not in span:
            x = Q.mul(x, q)
            r += 1
        new_chars = []
        for chi in chars:
            target = chi[x]  # chi(q^r), a root of unity
            m, a = target.as_root_of_unity()
            for j in range(r):
                z = root_of_unity(r * m, a + m * j)
                ext = {}
                power = 0
                zpow = one()
                for _ in range(r):
                    for e, v in chi.items():
                        ext[Q.mul(e, power)] = v * zpow
                    power = Q.mul(power, q)
                    zpow = zpow * z
                new_chars.append(ext)
        chars = new_chars
        span = set(chars[0].keys())
    assert len(chars) == Q.order
    return chars


def restrict(phi: Character, K: Subgroup) -> Character:
    if not phi.subgroup.contains(K):
        raise NotASubgroup("restriction target is not contained in the domain")
    return Character(K, tuple(phi(k) for k in K.elements), _validated=True)


def conj_character(G: FiniteGroup, g: int, phi: Character) -> Character:
    """(g)*(phi): domain g^-1 H g, value at k is phi(g k g^-1)."""
    dom = conjugate_subgroup(G, G.inv(g), phi.subgroup)
    vals = tuple(phi(G.conj(g, k)) for k in dom.elements)
    return Character(dom, vals, _validated=True)


def conj_pair(G: FiniteGroup, g: int, p: CharPair) -> CharPair:
    """The left action g.(H, phi) = (gHg^-1, (g^-1)*(phi))."""
    chi = conj_character(G, G.inv(g), p.character)
    return CharPair(chi.subgroup, chi)


def kernel(phi: Character) -> Subgroup:
    elems = [h for h in phi.subgroup.elements if phi(h).is_one()]
    return Subgroup(phi.subgroup.parent, elems, _validated=True)


def central_characters(G: FiniteGroup) -> list[Character]:
    return characters(center(G))


def pairs_poset(G: FiniteGroup, phibar: Character) -> list[CharPair]:
    """All pairs (H, phi) with Z(G) <= H and phi restricting to phibar."""
    Z = center(G)
    if phibar.subgroup != Z:
        raise NotASubgroup("central character must live exactly on Z(G)")
    key = ("pairs_poset", phibar.values)
    if key in G._caches:
        return G._caches[key]
    out = []
    for H in subgroups_containing(G, Z):
        for phi in characters(H):
            if restrict(phi, Z) == phibar:
                out.append(CharPair(H, phi))
    out.sort(key=lambda p: p.sort_key())
    G._caches[key] = out
    return out


def pair_leq(a: CharPair, b: CharPair) -> bool:
    """(K,psi) <= (H,phi): containment plus character compatibility."""
    if not b.subgroup.contains(a.subgroup):
        return False
    return restrict(b.character, a.subgroup) == a.character


def stabilizer(G: FiniteGroup, p: CharPair) -> Subgroup:
    """stab_G(K,psi) = {z : zKz^-1 = K and psi(zkz^-1) = psi(k) for all k}."""
    key = ("stabilizer", p.subgroup.elements, p.character.values)
    if key in G._caches:
        return G._caches[key]
    K, psi = p.subgroup, p.character
    elems = []
    for z in range(G.order):
        if conjugate_subgroup(G, z, K) != K:
            continue
        if all(psi(G.conj(z, k)) == psi(k) for k in K.elements):
            elems.append(z)
    S = Subgroup(G, elems)  # validated: stabilizers must close
    assert S.contains(K), "stabilizer always contains the subgroup itself"
    G._caches[key] = S
    return S


def pair_orbit(G: FiniteGroup, p: CharPair) -> list[CharPair]:
    """The G-orbit of p under conjugation, sorted deterministically."""
    orbit = {p}
    for g in range(G.order):
        orbit.add(conj_pair(G, g, p))
    return sorted(orbit, key=lambda q: q.sort_key())


def pair_orbits(G: FiniteGroup, poset: list[CharPair]) -> list[list[CharPair]]:
    seen = set()
    orbits = []
    for p in poset:
        if p in seen:
            continue
        orb = pair_orbit(G, p)
        seen.update(orb)
        orbits.append(orb)
    return orbits


def pair_to_json(p: CharPair) -> dict:
    return {
        "subgroup": list(p.subgroup.elements),
        "character": {str(e): scalar_to_json(p.character(e))
                      for e in p.subgroup.elements},
    }
