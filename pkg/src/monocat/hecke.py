"""The hyperHecke algebra of a finite group with fixed central character.

Basis morphisms are triples [(K,psi), g, (H,phi)] with K <= g^-1 H g and
psi = (g)*(phi) on K, taken modulo the two scalar relations

    [(K,psi), g k, (H,phi)] = psi(k^-1) [(K,psi), g, (H,phi)]   (k in K)
    [(K,psi), h g, (H,phi)] = phi(h^-1) [(K,psi), g, (H,phi)]   (h in H),

so canonical representatives carry the minimal element index of the double
coset H g K.  Products compose only when the middle pairs are literally
equal and are zero otherwise.
"""

from __future__ import annotations

from typing import NamedTuple

from .characters import CharPair, pairs_poset
from .cyclo import CycloScalar, one, scalar_to_json
from .errors import InvalidTriple
from .group import FiniteGroup


class Triple(NamedTuple):
    source: CharPair
    g: int
    target: CharPair


class HHElement:
    """A finite scalar combination of canonical triples."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Triple, CycloScalar] = {}
        if terms:
            for t, c in (terms.items() if isinstance(terms, dict) else terms):
                self._add(t, c)

    def _add(self, t: Triple, c: CycloScalar):
        cur = self.terms.get(t)
        total = c if cur is None else cur + c
        if total.is_zero():
            self.terms.pop(t, None)
        else:
            self.terms[t] = total

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HHElement") -> "HHElement":
        out = HHElement(dict(self.terms))
        for t, c in other.terms.items():
            out._add(t, c)
        return out

    def __sub__(self, other: "HHElement") -> "HHElement":
        out = HHElement(dict(self.terms))
        for t, c in other.terms.items():
            out._add(t, -c)
        return out

    def scale(self, c) -> "HHElement":
        c = c if isinstance(c, CycloScalar) else CycloScalar.rational(c)
        if c.is_zero():
            return HHElement()
        return HHElement({t: v * c for t, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, HHElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "HHElement(0)"
        bits = [f"{c.render()}*{t}" for t, c in self.terms.items()]
        return "HHElement(" + " + ".join(bits) + ")"


class HyperHecke:
    """Computation context for H_cmc(G) at one central character."""

    def __init__(self, G: FiniteGroup, phibar):
        self.G = G
        self.phibar = phibar
        self.poset = pairs_poset(G, phibar)
        self.pair_index = {p: i for i, p in enumerate(self.poset)}
        self._valid_cache: dict[tuple, bool] = {}
        self._canon_cache: dict[Triple, tuple[CycloScalar, Triple]] = {}
        self._basis: list[Triple] | None = None

    # validity ---------------------------------------------------------

    def triple_valid(self, source: CharPair, g: int, target: CharPair) -> bool:
        """K <= g^-1 H g and psi(k) = phi(g k g^-1) on all of K."""
        key = (source, g, target)
        hit = self._valid_cache.get(key)
        if hit is not None:
            return hit
        G = self.G
        K, psi = source.subgroup, source.character
        H, phi = target.subgroup, target.character
        ok = True
        for k in K.elements:
            h = G.conj(g, k)
            if h not in H.set or psi(k) != phi(h):
                ok = False
                break
        self._valid_cache[key] = ok
        return ok

    def require_valid(self, t: Triple) -> None:
        if not self.triple_valid(t.source, t.g, t.target):
            raise InvalidTriple(f"invalid triple {t}")

    # canonical form -----------------------------------------------------

    def canonicalize(self, t: Triple) -> tuple[CycloScalar, Triple]:
        """(c, rep) with t = c * rep, rep carrying min(H g K)."""
        hit = self._canon_cache.get(t)
        if hit is not None:
            return hit
        self.require_valid(t)
        G = self.G
        K, psi = t.source.subgroup, t.source.character
        H, phi = t.target.subgroup, t.target.character
        g0 = min(G.mul(G.mul(h, t.g), k) for h in H.elements for k in K.elements)
        if g0 == t.g:
            out = (one(), t)
        else:
            scalar = None
            for h in H.elements:
                k = G.mul(G.mul(G.inv(g0), G.inv(h)), t.g)
                if k in K.set:
                    scalar = (phi(h) * psi(k)).inv()
                    break
            assert scalar is not None, "double-coset factorization must exist"
            out = (scalar, Triple(t.source, g0, t.target))
        self._canon_cache[t] = out
        return out

    def element(self, t: Triple, coeff=None) -> HHElement:
        c, rep = self.canonicalize(t)
        if coeff is not None:
            c = c * coeff
        return HHElement({rep: c})

    # product ------------------------------------------------------------

    def multiply(self, a: HHElement, b: HHElement) -> HHElement:
        """Bilinear product; middle pairs must match exactly, else zero."""
        G = self.G
        out = HHElement()
        if not a.terms or not b.terms:
            return out
        by_target: dict[CharPair, list[tuple[Triple, CycloScalar]]] = {}
        for t2, c2 in b.terms.items():
            by_target.setdefault(t2.target, []).append((t2, c2))
        for t1, c1 in a.terms.items():
            matches = by_target.get(t1.source)
            if not matches:
                continue
            for t2, c2 in matches:
                raw = Triple(t2.source, G.mul(t1.g, t2.g), t1.target)
                cc, rep = self.canonicalize(raw)
                out._add(rep, c1 * c2 * cc)
        return out

    def multiply_triples(self, t1: Triple, t2: Triple) -> HHElement:
        return self.multiply(self.element(t1), self.element(t2))

    # basis and idempotents ------------------------------------------------

    def basis(self) -> list[Triple]:
        """All canonical triples, ordered by (source, target, representative)."""
        if self._basis is not None:
            return self._basis
        from .group import double_cosets

        out = []
        for si, src in enumerate(self.poset):
            for ti, tgt in enumerate(self.poset):
                for rep, _ in double_cosets(self.G, tgt.subgroup, src.subgroup):
                    if self.triple_valid(src, rep, tgt):
                        out.append(Triple(src, rep, tgt))
        out.sort(key=lambda t: (self.pair_index[t.source],
                                self.pair_index[t.target], t.g))
        self._basis = out
        return out

    def identity_triple(self, p: CharPair) -> Triple:
        return Triple(p, 0, p)

    def e(self, p: CharPair) -> HHElement:
        return HHElement({self.identity_triple(p): one()})

    def idempotent_sum(self, pairs) -> HHElement:
        pairs = list(pairs)
        assert len(set(pairs)) == len(pairs), "pairs must be distinct"
        return HHElement({self.identity_triple(p): one() for p in pairs})

    def unit(self) -> HHElement:
        return self.idempotent_sum(self.poset)

    # reports ---------------------------------------------------------------

    def basis_json(self) -> list[dict]:
        from .characters import pair_to_json

        return [{"source": pair_to_json(t.source), "g": t.g,
                 "target": pair_to_json(t.target)} for t in self.basis()]

    def multiplication_table_json(self) -> list[list[list]]:
        basis = self.basis()
        idx = {t: i for i, t in enumerate(basis)}
        table = []
        for t1 in basis:
            row = []
            for t2 in basis:
                prod = self.multiply_triples(t1, t2)
                row.append(sorted([idx[t], scalar_to_json(c)]
                                  for t, c in prod.terms.items()))
            table.append(row)
        return table


def algebra(G: FiniteGroup, phibar) -> HyperHecke:
    """Cached algebra context for (G, phibar)."""
    key = ("hyperhecke", phibar.values)
    if key not in G._caches:
        G._caches[key] = HyperHecke(G, phibar)
    return G._caches[key]


# spec-level convenience wrappers


def triple_valid(G: FiniteGroup, phibar, source: CharPair, g: int,
                 target: CharPair) -> bool:
    return algebra(G, phibar).triple_valid(source, g, target)


def canonicalize(G: FiniteGroup, phibar, t: Triple):
    return algebra(G, phibar).canonicalize(t)


def multiply(G: FiniteGroup, phibar, a: HHElement, b: HHElement) -> HHElement:
    return algebra(G, phibar).multiply(a, b)


def basis(G: FiniteGroup, phibar) -> list[Triple]:
    return algebra(G, phibar).basis()


def idempotent_sum(G: FiniteGroup, phibar, pairs) -> HHElement:
    return algebra(G, phibar).idempotent_sum(pairs)
