"""Finite Hecke algebra with counting-measure convolution.

Haar measure is counting measure: vol(S) = |S| and integrals are sums, so
(f1 * f2)(g) = sum_h f1(gh) f2(h^-1).  Monomial morphisms are realized as
convolution products through the involution T and the element Phi attached
to a triple; the representation side supplies pi(f) = sum f(g) rho(g) and
the trace distribution.
"""

from __future__ import annotations

from fractions import Fraction

from .characters import CharPair, kernel
from .cyclo import CycloScalar, one
from .errors import InvalidTriple
from .group import FiniteGroup, Subgroup
from .hecke import HyperHecke, Triple
from .linalg import MatrixRep, mat_mul, zeros_matrix

ZERO = CycloScalar.rational(0)


class GroupFunction:
    """A k-valued function on G (finite case: every function qualifies)."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        self.values = tuple(values)
        assert len(self.values) == group.order

    @staticmethod
    def delta(G: FiniteGroup, g: int) -> "GroupFunction":
        return GroupFunction(G, [one() if x == g else ZERO
                                 for x in range(G.order)])

    @staticmethod
    def characteristic(G: FiniteGroup, subset) -> "GroupFunction":
        s = set(subset)
        return GroupFunction(G, [one() if x in s else ZERO
                                 for x in range(G.order)])

    @staticmethod
    def zero(G: FiniteGroup) -> "GroupFunction":
        return GroupFunction(G, [ZERO] * G.order)

    def support(self) -> frozenset:
        return frozenset(x for x, v in enumerate(self.values)
                         if not v.is_zero())

    def scale(self, c) -> "GroupFunction":
        c = c if isinstance(c, CycloScalar) else CycloScalar.rational(c)
        return GroupFunction(self.group, [c * v for v in self.values])

    def __add__(self, other):
        assert self.group is other.group
        return GroupFunction(self.group,
                             [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        assert self.group is other.group
        return GroupFunction(self.group,
                             [a - b for a, b in zip(self.values, other.values)])

    def __eq__(self, other):
        return (isinstance(other, GroupFunction) and self.group is other.group
                and self.values == other.values)

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        body = {x: v.render() for x, v in enumerate(self.values)
                if not v.is_zero()}
        return f"GroupFunction({body})"


def convolve(f1: GroupFunction, f2: GroupFunction) -> GroupFunction:
    """(f1 * f2)(g) = sum_h f1(gh) f2(h^-1), counting measure."""
    G = f1.group
    assert G is f2.group
    out = []
    for g in range(G.order):
        total = ZERO
        for h in range(G.order):
            a = f1.values[G.mul(g, h)]
            if a.is_zero():
                continue
            b = f2.values[G.inv(h)]
            if not b.is_zero():
                total = total + a * b
        out.append(total)
    return GroupFunction(G, out)


def convolve_second_form(f1: GroupFunction, f2: GroupFunction) -> GroupFunction:
    """(f1 * f2)(g) = sum_h f1(h) f2(h^-1 g): the other printed formula."""
    G = f1.group
    out = []
    for g in range(G.order):
        total = ZERO
        for h in range(G.order):
            a = f1.values[h]
            if a.is_zero():
                continue
            b = f2.values[G.mul(G.inv(h), g)]
            if not b.is_zero():
                total = total + a * b
        out.append(total)
    return GroupFunction(G, out)


def involution_T(f: GroupFunction) -> GroupFunction:
    """T(F)(x) = F(x^-1)."""
    G = f.group
    return GroupFunction(G, [f.values[G.inv(x)] for x in range(G.order)])


def subgroup_idempotent(G: FiniteGroup, K: Subgroup) -> GroupFunction:
    """e_K = chi_K / vol(K)."""
    c = CycloScalar.rational(Fraction(1, K.order))
    return GroupFunction.characteristic(G, K.elements).scale(c)


def translated_f(ctx: HyperHecke, p: CharPair, g1: int) -> GroupFunction:
    """g1 . f_(K,psi) evaluated directly: x -> psi(x g1) on K g1^-1."""
    G = ctx.G
    K, psi = p.subgroup, p.character
    vals = []
    for x in range(G.order):
        xg = G.mul(x, g1)
        vals.append(psi(xg) if xg in K.set else ZERO)
    return GroupFunction(G, vals)


def coset_transversal(G: FiniteGroup, H: Subgroup, N: Subgroup, rng=None):
    """Representatives of the cosets vN inside H; minimal by default."""
    seen = set()
    out = []
    for h in H.elements:
        if h in seen:
            continue
        coset = sorted(G.mul(h, w) for w in N.elements)
        seen.update(coset)
        out.append(rng.choice(coset) if rng is not None else coset[0])
    return out


def lemma75_expansion(ctx: HyperHecke, p: CharPair, g1: int,
                      rng=None) -> GroupFunction:
    """g1 . f_(K,psi) = sum_j psi(v_j) chi_{Ker(psi) v_j g1^-1}."""
    G = ctx.G
    K, psi = p.subgroup, p.character
    ker = kernel(psi)
    out = GroupFunction.zero(G)
    for v in coset_transversal(G, K, ker, rng):
        support = [G.mul(G.mul(w, v), G.inv(g1)) for w in ker.elements]
        out = out + GroupFunction.characteristic(G, support).scale(psi(v))
    return out


def phi_element(ctx: HyperHecke, t: Triple, rng=None) -> GroupFunction:
    """Phi_t = sum_j phi(u_j) chi_{g^-1 Ker(phi) u_j}, the u_j extending the
    conjugated source transversal to a full transversal of H/Ker(phi)."""
    ctx.require_valid(t)
    G = ctx.G
    K, psi = t.source.subgroup, t.source.character
    H, phi = t.target.subgroup, t.target.character
    ker_psi = kernel(psi)
    ker_phi = kernel(phi)
    vs = coset_transversal(G, K, ker_psi, rng)
    # image subgroup I = {g v g^-1 Ker(phi)} inside H/Ker(phi)
    image_cosets = set()
    for v in vs:
        gvg = G.conj(t.g, v)
        image_cosets.add(tuple(sorted(G.mul(gvg, w) for w in ker_phi.elements)))
    # u_j: one representative per I-coset of H/Ker(phi)
    covered = set()
    us = []
    for h in H.elements:
        if h in covered:
            continue
        block = set()
        for coset in image_cosets:
            for c in coset:
                block.add(G.mul(c, h))
        covered.update(block)
        us.append(rng.choice(sorted(block)) if rng is not None
                  else min(block))
    ginv = G.inv(t.g)
    out = GroupFunction.zero(G)
    for u in us:
        support = [G.mul(G.mul(ginv, w), u) for w in ker_phi.elements]
        out = out + GroupFunction.characteristic(G, support).scale(phi(u))
    return out


def theorem78_check(ctx: HyperHecke, t: Triple, g1: int, rng=None) -> bool:
    """The convolution identity for the action of a triple on g1 . f_(K,psi):
    both sides evaluated as functions, compared pointwise."""
    ctx.require_valid(t)
    G = ctx.G
    ker_psi = kernel(t.source.character)
    lhs = translated_f(ctx, t.target, G.mul(g1, G.inv(t.g)))
    expansion = lemma75_expansion(ctx, t.target, G.mul(g1, G.inv(t.g)), rng)
    if lhs != expansion:
        return False
    left_input = translated_f(ctx, t.source, g1)
    phi_t = phi_element(ctx, t, rng)
    rhs = involution_T(convolve(involution_T(left_input), phi_t))
    rhs = rhs.scale(CycloScalar.rational(Fraction(1, ker_psi.order)))
    return lhs == rhs


def pi_of_phi(V: MatrixRep, f: GroupFunction):
    """pi(f) = sum_g f(g) rho(g)."""
    assert V.group is f.group
    out = zeros_matrix(V.dim, V.dim)
    for g, c in enumerate(f.values):
        if c.is_zero():
            continue
        M = V.mats[g]
        for i in range(V.dim):
            row = out[i]
            Mi = M[i]
            for j in range(V.dim):
                if not Mi[j].is_zero():
                    row[j] = row[j] + c * Mi[j]
    return out


def trace_distribution(V: MatrixRep):
    """The linear functional f -> Trace(pi(f))."""

    def chi(f: GroupFunction) -> CycloScalar:
        M = pi_of_phi(V, f)
        total = ZERO
        for i in range(V.dim):
            total = total + M[i][i]
        return total

    return chi
