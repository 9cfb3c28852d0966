"""The monocentre: families x_(K,psi) in stab_G(K,psi)/Ker(psi) compatible
with every valid triple, the fast path driven by the single coset at
(Z(G), phibar), and the commutation property in the hyperHecke algebra.
"""

from __future__ import annotations

from itertools import product as iproduct
from math import gcd, lcm

from .characters import CharPair, kernel, stabilizer
from .errors import FamilyNotInMonocentre, InvalidTriple, TooLarge
from .group import FiniteGroup, Subgroup
from .hecke import HHElement, HyperHecke, Triple, algebra

EXHAUSTIVE_GROUP_CAP = 8
EXHAUSTIVE_SPACE_CAP = 10 ** 6


class MonoFamily:
    """An assignment pair -> left coset of Ker(psi) inside stab_G(K,psi)."""

    __slots__ = ("phibar", "assignment", "_key")

    def __init__(self, phibar, assignment: dict[CharPair, frozenset]):
        self.phibar = phibar
        self.assignment = dict(assignment)
        self._key = None

    def coset(self, p: CharPair) -> frozenset:
        return self.assignment[p]

    def rep(self, p: CharPair) -> int:
        return min(self.assignment[p])

    def key(self):
        if self._key is None:
            self._key = tuple(sorted((p.sort_key(), tuple(sorted(c)))
                                     for p, c in self.assignment.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, MonoFamily) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"MonoFamily({ {p: sorted(c) for p, c in self.assignment.items()} })"


class MonocentreResult:
    """Families plus the induced group structure (closure is checked)."""

    def __init__(self, ctx: HyperHecke, families: list[MonoFamily]):
        self.ctx = ctx
        self.phibar = ctx.phibar
        root = ctx.poset[0]  # the unique pair on Z(G) itself
        assert root.subgroup == ctx.phibar.subgroup
        self.root_pair = root
        families = sorted(families, key=lambda f: f.rep(root))
        self.families = families
        self.root_cosets = [f.coset(root) for f in families]
        self.order = len(families)
        self.closed, self.table = self._group_table()
        self.invariants = self._abelian_invariants() if self.closed else None

    def _group_table(self):
        G = self.ctx.G
        index = {c: i for i, c in enumerate(self.root_cosets)}
        table = []
        for a in self.root_cosets:
            row = []
            for b in self.root_cosets:
                prod = G.mul(min(a), min(b))
                hit = next((i for c, i in index.items() if prod in c), None)
                if hit is None:
                    return False, None
                row.append(hit)
            table.append(row)
        return True, table

    def _abelian_invariants(self):
        n = self.order
        if n == 0:
            return None
        t = self.table
        if any(t[a][b] != t[b][a] for a in range(n) for b in range(n)):
            return None
        orders = []
        for a in range(n):
            k, x = 1, a
            ident = next(i for i in range(n) if all(t[i][j] == j for j in range(n)))
            while x != ident:
                x = t[x][a]
                k += 1
            orders.append(k)
        return _match_abelian_invariants(n, sorted(orders))

    def iso_tag(self) -> str:
        if not self.closed:
            return f"not-closed-{self.order}"
        if self.invariants is None:
            return f"nonabelian-{self.order}"
        return "x".join(f"C{d}" for d in self.invariants) if self.invariants else "C1"

    def contains(self, family: MonoFamily) -> bool:
        return family in set(self.families)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "closed": self.closed,
            "iso_tag": self.iso_tag(),
            "root_cosets": [sorted(c) for c in self.root_cosets],
        }


def _match_abelian_invariants(n: int, orders: list[int]):
    """Invariant factors (d1|d2|...|dk) matching an element-order multiset;
    finite abelian groups are determined by their element orders."""
    if n == 1:
        return ()

    def chains(m, min_d):
        if m == 1:
            yield ()
            return
        d = min_d
        while d <= m:
            if m % d == 0:
                for rest in chains(m // d, d):
                    yield (d,) + rest
            d += 1

    for cand in chains(n, 2):
        if all(cand[i + 1] % cand[i] == 0 for i in range(len(cand) - 1)):
            if _order_multiset(cand) == orders:
                return cand
    return None


def _order_multiset(factors):
    out = []
    for combo in iproduct(*[range(d) for d in factors]):
        out.append(lcm(*(d // gcd(d, a) for d, a in zip(factors, combo))))
    return sorted(out)


def valid_triples(ctx: HyperHecke) -> list[Triple]:
    """Every valid triple (all g, not just double-coset representatives)."""
    key = "all_valid_triples"
    cached = ctx.__dict__.get(key)
    if cached is not None:
        return cached
    out = [Triple(src, g, tgt)
           for src in ctx.poset for tgt in ctx.poset
           for g in range(ctx.G.order)
           if ctx.triple_valid(src, g, tgt)]
    ctx.__dict__[key] = out
    return out


def monocentre_condition(ctx: HyperHecke, t: Triple, xK: frozenset,
                         xH: frozenset) -> bool:
    """Both clauses: g x g^-1 lands in stab(H,phi) and hits the coset xH."""
    if not ctx.triple_valid(t.source, t.g, t.target):
        raise InvalidTriple(f"invalid triple {t}")
    G = ctx.G
    st = stabilizer(G, t.target)
    ker = kernel(t.target.character)
    x = min(xK)
    c = G.conj(t.g, x)
    if c not in st.set:
        return False
    return frozenset(G.mul(c, w) for w in ker.elements) == xH


def _family_from_root(ctx: HyperHecke, x: int) -> MonoFamily | None:
    """Theorem 3.5 candidate: assign x's image coset at every pair."""
    G = ctx.G
    assignment = {}
    for p in ctx.poset:
        if x not in stabilizer(G, p).set:
            return None
        ker = kernel(p.character)
        assignment[p] = frozenset(G.mul(x, w) for w in ker.elements)
    return MonoFamily(ctx.phibar, assignment)


def _family_satisfies_all(ctx: HyperHecke, fam: MonoFamily) -> bool:
    return all(monocentre_condition(ctx, t, fam.coset(t.source),
                                    fam.coset(t.target))
               for t in valid_triples(ctx))


def monocentre(G: FiniteGroup, phibar) -> MonocentreResult:
    """Fast path per Theorem 3.5: candidates from x in G/Ker(phibar)."""
    ctx = algebra(G, phibar)
    k0 = kernel(phibar)
    seen = set()
    families = []
    for x in range(G.order):
        coset = frozenset(G.mul(x, w) for w in k0.elements)
        if coset in seen:
            continue
        seen.add(coset)
        fam = _family_from_root(ctx, min(coset))
        if fam is not None and _family_satisfies_all(ctx, fam):
            families.append(fam)
    return MonocentreResult(ctx, families)


def monocentre_exhaustive(G: FiniteGroup, phibar) -> MonocentreResult:
    """Definition 3.2 head-on: brute force over independent coset choices."""
    ctx = algebra(G, phibar)
    if G.order > EXHAUSTIVE_GROUP_CAP:
        raise TooLarge(f"exhaustive monocentre capped at |G| <= "
                       f"{EXHAUSTIVE_GROUP_CAP}, got {G.order}")
    cosets_of = {}
    space = 1
    for p in ctx.poset:
        st = stabilizer(G, p)
        ker = kernel(p.character)
        cosets = []
        covered = set()
        for z in st.elements:
            if z in covered:
                continue
            c = frozenset(G.mul(z, w) for w in ker.elements)
            covered.update(c)
            cosets.append(c)
        cosets_of[p] = cosets
        space *= len(cosets)
        if space > EXHAUSTIVE_SPACE_CAP:
            raise TooLarge(f"assignment space exceeds {EXHAUSTIVE_SPACE_CAP}")
    # per-(src,tgt) feasibility tables over coset indices
    triples = valid_triples(ctx)
    feasible: dict[tuple[int, int], set[tuple[int, int]]] = {}
    by_st: dict[tuple[int, int], list[Triple]] = {}
    for t in triples:
        si, ti = ctx.pair_index[t.source], ctx.pair_index[t.target]
        by_st.setdefault((si, ti), []).append(t)
    for (si, ti), ts in by_st.items():
        src, tgt = ctx.poset[si], ctx.poset[ti]
        allowed = set()
        for i, xK in enumerate(cosets_of[src]):
            for j, xH in enumerate(cosets_of[tgt]):
                if all(monocentre_condition(ctx, t, xK, xH) for t in ts):
                    allowed.add((i, j))
        feasible[(si, ti)] = allowed
    families = []
    pair_list = ctx.poset
    for choice in iproduct(*(range(len(cosets_of[p])) for p in pair_list)):
        ok = all((choice[si], choice[ti]) in allowed
                 for (si, ti), allowed in feasible.items())
        if ok:
            families.append(MonoFamily(
                phibar, {p: cosets_of[p][choice[i]]
                         for i, p in enumerate(pair_list)}))
    return MonocentreResult(ctx, families)


def prop31_check(G: FiniteGroup, phibar, t: Triple, family: MonoFamily) -> bool:
    """Proposition 3.1: the two hyperHecke products agree in the algebra."""
    ctx = algebra(G, phibar)
    xk = family.rep(t.source)
    xh = family.rep(t.target)
    left = ctx.multiply(ctx.element(t),
                        ctx.element(Triple(t.source, xk, t.source)))
    right = ctx.multiply(ctx.element(Triple(t.target, xh, t.target)),
                         ctx.element(t))
    return left == right


def inverse_family(G: FiniteGroup, family: MonoFamily) -> MonoFamily:
    """Per-pair coset inverse (Ker(psi) is normal in the stabilizer)."""
    return MonoFamily(family.phibar,
                      {p: frozenset(G.inv(e) for e in c)
                       for p, c in family.assignment.items()})


def require_in_monocentre(result: MonocentreResult, family: MonoFamily) -> None:
    if not result.contains(family):
        raise FamilyNotInMonocentre(f"family {family} not in the monocentre")
