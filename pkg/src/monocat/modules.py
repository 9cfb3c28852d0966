"""Objects and morphisms of the monomial category.

Modules are lineable: a finite list of lines permuted by G with scalars,
each line carrying its stabilizing pair.  Induced modules exist in the
tensor model (lines = left cosets gH) and the function model (bases
g.f_(H,phi)); the bridge between them and the Double Coset Formula follow
the appendix formulas of the source construction.
"""

from __future__ import annotations

from .characters import CharPair, Character, conj_pair, pair_leq
from .cyclo import CycloScalar, one, scalar_to_json
from .errors import InvalidTriple, NotASubgroup
from .group import FiniteGroup, Subgroup, double_cosets, left_transversal
from .hecke import HHElement, HyperHecke, Triple


class MonomialModule:
    """A k[G]-module with a fixed line decomposition.

    action[g][i] = (j, c): g sends line i to c times line j.
    """

    def __init__(self, group: FiniteGroup, action, stab_pairs,
                 summand_of=None, summand_pairs=None, reps=None,
                 central_char: Character | None = None, validate: bool = True):
        self.group = group
        self.action = tuple(tuple(row) for row in action)
        self.lines = tuple(stab_pairs)
        self.n_lines = len(self.lines)
        self.summand_of = tuple(summand_of) if summand_of is not None \
            else (0,) * self.n_lines
        self.summand_pairs = tuple(summand_pairs) if summand_pairs else None
        self.reps = tuple(reps) if reps is not None else None
        self.central_char = central_char
        if validate:
            self._validate()

    def act(self, g: int, i: int) -> tuple[int, CycloScalar]:
        return self.action[g][i]

    def _validate(self):
        G = self.group
        for i in range(self.n_lines):
            j, c = self.act(0, i)
            assert j == i and c.is_one(), "identity must act as identity"
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                for i in range(self.n_lines):
                    j1, c1 = self.act(h, i)
                    j2, c2 = self.act(g, j1)
                    j3, c3 = self.act(gh, i)
                    assert j2 == j3 and c1 * c2 == c3, "action is not a G-action"
        for i, p in enumerate(self.lines):
            stab = [g for g in range(G.order) if self.act(g, i)[0] == i]
            assert tuple(sorted(stab)) == p.subgroup.elements, \
                "stabilizing pair records the wrong subgroup"
            for h in p.subgroup.elements:
                assert self.act(h, i)[1] == p.character(h), \
                    "stabilizing pair records the wrong character"
        if self.central_char is not None:
            for z in self.central_char.subgroup.elements:
                for i in range(self.n_lines):
                    j, c = self.act(z, i)
                    assert j == i and c == self.central_char(z), \
                        "central subgroup must act by the central character"

    def structure_key(self):
        return (id(self.group), self.lines, self.action)

    def lineable_fixed_points(self, p: CharPair) -> list[int]:
        """Indices of lines whose stabilizing pair dominates p."""
        return [i for i, q in enumerate(self.lines) if pair_leq(p, q)]

    def to_json(self) -> dict:
        from .characters import pair_to_json

        return {
            "line_count": self.n_lines,
            "lines": [pair_to_json(p) for p in self.lines],
        }


def induced_module(G: FiniteGroup, p: CharPair,
                   central_char: Character | None = None) -> MonomialModule:
    """Ind_H^G(k_phi) in the tensor model: lines indexed by left cosets gH."""
    key = ("induced", p)
    if key in G._caches:
        return G._caches[key]
    H, phi = p.subgroup, p.character
    reps = left_transversal(G, H)
    rep_of = {}
    for idx, r in enumerate(reps):
        for h in H.elements:
            rep_of[G.mul(r, h)] = idx
    action = []
    for g in range(G.order):
        row = []
        for i, r in enumerate(reps):
            gr = G.mul(g, r)
            j = rep_of[gr]
            h = G.mul(G.inv(reps[j]), gr)
            row.append((j, phi(h)))
        action.append(row)
    stab_pairs = [conj_pair(G, r, p) for r in reps]
    mod = MonomialModule(G, action, stab_pairs, summand_of=[0] * len(reps),
                         summand_pairs=[p], reps=reps,
                         central_char=central_char)
    G._caches[key] = mod
    return mod


def direct_sum(mods: list[MonomialModule]) -> MonomialModule:
    assert mods
    G = mods[0].group
    assert all(m.group is G for m in mods)
    action = []
    for g in range(G.order):
        row = []
        offset = 0
        for m in mods:
            for i in range(m.n_lines):
                j, c = m.act(g, i)
                row.append((j + offset, c))
            offset += m.n_lines
        action.append(row)
    stab_pairs = [p for m in mods for p in m.lines]
    summand_of = [k for k, m in enumerate(mods) for _ in range(m.n_lines)]
    summand_pairs = [m.summand_pairs[0] if m.summand_pairs else None
                     for m in mods]
    reps = [r for m in mods for r in (m.reps or (None,) * m.n_lines)]
    return MonomialModule(G, action, stab_pairs, summand_of, summand_pairs,
                          reps, central_char=mods[0].central_char,
                          validate=False)


def lineable_fixed_points(M: MonomialModule, p: CharPair) -> list[int]:
    return M.lineable_fixed_points(p)


class MonomialMorphism:
    """A line map with scalars; columns may hit several target lines."""

    __slots__ = ("source", "target", "cols")

    def __init__(self, source: MonomialModule, target: MonomialModule, cols):
        self.source = source
        self.target = target
        norm = []
        for col in cols:
            acc: dict[int, CycloScalar] = {}
            for j, c in col:
                cur = acc.get(j)
                tot = c if cur is None else cur + c
                if tot.is_zero():
                    acc.pop(j, None)
                else:
                    acc[j] = tot
            norm.append(tuple(sorted(acc.items())))
        self.cols = tuple(norm)

    @staticmethod
    def zero(source, target):
        return MonomialMorphism(source, target, [[] for _ in range(source.n_lines)])

    @staticmethod
    def identity(M):
        return MonomialMorphism(M, M, [[(i, one())] for i in range(M.n_lines)])

    def compose(self, other: "MonomialMorphism") -> "MonomialMorphism":
        """self . other (apply other first)."""
        assert other.target.structure_key() == self.source.structure_key()
        cols = []
        for col in other.cols:
            acc = []
            for j, c in col:
                for j2, c2 in self.cols[j]:
                    acc.append((j2, c * c2))
            cols.append(acc)
        return MonomialMorphism(other.source, self.target, cols)

    def scale(self, c: CycloScalar) -> "MonomialMorphism":
        return MonomialMorphism(
            self.source, self.target,
            [[(j, c * v) for j, v in col] for col in self.cols])

    def add(self, other: "MonomialMorphism") -> "MonomialMorphism":
        assert self.source is other.source and self.target is other.target
        return MonomialMorphism(
            self.source, self.target,
            [list(a) + list(b) for a, b in zip(self.cols, other.cols)])

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def __eq__(self, other):
        return (isinstance(other, MonomialMorphism)
                and self.source.structure_key() == other.source.structure_key()
                and self.target.structure_key() == other.target.structure_key()
                and self.cols == other.cols)

    def __hash__(self):
        return hash(self.cols)

    def is_equivariant(self) -> bool:
        G = self.source.group
        for g in range(G.order):
            for i in range(self.source.n_lines):
                # f(g . line_i) vs g . f(line_i)
                j, c = self.source.act(g, i)
                lhs: dict[int, CycloScalar] = {}
                for t, v in self.cols[j]:
                    lhs[t] = lhs.get(t, CycloScalar.rational(0)) + c * v
                rhs: dict[int, CycloScalar] = {}
                for t, v in self.cols[i]:
                    t2, c2 = self.target.act(g, t)
                    rhs[t2] = rhs.get(t2, CycloScalar.rational(0)) + v * c2
                if {k: v for k, v in lhs.items() if not v.is_zero()} != \
                        {k: v for k, v in rhs.items() if not v.is_zero()}:
                    return False
        return True

    def preserves_fixed_points(self, poset) -> bool:
        for p in poset:
            inside = set(self.target.lineable_fixed_points(p))
            for i in self.source.lineable_fixed_points(p):
                if any(j not in inside for j, _ in self.cols[i]):
                    return False
        return True

    def to_json(self) -> list:
        return [[[j, scalar_to_json(c)] for j, c in col] for col in self.cols]


def triple_morphism(ctx: HyperHecke, t: Triple) -> MonomialMorphism:
    """The map Ind_K^G(k_psi) -> Ind_H^G(k_phi), g1 (x) v -> g1 g^-1 (x) v."""
    ctx.require_valid(t)
    G = ctx.G
    src = induced_module(G, t.source, central_char=ctx.phibar)
    tgt = induced_module(G, t.target, central_char=ctx.phibar)
    phi = t.target.character
    H = t.target.subgroup
    rep_of = {}
    for idx, r in enumerate(tgt.reps):
        for h in H.elements:
            rep_of[G.mul(r, h)] = idx
    ginv = G.inv(t.g)
    cols = []
    for r in src.reps:
        rg = G.mul(r, ginv)
        j = rep_of[rg]
        h = G.mul(G.inv(tgt.reps[j]), rg)
        cols.append([(j, phi(h))])
    return MonomialMorphism(src, tgt, cols)


def element_morphism(ctx: HyperHecke, x: HHElement,
                     source: CharPair, target: CharPair) -> MonomialMorphism:
    """Linear extension of triple_morphism to an algebra element whose terms
    all run source -> target (zero terms elsewhere are rejected)."""
    src = induced_module(ctx.G, source, central_char=ctx.phibar)
    tgt = induced_module(ctx.G, target, central_char=ctx.phibar)
    out = MonomialMorphism.zero(src, tgt)
    for t, c in x.terms.items():
        assert t.source == source and t.target == target
        out = out.add(triple_morphism(ctx, t).scale(c))
    return out


def hom_via_fixed_points(ctx: HyperHecke, p: CharPair, N: MonomialModule):
    """Hom(Ind_K^G(k_psi), N) ~ N^((K,psi)): dimension and a morphism basis.

    The inverse of f -> f(1 (x) 1) sends a fixed line n to g (x) v -> v g.n.
    """
    src = induced_module(ctx.G, p, central_char=ctx.phibar)
    fixed = N.lineable_fixed_points(p)
    basis = []
    for ell in fixed:
        cols = []
        for r in src.reps:
            j, c = N.act(r, ell)
            cols.append([(j, c)])
        basis.append(MonomialMorphism(src, N, cols))
    return len(fixed), basis


def morphism_value_at_unit(f: MonomialMorphism) -> list[tuple[int, CycloScalar]]:
    """f(1 (x) 1): the image of the identity-coset line."""
    assert f.source.reps is not None and f.source.reps[0] == 0
    return list(f.cols[0])


def decompose(M: MonomialModule):
    """G-orbit decomposition of the lines: one induced summand per orbit.

    Returns a list of (canonical orbit pair, sorted line indices).
    """
    G = M.group
    seen = set()
    out = []
    for i in range(M.n_lines):
        if i in seen:
            continue
        orbit = {i}
        frontier = [i]
        while frontier:
            k = frontier.pop()
            for g in range(G.order):
                j, _ = M.act(g, k)
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(j)
        seen.update(orbit)
        tag = min((min(conj_pair(G, g, M.lines[k]).sort_key()
                       for g in range(G.order)), k)
                  for k in orbit)[0]
        # canonical tag: minimal pair in the G-orbit of any stabilizing pair
        pairs = {conj_pair(G, g, M.lines[k])
                 for k in orbit for g in range(G.order)}
        canon = min(pairs, key=lambda q: q.sort_key())
        assert len(orbit) == canon.subgroup.index(), \
            "orbit size must equal the index of the stabilizing subgroup"
        out.append((canon, tuple(sorted(orbit))))
    out.sort(key=lambda item: (item[0].sort_key(), item[1]))
    return out


# function-space model -----------------------------------------------------


class FunctionModel:
    """X_c(H,phi): functions with f(hg) = phi(h)f(g), G acting by
    (g.f)(x) = f(xg); basis functions r.f_(H,phi) for coset reps r."""

    def __init__(self, G: FiniteGroup, p: CharPair):
        self.group = G
        self.pair = p
        H, phi = p.subgroup, p.character
        self.reps = left_transversal(G, H)
        self.basis = []
        for r in self.reps:
            vals = []
            for x in range(G.order):
                xr = G.mul(x, r)
                vals.append(phi(xr) if xr in H.set
                            else CycloScalar.rational(0))
            self.basis.append(tuple(vals))

    def translate(self, g: int, f: tuple) -> tuple:
        """(g.f)(x) = f(xg)."""
        G = self.group
        return tuple(f[G.mul(x, g)] for x in range(G.order))

    def coords(self, f: tuple) -> list[CycloScalar]:
        """Coordinates of f in the basis (supports are disjoint cosets)."""
        G = self.group
        out = []
        for r, b in zip(self.reps, self.basis):
            # the basis function r.f_(H,phi) takes value 1 at r^-1
            point = G.inv(r)
            assert b[point].is_one()
            out.append(f[point])
        got = [CycloScalar.rational(0)] * G.order
        for c, b in zip(out, self.basis):
            for x in range(G.order):
                got[x] = got[x] + c * b[x]
        assert tuple(got) == tuple(f), "function outside the induced span"
        return out


def tensor_function_bridge(ctx: HyperHecke, p: CharPair):
    """The isomorphism g (x) w -> g.f_w between the two induced models.

    Returns (tensor module, function model); the bridge matches line r to
    basis function r.f_(H,phi) under the shared transversal.
    """
    mod = induced_module(ctx.G, p, central_char=ctx.phibar)
    fm = FunctionModel(ctx.G, p)
    assert list(mod.reps) == list(fm.reps)
    return mod, fm


def function_model_triple_action(ctx: HyperHecke, t: Triple,
                                 fm_src: FunctionModel,
                                 fm_tgt: FunctionModel) -> list[tuple]:
    """Images of the source basis under g1.f_(K,psi) -> (g1 g^-1).f_(H,phi)."""
    ctx.require_valid(t)
    G = ctx.G
    out = []
    ginv = G.inv(t.g)
    f0 = fm_tgt.basis[0]
    assert fm_tgt.reps[0] == 0
    for r in fm_src.reps:
        out.append(fm_tgt.translate(G.mul(r, ginv), f0))
    return out


# double coset formula ------------------------------------------------------


class DoubleCosetData:
    """Res_J Ind_H^G(k_phi) ~ sum over z in J\\G/H of Ind_{J cap zHz^-1}^J."""

    def __init__(self, G: FiniteGroup, J: Subgroup, p: CharPair):
        from .group import subgroup_as_group

        self.G, self.J, self.pair = G, J, p
        H, phi = p.subgroup, p.character
        self.Jgrp, self.to_parent, self.from_parent = subgroup_as_group(G, J)
        self.mod = induced_module(G, p)
        self.summands = []  # (z, local subgroup, local character, transversal)
        for z, _ in double_cosets(G, J, H):
            inter = [u for u in J.elements
                     if G.conj(G.inv(z), u) in H.set]
            loc = Subgroup(self.Jgrp, [self.from_parent[u] for u in inter],
                           _validated=True)
            vals = []
            for e in loc.elements:
                u = self.to_parent[e]
                vals.append(phi(G.conj(G.inv(z), u)))
            chi = Character(loc, vals, _validated=True)
            reps_local = left_transversal(self.Jgrp, loc)
            self.summands.append((z, loc, chi, reps_local))

    def dims_match(self) -> bool:
        total = sum(len(reps) for _, _, _, reps in self.summands)
        return total == self.mod.n_lines

    def alpha(self, line: int) -> tuple[int, int, CycloScalar]:
        """alpha(g (x) v) = j (x) phi(h)(v) for g = j z h: returns
        (summand index, local line index, scalar) for a line g = rep."""
        G, J = self.G, self.J
        H, phi = self.pair.subgroup, self.pair.character
        g = self.mod.reps[line]
        for si, (z, loc, chi, reps_local) in enumerate(self.summands):
            for j in J.elements:
                h = G.mul(G.mul(G.inv(z), G.inv(j)), g)
                if h in H.set:
                    # normalize j inside J: j = j0 * u with u in loc
                    jl = self.from_parent[j]
                    for li, j0 in enumerate(reps_local):
                        u = self.Jgrp.mul(self.Jgrp.inv(j0), jl)
                        if u in loc.set:
                            return si, li, phi(h) * chi(u)
        raise AssertionError("line not matched by any double coset")

    def alpha_inv(self, si: int, li: int) -> tuple[int, CycloScalar]:
        """alpha^-1(j0 (x) v) = j0 z (x) v: returns (line, scalar)."""
        G = self.G
        H, phi = self.pair.subgroup, self.pair.character
        z, loc, chi, reps_local = self.summands[si]
        j0 = self.to_parent[reps_local[li]]
        g = G.mul(j0, z)
        for line, r in enumerate(self.mod.reps):
            h = G.mul(G.inv(r), g)
            if h in H.set:
                return line, phi(h)
        raise AssertionError("unreachable: cosets cover G")

    def act_rhs(self, u_parent: int, si: int, li: int):
        """Action of u in J on the right-hand side, staying inside summand si."""
        z, loc, chi, reps_local = self.summands[si]
        ul = self.from_parent[u_parent]
        jl = self.Jgrp.mul(ul, reps_local[li])
        for li2, j0 in enumerate(reps_local):
            w = self.Jgrp.mul(self.Jgrp.inv(j0), jl)
            if w in loc.set:
                return si, li2, chi(w)
        raise AssertionError("unreachable: transversal covers J")


def double_coset_formula(G: FiniteGroup, J: Subgroup, p: CharPair) -> DoubleCosetData:
    return DoubleCosetData(G, J, p)
