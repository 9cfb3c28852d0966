"""Finite groups as validated Cayley tables, elements 0..n-1, identity 0.

All higher layers reference elements by dense integer index.  Groups are
immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import lcm

from .errors import NotAGroup, NotASubgroup, UnknownGroup

PERM_ORDER_CAP = 10_000
SUBGROUP_ENUM_CAP = 48


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, table, name: str, _validated: bool = False):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.name = name
        if not _validated:
            _validate_table(self.table)
        self.inverse = _inverse_map(self.table)
        self._caches: dict = {}

    # basic operations --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[a], -k)
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        if "exponent" not in self._caches:
            self._caches["exponent"] = lcm(*(self.element_order(a)
                                             for a in range(self.order)))
        return self._caches["exponent"]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a]
                   for a in range(self.order) for b in range(a + 1, self.order))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class Subgroup:
    """A subgroup of a FiniteGroup, stored as a sorted element tuple."""

    def __init__(self, parent: FiniteGroup, elements, _validated: bool = False):
        self.parent = parent
        self.elements = tuple(sorted(set(int(e) for e in elements)))
        self.set = frozenset(self.elements)
        if not _validated:
            self._validate()
        self._pos = {e: i for i, e in enumerate(self.elements)}

    def _validate(self):
        if 0 not in self.set:
            raise NotASubgroup("subgroup must contain the identity")
        t = self.parent.table
        for a in self.elements:
            if self.parent.inverse[a] not in self.set:
                raise NotASubgroup(f"not closed under inverse at {a}")
            for b in self.elements:
                if t[a][b] not in self.set:
                    raise NotASubgroup(f"not closed under product at ({a},{b})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> int:
        return self.parent.order // self.order

    def position(self, e: int) -> int:
        return self._pos[e]

    def __contains__(self, e: int) -> bool:
        return e in self.set

    def contains(self, other: "Subgroup") -> bool:
        return other.set <= self.set

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.elements == other.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __repr__(self):
        return f"Subgroup({self.parent.name}, {list(self.elements)})"


# construction ----------------------------------------------------------


def _validate_table(table) -> None:
    import numpy as np

    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    if any(len(row) != n for row in table):
        raise NotAGroup("table is not square")
    t = np.array(table, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n, dtype=np.int64)
    if not (np.sort(t, axis=1) == ar).all():
        raise NotAGroup("a row is not a permutation of 0..n-1")
    if not (np.sort(t, axis=0) == ar[:, None]).all():
        raise NotAGroup("a column is not a permutation of 0..n-1")
    if not ((t[0] == ar).all() and (t[:, 0] == ar).all()):
        raise NotAGroup("index 0 is not a two-sided identity")
    if n <= 128:
        if not (t[t, :] == t[:, t]).all():
            raise NotAGroup("associativity fails")
    else:
        for a in range(n):
            if not (t[t[a], :] == t[a][t]).all():
                raise NotAGroup("associativity fails")


def _inverse_map(table) -> tuple[int, ...]:
    n = len(table)
    inv = [0] * n
    for a in range(n):
        inv[a] = table[a].index(0)
    return tuple(inv)


def from_cayley_table(table, name: str = "G") -> FiniteGroup:
    return FiniteGroup(table, name)


def from_permutations(generators, degree: int, name: str = "G") -> FiniteGroup:
    """Group generated by permutations (image lists), as a Cayley table."""
    gens = []
    for p in generators:
        p = tuple(int(v) for v in p)
        if sorted(p) != list(range(degree)):
            raise NotAGroup(f"not a permutation of 0..{degree - 1}: {p}")
        gens.append(p)
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    if len(seen) >= PERM_ORDER_CAP:
                        raise NotAGroup(
                            f"generated group exceeds order cap {PERM_ORDER_CAP}")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(seen)  # identity is lexicographically first
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems]
             for a in elems]
    return FiniteGroup(table, name, _validated=True)


# builtin catalog ---------------------------------------------------------


def _cyclic_table(n: int):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _dihedral_table(n: int):
    """D_2n, elements x^a y^e at index e*n + a; x^n=1=y^2, y x y = x^-1."""
    def idx(a, e):
        return e * n + a

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(n):
        for e in range(2):
            for b in range(n):
                for f in range(2):
                    if e == 0:
                        c, g = (a + b) % n, f
                    else:
                        c, g = (a - b) % n, 1 - f
                    table[idx(a, e)][idx(b, f)] = idx(c, g)
    return table


def _quaternion_table():
    """Q8, elements x^a y^e at index e*4 + a; x^4=1, y^2=x^2, y x y^-1 = x^-1."""
    def idx(a, e):
        return e * 4 + a

    table = [[0] * 8 for _ in range(8)]
    for a in range(4):
        for e in range(2):
            for b in range(4):
                for f in range(2):
                    if e == 0:
                        c, g = (a + b) % 4, f
                    elif f == 0:
                        c, g = (a - b) % 4, 1
                    else:
                        c, g = (a - b + 2) % 4, 0
                    table[idx(a, e)][idx(b, f)] = idx(c, g)
    return table


def _symmetric(degree: int, name: str) -> FiniteGroup:
    from itertools import permutations

    elems = sorted(permutations(range(degree)))
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems]
             for a in elems]
    return FiniteGroup(table, name, _validated=True)


def _alternating(degree: int, name: str) -> FiniteGroup:
    from itertools import permutations

    def parity(p):
        s = 0
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                s += p[i] > p[j]
        return s % 2

    elems = sorted(p for p in permutations(range(degree)) if parity(p) == 0)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems]
             for a in elems]
    return FiniteGroup(table, name, _validated=True)


def builtin(name: str) -> FiniteGroup:
    """Catalog groups with documented element orderings.

    - c1..c12: cyclic, additive indices mod n.
    - d2..d16 (even orders): dihedral D_2n, elements 1,x,..,x^{n-1},y,xy,..;
      for d8 this is the ordering 1,x,x^2,x^3,y,xy,x^2y,x^3y.
    - q8: 1,x,x^2,x^3,y,xy,x^2y,x^3y with x^4=1, y^2=x^2, yxy^-1=x^-1.
    - s3,s4,a4: permutations of {0..d-1} in lexicographic order of image
      tuples (identity first); product (s*t)(i) = s(t(i)).
    """
    key = name.strip().lower()
    if key.startswith("c") and key[1:].isdigit():
        n = int(key[1:])
        if 1 <= n <= 12:
            return FiniteGroup(_cyclic_table(n), f"C{n}", _validated=True)
    if key.startswith("d") and key[1:].isdigit():
        order = int(key[1:])
        if order % 2 == 0 and 2 <= order <= 16:
            return FiniteGroup(_dihedral_table(order // 2), f"D{order}",
                               _validated=True)
    if key == "q8":
        return FiniteGroup(_quaternion_table(), "Q8", _validated=True)
    if key == "s3":
        return _symmetric(3, "S3")
    if key == "s4":
        return _symmetric(4, "S4")
    if key == "a4":
        return _alternating(4, "A4")
    raise UnknownGroup(f"unknown builtin group {name!r}")


# subgroup machinery ------------------------------------------------------


def generated_subgroup(G: FiniteGroup, gens) -> Subgroup:
    t = G.table
    elems = {0}
    work = [0]
    for g in gens:
        if g not in elems:
            elems.add(g)
            work.append(g)
    while work:
        x = work.pop()
        for y in list(elems):
            for z in (t[x][y], t[y][x]):
                if z not in elems:
                    elems.add(z)
                    work.append(z)
    return Subgroup(G, elems, _validated=True)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,), _validated=True)


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, range(G.order), _validated=True)


def center(G: FiniteGroup) -> Subgroup:
    if "center" not in G._caches:
        t = G.table
        zs = [z for z in range(G.order)
              if all(t[z][g] == t[g][z] for g in range(G.order))]
        G._caches["center"] = Subgroup(G, zs, _validated=True)
    return G._caches["center"]


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, by closure of small generating seeds plus join closure."""
    return _subgroups_over(G, (0,))


def subgroups_containing(G: FiniteGroup, Z: Subgroup) -> list[Subgroup]:
    """All subgroups containing Z, sorted by (order, element tuple)."""
    if Z.parent is not G:
        raise NotASubgroup("Z belongs to a different group")
    return _subgroups_over(G, Z.elements)


def _subgroups_over(G: FiniteGroup, base: tuple[int, ...]) -> list[Subgroup]:
    cache_key = ("subgroups_over", base)
    if cache_key in G._caches:
        return G._caches[cache_key]
    assert G.order <= SUBGROUP_ENUM_CAP, (
        f"subgroup enumeration capped at order {SUBGROUP_ENUM_CAP}")
    found: dict[frozenset, Subgroup] = {}

    def add(seed):
        H = generated_subgroup(G, tuple(base) + tuple(seed))
        found.setdefault(H.set, H)

    add(())
    elems = [e for e in range(1, G.order) if e not in base]
    for k in (1, 2, 3):
        for seed in combinations(elems, k):
            add(seed)
    # join closure guarantees completeness beyond 3-generated subgroups
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for i, A in enumerate(current):
            for B in current[i + 1:]:
                if A.set <= B.set or B.set <= A.set:
                    continue
                join = generated_subgroup(G, A.elements + B.elements)
                if join.set not in found:
                    found[join.set] = join
                    changed = True
    out = sorted(found.values(), key=lambda H: (H.order, H.elements))
    G._caches[cache_key] = out
    return out


def conjugate_subgroup(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    return Subgroup(G, (G.conj(g, h) for h in H.elements), _validated=True)


def commutator_subgroup(G: FiniteGroup, H: Subgroup) -> Subgroup:
    t, inv = G.table, G.inverse
    comms = {t[t[a][b]][t[inv[a]][inv[b]]]
             for a in H.elements for b in H.elements}
    return generated_subgroup(G, comms)


def normalizes(G: FiniteGroup, g: int, H: Subgroup) -> bool:
    return all(G.conj(g, h) in H.set for h in H.elements)


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, tuple[int, ...]]]:
    """(minimal representative, sorted coset) for each left coset gH."""
    seen = set()
    out = []
    t = G.table
    for g in range(G.order):
        if g in seen:
            continue
        coset = tuple(sorted(t[g][h] for h in H.elements))
        seen.update(coset)
        out.append((g, coset))
    return out


def left_transversal(G: FiniteGroup, H: Subgroup) -> list[int]:
    return [rep for rep, _ in left_cosets(G, H)]


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup
                  ) -> list[tuple[int, tuple[int, ...]]]:
    """Partition of G into H\\g/K classes; reps minimal, sorted by rep."""
    t = G.table
    seen = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        cls = tuple(sorted({t[t[h][g]][k] for h in H.elements
                            for k in K.elements}))
        seen.update(cls)
        out.append((g, cls))
    return out


def double_coset_of(G: FiniteGroup, H: Subgroup, g: int, K: Subgroup) -> int:
    """Minimal element of the double coset H g K."""
    t = G.table
    return min(t[t[h][g]][k] for h in H.elements for k in K.elements)


def quotient_group(G: FiniteGroup, H: Subgroup, N: Subgroup):
    """(H/N as a FiniteGroup, projection element->quotient index).

    N must be normal in H; cosets are ordered by minimal element, which puts
    the identity coset at index 0.
    """
    t = G.table
    for h in H.elements:
        for x in N.elements:
            if G.conj(h, x) not in N.set:
                raise NotASubgroup("N is not normal in H")
    cosets = []
    proj = {}
    for h in H.elements:
        if h in proj:
            continue
        coset = tuple(sorted(t[h][x] for x in N.elements))
        for e in coset:
            proj[e] = len(cosets)
        cosets.append(coset)
    order = sorted(range(len(cosets)), key=lambda i: cosets[i][0])
    relabel = {old: new for new, old in enumerate(order)}
    proj = {e: relabel[i] for e, i in proj.items()}
    cosets = [cosets[i] for i in order]
    table = [[proj[t[a[0]][b[0]]] for b in cosets] for a in cosets]
    Q = FiniteGroup(table, f"{G.name}-quotient", _validated=True)
    return Q, [proj[h] if h in proj else None for h in range(G.order)], cosets


def subgroup_as_group(G: FiniteGroup, H: Subgroup):
    """H as a standalone FiniteGroup plus index maps to/from the parent."""
    to_parent = list(H.elements)  # ascending, so identity keeps index 0
    from_parent = {e: i for i, e in enumerate(to_parent)}
    table = [[from_parent[G.mul(a, b)] for b in to_parent] for a in to_parent]
    return (FiniteGroup(table, f"{G.name}-sub{H.order}", _validated=True),
            to_parent, from_parent)


# JSON ---------------------------------------------------------------------


def group_from_json(obj) -> FiniteGroup:
    if isinstance(obj, str):
        obj = json.loads(obj)
    name = obj.get("name", "G")
    if "table" in obj:
        return from_cayley_table(obj["table"], name)
    if "generators" in obj:
        return from_permutations(obj["generators"], int(obj["degree"]), name)
    raise NotAGroup("group JSON needs a 'table' or 'generators' field")


def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "order": G.order,
            "table": [list(row) for row in G.table]}
