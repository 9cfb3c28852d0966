"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A scalar is stored as a Fraction vector over the power basis
{zeta_N^i : 0 <= i < phi(N)} reduced modulo the N-th cyclotomic polynomial,
with N the *minimal* conductor of the value.  All character values of a
finite group of exponent e live in Q(zeta_e), so this field is large enough
for everything downstream.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionByZero

ZERO = Fraction(0)
ONE = Fraction(1)


def euler_phi(n: int) -> int:
    assert n >= 1
    result = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending, monic."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            num = _poly_divide(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_rows(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta_n^k reduced mod Phi_n, for k = 0 .. max(n-1, 2*phi(n)-2)."""
    phi = euler_phi(n)
    top = [Fraction(-c) for c in cyclotomic_poly(n)[:phi]]  # zeta^phi
    rows: list[tuple[Fraction, ...]] = []
    cur = [ZERO] * phi
    cur[0] = ONE
    rows.append(tuple(cur))
    for _ in range(max(n - 1, 2 * phi - 2)):
        lead = cur[phi - 1]
        nxt = [ZERO] + cur[: phi - 1]
        if lead:
            nxt = [a + lead * b for a, b in zip(nxt, top)]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_poly(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = euler_phi(n)
    rows = _power_rows(n)
    out = list(coeffs[:phi]) + [ZERO] * (phi - len(coeffs[:phi]))
    for k in range(phi, len(coeffs)):
        c = coeffs[k]
        if c:
            row = rows[k]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


@lru_cache(maxsize=None)
def _root_table(n: int) -> dict[tuple[Fraction, ...], int]:
    """Reverse map: reduced coefficient tuple of zeta_n^j -> j."""
    rows = _power_rows(n)
    return {rows[j]: j for j in range(n)}


@lru_cache(maxsize=None)
def _lift_rows(d: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Images of the Q(zeta_d) basis in Q(zeta_n) coordinates (d | n)."""
    assert n % d == 0
    step = n // d
    rows = _power_rows(n)
    return tuple(rows[(i * step) % max(n, 1)] if n > 1 else rows[0]
                 for i in range(euler_phi(d)))


@lru_cache(maxsize=None)
def _subfield_solver(d: int, n: int):
    """Data to test membership of a Q(zeta_n) vector in Q(zeta_d).

    Returns (pivot row indices, inverse of the square pivot submatrix of the
    basis-image matrix); candidate coordinates are verified by lifting back.
    """
    basis = _lift_rows(d, n)  # phi(d) columns, each of length phi(n)
    pd, pn = euler_phi(d), euler_phi(n)
    # Select pd linearly independent rows by elimination.
    work = [[basis[j][i] for j in range(pd)] for i in range(pn)]
    chosen: list[int] = []
    echelon: list[list[Fraction]] = []
    for i in range(pn):
        row = list(work[i])
        for erow in echelon:
            lead = next(j for j, v in enumerate(erow) if v)
            if row[lead]:
                f = row[lead] / erow[lead]
                row = [a - f * b for a, b in zip(row, erow)]
        if any(row):
            echelon.append(row)
            chosen.append(i)
            if len(chosen) == pd:
                break
    assert len(chosen) == pd
    square = [[basis[j][i] for j in range(pd)] for i in chosen]
    inv = _invert_small(square)
    return tuple(chosen), tuple(tuple(r) for r in inv)


def _invert_small(m: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(k)]
           for i, row in enumerate(m)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [v / f for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                g = aug[r][col]
                aug[r] = [a - g * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


class CycloScalar:
    """An element of Q(zeta_n), with n the minimal conductor of the value."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", tuple(coeffs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CycloScalar is immutable")

    # construction -----------------------------------------------------

    @staticmethod
    def rational(q) -> "CycloScalar":
        return CycloScalar(1, (Fraction(q),))

    @staticmethod
    def _canonical(n: int, coeffs) -> "CycloScalar":
        if n % 4 == 2:
            # Q(zeta_2m) = Q(zeta_m) for odd m, via zeta_2m = -zeta_m^{(m+1)/2}
            m = n // 2
            folded = [ZERO] * m
            for i, v in enumerate(list(coeffs)[: euler_phi(n)]):
                if v:
                    folded[(i * ((m + 1) // 2)) % m] += v if i % 2 == 0 else -v
            return CycloScalar._canonical(m, folded)
        c = _reduce_poly(list(coeffs), n)
        if n == 1:
            return CycloScalar(1, c)
        if all(v == 0 for v in c[1:]):
            return CycloScalar(1, (c[0],))
        j = _root_table(n).get(c)
        if j is not None:
            g = gcd(n, j)
            if g > 1:
                return CycloScalar._canonical(n // g, _power_rows(n // g)[j // g])
            return CycloScalar(n, c)
        for d in divisors(n)[1:-1]:
            if euler_phi(d) >= euler_phi(n):
                continue
            chosen, inv = _subfield_solver(d, n)
            cand = [sum(inv[i][k] * c[chosen[k]] for k in range(len(chosen)))
                    for i in range(len(inv))]
            lifted = _lift_to(tuple(cand), d, n)
            if lifted == c:
                return CycloScalar._canonical(d, cand)
        return CycloScalar(n, c)

    # arithmetic -------------------------------------------------------

    def _pair(self, other: "CycloScalar"):
        if self.n == other.n:
            return self.n, self.c, other.c
        m = self.n * other.n // gcd(self.n, other.n)
        return m, _lift_to(self.c, self.n, m), _lift_to(other.c, other.n, m)

    def __add__(self, other):
        other = _coerce(other)
        m, a, b = self._pair(other)
        return CycloScalar._canonical(m, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.n, tuple(-v for v in self.c))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.n == 1:
            q = self.c[0]
            if q == 0:
                return CycloScalar(1, (ZERO,))
            return CycloScalar._canonical(other.n, [q * v for v in other.c])
        if other.n == 1:
            return other * self
        m, a, b = self._pair(other)
        prod = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloScalar._canonical(m, prod)

    __rmul__ = __mul__

    def inv(self) -> "CycloScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero cyclotomic scalar")
        if self.n == 1:
            return CycloScalar(1, (1 / self.c[0],))
        j = self.as_root_of_unity()
        if j is not None:
            return root_of_unity(j[0], -j[1])
        return CycloScalar._canonical(self.n, _last_cofactor(self, ONE))

    def __truediv__(self, other):
        other = _coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = CycloScalar.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return self.n == 1 and self.c[0] == 0

    def is_one(self) -> bool:
        return self.n == 1 and self.c[0] == 1

    def is_rational(self) -> bool:
        return self.n == 1

    def as_fraction(self) -> Fraction:
        assert self.n == 1
        return self.c[0]

    def as_root_of_unity(self):
        """(m, j) with self == zeta_m^j in lowest terms, or None."""
        if self.n == 1:
            if self.c[0] == 1:
                return (1, 0)
            if self.c[0] == -1:
                return (2, 1)
            return None
        j = _root_table(self.n).get(self.c)
        return None if j is None else (self.n, j)

    def to_coeffs(self, m: int) -> tuple[Fraction, ...]:
        """Coefficient vector after lifting into Q(zeta_m) (n | m required)."""
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        return _lift_to(self.c, self.n, m)

    def sort_key(self, m: int):
        return self.to_coeffs(m)

    def __eq__(self, other):
        if not isinstance(other, CycloScalar):
            if isinstance(other, (int, Fraction)):
                other = CycloScalar.rational(other)
            else:
                return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.c))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return not self.is_zero()

    def render(self) -> str:
        if self.n == 1:
            return str(self.c[0])
        parts = []
        for i, v in enumerate(self.c):
            if not v:
                continue
            if i == 0:
                parts.append(str(v))
            else:
                z = "z" if i == 1 else f"z^{i}"
                if v == 1:
                    term = z
                elif v == -1:
                    term = f"-{z}"
                else:
                    term = f"{v}*{z}"
                parts.append(term)
        body = " + ".join(parts).replace("+ -", "- ")
        return f"{body} (z = zeta_{self.n})"

    def __repr__(self):
        return f"CycloScalar({self.render()})"


def _coerce(x) -> CycloScalar:
    if isinstance(x, CycloScalar):
        return x
    return CycloScalar.rational(x)


def _lift_to(coeffs: tuple[Fraction, ...], d: int, n: int) -> tuple[Fraction, ...]:
    if d == n:
        return tuple(coeffs)
    rows = _lift_rows(d, n)
    phi = euler_phi(n)
    out = [ZERO] * phi
    for i, c in enumerate(coeffs):
        if c:
            row = rows[i]
            for k in range(phi):
                if row[k]:
                    out[k] += c * row[k]
    return tuple(out)


def _last_cofactor(x: CycloScalar, const: Fraction) -> list[Fraction]:
    """Cofactor u with u*x = const mod Phi_n, by solving a linear system."""
    n = x.n
    phi = euler_phi(n)
    # columns: x * zeta^i for i < phi
    cols = []
    for i in range(phi):
        shifted = [ZERO] * i + list(x.c)
        cols.append(_reduce_poly(shifted, n))
    rhs = [const] + [ZERO] * (phi - 1)
    sol = _solve_square(cols, rhs)
    return sol


def _solve_square(cols: list[tuple[Fraction, ...]], rhs: list[Fraction]) -> list[Fraction]:
    k = len(cols)
    aug = [[cols[j][i] for j in range(k)] + [rhs[i]] for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [v / f for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                g = aug[r][col]
                aug[r] = [a - g * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][k] for i in range(k)]


def root_of_unity(n: int, j: int) -> CycloScalar:
    """zeta_n^j in canonical form."""
    assert n >= 1
    j %= n
    return CycloScalar._canonical(n, _power_rows(n)[j])


def zero() -> CycloScalar:
    return CycloScalar(1, (ZERO,))


def one() -> CycloScalar:
    return CycloScalar(1, (ONE,))


def scalar_to_json(x: CycloScalar):
    """Compact JSON form: int, "a/b", {"conductor","power"} or coefficient list."""
    if x.is_rational():
        q = x.as_fraction()
        if q.denominator == 1:
            return int(q)
        return f"{q.numerator}/{q.denominator}"
    rj = x.as_root_of_unity()
    if rj is not None:
        return {"conductor": rj[0], "power": rj[1]}
    return {"conductor": x.n, "coeffs": [f"{v.numerator}/{v.denominator}" for v in x.c]}


def scalar_from_json(obj) -> CycloScalar:
    if isinstance(obj, (int, str)):
        return CycloScalar.rational(Fraction(obj))
    if isinstance(obj, dict):
        if "power" in obj:
            return root_of_unity(int(obj["conductor"]), int(obj["power"]))
        if "coeffs" in obj:
            return CycloScalar._canonical(
                int(obj["conductor"]), [Fraction(v) for v in obj["coeffs"]])
    raise ValueError(f"cannot parse scalar from {obj!r}")
