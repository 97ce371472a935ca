"""Flat G-connections: holonomy moduli for finite G and the constant-connection
family on the 2-torus for G = SU2 / SO3.

For finite G the moduli stack of flat connections on a connected manifold
is Hom(pi1, G) / G with each point remembering its stabilizer.  For
compact G only the dimension count and constant connections are modelled;
in the latter everything is exact rational arithmetic.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .levels import VirtualRep, pairing

DEFAULT_BUDGET = 10**7


class ModuliError(ValueError):
    pass


class BudgetExceededError(ModuliError):
    pass


class GroupTableError(ModuliError):
    pass


class DegeneratePairingError(ModuliError):
    pass


# -- finite groups -------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group by its multiplication table; table[a][b] = a*b."""

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if not self.names:
            object.__setattr__(self, "names", tuple(str(k) for k in range(n)))
        if n == 0:
            raise GroupTableError("a group has at least one element")
        if len(self.names) != n:
            raise GroupTableError("names must match the group order")
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in table):
            raise GroupTableError("table must be an n x n array of element indices")
        ids = [e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))]
        if not ids:
            raise GroupTableError("no identity element")
        object.__setattr__(self, "_identity", ids[0])
        for a in range(n):
            if sorted(table[a]) != list(range(n)):
                raise GroupTableError(f"row {a} is not a permutation; element {a} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupTableError(f"multiplication is not associative at ({a}, {b}, {c})")
        inverse = tuple(table[a].index(ids[0]) for a in range(n))
        object.__setattr__(self, "_inverse", inverse)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return self._identity

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, a: int) -> int:
        return self.table[self.table[g][a]][self._inverse[g]]

    def centralizer(self, elems: Sequence[int]) -> tuple[int, ...]:
        return tuple(g for g in range(self.order) if all(self.table[g][a] == self.table[a][g] for a in elems))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for a in range(self.order):
            if a not in seen:
                cls = tuple(sorted({self.conj(g, a) for g in range(self.order)}))
                seen.update(cls)
                out.append(cls)
        return out

    def to_document(self) -> dict:
        return {"order": self.order, "table": [x for row in self.table for x in row], "names": list(self.names)}


def _from_elements(elements, mul, names, name) -> FiniteGroup:
    index = {e: k for k, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(tuple(map(tuple, table)), tuple(names), name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupTableError("cyclic group order must be positive")
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"Z/{n}")


def cycle_name(p: Sequence[int]) -> str:
    """Cycle notation of a permutation of 0..n-1, ``e`` for the identity."""
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(str(k))
            k = p[k]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"


def symmetric3() -> FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))

    def mul(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(3))

    return _from_elements(perms, mul, [cycle_name(p) for p in perms], "S3")


def dihedral4() -> FiniteGroup:
    # symmetries of a square as permutations of its vertices
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def mul(p, q):
        return tuple(p[q[i]] for i in range(4))

    elems = {(0, 1, 2, 3)}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in (r, s):
            y = mul(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    elems = sorted(elems)
    return _from_elements(elems, mul, [cycle_name(p) for p in elems], "D4")


def quaternion8() -> FiniteGroup:
    # units +-1, +-i, +-j, +-k as (sign, axis) with axis 0 = real part
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    elems = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    unit_table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        s, ax = unit_table[(a[1], b[1])]
        return (a[0] * b[0] * s, ax)

    return _from_elements(elems, mul, names, "Q8")


def group_by_name(name: str) -> FiniteGroup:
    key = name.strip().upper().replace(" ", "")
    m = re.fullmatch(r"Z/?(\d+)", key)
    if m:
        return cyclic(int(m.group(1)))
    fixed = {"S3": symmetric3, "Q8": quaternion8, "D4": dihedral4}
    if key in fixed:
        return fixed[key]()
    raise ModuliError(f"unknown group {name!r}; catalog: Z/n, S3, Q8, D4")


def load_group(document) -> FiniteGroup:
    """Group-table document ``{"order", "table" (row-major), "names"}``."""
    if not isinstance(document, dict) or set(document) - {"order", "table", "names"} or not {
        "order",
        "table",
    } <= set(document):
        raise GroupTableError("group document needs 'order', 'table' and optional 'names' only")
    n = document["order"]
    flat = document["table"]
    if not isinstance(n, int) or not isinstance(flat, list) or len(flat) != n * n:
        raise GroupTableError("table must be a row-major list of order**2 indices")
    if any(isinstance(x, bool) or not isinstance(x, int) for x in flat):
        raise GroupTableError("table entries must be integers")
    names = tuple(str(x) for x in document.get("names", []))
    return FiniteGroup(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)), names)


# -- finitely presented groups -----------------------------------------------------

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FPGroup:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    name: str = ""

    def __post_init__(self):
        for word in self.relators:
            for g, e in word:
                if not 0 <= g < len(self.generators) or e not in (1, -1):
                    raise ModuliError(f"relator uses undeclared generator or bad exponent: {word}")

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Sequence[str], name="") -> "FPGroup":
        """Relators as space-separated letters, ``x^-1`` for inverses."""
        index = {g: k for k, g in enumerate(generators)}
        words = []
        for text in relators:
            word = []
            for tok in text.split():
                base, _, exp = tok.partition("^")
                if base not in index or exp not in ("", "1", "-1"):
                    raise ModuliError(f"bad letter {tok!r} in relator {text!r}")
                word.append((index[base], -1 if exp == "-1" else 1))
            words.append(tuple(word))
        return cls(tuple(generators), tuple(words), name)

    def format_word(self, word: Word) -> str:
        return " ".join(self.generators[g] + ("^-1" if e < 0 else "") for g, e in word)


def _commutator(a: int, b: int) -> Word:
    return ((a, 1), (b, 1), (a, -1), (b, -1))


def free_group(n: int) -> FPGroup:
    return FPGroup(tuple(f"x{k}" for k in range(1, n + 1)), (), f"F{n}")


def free_abelian(n: int) -> FPGroup:
    """Z^n, the fundamental group of the n-torus."""
    rels = tuple(_commutator(i, j) for i in range(n) for j in range(i + 1, n))
    return FPGroup(tuple(f"x{k}" for k in range(1, n + 1)), rels, f"Z^{n}")


def surface_group(genus: int) -> FPGroup:
    gens = []
    for k in range(1, genus + 1):
        gens += [f"a{k}", f"b{k}"]
    word = ()
    for k in range(genus):
        word += _commutator(2 * k, 2 * k + 1)
    return FPGroup(tuple(gens), (word,) if word else (), f"surface({genus})")


def pi1_by_name(name: str) -> FPGroup:
    """``Z<n>`` = Z^n, ``F<n>`` = free group, ``surface:<g>`` / ``S<g>`` surface group."""
    key = name.strip()
    m = re.fullmatch(r"Z\^?(\d+)", key, re.I)
    if m:
        return free_abelian(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)", key, re.I)
    if m:
        return free_group(int(m.group(1)))
    m = re.fullmatch(r"(?:surface:|S)(\d+)", key, re.I)
    if m:
        return surface_group(int(m.group(1)))
    raise ModuliError(f"unknown fundamental group {name!r}; catalog: Z<n>, F<n>, surface:<g>")


# -- moduli ---------------------------------------------------------------------


@dataclass(frozen=True)
class GaugeClass:
    """A conjugacy class of homomorphisms with its stabilizer (the stack datum)."""

    representative: tuple[int, ...]
    orbit_size: int
    stabilizer: tuple[int, ...]


def evaluate_word(G: FiniteGroup, word: Word, images: Sequence[int]) -> int:
    x = G.identity
    for g, e in word:
        a = images[g]
        x = G.table[x][a if e > 0 else G.inverse(a)]
    return x


def budget_from_env() -> int:
    raw = os.environ.get("SPINCS_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise ModuliError(f"SPINCS_BUDGET must be a number, got {raw!r}") from None
    if value < 1:
        raise ModuliError("SPINCS_BUDGET must be positive")
    return value


def enumerate_moduli(pi1: FPGroup, G: FiniteGroup, budget: int | None = None) -> list[GaugeClass]:
    """All conjugation orbits in Hom(pi1, G), sorted by minimal representative."""
    if budget is None:
        budget = budget_from_env()
    k = len(pi1.generators)
    candidates = G.order ** k
    if candidates > budget:
        raise BudgetExceededError(f"{G.order}^{k} = {candidates} candidate tuples exceeds budget {budget}")
    seen = set()
    classes = []
    for images in itertools.product(range(G.order), repeat=k):
        if images in seen:
            continue
        if any(evaluate_word(G, w, images) != G.identity for w in pi1.relators):
            continue
        orbit = {tuple(G.conj(g, a) for a in images) for g in range(G.order)}
        seen |= orbit
        classes.append(GaugeClass(min(orbit), len(orbit), G.centralizer(images)))
    classes.sort(key=lambda c: c.representative)
    return classes


def stabilizer_pi0_report(cls: GaugeClass) -> int:
    """Order of pi0 of the automorphism group; for finite G the stabilizer is
    discrete, so this is its order."""
    return len(cls.stabilizer)


def dim_smooth(genus: int, dim_group: int, dim_stab: int) -> int:
    """Dimension of the moduli space near a flat connection on a genus-g surface."""
    if genus < 0:
        raise ModuliError("genus must be >= 0")
    return -dim_group * (2 - 2 * genus) + 2 * dim_stab


# -- constant connections on the 2-torus --------------------------------------------
#
# Lie algebra su2 = so3 in a basis e1, e2, e3 with [e1, e2] = e3 (cyclic),
# e3 spanning the Cartan line.  The invariant form attached to rho is
# normalized so that <e3, e3>_rho = pairing(rho, 1, 1); it is then
# pairing(rho, 1, 1) times the Euclidean dot product.  Integrals over T^2 use
# unit volume.

LieVec = tuple[Fraction, Fraction, Fraction]


def lie(*coords) -> LieVec:
    if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
        coords = tuple(coords[0])
    if len(coords) != 3:
        raise ModuliError("su2 elements have three coordinates")
    return tuple(Fraction(c) for c in coords)


def cartan(c) -> LieVec:
    return lie(0, 0, c)


ZERO = lie(0, 0, 0)
BASIS = (lie(1, 0, 0), lie(0, 1, 0), lie(0, 0, 1))


def bracket(x: LieVec, y: LieVec) -> LieVec:
    return (
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    )


def scale(c, x: LieVec) -> LieVec:
    return tuple(Fraction(c) * a for a in x)


def add_vec(x: LieVec, y: LieVec) -> LieVec:
    return tuple(a + b for a, b in zip(x, y))


def inner(x: LieVec, y: LieVec, rho: VirtualRep) -> Fraction:
    return pairing(rho, 1, 1) * sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class ConstantConnection:
    """B = sum_j B_j dx_j with constant su2 components, one per torus direction."""

    components: tuple[LieVec, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(lie(c) for c in self.components))


def curvature(B: ConstantConnection) -> LieVec:
    """dx^dy coefficient of the curvature of a constant connection on T^2."""
    if len(B.components) != 2:
        raise ModuliError("curvature is defined for connections on T^2 (two components)")
    return bracket(*B.components)


def moment(B: ConstantConnection, zeta: LieVec, rho: VirtualRep) -> Fraction:
    """mu_zeta(B) = integral over T^2 of <curvature, zeta>_rho."""
    return inner(curvature(B), lie(zeta), rho)


def symplectic(a1: Sequence[LieVec], a2: Sequence[LieVec], rho: VirtualRep) -> Fraction:
    """omega(A1', A2') for tangents given as (dx part, dy part)."""
    if len(a1) != 2 or len(a2) != 2:
        raise ModuliError("tangent vectors on T^2 have a dx and a dy part")
    a1 = [lie(v) for v in a1]
    a2 = [lie(v) for v in a2]
    return inner(a1[0], a2[1], rho) - inner(a1[1], a2[0], rho)


def el_critical_test(B: ConstantConnection, rho: VirtualRep) -> bool:
    """Whether the first variation of the action vanishes at B in every direction."""
    if pairing(rho, 1, 1) == 0:
        raise DegeneratePairingError("the invariant form of rho is zero; criticality is not detected by it")
    F = curvature(B)
    return all(inner(F, e, rho) == 0 for e in BASIS)
