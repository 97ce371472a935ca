"""Z/2 cohomology rings of closed connected 2- and 3-manifolds.

Rings are given by explicit cup-product structure tensors on a labelled
basis.  Everything is exact arithmetic over Z/2 on small tuples.
"""
from __future__ import annotations

import functools
import itertools
import json
import operator
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence


class RingError(ValueError):
    pass


class RingSchemaError(RingError):
    pass


class ConnectivityError(RingError):
    pass


class AssociativityError(RingError):
    pass


class CommutativityError(RingError):
    pass


class DualityError(RingError):
    pass


class DegreeError(RingError):
    pass


def gf2_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Z/2 of a matrix given as a list of 0/1 rows."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        v = 0
        for k, bit in enumerate(row):
            if bit & 1:
                v |= 1 << k
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


def _vec_add(u, v):
    return tuple(map(operator.xor, u, v))


@dataclass(frozen=True, eq=False)
class CohomologyRing:
    """Z/2 cohomology of a closed connected manifold.

    ``products`` holds the nonzero products of positive-degree basis
    elements as ``((deg_i, deg_j, i, j), result_coords)``; degree-zero
    products follow from the unit and are never stored.
    """

    dimension: int
    betti: tuple[int, ...]
    labels: tuple[tuple[str, ...], ...]
    products: tuple[tuple[tuple[int, int, int, int], tuple[int, ...]], ...]
    fundamental: tuple[int, ...]
    name: str = field(default="", compare=False)
    _table: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _label_index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _key: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)
    _cup_cache: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        key = (self.dimension, self.betti, self.labels, self.products, self.fundamental)
        object.__setattr__(self, "_key", (hash(key), key))
        object.__setattr__(self, "_table", dict(self.products))
        object.__setattr__(self, "_cup_cache", {})
        index = {}
        for deg, names in enumerate(self.labels):
            for k, name in enumerate(names):
                index[name] = (deg, k)
        object.__setattr__(self, "_label_index", index)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CohomologyRing):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._key[0]

    # -- construction ---------------------------------------------------

    @classmethod
    def build(cls, dimension, betti, labels, products: Mapping, fundamental, name="") -> "CohomologyRing":
        """Construct and validate.  ``products`` maps (deg_i, deg_j, i, j) to coords."""
        normalized = []
        for key, coords in products.items():
            coords = tuple(int(c) & 1 for c in coords)
            if any(coords):
                normalized.append((tuple(int(k) for k in key), coords))
        normalized.sort()
        ring = cls(
            dimension=int(dimension),
            betti=tuple(int(b) for b in betti),
            labels=tuple(tuple(str(s) for s in names) for names in labels),
            products=tuple(normalized),
            fundamental=tuple(int(c) & 1 for c in fundamental),
            name=name,
        )
        ring.validate()
        return ring

    def validate(self) -> None:
        d = self.dimension
        if d not in (2, 3):
            raise RingSchemaError(f"dimension must be 2 or 3, got {d}")
        if len(self.betti) != d + 1:
            raise RingSchemaError(f"betti must have {d + 1} entries")
        if any(b < 0 for b in self.betti):
            raise RingSchemaError("negative Betti number")
        if self.betti[0] != 1:
            raise ConnectivityError(f"b0 = {self.betti[0]}; only connected manifolds are supported")
        if self.betti[d] != 1:
            raise ConnectivityError(f"b{d} = {self.betti[d]}; a closed connected manifold has b_top = 1")
        if len(self.labels) != d + 1 or any(len(n) != b for n, b in zip(self.labels, self.betti)):
            raise RingSchemaError("labels must list one name per basis element in each degree")
        if len(self._label_index) != sum(self.betti):
            raise RingSchemaError("basis labels must be distinct")
        if len(self.fundamental) != self.betti[d]:
            raise RingSchemaError("fundamental_coords has wrong length")
        for (di, dj, i, j), coords in self.products:
            if di < 1 or dj < 1:
                raise RingSchemaError("products with a degree-zero factor are implied by the unit")
            if di + dj > d:
                raise RingSchemaError(f"product of degrees {di}+{dj} exceeds dimension {d}")
            if not (0 <= i < self.betti[di] and 0 <= j < self.betti[dj]):
                raise RingSchemaError(f"basis index out of range in product ({di},{dj},{i},{j})")
            if len(coords) != self.betti[di + dj]:
                raise RingSchemaError(f"result_coords length mismatch in product ({di},{dj},{i},{j})")
        self._check_commutative()
        self._check_associative()
        self._check_duality()

    def _check_commutative(self):
        for p in range(1, self.dimension + 1):
            for q in range(p, self.dimension + 1 - p):
                for i in range(self.betti[p]):
                    for j in range(self.betti[q]):
                        if self._basis_product(p, i, q, j) != self._basis_product(q, j, p, i):
                            raise CommutativityError(
                                f"{self.labels[p][i]} * {self.labels[q][j]} != "
                                f"{self.labels[q][j]} * {self.labels[p][i]}"
                            )

    def _check_associative(self):
        d = self.dimension
        for p, q, r in itertools.product(range(1, d + 1), repeat=3):
            if p + q + r > d:
                continue
            for i, j, k in itertools.product(range(self.betti[p]), range(self.betti[q]), range(self.betti[r])):
                a, b, c = self.basis(p, i), self.basis(q, j), self.basis(r, k)
                if (a * b) * c != a * (b * c):
                    raise AssociativityError(
                        f"({self.labels[p][i]} {self.labels[q][j]}) {self.labels[r][k]} is not associative"
                    )

    def _check_duality(self):
        d = self.dimension
        for p in range(d + 1):
            m = self.duality_matrix(p)
            if self.betti[p] != self.betti[d - p] or gf2_rank(m) != self.betti[p]:
                raise DualityError(f"pairing H^{p} x H^{d - p} -> Z/2 is degenerate")

    # -- basic access ---------------------------------------------------

    def _basis_product(self, p, i, q, j) -> tuple[int, ...]:
        if p == 0:
            return self.basis(q, j).coords
        if q == 0:
            return self.basis(p, i).coords
        return self._table.get((p, q, i, j), (0,) * self.betti[p + q])

    def zero(self, degree: int) -> "CohClass":
        return CohClass(self, degree, (0,) * self.betti[degree])

    def unit(self) -> "CohClass":
        return CohClass(self, 0, (1,))

    def basis(self, degree: int, index: int) -> "CohClass":
        coords = [0] * self.betti[degree]
        coords[index] = 1
        return CohClass(self, degree, tuple(coords))

    def basis_list(self, degree: int) -> list["CohClass"]:
        return [self.basis(degree, k) for k in range(self.betti[degree])]

    def classes(self, degree: int) -> Iterator["CohClass"]:
        """All 2**b classes of the given degree, in binary-count order."""
        for coords in itertools.product((0, 1), repeat=self.betti[degree]):
            yield CohClass(self, degree, coords)

    def cup(self, a: "CohClass", b: "CohClass") -> "CohClass":
        if (a.ring is not self and a.ring != self) or (b.ring is not self and b.ring != self):
            raise RingError("classes belong to a different ring")
        n = a.degree + b.degree
        if n > self.dimension:
            raise DegreeError(f"cup product of degrees {a.degree}+{b.degree} exceeds dimension {self.dimension}")
        key = (a.degree, a.coords, b.degree, b.coords)
        cached = self._cup_cache.get(key)
        if cached is not None:
            return CohClass(self, n, cached)
        out = (0,) * self.betti[n]
        for i, x in enumerate(a.coords):
            if not x:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    out = _vec_add(out, self._basis_product(a.degree, i, b.degree, j))
        self._cup_cache[key] = out
        return CohClass(self, n, out)

    def evaluate(self, top: "CohClass") -> int:
        """Pair a top-degree class with the fundamental class."""
        if top.degree != self.dimension:
            raise DegreeError(f"evaluate needs degree {self.dimension}, got {top.degree}")
        return sum(f * c for f, c in zip(self.fundamental, top.coords)) & 1

    def duality_matrix(self, p: int) -> list[list[int]]:
        q = self.dimension - p
        return [
            [self.evaluate(self.basis(p, i) * self.basis(q, j)) if self.betti[q] else 0 for j in range(self.betti[q])]
            for i in range(self.betti[p])
        ]

    # -- labels ---------------------------------------------------------

    def parse_class(self, text: str, degree: int | None = None) -> "CohClass":
        """Parse ``l1+l2`` / ``l1^l2`` / ``0`` into a class.

        A term is either a basis label or a ``^``-separated cup product of
        basis labels.
        """
        text = text.strip()
        if text == "0":
            if degree is None:
                raise RingError("degree of the zero class is ambiguous")
            return self.zero(degree)
        total = None
        for term in text.split("+"):
            term = term.strip()
            if not term:
                raise RingError(f"empty term in {text!r}")
            if term in self._label_index:
                cls = self.basis(*self._label_index[term])
            else:
                cls = None
                for factor in term.split("^"):
                    factor = factor.strip()
                    if factor not in self._label_index:
                        raise RingError(f"unknown basis label {factor!r}")
                    b = self.basis(*self._label_index[factor])
                    cls = b if cls is None else cls * b
            total = cls if total is None else total + cls
        if degree is not None and total.degree != degree:
            raise DegreeError(f"{text!r} has degree {total.degree}, expected {degree}")
        return total

    def format_class(self, c: "CohClass") -> str:
        names = [self.labels[c.degree][k] for k, x in enumerate(c.coords) if x]
        return "+".join(names) if names else "0"

    # -- documents ------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "dimension": self.dimension,
            "betti": list(self.betti),
            "labels": [list(n) for n in self.labels],
            "cup": [
                {"deg_i": di, "deg_j": dj, "i": i, "j": j, "result_coords": list(coords)}
                for (di, dj, i, j), coords in self.products
            ],
            "fundamental_coords": list(self.fundamental),
        }


@dataclass(frozen=True)
class CohClass:
    ring: CohomologyRing = field(repr=False)
    degree: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.degree <= self.ring.dimension:
            raise DegreeError(f"degree {self.degree} out of range")
        if len(self.coords) != self.ring.betti[self.degree]:
            raise RingError(f"coords length {len(self.coords)} != b{self.degree} = {self.ring.betti[self.degree]}")

    def __add__(self, other: "CohClass") -> "CohClass":
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingError("classes belong to different rings")
        if other.degree != self.degree:
            raise DegreeError("cannot add classes of different degree")
        return CohClass(self.ring, self.degree, _vec_add(self.coords, other.coords))

    __sub__ = __add__

    def __mul__(self, other: "CohClass") -> "CohClass":
        return self.ring.cup(self, other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return self.ring.format_class(self)


def cup(ring: CohomologyRing, a: CohClass, b: CohClass) -> CohClass:
    return ring.cup(a, b)


def evaluate(ring: CohomologyRing, top: CohClass) -> int:
    return ring.evaluate(top)


# -- catalog ----------------------------------------------------------------


def _elementary(dimension: int, betti, labels, products=None):
    # Factor rings for Kunneth products; not necessarily of dimension 2 or 3.
    return CohomologyRing(
        dimension=dimension,
        betti=tuple(betti),
        labels=tuple(tuple(x) for x in labels),
        products=tuple(sorted((products or {}).items())),
        fundamental=(1,),
    )


def circle(label="l") -> CohomologyRing:
    return _elementary(1, (1, 1), (("1",), (label,)))


def sphere2(label="u") -> CohomologyRing:
    return _elementary(2, (1, 0, 1), (("1",), (), (label,)))


def _join(a: str, b: str) -> str:
    if a == "1":
        return b
    if b == "1":
        return a
    return f"{a}^{b}"


def kunneth(r1: CohomologyRing, r2: CohomologyRing, name="") -> CohomologyRing:
    """Z/2 Kunneth product ring.  No signs appear in characteristic 2."""
    d = r1.dimension + r2.dimension
    # basis[n] = list of (p, a, q, b) with p + q = n; p runs high to low so
    # the first factor's generators come first.
    basis = []
    for n in range(d + 1):
        items = []
        for p in range(min(n, r1.dimension), -1, -1):
            q = n - p
            if q > r2.dimension:
                continue
            for a in range(r1.betti[p]):
                for b in range(r2.betti[q]):
                    items.append((p, a, q, b))
        basis.append(items)
    position = {(n, item): k for n, items in enumerate(basis) for k, item in enumerate(items)}
    labels = [[_join(r1.labels[p][a], r2.labels[q][b]) for (p, a, q, b) in items] for items in basis]

    products = {}
    for n1 in range(1, d + 1):
        for n2 in range(1, d + 1 - n1):
            for i, (p1, a1, q1, b1) in enumerate(basis[n1]):
                for j, (p2, a2, q2, b2) in enumerate(basis[n2]):
                    if p1 + p2 > r1.dimension or q1 + q2 > r2.dimension:
                        continue
                    x = r1._basis_product(p1, a1, p2, a2)
                    y = r2._basis_product(q1, b1, q2, b2)
                    coords = [0] * len(basis[n1 + n2])
                    for s, xs in enumerate(x):
                        for t, yt in enumerate(y):
                            if xs and yt:
                                k = position[(n1 + n2, (p1 + p2, s, q1 + q2, t))]
                                coords[k] ^= 1
                    if any(coords):
                        products[(n1, n2, i, j)] = tuple(coords)
    top = basis[d]
    fundamental = [0] * len(top)
    for k, (p, a, q, b) in enumerate(top):
        if p == r1.dimension and q == r2.dimension:
            fundamental[k] = r1.fundamental[a] & r2.fundamental[b]
    ring = CohomologyRing(
        dimension=d,
        betti=tuple(len(items) for items in basis),
        labels=tuple(tuple(x) for x in labels),
        products=tuple(sorted(products.items())),
        fundamental=tuple(fundamental),
        name=name,
    )
    if d in (2, 3):
        ring.validate()
    return ring


@functools.lru_cache(maxsize=None)
def torus(n: int) -> CohomologyRing:
    if n < 1:
        raise ValueError("torus dimension must be positive")
    ring = circle("l1")
    for k in range(2, n + 1):
        ring = kunneth(ring, circle(f"l{k}"))
    object.__setattr__(ring, "name", f"t{n}")
    return ring


def torus3() -> CohomologyRing:
    return torus(3)


def torus2() -> CohomologyRing:
    return torus(2)


@functools.lru_cache(maxsize=None)
def s1_x_s2() -> CohomologyRing:
    return kunneth(circle("l1"), sphere2("u"), name="s1xs2")


@functools.lru_cache(maxsize=None)
def surface(genus: int) -> CohomologyRing:
    """Closed orientable surface of the given genus with basis a_i, b_i, pt."""
    if genus < 0:
        raise ValueError("genus must be >= 0")
    labels = [["1"], [], ["pt"]]
    for k in range(1, genus + 1):
        labels[1] += [f"a{k}", f"b{k}"]
    products = {}
    for k in range(genus):
        products[(1, 1, 2 * k, 2 * k + 1)] = (1,)
        products[(1, 1, 2 * k + 1, 2 * k)] = (1,)
    return CohomologyRing.build(2, (1, 2 * genus, 1), labels, products, (1,), name=f"surface{genus}")


def restrict_to_subtorus(c: CohClass, drop: int) -> CohClass:
    """Pull a class on the n-torus back to the (n-1)-torus obtained by
    fixing coordinate ``drop`` (1-based).

    Works on the labels of :func:`torus`: basis monomials containing
    ``l<drop>`` restrict to zero, the rest keep their factors.
    """
    src = c.ring
    n = src.dimension
    keep = [k for k in range(1, n + 1) if k != drop]
    rename = {f"l{k}": f"l{i}" for i, k in enumerate(keep, start=1)}
    target = torus(n - 1)
    out = target.zero(c.degree) if c.degree <= target.dimension else None
    for k, x in enumerate(c.coords):
        if not x:
            continue
        factors = src.labels[c.degree][k].split("^")
        if f"l{drop}" in factors:
            continue
        if out is None:
            raise DegreeError("class has no lower-dimensional image")
        out = out + target.parse_class("^".join(rename[f] for f in factors), c.degree)
    if out is None:
        raise DegreeError("class has no lower-dimensional image")
    return out


CATALOG = {
    "t3": torus3,
    "t2": torus2,
    "s1xs2": s1_x_s2,
}


def ring_by_name(name: str) -> CohomologyRing:
    """Catalog lookup; also accepts ``surface:<g>`` and ``t<n>`` for n = 2, 3."""
    key = name.strip().lower()
    if key in CATALOG:
        return CATALOG[key]()
    if key.startswith("surface:"):
        return surface(int(key.split(":", 1)[1]))
    raise RingError(f"unknown ring {name!r}")


# -- documents ----------------------------------------------------------------

_FIELDS = {"dimension", "betti", "labels", "cup", "fundamental_coords"}
_CUP_FIELDS = {"deg_i", "deg_j", "i", "j", "result_coords"}


def _expect_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise RingSchemaError(f"{what} must be an integer")
    return value


def _expect_bits(value, what):
    if not isinstance(value, list):
        raise RingSchemaError(f"{what} must be an array")
    for v in value:
        if _expect_int(v, what) not in (0, 1):
            raise RingSchemaError(f"{what} entries must be 0 or 1")
    return value


def load_ring(document) -> CohomologyRing:
    """Validate and build a ring from a JSON string or decoded mapping."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise RingSchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise RingSchemaError("ring document must be an object")
    unknown = set(document) - _FIELDS
    if unknown:
        raise RingSchemaError(f"unknown fields: {sorted(unknown)}")
    missing = _FIELDS - set(document)
    if missing:
        raise RingSchemaError(f"missing fields: {sorted(missing)}")
    dim = _expect_int(document["dimension"], "dimension")
    betti = document["betti"]
    if not isinstance(betti, list):
        raise RingSchemaError("betti must be an array")
    betti = [_expect_int(b, "betti") for b in betti]
    labels = document["labels"]
    if not isinstance(labels, list) or not all(isinstance(n, list) for n in labels):
        raise RingSchemaError("labels must be an array of arrays")
    for names in labels:
        for s in names:
            if not isinstance(s, str) or not s or "+" in s or s.strip() != s or s == "0":
                raise RingSchemaError(f"bad basis label {s!r}")
    cup_entries = document["cup"]
    if not isinstance(cup_entries, list):
        raise RingSchemaError("cup must be an array")
    products = {}
    for entry in cup_entries:
        if not isinstance(entry, dict) or set(entry) != _CUP_FIELDS:
            raise RingSchemaError(f"cup entries need exactly the fields {sorted(_CUP_FIELDS)}")
        key = tuple(_expect_int(entry[f], f) for f in ("deg_i", "deg_j", "i", "j"))
        if key in products:
            raise RingSchemaError(f"duplicate cup entry {key}")
        products[key] = tuple(_expect_bits(entry["result_coords"], "result_coords"))
    fundamental = _expect_bits(document["fundamental_coords"], "fundamental_coords")
    return CohomologyRing.build(dim, betti, labels, products, fundamental)


def dump_ring(ring: CohomologyRing) -> str:
    return json.dumps(ring.to_document(), indent=2, sort_keys=True) + "\n"
