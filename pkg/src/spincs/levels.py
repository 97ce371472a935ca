"""Virtual real representations of SU2 and SO3 and the level group E^4(BG).

Weights are recorded on the standard maximal circle in SU2 units: the
defining representation of SU2 has weights +-1 and the vector
representation of SO3 has weights 0, +-2.

For a virtual rep rho the invariant form on the coweight lattice is

    <eta, eta>_rho = -(1/8 pi^2) Tr(rho(eta)^2) = (1/2) sum_w <w, eta>^2

over the weights of rho (x) C.  The lattice generator of SU2 pairs with
weight w to w, that of SO3 (half as long) to w/2.  In these units the
pairing equals p1 of rho restricted to the maximal torus, so

    SU2:  E^4 = Z.1',  p1(1') = -2 c2, pairing(1') = 2
    SO3:  E^4 = Z.1,   p1(1) = p1 generator, w2(1) != 0, pairing(1) = 1
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

SU2 = "SU2"
SO3 = "SO3"
GROUPS = (SU2, SO3)


class RepError(ValueError):
    pass


class LevelError(ValueError):
    pass


def _group(name: str) -> str:
    key = name.strip().upper().replace("_", "").replace("(", "").replace(")", "")
    if key in ("SU2", SO3):
        return key
    raise RepError(f"unsupported group {name!r}; only SU2 and SO3 are modelled")


@dataclass(frozen=True, order=True)
class Irrep:
    """Irreducible summand: the complex irrep with the given weight string,
    either already real (real type) or realified."""

    weights: tuple[int, ...]
    realified: bool = False

    def __post_init__(self):
        n = len(self.weights)
        if n == 0:
            raise RepError("an irreducible needs at least one weight")
        expected = tuple(range(n - 1, -n, -2))
        if tuple(sorted(self.weights, reverse=True)) != expected:
            raise RepError(f"weights {self.weights} are not an SU2 weight string")
        object.__setattr__(self, "weights", expected)
        if not self.realified and n % 2 == 0:
            raise RepError(f"the {n}-dimensional irrep is quaternionic; it only exists realified over R")

    @classmethod
    def of_dim(cls, n: int, realified: bool | None = None) -> "Irrep":
        """Complex irrep of dimension n; real form when n is odd unless asked otherwise."""
        if realified is None:
            realified = n % 2 == 0
        return cls(tuple(range(n - 1, -n, -2)), realified)

    @property
    def real_dim(self) -> int:
        return len(self.weights) * (2 if self.realified else 1)

    def complex_weights(self) -> tuple[int, ...]:
        if self.realified:
            return self.weights + tuple(-w for w in self.weights)
        return self.weights

    @property
    def name(self) -> str:
        n = len(self.weights)
        if n == 1 and not self.realified:
            return "1"
        return f"rV{n}" if self.realified else f"V{n}"


TRIVIAL = Irrep((0,))


def _term_key(term):
    irrep = term[0]
    return (irrep == TRIVIAL, len(irrep.weights), irrep.realified)


@dataclass(frozen=True)
class VirtualRep:
    group: str
    terms: tuple[tuple[Irrep, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "group", _group(self.group))
        merged: dict[Irrep, int] = {}
        for irrep, mult in self.terms:
            if not isinstance(irrep, Irrep):
                raise RepError(f"not an irreducible: {irrep!r}")
            if self.group == SO3 and any(w % 2 for w in irrep.weights):
                raise RepError(f"{irrep.name} does not factor through SO3")
            merged[irrep] = merged.get(irrep, 0) + int(mult)
        object.__setattr__(
            self, "terms", tuple(sorted(((i, m) for i, m in merged.items() if m), key=_term_key))
        )

    @classmethod
    def of(cls, group: str, items: Iterable[tuple[Irrep, int]] = ()) -> "VirtualRep":
        return cls(group, tuple(items))

    @classmethod
    def trivial(cls, group: str, n: int = 1) -> "VirtualRep":
        return cls(group, ((TRIVIAL, n),))

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        if other.group != self.group:
            raise RepError("cannot add representations of different groups")
        return VirtualRep(self.group, self.terms + other.terms)

    def __neg__(self) -> "VirtualRep":
        return VirtualRep(self.group, tuple((i, -m) for i, m in self.terms))

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __mul__(self, k: int) -> "VirtualRep":
        return VirtualRep(self.group, tuple((i, k * m) for i, m in self.terms))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return f"{self.group.lower()}: 0"
        parts = []
        for irrep, m in self.terms:
            sign = "-" if m < 0 else "+"
            body = irrep.name if abs(m) == 1 else f"{abs(m)}*{irrep.name}"
            if irrep == TRIVIAL:
                body = str(abs(m))
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return f"{self.group.lower()}: {text}"


def restrict_to_su2(rho: VirtualRep) -> VirtualRep:
    """Pull an SO3 representation back along the double cover SU2 -> SO3."""
    if rho.group != SO3:
        raise RepError("restrict_to_su2 expects an SO3 representation")
    return VirtualRep(SU2, rho.terms)


def rank(rho: VirtualRep) -> int:
    return sum(m * irrep.real_dim for irrep, m in rho.terms)


def _pairing_unit(rho: VirtualRep) -> Fraction:
    # lattice generator of SO3 is half that of SU2
    scale = Fraction(1, 2) if rho.group == SU2 else Fraction(1, 8)
    total = 0
    for irrep, m in rho.terms:
        total += m * sum(w * w for w in irrep.complex_weights())
    return scale * total


def pairing(rho: VirtualRep, m: int, n: int) -> Fraction:
    """<m eta0, n eta0>_rho for the coweight lattice generator eta0."""
    return m * n * _pairing_unit(rho)


def integrality_check(rho: VirtualRep) -> bool:
    return pairing(rho, 1, 1).denominator == 1


def w2_of_rep(rho: VirtualRep) -> int:
    """Second Stiefel-Whitney class of rho in H^2(BG; Z/2).

    Restricted to the maximal circle (injective on H^2 for SO3) a real rep
    splits into rotation planes of winding w/2 for each positive weight w of
    its complexification; w2 is the sum of the windings mod 2.
    """
    if rho.group == SU2:
        return 0
    total = 0
    for irrep, m in rho.terms:
        total += m * sum(w // 2 for w in irrep.complex_weights() if w > 0)
    return total % 2


@dataclass(frozen=True)
class LevelClass:
    """An element of E^4(BG) for G = SU2 or SO3.

    ``p1`` is measured against c2 for SU2 and against the Pontryagin
    generator of H^4(BSO3) for SO3.
    """

    group: str
    coeff: int
    p1: int
    w2: int

    def __post_init__(self):
        object.__setattr__(self, "group", _group(self.group))
        expected = LevelClass._coords(self.group, self.coeff)
        if (self.p1, self.w2 % 2) != expected:
            raise LevelError(f"(p1, w2) = ({self.p1}, {self.w2}) does not match {self.coeff} on {self.group}")
        object.__setattr__(self, "w2", self.w2 % 2)

    @staticmethod
    def _coords(group: str, k: int) -> tuple[int, int]:
        if group == SU2:
            return -2 * k, 0
        return k, k % 2

    @classmethod
    def from_coeff(cls, group: str, k: int) -> "LevelClass":
        group = _group(group)
        p1, w2 = cls._coords(group, k)
        return cls(group, k, p1, w2)

    @classmethod
    def from_p1_w2(cls, group: str, p1: int, w2: int) -> "LevelClass":
        """Invert (p1, w2), which is injective on E^4(BG) for connected G."""
        group = _group(group)
        w2 %= 2
        if group == SU2:
            if w2 or p1 % 2:
                raise LevelError(f"(p1, w2) = ({p1}, {w2}) is not in the image of E^4(BSU2)")
            return cls(group, -p1 // 2, p1, 0)
        if p1 % 2 != w2:
            raise LevelError(f"(p1, w2) = ({p1}, {w2}) is not in the image of E^4(BSO3)")
        return cls(group, p1, p1, w2)

    def __add__(self, other: "LevelClass") -> "LevelClass":
        if other.group != self.group:
            raise LevelError("levels of different groups")
        return LevelClass.from_coeff(self.group, self.coeff + other.coeff)

    def __mul__(self, n: int) -> "LevelClass":
        return LevelClass.from_coeff(self.group, n * self.coeff)

    __rmul__ = __mul__

    @property
    def generator(self) -> str:
        return "1'" if self.group == SU2 else "1"

    def __str__(self):
        return f"{self.coeff}*{self.generator}"


def lam(rho: VirtualRep) -> LevelClass:
    """The level lambda(rho) in E^4(BG)."""
    r = rank(rho)
    if r != 0:
        warnings.warn(f"rank(rho) = {r} != 0: the action then depends on the metric", stacklevel=2)
    p = pairing(rho, 1, 1)
    if p.denominator != 1:
        raise LevelError(f"pairing {p} is not integral; malformed representation")
    # pairing(rho, 1, 1) is p1 restricted to the torus: x^2 = -c2 for SU2,
    # the Pontryagin generator itself for SO3.
    p1 = -int(p) if rho.group == SU2 else int(p)
    return LevelClass.from_p1_w2(rho.group, p1, w2_of_rep(rho))


# `lambda` is a keyword; this alias keeps the natural name available.
lambda_ = lam


def pullback_beta(x: LevelClass) -> LevelClass:
    """B_beta^* : E^4(BSO3) -> E^4(BSU2), k.1 -> 2k.1'."""
    if x.group != SO3:
        raise LevelError("pullback_beta is defined on SO3 levels")
    y = LevelClass.from_coeff(SU2, 2 * x.coeff)
    # on H^4 the generator p1 of BSO3 pulls back to -4 c2
    assert y.p1 == -4 * x.p1
    return y


def p1_of_integral_image(k: int, group: str = SU2) -> int:
    """H^4(BG) -> E^4(BG) -> H^4(BG) is multiplication by 2."""
    _group(group)
    return 2 * k


# -- expression grammar --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokens(text):
    out = []
    for num, name, sym in _TOKEN.findall(text):
        if num:
            out.append(("int", int(num)))
        elif name:
            out.append(("name", name))
        elif sym.strip():
            if sym not in "+-*()":
                raise RepError(f"unexpected character {sym!r}")
            out.append((sym, sym))
    return out


def named_irrep(group: str, name: str) -> Irrep:
    group = _group(group)
    key = name.lower()
    if group == SU2 and key == "std":
        return Irrep.of_dim(2)
    if (group == SU2 and key == "adj") or (group == SO3 and key == "id"):
        return Irrep.of_dim(3)
    m = re.fullmatch(r"(r?)v(\d+)", key)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise RepError("irrep dimension must be positive")
        return Irrep.of_dim(n, True if m.group(1) else None)
    raise RepError(f"unknown irreducible {name!r} for {group}")


def parse_rep(text: str, group: str | None = None) -> VirtualRep:
    """Parse e.g. ``"su2: std - 4"`` or ``"so3: 3*(id - 3)"``.

    Terms: an integer (that many trivial summands), ``std``/``adj`` (SU2),
    ``id`` (SO3), ``V<n>`` (real form if n odd, else realified), ``rV<n>``
    (realified).  ``k*term`` and parentheses are allowed.
    """
    if ":" in text:
        head, text = text.split(":", 1)
        if group is not None and _group(head) != _group(group):
            raise RepError(f"group prefix {head!r} conflicts with {group!r}")
        group = head
    if group is None:
        raise RepError("no group given; prefix the expression with 'su2:' or 'so3:'")
    group = _group(group)
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def take(kind):
        nonlocal pos
        if peek() != kind:
            found = toks[pos][1] if pos < len(toks) else "end of input"
            raise RepError(f"expected {kind!r}, found {found!r}")
        pos += 1
        return toks[pos - 1][1]

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take(peek()) == "-" else 1
        total = term() * sign
        while peek() in ("+", "-"):
            op = take(peek())
            t = term()
            total = total + t if op == "+" else total - t
        return total

    def term():
        if peek() == "int":
            k = take("int")
            if peek() == "*":
                take("*")
                return factor() * k
            return VirtualRep.trivial(group, k)
        return factor()

    def factor():
        if peek() == "(":
            take("(")
            inner = expr()
            take(")")
            return inner
        if peek() == "int":
            return VirtualRep.trivial(group, take("int"))
        name = take("name")
        return VirtualRep(group, ((named_irrep(group, name), 1),))

    if not toks:
        raise RepError("empty representation expression")
    result = expr()
    if pos != len(toks):
        raise RepError(f"trailing input at {toks[pos][1]!r}")
    return result
