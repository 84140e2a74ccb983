"""Finite-level root data for the classical families A, B, C, D.

Weights are tuples of :class:`fractions.Fraction` in epsilon coordinates.
A Borel subalgebra containing the fixed Cartan is given by a linear order on
the weights of the natural representation (:class:`LinearOrder`).  Every
order-dependent computation is done by moving to the *standard frame* of the
order, where the positive roots are the textbook ones:

    standard coordinate k  <->  sign(o_k) * eps_{|o_k|}

Weyl group elements are signed permutations: ``w.images[i] = s * (j + 1)``
means ``w(eps_{i+1}) = s * eps_{j+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

FAMILIES = ("A", "B", "C", "D")

Weight = tuple  # tuple[Fraction, ...]


class ValidationError(ValueError):
    """Malformed input data (orders, weights, Weyl elements, maps)."""


class PreconditionError(ValueError):
    """A well-formed input that violates an operation's precondition."""


@dataclass(frozen=True)
class RootSystemLevel:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if self.rank < 1 or (self.family == "D" and self.rank < 2):
            raise ValidationError(f"rank {self.rank} not allowed for family {self.family}")

    @property
    def dim(self) -> int:
        """Number of epsilon coordinates."""
        return self.rank + 1 if self.family == "A" else self.rank

    def __str__(self):
        return f"{self.family}{self.rank}"


def _frac(x) -> Fraction:
    f = Fraction(x)
    if 2 % f.denominator:
        raise ValidationError(f"coordinate {x!r} has denominator {f.denominator}, must divide 2")
    return f


def eps_weight(coords: Iterable, level: RootSystemLevel | None = None) -> Weight:
    """Validate and normalise a weight given in epsilon coordinates."""
    w = tuple(_frac(c) for c in coords)
    if level is not None:
        if len(w) != level.dim:
            raise ValidationError(f"weight has {len(w)} coordinates, {level} needs {level.dim}")
        if level.family == "A" and any((a - w[0]).denominator != 1 for a in w):
            raise ValidationError("type A weight coordinates must share one denominator")
    return w


def zero_weight(level: RootSystemLevel) -> Weight:
    return (Fraction(0),) * level.dim


def add(a: Sequence, b: Sequence) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Weight:
    return tuple(c * x for x in a)


def inner(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def pairing(lam: Sequence, alpha: Sequence) -> Fraction:
    """``2(lam, alpha) / (alpha, alpha)`` with orthonormal epsilons."""
    if len(lam) != len(alpha):
        raise ValidationError("pairing of weights of different lengths")
    norm = inner(alpha, alpha)
    if norm == 0:
        raise ValidationError("pairing against the zero vector")
    return 2 * inner(lam, alpha) / norm


def weights_equal(family: str, a: Sequence, b: Sequence) -> bool:
    """Equality of weights; type A compares modulo the all-ones vector."""
    if len(a) != len(b):
        return False
    if family == "A":
        d = a[0] - b[0]
        return all(x - y == d for x, y in zip(a, b))
    return tuple(a) == tuple(b)


def normalize_weight(family: str, a: Sequence) -> Weight:
    """Canonical representative: type A weights are shifted so the last coordinate is 0."""
    if family == "A":
        return tuple(Fraction(x) - Fraction(a[-1]) for x in a)
    return tuple(Fraction(x) for x in a)


# --------------------------------------------------------------------------
# Weyl group elements


@dataclass(frozen=True)
class WeylElt:
    images: tuple  # tuple[int, ...], signed 1-based targets

    def __post_init__(self):
        seen = sorted(abs(x) for x in self.images)
        if seen != list(range(1, len(self.images) + 1)):
            raise ValidationError(f"{self.images} is not a signed permutation")

    @classmethod
    def identity(cls, m: int) -> "WeylElt":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> "WeylElt":
        im = list(range(1, m + 1))
        im[i - 1], im[j - 1] = j, i
        return cls(tuple(im))

    @property
    def size(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(x == i + 1 for i, x in enumerate(self.images))

    def sign_flips(self) -> int:
        return sum(1 for x in self.images if x < 0)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        """Composition ``self o other``."""
        if other.size != self.size:
            raise ValidationError("composing Weyl elements of different sizes")
        out = []
        for x in other.images:
            y = self.images[abs(x) - 1]
            out.append(y if x > 0 else -y)
        return WeylElt(tuple(out))

    def inverse(self) -> "WeylElt":
        out = [0] * self.size
        for i, x in enumerate(self.images):
            out[abs(x) - 1] = (i + 1) if x > 0 else -(i + 1)
        return WeylElt(tuple(out))

    def act(self, lam: Sequence) -> Weight:
        out = [Fraction(0)] * self.size
        for i, x in enumerate(self.images):
            out[abs(x) - 1] = lam[i] if x > 0 else -lam[i]
        return tuple(out)

    def one_line(self) -> str:
        return "[" + " ".join(str(x) for x in self.images) + "]"


def validate_weyl(w: WeylElt, level: RootSystemLevel) -> None:
    if w.size != level.dim:
        raise ValidationError(f"Weyl element of size {w.size} used at {level}")
    flips = w.sign_flips()
    if level.family == "A" and flips:
        raise ValidationError("type A Weyl elements cannot flip signs")
    if level.family == "D" and flips % 2:
        raise ValidationError("type D Weyl elements need an even number of sign flips")


# --------------------------------------------------------------------------
# Linear orders


@dataclass(frozen=True)
class LinearOrder:
    """Top-to-bottom arrangement of natural-representation weights.

    Type A: a permutation of ``1..r+1``.  Types B/C/D: signed indices listing
    the positive half of an order compatible with ``x -> -x``.  Type D orders
    are stored with the last sign normalised to ``+``.
    """

    family: str
    entries: tuple

    def __post_init__(self):
        ent = tuple(int(x) for x in self.entries)
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if sorted(abs(x) for x in ent) != list(range(1, len(ent) + 1)):
            raise ValidationError(f"order {ent} must use each index 1..{len(ent)} exactly once")
        if self.family == "A" and any(x < 0 for x in ent):
            raise ValidationError("type A orders are unsigned")
        if self.family == "D" and ent and ent[-1] < 0:
            ent = ent[:-1] + (-ent[-1],)
        object.__setattr__(self, "entries", ent)

    @classmethod
    def standard(cls, level: RootSystemLevel) -> "LinearOrder":
        return cls(level.family, tuple(range(1, level.dim + 1)))

    def frame(self) -> WeylElt:
        """Signed permutation taking epsilon coordinates to standard coordinates."""
        out = [0] * len(self.entries)
        for k, x in enumerate(self.entries):
            out[abs(x) - 1] = (k + 1) if x > 0 else -(k + 1)
        return WeylElt(tuple(out))

    def heights(self) -> dict:
        """Map signed weight label (``+i``/``-i``, and ``0`` for type B) to its height."""
        m = len(self.entries)
        h = {}
        for k, x in enumerate(self.entries):
            h[x] = m - k
            if self.family != "A":
                h[-x] = -(m - k)
        if self.family == "B":
            h[0] = 0
        return h


def check_order(level: RootSystemLevel, order: LinearOrder) -> None:
    if order.family != level.family or len(order.entries) != level.dim:
        raise ValidationError(f"order {order.entries} does not fit {level}")


def to_standard(lam: Sequence, order: LinearOrder) -> Weight:
    return order.frame().act(lam)


def from_standard(mu: Sequence, order: LinearOrder) -> Weight:
    return order.frame().inverse().act(mu)


def conj_to_standard(w: WeylElt, order: LinearOrder) -> WeylElt:
    p = order.frame()
    return p * w * p.inverse()


def conj_from_standard(w: WeylElt, order: LinearOrder) -> WeylElt:
    p = order.frame()
    return p.inverse() * w * p


# --------------------------------------------------------------------------
# Roots in the standard frame


def _unit(m, i, c=1):
    v = [Fraction(0)] * m
    v[i] = Fraction(c)
    return v


def standard_positive_roots(family: str, m: int) -> list:
    roots = []
    for i, j in combinations(range(m), 2):
        v = _unit(m, i)
        v[j] = Fraction(-1)
        roots.append(tuple(v))
        if family != "A":
            v = _unit(m, i)
            v[j] = Fraction(1)
            roots.append(tuple(v))
    if family == "B":
        roots.extend(tuple(_unit(m, i)) for i in range(m))
    elif family == "C":
        roots.extend(tuple(_unit(m, i, 2)) for i in range(m))
    return roots


def standard_simple_roots(family: str, m: int) -> list:
    out = []
    for i in range(m - 1):
        v = _unit(m, i)
        v[i + 1] = Fraction(-1)
        out.append(tuple(v))
    if family == "B":
        out.append(tuple(_unit(m, m - 1)))
    elif family == "C":
        out.append(tuple(_unit(m, m - 1, 2)))
    elif family == "D":
        v = _unit(m, m - 2)
        v[m - 1] = Fraction(1)
        out.append(tuple(v))
    return out


def standard_rho(family: str, m: int) -> Weight:
    offset = {"A": Fraction(m - 1, 2), "B": Fraction(2 * m - 1, 2),
              "C": Fraction(m), "D": Fraction(m - 1)}[family]
    return tuple(offset - i for i in range(m))


def _is_positive_standard(v: Sequence) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def simple_roots(level: RootSystemLevel, order: LinearOrder) -> list:
    check_order(level, order)
    return [from_standard(a, order) for a in standard_simple_roots(level.family, level.dim)]


def positive_roots(level: RootSystemLevel, order: LinearOrder) -> list:
    check_order(level, order)
    return [from_standard(a, order) for a in standard_positive_roots(level.family, level.dim)]


def is_positive_root(alpha: Sequence, order: LinearOrder) -> bool:
    return _is_positive_standard(to_standard(alpha, order))


def rho(level: RootSystemLevel, order: LinearOrder) -> Weight:
    check_order(level, order)
    return from_standard(standard_rho(level.family, level.dim), order)


def is_dominant(lam: Sequence, level: RootSystemLevel, order: LinearOrder) -> bool:
    return all(pairing(lam, a) >= 0 for a in simple_roots(level, order))


def inversion_set(w: WeylElt, level: RootSystemLevel, order: LinearOrder) -> list:
    """Positive roots sent to negative roots by ``w``."""
    validate_weyl(w, level)
    ws = conj_to_standard(w, order)
    return [from_standard(a, order)
            for a in standard_positive_roots(level.family, level.dim)
            if not _is_positive_standard(ws.act(a))]


def length(w: WeylElt, level: RootSystemLevel, order: LinearOrder) -> int:
    validate_weyl(w, level)
    check_order(level, order)
    ws = conj_to_standard(w, order)
    return sum(1 for a in standard_positive_roots(level.family, level.dim)
               if not _is_positive_standard(ws.act(a)))


def reflection(alpha: Sequence) -> WeylElt:
    """The reflection along a root, as a signed permutation."""
    nz = [(i, x) for i, x in enumerate(alpha) if x]
    m = len(alpha)
    im = list(range(1, m + 1))
    if len(nz) == 1:
        i = nz[0][0]
        im[i] = -(i + 1)
    elif len(nz) == 2:
        (i, a), (j, b) = nz
        if a == -b:
            im[i], im[j] = j + 1, i + 1
        elif a == b:
            im[i], im[j] = -(j + 1), -(i + 1)
        else:
            raise ValidationError(f"{alpha} is not a root")
    else:
        raise ValidationError(f"{alpha} is not a root")
    return WeylElt(tuple(im))


def dot_action(w: WeylElt, lam: Sequence, level: RootSystemLevel, order: LinearOrder) -> Weight:
    validate_weyl(w, level)
    lam = eps_weight(lam, level)
    r = rho(level, order)
    return sub(w.act(add(lam, r)), r)


def in_long_subgroup(w: WeylElt, order: LinearOrder) -> bool:
    """Membership in the subgroup generated by long simple reflections (type B)."""
    return conj_to_standard(w, order).sign_flips() == 0


# --------------------------------------------------------------------------
# Straightening


class Singular:
    """Marker result: ``lam + rho`` lies on a wall, all cohomology vanishes."""

    def __repr__(self):
        return "Singular"

    def __eq__(self, other):
        return isinstance(other, Singular)

    def __hash__(self):
        return hash("Singular")


SINGULAR = Singular()


@dataclass(frozen=True)
class Straightened:
    w: WeylElt
    degree: int
    dominant: Weight


def is_singular_slow(lam: Sequence, level: RootSystemLevel, order: LinearOrder) -> bool:
    """Wall test by iterating every positive root."""
    v = add(lam, rho(level, order))
    return any(inner(v, a) == 0 for a in positive_roots(level, order))


def _singular_fast(family: str, nu: Sequence) -> bool:
    if family == "A":
        return len(set(nu)) < len(nu)
    absval = [abs(x) for x in nu]
    if len(set(absval)) < len(absval):
        return True
    return family in ("B", "C") and 0 in absval


def is_singular(lam: Sequence, level: RootSystemLevel, order: LinearOrder) -> bool:
    return _singular_fast(level.family, to_standard(add(lam, rho(level, order)), order))


def straighten(lam: Sequence, level: RootSystemLevel, order: LinearOrder) -> Union[Singular, Straightened]:
    """Find the unique ``w`` with ``w . lam`` dominant, or report a singular weight."""
    lam = eps_weight(lam, level)
    check_order(level, order)
    fam, m = level.family, level.dim
    srho = standard_rho(fam, m)
    nu = add(to_standard(lam, order), srho)
    if _singular_fast(fam, nu):
        return SINGULAR
    # position i of nu must land at rank-position of |nu_i|
    signs = [1] * m
    if fam != "A":
        signs = [-1 if x < 0 else 1 for x in nu]
    key = [s * x for s, x in zip(signs, nu)]
    ranking = sorted(range(m), key=lambda i: key[i], reverse=True)
    target = [0] * m
    for pos, i in enumerate(ranking):
        target[i] = pos
    if fam == "D" and sum(1 for s in signs if s < 0) % 2:
        last = ranking[-1]
        signs[last] = -signs[last]
    ws = WeylElt(tuple(signs[i] * (target[i] + 1) for i in range(m)))
    w = conj_from_standard(ws, order)
    dominant = from_standard(sub(ws.act(nu), srho), order)
    return Straightened(w=w, degree=length(w, level, order), dominant=dominant)


# --------------------------------------------------------------------------
# Fundamental coordinates


def to_fundamental(lam: Sequence, level: RootSystemLevel, order: LinearOrder) -> tuple:
    return tuple(pairing(lam, a) for a in simple_roots(level, order))


def from_fundamental(coeffs: Sequence, level: RootSystemLevel, order: LinearOrder) -> Weight:
    """Weight with the given simple-root pairings (type A: last standard coordinate 0)."""
    check_order(level, order)
    a = [Fraction(c) for c in coeffs]
    r, fam = level.rank, level.family
    if len(a) != r:
        raise ValidationError(f"{level} has {r} fundamental coordinates, got {len(a)}")
    if fam == "A":
        mu = [sum(a[k:], Fraction(0)) for k in range(r + 1)]
    elif fam == "B":
        mu = [sum(a[k:r - 1], Fraction(0)) + a[r - 1] / 2 for k in range(r)]
    elif fam == "C":
        mu = [sum(a[k:], Fraction(0)) for k in range(r)]
    else:
        half = (a[r - 2] + a[r - 1]) / 2
        mu = [sum(a[k:r - 2], Fraction(0)) + half for k in range(r - 2)]
        mu += [half, (a[r - 1] - a[r - 2]) / 2]
    return from_standard(tuple(mu), order)
