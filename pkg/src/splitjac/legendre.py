"""Legendre parameters, ramification sets on P^1, and Mobius transport.

A squarefree model y^2 = f(x) branches over the roots of f, plus infinity
when deg f is odd.  Four branch points determine a Legendre parameter up to
the six-element orbit {l, 1-l, 1/l, 1/(1-l), (l-1)/l, l/(l-1)}; the orbit
determines the j-invariant and conversely.  Mobius maps move branch points
around P^1 without changing point counts, which is how three given curves
get pasted into one cover.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ecurve import EllipticModel, count_points, j_invariant_model
from .ff import (Fel, FieldDesc, MAX_EXT_DEGREE, Poly, embed, fel_key,
                 frobenius, make_field, poly_gcd, roots_in)

_DESCENT_LIMIT = 10 ** 6
_DESCENT_MAPS: dict[tuple[int, int, int], dict[tuple, Fel]] = {}


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1 over `field`; x is None for the point at infinity."""
    field: FieldDesc
    x: Fel | None

    @staticmethod
    def finite(x: Fel) -> "ProjPoint":
        return ProjPoint(x.field, x)

    @staticmethod
    def infinity(field: FieldDesc) -> "ProjPoint":
        return ProjPoint(field, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "inf" if self.x is None else repr(self.x)


def point_key(pt: ProjPoint) -> tuple:
    """Deterministic order: finite points lex-first, infinity last."""
    return (1,) if pt.x is None else (0, pt.x.coeffs)


def point_frobenius(pt: ProjPoint, q: int) -> ProjPoint:
    if pt.x is None:
        return pt
    return ProjPoint(pt.field, frobenius(pt.x, q))


@dataclass(frozen=True)
class RamSet:
    """A finite Frobenius-trackable subset of P^1 over an ambient field."""
    field: FieldDesc
    points: frozenset

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points, key=point_key))

    def __contains__(self, pt):
        return pt in self.points

    def __or__(self, other: "RamSet") -> "RamSet":
        self._check(other)
        return RamSet(self.field, self.points | other.points)

    def __and__(self, other: "RamSet") -> "RamSet":
        self._check(other)
        return RamSet(self.field, self.points & other.points)

    def __xor__(self, other: "RamSet") -> "RamSet":
        self._check(other)
        return RamSet(self.field, self.points ^ other.points)

    def _check(self, other):
        if self.field is not other.field:
            raise ValueError("ramification sets over different ambient fields")

    def is_frobenius_stable(self, q: int) -> bool:
        return all(point_frobenius(pt, q) in self.points for pt in self.points)


def _poly_powmod(a: Poly, e: int, mod: Poly) -> Poly:
    result = Poly(mod.field, [1])
    base = a % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def splitting_degree(f: Poly, limit: int | None = None) -> int:
    """Least k such that f splits into linear factors over F_{q^k}.

    f must be squarefree.  Uses the splitting criterion f | x^(q^k) - x,
    no factorization needed.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("need a nonconstant polynomial")
    if poly_gcd(f, f.derivative()).degree != 0:
        raise ValueError("polynomial must be squarefree")
    field = f.field
    q = field.order
    x = Poly(field, [0, 1])
    for k in range(1, (limit or MAX_EXT_DEGREE) + 1):
        if field.n * k > MAX_EXT_DEGREE:
            break
        if _poly_powmod(x, q ** k, f) == x % f:
            return k
    raise ValueError("polynomial does not split within the supported range")


def common_splitting_field(polys) -> FieldDesc:
    """Smallest supported field over which every given polynomial splits."""
    polys = list(polys)
    if not polys:
        raise ValueError("no polynomials given")
    base = polys[0].field
    if any(g.field is not base for g in polys):
        raise ValueError("polynomials over different fields")
    from math import lcm
    k = lcm(*[splitting_degree(g) for g in polys])
    if base.n * k > MAX_EXT_DEGREE:
        raise ValueError("splitting field exceeds the supported range")
    return make_field(base.p, base.n * k)


def ram_set(f: Poly, ambient: FieldDesc) -> RamSet:
    """Branch locus of y^2 = f(x) as points of P^1 over `ambient`.

    The roots of f (which must be squarefree and split in `ambient`), plus
    infinity when deg f is odd.
    """
    if poly_gcd(f, f.derivative()).degree != 0:
        raise ValueError("polynomial must be squarefree")
    rts = roots_in(f, ambient)
    if len(rts) != f.degree:
        raise ValueError("polynomial does not split in the ambient field")
    pts = {ProjPoint(ambient, r) for r in rts}
    if f.degree % 2 == 1:
        pts.add(ProjPoint.infinity(ambient))
    return RamSet(ambient, frozenset(pts))


def model_ram_set(model: EllipticModel, ambient: FieldDesc | None = None) -> RamSet:
    if ambient is None:
        ambient = common_splitting_field([model.f])
    return ram_set(model.f.map_field(ambient), ambient)


# ---------------------------------------------------------------------------
# Legendre parameters

def lambda_from_points(p1: Fel, p2: Fel, p3: Fel) -> Fel:
    """Image of p3 under the affine map sending (p1, p2) to (0, 1)."""
    if p1 == p2 or p1 == p3 or p2 == p3:
        raise ValueError("points must be pairwise distinct")
    return (p3 - p1) / (p2 - p1)


def _check_lambda(lam: Fel) -> Fel:
    if lam.is_zero() or lam == lam.field.one:
        raise ValueError("Legendre parameter must avoid 0 and 1")
    return lam


def orbit(lam: Fel) -> frozenset:
    """The six-element (or smaller) orbit of lam under the S_3 action."""
    _check_lambda(lam)
    one = lam.field.one
    return frozenset({lam, one - lam, one / lam, one / (one - lam),
                      (lam - one) / lam, lam / (lam - one)})


def canonical_lambda(lam: Fel) -> Fel:
    """Lex-least representative of the orbit."""
    return min(orbit(lam), key=fel_key)


def legendre_equivalent(l1: Fel, l2: Fel) -> bool:
    if l1.field is not l2.field:
        raise ValueError("parameters over different fields")
    return l2 in orbit(l1)


def j_invariant(lam: Fel) -> Fel:
    """j of the curve y^2 = x (x - 1) (x - lam)."""
    _check_lambda(lam)
    one = lam.field.one
    num = (lam * lam - lam + one) ** 3
    den = lam * lam * (lam - one) ** 2
    return 256 * num / den


def case1_lambda(l1: Fel, l2: Fel) -> Fel:
    """Gluing parameter when two covers share a conjugate branch pair:
    the Legendre parameter of the branch set {0, 1, l1, l2}."""
    if l1.field is not l2.field:
        raise ValueError("parameters over different fields")
    _check_lambda(l1), _check_lambda(l2)
    if l1 == l2:
        raise ValueError("parameters must differ")
    return l2 * (l1.field.one - l1) / (l2 - l1)


def case2_lambda(l1: Fel, l2: Fel) -> Fel:
    """Gluing parameter when two covers share the branch pair {0, infinity}:
    the Legendre parameter of the branch set {0, l1, l2, infinity}."""
    if l1.field is not l2.field:
        raise ValueError("parameters over different fields")
    _check_lambda(l1), _check_lambda(l2)
    if l1 == l2:
        raise ValueError("parameters must differ")
    return l2 / l1


# ---------------------------------------------------------------------------
# Mobius maps

@dataclass(frozen=True)
class Mobius:
    """x -> (a x + b) / (c x + d) on P^1, with a d - b c != 0."""
    a: Fel
    b: Fel
    c: Fel
    d: Fel

    def __post_init__(self):
        fd = self.a.field
        if any(v.field is not fd for v in (self.b, self.c, self.d)):
            raise ValueError("matrix entries over different fields")
        if (self.a * self.d - self.b * self.c).is_zero():
            raise ValueError("singular matrix")

    @property
    def field(self) -> FieldDesc:
        return self.a.field

    def __call__(self, pt) -> ProjPoint:
        if isinstance(pt, Fel):
            pt = ProjPoint.finite(pt)
        if pt.field is not self.field:
            raise ValueError("point over a different field")
        if pt.is_infinity:
            if self.c.is_zero():
                return pt
            return ProjPoint(self.field, self.a / self.c)
        den = self.c * pt.x + self.d
        if den.is_zero():
            return ProjPoint.infinity(self.field)
        return ProjPoint(self.field, (self.a * pt.x + self.b) / den)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mobius(a * e + b * g, a * f + b * h,
                      c * e + d * g, c * f + d * h)

    @staticmethod
    def from_triple(src, dst) -> "Mobius":
        """The unique Mobius map taking the ordered triple src to dst."""
        ns = _normalizer(*src)
        nd = _normalizer(*dst)
        return nd.inverse().compose(ns)


def _as_point(v) -> ProjPoint:
    if isinstance(v, ProjPoint):
        return v
    if isinstance(v, Fel):
        return ProjPoint.finite(v)
    raise TypeError(f"not a point of P^1: {v!r}")


def _normalizer(p, q, r) -> Mobius:
    """The Mobius map sending (p, q, r) to (0, 1, infinity)."""
    p, q, r = _as_point(p), _as_point(q), _as_point(r)
    fd = p.field
    if q.field is not fd or r.field is not fd:
        raise ValueError("points over different fields")
    if len({point_key(p), point_key(q), point_key(r)}) != 3:
        raise ValueError("points must be pairwise distinct")
    one, zero = fd.one, fd.zero
    if p.is_infinity:
        return Mobius(zero, q.x - r.x, one, -r.x)
    if q.is_infinity:
        return Mobius(one, -p.x, one, -r.x)
    if r.is_infinity:
        return Mobius(one, -p.x, zero, q.x - p.x)
    return Mobius(q.x - r.x, -p.x * (q.x - r.x),
                  q.x - p.x, -r.x * (q.x - p.x))


def transport_model(model: EllipticModel, mob: Mobius) -> EllipticModel:
    """Push y^2 = f(x) through x -> mob(x).

    The result has branch locus mob(branch locus of f) and the same point
    count over every extension: clearing denominators uses an even power of
    (c x + d), a perfect square that does not disturb square classes.
    """
    if mob.field is not model.base:
        raise ValueError("map and model over different fields")
    inv = mob.inverse()
    fd = model.base
    num = Poly(fd, [inv.b, inv.a])
    den = Poly(fd, [inv.d, inv.c])
    f = model.f
    m = (f.degree + 1) // 2
    den_pows = [Poly(fd, [1])]
    for _ in range(2 * m):
        den_pows.append(den_pows[-1] * den)
    g = Poly(fd, [])
    num_pow = Poly(fd, [1])
    for i, coeff in enumerate(f.coeffs):
        if not coeff.is_zero():
            g = g + coeff * num_pow * den_pows[2 * m - i]
        num_pow = num_pow * num
    return EllipticModel(g)


# ---------------------------------------------------------------------------
# descent from an extension back into the base field

def descend_element(u: Fel, sub: FieldDesc) -> Fel | None:
    """The preimage of u under embed(., u.field), or None if u lies outside
    the embedded copy of `sub`."""
    sup = u.field
    if sup is sub:
        return u
    if sub.p != sup.p or sup.n % sub.n != 0:
        raise ValueError("not a subfield")
    if sub.order > _DESCENT_LIMIT:
        raise ValueError("subfield too large for descent table")
    key = (sub.p, sub.n, sup.n)
    table = _DESCENT_MAPS.get(key)
    if table is None:
        table = {embed(v, sup).coeffs: v for v in sub.elements()}
        _DESCENT_MAPS[key] = table
    return table.get(u.coeffs)


def descend_poly(g: Poly, sub: FieldDesc) -> Poly | None:
    coeffs = []
    for c in g.coeffs:
        v = descend_element(c, sub)
        if v is None:
            return None
        coeffs.append(v)
    return Poly(sub, coeffs)


# ---------------------------------------------------------------------------
# model-level invariants and alignment

def model_lambda(model: EllipticModel) -> Fel:
    """Canonical Legendre parameter of the model's branch quadruple,
    over the splitting field of f."""
    ambient = common_splitting_field([model.f])
    pts = sorted(ram_set(model.f.map_field(ambient), ambient), key=point_key)
    mob = Mobius.from_triple((pts[0], pts[1], pts[3]),
                             (ProjPoint(ambient, ambient.zero),
                              ProjPoint(ambient, ambient.one),
                              ProjPoint.infinity(ambient)))
    lam = mob(pts[2])
    assert lam.x is not None
    return canonical_lambda(lam.x)


def model_j(model: EllipticModel) -> Fel:
    """j-invariant of any degree-3 or degree-4 model, over the base field."""
    if model.f.degree == 3:
        return j_invariant_model(model)
    lam = model_lambda(model)
    j = j_invariant(lam)
    v = descend_element(j, model.base)
    if v is None:
        raise AssertionError("j-invariant failed to descend")  # unreachable
    return v


def isomorphic_curves(m1: EllipticModel, m2: EllipticModel) -> bool:
    """Class equivalence over the shared base: equal j and equal count.

    For j outside {0, 1728} this is exactly isomorphism over the base field;
    for the exotic-twist j values it is the same (j, trace) class notion the
    census uses.
    """
    if m1.base is not m2.base:
        raise ValueError("models over different fields")
    return (model_j(m1) == model_j(m2)
            and count_points(m1) == count_points(m2))


def align_third_curve(model: EllipticModel, targets) -> tuple[EllipticModel, Mobius]:
    """Mobius-transport `model` so three of its branch points land on the
    ordered `targets`, with the transported model defined over the base.

    Branch points are tried as ordered triples in lex order; the first
    transport that descends to the base field wins.  Raises ValueError if
    none does.
    """
    base = model.base
    tpts = [_as_point(t) for t in targets]
    if len(tpts) != 3:
        raise ValueError("exactly three target points required")
    tfield = tpts[0].field
    if any(pt.field is not tfield for pt in tpts):
        raise ValueError("target points over different fields")
    if tfield.p != base.p or tfield.n % base.n != 0:
        raise ValueError("targets must live over an extension of the base")
    from math import lcm
    k = splitting_degree(model.f)
    amb_n = lcm(base.n * k, tfield.n)
    if amb_n > MAX_EXT_DEGREE:
        raise ValueError("alignment field exceeds the supported range")
    ambient = make_field(base.p, amb_n)
    tgt = [ProjPoint(ambient, embed(pt.x, ambient)) if not pt.is_infinity
           else ProjPoint.infinity(ambient) for pt in tpts]
    model_amb = EllipticModel(model.f.map_field(ambient))
    branch = sorted(model_ram_set(model_amb, ambient), key=point_key)
    for triple in itertools.permutations(branch, 3):
        mob = Mobius.from_triple(triple, tgt)
        cand = transport_model(model_amb, mob)
        g = descend_poly(cand.f, base)
        if g is not None:
            return EllipticModel(g), mob
    raise ValueError("no branch alignment is defined over the base field")
