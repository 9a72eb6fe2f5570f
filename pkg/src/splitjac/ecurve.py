"""Elliptic curves presented as double covers y^2 = f(x), deg f in {3, 4}.

Covers exhaustive point counting over extension fields, the trace of
Frobenius (#E(F_q) = q + 1 + t), admissibility of a prescribed trace,
quadratic twists, j-invariants, and the census of (j, t) isomorphism
classes over a given base field.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, isqrt

from . import _tables
from .ff import (Fel, FieldDesc, Poly, embed, fel_key, first_nonsquare,
                 make_field, poly_gcd, qchar, roots_in, split_prime_power)

COUNT_CAP = 10 ** 8
_PURE_COUNT_LIMIT = 4096


@dataclass(frozen=True)
class EllipticModel:
    """A squarefree model y^2 = f(x) with deg f = 3 or 4."""
    f: Poly

    def __post_init__(self):
        if self.f.degree not in (3, 4):
            raise ValueError("model polynomial must have degree 3 or 4")
        if poly_gcd(self.f, self.f.derivative()).degree != 0:
            raise ValueError("model polynomial must be squarefree")

    @property
    def base(self) -> FieldDesc:
        return self.f.field

    @property
    def lead(self) -> Fel:
        return self.f.lead

    def __repr__(self):
        return f"EllipticModel(y^2 = {self.f!r})"


_CHI_MAPS: dict[tuple[int, int], dict[tuple, int]] = {}


def _chi_map(field: FieldDesc) -> dict[tuple, int]:
    key = (field.p, field.n)
    m = _CHI_MAPS.get(key)
    if m is None:
        m = {u.coeffs: -1 for u in field.elements()}
        for u in field.elements():
            m[(u * u).coeffs] = 1
        m[field.zero.coeffs] = 0
        _CHI_MAPS[key] = m
    return m


def count_points(model: EllipticModel, k: int = 1) -> int:
    """#C(F_{q^k}) for the smooth projective curve behind the model.

    Affine points contribute 1 + chi(f(x)) at each x; a cubic adds one point
    at infinity, a quartic adds two iff its leading coefficient is a square
    in the counting field.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    base = model.base
    ext_deg = base.n * k
    if ext_deg > 12 or base.order ** k > COUNT_CAP:
        raise ValueError("counting field exceeds the supported size")
    field = make_field(base.p, ext_deg)
    coeffs = [embed(c, field) for c in model.f.coeffs]
    Q = field.order
    if Q <= _PURE_COUNT_LIMIT:
        chi = _chi_map(field)
        f = Poly(field, coeffs)
        total = Q + sum(chi[f(u).coeffs] for u in field.elements())
    else:
        tabs = _tables.get_tables(field)
        codes = [tabs.code_of(c) for c in coeffs]
        total = Q + _tables.char_sum(field, codes)
    if model.f.degree == 3:
        total += 1
    elif qchar(embed(model.lead, field)) == 1:
        total += 2
    return total


def trace(model: EllipticModel) -> int:
    """Trace of Frobenius: t = #E(F_q) - q - 1."""
    q = model.base.order
    return count_points(model) - q - 1


def two_torsion_rational(model: EllipticModel) -> int:
    """#E(F_q)[2] for a cubic model: one plus the rational roots of f."""
    if model.f.degree != 3:
        raise ValueError("two-torsion census needs a cubic model")
    return 1 + len(roots_in(model.f, model.base))


def quadratic_twist(model: EllipticModel) -> EllipticModel:
    """Twist by the canonical non-square of the base field."""
    d = first_nonsquare(model.base)
    return EllipticModel(d * model.f)


def j_invariant_model(model: EllipticModel) -> Fel:
    """j-invariant of a cubic model via the standard b/c invariants.

    The model d x^3 + a x^2 + b x + c is monicized by (x, y) -> (x/d, y/d),
    which scales the lower coefficients by powers of d.
    """
    if model.f.degree != 3:
        raise ValueError("j-invariant formula needs a cubic model")
    c0, c1, c2, d = model.f.coeffs
    a2, a4, a6 = c2, c1 * d, c0 * d * d
    b2 = 4 * a2
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc.is_zero():
        raise ValueError("singular model")
    return c4 ** 3 / disc


def waterhouse_clauses(q: int, t: int) -> tuple[str, ...]:
    """Which admissibility clauses the pair (q, t) satisfies.

    Returns a subset of ("i", ..., "vi"); empty means no elliptic curve
    over F_q has trace t.  Only odd characteristic is supported.
    """
    p, r = split_prime_power(q)
    if p == 2:
        raise ValueError("odd characteristic only")
    if t * t > 4 * q:
        return ()
    clauses = []
    if gcd(p, t) == 1:
        clauses.append("i")
    s = isqrt(q)
    if r % 2 == 0:
        if t in (2 * s, -2 * s):
            clauses.append("ii")
        if p % 3 != 1 and t in (s, -s):
            clauses.append("iii")
        if p % 4 != 1 and t == 0:
            clauses.append("vi")
    else:
        if p == 3 and t * t == p * q:
            clauses.append("iv")
        if t == 0:
            clauses.append("v")
    return tuple(clauses)


def waterhouse_admissible(q: int, t: int) -> bool:
    return bool(waterhouse_clauses(q, t))


def admissible_traces(q: int) -> tuple[int, ...]:
    """All admissible traces for F_q, ascending."""
    s = isqrt(4 * q)
    return tuple(t for t in range(-s, s + 1) if waterhouse_admissible(q, t))


def trace_power_sum(t: int, q: int, k: int) -> int:
    """s_k = alpha^k + beta^k for the Frobenius roots of x^2 - t x + q.

    Satisfies s_0 = 2, s_1 = t is *not* used here: with the convention
    #E(F_q) = q + 1 + t the recurrence starts s_1 = -t, so that
    #E(F_{q^k}) = q^k + 1 - s_k never flips sign conventions downstream.
    """
    if t * t > 4 * q:
        raise ValueError("trace violates the Hasse bound")
    if k < 0:
        raise ValueError("k must be nonnegative")
    prev, cur = 2, -t
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, -t * cur - q * prev
    return cur


def extension_count(q: int, t: int, k: int) -> int:
    """#E(F_{q^k}) predicted from the trace over F_q."""
    return q ** k + 1 - trace_power_sum(t, q, k)


@dataclass(frozen=True)
class CurveClass:
    """One (j, t) isomorphism class with a concrete witness model."""
    j: Fel
    t: int
    two_torsion: int
    representative: EllipticModel


_CLASS_CACHE: dict[int, tuple[CurveClass, ...]] = {}


def enumerate_classes(q: int) -> tuple[CurveClass, ...]:
    """All (j, t) classes of elliptic curves over F_q, first-encounter order.

    Every class has a model y^2 = cubic: monic cubics cover half the twist
    classes and multiplying by one fixed non-square covers the rest.
    """
    got = _CLASS_CACHE.get(q)
    if got is not None:
        return got
    p, r = split_prime_power(q)
    if p == 2:
        raise ValueError("odd characteristic only")
    field = make_field(p, r)
    d = first_nonsquare(field)
    seen: set[tuple] = set()
    out: list[CurveClass] = []
    for c0, c1, c2 in itertools.product(field.elements(), repeat=3):
        f = Poly(field, [c0, c1, c2, field.one])
        if poly_gcd(f, f.derivative()).degree != 0:
            continue
        for g in (f, d * f):
            model = EllipticModel(g)
            key = (fel_key(j_invariant_model(model)), trace(model))
            if key in seen:
                continue
            seen.add(key)
            out.append(CurveClass(j=j_invariant_model(model), t=key[1],
                                  two_torsion=two_torsion_rational(model),
                                  representative=model))
    result = tuple(out)
    _CLASS_CACHE[q] = result
    return result


def classes_with_trace(q: int, t: int) -> tuple[CurveClass, ...]:
    return tuple(c for c in enumerate_classes(q) if c.t == t)
