"""Pasting three elliptic curves into one genus-3 cover of P^1.

The cover is y_i^2 = f_i(x), i = 1..3: an abelian cover of P^1 with group
(Z/2)^3 whose Jacobian splits as the product of the three curves y^2 = f_i.
Genus 3 forces exactly five branch points distributed so that every pairwise
overlap of the three branch quadruples has size three.  Two shapes exist:

* strong: all five branch points rational, every component has full rational
  two-torsion (#E_i = 0 mod 4);
* weak: a conjugate quadratic pair is shared by all three components, each of
  which has exactly one rational point of order two; the first two components
  have #E = 2 mod 4 and the third, a quartic model branched at the pair plus
  two rational points, always has #E = 0 mod 4.

The last fact is forced: above every rational point of P^1 the fiber of the
full cover has size 0 mod 4 (unramified fibers have size 0 or 8, fibers over
rational branch points factor as (1+chi)(1+chi) in {0,4}), so
N1 + N2 + N3 = 4(q+1) - #C(F_q) = 0 mod 4 and the number of components with
group order 2 mod 4 is always even.  In particular no cover of either shape
realizes three traces all with q+1+t = 2 mod 4.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ecurve import (CurveClass, EllipticModel, classes_with_trace,
                     quadratic_twist, trace, waterhouse_admissible,
                     admissible_traces)
from .ff import (Fel, FieldDesc, Poly, embed, fel_key, frobenius, make_field,
                 poly_from_roots, roots_in, split_prime_power,
                 square_class_part)
from .legendre import (case1_lambda, common_splitting_field, descend_element,
                       j_invariant, model_j, model_lambda, orbit, ram_set)


class InvalidTracesError(ValueError):
    """The requested traces are malformed or not realizable by any curve."""


class InvalidCoverError(ValueError):
    """The three models do not form a genus-3 cover of the required shape."""


@dataclass(frozen=True)
class NotConsistent:
    """Admissible traces that admit no branch configuration; carries why."""
    reason: str


@dataclass(frozen=True)
class Genus3Cover:
    """Three component models over one base field.  Not validated on its
    own: build_cover is the checked constructor."""
    m1: EllipticModel
    m2: EllipticModel
    m3: EllipticModel

    @property
    def base(self) -> FieldDesc:
        return self.m1.base

    @property
    def models(self) -> tuple[EllipticModel, EllipticModel, EllipticModel]:
        return (self.m1, self.m2, self.m3)

    @property
    def polys(self) -> tuple[Poly, Poly, Poly]:
        return (self.m1.f, self.m2.f, self.m3.f)


def hurwitz_ram_count(cover: Genus3Cover) -> int:
    """Size of the union of the three branch loci on P^1 (computed over a
    common splitting field).  Genus 3 requires exactly 5."""
    amb = common_splitting_field(list(cover.polys))
    pts: set = set()
    for f in cover.polys:
        pts |= ram_set(f.map_field(amb), amb).points
    return len(pts)


def degree8_check(cover: Genus3Cover) -> bool:
    """Every nonempty product f_S = prod_{i in S} f_i must have a
    nonconstant square class: otherwise some intermediate double cover
    degenerates and the function field is not a (Z/2)^3 extension of the
    right shape."""
    fs = cover.polys
    field = cover.base
    for mask in range(1, 8):
        prod = Poly(field, [1])
        for i in range(3):
            if mask >> i & 1:
                prod = prod * fs[i]
        if square_class_part(prod).is_constant():
            return False
    return True


def build_cover(m1: EllipticModel, m2: EllipticModel, m3: EllipticModel
                ) -> Genus3Cover:
    """Checked constructor: validates the branch-count and square-class
    gates before any point counting happens."""
    if m2.base is not m1.base or m3.base is not m1.base:
        raise InvalidCoverError("components over different fields")
    cover = Genus3Cover(m1, m2, m3)
    n = hurwitz_ram_count(cover)
    if n != 5:
        raise InvalidCoverError(f"branch locus has {n} points, need exactly 5")
    if not degree8_check(cover):
        raise InvalidCoverError("a subset product has a constant square class")
    return cover


@dataclass(frozen=True)
class ConstructionCertificate:
    """A constructed cover together with its claimed arithmetic invariants."""
    q: int
    mode: str                       # "weak" or "strong"
    traces: tuple[int, int, int]    # per component, aligned with the cover
    cover: Genus3Cover

    def validate(self) -> None:
        """Re-derive every claim; raises on the first failure."""
        p, r = split_prime_power(self.q)
        if p == 2:
            raise InvalidTracesError("odd characteristic only")
        if self.cover.base.order != self.q:
            raise InvalidCoverError("certificate field does not match cover")
        if self.mode not in ("weak", "strong"):
            raise InvalidCoverError(f"unknown mode {self.mode!r}")
        want = (0, 0, 0) if self.mode == "strong" else (2, 2, 0)
        for t, w in zip(self.traces, want):
            if not waterhouse_admissible(self.q, t):
                raise InvalidTracesError(f"trace {t} not realizable over F_{self.q}")
            if (self.q + 1 + t) % 4 != w:
                raise InvalidCoverError(
                    f"trace {t} contradicts its {self.mode}-mode slot")
        build_cover(*self.cover.models)
        for i, (m, t) in enumerate(zip(self.cover.models, self.traces), 1):
            got = trace(m)
            if got != t:
                raise InvalidCoverError(
                    f"component {i} has trace {got}, certificate says {t}")


@dataclass(frozen=True)
class TriplePlan:
    """Witness data produced by decide_consistency: which classes realize
    the traces and where their branch points go."""
    q: int
    mode: str
    traces: tuple[int, int, int]       # aligned to components
    requested: tuple[int, int, int]    # as given by the caller
    classes: tuple[CurveClass, CurveClass, CurveClass]
    lambda1: Fel | None = None         # strong placement: f3 = x(x-l1)(x-l2)
    lambda2: Fel | None = None
    p3: Fel | None = None              # weak placement: rational branch pair
    p4: Fel | None = None


def _model_matching_trace(f: Poly, t: int) -> EllipticModel | None:
    """The model y^2 = f or its quadratic twist, whichever has trace t."""
    m = EllipticModel(f)
    got = trace(m)
    if got == t:
        return m
    if got == -t:
        return quadratic_twist(m)
    return None


_ORBIT_CACHE: dict[tuple[int, int], tuple] = {}


def _orbit_census(field: FieldDesc) -> tuple:
    """Canonical Legendre orbits over the field, each entry carrying the
    orbit, its j-invariant, and the trace of y^2 = x(x-1)(x-lam) at the
    lex-first representative.

    Every curve with full rational two-torsion is affine-equivalent to a
    Legendre model up to quadratic twist, so matching a requested trace
    against +/- the stored trace loses nothing.  Matching by the class
    census instead would: distinct curves in one quadratic-twist pair can
    share (j, trace), and only one of them gets recorded there.
    """
    key = (field.p, field.n)
    got = _ORBIT_CACHE.get(key)
    if got is not None:
        return got
    zero, one = field.zero, field.one
    seen: set = set()
    entries = []
    for lam in field.elements():
        if lam == zero or lam == one or fel_key(lam) in seen:
            continue
        orb = orbit(lam)
        seen.update(fel_key(u) for u in orb)
        m = EllipticModel(poly_from_roots(field, [zero, one, lam]))
        entries.append((orb, j_invariant(lam), trace(m)))
    result = tuple(entries)
    _ORBIT_CACHE[key] = result
    return result


def _witness_class(q: int, j: Fel, t: int) -> CurveClass:
    """Census class with the given j-invariant and trace."""
    for c in classes_with_trace(q, t):
        if c.j == j:
            return c
    raise InvalidTracesError(f"no curve class over F_{q} has that j and trace {t}")


def _place_strong(field, orb1, orb2, orb3, t1, t2, t3):
    """Search Legendre representatives placing three full two-torsion curves
    on the branch points (0, 1, l1, l2, infinity).  Deterministic lex order;
    returns (m1, m2, m3, l1, l2) or None."""
    zero, one = field.zero, field.one
    for l1 in sorted(orb1, key=fel_key):
        for l2 in sorted(orb2, key=fel_key):
            if l2 == l1:
                continue
            if l2 / l1 not in orb3:
                continue
            m1 = _model_matching_trace(poly_from_roots(field, [zero, one, l1]), t1)
            if m1 is None:
                continue
            m2 = _model_matching_trace(poly_from_roots(field, [zero, one, l2]), t2)
            if m2 is None:
                continue
            m3 = _model_matching_trace(poly_from_roots(field, [zero, l1, l2]), t3)
            if m3 is None:
                continue
            return m1, m2, m3, l1, l2
    return None


_WEAK_LINE_CACHE: dict[tuple[int, int], tuple] = {}


def _weak_line(field: FieldDesc):
    """Per-field data for the weak shape: the canonical conjugate pair
    (theta, theta^q), its minimal polynomial, and for every rational point p
    the Legendre parameter of (theta, theta^q, p) with its j-invariant.

    Those parameters sweep out exactly the realizable solutions of
    lam^q = 1 - lam, so searching p is searching the whole weak locus.
    """
    key = (field.p, field.n)
    got = _WEAK_LINE_CACHE.get(key)
    if got is not None:
        return got
    ext = make_field(field.p, 2 * field.n)
    theta = next(u for u in ext.elements()
                 if descend_element(u, field) is None)
    thetabar = frobenius(theta, field.order)
    s = descend_element(theta + thetabar, field)
    n0 = descend_element(theta * thetabar, field)
    assert s is not None and n0 is not None
    quad = Poly(field, [n0, -s, 1])
    denom = thetabar - theta
    line = []
    for pp in field.elements():
        lam = (embed(pp, ext) - theta) / denom
        jv = descend_element(j_invariant(lam), field)
        assert jv is not None  # j of a curve defined over the base
        line.append((pp, lam, jv))
    result = (ext, theta, quad, tuple(line))
    _WEAK_LINE_CACHE[key] = result
    return result


def _place_weak(field, j1, j2, j3, t1, t2, t3):
    """Search rational points (p3, p4) so that the three double covers
    branched along the conjugate pair plus {p3}, {p4}, {p3, p4} hit the
    wanted j-invariants and traces.  Returns (m1, m2, m3, p3, p4) or None."""
    _ext, _theta, quad, line = _weak_line(field)
    x = Poly(field, [0, 1])
    for pp3, lam1, jv1 in line:
        if jv1 != j1:
            continue
        for pp4, lam2, jv2 in line:
            if pp4 == pp3 or jv2 != j2:
                continue
            jv3 = descend_element(j_invariant(case1_lambda(lam1, lam2)), field)
            if jv3 != j3:
                continue
            lin3, lin4 = x - pp3, x - pp4
            m1 = _model_matching_trace(quad * lin3, t1)
            if m1 is None:
                continue
            m2 = _model_matching_trace(quad * lin4, t2)
            if m2 is None:
                continue
            m3 = _model_matching_trace(quad * lin3 * lin4, t3)
            if m3 is None:
                continue
            return m1, m2, m3, pp3, pp4
    return None


def _congruence_mode(q: int, traces) -> str | NotConsistent:
    residues = sorted((q + 1 + t) % 4 for t in traces)
    if any(r % 2 for r in residues):
        return NotConsistent("a requested group order is odd: no rational "
                             "two-torsion to glue along")
    if residues == [0, 0, 0]:
        return "strong"
    if residues == [0, 2, 2]:
        return "weak"
    # [0,0,2] or [2,2,2]: the cover's rational points come in fibers of
    # size 0 mod 4, forcing an even number of components with group order
    # 2 mod 4.
    return NotConsistent("an odd number of the requested group orders are "
                         "2 mod 4; every cover of this shape has an even "
                         "number of such components")


def decide_consistency(q: int, traces, mode: str = "auto",
                       relaxed: bool = False) -> TriplePlan | NotConsistent:
    """Decide whether the trace triple is realizable by a genus-3 cover over
    F_q, and if so return the witness placement.

    Raises InvalidTracesError for malformed input (bad q, inadmissible
    trace, repeated traces unless relaxed); returns NotConsistent when the
    input is admissible but no configuration exists.  The three witness
    curves must always be pairwise non-isomorphic over the closure
    (pairwise distinct j-invariants); relaxed only lifts the requirement
    that the traces themselves be pairwise distinct.
    """
    p, r = split_prime_power(q)
    if p == 2:
        raise InvalidTracesError("odd characteristic only")
    traces = tuple(int(t) for t in traces)
    if len(traces) != 3:
        raise InvalidTracesError("exactly three traces required")
    if not relaxed and len(set(traces)) != 3:
        raise InvalidTracesError("three distinct traces required; "
                                 "pass relaxed to allow repeats")
    for t in traces:
        if not waterhouse_admissible(q, t):
            raise InvalidTracesError(f"trace {t} is not realizable over F_{q}")
    if mode not in ("auto", "weak", "strong"):
        raise InvalidTracesError(f"unknown mode {mode!r}")
    inferred = _congruence_mode(q, traces)
    if isinstance(inferred, NotConsistent):
        return inferred
    if mode != "auto" and mode != inferred:
        return NotConsistent(f"traces have {inferred}-type congruences, "
                             f"not {mode}")
    field = make_field(p, r)
    cands: dict[int, list] = {}
    if inferred == "strong":
        census = _orbit_census(field)
        for t in set(traces):
            cands[t] = [e for e in census if e[2] == t or e[2] == -t]
            if not cands[t]:
                return NotConsistent(f"no full two-torsion curve over F_{q} "
                                     f"has trace {t}")
    else:
        # No two-torsion filter here: the stored count belongs to the
        # class representative, not the class, when two twists share
        # (j, trace).  Placement re-measures everything anyway.
        for t in set(traces):
            cands[t] = classes_with_trace(q, t)
            if not cands[t]:
                return NotConsistent(f"no curve class over F_{q} has trace {t}")
    seen_orders = set()
    for perm in itertools.permutations(range(3)):
        order = tuple(traces[i] for i in perm)
        if order in seen_orders:
            continue
        seen_orders.add(order)
        t1, t2, t3 = order
        if inferred == "strong":
            for e1, e2, e3 in itertools.product(cands[t1], cands[t2], cands[t3]):
                if len({fel_key(e1[1]), fel_key(e2[1]), fel_key(e3[1])}) < 3:
                    continue
                placed = _place_strong(field, e1[0], e2[0], e3[0], t1, t2, t3)
                if placed:
                    wit = (_witness_class(q, e1[1], t1),
                           _witness_class(q, e2[1], t2),
                           _witness_class(q, e3[1], t3))
                    return TriplePlan(q, "strong", order, traces, wit,
                                      lambda1=placed[3], lambda2=placed[4])
        else:
            # The quartic third slot always carries the 0 mod 4 group order.
            if (q + 1 + t3) % 4 != 0:
                continue
            for c1, c2, c3 in itertools.product(cands[t1], cands[t2], cands[t3]):
                if len({fel_key(c1.j), fel_key(c2.j), fel_key(c3.j)}) < 3:
                    continue
                placed = _place_weak(field, c1.j, c2.j, c3.j, t1, t2, t3)
                if placed:
                    return TriplePlan(q, "weak", order, traces,
                                      (c1, c2, c3),
                                      p3=placed[3], p4=placed[4])
    return NotConsistent("no branch configuration realizes these traces")


def realize_plan(plan: TriplePlan) -> ConstructionCertificate:
    """Build the concrete cover a plan promises."""
    p, r = split_prime_power(plan.q)
    field = make_field(p, r)
    t1, t2, t3 = plan.traces
    if plan.mode == "strong":
        zero, one = field.zero, field.one
        l1, l2 = plan.lambda1, plan.lambda2
        m1 = _model_matching_trace(poly_from_roots(field, [zero, one, l1]), t1)
        m2 = _model_matching_trace(poly_from_roots(field, [zero, one, l2]), t2)
        m3 = _model_matching_trace(poly_from_roots(field, [zero, l1, l2]), t3)
    else:
        _ext, _theta, quad, _line = _weak_line(field)
        x = Poly(field, [0, 1])
        lin3, lin4 = x - plan.p3, x - plan.p4
        m1 = _model_matching_trace(quad * lin3, t1)
        m2 = _model_matching_trace(quad * lin4, t2)
        m3 = _model_matching_trace(quad * lin3 * lin4, t3)
    if m1 is None or m2 is None or m3 is None:
        raise InvalidCoverError("plan does not realize its own traces")
    cover = build_cover(m1, m2, m3)
    return ConstructionCertificate(plan.q, plan.mode, plan.traces, cover)


def construct_from_traces(q: int, traces, mode: str = "auto",
                          relaxed: bool = False
                          ) -> ConstructionCertificate | NotConsistent:
    plan = decide_consistency(q, traces, mode, relaxed)
    if isinstance(plan, NotConsistent):
        return plan
    return realize_plan(plan)


def enumerate_triples(q: int, mode: str = "auto", relaxed: bool = False
                      ) -> list[tuple[str, tuple[int, int, int]]]:
    """Candidate trace triples passing the arithmetic gates: admissible
    traces in a realizable two-torsion congruence pattern.  Strong triples
    have all group orders 0 mod 4; weak triples are emitted slot-aligned,
    (t1, t2) with orders 2 mod 4 and t3 with order 0 mod 4.  Strict mode
    enumerates distinct traces only.  Consistency of each candidate still
    needs decide_consistency/construct."""
    p, _ = split_prime_power(q)
    if p == 2:
        raise InvalidTracesError("odd characteristic only")
    if mode not in ("auto", "weak", "strong"):
        raise InvalidTracesError(f"unknown mode {mode!r}")
    adm = admissible_traces(q)
    pool0 = [t for t in adm if (q + 1 + t) % 4 == 0]
    pool2 = [t for t in adm if (q + 1 + t) % 4 == 2]
    out: list[tuple[str, tuple[int, int, int]]] = []
    if mode in ("auto", "strong"):
        combine = (itertools.combinations_with_replacement if relaxed
                   else itertools.combinations)
        for combo in combine(pool0, 3):
            out.append(("strong", combo))
    if mode in ("auto", "weak"):
        pairs = (itertools.combinations_with_replacement(pool2, 2) if relaxed
                 else itertools.combinations(pool2, 2))
        for t1, t2 in pairs:
            for t3 in pool0:
                out.append(("weak", (t1, t2, t3)))
    return out


def _rational_branch_count(m: EllipticModel) -> int:
    """Number of branch points on P^1 fixed by Frobenius: the rational
    roots, plus infinity for odd degree."""
    n = len(roots_in(m.f, m.base))
    if m.f.degree % 2:
        n += 1
    return n


def arrange_triple(m1: EllipticModel, m2: EllipticModel, m3: EllipticModel
                   ) -> Genus3Cover:
    """Arrange three concrete curves into one cover.

    The inputs must be pairwise non-isomorphic over the closure and share
    one rational branch count c: 4 means all branch points rational (strong
    shape), 2 means one rational pair plus one conjugate pair (weak shape,
    where the third slot takes the quartic model).  If the models already
    form a valid cover they are kept as-is; otherwise their branch points
    are re-placed by the canonical search, preserving each model's
    (j, trace) class in slot order exactly.
    """
    if m2.base is not m1.base or m3.base is not m1.base:
        raise InvalidCoverError("components over different fields")
    field = m1.base
    js = [model_j(m) for m in (m1, m2, m3)]
    if len({fel_key(j) for j in js}) < 3:
        raise InvalidCoverError("components must be pairwise non-isomorphic "
                                "over the closure (distinct j-invariants)")
    counts = {_rational_branch_count(m) for m in (m1, m2, m3)}
    if len(counts) != 1 or counts & {2, 4} == set():
        raise InvalidCoverError("components must share a rational branch "
                                "count of 2 or 4")
    try:
        return build_cover(m1, m2, m3)
    except InvalidCoverError:
        pass
    traces = tuple(trace(m) for m in (m1, m2, m3))
    if counts == {4}:
        orbs = []
        for m in (m1, m2, m3):
            lam = model_lambda(m)
            if lam.field is not field:
                raise InvalidCoverError(
                    "strong arrangement needs rational branch points")
            orbs.append(orbit(lam))
        placed = _place_strong(field, *orbs, *traces)
    else:
        placed = _place_weak(field, *js, *traces)
    if placed is None:
        raise InvalidCoverError("no branch arrangement glues these models")
    return build_cover(placed[0], placed[1], placed[2])
