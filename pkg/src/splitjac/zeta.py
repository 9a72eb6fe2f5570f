"""Zeta data for a genus-3 cover: exact counts, L-polynomial, verification.

The claimed numerator of the zeta function is prod_i (1 + t_i T + q T^2)
for the three component traces.  Verification counts the cover's points
over F_{q^k} independently (character sums plus an exact local analysis at
branch points), reconstructs the L-polynomial through Newton's identities
and the functional equation, and compares coefficient by coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _tables
from .construct import (ConstructionCertificate, Genus3Cover,
                        InvalidCoverError, build_cover)
from .ecurve import COUNT_CAP, trace_power_sum
from .ff import Poly, embed, make_field, qchar
from .legendre import ProjPoint

_PURE_COVER_LIMIT = 4096
_GENUS = 3


class ReconstructionError(ValueError):
    """Counts incompatible with a genus-3 L-polynomial."""


def expected_count(q: int, t1: int, t2: int, t3: int, k: int) -> int:
    """#C(F_{q^k}) predicted by the claimed splitting into three curves."""
    return q ** k + 1 - sum(trace_power_sum(t, q, k) for t in (t1, t2, t3))


def claimed_lpoly(q: int, traces) -> "LPoly":
    """prod (1 + t T + q T^2) as an integer polynomial in T."""
    coeffs = [1]
    for t in traces:
        nxt = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            nxt[i] += c
            nxt[i + 1] += c * t
            nxt[i + 2] += c * q
        coeffs = nxt
    return LPoly(q, tuple(coeffs))


def claimed_char_poly(q: int, traces) -> tuple[int, ...]:
    """prod (T^2 + t T + q), ascending coefficients, monic of degree 6."""
    coeffs = [1]
    for t in traces:
        nxt = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            nxt[i] += c * q
            nxt[i + 1] += c * t
            nxt[i + 2] += c
        coeffs = nxt
    return tuple(coeffs)


@dataclass(frozen=True)
class LPoly:
    """Numerator of a zeta function, ascending integer coefficients."""
    q: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def power_sum(self, k: int) -> int:
        """Sum of k-th powers of the inverse roots (Newton recurrence)."""
        if k < 1:
            raise ValueError("k must be at least 1")
        c = self.coeffs
        ps: list[int] = []
        for m in range(1, k + 1):
            s = -m * (c[m] if m < len(c) else 0)
            for i in range(1, m):
                s -= (c[i] if i < len(c) else 0) * ps[m - i - 1]
            ps.append(s)
        return ps[-1]

    def predicted_count(self, k: int) -> int:
        return self.q ** k + 1 - self.power_sum(k)

    def functional_equation_ok(self) -> bool:
        c, q = self.coeffs, self.q
        if len(c) != 2 * _GENUS + 1:
            return False
        return all(c[6 - i] == q ** (3 - i) * c[i] for i in range(0, 3))


def local_splitting(cover: Genus3Cover, pt: ProjPoint) -> int:
    """Exact number of points of the cover above one point of P^1.

    For each of the eight characters of (Z/2)^3 the corresponding double
    cover contributes according to the parity of the local valuation of
    f_S and the quadratic character of its unit part; the sum over all
    characters is the fiber size.
    """
    F = pt.field
    base = cover.base
    if F.p != base.p or F.n % base.n != 0:
        raise ValueError("point field does not extend the base field")
    vals, units = [], []
    if pt.is_infinity:
        for f in cover.polys:
            vals.append(f.degree % 2)
            units.append(embed(f.lead, F))
    else:
        x0 = pt.x
        for f in cover.polys:
            g = f.map_field(F)
            v = 0
            val = g(x0)
            while val.is_zero():
                g = g // Poly(F, [-x0, F.one])
                v += 1
                val = g(x0)
            vals.append(v)
            units.append(val)
    total = 0
    for mask in range(8):
        v = 0
        u = F.one
        for i in range(3):
            if mask >> i & 1:
                v += vals[i]
                u = u * units[i]
        if v % 2 == 0:
            total += qchar(u)
        # odd valuation: the character ramifies, contributing nothing
    return total


def count_cover(cover: Genus3Cover, k: int = 1, jobs: int = 1) -> int:
    """#C(F_{q^k}) by exhaustive summation.

    Unramified x contribute prod (1 + chi(f_i(x))); branch points and
    infinity are handled exactly by the local analysis.
    """
    base = cover.base
    if k < 1:
        raise ValueError("k must be at least 1")
    if base.n * k > 12 or base.order ** k > COUNT_CAP:
        raise ValueError("counting field exceeds the supported size")
    F = make_field(base.p, base.n * k)
    total = local_splitting(cover, ProjPoint.infinity(F))
    if F.order <= _PURE_COVER_LIMIT:
        polys = [f.map_field(F) for f in cover.polys]
        for x in F.elements():
            vals = [g(x) for g in polys]
            if any(v.is_zero() for v in vals):
                total += local_splitting(cover, ProjPoint(F, x))
            else:
                prod = 1
                for v in vals:
                    prod *= 1 + qchar(v)
                total += prod
    else:
        tabs = _tables.get_tables(F)
        codes = [[tabs.code_of(embed(c, F)) for c in f.coeffs]
                 for f in cover.polys]
        s, ramified = _tables.triple_cover_sum(F, codes, jobs=jobs)
        total += s
        for code in ramified:
            total += local_splitting(cover, ProjPoint(F, tabs.fel_of(code)))
    return total


def reconstruct_lpoly(q: int, counts) -> LPoly:
    """L-polynomial of a genus-3 curve from #C(F_{q^k}), k = 1..K, K >= 3.

    Newton's identities give the first K coefficients; the functional
    equation supplies the rest and cross-checks any overlap.  Raises
    ReconstructionError when the counts cannot come from a genus-3 curve.
    """
    counts = list(counts)
    K = len(counts)
    if K < _GENUS:
        raise ReconstructionError(f"need at least {_GENUS} counts, got {K}")
    S = [q ** k + 1 - counts[k - 1] for k in range(1, K + 1)]
    # e_k of the inverse roots; c_k = (-1)^k e_k
    e = [1]
    for m in range(1, min(K, 6) + 1):
        acc = 0
        for i in range(1, m + 1):
            acc += (-1) ** (i - 1) * e[m - i] * S[i - 1]
        if acc % m:
            raise ReconstructionError("power sums are not integral: counts "
                                      "do not come from a curve of genus 3")
        e.append(acc // m)
    c = [(-1) ** m * e[m] for m in range(len(e))]
    full = list(c) + [0] * (7 - len(c))
    for i in range(0, 3):
        fe = q ** (3 - i) * full[i]
        if len(c) > 6 - i:
            if full[6 - i] != fe:
                raise ReconstructionError("functional equation fails: counts "
                                          "do not come from a curve of genus 3")
        else:
            full[6 - i] = fe
    lp = LPoly(q, tuple(full))
    for k in range(1, K + 1):
        if lp.predicted_count(k) != counts[k - 1]:
            raise ReconstructionError("counts are inconsistent with the "
                                      "reconstructed polynomial")
    return lp


@dataclass(frozen=True)
class ZetaReport:
    """Outcome of independent verification of a certificate."""
    verdict: str                     # "Match" | "CountMismatch" | "PolyMismatch"
    q: int
    traces: tuple[int, int, int]
    k_used: int
    counts: tuple[int, ...]
    expected: tuple[int, ...]
    claimed: tuple[int, ...]
    reconstructed: tuple[int, ...] | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "Match"


def default_verify_depth(q: int) -> int:
    """Smallest k with q^k >= 10^5, clamped into [3, 6]."""
    k = 1
    while q ** k < 10 ** 5:
        k += 1
    return min(6, max(3, k))


def verify(cert: ConstructionCertificate, max_k: int | None = None,
           jobs: int = 1) -> ZetaReport:
    """Independently verify a certificate's claimed zeta numerator.

    Structural gates run first and raise InvalidCoverError before any
    counting.  Then counts over F_{q^k} are compared with the claimed
    product formula (first mismatch wins), and finally the L-polynomial is
    reconstructed from the counts and compared coefficient by coefficient.
    """
    cover = cert.cover
    build_cover(*cover.models)  # structural gates; raises before counting
    q = cert.q
    if cover.base.order != q:
        raise InvalidCoverError("certificate field does not match cover")
    if max_k is None:
        K = default_verify_depth(q)
        while q ** K > COUNT_CAP:
            K -= 1
    else:
        K = int(max_k)
        if K < 1:
            raise ValueError("max_k must be at least 1")
    claimed = claimed_lpoly(q, cert.traces)
    counts, expected = [], []
    for k in range(1, K + 1):
        nk = count_cover(cover, k, jobs=jobs)
        ek = claimed.predicted_count(k)
        counts.append(nk)
        expected.append(ek)
        if nk != ek:
            return ZetaReport("CountMismatch", q, cert.traces, k,
                              tuple(counts), tuple(expected), claimed.coeffs,
                              detail=f"first mismatch at k={k}: "
                                     f"counted {nk}, claimed {ek}")
    if K >= _GENUS:
        lp = reconstruct_lpoly(q, counts)
        if lp.coeffs != claimed.coeffs:
            return ZetaReport("PolyMismatch", q, cert.traces, K,
                              tuple(counts), tuple(expected), claimed.coeffs,
                              reconstructed=lp.coeffs,
                              detail="reconstructed polynomial differs")
        rec = lp.coeffs
    else:
        rec = None
    return ZetaReport("Match", q, cert.traces, K, tuple(counts),
                      tuple(expected), claimed.coeffs, reconstructed=rec)
