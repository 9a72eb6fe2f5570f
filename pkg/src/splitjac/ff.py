"""Exact arithmetic in small finite fields F_{p^n}, p an odd prime.

Fields are canonical: for each (p, n) the modulus is the lexicographically
smallest monic irreducible polynomial of degree n over F_p, where candidates
are ordered by their coefficient tuple (c0, c1, ..., c_{n-1}), constant term
first.  Elements are immutable coefficient vectors in the polynomial basis,
enumerated in the same lex order.  Everything is exact integer arithmetic.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator

MAX_EXT_DEGREE = 12

_FIELD_CACHE: dict[tuple[int, int], "FieldDesc"] = {}
_EMBED_CACHE: dict[tuple[int, int, int], tuple["Fel", ...]] = {}


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def split_prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p^r with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    r, m = 0, q
    while m % p == 0:
        m //= p
        r += 1
    if m != 1:
        raise ValueError(f"not a prime power: {q}")
    return p, r


# ---------------------------------------------------------------------------
# integer-coefficient polynomial helpers over F_p (modulus bootstrap)
# coefficient lists are constant-first throughout

def _zx_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zx_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _zx_trim(out)


def _zx_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        off = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[off + i] = (a[off + i] - c * mi) % p
        _zx_trim(a)
    return a


def _zx_mulmod(a, b, mod, p):
    return _zx_rem(_zx_mul(a, b, p), mod, p)


def _zx_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _zx_rem(list(a), mod, p)
    while e:
        if e & 1:
            result = _zx_mulmod(result, base, mod, p)
        base = _zx_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _zx_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _zx_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _zx_is_irreducible(mod: list[int], p: int) -> bool:
    """Monic mod of degree n is irreducible iff x^(p^n) = x (mod mod) and
    gcd(x^(p^d) - x, mod) = 1 for every proper divisor d of n."""
    n = len(mod) - 1
    if n == 1:
        return True
    x = [0, 1]
    # g_d = x^(p^d) mod `mod`, computed by iterated p-th powering
    g = list(x)
    for d in range(1, n + 1):
        g = _zx_powmod(g, p, mod, p)
        if d < n and n % d == 0:
            diff = _zx_trim([(gi - xi) % p for gi, xi in
                             itertools.zip_longest(g, x, fillvalue=0)])
            if len(_zx_gcd(diff, mod, p)) != 1:
                return False
    diff = _zx_trim([(gi - xi) % p for gi, xi in
                     itertools.zip_longest(g, x, fillvalue=0)])
    return not diff


def _lex_smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=n):
        cand = list(tail) + [1]
        if cand[0] == 0:
            continue  # root at 0
        if _zx_is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------

class FieldDesc:
    """A finite field F_{p^n} with its canonical modulus.

    Instances are interned: make_field(p, n) always returns the same object,
    so identity comparison of fields is sound.
    """

    __slots__ = ("p", "n", "order", "modulus", "_red", "_zero", "_one")

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.order = p ** n
        self.modulus = modulus
        # reduction rows: x^(n+j) mod modulus for j = 0..n-2
        red = []
        red.append(tuple((-c) % p for c in modulus[:-1]))  # x^n
        for _ in range(n - 2):
            shifted = [0] + list(red[-1])  # multiply previous row by x
            overflow = shifted.pop()       # coefficient of x^n
            red.append(tuple((shifted[i] + overflow * red[0][i]) % p
                             for i in range(n)))
        self._red = tuple(red)
        self._zero = Fel(self, (0,) * n)
        self._one = Fel(self, ((1,) + (0,) * (n - 1)))

    @property
    def zero(self) -> "Fel":
        return self._zero

    @property
    def one(self) -> "Fel":
        return self._one

    def __call__(self, value) -> "Fel":
        if isinstance(value, Fel):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return Fel(self, ((value % self.p,) + (0,) * (self.n - 1)))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.n:
            raise ValueError("too many coefficients")
        coeffs = coeffs + (0,) * (self.n - len(coeffs))
        return Fel(self, coeffs)

    def elements(self) -> Iterator["Fel"]:
        """All elements in lex order on (c0, ..., c_{n-1})."""
        for tup in itertools.product(range(self.p), repeat=self.n):
            yield Fel(self, tup)

    def __repr__(self):
        return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"


def make_field(p: int, n: int = 1) -> FieldDesc:
    """The canonical F_{p^n}; p must be an odd prime, 1 <= n <= 12."""
    key = (p, n)
    fd = _FIELD_CACHE.get(key)
    if fd is not None:
        return fd
    if not _is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if not 1 <= n <= MAX_EXT_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_EXT_DEGREE}, got {n}")
    fd = FieldDesc(p, n, _lex_smallest_irreducible(p, n))
    _FIELD_CACHE[key] = fd
    return fd


class Fel:
    """An element of a FieldDesc, as a constant-first coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDesc, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other) -> "Fel":
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, Fel):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("elements from different fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return Fel(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return Fel(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self.field(other) - self

    def __neg__(self):
        p = self.field.p
        return Fel(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        fd = self.field
        p, n = fd.p, fd.n
        if n == 1:
            return Fel(fd, (self.coeffs[0] * o.coeffs[0] % p,))
        a, b = self.coeffs, o.coeffs
        conv = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = conv[:n]
        for j in range(n, 2 * n - 1):
            c = conv[j]
            if c:
                row = fd._red[j - n]
                for i in range(n):
                    out[i] += c * row[i]
        return Fel(fd, tuple(c % p for c in out))

    __rmul__ = __mul__

    def inverse(self) -> "Fel":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, Fel):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        if self.field.n == 1:
            return str(self.coeffs[0])
        return f"{self.field!r}{list(self.coeffs)}"


def fel_key(u: Fel) -> tuple[int, ...]:
    """Deterministic sort key: lex order on the coefficient tuple."""
    return u.coeffs


def qchar(u: Fel) -> int:
    """Quadratic character of u in its own field: +1 square, -1 non-square, 0."""
    if u.is_zero():
        return 0
    v = u ** ((u.field.order - 1) // 2)
    return 1 if v == u.field.one else -1


def frobenius(u: Fel, q: int) -> Fel:
    """The q-power Frobenius u -> u^q; F_q must be a subfield of u's field."""
    p, r = split_prime_power(q)
    if p != u.field.p or u.field.n % r != 0:
        raise ValueError(f"F_{q} is not a subfield of {u.field!r}")
    return u ** q


def first_nonsquare(field: FieldDesc) -> Fel:
    """The lex-first non-square element (exists since p is odd)."""
    for u in field.elements():
        if qchar(u) == -1:
            return u
    raise AssertionError("no non-square found")  # unreachable for p odd


def embed(u: Fel, target: FieldDesc) -> Fel:
    """Embed u into `target` via the canonical subfield embedding.

    The image of the source field's generator is the lex-first root of the
    source modulus in the target; the choice is cached so the embedding is a
    consistent homomorphism across calls.
    """
    src = u.field
    if src is target:
        return u
    p, a, b = src.p, src.n, target.n
    if target.p != p or b % a != 0:
        raise ValueError(f"{src!r} does not embed in {target!r}")
    if a == 1:
        return target(u.coeffs[0])
    key = (p, a, b)
    powers = _EMBED_CACHE.get(key)
    if powers is None:
        beta = _subfield_generator_image(src, target)
        pw = [target.one]
        for _ in range(a - 1):
            pw.append(pw[-1] * beta)
        powers = tuple(pw)
        _EMBED_CACHE[key] = powers
    acc = target.zero
    for c, pw in zip(u.coeffs, powers):
        if c:
            acc = acc + target(c) * pw
    return acc


def _subfield_generator_image(src: FieldDesc, target: FieldDesc) -> Fel:
    """Lex-first root of src.modulus in target.

    A root is located by pushing elements through the norm-like power map
    onto the subfield of order p^a, then the full root set (the Frobenius
    orbit) is enumerated and the lex-smallest root returned.
    """
    p, a, b = src.p, src.n, target.n
    e = (p ** b - 1) // (p ** a - 1)
    mod = src.modulus

    def eval_mod(v: Fel) -> Fel:
        acc = target.zero
        for c in reversed(mod):
            acc = acc * v + target(c)
        return acc

    for u in target.elements():
        if u.is_zero():
            continue
        v = u ** e  # lands in the subfield of order p^a
        if eval_mod(v).is_zero():
            conj = []
            w = v
            for _ in range(a):
                conj.append(w)
                w = w ** p
            return min(conj, key=fel_key)
    raise AssertionError("subfield root not found")  # unreachable


# ---------------------------------------------------------------------------
# polynomials over a FieldDesc, coefficient tuples constant-first

class Poly:
    """Polynomial with Fel coefficients, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDesc, coeffs: Iterable):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fel:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, x: Fel) -> Fel:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), tuple(c.coeffs for c in self.coeffs)))

    def __add__(self, other):
        other = _coerce_poly(other, self.field)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return Poly(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        other = _coerce_poly(other, self.field)
        return self + (-other)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        other = _coerce_poly(other, self.field)
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [])
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _coerce_poly(other, self.field)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(self.field, []), self
        inv = other.lead.inverse()
        quot = [self.field.zero] * (len(rem) - db)
        while rem and len(rem) - 1 >= db:
            k = len(rem) - 1 - db
            c = rem[-1] * inv
            quot[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(self.field, quot), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(self.field, [self.field(i) * c
                                 for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.lead.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def map_field(self, target: FieldDesc) -> "Poly":
        return Poly(target, [embed(c, target) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"{c!r}*x^{i}" if i else f"{c!r}")
        return "Poly(" + " + ".join(parts) + ")"


def _coerce_poly(v, field: FieldDesc) -> Poly:
    if isinstance(v, Poly):
        if v.field is not field:
            raise ValueError("polynomials over different fields")
        return v
    if isinstance(v, (int, Fel)):
        return Poly(field, [v])
    raise TypeError(f"cannot treat {v!r} as a polynomial")


def poly_from_roots(field: FieldDesc, roots: Iterable[Fel]) -> Poly:
    f = Poly(field, [1])
    for r in roots:
        f = f * Poly(field, [-field(r), 1])
    return f


def poly_eval(f: Poly, x: Fel) -> Fel:
    return f(x)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (gcd(f, 0) = monic f)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: Poly) -> Poly:
    """f / gcd(f, f'), leading coefficient preserved (monicized quotient
    scaled by lead(f)).  This is the radical for separable f."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    g = poly_gcd(f, f.derivative())
    return f.lead * (f // g).monic()


def _pth_root_poly(f: Poly) -> Poly:
    """For f with zero derivative (so f = g(x^p) with p-th power coeffs),
    the polynomial h with h^p = f."""
    fd = f.field
    p = fd.p
    # inverse Frobenius: c -> c^(p^(n-1))
    e = p ** (fd.n - 1)
    coeffs = []
    for i in range(0, f.degree + 1, p):
        coeffs.append(f.coeffs[i] ** e)
    return Poly(fd, coeffs)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree decomposition f = lead * prod g_i^(m_i), char-p safe.

    Returns [(g_i, m_i)] with g_i monic squarefree, pairwise coprime, m_i
    strictly increasing.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    p = f.field.p
    factors: list[tuple[Poly, int]] = []
    g = f.monic()
    n = 1
    while g.degree > 0:
        d = g.derivative()
        if not d.is_zero():
            t = poly_gcd(g, d)
            h = (g // t).monic()  # primes with multiplicity not divisible by p
            i = 1
            while not h.is_constant():
                w = poly_gcd(t, h)
                s = (h // w).monic()  # primes with multiplicity exactly i
                if s.degree > 0:
                    factors.append((s, i * n))
                i += 1
                t = (t // w).monic()
                h = w
            g = t  # remaining primes have multiplicity divisible by p
            if g.degree == 0:
                break
        g = _pth_root_poly(g)
        n *= p
    factors.sort(key=lambda gm: gm[1])
    return factors


def square_class_part(f: Poly) -> Poly:
    """The squarefree polynomial representing f modulo squares: the product
    of irreducible factors with odd multiplicity, scaled by lead(f)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    out = Poly(f.field, [1])
    for g, m in squarefree_decomposition(f):
        if m % 2 == 1:
            out = out * g
    return f.lead * out


def roots_in(f: Poly, field: FieldDesc) -> list[Fel]:
    """Roots of f in `field` (which must contain f's field), with
    multiplicity, in lex order.  Exhaustive scan; guarded for desk scale."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if field.order > 10 ** 6:
        raise ValueError("field too large for exhaustive root scan")
    g = f.map_field(field)
    out = []
    for u in field.elements():
        if g(u).is_zero():
            h, v = g, 0
            x_minus_u = Poly(field, [-u, 1])
            while True:
                q, r = divmod(h, x_minus_u)
                if not r.is_zero():
                    break
                h, v = q, v + 1
            out.extend([u] * v)
    return out
