"""Vectorized per-field tables for exhaustive point counts (numpy).

Elements of F_{p^n} are encoded as integer codes sum(c_i * p^i) over the
polynomial-basis coefficients.  All arithmetic stays in integer dtypes; the
quadratic-character table is built once per field by marking squares.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .ff import Fel, FieldDesc

CHUNK = 1 << 18

_TABLES: dict[tuple[int, int], "FieldTables"] = {}


def get_tables(field: FieldDesc) -> "FieldTables":
    key = (field.p, field.n)
    t = _TABLES.get(key)
    if t is None:
        t = FieldTables(field)
        _TABLES[key] = t
    return t


class FieldTables:
    def __init__(self, field: FieldDesc):
        self.field = field
        self.p = field.p
        self.n = field.n
        self.Q = field.order
        self._pw = np.array([self.p ** i for i in range(self.n)], dtype=np.int64)
        if self.n >= 2:
            self._red = np.array(field._red, dtype=np.int64)
        self._chi: np.ndarray | None = None

    def code_of(self, u: Fel) -> int:
        if u.field is not self.field:
            raise ValueError("element from another field")
        return int(sum(c * self.p ** i for i, c in enumerate(u.coeffs)))

    def fel_of(self, code: int) -> Fel:
        digs, c, p = [], int(code), self.p
        for _ in range(self.n):
            digs.append(c % p)
            c //= p
        return Fel(self.field, tuple(digs))

    def digits(self, codes: np.ndarray) -> np.ndarray:
        out = np.empty((codes.shape[0], self.n), dtype=np.int64)
        c = codes.astype(np.int64, copy=True)
        for i in range(self.n):
            out[:, i] = c % self.p
            c //= self.p
        return out

    def pack(self, digs: np.ndarray) -> np.ndarray:
        return digs @ self._pw

    def mul_digits(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Pointwise product of two (L, n) digit matrices, reduced."""
        p, n = self.p, self.n
        if n == 1:
            return (A * B) % p
        L = A.shape[0]
        conv = np.zeros((L, 2 * n - 1), dtype=np.int64)
        for i in range(n):
            conv[:, i:i + n] += A[:, i:i + 1] * B
        out = conv[:, :n]
        for j in range(n, 2 * n - 1):
            out += conv[:, j:j + 1] * self._red[j - n][None, :]
        return out % p

    def eval_digits(self, coeff_codes: list[int], X: np.ndarray) -> np.ndarray:
        """Horner evaluation at a digit matrix X; returns value codes."""
        L = X.shape[0]
        p = self.p
        top = self.digits(np.array([coeff_codes[-1]], dtype=np.int64))
        acc = np.repeat(top, L, axis=0)
        for code in reversed(coeff_codes[:-1]):
            acc = self.mul_digits(acc, X)
            if code:
                cd = self.digits(np.array([code], dtype=np.int64))
                acc = (acc + cd) % p
        return self.pack(acc)

    def chi(self) -> np.ndarray:
        """chi[code] in {-1, 0, +1}: the quadratic character."""
        if self._chi is None:
            arr = np.full(self.Q, -1, dtype=np.int8)
            for lo in range(0, self.Q, CHUNK):
                codes = np.arange(lo, min(lo + CHUNK, self.Q), dtype=np.int64)
                D = self.digits(codes)
                arr[self.pack(self.mul_digits(D, D))] = 1
            arr[0] = 0
            self._chi = arr
        return self._chi


def char_sum(field: FieldDesc, coeff_codes: list[int], jobs: int = 1) -> int:
    """Sum of chi(f(x)) over all x in the field, f given by coefficient codes."""
    tabs = get_tables(field)
    chi = tabs.chi()

    def piece(lo: int) -> int:
        codes = np.arange(lo, min(lo + CHUNK, tabs.Q), dtype=np.int64)
        vals = tabs.eval_digits(coeff_codes, tabs.digits(codes))
        return int(chi[vals].sum(dtype=np.int64))

    starts = range(0, tabs.Q, CHUNK)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return sum(ex.map(piece, starts))
    return sum(piece(lo) for lo in starts)


def triple_cover_sum(field: FieldDesc, coeff_codes_triple, jobs: int = 1
                     ) -> tuple[int, list[int]]:
    """For three polynomials f1, f2, f3 (coefficient codes over `field`),
    return (S, ramified_codes) where S = sum over all x with no f_i(x) = 0 of
    prod_i (1 + chi(f_i(x))), and ramified_codes lists the x codes where some
    f_i vanishes (handled exactly by the caller)."""
    tabs = get_tables(field)
    chi = tabs.chi()

    def piece(lo: int) -> tuple[int, list[int]]:
        codes = np.arange(lo, min(lo + CHUNK, tabs.Q), dtype=np.int64)
        X = tabs.digits(codes)
        cs = [chi[tabs.eval_digits(cc, X)] for cc in coeff_codes_triple]
        zmask = (cs[0] == 0) | (cs[1] == 0) | (cs[2] == 0)
        prod = ((1 + cs[0].astype(np.int64)) * (1 + cs[1]) * (1 + cs[2]))
        if zmask.any():
            prod[zmask] = 0
            ram = codes[zmask].tolist()
        else:
            ram = []
        return int(prod.sum(dtype=np.int64)), ram

    starts = range(0, tabs.Q, CHUNK)
    total, ramified = 0, []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(piece, starts))
    else:
        results = [piece(lo) for lo in starts]
    for s, ram in results:
        total += s
        ramified.extend(ram)
    ramified.sort()
    return total, ramified
