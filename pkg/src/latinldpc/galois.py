"""Exact arithmetic over GF(p^m) with log/antilog tables.

Elements are stored as packed integers: the element with polynomial
coefficients (c0, c1, ..., c_{m-1}) over GF(p), constant term first, is the
integer c0 + c1*p + ... + c_{m-1}*p^(m-1).  For p = 2 this is the usual
bit-vector encoding.  The zero element is 0, and nonzero elements are powers
of a designated primitive element alpha; its discrete log of zero is the
distinct ``NEG_INFINITY`` token, never an integer sentinel.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

MAX_FIELD_ORDER = 1 << 16


class _NegInfinity:
    """Distinct token for the exponent of the zero element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"


NEG_INFINITY = _NegInfinity()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p).  Polynomials are tuples of coefficients,
# constant term first, with no trailing zeros (except the zero polynomial ()).
# ---------------------------------------------------------------------------


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    """Remainder of a divided by a monic polynomial mod."""
    a = list(a)
    d = len(mod) - 1
    while len(a) > d:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - d
            for i in range(d + 1):
                a[shift + i] = (a[shift + i] - lead * mod[i]) % p
        a.pop()
    return _poly_trim(a)


def _poly_divides(div, a, p):
    """True if monic div divides a over GF(p)."""
    inv_lead = pow(div[-1], p - 2, p) if div[-1] != 1 else 1
    monic = tuple((c * inv_lead) % p for c in div)
    return _poly_mod(a, monic, p) == ()


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility of a polynomial over GF(p) by trial division.

    Checks divisibility by every monic polynomial of degree up to
    deg(coeffs) // 2.  Intended for the small degrees used here (q <= 2^16).
    """
    poly = _poly_trim(coeffs)
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for packed in range(p**d):
            low = _unpack(packed, p, d)
            div = low + (1,)
            if _poly_divides(div, poly, p):
                return False
    return True


def _unpack(x: int, p: int, m: int):
    digits = []
    for _ in range(m):
        digits.append(x % p)
        x //= p
    return tuple(digits)


def _pack(digits, p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


def default_modulus(p: int, m: int):
    """Smallest monic irreducible polynomial of degree m over GF(p).

    "Smallest" means smallest packed value of the non-leading coefficients,
    i.e. the coefficient tuple compared with the highest degree most
    significant.  Fixed so that constructions are reproducible.
    """
    if m == 1:
        return (0, 1)
    for packed in range(p**m):
        cand = _unpack(packed, p, m) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


class GaloisField:
    """GF(q), q = p^m, with a designated primitive element alpha.

    Immutable after construction: all tables are precomputed, so instances
    are safe to share across threads and processes.

    Attributes:
        p, m, q: characteristic, extension degree, order.
        modulus: coefficients of the defining irreducible polynomial,
            constant term first, length m + 1, monic.
        alpha: packed representation of the primitive element.
        exp_table: numpy array, exp_table[t] = alpha^t for t in [0, q-2].
        log_table: numpy array, log_table[a] = t for nonzero a; entry 0 is
            an internal -1 (use log_alpha, which returns NEG_INFINITY).
    """

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError("extension degree m must be >= 1")
        q = p**m
        if q > MAX_FIELD_ORDER:
            raise ValueError(f"field order {q} exceeds supported bound {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, m)
        else:
            modulus = _poly_trim(modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m, constant term first")
            if any(not (0 <= c < p) for c in modulus):
                raise ValueError("modulus coefficients must lie in [0, p)")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")

        self.p = p
        self.m = m
        self.q = q
        self.modulus = tuple(modulus)

        self._powers_of_p = tuple(p**k for k in range(m))
        self.alpha = self._find_primitive()
        self.exp_table, self.log_table = self._build_tables()
        # canonical index order (0, 1, alpha, alpha^2, ...): position 0 is the
        # zero element, position 1 + t is alpha^t
        self._pos_of = np.empty(q, dtype=np.int64)
        self._pos_of[0] = 0
        self._pos_of[self.exp_table] = np.arange(1, q, dtype=np.int64)
        self._elem_at = np.concatenate(([0], self.exp_table))

    # -- construction helpers ------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Product via polynomial arithmetic (no tables); used during setup."""
        pa = _unpack(a, self.p, self.m)
        pb = _unpack(b, self.p, self.m)
        prod = _poly_mod(_poly_mul(pa, pb, self.p), self.modulus, self.p)
        return _pack(prod + (0,) * (self.m - len(prod)), self.p)

    def _pow_raw(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._mul_raw(out, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return out

    def _find_primitive(self) -> int:
        n = self.q - 1
        factors = _prime_factors(n)
        for a in range(1, self.q):
            if all(self._pow_raw(a, n // f) != 1 for f in factors):
                return a
        raise RuntimeError("no primitive element found (internal error)")

    def _build_tables(self):
        q = self.q
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for t in range(q - 1):
            exp[t] = x
            log[x] = t
            x = self._mul_raw(x, self.alpha)
        if x != 1 or len(set(exp.tolist())) != q - 1:
            raise RuntimeError("alpha is not primitive (internal error)")
        return exp, log

    # -- element arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        """Coefficientwise sum mod p."""
        if self.p == 2:
            return a ^ b
        out = 0
        for pk in self._powers_of_p:
            out += ((a // pk + b // pk) % self.p) * pk
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        out = 0
        for pk in self._powers_of_p:
            out += ((-(a // pk)) % self.p) * pk
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        """Log-table product; zero if either operand is zero."""
        if a == 0 or b == 0:
            return 0
        t = (int(self.log_table[a]) + int(self.log_table[b])) % (self.q - 1)
        return int(self.exp_table[t])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return int(self.exp_table[(-int(self.log_table[a])) % (self.q - 1)])

    def exp_alpha(self, t) -> int:
        """alpha^t, with exp_alpha(NEG_INFINITY) = 0."""
        if t is NEG_INFINITY:
            return 0
        return int(self.exp_table[t % (self.q - 1)])

    def log_alpha(self, a: int):
        """Discrete log base alpha; NEG_INFINITY for the zero element."""
        if a == 0:
            return NEG_INFINITY
        return int(self.log_table[a])

    def coeffs(self, a: int):
        """Coefficient vector of an element, constant term first."""
        return _unpack(a, self.p, self.m)

    def from_coeffs(self, digits) -> int:
        if len(digits) != self.m or any(not (0 <= d < self.p) for d in digits):
            raise ValueError("need m coefficients in [0, p)")
        return _pack(tuple(digits), self.p)

    # -- canonical index order -------------------------------------------------

    def position_of(self, a: int) -> int:
        """Index of element a in the canonical order (0, 1, alpha, ...)."""
        return int(self._pos_of[a])

    def element_at(self, pos: int) -> int:
        return int(self._elem_at[pos])

    def elements(self):
        """All q elements in canonical order."""
        return [int(x) for x in self._elem_at]

    # -- vectorized arithmetic on packed numpy arrays ---------------------------

    def vadd(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pk in self._powers_of_p:
            out += ((a // pk + b // pk) % self.p) * pk
        return out

    def vneg(self, a):
        a = np.asarray(a)
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        for pk in self._powers_of_p:
            out += ((-(a // pk)) % self.p) * pk
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def add_sub_tables(self):
        """(add_table, sub_table) as q x q arrays; cached per field."""
        cached = getattr(self, "_addsub", None)
        if cached is None:
            all_e = np.arange(self.q, dtype=np.int64)
            add = self.vadd(all_e[:, None], all_e[None, :])
            sub = self.vsub(all_e[:, None], all_e[None, :])
            self._addsub = (add, sub)
            cached = self._addsub
        return cached

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GaloisField(p={self.p}, m={self.m}, modulus={self.modulus})"


def make_field(p: int, m: int, modulus=None) -> GaloisField:
    """Build GF(p^m) with the default (or given) modulus and primitive alpha.

    The primitive element is the packed-smallest element of multiplicative
    order q - 1, and the default modulus is the packed-smallest monic
    irreducible of degree m, so repeated runs construct identical fields.
    """
    return GaloisField(p, m, modulus)
