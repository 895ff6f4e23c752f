"""Graded polynomial rings over a prime field (or QQ) with packed monomials.

Monomials are packed into a single int whose natural integer order *is* the
ring's term order.  Layout, least significant field first, 12 bits per field:

    slot i   (i = 0..n-1):  CAP - e_i          (reversed/negated exponents)
    slot n:                 weighted degree of the non-eliminated variables
    slot n+1 (elim only):   e_0                 (the eliminated variable, plain)

Integer comparison of keys then realizes degrevlex (vars[0] > vars[1] > ...),
or the block order eliminating vars[0] when ``elim=1``.  Products are single
int additions; divisibility is one guard-bit test.
"""
from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import ParameterError

FIELD_BITS = 12
CAP = (1 << (FIELD_BITS - 1)) - 1  # 2047: max exponent / degree per slot
GUARD = 1 << (FIELD_BITS - 1)

DEFAULT_CHAR = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """Arithmetic mod a prime p; thin helper used by tests and rank code."""

    def __init__(self, p: int = DEFAULT_CHAR):
        if not _is_prime(p):
            raise ParameterError(f"characteristic {p} is not prime")
        self.p = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)


_RING_CACHE: dict[tuple, "Ring"] = {}


class Ring:
    """Polynomial ring descriptor; instances are interned by signature."""

    def __new__(cls, names: tuple[str, ...], char: int = DEFAULT_CHAR,
                weights: tuple[int, ...] | None = None, elim: int = 0):
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        sig = (tuple(names), char, weights, elim)
        ring = _RING_CACHE.get(sig)
        if ring is not None:
            return ring
        ring = super().__new__(cls)
        ring._init(tuple(names), char, weights, elim)
        _RING_CACHE[sig] = ring
        return ring

    def _init(self, names, char, weights, elim):
        if elim not in (0, 1):
            raise ParameterError("only a single-variable elimination block is supported")
        if char != 0 and not _is_prime(char):
            raise ParameterError(f"characteristic {char} is not prime")
        self.names = names
        self.char = char
        self.weights = weights
        self.elim = elim
        self.n = len(names)
        self._shifts = tuple(i * FIELD_BITS for i in range(self.n))
        self._deg_shift = self.n * FIELD_BITS
        self._elim_shift = (self.n + 1) * FIELD_BITS
        self.one_key = sum(CAP << s for s in self._shifts)
        self.guard_mask = sum(GUARD << s for s in self._shifts)
        self.var_keys = tuple(
            self.key_of(tuple(1 if j == i else 0 for j in range(self.n)))
            for i in range(self.n)
        )
        self._index = {nm: i for i, nm in enumerate(names)}

    # -- monomial packing ------------------------------------------------

    def key_of(self, exps) -> int:
        if len(exps) != self.n:
            raise ParameterError("exponent length does not match ring")
        key = 0
        wdeg = 0
        for i, e in enumerate(exps):
            if e < 0 or e > CAP:
                raise ParameterError(f"exponent {e} out of range")
            key |= (CAP - e) << self._shifts[i]
            if not (self.elim and i == 0):
                wdeg += self.weights[i] * e
        if wdeg > CAP:
            raise ParameterError(f"degree {wdeg} exceeds cap {CAP}")
        key |= wdeg << self._deg_shift
        if self.elim:
            key |= exps[0] << self._elim_shift
        return key

    def exps_of(self, key: int) -> tuple[int, ...]:
        return tuple(CAP - ((key >> s) & ((1 << FIELD_BITS) - 1)) for s in self._shifts)

    def deg(self, key: int) -> int:
        """Weighted degree (eliminated variable has weight 0)."""
        return (key >> self._deg_shift) & ((1 << FIELD_BITS) - 1)

    def mul(self, k1: int, k2: int) -> int:
        return k1 + k2 - self.one_key

    def quo(self, k1: int, k2: int) -> int | None:
        """Key of k1/k2, or None when k2 does not divide k1."""
        q = k1 - k2 + self.one_key
        if q < 0 or (q & self.guard_mask):
            return None
        return q

    def divides(self, k2: int, k1: int) -> bool:
        q = k1 - k2 + self.one_key
        return q >= 0 and not (q & self.guard_mask)

    def lcm_key(self, k1: int, k2: int) -> int:
        e1 = self.exps_of(k1)
        e2 = self.exps_of(k2)
        return self.key_of(tuple(max(a, b) for a, b in zip(e1, e2)))

    def coprime(self, k1: int, k2: int) -> bool:
        e1 = self.exps_of(k1)
        e2 = self.exps_of(k2)
        return all(a == 0 or b == 0 for a, b in zip(e1, e2))

    # -- enumeration -----------------------------------------------------

    def monomial_count(self, degree: int) -> int:
        if degree < 0:
            return 0
        return comb(degree + self.n - 1 - self.elim, self.n - 1 - self.elim)

    def monomials(self, degree: int) -> list[int]:
        """All monomial keys of the given total degree, sorted descending.

        Only meaningful for weight-1 rings without an elimination block.
        """
        if self.elim or any(w != 1 for w in self.weights):
            raise ParameterError("monomial enumeration needs a standard grading")
        if degree < 0:
            return []
        n = self.n
        keys = []
        for bars in combinations(range(degree + n - 1), n - 1):
            exps = []
            prev = -1
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(degree + n - 1 - prev - 1)
            keys.append(self.key_of(tuple(exps)))
        keys.sort(reverse=True)
        return keys

    # -- coefficient helpers ----------------------------------------------

    def cinv(self, c):
        if self.char:
            return pow(c, self.char - 2, self.char)
        return 1 / c

    def __repr__(self):
        k = f"GF({self.char})" if self.char else "QQ"
        tag = f", elim={self.elim}" if self.elim else ""
        return f"Ring({k}[{','.join(self.names)}]{tag})"


def p3_ring(char: int = DEFAULT_CHAR) -> Ring:
    """Coordinate ring of P^3, variables x > y > z > t, degrevlex."""
    return Ring(("x", "y", "z", "t"), char)


def plane_ring(char: int = DEFAULT_CHAR) -> Ring:
    """Coordinate ring of the plane H = {x=0}, variables y > z > t."""
    return Ring(("y", "z", "t"), char)


def elim_ring(base: Ring) -> Ring:
    """base with one weight-0 auxiliary variable u prepended and eliminated."""
    return Ring(("u",) + base.names, base.char, (0,) + base.weights, elim=1)
