"""Sparse homogeneous polynomials over a ring descriptor.

Terms are stored as {packed_monomial_key: coefficient}.  Coefficients are
ints in [0, p) for prime characteristic and Fraction for characteristic 0.
The packed keys compare in the ring's term order, so ``max(terms)`` is the
leading monomial.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ParameterError
from .ring import Ring


def _cf(ring: Ring, c):
    """Normalize a raw coefficient into the ring's field."""
    if ring.char:
        return c % ring.char
    return Fraction(c) if not isinstance(c, Fraction) else c


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring: Ring) -> "Poly":
        return Poly(ring, {})

    @staticmethod
    def constant(ring: Ring, c) -> "Poly":
        c = _cf(ring, c)
        return Poly(ring, {ring.one_key: c} if c else {})

    @staticmethod
    def variable(ring: Ring, name: str) -> "Poly":
        i = ring._index.get(name)
        if i is None:
            raise ParameterError(f"no variable {name!r} in {ring}")
        return Poly(ring, {ring.var_keys[i]: _cf(ring, 1)})

    @staticmethod
    def from_exps(ring: Ring, pairs) -> "Poly":
        """Build from (coefficient, exponent-tuple) pairs."""
        t = {}
        for c, exps in pairs:
            c = _cf(ring, c)
            if not c:
                continue
            k = ring.key_of(tuple(exps))
            nc = _cf(ring, t.get(k, 0) + c)
            if nc:
                t[k] = nc
            else:
                t.pop(k, None)
        return Poly(ring, t)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lt_key(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def degree(self) -> int:
        """Weighted degree (max over terms); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.deg(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {self.ring.deg(k) for k in self.terms}
        return len(degs) == 1

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring is not other.ring:
            raise ParameterError("ring mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        p = self.ring.char
        t = dict(self.terms)
        for k, c in other.terms.items():
            nc = t.get(k, 0) + c
            nc = nc % p if p else nc
            if nc:
                t[k] = nc
            else:
                t.pop(k, None)
        return Poly(self.ring, t)

    def __neg__(self) -> "Poly":
        p = self.ring.char
        if p:
            return Poly(self.ring, {k: p - c for k, c in self.terms.items()})
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        p = ring.char
        one = ring.one_key
        t: dict = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for k1, c1 in a.items():
            base = k1 - one
            for k2, c2 in b.items():
                k = base + k2
                nc = t.get(k, 0) + c1 * c2
                if p:
                    nc %= p
                if nc:
                    t[k] = nc
                else:
                    t.pop(k, None)
        return Poly(ring, t)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = _cf(self.ring, c)
        if not c:
            return Poly.zero(self.ring)
        p = self.ring.char
        if p:
            return Poly(self.ring, {k: (v * c) % p for k, v in self.terms.items()})
        return Poly(self.ring, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ParameterError("negative power")
        result = Poly.constant(self.ring, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.cinv(self.lc()))

    # -- structure ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, object]]:
        """(key, coeff) pairs, leading term first."""
        return [(k, self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def coefficient(self, exps) -> object:
        return self.terms.get(self.ring.key_of(tuple(exps)), _cf(self.ring, 0))

    def evaluate(self, point):
        """Evaluate at a point (full coefficient substitution)."""
        ring = self.ring
        if len(point) != ring.n:
            raise ParameterError("point length mismatch")
        p = ring.char
        total = 0
        for k, c in self.terms.items():
            v = c
            for e, pt in zip(ring.exps_of(k), point):
                if e:
                    v = v * pow(pt, e, p) if p else v * pt ** e
            total = (total + v) % p if p else total + v
        return total

    def substitute(self, target: Ring, images: list["Poly"]) -> "Poly":
        """Ring map sending variable i to images[i] (a Poly over target)."""
        if len(images) != self.ring.n:
            raise ParameterError("need one image per variable")
        pow_cache: list[dict[int, Poly]] = [dict() for _ in images]

        def vpow(i: int, e: int) -> Poly:
            cache = pow_cache[i]
            got = cache.get(e)
            if got is None:
                got = images[i] ** e
                cache[e] = got
            return got

        acc = Poly.zero(target)
        for k, c in self.terms.items():
            term = Poly.constant(target, c)
            for i, e in enumerate(self.ring.exps_of(k)):
                if e:
                    term = term * vpow(i, e)
            acc = acc + term
        return acc

    def convert(self, target: Ring) -> "Poly":
        """Re-key into a ring with the same variable names (order/char change)."""
        if target.names != self.ring.names:
            raise ParameterError("convert requires identical variable names")
        return Poly.from_exps(target, [(c, self.ring.exps_of(k)) for k, c in self.terms.items()])

    # -- formatting ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for k, c in self.sorted_terms():
            exps = ring.exps_of(k)
            factors = []
            for name, e in zip(ring.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cstr = str(c)
            if factors and c == 1:
                body = "*".join(factors)
            elif factors:
                body = cstr + "*" + "*".join(factors)
            else:
                body = cstr
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"
