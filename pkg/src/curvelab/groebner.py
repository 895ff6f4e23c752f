"""Buchberger engine for homogeneous ideals.

Internals operate on raw term dicts {packed_key: coeff} for speed; the public
functions take and return Poly.  Bases are kept monic; reduction is a lazy-heap
division algorithm; pair pruning uses the coprime and chain criteria.
"""
from __future__ import annotations

from fractions import Fraction
from heapq import heappush, heappop, heapify
from typing import Sequence

from .errors import ParameterError, ResourceError
from .poly import Poly
from .ring import Ring

DEGREE_CAP = 500


def _nf_dict(f: dict, divs: list, ring: Ring, cap: int = DEGREE_CAP) -> dict:
    """Full normal form of f against monic divisors [(lt_key, items), ...]."""
    p = ring.char
    one = ring.one_key
    guard = ring.guard_mask
    work = dict(f)
    heap = [-k for k in work]
    heapify(heap)
    out: dict = {}
    while heap:
        k = -heappop(heap)
        c = work.get(k)
        if not c:
            continue
        for lt, items in divs:
            q = k - lt + one
            if q >= 0 and not (q & guard):
                break
        else:
            out[k] = c
            del work[k]
            continue
        delta = q - one
        if p:
            for gk, gc in items:
                kk = gk + delta
                old = work.get(kk, 0)
                nv = (old - c * gc) % p
                if nv:
                    if not old:
                        heappush(heap, -kk)
                    work[kk] = nv
                else:
                    work.pop(kk, None)
        else:
            for gk, gc in items:
                kk = gk + delta
                old = work.get(kk, 0)
                nv = old - c * gc
                if nv:
                    if not old:
                        heappush(heap, -kk)
                    work[kk] = nv
                else:
                    work.pop(kk, None)
    return out


def _monic_dict(t: dict, ring: Ring) -> dict:
    if not t:
        return t
    lc = t[max(t)]
    if lc == 1:
        return t
    inv = ring.cinv(lc)
    p = ring.char
    if p:
        return {k: (v * inv) % p for k, v in t.items()}
    return {k: v * inv for k, v in t.items()}


def _spoly(ti: dict, tj: dict, lcm: int, lti: int, ltj: int, ring: Ring) -> dict:
    p = ring.char
    di = lcm - lti
    dj = lcm - ltj
    s: dict = {}
    for k, c in ti.items():
        s[k + di] = c
    for k, c in tj.items():
        kk = k + dj
        nv = s.get(kk, 0) - c
        if p:
            nv %= p
        if nv:
            s[kk] = nv
        else:
            s.pop(kk, None)
    return s


def _check_homogeneous(gens: Sequence[Poly]):
    for g in gens:
        if not g.is_homogeneous():
            raise ParameterError(f"non-homogeneous generator: {g}")


def buchberger_dicts(gens: list[dict], ring: Ring, cap: int = DEGREE_CAP) -> list[dict]:
    """Reduced Groebner basis of homogeneous input, as monic term dicts."""
    basis = [_monic_dict(dict(g), ring) for g in gens if g]
    # drop duplicates up front for stability
    seen = set()
    uniq = []
    for b in sorted(basis, key=max):
        fz = frozenset(b.items())
        if fz not in seen:
            seen.add(fz)
            uniq.append(b)
    basis = uniq
    lts = [max(b) for b in basis]
    pairs: list
    pairs = []
    done: set = set()

    def queue_pair(i: int, j: int):
        lcm = ring.lcm_key(lts[i], lts[j])
        if ring.deg(lcm) > cap:
            raise ResourceError(
                f"Groebner degree cap {cap} exceeded (S-pair of degree {ring.deg(lcm)})")
        if ring.coprime(lts[i], lts[j]):
            done.add((i, j))
            return
        heappush(pairs, (lcm, i, j))

    for j in range(len(basis)):
        for i in range(j):
            queue_pair(i, j)

    divs = [(lts[i], list(basis[i].items())) for i in range(len(basis))]
    while pairs:
        lcm, i, j = heappop(pairs)
        if (i, j) in done:
            continue
        done.add((i, j))
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if ring.divides(lts[k], lcm):
                a = (i, k) if i < k else (k, i)
                b = (k, j) if k < j else (j, k)
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], lcm, lts[i], lts[j], ring)
        r = _nf_dict(s, divs, ring, cap)
        if not r:
            continue
        r = _monic_dict(r, ring)
        basis.append(r)
        lts.append(max(r))
        divs.append((lts[-1], list(r.items())))
        new = len(basis) - 1
        for i2 in range(new):
            queue_pair(i2, new)

    return _interreduce(basis, ring, cap)


def _interreduce(basis: list[dict], ring: Ring, cap: int = DEGREE_CAP) -> list[dict]:
    """Minimalize leads, tail-reduce, sort ascending by leading key."""
    order = sorted(range(len(basis)), key=lambda i: max(basis[i]))
    kept: list[int] = []
    for i in order:
        lt = max(basis[i])
        if any(ring.divides(max(basis[k]), lt) for k in kept):
            continue
        kept.append(i)
    reduced = []
    for pos, i in enumerate(kept):
        others = [(max(basis[k]), list(basis[k].items())) for k in kept if k != i]
        r = _nf_dict(basis[i], others, ring, cap) if others else dict(basis[i])
        if r:
            reduced.append(_monic_dict(r, ring))
    reduced.sort(key=max)
    return reduced


# -- public API -------------------------------------------------------------


def _check_order(ring: Ring, order):
    if order is None:
        return
    if order == "degrevlex" and not ring.elim:
        return
    if isinstance(order, tuple) and order[0] == "elim" and ring.elim == order[1]:
        return
    raise ParameterError(f"order {order!r} does not match ring {ring}")


def normal_form(f: Poly, basis: Sequence[Poly], order=None) -> Poly:
    """Remainder of f on division by basis; no remainder term is divisible
    by any leading term of basis."""
    if not basis:
        raise ParameterError("empty divisor set")
    ring = f.ring
    _check_order(ring, order)
    divs = []
    for g in basis:
        if g.ring is not ring:
            raise ParameterError("ring mismatch")
        if g.is_zero():
            continue
        t = _monic_dict(g.terms, ring)
        divs.append((max(t), list(t.items())))
    return Poly(ring, _nf_dict(f.terms, divs, ring))


def groebner_basis(gens: Sequence[Poly], order=None, cap: int = DEGREE_CAP) -> list[Poly]:
    """Reduced Groebner basis, monic, sorted by increasing leading term."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring is not ring:
            raise ParameterError("ring mismatch")
    _check_order(ring, order)
    _check_homogeneous(gens)
    gb = buchberger_dicts([g.terms for g in gens], ring, cap)
    return [Poly(ring, t) for t in gb]
