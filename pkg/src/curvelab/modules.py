"""Groebner machinery for submodules of graded free modules.

A module term is packed as ``(position << POS_SHIFT) | ring_key`` and a module
element is a dict {packed: coeff}.  Orders expose ``minkey`` (smallest key =
leading term) so heaps pop leading terms first.  Used for syzygies, free
resolutions, ideal quotients and the homology of dualized complexes.
"""
from __future__ import annotations

from heapq import heappush, heappop, heapify

from .errors import KernelError, ParameterError, ResourceError
from .groebner import DEGREE_CAP, buchberger_dicts
from .poly import Poly
from .ring import Ring

POS_SHIFT = 96
RK_MASK = (1 << POS_SHIFT) - 1


def pack(pos: int, rk: int) -> int:
    return (pos << POS_SHIFT) | rk


def unpack(key: int) -> tuple[int, int]:
    return key >> POS_SHIFT, key & RK_MASK


class RingPosOrder:
    """Ring order on each component, ties by smaller position."""

    def __init__(self, ring: Ring):
        self.ring = ring

    def minkey(self, key: int):
        return (-(key & RK_MASK), key >> POS_SHIFT)


class POTOrder:
    """Position-over-term: position 0 dominates; elimination of low positions."""

    def __init__(self, ring: Ring):
        self.ring = ring

    def minkey(self, key: int):
        return (key >> POS_SHIFT, -(key & RK_MASK))


class SchreyerOrder:
    """Order induced by the leading terms of the previous level's basis."""

    def __init__(self, ring: Ring, parent, leads: list[int]):
        self.ring = ring
        self.parent = parent
        self.leads = leads
        self._one = ring.one_key

    def minkey(self, key: int):
        pos = key >> POS_SHIFT
        rk = key & RK_MASK
        prod = self.leads[pos] + rk - self._one  # ring part multiplies, pos kept
        return (self.parent.minkey(prod), pos)


class TOPDegOrder:
    """Degree (with twists) first, then ring order, then position."""

    def __init__(self, ring: Ring, twists: list[int]):
        self.ring = ring
        self.twists = twists

    def minkey(self, key: int):
        pos = key >> POS_SHIFT
        rk = key & RK_MASK
        return (-(self.ring.deg(rk) + self.twists[pos]), -rk, pos)


def elt_degree(elt: dict, ring: Ring, twists) -> int:
    """Degree of a homogeneous module element; raises if inhomogeneous."""
    degs = {ring.deg(k & RK_MASK) + twists[k >> POS_SHIFT] for k in elt}
    if len(degs) != 1:
        raise ParameterError("inhomogeneous module element")
    return degs.pop()


def _lead(elt: dict, order) -> int:
    return min(elt, key=order.minkey)


def _monic(elt: dict, ring: Ring, lead: int) -> dict:
    lc = elt[lead]
    if lc == 1:
        return elt
    inv = ring.cinv(lc)
    p = ring.char
    if p:
        return {k: (v * inv) % p for k, v in elt.items()}
    return {k: v * inv for k, v in elt.items()}


def mod_nf(f: dict, basis: list, order, ring: Ring, track: bool = False):
    """Normal form of f against monic basis rows (lead, pos, rk, items).

    Returns (remainder, cofactors) where cofactors[i] is the term dict u with
    f = sum u_i * g_i + remainder (only when track=True).
    """
    p = ring.char
    one = ring.one_key
    guard = ring.guard_mask
    work = dict(f)
    heap = [(order.minkey(k), k) for k in work]
    heapify(heap)
    out: dict = {}
    cof: dict = {} if track else None
    while heap:
        _, k = heappop(heap)
        c = work.get(k)
        if not c:
            continue
        kpos = k >> POS_SHIFT
        krk = k & RK_MASK
        hit = -1
        q = 0
        for i, (lead, gpos, grk, items) in enumerate(basis):
            if gpos != kpos:
                continue
            qq = krk - grk + one
            if qq >= 0 and not (qq & guard):
                hit = i
                q = qq
                break
        if hit < 0:
            out[k] = c
            del work[k]
            continue
        if track:
            d = cof.setdefault(hit, {})
            nv = d.get(q, 0) + c
            if p:
                nv %= p
            if nv:
                d[q] = nv
            else:
                d.pop(q, None)
        delta = q - one
        items = basis[hit][3]
        if p:
            for gk, gc in items:
                kk = gk + delta
                old = work.get(kk, 0)
                nv = (old - c * gc) % p
                if nv:
                    if not old:
                        heappush(heap, (order.minkey(kk), kk))
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
                        heappush(heap, (order.minkey(kk), kk))
                    work[kk] = nv
                else:
                    work.pop(kk, None)
    return out, cof


def _rows(basis: list[dict], order) -> list:
    rows = []
    for b in basis:
        lead = _lead(b, order)
        rows.append((lead, lead >> POS_SHIFT, lead & RK_MASK, list(b.items())))
    return rows


def module_buchberger(elts: list[dict], order, ring: Ring, twists,
                      cap: int = DEGREE_CAP) -> list[dict]:
    """Groebner basis (not reduced) of the submodule generated by elts."""
    for e in elts:
        elt_degree(e, ring, twists)
    basis = []
    for e in elts:
        if e:
            lead = _lead(e, order)
            basis.append(_monic(dict(e), ring, lead))
    rows = _rows(basis, order)
    pairs: list = []
    done: set = set()

    def queue(i: int, j: int):
        li, lj = rows[i], rows[j]
        if li[1] != lj[1]:
            return
        lcm = ring.lcm_key(li[2], lj[2])
        if ring.deg(lcm) + twists[li[1]] > cap:
            raise ResourceError(f"module GB degree cap {cap} exceeded")
        heappush(pairs, (ring.deg(lcm) + twists[li[1]], lcm, i, j))

    for j in range(len(basis)):
        for i in range(j):
            queue(i, j)

    while pairs:
        _, lcm, i, j = heappop(pairs)
        if (i, j) in done:
            continue
        done.add((i, j))
        pos = rows[i][1]
        skip = False
        for k in range(len(basis)):
            if k == i or k == j or rows[k][1] != pos:
                continue
            if ring.divides(rows[k][2], lcm):
                a = (i, k) if i < k else (k, i)
                b = (k, j) if k < j else (j, k)
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        s = _spair(basis[i], basis[j], rows[i], rows[j], lcm, ring)
        r, _ = mod_nf(s, rows, order, ring)
        if not r:
            continue
        lead = _lead(r, order)
        basis.append(_monic(r, ring, lead))
        rows.append((lead, lead >> POS_SHIFT, lead & RK_MASK, list(basis[-1].items())))
        new = len(basis) - 1
        for i2 in range(new):
            queue(i2, new)
    return basis


def _spair(bi: dict, bj: dict, ri, rj, lcm: int, ring: Ring) -> dict:
    p = ring.char
    di = lcm - ri[2]
    dj = lcm - rj[2]
    s: dict = {}
    for k, c in bi.items():
        s[k + di] = c
    for k, c in bj.items():
        kk = k + dj
        nv = s.get(kk, 0) - c
        if p:
            nv %= p
        if nv:
            s[kk] = nv
        else:
            s.pop(kk, None)
    return s


def gb_syzygies(gb: list[dict], order, ring: Ring, twists,
                cap: int = DEGREE_CAP):
    """Syzygies of a module Groebner basis, via all S-pair reductions.

    Returns (syzygies, schreyer_order, new_twists): the syzygies are a
    Groebner basis in the returned Schreyer order (Schreyer's theorem).
    Raises KernelError if some S-pair fails to reduce to zero.
    """
    rows = _rows(gb, order)
    new_twists = [elt_degree(b, ring, twists) for b in gb]
    syz: list[dict] = []
    p = ring.char
    one = ring.one_key
    for j in range(len(gb)):
        for i in range(j):
            if rows[i][1] != rows[j][1]:
                continue
            lcm = ring.lcm_key(rows[i][2], rows[j][2])
            if ring.deg(lcm) + twists[rows[i][1]] > cap:
                raise ResourceError(f"syzygy degree cap {cap} exceeded")
            s = _spair(gb[i], gb[j], rows[i], rows[j], lcm, ring)
            r, cof = mod_nf(s, rows, order, ring, track=True)
            if r:
                raise KernelError("input to gb_syzygies is not a Groebner basis")
            elt: dict = {}
            qi = lcm - rows[i][2] + one
            qj = lcm - rows[j][2] + one
            elt[pack(i, qi)] = 1
            prev = elt.get(pack(j, qj), 0)
            elt[pack(j, qj)] = (prev - 1) % p if p else prev - 1
            if not elt[pack(j, qj)]:
                del elt[pack(j, qj)]
            for k, u in (cof or {}).items():
                for rk, c in u.items():
                    kk = pack(k, rk)
                    nv = elt.get(kk, 0) - c
                    if p:
                        nv %= p
                    if nv:
                        elt[kk] = nv
                    else:
                        elt.pop(kk, None)
            if elt:
                syz.append(elt)
    leads = [r[0] for r in rows]
    return syz, SchreyerOrder(ring, order, leads), new_twists


# -- derived operations ------------------------------------------------------


def ideal_gb_as_module(gens: list[Poly], ring: Ring, cap: int = DEGREE_CAP):
    """Reduced GB of an ideal, presented as rank-1 module elements."""
    gb = buchberger_dicts([g.terms for g in gens if not g.is_zero()], ring, cap)
    return [dict(t) for t in gb]


def syzygy_module(gens: list[Poly], cap: int = DEGREE_CAP) -> list[dict]:
    """Generators of the first syzygy module of the given ring elements.

    Output elements live in a free module with one position per generator
    (twists = generator degrees).
    """
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring is not ring:
            raise ParameterError("ring mismatch")
        if not g.is_homogeneous():
            raise ParameterError("syzygies need homogeneous input")
    s = len(gens)
    elts = []
    for j, g in enumerate(gens):
        v = {pack(0, k): c for k, c in g.terms.items()}
        v[pack(1 + j, ring.one_key)] = 1
        elts.append(v)
    twists = [0] + [g.degree() for g in gens]
    order = POTOrder(ring)
    gb = module_buchberger(elts, order, ring, twists, cap)
    syz = []
    for b in gb:
        if all(k >> POS_SHIFT for k in b):
            syz.append({pack((k >> POS_SHIFT) - 1, k & RK_MASK): c for k, c in b.items()})
    return syz


def quotient_by_poly(gens: list[Poly], f: Poly, cap: int = DEGREE_CAP) -> list[Poly]:
    """Generators of (I : f) for I = (gens)."""
    if f.is_zero():
        raise ParameterError("quotient by zero")
    ring = f.ring
    syz = syzygy_module([f] + list(gens), cap)
    out = {}
    for s in syz:
        comp = {k & RK_MASK: c for k, c in s.items() if (k >> POS_SHIFT) == 0}
        if comp:
            out[frozenset(comp.items())] = comp
    polys = [Poly(ring, dict(t)) for t in out.values()]
    return polys + list(gens)
