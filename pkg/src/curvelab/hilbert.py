"""Hilbert series of monomial quotients, exactly, via the numerator recursion.

For a monomial ideal M in n standard-graded variables the Hilbert series of
R/M is N(T)/(1-T)^n with N the (finite) numerator computed here.  Dimension,
degree and arithmetic genus fall out of the reduced form Q/(1-T)^D.
"""
from __future__ import annotations

from math import comb

from .errors import CurvelabError, ParameterError


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    kept: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a >= b for a, b in zip(g, k)) for k in kept):
            kept.append(g)
    return kept


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, c in a.items():
        for j, d in b.items():
            k = i + j
            v = out.get(k, 0) + c * d
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def hilbert_numerator(gens: list[tuple[int, ...]], n: int) -> dict[int, int]:
    """Numerator of the Hilbert series of R/(gens), gens as exponent tuples."""
    gens = _minimalize([tuple(g) for g in gens])
    if any(sum(g) == 0 for g in gens):
        return {}
    return _numerator(gens, n)


def _numerator(gens: list[tuple[int, ...]], n: int) -> dict[int, int]:
    if not gens:
        return {0: 1}
    # base case: pairwise distinct pure variable powers
    if all(sum(1 for e in g if e) == 1 for g in gens):
        acc = {0: 1}
        for g in gens:
            acc = _poly_mul(acc, {0: 1, sum(g): -1})
        return acc
    # pivot on the most shared variable
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    pivot = tuple(1 if i == v else 0 for i in range(n))
    # I + (x_v)
    plus = _minimalize([pivot] + [g for g in gens if g[v] == 0])
    # I : x_v
    colon = _minimalize([tuple(e - 1 if i == v and e else e for i, e in enumerate(g))
                         for g in gens])
    n1 = _numerator(plus, n)
    n2 = _numerator(colon, n)
    out = dict(n1)
    for k, c in n2.items():
        v2 = out.get(k + 1, 0) + c
        if v2:
            out[k + 1] = v2
        else:
            out.pop(k + 1, None)
    return out


def hf_from_numerator(num: dict[int, int], n: int, j: int) -> int:
    """Hilbert function of R/M at degree j from a numerator over n variables."""
    if j < 0:
        return 0
    total = 0
    for k, c in num.items():
        if j - k >= 0:
            total += c * comb(j - k + n - 1, n - 1)
    return total


def reduce_numerator(num: dict[int, int], n: int) -> tuple[dict[int, int], int]:
    """Cancel all (1-T) factors: returns (Q, D) with HS = Q/(1-T)^D, Q(1) != 0."""
    if not num:
        return {}, 0
    q = dict(num)
    d = n
    while d > 0 and sum(q.values()) == 0:
        # divide by (1-T): cumulative sums
        top = max(q)
        run = 0
        nq: dict[int, int] = {}
        for k in range(top + 1):
            run += q.get(k, 0)
            if run:
                nq[k] = run
        # exact division requires the final running sum to vanish
        if run != 0:
            raise CurvelabError("numerator inconsistency")
        q = nq
        d -= 1
    return q, d


def dimension_degree_from_numerator(num: dict[int, int], n: int):
    """(proj_dim, degree, genus_or_None) of Proj(R/M) from the numerator.

    proj_dim is -1 for the empty subscheme, 0 for finite schemes, 1 for
    curves (with arithmetic genus), 2 for surfaces.
    """
    if not num:
        raise ParameterError("unit ideal has empty Proj")
    q, dim = reduce_numerator(num, n)
    if dim == 0:
        return (-1, 0, None)
    q1 = sum(q.values())
    if dim == 1:
        return (0, q1, None)
    if dim == 2:
        dq1 = sum(k * c for k, c in q.items())
        return (1, q1, 1 - q1 + dq1)
    if dim == 3:
        return (2, q1, None)
    raise ParameterError(f"subscheme of projective dimension {dim - 1} not supported")
