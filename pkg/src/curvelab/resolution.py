"""Graded free resolutions: Schreyer iteration plus constant-entry minimization.

Shift convention: a free module with shift list [s_1..s_k] is R(-s_1) + ... +
R(-s_k), and the entry (i, j) of a map into shifts t is homogeneous of degree
s_j - t_i (deg(entry) + target shift = source shift).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import KernelError, ParameterError, ResourceError
from .groebner import DEGREE_CAP
from .linalg import fp_rank, fraction_rank
from .modules import (POS_SHIFT, RK_MASK, RingPosOrder, gb_syzygies,
                      ideal_gb_as_module, pack)
from .poly import Poly
from .ring import Ring


@dataclass
class GradedMap:
    """Matrix of homogeneous polynomials between graded free modules."""

    ring: Ring
    source_shifts: list[int]
    target_shifts: list[int]
    rows: list[list[Poly]]  # len(target) x len(source)

    def validate(self):
        for i, t in enumerate(self.target_shifts):
            for j, s in enumerate(self.source_shifts):
                e = self.rows[i][j]
                if e.is_zero():
                    continue
                if not e.is_homogeneous() or e.degree() != s - t:
                    raise KernelError(
                        f"entry ({i},{j}) has degree {e.degree()}, expected {s - t}")

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other (other feeds into self's source)."""
        if other.target_shifts != self.source_shifts:
            raise ParameterError("shift mismatch in composition")
        rows = []
        for i in range(len(self.target_shifts)):
            out_row = []
            for j in range(len(other.source_shifts)):
                acc = Poly.zero(self.ring)
                for k in range(len(self.source_shifts)):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                out_row.append(acc)
            rows.append(out_row)
        return GradedMap(self.ring, list(other.source_shifts),
                         list(self.target_shifts), rows)

    def transpose_into(self, twist: int) -> "GradedMap":
        """Dual map Hom(-, R(-twist)): shifts negate around the twist."""
        rows = [[self.rows[j][i] for j in range(len(self.target_shifts))]
                for i in range(len(self.source_shifts))]
        return GradedMap(self.ring,
                         [twist - t for t in self.target_shifts],
                         [twist - s for s in self.source_shifts],
                         rows)


def graded_piece_rank(m: GradedMap, degree: int) -> tuple[int, int, int]:
    """Exact (rank, source_dim, target_dim) of a graded map in one degree."""
    ring = m.ring
    src: list[tuple[int, int]] = []  # (column block j, monomial key)
    for j, s in enumerate(m.source_shifts):
        for key in ring.monomials(degree - s):
            src.append((j, key))
    tgt_index: dict[tuple[int, int], int] = {}
    for i, t in enumerate(m.target_shifts):
        for key in ring.monomials(degree - t):
            tgt_index[(i, key)] = len(tgt_index)
    rows = [[0] * len(src) for _ in range(len(tgt_index))]
    for col, (j, skey) in enumerate(src):
        for i in range(len(m.target_shifts)):
            e = m.rows[i][j]
            if e.is_zero():
                continue
            for k, c in e.terms.items():
                idx = tgt_index.get((i, ring.mul(k, skey)))
                if idx is not None:
                    rows[idx][col] = c
    if not src or not tgt_index:
        return (0, len(src), len(tgt_index))
    if ring.char:
        rank = fp_rank(rows, ring.char)
    else:
        rank = fraction_rank(rows)
    return (rank, len(src), len(tgt_index))


@dataclass
class Resolution:
    """Free resolution of an ideal: 0 -> F_len .. -> F_1 -> I -> 0."""

    ring: Ring
    gens: list[Poly]              # images of F_1 (the minimal generators)
    shifts: list[list[int]]       # shifts of F_1, F_2, ...
    diffs: list[GradedMap]        # d_2: F_2 -> F_1, d_3: F_3 -> F_2, ...
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.shifts)

    def betti(self) -> dict[tuple[int, int], int]:
        """Graded Betti numbers of I: (homological index, shift) -> rank."""
        table: dict[tuple[int, int], int] = {}
        for i, sh in enumerate(self.shifts):
            for s in sh:
                table[(i, s)] = table.get((i, s), 0) + 1
        return table

    def validate(self):
        if len(self.gens) != len(self.shifts[0]):
            raise KernelError("generator count does not match F_1")
        for g, s in zip(self.gens, self.shifts[0]):
            if g.degree() != s:
                raise KernelError("generator degree mismatch")
        for d in self.diffs:
            d.validate()
        # d_1 o d_2 = 0 against the generator row
        if self.diffs:
            d2 = self.diffs[0]
            for j in range(len(d2.source_shifts)):
                acc = Poly.zero(self.ring)
                for i, g in enumerate(self.gens):
                    e = d2.rows[i][j]
                    if not e.is_zero():
                        acc = acc + e * g
                if not acc.is_zero():
                    raise KernelError("d1 o d2 != 0")
        for a, b in zip(self.diffs, self.diffs[1:]):
            if not a.compose(b).is_zero():
                raise KernelError("consecutive differentials do not compose to zero")
        if self.minimal:
            for d in self.diffs:
                for i, t in enumerate(d.target_shifts):
                    for j, s in enumerate(d.source_shifts):
                        if s == t and not d.rows[i][j].is_zero():
                            raise KernelError("non-minimal resolution: constant entry")
        ranks = [len(sh) for sh in self.shifts]
        alt = sum(r if i % 2 == 0 else -r for i, r in enumerate(ranks))
        if alt != 1:
            raise KernelError(f"alternating rank sum {alt} != 1")


def _columns_to_matrix(ring: Ring, elts: list[dict], n_target: int) -> list[list[Poly]]:
    rows: list[list[Poly]] = [[Poly.zero(ring) for _ in elts] for _ in range(n_target)]
    for j, e in enumerate(elts):
        per_pos: dict[int, dict] = {}
        for k, c in e.items():
            per_pos.setdefault(k >> POS_SHIFT, {})[k & RK_MASK] = c
        for pos, terms in per_pos.items():
            rows[pos][j] = Poly(ring, terms)
    return rows


def _minimize_complex(ring: Ring, shifts: list[list[int]],
                      mats: list[list[list[Poly]]]):
    """Cancel constant entries; mats[k] maps shifts[k+1] -> shifts[k]."""
    changed = True
    while changed:
        changed = False
        for k in range(1, len(mats)):
            mat = mats[k]
            tshifts = shifts[k]
            sshifts = shifts[k + 1]
            unit = None
            for i in range(len(tshifts)):
                for j in range(len(sshifts)):
                    e = mat[i][j]
                    if sshifts[j] == tshifts[i] and not e.is_zero():
                        unit = (i, j)
                        break
                if unit:
                    break
            if not unit:
                continue
            i0, j0 = unit
            u = mat[i0][j0].terms[ring.one_key]
            uinv = ring.cinv(u)
            # Schur complement on mat
            col0 = [mat[i][j0] for i in range(len(tshifts))]
            row0 = [mat[i0][j] for j in range(len(sshifts))]
            new_mat = []
            for i in range(len(tshifts)):
                if i == i0:
                    continue
                new_row = []
                for j in range(len(sshifts)):
                    if j == j0:
                        continue
                    e = mat[i][j]
                    if not col0[i].is_zero() and not row0[j].is_zero():
                        e = e - col0[i] * row0[j].scale(uinv)
                    new_row.append(e)
                new_mat.append(new_row)
            mats[k] = new_mat
            # next differential loses row j0
            if k + 1 < len(mats):
                mats[k + 1] = [row for idx, row in enumerate(mats[k + 1]) if idx != j0]
            # previous differential loses column i0
            prev = mats[k - 1]
            mats[k - 1] = [[e for idx, e in enumerate(row) if idx != i0] for row in prev]
            shifts[k + 1] = [s for idx, s in enumerate(sshifts) if idx != j0]
            shifts[k] = [t for idx, t in enumerate(tshifts) if idx != i0]
            changed = True
    # drop trailing zero modules
    while len(shifts) > 1 and not shifts[-1]:
        shifts.pop()
        mats.pop()


def minimal_free_resolution(gens: list[Poly], cap: int = DEGREE_CAP,
                            validate: bool = True) -> Resolution:
    """Minimal graded free resolution of the ideal generated by gens."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ParameterError("zero ideal has no resolution of an ideal")
    ring = gens[0].ring
    for g in gens:
        if not g.is_homogeneous():
            raise ParameterError("resolution needs homogeneous input")
    gb = ideal_gb_as_module(gens, ring, cap)
    order = RingPosOrder(ring)
    twists = [0]
    levels: list[list[dict]] = [[{pack(0, k): c for k, c in t.items()} for t in gb]]
    level_twists: list[list[int]] = []
    cur = levels[0]
    cur_twists = [ring.deg(max(t)) for t in gb]
    level_twists.append(cur_twists)
    while True:
        syz, order, cur_twists_next = gb_syzygies(cur, order, ring, twists, cap)
        twists = cur_twists_next
        if not syz:
            break
        levels.append(syz)
        cur = syz
        cur_twists = [None] * len(syz)
        from .modules import elt_degree
        cur_twists = [elt_degree(s, ring, twists) for s in syz]
        level_twists.append(cur_twists)
        if len(levels) > ring.n + 1:
            raise KernelError("resolution exceeds the Hilbert syzygy bound")

    shifts = [list(tw) for tw in level_twists]
    mats: list[list[list[Poly]]] = []
    # level 0: generator row (1 x |F1|)
    mats.append([[Poly(ring, {k & RK_MASK: c for k, c in e.items()}) for e in levels[0]]])
    for lvl in range(1, len(levels)):
        mats.append(_columns_to_matrix(ring, levels[lvl], len(shifts[lvl - 1])))

    full_shifts = [[0]] + shifts
    _minimize_complex(ring, full_shifts, mats)
    if len(full_shifts) < 2 or full_shifts[0] != [0]:
        raise KernelError("minimization destroyed the augmentation")
    res_gens = [mats[0][0][j] for j in range(len(full_shifts[1]))]
    diffs = []
    for k in range(2, len(full_shifts)):
        diffs.append(GradedMap(ring, full_shifts[k], full_shifts[k - 1], mats[k - 1]))
    res = Resolution(ring, res_gens, full_shifts[1:], diffs)
    if validate:
        res.validate()
    return res


def syzygy_basis(gens: list[Poly]) -> list[tuple[Poly, ...]]:
    """Generators of the first syzygy module, as coefficient vectors."""
    from .modules import syzygy_module
    if not gens:
        return []
    ring = gens[0].ring
    syz = syzygy_module(list(gens))
    out = []
    for s in syz:
        per_pos: dict[int, dict] = {}
        for k, c in s.items():
            per_pos.setdefault(k >> POS_SHIFT, {})[k & RK_MASK] = c
        out.append(tuple(Poly(ring, per_pos.get(i, {})) for i in range(len(gens))))
    return out
