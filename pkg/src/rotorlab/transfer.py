"""Row (periodic) and double-row (closed) transfer matrices on PairStates.

Each colour layer of a face is one of two tiles.  Seen from the auxiliary
line crossing the face, a tile either *merges* (the bottom strand joins the
incoming auxiliary strand and the top strand leaves as the new auxiliary
strand) or *passes* (the bottom strand becomes the outgoing auxiliary strand
and the incoming one exits at the top).  A face configuration is a pair of
moves (red, green):

    D = (merge, merge)    A = (pass, pass)    R, L = the two mixed pairs

The weight of a face in column ``i`` crossed by a line at ``t`` is the class-II
weight at argument order ``(t, z_i)``, so each face sums to ``q z_i^2 - t^2``.
``T`` is the sum over all move sequences of the product of face weights,
evaluated by a frontier dynamic program over the connectivity of open strand
ends.  Closed loops carry weight 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exact_arith import Q, ZERO, EisensteinRational, as_eis
from .linalg import Matrix, commutator_is_zero, kernel_modular, mat_mul
from .linkpatterns import (
    DEFECT,
    LinkPattern,
    PairState,
    cbc_tag,
    enumerate_patterns,
    pair_basis,
)
from .rmatrix import SamplePoint, face_weights, o1_weights, rcheck_matrix

__all__ = [
    "TransferMatrix",
    "ContractError",
    "build_transfer_pbc_even",
    "build_transfer_cbc",
    "build_transfer_o1",
    "check_trace_intertwining",
    "row_eigenvalue_pbc",
    "measure_left_eigenvalue",
    "lambda_cbc",
    "check_contracts_pbc",
    "check_contracts_cbc",
]

MERGE, PASS = 0, 1
_NONE = -2


class ContractError(AssertionError):
    """A transfer-matrix contract check failed."""

    def __init__(self, check: str, message: str) -> None:
        super().__init__(f"[{check}] {message}")
        self.check = check


@dataclass
class TransferMatrix:
    bc: str
    size: int
    point: SamplePoint
    entries: Matrix
    basis: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "bc": self.bc,
            "size": self.size,
            "point": self.point.to_json(),
            "basis": [str(s) for s in self.basis],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


# -- frontier dynamic program ----------------------------------------------

def _move(p: list[int], mv: int, bottom: int, top: int, h: int) -> None:
    """Apply one tile move to a single-colour partner list in place."""
    a = p[bottom]
    c = p[h]
    p[bottom] = _NONE
    if mv == MERGE:
        if a != h:
            p[a] = c
            p[c] = a
        p[top] = h
        p[h] = top
    else:
        if a == h:
            p[top] = h
            p[h] = top
        else:
            p[h] = a
            p[a] = h
            p[top] = c
            p[c] = top


def _close(p: list[int], x: int, h: int) -> None:
    a, b = p[x], p[h]
    p[x] = p[h] = _NONE
    if a != h:
        p[a] = b
        p[b] = a


def _run_dp(
    start: Sequence[LinkPattern],
    faces: Sequence[tuple[int, int, dict[tuple[int, ...], EisensteinRational]]],
    nslots: int,
    top_slots: Sequence[int],
) -> dict[tuple[LinkPattern, ...], EisensteinRational]:
    """Sum over move sequences for one bottom state (one pattern per colour).

    Slot layout: bottom points occupy ``0..N-1``; ``nslots-3`` is the seam
    end X, ``nslots-2`` the running auxiliary end H, ``nslots-1`` the defect
    end at infinity.
    """
    x, h, inf = nslots - 3, nslots - 2, nslots - 1
    init = []
    for pat in start:
        p = [_NONE] * nslots
        for i, j in enumerate(pat.partner):
            if j == DEFECT:
                p[i], p[inf] = inf, i
            else:
                p[i] = j
        p[x], p[h] = h, x
        init.append(tuple(p))
    # weights run as Z[q] pairs (a, b); each face table is scaled to integers
    scale = Fraction(1)
    int_tables = []
    for _, _, table in faces:
        den = 1
        for w in table.values():
            den = lcm(den, w.a.denominator, w.b.denominator)
        scale /= den
        int_tables.append([(mv, int(w.a * den), int(w.b * den)) for mv, w in table.items() if w])
    states: dict[tuple, tuple[int, int]] = {tuple(init): (1, 0)}
    cache: dict[tuple, tuple] = {}
    for fi, (bottom, top, _) in enumerate(faces):
        new: dict[tuple, tuple[int, int]] = {}
        for st, (wa, wb) in states.items():
            for moves, fa, fb in int_tables[fi]:
                out = []
                for layer, mv in zip(st, moves):
                    key = (layer, fi, mv)
                    res = cache.get(key)
                    if res is None:
                        p = list(layer)
                        _move(p, mv, bottom, top, h)
                        res = tuple(p)
                        cache[key] = res
                    out.append(res)
                out = tuple(out)
                bb = wb * fb
                pa, pb = wa * fa - bb, wa * fb + wb * fa - bb
                v = new.get(out)
                new[out] = (pa, pb) if v is None else (v[0] + pa, v[1] + pb)
        states = {k: v for k, v in new.items() if v[0] or v[1]}
    result: dict[tuple[LinkPattern, ...], EisensteinRational] = {}
    pos = {s: k for k, s in enumerate(top_slots)}
    for st, (wa, wb) in states.items():
        pats = []
        for layer in st:
            p = list(layer)
            _close(p, x, h)
            partner = []
            for s in top_slots:
                j = p[s]
                partner.append(DEFECT if j == inf else pos[j])
            pats.append(LinkPattern(tuple(partner)))
        key = tuple(pats)
        w = EisensteinRational(wa * scale, wb * scale)
        result[key] = result.get(key, ZERO) + w
    return result


def _table(fw) -> dict[tuple[int, int], EisensteinRational]:
    return {
        (MERGE, MERGE): fw.wD,
        (PASS, PASS): fw.wA,
        (PASS, MERGE): fw.wR,
        (MERGE, PASS): fw.wL,
    }


def _pair_table(z, t) -> dict[tuple[int, int], EisensteinRational]:
    return _table(face_weights(t, z))


def _assemble(bc: str, n: int, faces, nslots: int, top_slots) -> tuple[Matrix, tuple]:
    basis = pair_basis(bc, n)
    index = {s: k for k, s in enumerate(basis)}
    dim = len(basis)
    m = [[ZERO] * dim for _ in range(dim)]
    for j, s in enumerate(basis):
        col = _run_dp((s.red, s.green), faces, nslots, top_slots)
        for (r, g), w in col.items():
            m[index[PairState(r, g)]][j] = w
    return m, basis


def build_transfer_pbc_even(point: SamplePoint, check: bool = False) -> TransferMatrix:
    """Row transfer matrix ``T(t | z)`` on the cylinder (even N)."""
    n = point.size
    if n < 2 or n % 2:
        raise ValueError("periodic transfer matrix needs even N >= 2")
    faces = [(i, n + i, _pair_table(point.z[i], point.t)) for i in range(n)]
    nslots = 2 * n + 3
    m, basis = _assemble("pbc-even", n, faces, nslots, list(range(n, 2 * n)))
    tm = TransferMatrix("pbc-even", n, point, m, basis)
    if check:
        check_contracts_pbc(point)
    return tm


def _inv(x: EisensteinRational) -> EisensteinRational:
    return x.inverse()


def build_transfer_cbc(point: SamplePoint, check: bool = False) -> TransferMatrix:
    """Double-row transfer matrix ``D(t | z)`` with reflecting boundaries.

    The auxiliary strands cross the first row left to right with the same
    faces as the periodic row, turn around at the right boundary (colour kept),
    and cross the second row right to left with weights ``omega(z_i, 1/t)``;
    at the left boundary the two ends are joined.
    """
    n = point.size
    if n < 1:
        raise ValueError("need N >= 1")
    bc = cbc_tag(n)
    t = point.t
    tinv = _inv(t)
    faces = [(i, n + i, _pair_table(point.z[i], t)) for i in range(n)]
    faces += [(n + i, 2 * n + i, _table(face_weights(point.z[i], tinv)))
              for i in reversed(range(n))]
    nslots = 3 * n + 3
    m, basis = _assemble(bc, n, faces, nslots, list(range(2 * n, 3 * n)))
    tm = TransferMatrix(bc, n, point, m, basis)
    if check:
        check_contracts_cbc(point)
    return tm


def build_transfer_o1(x: Sequence, y, geometry: str = "disk") -> dict:
    """Single-colour transfer matrix ``T_O(1)(y | x)`` as ``{(top, bottom): weight}``.

    With ``x_i = z_i^2`` and ``y = t^2`` a merging tile weighs ``q y - x_i`` and
    a passing tile ``q^2 (y - x_i)``: the green-summed face weights of ``T``.
    """
    x = [as_eis(v) for v in x]
    y = as_eis(y)
    n = len(x)
    faces = []
    for i in range(n):
        c_merge, c_pass = o1_weights(y, x[i])
        faces.append((i, n + i, {(MERGE,): c_merge, (PASS,): c_pass}))
    out = {}
    for p in enumerate_patterns(n, 0, geometry):
        col = _run_dp((p,), faces, 2 * n + 3, list(range(n, 2 * n)))
        for (r,), w in col.items():
            out[(r, p)] = w
    return out


def check_trace_intertwining(point: SamplePoint) -> None:
    """Summing out green: ``Tr_G T(t | z) = T_O(1)(t^2 | z^2) Tr_G`` (periodic)."""
    tm = build_transfer_pbc_even(point)
    o1 = build_transfer_o1([z * z for z in point.z], point.t * point.t)
    for j, s in enumerate(tm.basis):
        lhs: dict[LinkPattern, EisensteinRational] = {}
        for i, row in enumerate(tm.entries):
            if row[j]:
                r = tm.basis[i].red
                lhs[r] = lhs.get(r, ZERO) + row[j]
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {top: w for (top, bottom), w in o1.items() if bottom == s.red and w}
        if lhs != rhs:
            raise ContractError("trace", f"column {s} breaks the green trace")


# -- contracts --------------------------------------------------------------

def row_eigenvalue_pbc(point: SamplePoint) -> EisensteinRational:
    lam = as_eis(1)
    t2 = point.t * point.t
    for z in point.z:
        lam = lam * (Q * z * z - t2)
    return lam


def lambda_cbc(point: SamplePoint) -> EisensteinRational:
    """Left eigenvalue of ``D(t | z)`` on the all-ones functional.

    Measured from assembled matrices (N = 1..5, three independent points each)
    and frozen: ``prod_i (q z_i^2 - t^2)(q t^-2 - z_i^2)``, i.e. the product
    of the face-weight sums of both rows.
    """
    t2 = point.t * point.t
    ti2 = t2.inverse()
    lam = as_eis(1)
    for z in point.z:
        z2 = z * z
        lam = lam * (Q * z2 - t2) * (Q * ti2 - z2)
    return lam


def measure_left_eigenvalue(tm: TransferMatrix) -> EisensteinRational:
    """Return c with ``<Omega| T = c <Omega|``; raise if not an eigenvector."""
    sums = [ZERO] * tm.dim
    for row in tm.entries:
        for j, x in enumerate(row):
            if x:
                sums[j] = sums[j] + x
    c = sums[0]
    for j, s in enumerate(sums):
        if s != c:
            raise ContractError("b", f"column {j} sums to {s}, column 0 to {c}")
    return c


def check_contracts_pbc(point: SamplePoint, t_other=None, sites_to_check=None) -> None:
    """(a) [T(t), T(t')] = 0, (b) <Omega|T = prod(q z^2 - t^2) <Omega|,
    (c) T(..z_i, z_{i+1}..) Rc_i(z_i, z_{i+1}) = Rc_i(z_i, z_{i+1}) T(..z_{i+1}, z_i..)."""
    n = point.size
    tm = build_transfer_pbc_even(point)
    t2 = as_eis(t_other) if t_other is not None else point.t + 3
    tm2 = build_transfer_pbc_even(point.with_t(t2))
    if not commutator_is_zero(tm.entries, tm2.entries):
        raise ContractError("a", "T(t) and T(t') do not commute")
    lam = measure_left_eigenvalue(tm)
    if lam != row_eigenvalue_pbc(point):
        raise ContractError("b", f"left eigenvalue {lam} != {row_eigenvalue_pbc(point)}")
    for i in (sites_to_check or range(1, n)):
        z = point.z
        r = rcheck_matrix("pbc-even", n, i, z[i - 1], z[i % n])
        swapped = build_transfer_pbc_even(point.swapped(i))
        if mat_mul(tm.entries, r) != mat_mul(r, swapped.entries):
            raise ContractError("c", f"intertwining fails at site {i}")


def _projective_kernel(tm: TransferMatrix, lam: EisensteinRational) -> list[EisensteinRational]:
    m = [row[:] for row in tm.entries]
    for i in range(tm.dim):
        m[i][i] = m[i][i] - lam
    basis = kernel_modular(m)
    if len(basis) != 1:
        raise ContractError("c", f"eigenspace of dimension {len(basis)} at {tm.point.to_json()}")
    return basis[0]


def _proportional(u: Sequence[EisensteinRational], v: Sequence[EisensteinRational]) -> bool:
    k = next((i for i, x in enumerate(u) if x), None)
    if k is None or not v[k]:
        return False
    r = u[k] / v[k]
    return all(a == r * b for a, b in zip(u, v))


def check_contracts_cbc(point: SamplePoint, t_others=None, invariance: bool = True) -> EisensteinRational:
    """(a) commuting family; (b) measured left eigenvalue agrees with
    :func:`lambda_cbc`; (c) the eigenvector is unchanged (projectively) by
    ``z_1 -> 1/z_1`` and by ``z_N -> 1/z_N``.  Returns the measured eigenvalue."""
    tm = build_transfer_cbc(point)
    others = t_others or [point.t + 2 if point.t + 2 else point.t + 3]
    for t2 in others:
        tm2 = build_transfer_cbc(point.with_t(t2))
        if not commutator_is_zero(tm.entries, tm2.entries):
            raise ContractError("a", f"D(t) and D({t2}) do not commute")
    lam = measure_left_eigenvalue(tm)
    if lam != lambda_cbc(point):
        raise ContractError("b", f"measured {lam}, frozen formula gives {lambda_cbc(point)}")
    if invariance:
        psi = _projective_kernel(tm, lam)
        for k in {0, point.size - 1}:
            z = list(point.z)
            z[k] = z[k].inverse()
            other = build_transfer_cbc(point.with_z(z))
            if not _proportional(psi, _projective_kernel(other, lambda_cbc(other.point))):
                raise ContractError("c", f"eigenvector changes under z_{k + 1} -> 1/z_{k + 1}")
    return lam
