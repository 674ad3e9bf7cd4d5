"""Class-II face weights, the R-check operator and the trace onto the O(1) model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_arith import Q, ZERO, EisensteinRational, as_eis
from .linkpatterns import (
    LinkPattern,
    StateVector,
    apply_e,
    apply_rotor,
    pair_basis,
    rotor_map,
)

__all__ = [
    "FaceWeights",
    "SamplePoint",
    "omega",
    "face_weights",
    "apply_rcheck",
    "rcheck_matrix",
    "check_unitarity",
    "trace_green",
    "apply_rcheck_o1",
    "o1_weights",
    "unitarity_factor",
]

Q2 = Q * Q
KINDS = ("R", "L", "A", "D")


def omega(kind: str, z, w) -> EisensteinRational:
    """Class-II weight of face configuration ``kind`` at spectral parameters (z, w)."""
    z, w = as_eis(z), as_eis(w)
    if kind in ("R", "L"):
        return (w - z) * (z + Q * w)
    if kind == "D":
        return Q * (w - Q * z) * (z + Q * w)
    if kind == "A":
        return (w - z) * (w + Q * z)
    raise ValueError(f"unknown face configuration {kind!r}")


@dataclass(frozen=True)
class FaceWeights:
    wR: EisensteinRational
    wL: EisensteinRational
    wA: EisensteinRational
    wD: EisensteinRational

    def total(self) -> EisensteinRational:
        return self.wR + self.wL + self.wA + self.wD


def face_weights(z, w) -> FaceWeights:
    return FaceWeights(*(omega(k, z, w) for k in KINDS))


@dataclass(frozen=True)
class SamplePoint:
    """Spectral parameters ``z`` (one per site) and the auxiliary ``t``."""

    z: tuple[EisensteinRational, ...]
    t: EisensteinRational

    def __init__(self, z: Sequence, t=0) -> None:
        object.__setattr__(self, "z", tuple(as_eis(x) for x in z))
        object.__setattr__(self, "t", as_eis(t))

    @property
    def size(self) -> int:
        return len(self.z)

    def with_t(self, t) -> SamplePoint:
        return SamplePoint(self.z, t)

    def with_z(self, z: Sequence) -> SamplePoint:
        return SamplePoint(z, self.t)

    def swapped(self, i: int) -> SamplePoint:
        """Exchange ``z_i`` and ``z_{i+1}`` (1-based, cyclic)."""
        z = list(self.z)
        a, b = i - 1, i % len(z)
        z[a], z[b] = z[b], z[a]
        return SamplePoint(z, self.t)

    def to_json(self) -> dict:
        return {"z": [str(x) for x in self.z], "t": str(self.t)}


def apply_rcheck(i: int, z, w, v: StateVector) -> StateVector:
    """``R-check_i(z, w) v = wD v + wA E_i v + wR (R_i + L_i) v``."""
    fw = face_weights(z, w)
    out = v.scaled(fw.wD)
    out = out + apply_rotor("E", i, v).scaled(fw.wA)
    out = out + apply_rotor("R", i, v).scaled(fw.wR)
    out = out + apply_rotor("L", i, v).scaled(fw.wL)
    return out


def rcheck_matrix(bc: str, n: int, i: int, z, w) -> list[list[EisensteinRational]]:
    """Dense matrix of ``R-check_i(z, w)`` on the canonical basis of (bc, n)."""
    fw = face_weights(z, w)
    dim = len(pair_basis(bc, n))
    m = [[ZERO] * dim for _ in range(dim)]
    for j in range(dim):
        m[j][j] = m[j][j] + fw.wD
    for kind, wt in (("E", fw.wA), ("R", fw.wR), ("L", fw.wL)):
        for j, k in enumerate(rotor_map(bc, n, kind, i)):
            m[k][j] = m[k][j] + wt
    return m


def unitarity_factor(z, w) -> EisensteinRational:
    z, w = as_eis(z), as_eis(w)
    return Q2 * (w * w - Q2 * z * z) * (z * z - Q2 * w * w)


def check_unitarity(bc: str, n: int, i: int, z, w) -> bool:
    """``R-check_i(w, z) R-check_i(z, w) == q^2 (w^2 - q^2 z^2)(z^2 - q^2 w^2) Id``."""
    from .linalg import identity, mat_mul, scalar_mat

    a = rcheck_matrix(bc, n, i, z, w)
    b = rcheck_matrix(bc, n, i, w, z)
    dim = len(a)
    return mat_mul(b, a) == scalar_mat(unitarity_factor(z, w), identity(dim))


def trace_green(v: StateVector) -> dict[LinkPattern, EisensteinRational]:
    """Apply the trace functional over the green colour."""
    out: dict[LinkPattern, EisensteinRational] = {}
    for s, c in v.items():
        out[s.red] = out.get(s.red, ZERO) + c
    return {p: c for p, c in out.items() if c}


def o1_weights(x, y) -> tuple[EisensteinRational, EisensteinRational]:
    """(identity, e_i) coefficients of the single-colour R-check at (x, y) = (z^2, w^2)."""
    x, y = as_eis(x), as_eis(y)
    return Q * x - y, Q2 * (x - y)


def apply_rcheck_o1(i: int, x, y, w: dict[LinkPattern, EisensteinRational],
                    geometry: str = "disk") -> dict[LinkPattern, EisensteinRational]:
    """``(q x - y) w + q^2 (x - y) e_i w`` on single-colour link patterns."""
    c_id, c_e = o1_weights(x, y)
    out: dict[LinkPattern, EisensteinRational] = {}
    for p, c in w.items():
        out[p] = out.get(p, ZERO) + c_id * c
        pe = apply_e(i, p, geometry)
        out[pe] = out.get(pe, ZERO) + c_e * c
    return {p: c for p, c in out.items() if c}
