"""Link patterns, pair states and the rotor diagram operators E_i, R_i, L_i.

Points are numbered ``1..N`` in the public API (site ``i`` of ``e_i`` joins
points ``i`` and ``i+1``); internally a pattern stores a 0-based partner
tuple with ``DEFECT`` (-1) marking an unmatched point.

Two geometries are supported:

``disk``
    points on the boundary of a disk (periodic boundary conditions);
    ``e_N`` joins points ``N`` and ``1``.
``halfplane``
    points on the boundary of the upper half plane (closed boundary
    conditions); defect lines go to infinity, so no arc may enclose one.

Text form: ``"(())"`` for arcs, ``"|"`` for a defect, e.g. ``"()|"``.
Every non-crossing pattern has a unique parenthesisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .exact_arith import EisensteinRational, ZERO

__all__ = [
    "DEFECT",
    "LinkPattern",
    "PairState",
    "StateVector",
    "AlgebraReport",
    "enumerate_patterns",
    "pair_basis",
    "apply_e",
    "apply_rotor",
    "rotate",
    "rotor_map",
    "check_algebra",
    "bc_geometry",
    "bc_defects",
    "sites",
]

DEFECT = -1
GEOMETRIES = ("disk", "halfplane")
BOUNDARY_CONDITIONS = ("pbc-even", "cbc-even", "cbc-odd")


class LinkPattern(NamedTuple):
    """Non-crossing (partial) matching of ``len(partner)`` points."""

    partner: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.partner)

    @property
    def defects(self) -> tuple[int, ...]:
        """1-based positions of unmatched points."""
        return tuple(i + 1 for i, j in enumerate(self.partner) if j == DEFECT)

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs as 1-based ``(i, j)`` pairs with ``i < j``."""
        return [(i + 1, j + 1) for i, j in enumerate(self.partner) if j > i]

    def has_arc(self, i: int, j: int) -> bool:
        return self.partner[i - 1] == j - 1

    def __str__(self) -> str:
        out = []
        for i, j in enumerate(self.partner):
            out.append("|" if j == DEFECT else "(" if j > i else ")")
        return "".join(out)

    @classmethod
    def from_string(cls, text: str) -> LinkPattern:
        partner = [DEFECT] * len(text)
        stack: list[int] = []
        for i, c in enumerate(text):
            if c == "(":
                stack.append(i)
            elif c == ")":
                if not stack:
                    raise ValueError(f"unbalanced pattern {text!r}")
                j = stack.pop()
                partner[i], partner[j] = j, i
            elif c == "|":
                if stack:
                    # an arc over a defect is not planar in the half plane
                    # and not representable in this notation
                    raise ValueError(f"arc encloses a defect in {text!r}")
            else:
                raise ValueError(f"bad character {c!r} in {text!r}")
        if stack:
            raise ValueError(f"unbalanced pattern {text!r}")
        return cls(tuple(partner))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> LinkPattern:
        """Build from 1-based arcs; points not covered become defects."""
        partner = [DEFECT] * n
        for i, j in arcs:
            i0, j0 = (i - 1) % n, (j - 1) % n
            if partner[i0] != DEFECT or partner[j0] != DEFECT or i0 == j0:
                raise ValueError(f"inconsistent arcs {arcs!r}")
            partner[i0], partner[j0] = j0, i0
        p = cls(tuple(partner))
        if not is_noncrossing(p):
            raise ValueError(f"crossing arcs {arcs!r}")
        return p


class PairState(NamedTuple):
    """Basis state of the rotor model: a red and a green link pattern."""

    red: LinkPattern
    green: LinkPattern

    @property
    def size(self) -> int:
        return self.red.size

    def swap(self) -> PairState:
        return PairState(self.green, self.red)

    def __str__(self) -> str:
        return f"{self.red}/{self.green}"

    @classmethod
    def from_string(cls, text: str) -> PairState:
        red, green = text.split("/")
        return cls(LinkPattern.from_string(red), LinkPattern.from_string(green))


def is_noncrossing(p: LinkPattern, geometry: str = "disk") -> bool:
    arcs = [(i, j) for i, j in enumerate(p.partner) if j > i]
    for a, b in arcs:
        for c, d in arcs:
            if a < c < b < d:
                return False
    if geometry == "halfplane":
        for d, j in enumerate(p.partner):
            if j == DEFECT and any(a < d < b for a, b in arcs):
                return False
    return True


def bc_geometry(bc: str) -> str:
    if bc == "pbc-even":
        return "disk"
    if bc in ("cbc-even", "cbc-odd"):
        return "halfplane"
    raise ValueError(f"unknown boundary condition {bc!r}")


def bc_defects(bc: str, n: int) -> int:
    if bc == "pbc-even":
        if n % 2:
            raise ValueError("pbc-even needs an even number of sites")
        return 0
    if bc == "cbc-even":
        if n % 2:
            raise ValueError("cbc-even needs an even number of sites")
        return 0
    if bc == "cbc-odd":
        if n % 2 == 0:
            raise ValueError("cbc-odd needs an odd number of sites")
        return 1
    raise ValueError(f"unknown boundary condition {bc!r}")


def cbc_tag(n: int) -> str:
    return "cbc-odd" if n % 2 else "cbc-even"


def sites(bc_or_geometry: str, n: int) -> list[int]:
    """Valid 1-based sites ``i`` for ``e_i``."""
    geometry = bc_or_geometry if bc_or_geometry in GEOMETRIES else bc_geometry(bc_or_geometry)
    return list(range(1, n + 1)) if geometry == "disk" else list(range(1, n))


@lru_cache(maxsize=None)
def enumerate_patterns(n: int, defects: int = 0, geometry: str = "disk") -> tuple[LinkPattern, ...]:
    """All link patterns on ``n`` points, sorted by partner tuple."""
    if n < 1:
        raise ValueError("need at least one point")
    if defects not in (0, 1):
        raise ValueError(f"unsupported sector with {defects} defects")
    if (n - defects) % 2:
        raise ValueError(f"{n} points cannot carry {defects} defects")
    if geometry not in GEOMETRIES:
        raise ValueError(f"unknown geometry {geometry!r}")

    def matchings(lo: int, hi: int) -> list[list[tuple[int, int]]]:
        # perfect non-crossing matchings of lo..hi-1
        if lo >= hi:
            return [[]]
        out = []
        for j in range(lo + 1, hi, 2):
            for inner in matchings(lo + 1, j):
                for outer in matchings(j + 1, hi):
                    out.append([(lo, j)] + inner + outer)
        return out

    found = []
    if defects == 0:
        arcsets = matchings(0, n)
    else:
        arcsets = []
        for d in range(n):
            if geometry == "halfplane":
                if d % 2:
                    continue
                for left in matchings(0, d):
                    for right in matchings(d + 1, n):
                        arcsets.append(left + right)
            else:
                # on a disk a defect may sit under arcs
                for rest in _disk_with_defect(n, d):
                    arcsets.append(rest)
    for arcs in arcsets:
        partner = [DEFECT] * n
        for i, j in arcs:
            partner[i], partner[j] = j, i
        found.append(LinkPattern(tuple(partner)))
    found = sorted(set(found))
    return tuple(found)


def _disk_with_defect(n: int, d: int) -> list[list[tuple[int, int]]]:
    others = [i for i in range(n) if i != d]
    out = []

    def rec(points: list[int]) -> list[list[tuple[int, int]]]:
        if not points:
            return [[]]
        res = []
        first = points[0]
        for k in range(1, len(points), 2):
            for inner in rec(points[1:k]):
                for outer in rec(points[k + 1:]):
                    res.append([(first, points[k])] + inner + outer)
        return res

    out.extend(rec(others))
    return out


@lru_cache(maxsize=None)
def pair_basis(bc: str, n: int) -> tuple[PairState, ...]:
    """Canonically ordered PairState basis: lexicographic on (red, green)."""
    pats = enumerate_patterns(n, bc_defects(bc, n), bc_geometry(bc))
    return tuple(PairState(r, g) for r in pats for g in pats)


def apply_e(i: int, p: LinkPattern, geometry: str = "disk") -> LinkPattern:
    """Temperley-Lieb generator at loop weight 1: put an arc on ``(i, i+1)``."""
    n = p.size
    if geometry == "disk":
        if not 1 <= i <= n:
            raise ValueError(f"site {i} out of range for disk of size {n}")
    elif not 1 <= i < n:
        raise ValueError(f"site {i} out of range for half plane of size {n}")
    a, b = i - 1, i % n
    partner = p.partner
    if partner[a] == b:
        return p
    pa, pb = partner[a], partner[b]
    if pa == DEFECT and pb == DEFECT:
        raise ValueError("e_i would join two defects (unsupported sector)")
    new = list(partner)
    new[a], new[b] = b, a
    if pa == DEFECT:
        new[pb] = DEFECT
    elif pb == DEFECT:
        new[pa] = DEFECT
    else:
        new[pa], new[pb] = pb, pa
    return LinkPattern(tuple(new))


def rotate(p: LinkPattern, geometry: str = "disk") -> LinkPattern:
    """Relabel point ``i`` as ``i+1`` (mod N)."""
    if geometry != "disk":
        raise ValueError("rotation is only defined on the disk")
    n = p.size
    new = [DEFECT] * n
    for i, j in enumerate(p.partner):
        new[(i + 1) % n] = DEFECT if j == DEFECT else (j + 1) % n
    return LinkPattern(tuple(new))


def acts_on_red(kind: str, i: int, convention: str = "alternating") -> bool:
    """Colour acted on by ``R_i``/``L_i``.

    ``alternating``: R_i acts on red for odd i, on green for even i; L_i the
    opposite.  ``red``: R_i always on red (deliberately wrong, for negative
    controls).
    """
    if convention == "alternating":
        r_red = i % 2 == 1
    elif convention == "red":
        r_red = True
    else:
        raise ValueError(f"unknown convention {convention!r}")
    if kind == "R":
        return r_red
    if kind == "L":
        return not r_red
    raise ValueError(f"kind {kind!r} has no single colour")


def apply_rotor_state(kind: str, i: int, s: PairState, geometry: str = "disk",
                      convention: str = "alternating") -> PairState:
    if kind == "E":
        return PairState(apply_e(i, s.red, geometry), apply_e(i, s.green, geometry))
    if kind == "I":
        return s
    if acts_on_red(kind, i, convention):
        return PairState(apply_e(i, s.red, geometry), s.green)
    return PairState(s.red, apply_e(i, s.green, geometry))


@dataclass
class StateVector:
    """Finite linear combination of PairStates with Q(q) coefficients."""

    bc: str
    size: int
    coeffs: dict[PairState, EisensteinRational] = field(default_factory=dict)

    def __getitem__(self, s: PairState) -> EisensteinRational:
        return self.coeffs.get(s, ZERO)

    def items(self):
        return self.coeffs.items()

    def add(self, s: PairState, c: EisensteinRational) -> None:
        v = self.coeffs.get(s, ZERO) + c
        if v:
            self.coeffs[s] = v
        else:
            self.coeffs.pop(s, None)

    def scaled(self, c: EisensteinRational) -> StateVector:
        return StateVector(self.bc, self.size, {s: c * x for s, x in self.coeffs.items() if c * x})

    def __add__(self, other: StateVector) -> StateVector:
        out = StateVector(self.bc, self.size, dict(self.coeffs))
        for s, c in other.coeffs.items():
            out.add(s, c)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return (self.bc, self.size) == (other.bc, other.size) and self.coeffs == other.coeffs

    def to_list(self, basis: Sequence[PairState] | None = None) -> list[EisensteinRational]:
        basis = basis if basis is not None else pair_basis(self.bc, self.size)
        return [self[s] for s in basis]

    @classmethod
    def from_list(cls, bc: str, size: int, values: Sequence[EisensteinRational]) -> StateVector:
        basis = pair_basis(bc, size)
        return cls(bc, size, {s: v for s, v in zip(basis, values) if v})

    def total(self) -> EisensteinRational:
        out = ZERO
        for c in self.coeffs.values():
            out = out + c
        return out


def apply_rotor(kind: str, i: int, v: StateVector, convention: str = "alternating") -> StateVector:
    """Apply ``E_i``, ``R_i`` or ``L_i`` (extended linearly) to ``v``."""
    geometry = bc_geometry(v.bc)
    out = StateVector(v.bc, v.size)
    for s, c in v.items():
        out.add(apply_rotor_state(kind, i, s, geometry, convention), c)
    return out


@lru_cache(maxsize=None)
def rotor_map(bc: str, n: int, kind: str, i: int, convention: str = "alternating") -> tuple[int, ...]:
    """Operator ``kind_i`` as an index map on the canonical basis.

    Each diagram operator sends a basis state to a single basis state with
    weight 1, so column ``j`` of its matrix has a single 1 in row ``map[j]``.
    """
    basis = pair_basis(bc, n)
    index = {s: k for k, s in enumerate(basis)}
    geometry = bc_geometry(bc)
    return tuple(index[apply_rotor_state(kind, i, s, geometry, convention)] for s in basis)


def _compose(*maps: Sequence[int]) -> tuple[int, ...]:
    """Index map of the product ``maps[0] @ maps[1] @ ...``."""
    out = list(range(len(maps[0])))
    for m in reversed(maps):
        out = [m[j] for j in out]
    return tuple(out)


@dataclass
class AlgebraReport:
    bc: str
    size: int
    convention: str
    checked: list[str] = field(default_factory=list)
    failure: tuple[str, str] | None = None   # (relation, witness state)
    variant_RLR_eq_L: dict[int, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failure is None


def check_algebra(bc: str, n: int, convention: str = "alternating") -> AlgebraReport:
    """Check the E/R/L relations as exact identities on the PairState basis.

    Stops at the first failing relation and records a witness basis state.
    The variant ``R_i L_{i+-1} R_i = L_i`` is evaluated separately
    and reported per site in ``variant_RLR_eq_L``; it does not affect ``ok``.
    """
    if n > 10:
        raise ValueError("check_algebra is limited to N <= 10")
    basis = pair_basis(bc, n)
    geometry = bc_geometry(bc)
    ss = sites(geometry, n)
    report = AlgebraReport(bc, n, convention)

    def op(kind: str, i: int) -> tuple[int, ...]:
        return rotor_map(bc, n, kind, i, convention)

    def neighbours(i: int) -> list[int]:
        out = []
        for j in (i - 1, i + 1):
            if geometry == "disk":
                j = (j - 1) % n + 1
            if j in ss and j != i and j not in out:
                out.append(j)
        return out

    def far(i: int, j: int) -> bool:
        if i == j or j in neighbours(i):
            return False
        return True

    def expect(name: str, lhs: tuple[int, ...], rhs: tuple[int, ...]) -> bool:
        if lhs != rhs:
            k = next(k for k in range(len(lhs)) if lhs[k] != rhs[k])
            report.failure = (name, str(basis[k]))
            return False
        report.checked.append(name)
        return True

    for i in ss:
        E, R, L = op("E", i), op("R", i), op("L", i)
        if not (expect(f"E_{i} = R_{i} L_{i}", E, _compose(R, L))
                and expect(f"E_{i} = L_{i} R_{i}", E, _compose(L, R))
                and expect(f"R_{i}^2 = R_{i}", _compose(R, R), R)
                and expect(f"L_{i}^2 = L_{i}", _compose(L, L), L)):
            return report
        variant_ok = True
        for j in neighbours(i):
            Rj, Lj = op("R", j), op("L", j)
            if not (expect(f"L_{i} R_{j} L_{i} = L_{i}", _compose(L, Rj, L), L)
                    and expect(f"R_{i} L_{j} R_{i} = R_{i}", _compose(R, Lj, R), R)
                    and expect(f"[R_{i}, R_{j}] = 0", _compose(R, Rj), _compose(Rj, R))
                    and expect(f"[L_{i}, L_{j}] = 0", _compose(L, Lj), _compose(Lj, L))):
                return report
            variant_ok = variant_ok and _compose(R, Lj, R) == L
        report.variant_RLR_eq_L[i] = variant_ok
        for j in ss:
            if not far(i, j):
                continue
            Rj, Lj = op("R", j), op("L", j)
            if not (expect(f"[R_{i}, R_{j}] = 0", _compose(R, Rj), _compose(Rj, R))
                    and expect(f"[L_{i}, L_{j}] = 0", _compose(L, Lj), _compose(Lj, L))
                    and expect(f"[R_{i}, L_{j}] = 0", _compose(R, Lj), _compose(Lj, R))):
                return report
    return report
