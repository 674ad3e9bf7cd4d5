"""Ground-state eigenvectors of the transfer matrices and checks on them.

A ground state is the one-dimensional kernel of ``T - Lambda`` at a sample
point.  It is only defined up to scale, so every routine fixes a
normalization explicitly:

``reference``
    a chosen component (by default the first nonzero one in basis order) is 1;
``sum``
    the components add up to the closed-form sum (``S_{Y_n}(z^2)`` periodic,
    ``chi_N(z^2)`` closed), which makes every component a polynomial in ``z``;
``gcd-one``
    coprime integers with positive sum; only for points where the vector is
    rational, such as the homogeneous point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from .exact_arith import ONE, Q, ZERO, EisensteinRational, as_eis
from .linalg import KernelError, kernel_modular, mat_vec
from .linkpatterns import (
    DEFECT,
    LinkPattern,
    PairState,
    StateVector,
    apply_rotor,
    bc_geometry,
    cbc_tag,
    pair_basis,
    rotate,
)
from .rmatrix import SamplePoint, rcheck_matrix
from .symfunc import interpolate_at, sum_formula
from .transfer import (
    TransferMatrix,
    build_transfer_cbc,
    build_transfer_pbc_even,
    lambda_cbc,
    row_eigenvalue_pbc,
)

__all__ = [
    "GroundState",
    "GroundStateError",
    "NORMALIZATIONS",
    "build_transfer",
    "solve_ground_state",
    "ground_state",
    "sum_components",
    "component",
    "projectively_equal",
    "verify_exchange",
    "verify_proj2",
    "verify_proj1",
    "verify_zero2",
    "insert_arcs",
    "verify_recursion",
    "component_limit",
    "double_degenerate_point",
    "verify_double_degenerate",
    "verify_translation",
    "verify_t_independence",
    "Polynomial",
    "reconstruct_polynomial",
    "nearest_neighbour_stretches",
    "verify_factorization",
]

NORMALIZATIONS = ("reference", "sum", "gcd-one")


class GroundStateError(ArithmeticError):
    """The eigenspace is not one-dimensional, or a normalization is impossible."""


@dataclass(frozen=True)
class GroundState:
    bc: str
    size: int
    point: SamplePoint
    vector: StateVector
    normalization: str

    @property
    def basis(self) -> tuple[PairState, ...]:
        return pair_basis(self.bc, self.size)

    def values(self) -> list[EisensteinRational]:
        return self.vector.to_list(self.basis)

    def to_json(self) -> dict:
        return {
            "bc": self.bc,
            "size": self.size,
            "point": self.point.to_json(),
            "normalization": self.normalization,
            "components": {str(s): str(c) for s, c in zip(self.basis, self.values())},
        }


def _bc_for(bc: str, n: int) -> str:
    if bc == "cbc":
        return cbc_tag(n)
    return bc


def build_transfer(bc: str, point: SamplePoint) -> tuple[TransferMatrix, EisensteinRational]:
    """Transfer matrix for ``bc`` ('pbc-even', 'cbc', 'cbc-even', 'cbc-odd')
    and its eigenvalue on the all-ones functional."""
    bc = _bc_for(bc, point.size)
    if bc == "pbc-even":
        return build_transfer_pbc_even(point), row_eigenvalue_pbc(point)
    if bc in ("cbc-even", "cbc-odd"):
        if bc != cbc_tag(point.size):
            raise ValueError(f"{bc} does not match size {point.size}")
        return build_transfer_cbc(point), lambda_cbc(point)
    raise ValueError(f"unknown boundary condition {bc!r}")


def _sum_target(bc: str, point: SamplePoint) -> EisensteinRational:
    kind = "pbc-even" if bc == "pbc-even" else "cbc"
    return sum_formula(kind, point.size, point.z)


def _gcd_one(v: list[EisensteinRational]) -> list[EisensteinRational]:
    if not all(x.is_rational() for x in v):
        raise GroundStateError("gcd-one normalization needs a rational eigenvector")
    fr = [x.a for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if sum(ints) < 0:
        ints = [-x for x in ints]
    return [EisensteinRational(x) for x in ints]


def solve_ground_state(tm: TransferMatrix, lam: EisensteinRational,
                       normalization: str = "reference",
                       reference: PairState | None = None) -> GroundState:
    """Exact kernel of ``T - lam``, required to be one-dimensional."""
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    m = [row[:] for row in tm.entries]
    for i in range(tm.dim):
        m[i][i] = m[i][i] - lam
    try:
        (v,) = kernel_modular(m, expected_dim=1)
    except KernelError as exc:
        raise GroundStateError(f"{tm.bc} N={tm.size}: {exc}") from exc
    if reference is not None:
        k = tm.basis.index(reference)
        if not v[k]:
            raise GroundStateError(f"reference component {reference} vanishes")
    else:
        k = next(i for i, x in enumerate(v) if x)
    piv = v[k]
    v = [x / piv for x in v]
    if normalization == "sum":
        total = sum(v, ZERO)
        if not total:
            raise GroundStateError("components sum to zero; cannot normalize by the sum")
        target = _sum_target(tm.bc, tm.point)
        v = [x * target / total for x in v]
    elif normalization == "gcd-one":
        v = _gcd_one(v)
    return GroundState(tm.bc, tm.size, tm.point, StateVector.from_list(tm.bc, tm.size, v),
                       normalization)


def ground_state(bc: str, point: SamplePoint | Sequence, t=None,
                 normalization: str = "reference",
                 reference: PairState | None = None) -> GroundState:
    """Build the transfer matrix at ``point`` and solve for its ground state.

    ``point`` may be a :class:`SamplePoint` or a list of ``z`` values, in which
    case ``t`` (default 2) is used.
    """
    if not isinstance(point, SamplePoint):
        point = SamplePoint(point, 2 if t is None else t)
    elif t is not None:
        point = point.with_t(t)
    tm, lam = build_transfer(bc, point)
    return solve_ground_state(tm, lam, normalization, reference)


def sum_components(g: GroundState) -> EisensteinRational:
    return g.vector.total()


def component(g: GroundState, s: PairState | str) -> EisensteinRational:
    if isinstance(s, str):
        s = PairState.from_string(s)
    return g.vector[s]


def projectively_equal(u: Sequence[EisensteinRational], v: Sequence[EisensteinRational]) -> bool:
    k = next((i for i, x in enumerate(u) if x), None)
    if k is None or not v[k]:
        return False
    r = u[k] / v[k]
    return all(a == r * b for a, b in zip(u, v))


# -- exchange equation and degenerate points ---------------------------------

def exchange_factor(zi, zj) -> EisensteinRational:
    """``q (z_{i+1} + q z_i)(z_{i+1} - q z_i)``."""
    zi, zj = as_eis(zi), as_eis(zj)
    return Q * (zj + Q * zi) * (zj - Q * zi)


def verify_exchange(bc: str, point: SamplePoint, i: int) -> bool:
    """``Rc_i(z_i, z_{i+1}) Psi(.., z_{i+1}, z_i, ..) = alpha_i Psi(.., z_i, z_{i+1}, ..)``.

    Both vectors carry the sum normalization, which is symmetric in ``z``
    and so gives them a consistent relative scale.
    """
    n = point.size
    g = ground_state(bc, point, normalization="sum")
    gs = ground_state(bc, point.swapped(i), normalization="sum")
    zi, zj = point.z[i - 1], point.z[i % n]
    lhs = mat_vec(rcheck_matrix(g.bc, n, i, zi, zj), gs.values())
    al = exchange_factor(zi, zj)
    return lhs == [al * x for x in g.values()]


def _degenerate(point: SamplePoint, i: int, factor: EisensteinRational) -> SamplePoint:
    z = list(point.z)
    z[i % len(z)] = factor * z[i - 1]
    return point.with_z(z)


def verify_proj2(bc: str, point: SamplePoint, i: int) -> bool:
    """At ``z_{i+1} = -q^2 z_i``: ``E_i Psi = Psi`` and every component with
    no arc on ``(i, i+1)`` in either colour vanishes."""
    p = _degenerate(point, i, -Q * Q)
    g = ground_state(bc, p)
    if apply_rotor("E", i, g.vector) != g.vector:
        return False
    n = point.size
    a, b = i - 1, i % n
    for s, c in g.vector.items():
        if s.red.partner[a] != b and s.green.partner[a] != b and c:
            return False
    return True


def verify_proj1(bc: str, point: SamplePoint, i: int) -> bool:
    """At ``z_i = q z_{i+1}``: ``(E_i - R_i) Psi = 0`` and ``(E_i - L_i) Psi = 0``.

    This is where ``Rc_i(z, q z)``, proportional to ``2 E_i - R_i - L_i``,
    meets the vanishing exchange factor in :func:`verify_exchange`.
    """
    g = ground_state(bc, _degenerate(point, i, Q * Q), normalization="reference")
    e = apply_rotor("E", i, g.vector)
    return e == apply_rotor("R", i, g.vector) and e == apply_rotor("L", i, g.vector)


def verify_zero2(bc: str, point: SamplePoint, i: int) -> bool:
    """At ``z_i = q z_{i+1}`` (as in :func:`verify_proj1`), for every red
    pattern without an arc on ``(i, i+1)`` and every green ``pi``, the sum of
    ``Psi_{red, pi'}`` over greens with ``e_i pi' = e_i pi`` vanishes;
    likewise with colours exchanged."""
    from .linkpatterns import apply_e

    g = ground_state(bc, _degenerate(point, i, Q * Q))
    geo = bc_geometry(g.bc)
    n = point.size
    a, b = i - 1, i % n
    pats = sorted({s.red for s in g.basis})
    for colour in ("red", "green"):
        for fixed in pats:
            if fixed.partner[a] == b:
                continue
            groups: dict[LinkPattern, EisensteinRational] = {}
            for other in pats:
                s = PairState(fixed, other) if colour == "red" else PairState(other, fixed)
                key = apply_e(i, other, geo)
                groups[key] = groups.get(key, ZERO) + g.vector[s]
            if any(groups.values()):
                return False
    return True


# -- recursion in the size ----------------------------------------------------

def insert_arcs(s: PairState, i: int) -> PairState:
    """Map a size-``N`` state to size ``N+2`` by adding a red and a green arc
    on the new points ``i, i+1`` (1-based, ``1 <= i <= N+1``)."""
    n = s.size

    def ins(p: LinkPattern) -> LinkPattern:
        def shift(k: int) -> int:
            return k if k < i - 1 else k + 2

        new = [DEFECT] * (n + 2)
        for k, j in enumerate(p.partner):
            new[shift(k)] = DEFECT if j == DEFECT else shift(j)
        new[i - 1], new[i] = i, i - 1
        return LinkPattern(tuple(new))

    return PairState(ins(s.red), ins(s.green))


def recursion_factor(point: SamplePoint, i: int) -> EisensteinRational:
    """``prod_{j != i, i+1} q (z_{i+1}^2 - q^2 z_j^2)`` at the given point."""
    n = point.size
    zi1 = point.z[i % n]
    out = ONE
    for j, zj in enumerate(point.z):
        if j not in (i - 1, i % n):
            out = out * Q * (zi1 * zi1 - Q * Q * zj * zj)
    return out


def verify_recursion(point: SamplePoint, i: int) -> bool:
    """Periodic recursion: at ``z_{i+1} = -q^2 z_i`` the sum-normalized state of
    size ``2n`` equals the recursion factor times the size ``2n-2`` state at
    the remaining values with arcs inserted on ``(i, i+1)``.  ``i < 2n``."""
    n = point.size
    if n < 4 or not 1 <= i < n:
        raise ValueError("need 2n >= 4 and 1 <= i < 2n")
    p = _degenerate(point, i, -Q * Q)
    big = ground_state("pbc-even", p, normalization="sum")
    rest = [z for k, z in enumerate(p.z) if k not in (i - 1, i)]
    small = ground_state("pbc-even", point.with_z(rest), normalization="sum")
    fac = recursion_factor(p, i)
    expected = StateVector(big.bc, n)
    for s, c in small.vector.items():
        expected.add(insert_arcs(s, i), fac * c)
    return expected == big.vector


def component_limit(bc: str, point: SamplePoint, direction: Sequence, degree: int,
                    step: Fraction = Fraction(1, 5)) -> StateVector:
    """Sum-normalized ground state at ``point`` obtained as the value at
    ``s = 0`` of its interpolant along ``z + s * direction``.

    Useful where ``point`` itself is degenerate.  ``degree`` bounds the total
    degree of the components.
    """
    d = [as_eis(c) for c in direction]
    xs: list[Fraction] = []
    vals: list[list[EisensteinRational]] = []
    s = step
    tries = 0
    while len(xs) < degree + 1:
        tries += 1
        if tries > 10 * (degree + 1) + 20:
            raise GroundStateError("could not find regular points along the line")
        z = [a + s * b for a, b in zip(point.z, d)]
        try:
            g = ground_state(bc, point.with_z(z), normalization="sum")
        except (GroundStateError, ArithmeticError, ValueError):
            s += step
            continue
        xs.append(s)
        vals.append(g.values())
        s += step
    basis = pair_basis(_bc_for(bc, point.size), point.size)
    out = [interpolate_at(xs, [v[k] for v in vals], 0) for k in range(len(basis))]
    return StateVector.from_list(_bc_for(bc, point.size), point.size, out)


def double_degenerate_point(point: SamplePoint, i: int, ratio) -> SamplePoint:
    """``point`` with ``z_{i+1} = -q^2 z_i`` and ``z_{i+2} = ratio * z_i``."""
    n = point.size
    z = list(point.z)
    z[i % n] = -Q * Q * z[i - 1]
    z[(i + 1) % n] = as_eis(ratio) * z[i - 1]
    return point.with_z(z)


def verify_double_degenerate(point: SamplePoint, i: int, ratio=Q) -> bool:
    """The polynomial ground state vanishes at :func:`double_degenerate_point`.

    ``ratio = q`` puts ``z_{i+2}`` at the second projection point of ``E_{i+1}``;
    ``ratio = -q`` puts ``(z_{i+1}, z_{i+2})`` where :func:`verify_proj1` holds.
    """
    n = point.size
    p = double_degenerate_point(point, i, ratio)
    # the sum vanishes at the point itself, so approach it along a generic line
    direction = [as_eis(Fraction(k + 1, 3 + 2 * k)) for k in range(n)]
    deg = n * (n // 2 - 1)  # 2m(m-1) for n = 2m
    v = component_limit("pbc-even", p, direction, deg)
    return not v.coeffs


# -- symmetries -----------------------------------------------------------------

def verify_translation(point: SamplePoint) -> bool:
    """Periodic translation covariance: ``Psi_{rot s}(z_N, z_1, .., z_{N-1}) =
    Psi_s(z_1, .., z_N)`` for every state ``s``."""
    g = ground_state("pbc-even", point, normalization="sum")
    z = list(point.z)
    h = ground_state("pbc-even", point.with_z(z[-1:] + z[:-1]), normalization="sum")
    for s, c in zip(g.basis, g.values()):
        rs = PairState(rotate(s.red), rotate(s.green))
        if h.vector[rs] != c:
            return False
    return True


def verify_t_independence(bc: str, point: SamplePoint, t_other) -> bool:
    """The kernel at ``t`` and at ``t_other`` agree projectively."""
    a = ground_state(bc, point).values()
    b = ground_state(bc, point.with_t(t_other)).values()
    return projectively_equal(a, b)


# -- polynomial reconstruction -----------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Sparse multivariate polynomial over Q(q): exponent tuple -> coefficient."""

    nvars: int
    terms: dict

    def __call__(self, values: Sequence) -> EisensteinRational:
        x = [as_eis(v) for v in values]
        out = ZERO
        for exps, c in self.terms.items():
            t = c
            for xi, e in zip(x, exps):
                if e:
                    t = t * xi ** e
            out = out + t
        return out

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __str__(self) -> str:
        parts = []
        for exps in sorted(self.terms, reverse=True):
            mono = "*".join(f"z{k + 1}^{e}" if e > 1 else f"z{k + 1}"
                            for k, e in enumerate(exps) if e)
            parts.append(f"({self.terms[exps]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


def _lagrange_coeffs(xs: list[EisensteinRational]) -> list[list[EisensteinRational]]:
    """Row k: coefficients (ascending) of the k-th Lagrange basis polynomial."""
    out = []
    for k, xk in enumerate(xs):
        poly = [ONE]
        den = ONE
        for j, xj in enumerate(xs):
            if j == k:
                continue
            new = [ZERO] * (len(poly) + 1)
            for d, c in enumerate(poly):
                new[d + 1] = new[d + 1] + c
                new[d] = new[d] - xj * c
            poly = new
            den = den * (xk - xj)
        out.append([c / den for c in poly])
    return out


def reconstruct_polynomial(bc: str, size: int, states: Sequence[PairState] | None,
                           grid: Sequence[Sequence], t=2
                           ) -> dict[PairState, Polynomial]:
    """Interpolate sum-normalized components on a tensor grid.

    ``grid[k]`` lists the values of ``z_{k+1}``; with ``d + 2`` values per
    variable a component of degree ``d`` shows a vanishing top coefficient.
    ``states=None`` reconstructs every component.
    """
    grid = [[as_eis(v) for v in g] for g in grid]
    if len(grid) != size:
        raise ValueError("one grid per variable")
    bcx = _bc_for(bc, size)
    basis = pair_basis(bcx, size)
    wanted = list(basis) if states is None else list(states)
    idx = [basis.index(s) for s in wanted]
    samples = {}
    for combo in itertools.product(*[range(len(g)) for g in grid]):
        z = [grid[k][c] for k, c in enumerate(combo)]
        samples[combo] = ground_state(bcx, SamplePoint(z, t), normalization="sum").values()
    lag = [_lagrange_coeffs(g) for g in grid]
    out = {}
    for s, k in zip(wanted, idx):
        terms: dict[tuple[int, ...], EisensteinRational] = {}
        for combo, vals in samples.items():
            c = vals[k]
            if not c:
                continue
            partial = {(): c}
            for var, ci in enumerate(combo):
                row = lag[var][ci]
                nxt = {}
                for exps, val in partial.items():
                    for d, lc in enumerate(row):
                        if lc:
                            key = exps + (d,)
                            nxt[key] = nxt.get(key, ZERO) + val * lc
                partial = nxt
            for exps, val in partial.items():
                terms[exps] = terms.get(exps, ZERO) + val
        out[s] = Polynomial(size, {e: c for e, c in terms.items() if c})
    return out


def nearest_neighbour_stretches(s: PairState) -> list[tuple[int, int]]:
    """Maximal 1-based intervals ``[i, j]`` (``i < j``, no wrap) containing no
    arc of either colour with both ends inside."""
    n = s.size

    def free(i: int, j: int) -> bool:
        for p in (s.red, s.green):
            for a in range(i - 1, j):
                b = p.partner[a]
                if b != DEFECT and i - 1 <= b < j:
                    return False
        return True

    out = []
    for i in range(1, n + 1):
        j = i
        while j < n and free(i, j + 1):
            j += 1
        if j > i and not any(a <= i and j <= b for a, b in out):
            out.append((i, j))
    return out


def verify_factorization(poly: Polynomial, stretch: tuple[int, int],
                         probes: Sequence[Sequence]) -> bool:
    """``poly`` vanishes on every hyperplane ``z_l + q z_m = 0`` with
    ``i <= l < m <= j``, and ``poly / prod (z_l + q z_m)`` is symmetric in
    ``z_i, .., z_j``; both checked at the probe points."""
    i, j = stretch
    pairs = [(l, m) for l in range(i - 1, j) for m in range(l + 1, j)]

    def reduced(z: list[EisensteinRational]) -> EisensteinRational:
        den = ONE
        for l, m in pairs:
            den = den * (z[l] + Q * z[m])
        return poly(z) / den

    for probe in probes:
        z = [as_eis(v) for v in probe]
        for l, m in pairs:
            w = list(z)
            w[l] = -Q * w[m]
            if poly(w):
                return False
        base = reduced(z)
        for l, m in pairs:
            w = list(z)
            w[l], w[m] = w[m], w[l]
            if reduced(w) != base:
                return False
    return True
