"""Closed forms: Schur functions, symplectic characters, Pfaffians and the
enumeration products they evaluate to.

Everything is exact over Q(q).  Values are passed as sequences of anything
:func:`as_eis` accepts.  Functions that are polynomials but are written as
ratios (bialternants, the Pfaffian formula) refuse coincident arguments; the
homogeneous point is reached either through the product formulas or through
:func:`limit_along_line`, which interpolates the polynomial on a line through
the requested point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .exact_arith import ONE, Q, ZERO, EisensteinRational, as_eis

__all__ = [
    "Partition",
    "CoincidentValuesError",
    "complete_homogeneous",
    "determinant",
    "schur",
    "schur_bialternant",
    "symplectic_character",
    "pfaffian",
    "pfaffian_expansion",
    "limit_along_line",
    "interpolate_at",
    "pbc_mnc_sites",
    "mnc_pbc_even",
    "pfaffian_mnc_reduced",
    "pfaffian_mnc_reduced_any",
    "pfaffian_recursion_ratio",
    "mnc_pbc_star",
    "mnc_pbc_star_homogeneous",
    "unit_part",
    "mnc_cbc",
    "mnc_cbc_homogeneous",
    "sequence",
    "asm1",
    "asm3",
    "av1",
    "av3",
    "aht_odd",
    "aht_even",
    "cstcpp",
    "n8",
    "theta",
    "UNITS",
    "sum_formula",
    "sum_homogeneous",
    "unexpected_identity",
    "SEQUENCES",
]

Values = Sequence


class CoincidentValuesError(ValueError):
    """A ratio formula was asked for a value at a removable singularity."""


# -- partitions and Schur functions -------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @classmethod
    def doubled_staircase(cls, n: int) -> Partition:
        """Two rows of each length ``n-1, n-2, ..., 1``."""
        return cls(tuple(r for r in range(n - 1, 0, -1) for _ in (0, 1)))

    @classmethod
    def doubled_staircase_plus(cls, n: int) -> Partition:
        """:meth:`doubled_staircase` with one extra row of length ``n``."""
        return cls((n,) + cls.doubled_staircase(n).parts)


def complete_homogeneous(values: Values, kmax: int) -> list[EisensteinRational]:
    """``[h_0, ..., h_kmax]`` of the given values (repeats allowed)."""
    h = [ONE] + [ZERO] * kmax
    for v in values:
        v = as_eis(v)
        for k in range(1, kmax + 1):
            h[k] = h[k] + v * h[k - 1]
    return h


def determinant(m: Sequence[Sequence]) -> EisensteinRational:
    """Determinant over Q(q) by Gaussian elimination."""
    a = [[as_eis(x) for x in row] for row in m]
    n = len(a)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f * inv
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[c])]
    return det


def schur(lam: Partition, values: Values) -> EisensteinRational:
    """``S_lam(values)`` via the Jacobi-Trudi determinant ``det h_{lam_i - i + j}``."""
    if len(values) < len(lam):
        return ZERO
    ell = len(lam)
    if ell == 0:
        return ONE
    h = complete_homogeneous(values, lam.parts[0] + ell)

    def hk(k: int) -> EisensteinRational:
        return h[k] if k >= 0 else ZERO

    return determinant([[hk(lam.parts[i] - i + j) for j in range(ell)] for i in range(ell)])


def schur_bialternant(lam: Partition, values: Values) -> EisensteinRational:
    """``det(v_i^(lam_j + n - j)) / det(v_i^(n - j))``; needs distinct values."""
    v = [as_eis(x) for x in values]
    n = len(v)
    parts = list(lam.parts) + [0] * (n - len(lam))
    if len(parts) > n:
        return ZERO
    den = determinant([[x ** (n - 1 - j) for j in range(n)] for x in v])
    if not den:
        raise CoincidentValuesError("bialternant needs pairwise distinct values")
    num = determinant([[x ** (parts[j] + n - 1 - j) for j in range(n)] for x in v])
    return num / den


def symplectic_character(n: int, values: Values) -> EisensteinRational:
    """The character ``chi_N`` made polynomial.

    ``prod_i x_i^(c-1) * det(x_i^e_j - x_i^-e_j) / det(x_i^j - x_i^-j)`` with
    ``e_j = j + ceil(j/2) - 1`` and ``c = ceil(N/2)``; of degree ``2(c-1)``
    in each ``x_i`` and invariant under ``x_i -> 1/x_i`` up to ``x_i^(2(c-1))``.
    """
    x = [as_eis(v) for v in values]
    if len(x) != n:
        raise ValueError(f"chi_{n} takes {n} values, got {len(x)}")
    for i, a in enumerate(x):
        if not a:
            raise CoincidentValuesError("zero argument")
        for b in x[i + 1:]:
            if a == b or a * b == 1:
                raise CoincidentValuesError(
                    "coincident arguments; use the product formulas or limit_along_line")
        if a * a == 1:
            raise CoincidentValuesError(
                "argument equal to its inverse; use the product formulas or limit_along_line")
    inv = [a.inverse() for a in x]
    expo = [j + (j + 1) // 2 - 1 for j in range(1, n + 1)]
    num = determinant([[a ** e - b ** e for e in expo] for a, b in zip(x, inv)])
    den = determinant([[a ** j - b ** j for j in range(1, n + 1)] for a, b in zip(x, inv)])
    pre = ONE
    c = (n + 1) // 2 - 1
    for a in x:
        pre = pre * a ** c
    return pre * num / den


# -- Pfaffians ------------------------------------------------------------------

def _check_antisymmetric(a: list[list[EisensteinRational]]) -> None:
    n = len(a)
    if n % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix")
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("matrix is not square")
        if a[i][i]:
            raise ValueError("antisymmetric matrix needs a zero diagonal")
        for j in range(i + 1, n):
            if a[i][j] != -a[j][i]:
                raise ValueError("matrix is not antisymmetric")


def pfaffian_expansion(a: Sequence[Sequence]) -> EisensteinRational:
    """Pfaffian by expansion along the first row."""
    m = [[as_eis(x) for x in row] for row in a]
    _check_antisymmetric(m)
    return _pf_expand(m, tuple(range(len(m))))


def _pf_expand(a, idx: tuple[int, ...]) -> EisensteinRational:
    if not idx:
        return ONE
    i0 = idx[0]
    total = ZERO
    for pos in range(1, len(idx)):
        j = idx[pos]
        if a[i0][j]:
            rest = idx[1:pos] + idx[pos + 1:]
            term = a[i0][j] * _pf_expand(a, rest)
            total = total + term if pos % 2 else total - term
    return total


def pfaffian(a: Sequence[Sequence]) -> EisensteinRational:
    """Exact Pfaffian: expansion up to dimension 6, skew elimination above."""
    m = [[as_eis(x) for x in row] for row in a]
    _check_antisymmetric(m)
    n = len(m)
    if n <= 6:
        return _pf_expand(m, tuple(range(n)))
    pf = ONE
    for k in range(0, n, 2):
        piv = next((j for j in range(k + 1, n) if m[k][j]), None)
        if piv is None:
            return ZERO
        if piv != k + 1:
            # swapping two indices flips the Pfaffian
            for row in m:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            m[k + 1], m[piv] = m[piv], m[k + 1]
            pf = -pf
        a = m[k][k + 1]
        pf = pf * a
        inv = a.inverse()
        for i in range(k + 2, n):
            ri = m[i]
            u, w = ri[k], ri[k + 1]
            if not (u or w):
                continue
            for j in range(k + 2, n):
                ri[j] = ri[j] + (u * m[k + 1][j] - w * m[k][j]) * inv
    return pf


# -- evaluation through coincident points ---------------------------------------

def interpolate_at(xs: Sequence, ys: Sequence, x0) -> EisensteinRational:
    """Value at ``x0`` of the interpolating polynomial through ``(xs, ys)``."""
    xs = [as_eis(x) for x in xs]
    x0 = as_eis(x0)
    total = ZERO
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num, den = ONE, ONE
        for j, xj in enumerate(xs):
            if j != i:
                num = num * (x0 - xj)
                den = den * (xi - xj)
        total = total + as_eis(yi) * num / den
    return total


def limit_along_line(f: Callable[[list[EisensteinRational]], EisensteinRational],
                     values: Values, degree: int,
                     direction: Sequence | None = None) -> EisensteinRational:
    """Evaluate a polynomial ``f`` of total degree ``<= degree`` at ``values``
    where its formula is singular.

    ``f`` is sampled at ``values + s * direction`` for ``degree + 1`` nonzero
    rational ``s`` at which it evaluates, and the interpolant is read at ``s = 0``.
    """
    base = [as_eis(v) for v in values]
    if direction is None:
        direction = [Fraction(1, 1 + 2 * i) * (1 if i % 2 else -1) + i for i in range(len(base))]
    d = [as_eis(c) for c in direction]
    xs, ys = [], []
    s = Fraction(1, 7)
    tries = 0
    while len(xs) < degree + 1:
        tries += 1
        if tries > 20 * (degree + 1) + 50:
            raise ArithmeticError("could not find enough regular sample points")
        try:
            y = f([b + s * c for b, c in zip(base, d)])
        except (CoincidentValuesError, ZeroDivisionError):
            s += Fraction(1, 11)
            continue
        xs.append(s)
        ys.append(y)
        s += Fraction(1, 11)
    return interpolate_at(xs, ys, 0)


# -- maximally nested components: periodic, even size ----------------------------

def pbc_mnc_sites(m: int, k: int) -> dict[str, list[int]]:
    """0-based site positions of the blocks ``y, x, ytilde, xtilde``.

    ``y_i`` sits at ``i``, ``x_i`` at ``m + k + 1 - i``, ``ytilde_i`` at
    ``2m + k + 1 - i`` and ``xtilde_i`` at ``2m + k + i`` (1-based).
    """
    return {
        "y": [i - 1 for i in range(1, m + 1)],
        "x": [m + k - i for i in range(1, k + 1)],
        "yt": [2 * m + k - i for i in range(1, m + 1)],
        "xt": [2 * m + k + i - 1 for i in range(1, k + 1)],
    }


def _block_factor(vals: list[EisensteinRational], reverse: bool) -> EisensteinRational:
    # prod_{i<j} (v_i + q v_j), or (v_j + q v_i) with reverse
    out = ONE
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = (vals[j], vals[i]) if reverse else (vals[i], vals[j])
            out = out * (a + Q * b)
    return out


def mnc_pbc_even(m: int, k: int, values: Values) -> EisensteinRational:
    """Component of red arcs nested about the seam and green arcs nested about
    the gap between sites ``m`` and ``m+1``, for ``N = 2(m+k)`` sites.

    ``values`` are the spectral parameters in site order.  The component is
    the product of the nearest-neighbour factors ``(z_l + q z_m)`` inside and
    between the four arcless stretches and of two Schur functions at
    sign-flipped arguments, times the phase ``(-1)^(mk) (-q)^(n(n-1)/2)``.
    Normalised so that the sum of all components is
    ``S_{Y_n}(z^2)``.
    """
    z = [as_eis(v) for v in values]
    n = m + k
    if len(z) != 2 * n:
        raise ValueError(f"need {2 * n} values, got {len(z)}")
    pos = pbc_mnc_sites(m, k)
    x = [z[p] for p in pos["x"]]
    xt = [z[p] for p in pos["xt"]]
    y = [z[p] for p in pos["y"]]
    yt = [z[p] for p in pos["yt"]]
    triv = _block_factor(x, True) * _block_factor(xt, False)
    triv = triv * _block_factor(y, False) * _block_factor(yt, True)
    for i in range(k):
        for j in range(m):
            triv = triv * (x[i] + Q * yt[j]) * (y[j] + Q * x[i])
            triv = triv * (xt[i] + Q * y[j]) * (yt[j] + Q * xt[i])
    sx = Q ** (2 * k * (k - 1)) * schur(Partition.doubled_staircase(k), x + [-v for v in xt])
    sy = Q ** (2 * m * (m - 1)) * schur(Partition.doubled_staircase(m), y + [-v for v in yt])
    sign = -1 if (m * k) % 2 else 1
    return sign * (-Q) ** (n * (n - 1) // 2) * triv * sx * sy


# -- maximally nested components: Pfaffian family --------------------------------

def pfaffian_mnc_reduced(values: Values) -> EisensteinRational:
    """Non-trivial factor of the parallel component on an even number ``2n`` of
    sites: ``3^-n prod_{i!=j}(z_i + q z_j) / prod_{i<j}(z_i - z_j) * Pf[...]``
    with entries ``(z_i^2 - z_j^2) / ((z_i + q z_j)(z_j + q z_i))``.

    The prefactor is the one for which the recursion of
    :func:`pfaffian_recursion_ratio` holds with ratio 1.
    """
    z = [as_eis(v) for v in values]
    k = len(z)
    if k % 2:
        raise ValueError("Pfaffian formula needs an even number of values")
    if k == 0:
        return ONE
    num = ONE
    den = ONE
    for i in range(k):
        for j in range(k):
            if i != j:
                num = num * (z[i] + Q * z[j])
        for j in range(i + 1, k):
            den = den * (z[i] - z[j])
    if not den or not num:
        raise CoincidentValuesError("coincident arguments in the Pfaffian formula")
    a = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            e = (z[i] * z[i] - z[j] * z[j]) / ((z[i] + Q * z[j]) * (z[j] + Q * z[i]))
            a[i][j] = e
            a[j][i] = -e
    return Fraction(1, 3 ** (k // 2)) * num / den * pfaffian(a)


def _leading_coefficient(f: Callable[[EisensteinRational], EisensteinRational],
                         degree: int) -> EisensteinRational:
    # coefficient of s^degree of a polynomial f(s): interpolate u^degree f(1/u) at u = 0
    xs, ys = [], []
    u = Fraction(1, 5)
    tries = 0
    while len(xs) < degree + 1:
        tries += 1
        if tries > 20 * (degree + 1) + 50:
            raise ArithmeticError("could not find enough regular sample points")
        try:
            ys.append(as_eis(u) ** degree * f(as_eis(1 / u)))
            xs.append(u)
        except (CoincidentValuesError, ZeroDivisionError):
            pass
        u += Fraction(1, 7)
    return interpolate_at(xs, ys, 0)


def pfaffian_mnc_reduced_any(values: Values) -> EisensteinRational:
    """Non-trivial factor of the parallel component for any number of sites.

    For an odd number ``2n+1`` it is ``3 (-q)^n`` times the leading coefficient,
    in an extra variable ``s``, of the even-size factor at ``(values, s)``; the
    coefficient is read off by interpolation.  At coincident values use
    :func:`limit_along_line` around this function.
    """
    z = [as_eis(v) for v in values]
    k = len(z)
    if k % 2 == 0:
        return pfaffian_mnc_reduced(z)
    n = k // 2
    lead = _leading_coefficient(lambda s: pfaffian_mnc_reduced(z + [s]), k)
    return 3 * (-Q) ** n * lead


def _nearest_factor(z: list[EisensteinRational]) -> EisensteinRational:
    out = ONE
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            out = out * (z[i] + Q * z[j])
    return out


def pfaffian_recursion_ratio(values: Values) -> EisensteinRational:
    """Ratio of the two sides of the recursion of the reduced parallel factor.

    With ``k = len(values)``, the left side is the reduced factor at
    ``z_1 = -q^2 z_k`` (the first entry of ``values`` is overwritten) and the
    right side is ``q^-k / (q - q^2) z_k prod_{j=2}^{k-1} (q^2 z_k^2 - z_j^2)``
    times the reduced factor of ``z_2, ..., z_{k-1}``.  Equal to 1 when the
    recursion holds.
    """
    z = [as_eis(v) for v in values]
    k = len(z)
    if k < 2:
        raise ValueError("recursion needs at least two sites")
    zk = z[-1]
    z[0] = -Q * Q * zk
    lhs = limit_along_line(pfaffian_mnc_reduced_any, z, k * (k - 1) // 2)
    fac = Q ** (-k) / (Q - Q * Q) * zk
    for zj in z[1:k - 1]:
        fac = fac * (Q * Q * zk * zk - zj * zj)
    return lhs / (fac * pfaffian_mnc_reduced_any(z[1:k - 1]))


def mnc_pbc_star(kind: str, m: int, k: int, values: Values,
                 full: bool = True) -> EisensteinRational:
    """Maximally nested component for odd size (``kind='odd'``) or the
    punctured geometry (``kind='infty'``).

    The reduced factor is ``f(z_1..z_m) * f(z_{m+1}..z_{m+k})`` with ``f`` the
    Pfaffian factor.  With ``full`` the nearest-neighbour factor
    ``prod_{i<j}(z_i + q z_j)`` is multiplied back in; it is only known for the
    parallel component ``m = 0``.
    """
    if kind not in ("odd", "infty"):
        raise ValueError(f"unknown kind {kind!r}")
    z = [as_eis(v) for v in values]
    if len(z) != m + k:
        raise ValueError(f"need {m + k} values, got {len(z)}")
    if (len(z) % 2 == 1) != (kind == "odd"):
        raise ValueError(f"size {len(z)} does not fit kind {kind!r}")
    red = pfaffian_mnc_reduced_any(z[:m]) * pfaffian_mnc_reduced_any(z[m:])
    if not full:
        return red
    if m:
        raise ValueError("the full component is only available for m = 0")
    return _nearest_factor(z) * red


def mnc_pbc_star_homogeneous(k: int) -> EisensteinRational:
    """Full parallel component on ``k`` sites at ``z_i = 1``.

    The value is a rational times a sixth root of unity, see :func:`unit_part`.
    """
    if k == 1:
        return pfaffian_mnc_reduced_any([ONE])
    kind = "odd" if k % 2 else "infty"
    return limit_along_line(lambda v: mnc_pbc_star(kind, 0, k, v), [1] * k, k * (k - 1))


UNITS = tuple((-Q) ** e for e in range(6))


def unit_part(x: EisensteinRational) -> tuple[EisensteinRational, Fraction]:
    """Split ``x = u * r`` with ``u`` a sixth root of unity and ``r > 0``
    rational; raises ``ValueError`` if ``x`` has no such form."""
    x = as_eis(x)
    for u in UNITS:
        y = x / u
        if y.b == 0 and y.a > 0:
            return u, y.a
    raise ValueError(f"{x} is not a unit times a positive rational")


# -- maximally nested components: closed boundaries ------------------------------

def _cbc_trivial(z: list[EisensteinRational], first: range, second: range) -> EisensteinRational:
    # blocks are 1-based inclusive site ranges
    out = ONE
    for i in first:
        for j in first:
            if i < j:
                out = out * (z[i - 1] + Q * z[j - 1]) * (1 + Q * z[i - 1] * z[j - 1])
    for i in second:
        for j in second:
            if i < j:
                out = out * (z[i - 1] + Q * z[j - 1]) * (z[i - 1] * z[j - 1] + Q)
    return out


_CBC_KINDS = ("even", "odd_a", "odd_s")


def _cbc_size(kind: str, n: int) -> int:
    if kind not in _CBC_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    return 2 * n if kind == "even" else 2 * n + 1


def _cbc_parts(kind: str, n: int, z: list[EisensteinRational]):
    """(trivial factor, monomial, character size, character arguments)."""
    flip = [-v for v in z[:n]]
    if kind == "even":
        return (_cbc_trivial(z, range(1, n + 1), range(n + 1, 2 * n + 1)), ONE,
                2 * n, flip + z[n:])
    mono = ONE
    for v in z[:n]:
        mono = mono * v
    if kind == "odd_a":
        return (_cbc_trivial(z, range(1, n + 1), range(n + 1, 2 * n + 2)), mono,
                2 * n + 1, flip + z[n:])
    for v in z[n + 1:]:
        mono = mono * v
    return (_cbc_trivial(z, range(1, n + 2), range(n + 1, 2 * n + 2)), mono,
            2 * n, flip + z[n + 1:])


_cbc_unit_cache: dict[tuple[str, int], EisensteinRational] = {}


def _cbc_unit(kind: str, n: int) -> EisensteinRational:
    # the sixth root of unity that makes the homogeneous value positive
    key = (kind, n)
    if key not in _cbc_unit_cache:
        size = _cbc_size(kind, n)

        def raw(v):
            triv, mono, nc, args = _cbc_parts(kind, n, [as_eis(x) for x in v])
            return triv * mono * symplectic_character(nc, args)

        deg = size * (2 * size + 2)
        val = limit_along_line(raw, [1] * size, deg)
        u, _ = unit_part(val)
        _cbc_unit_cache[key] = u.inverse()
    return _cbc_unit_cache[key]


def mnc_cbc(kind: str, n: int, values: Values) -> EisensteinRational:
    """Maximally nested component for closed boundaries.

    ``kind='even'``: ``2n`` sites, both colours nested about the centre.
    ``kind='odd_a'`` and ``'odd_s'``: ``2n+1`` sites with one defect per colour,
    the two colours nested alike (``a``) or shifted by one site (``s``).

    Each is a product of the boundary-covariant pair factors of each block,
    a monomial, the character ``chi`` at arguments with the first ``n`` signs
    flipped (``z_{n+1}`` omitted for ``odd_s``), and a sixth root of unity
    fixed by positivity at ``z_i = 1``.  The monomial is ``prod_{i<=n} z_i``
    for ``odd_a``, ``prod_{i != n+1} z_i`` for ``odd_s`` and 1 otherwise.
    Normalised so that the components sum to ``chi_N(z^2)``.  At the
    homogeneous point use :func:`mnc_cbc_homogeneous`.
    """
    size = _cbc_size(kind, n)
    z = [as_eis(v) for v in values]
    if len(z) != size:
        raise ValueError(f"need {size} values, got {len(z)}")
    triv, mono, nc, args = _cbc_parts(kind, n, z)
    return _cbc_unit(kind, n) * triv * mono * symplectic_character(nc, args)


def mnc_cbc_homogeneous(kind: str, n: int) -> Fraction:
    """Value of :func:`mnc_cbc` at ``z_i = 1`` from the product formulas."""
    _cbc_size(kind, n)
    if kind == "odd_a":
        return 3 ** (n * (n - 1) // 2) * asm1(n + 1)
    return av3(n)


# -- enumerations ----------------------------------------------------------------

def _prod(lo: int, hi: int, term: Callable[[int], Fraction]) -> Fraction:
    out = Fraction(1)
    for j in range(lo, hi + 1):
        out *= term(j)
    return out


def _f(n: int) -> int:
    return factorial(n)


def asm1(n: int) -> Fraction:
    """Alternating sign matrices of size n."""
    return _prod(0, n - 1, lambda i: Fraction(_f(3 * i + 1), _f(n + i)))


def asm3(n: int) -> Fraction:
    """3-enumeration of alternating sign matrices of size n."""
    if n % 2:
        h = (n - 1) // 2
        return 3 ** (h * (h + 1)) * _prod(1, h, lambda i: Fraction(_f(3 * i - 1), _f(h + i))) ** 2
    h = n // 2
    return Fraction(3 ** (h - 1) * _f(3 * h - 1) * _f(h - 1), _f(2 * h - 1) ** 2) * asm3(n - 1)


def av1(n: int) -> Fraction:
    """Vertically symmetric ASMs of size 2n+1."""
    return _prod(0, n - 1, lambda j: Fraction((3 * j + 2) * _f(2 * j + 1) * _f(6 * j + 3),
                                              _f(4 * j + 2) * _f(4 * j + 3)))


def av3(n: int) -> Fraction:
    """3-enumeration of vertically symmetric ASMs of size 2n+1."""
    return Fraction(3) ** (n * (n - 3) // 2) / 2 ** n * _prod(
        1, n, lambda j: Fraction(_f(j - 1) * _f(3 * j), j * _f(2 * j - 1) ** 2))


def aht_odd(n: int) -> Fraction:
    """Half-turn symmetric ASMs of size 2n+1."""
    return _prod(1, n, lambda j: Fraction(4, 3) * Fraction(_f(3 * j) * _f(j), _f(2 * j) ** 2) ** 2)


def aht_even(n: int) -> Fraction:
    """Half-turn symmetric ASMs of size 2n."""
    return _prod(0, n - 1, lambda j: Fraction(3 * j + 2, 3 * j + 1) * Fraction(_f(3 * j + 1), _f(n + j)) ** 2)


def cstcpp(n: int) -> Fraction:
    """Cyclically symmetric transpose complement plane partitions in a 2n-cube."""
    return _prod(0, n - 1, lambda j: Fraction((3 * j + 1) * _f(2 * j) * _f(6 * j),
                                              _f(4 * j) * _f(4 * j + 1)))


def theta(n: int) -> int:
    return (n - 1) * (n + 2) // 3


def n8(n: int) -> Fraction:
    """``3^((n-1)^2)`` times :func:`cstcpp`: 1, 6, 891, 3346110, ..."""
    return 3 ** ((n - 1) ** 2) * cstcpp(n)


SEQUENCES: dict[str, Callable[[int], Fraction | int]] = {
    "asm1": asm1,
    "asm3": asm3,
    "av1": av1,
    "av3": av3,
    "aht_even": aht_even,
    "aht_odd": aht_odd,
    "cstcpp": cstcpp,
    "n8": n8,
    "theta": theta,
}


def sequence(name: str, n: int) -> Fraction | int:
    """Term ``n`` (``n >= 1``) of a named enumeration; see :data:`SEQUENCES`.

    Term ``n`` of ``aht_odd`` counts matrices of size ``2n-1``; every other
    name uses the index of its product function.
    """
    if name not in SEQUENCES:
        raise ValueError(f"unknown sequence {name!r}; known: {sorted(SEQUENCES)}")
    if n < 1:
        raise ValueError("sequences start at n = 1")
    if name == "aht_odd":
        return SEQUENCES[name](n - 1)
    return SEQUENCES[name](n)


def unexpected_identity(n: int) -> tuple[Fraction, Fraction]:
    """Both sides of ``prod_{j<=n} j!(3j+1)!/(j (2j-1)!^2) / (2^n (2n+1)!) = A(n+1; 1)``,
    the right side computed from its own product ``prod_{j<=n+1} (3j-2)!/(n+j)!``."""
    lhs = _prod(1, n, lambda j: Fraction(_f(j) * _f(3 * j + 1), j * _f(2 * j - 1) ** 2))
    lhs /= 2 ** n * _f(2 * n + 1)
    rhs = _prod(1, n + 1, lambda j: Fraction(_f(3 * j - 2), _f(n + j)))
    return lhs, rhs


# -- sum rules ---------------------------------------------------------------------

_SUM_BCS = ("pbc-even", "pbc-odd", "pbc-infty", "cbc")


def sum_formula(bc: str, size: int, values: Values) -> EisensteinRational:
    """Closed form of the sum of all ground-state components.

    ``pbc-even``: ``S_{Y_n}(z^2)``; ``pbc-odd`` and ``pbc-infty``:
    ``S_{Y_n}(z^2) S_{Y'_n}(z^2)``; ``cbc``: ``chi_N(z^2)``.  Repeated values
    are fine for the Schur cases; the character needs distinct squares.
    """
    if bc not in _SUM_BCS:
        raise ValueError(f"unknown boundary condition {bc!r}")
    z = [as_eis(v) for v in values]
    if len(z) != size:
        raise ValueError(f"need {size} values, got {len(z)}")
    sq = [v * v for v in z]
    if bc == "cbc":
        return symplectic_character(size, sq)
    if bc == "pbc-odd":
        if size % 2 == 0:
            raise ValueError("pbc-odd needs an odd size")
        n = size // 2
        return schur(Partition.doubled_staircase(n), sq) * schur(
            Partition.doubled_staircase_plus(n), sq)
    if size % 2:
        raise ValueError(f"{bc} needs an even size")
    n = size // 2
    s = schur(Partition.doubled_staircase(n), sq)
    if bc == "pbc-infty":
        s = s * schur(Partition.doubled_staircase_plus(n), sq)
    return s


def sum_homogeneous(bc: str, size: int) -> Fraction:
    """Product-formula value of the sum at ``z_i = 1``.

    ``pbc-even`` ``2n``: ``3^(n(n-1)/2) A(n;1)``; ``pbc-odd`` ``2n+1``:
    ``3^(n^2) A_HT(2n+1)``; ``pbc-infty`` ``2n``: ``3^(n(n-1)) A_HT(2n)``;
    ``cbc`` ``2n``: ``3^(n(n-1)) A_V(2n+1)`` and ``cbc`` ``2n+1``:
    ``3^(n^2) N8(2n+2)``, the last two being the smallest-integer
    normalisation of the ground state.
    """
    if bc not in _SUM_BCS:
        raise ValueError(f"unknown boundary condition {bc!r}")
    n = size // 2
    if bc == "cbc":
        if size % 2:
            return 3 ** (n * n) * cstcpp(n + 1)
        return 3 ** (n * (n - 1)) * av1(n)
    if bc == "pbc-odd":
        if size % 2 == 0:
            raise ValueError("pbc-odd needs an odd size")
        return 3 ** (n * n) * aht_odd(n)
    if size % 2:
        raise ValueError(f"{bc} needs an even size")
    if bc == "pbc-infty":
        return 3 ** (n * (n - 1)) * aht_even(n)
    return 3 ** (n * (n - 1) // 2) * asm1(n)
