"""Dense exact linear algebra over Q(q): products, comparisons and kernels."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm, isqrt
from typing import Iterator, Sequence

from .exact_arith import ONE, ZERO, EisensteinRational

__all__ = [
    "Matrix",
    "identity",
    "mat_mul",
    "mat_vec",
    "vec_mat",
    "mat_sub",
    "scalar_mat",
    "commutator_is_zero",
    "kernel",
    "kernel_modular",
    "KernelError",
]

Matrix = list[list[EisensteinRational]]


class KernelError(ArithmeticError):
    """Raised when a kernel does not have the expected dimension."""


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def scalar_mat(c: EisensteinRational, m: Matrix) -> Matrix:
    return [[c * x if x else ZERO for x in row] for row in m]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b[0])
    cols = [[row[j] for row in b] for j in range(m)]
    out = []
    for i in range(n):
        ra = [(k, x) for k, x in enumerate(a[i]) if x]
        row = []
        for j in range(m):
            cj = cols[j]
            acc = ZERO
            for k, x in ra:
                y = cj[k]
                if y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Sequence[EisensteinRational]) -> list[EisensteinRational]:
    nz = [(k, x) for k, x in enumerate(v) if x]
    out = []
    for row in a:
        acc = ZERO
        for k, x in nz:
            y = row[k]
            if y:
                acc = acc + y * x
        out.append(acc)
    return out


def vec_mat(v: Sequence[EisensteinRational], a: Matrix) -> list[EisensteinRational]:
    n = len(a[0])
    out = [ZERO] * n
    for k, x in enumerate(v):
        if not x:
            continue
        row = a[k]
        for j in range(n):
            y = row[j]
            if y:
                out[j] = out[j] + x * y
    return out


def commutator_is_zero(a: Matrix, b: Matrix) -> bool:
    return mat_mul(a, b) == mat_mul(b, a)


# -- kernels ----------------------------------------------------------------
#
# Rows are cleared of denominators and eliminated over Z[q] with a
# fraction-free (Bareiss) update; the exact division by the previous pivot is
# done through the field norm.


def _to_int_rows(m: Matrix) -> list[list[tuple[int, int]]]:
    rows = []
    for row in m:
        den = 1
        for x in row:
            den = lcm(den, x.a.denominator, x.b.denominator)
        rows.append([(int(x.a * den), int(x.b * den)) for x in row])
    return rows


def _zmul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    a1, b1 = x
    a2, b2 = y
    bb = b1 * b2
    return a1 * a2 - bb, a1 * b2 + a2 * b1 - bb


def _zdiv_exact(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    a2, b2 = y
    n = a2 * a2 - a2 * b2 + b2 * b2
    a, b = _zmul(x, (a2 - b2, -b2))
    qa, ra = divmod(a, n)
    qb, rb = divmod(b, n)
    if ra or rb:
        raise ArithmeticError("inexact division in Z[q]")
    return qa, qb


def kernel(m: Matrix, expected_dim: int | None = None) -> list[list[EisensteinRational]]:
    """Basis of the right kernel ``{v : m v = 0}``.

    Each basis vector has a 1 in its free column and is exact over Q(q).
    Raises :class:`KernelError` if ``expected_dim`` is given and differs.
    """
    rows = _to_int_rows(m)
    nrows = len(rows)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    prev = (1, 0)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            a, b = rows[i][c]
            if a or b:
                size = abs(a) + abs(b)
                if best is None or size < best:
                    best, piv = size, i
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            new = row[:c]
            for k in range(c, ncols):
                x = row[k]
                u = _zmul(p, x) if (x[0] or x[1]) else (0, 0)
                y = prow[k]
                if (f[0] or f[1]) and (y[0] or y[1]):
                    w = _zmul(f, y)
                    u = (u[0] - w[0], u[1] - w[1])
                if u[0] or u[1]:
                    u = _zdiv_exact(u, prev)
                new.append(u)
            rows[i] = new
        pivots.append(c)
        prev = p
        r += 1
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    if expected_dim is not None and len(free) != expected_dim:
        raise KernelError(f"kernel dimension {len(free)}, expected {expected_dim}")
    ech = [[EisensteinRational(a, b) for a, b in rows[k]] for k in range(len(pivots))]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = ech[k]
            acc = ZERO
            for j in range(pc + 1, ncols):
                if v[j] and row[j]:
                    acc = acc + row[j] * v[j]
            v[pc] = -acc / row[pc]
        basis.append(v)
    return basis


# -- multi-modular kernels --------------------------------------------------
#
# For a prime p = 1 mod 3 the field F_p holds a primitive cube root r, and
# a + b q -> a + b r, a + b q -> a + b r^2 are the two images of Z[q].  Both
# images are row-reduced, the kernel coordinates are lifted by CRT and
# rational reconstruction, and the lift is accepted only after an exact
# product ``m v == 0`` over Q(q).  Since rank mod p never exceeds the true
# rank, an exactly verified basis of the mod-p kernel is a basis of the kernel.


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_1_mod_3(start: int = (1 << 61) - 1) -> Iterator[int]:
    p = start - (start - 1) % 6  # p = 1 mod 6
    while True:
        if _is_prime(p):
            yield p
        p -= 6


def _cube_root_of_unity(p: int) -> int:
    for g in range(2, p):
        r = pow(g, (p - 1) // 3, p)
        if r != 1:
            return r
    raise ArithmeticError(f"no primitive cube root of unity mod {p}")


def _rref_kernel_mod(rows: list[list[int]], p: int) -> tuple[list[int], list[list[int]]]:
    """Pivot columns and kernel basis (1 at each free column) mod p."""
    rows = [r[:] for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    pivset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = [0] * ncols
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = -rows[k][fc] % p
        basis.append(v)
    return pivots, basis


def _rat_recon(u: int, m: int) -> Fraction | None:
    """Rational x/y = u mod m with |x|, y <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def kernel_modular(m: Matrix, expected_dim: int | None = None,
                   max_primes: int = 64) -> list[list[EisensteinRational]]:
    """Same contract as :func:`kernel`, computed by multi-modular lifting.

    Falls back to :func:`kernel` if the lift does not stabilise within
    ``max_primes`` primes.
    """
    rows = _to_int_rows(m)
    modulus = 1
    acc_a: list[list[int]] = []
    acc_b: list[list[int]] = []
    ref_pivots: list[int] | None = None
    for count, p in enumerate(_primes_1_mod_3()):
        if count == max_primes:
            break
        r = _cube_root_of_unity(p)
        r2 = r * r % p
        piv1, ker1 = _rref_kernel_mod([[(a + b * r) % p for a, b in row] for row in rows], p)
        piv2, ker2 = _rref_kernel_mod([[(a + b * r2) % p for a, b in row] for row in rows], p)
        if piv1 != piv2:
            continue
        if ref_pivots is None or len(piv1) > len(ref_pivots):
            # more rank than before: earlier primes were unlucky
            ref_pivots, modulus, acc_a, acc_b = piv1, 1, [], []
        elif piv1 != ref_pivots:
            continue
        d = pow(r - r2, -1, p)
        img_a, img_b = [], []
        for v1, v2 in zip(ker1, ker2):
            bs = [(x - y) * d % p for x, y in zip(v1, v2)]
            img_b.append(bs)
            img_a.append([(x - b * r) % p for x, b in zip(v1, bs)])
        if modulus == 1:
            acc_a, acc_b, modulus = img_a, img_b, p
        else:
            inv = pow(modulus, -1, p)
            new_mod = modulus * p
            acc_a = [[_crt(x, modulus, y, p, inv, new_mod) for x, y in zip(u, w)]
                     for u, w in zip(acc_a, img_a)]
            acc_b = [[_crt(x, modulus, y, p, inv, new_mod) for x, y in zip(u, w)]
                     for u, w in zip(acc_b, img_b)]
            modulus = new_mod
        basis = _lift(acc_a, acc_b, modulus)
        if basis is not None and all(not any(mat_vec(m, v)) for v in basis):
            if expected_dim is not None and len(basis) != expected_dim:
                raise KernelError(f"kernel dimension {len(basis)}, expected {expected_dim}")
            return basis
    return kernel(m, expected_dim)


def _crt(x: int, mx: int, y: int, p: int, inv: int, new_mod: int) -> int:
    return (x + mx * ((y - x) * inv % p)) % new_mod


def _lift(acc_a: list[list[int]], acc_b: list[list[int]],
          modulus: int) -> list[list[EisensteinRational]] | None:
    basis = []
    for va, vb in zip(acc_a, acc_b):
        v = []
        for a, b in zip(va, vb):
            fa = _rat_recon(a, modulus)
            fb = _rat_recon(b, modulus)
            if fa is None or fb is None:
                return None
            v.append(EisensteinRational(fa, fb))
        basis.append(v)
    return basis
