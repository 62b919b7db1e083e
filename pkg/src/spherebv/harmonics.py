"""Spherical-harmonic structure with an exact rational core.

The degree-j basis is built as the exact nullspace of the symbolic
Laplacian on homogeneous polynomials, then orthogonalized with exact
Gram-Schmidt against the closed-form monomial integrals over the
sphere.  Zonal kernels come from the addition theorem over that basis
and collapse to exact univariate polynomials in u = omega.xi; an
independent Gegenbauer/Chebyshev recurrence evaluator is kept only as a
cross-check oracle.

Conventions: integrals written <.,.> use the normalized measure
d(sigma)/|S^{n-1}|.  A stored basis element is a rational polynomial v_k
together with its exact squared norm n_k = <v_k, v_k>; the
surface-measure orthonormal element is v_k / sqrt(n_k |S^{n-1}|).
"""

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import SizeGuardExceededError
from .polynomials import Polynomial
from .ratmath import Q, QONE, QZERO, double_factorial_odd, qparse, qstr

MONOMIAL_SPACE_GUARD = 5000


def dim_h(n, j):
    """Dimension of the space of degree-j spherical harmonics on S^{n-1}.

    Exact integer: (2j + n - 2) (n + j - 3)! / (j! (n - 2)!) for n >= 3,
    with the j = 0 and n = 2 degeneracies handled explicitly.
    """
    if n < 2 or j < 0:
        raise ValueError("need n >= 2 and j >= 0")
    if j == 0:
        return 1
    if n == 2:
        return 2
    return (2 * j + n - 2) * math.factorial(n + j - 3) // (
        math.factorial(j) * math.factorial(n - 2)
    )


def eigenvalue(n, j):
    """Laplace-Beltrami eigenvalue on degree-j harmonics: -j(j + n - 2)."""
    return -j * (j + n - 2)


def surface_area(n):
    """|S^{n-1}| = 2 pi^(n/2) / Gamma(n/2)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def monomial_sphere_integral(n, alpha):
    """Exact normalized monomial integral (1/|S|) int x^alpha dsigma.

    Zero for any odd exponent; otherwise with beta = alpha/2 the value is
    prod_i (2 b_i)! / (4^(b_i) b_i!)  /  prod_{k<|beta|} (n/2 + k),
    an exact rational.
    """
    if any(a % 2 for a in alpha):
        return QZERO
    beta = [a // 2 for a in alpha]
    m = sum(beta)
    num = QONE
    for b in beta:
        if b:
            num = num * double_factorial_odd(b)
    den = QONE
    for k in range(m):
        den = den * (Q(n, 2) + k)
    return num / den


def _monomials(n, degree):
    """All exponent multi-indices of total degree ``degree`` (lex order)."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, n)
    return out


def _inner_product(p1, p2, cache, n):
    total = QZERO
    for a, ca in p1.terms.items():
        for b, cb in p2.terms.items():
            key = tuple(x + y for x, y in zip(a, b))
            val = cache.get(key)
            if val is None:
                val = monomial_sphere_integral(n, key)
                cache[key] = val
            if val != 0:
                total = total + ca * cb * val
    return total


def _rescale_primitive(vec):
    """Clear denominators and divide by the integer content."""
    from math import gcd

    nums = []
    dens = []
    for c in vec.terms.values():
        nums.append(int(c.numerator))
        dens.append(int(c.denominator))
    if not nums:
        return vec
    den_lcm = 1
    for d in dens:
        den_lcm = den_lcm * d // gcd(den_lcm, d)
    g = 0
    for num, d in zip(nums, dens):
        g = gcd(g, abs(num * (den_lcm // d)))
    scale = Q(den_lcm, g if g else 1)
    return vec.scale(scale)


def _laplacian_nullspace(n, j):
    """Exact basis of harmonic homogeneous polynomials of degree j."""
    mono_j = _monomials(n, j)
    if len(mono_j) > MONOMIAL_SPACE_GUARD:
        raise SizeGuardExceededError(
            f"monomial space of dimension {len(mono_j)} exceeds the guard"
        )
    if j < 2:
        return [Polynomial.monomial(n, a) for a in mono_j]
    mono_t = {a: i for i, a in enumerate(_monomials(n, j - 2))}
    rows = len(mono_t)
    cols = len(mono_j)
    mat = [[QZERO] * cols for _ in range(rows)]
    for cidx, a in enumerate(mono_j):
        for i in range(n):
            if a[i] >= 2:
                b = list(a)
                b[i] -= 2
                mat[mono_t[tuple(b)]][cidx] = mat[mono_t[tuple(b)]][cidx] + Q(
                    a[i] * (a[i] - 1)
                )
    # exact RREF to find the kernel
    pivots = []
    r = 0
    for c in range(cols):
        sel = None
        for rr in range(r, rows):
            if mat[rr][c] != 0:
                sel = rr
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = QONE / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for rr in range(rows):
            if rr != r and mat[rr][c] != 0:
                f = mat[rr][c]
                mat[rr] = [x - f * y for x, y in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        coeffs = {mono_j[fc]: QONE}
        for ridx, pc in enumerate(pivots):
            v = mat[ridx][fc]
            if v != 0:
                coeffs[mono_j[pc]] = -v
        basis.append(Polynomial(n, coeffs))
    return basis


@dataclass
class HarmonicBasis:
    """Exact orthogonal basis of degree-j harmonics.

    ``elements[k]`` is a rational polynomial v_k with exact squared norm
    ``sq_norms[k]`` in the normalized measure; off-diagonal Gram entries
    vanish identically, which is the orthonormality certificate for the
    scaled family v_k / sqrt(n_k).
    """

    n: int
    j: int
    elements: list
    sq_norms: list

    @property
    def dim(self):
        return len(self.elements)

    def surface_scales(self):
        """Multipliers turning v_k into surface-measure orthonormal Y_k."""
        area = surface_area(self.n)
        return [1.0 / math.sqrt(float(nk) * area) for nk in self.sq_norms]

    def eval_orthonormal(self, points):
        """Matrix Y_k(points), shape (dim, N); surface-measure orthonormal."""
        points = np.asarray(points, dtype=float)
        scales = self.surface_scales()
        return np.vstack(
            [el.eval_many(points) * s for el, s in zip(self.elements, scales)]
        )

    def gram_certificate(self):
        """Exact Gram data: True iff off-diagonals vanish identically."""
        cache = {}
        for i in range(self.dim):
            for k in range(i):
                if _inner_product(self.elements[i], self.elements[k], cache, self.n) != 0:
                    return False
            if _inner_product(self.elements[i], self.elements[i], cache, self.n) != self.sq_norms[i]:
                return False
        return True

    def to_json(self):
        return {
            "n": self.n,
            "j": self.j,
            "elements": [el.to_json_terms() for el in self.elements],
            "sq_norms": [qstr(nk) for nk in self.sq_norms],
        }

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        els = [Polynomial.from_json_terms(n, t) for t in obj["elements"]]
        return cls(n, obj["j"], els, [qparse(s) for s in obj["sq_norms"]])


_basis_cache = {}
_basis_lock = threading.Lock()


def build_basis(n, j):
    """Orthogonal harmonic basis for degree j on S^{n-1}, cached.

    Nullspace of the symbolic Laplacian, then exact Gram-Schmidt with
    the closed-form monomial integrals; the count always equals
    dim_h(n, j).
    """
    with _basis_lock:
        hit = _basis_cache.get((n, j))
    if hit is not None:
        return hit
    raw = _laplacian_nullspace(n, j)
    cache = {}
    ortho = []
    norms = []
    for v in raw:
        w = v
        for u, nu in zip(ortho, norms):
            c = _inner_product(w, u, cache, n)
            if c != 0:
                w = w + u.scale(-c / nu)
        w = _rescale_primitive(w)
        nw = _inner_product(w, w, cache, n)
        ortho.append(w)
        norms.append(nw)
    basis = HarmonicBasis(n, j, ortho, norms)
    if basis.dim != dim_h(n, j):
        raise SizeGuardExceededError(
            f"nullspace dimension {basis.dim} != d_j = {dim_h(n, j)}"
        )
    with _basis_lock:
        _basis_cache[(n, j)] = basis
    return basis


@dataclass
class ZonalKernel:
    """Degree-j zonal kernel as an exact polynomial in u = omega.xi."""

    n: int
    j: int
    coeffs: list  # rational, ascending powers of u

    def value_at_one(self):
        total = QZERO
        for c in self.coeffs:
            total = total + c
        return total

    def eval(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u, dtype=float)
        for c in reversed(self.coeffs):
            out = out * u + float(c)
        return out

    def eval_exact(self, u):
        total = QZERO
        for c in reversed(self.coeffs):
            total = total * u + c
        return total

    def to_json(self):
        return {"n": self.n, "j": self.j, "coeffs": [qstr(c) for c in self.coeffs]}


_zonal_cache = {}


def zonal(n, j):
    """Exact zonal kernel via the addition theorem over the basis.

    Z_j(omega, xi) = sum_k v_k(omega) v_k(xi) / n_k collapses, after an
    exact substitution along a great circle through the pole, to a
    polynomial in u alone; Z_j(1) = d_j exactly.
    """
    key = (n, j)
    hit = _zonal_cache.get(key)
    if hit is not None:
        return hit
    basis = build_basis(n, j)
    pole = tuple([QONE] + [QZERO] * (n - 1))
    # S(xi) = sum_k v_k(pole) v_k(xi) / n_k, an exact polynomial in xi
    acc = Polynomial.zero(n)
    for v, nk in zip(basis.elements, basis.sq_norms):
        c = v.eval_exact(pole)
        if c != 0:
            acc = acc + v.scale(c / nk)
    # substitute xi = (t, s, 0, ..., 0) and reduce s^2 -> 1 - t^2
    even = {}  # power of t -> coefficient, from s-even terms only
    for a, c in acc.terms.items():
        if any(a[i] for i in range(2, n)):
            continue
        e_t, e_s = a[0], a[1]
        if e_s % 2:
            raise SizeGuardExceededError("zonal collapse produced an odd sine part")
        # s^(2b) = (1 - t^2)^b
        b = e_s // 2
        for k in range(b + 1):
            coef = c * Q((-1) ** k) * Q(math.comb(b, k))
            key_t = e_t + 2 * k
            even[key_t] = even.get(key_t, QZERO) + coef
    deg = max(even) if even else 0
    coeffs = [even.get(k, QZERO) for k in range(deg + 1)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    kern = ZonalKernel(n, j, coeffs)
    _zonal_cache[key] = kern
    return kern


def zonal_value(n, j, u):
    """Zonal kernel values by three-term recurrence (cross-check oracle).

    Uses 2 T_j(u) for n = 2 and (2j + n - 2)/(n - 2) C_j^((n-2)/2)(u)
    for n >= 3; vectorized over u, valid for any degree.
    """
    u = np.asarray(u, dtype=float)
    if j == 0:
        return np.ones_like(u)
    if n == 2:
        prev = np.ones_like(u)
        cur = u.copy()
        for k in range(2, j + 1):
            prev, cur = cur, 2.0 * u * cur - prev
        return 2.0 * cur
    lam = (n - 2) / 2.0
    prev = np.ones_like(u)
    cur = 2.0 * lam * u
    for k in range(2, j + 1):
        prev, cur = cur, (2.0 * (k + lam - 1.0) * u * cur - (k + 2.0 * lam - 2.0) * prev) / k
    return (2.0 * j + n - 2.0) / (n - 2.0) * cur


def zonal_sum_values(n, r, u, jmax):
    """sum_{j<=jmax} r^j Z_j(u) by running the recurrence once."""
    u = np.asarray(u, dtype=float)
    total = np.ones_like(u)
    if jmax == 0:
        return total
    if n == 2:
        prev = np.ones_like(u)
        cur = u.copy()
        total = total + 2.0 * r * cur
        rj = r
        for k in range(2, jmax + 1):
            prev, cur = cur, 2.0 * u * cur - prev
            rj *= r
            total = total + 2.0 * rj * cur
        return total
    lam = (n - 2) / 2.0
    prev = np.ones_like(u)
    cur = 2.0 * lam * u
    total = total + r * ((2.0 + n - 2.0) / (n - 2.0)) * cur
    rj = r
    for k in range(2, jmax + 1):
        prev, cur = cur, (2.0 * (k + lam - 1.0) * u * cur - (k + 2.0 * lam - 2.0) * prev) / k
        rj *= r
        total = total + rj * ((2.0 * k + n - 2.0) / (n - 2.0)) * cur
    return total
