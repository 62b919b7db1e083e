"""Exact symbolic algebra for functions on the sphere.

Three closed families, all with exact rational coefficients:

* ``Polynomial``: multivariate polynomials on R^n.
* ``RadialForm``: sums P(x) * (x.x)^(-k/2), closed under d/dx_i.  The
  degree-0 homogeneous extension of a spherical function lives here, so
  surface partial derivatives can be taken exactly and then restricted
  back to the sphere by setting x.x = 1.
* ``TrigForm``: polynomials in sin/cos of the spherical angles, reduced
  by s_i^2 + c_i^2 = 1 to a canonical form (s-degree <= 1 per angle),
  closed under d/dtheta_i.

Numerics enter only at evaluation time; derivatives are exact.
"""

import math

import numpy as np

from .errors import BadMultiIndexError, NonOrthogonalFrameError
from .ratmath import Q, QONE, QZERO, qparse, qstr

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def _as_q(c):
    if isinstance(c, float):
        raise TypeError("coefficients must be exact rationals or ints")
    return Q(c) if isinstance(c, int) else c


class Polynomial:
    """Multivariate polynomial over the rationals.

    Terms map an exponent multi-index (tuple of length ``n``) to a
    nonzero rational coefficient.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for alpha, c in terms.items():
                c = _as_q(c)
                if c != 0:
                    clean[tuple(alpha)] = c
        self.terms = clean

    # ---- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n, i):
        alpha = [0] * n
        alpha[i] = 1
        return cls(n, {tuple(alpha): QONE})

    @classmethod
    def monomial(cls, n, alpha, c=QONE):
        return cls(n, {tuple(alpha): c})

    # ---- structure ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(a) for a in self.terms), default=0)

    def is_homogeneous(self):
        degs = {sum(a) for a in self.terms}
        return len(degs) <= 1

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        bits = [f"{qstr(c)}*x^{list(a)}" for a, c in sorted(self.terms.items())]
        return "Polynomial(" + " + ".join(bits) + ")"

    # ---- arithmetic ----------------------------------------------------
    def __add__(self, other):
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a, QZERO) + c
            if s == 0:
                out.pop(a, None)
            else:
                out[a] = s
        res = Polynomial.__new__(Polynomial)
        res.n, res.terms = self.n, out
        return res

    def __neg__(self):
        res = Polynomial.__new__(Polynomial)
        res.n = self.n
        res.terms = {a: -c for a, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    key = tuple(x + y for x, y in zip(a, b))
                    s = out.get(key, QZERO) + ca * cb
                    if s == 0:
                        out.pop(key, None)
                    else:
                        out[key] = s
            res = Polynomial.__new__(Polynomial)
            res.n, res.terms = self.n, out
            return res
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_q(c)
        if c == 0:
            return Polynomial.zero(self.n)
        res = Polynomial.__new__(Polynomial)
        res.n = self.n
        res.terms = {a: cc * c for a, cc in self.terms.items()}
        return res

    # ---- calculus -------------------------------------------------------
    def diff(self, i):
        out = {}
        for a, c in self.terms.items():
            if a[i] > 0:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return Polynomial(self.n, out)

    def diff_multi(self, alpha):
        if len(alpha) != self.n:
            raise BadMultiIndexError(f"expected multi-index of length {self.n}")
        p = self
        for i, k in enumerate(alpha):
            for _ in range(k):
                p = p.diff(i)
                if p.is_zero():
                    return p
        return p

    def laplacian(self):
        out = Polynomial.zero(self.n)
        for i in range(self.n):
            out = out + self.diff(i).diff(i)
        return out

    # ---- evaluation -----------------------------------------------------
    def eval_exact(self, point):
        total = QZERO
        for a, c in self.terms.items():
            v = c
            for x, e in zip(point, a):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def eval_many(self, points):
        """Evaluate at float points, shape (N, n) -> (N,)."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        N = points.shape[0]
        maxexp = [0] * self.n
        for a in self.terms:
            for i, e in enumerate(a):
                maxexp[i] = max(maxexp[i], e)
        pows = []
        for i in range(self.n):
            col = points[:, i]
            table = np.empty((maxexp[i] + 1, N))
            table[0] = 1.0
            for e in range(1, maxexp[i] + 1):
                table[e] = table[e - 1] * col
            pows.append(table)
        out = np.zeros(N)
        for a, c in self.terms.items():
            term = np.full(N, float(c))
            for i, e in enumerate(a):
                if e:
                    term = term * pows[i][e]
            out += term
        return out

    def eval_in_ring(self, values, one):
        """Evaluate with ring elements substituted for the variables.

        ``values[i]`` must support +, * and ``scale`` by a rational;
        ``one`` is the ring identity.
        """
        maxexp = [0] * self.n
        for a in self.terms:
            for i, e in enumerate(a):
                maxexp[i] = max(maxexp[i], e)
        pows = []
        for i in range(self.n):
            table = [one]
            for e in range(1, maxexp[i] + 1):
                table.append(table[-1] * values[i])
            pows.append(table)
        total = None
        for a, c in self.terms.items():
            term = None
            for i, e in enumerate(a):
                if e:
                    term = pows[i][e] if term is None else term * pows[i][e]
            term = one.scale(c) if term is None else term.scale(c)
            total = term if total is None else total + term
        return one.scale(QZERO) if total is None else total

    # ---- serialization ----------------------------------------------------
    def to_json_terms(self):
        """Canonical JSON term list [[exponents, coefficient], ...]."""
        return [[list(a), qstr(c)] for a, c in sorted(self.terms.items())]

    @classmethod
    def from_json_terms(cls, n, data):
        return cls(n, {tuple(a): qparse(c) for a, c in data})


class RadialForm:
    """Sum of P(x) * (x.x)^(-k/2) pieces, closed under d/dx_i.

    On the sphere every factor (x.x)^(-k/2) is 1, so restriction to the
    sphere just sums the polynomial parts.
    """

    __slots__ = ("n", "parts")

    def __init__(self, n, parts=None):
        self.n = n
        clean = {}
        if parts:
            for k, p in parts.items():
                if not p.is_zero():
                    clean[k] = clean[k] + p if k in clean else p
        self.parts = {k: p for k, p in clean.items() if not p.is_zero()}

    @classmethod
    def from_polynomial(cls, p, k=0):
        return cls(p.n, {k: p})

    @classmethod
    def homogeneous_extension(cls, p):
        """Degree-0 extension Q(x/|x|) of a homogeneous polynomial Q."""
        if not p.is_homogeneous():
            raise BadMultiIndexError("homogeneous extension needs a homogeneous polynomial")
        return cls(p.n, {p.degree(): p})

    def is_zero(self):
        return not self.parts

    def __add__(self, other):
        parts = dict(self.parts)
        for k, p in other.parts.items():
            parts[k] = parts[k] + p if k in parts else p
        return RadialForm(self.n, parts)

    def scale(self, c):
        return RadialForm(self.n, {k: p.scale(c) for k, p in self.parts.items()})

    def diff(self, i):
        # d/dx_i [P (x.x)^(-k/2)] = (dP/dx_i)(x.x)^(-k/2) - k P x_i (x.x)^(-(k+2)/2)
        parts = {}
        for k, p in self.parts.items():
            dp = p.diff(i)
            if not dp.is_zero():
                parts[k] = parts.get(k, Polynomial.zero(self.n)) + dp
            if k != 0:
                xi = Polynomial.variable(self.n, i)
                extra = (p * xi).scale(Q(-k))
                parts[k + 2] = parts.get(k + 2, Polynomial.zero(self.n)) + extra
        return RadialForm(self.n, parts)

    def diff_multi(self, alpha):
        if len(alpha) != self.n:
            raise BadMultiIndexError(f"expected multi-index of length {self.n}")
        f = self
        for i, m in enumerate(alpha):
            for _ in range(m):
                f = f.diff(i)
        return f

    def sphere_polynomial(self):
        """Polynomial whose sphere restriction equals this form."""
        total = Polynomial.zero(self.n)
        for p in self.parts.values():
            total = total + p
        return total

    def eval_sphere_many(self, points):
        return self.sphere_polynomial().eval_many(points)

    def eval_sphere_exact(self, point):
        return self.sphere_polynomial().eval_exact(point)

    def eval_many(self, points):
        """Evaluate off the sphere; points must be nonzero."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        rr = np.sum(points * points, axis=1)
        out = np.zeros(points.shape[0])
        for k, p in self.parts.items():
            out += p.eval_many(points) * rr ** (-k / 2.0)
        return out

    def to_json_terms(self):
        """Canonical dump: [[k, polynomial term list], ...]."""
        return [[k, p.to_json_terms()] for k, p in sorted(self.parts.items())]


class TrigForm:
    """Polynomial in sin/cos of ``m`` angles, canonically reduced.

    Keys are tuples (s_1, c_1, ..., s_m, c_m) of exponents with every
    s-exponent reduced below 2 via s^2 = 1 - c^2.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = m
        self.terms = self._reduce(terms or {})

    @staticmethod
    def _reduce(raw):
        work = []
        for key, c in raw.items():
            c = _as_q(c)
            if c != 0:
                work.append((tuple(key), c))
        out = {}
        while work:
            key, c = work.pop()
            for pos in range(0, len(key), 2):
                if key[pos] >= 2:
                    base = list(key)
                    base[pos] -= 2
                    k1 = tuple(base)
                    base[pos + 1] += 2
                    k2 = tuple(base)
                    work.append((k1, c))
                    work.append((k2, -c))
                    break
            else:
                s = out.get(key, QZERO) + c
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return out

    # ---- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, m):
        return cls(m)

    @classmethod
    def one(cls, m):
        return cls(m, {(0,) * (2 * m): QONE})

    @classmethod
    def sin(cls, m, i):
        key = [0] * (2 * m)
        key[2 * i] = 1
        return cls(m, {tuple(key): QONE})

    @classmethod
    def cos(cls, m, i):
        key = [0] * (2 * m)
        key[2 * i + 1] = 1
        return cls(m, {tuple(key): QONE})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TrigForm) and self.m == other.m and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "TrigForm(0)"
        bits = []
        for key, c in sorted(self.terms.items()):
            sym = []
            for i in range(self.m):
                if key[2 * i]:
                    sym.append(f"s{i+1}^{key[2*i]}" if key[2 * i] > 1 else f"s{i+1}")
                if key[2 * i + 1]:
                    sym.append(f"c{i+1}^{key[2*i+1]}" if key[2 * i + 1] > 1 else f"c{i+1}")
            bits.append(qstr(c) + ("*" + "*".join(sym) if sym else ""))
        return "TrigForm(" + " + ".join(bits) + ")"

    # ---- arithmetic -------------------------------------------------------
    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, QZERO) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        res = TrigForm.__new__(TrigForm)
        res.m, res.terms = self.m, out
        return res

    def __sub__(self, other):
        return self + other.scale(Q(-1))

    def __mul__(self, other):
        raw = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                raw[key] = raw.get(key, QZERO) + ca * cb
        return TrigForm(self.m, raw)

    def scale(self, c):
        c = _as_q(c)
        if c == 0:
            return TrigForm.zero(self.m)
        res = TrigForm.__new__(TrigForm)
        res.m = self.m
        res.terms = {k: cc * c for k, cc in self.terms.items()}
        return res

    # ---- calculus ----------------------------------------------------------
    def diff(self, i):
        """Exact d/dtheta_i using s -> c, c -> -s on the i-th angle."""
        raw = {}
        for key, c in self.terms.items():
            a, b = key[2 * i], key[2 * i + 1]
            if a:
                k1 = list(key)
                k1[2 * i] -= 1
                k1[2 * i + 1] += 1
                kk = tuple(k1)
                raw[kk] = raw.get(kk, QZERO) + c * a
            if b:
                k2 = list(key)
                k2[2 * i] += 1
                k2[2 * i + 1] -= 1
                kk = tuple(k2)
                raw[kk] = raw.get(kk, QZERO) - c * b
        return TrigForm(self.m, raw)

    def diff_multi(self, alpha):
        if len(alpha) != self.m:
            raise BadMultiIndexError(f"expected angle multi-index of length {self.m}")
        g = self
        for i, k in enumerate(alpha):
            for _ in range(k):
                g = g.diff(i)
        return g

    # ---- evaluation ----------------------------------------------------------
    def eval_many(self, thetas):
        thetas = np.asarray(thetas, dtype=float)
        if thetas.ndim == 1:
            thetas = thetas[None, :]
        N = thetas.shape[0]
        sins = np.sin(thetas)
        coss = np.cos(thetas)
        maxexp = [0] * (2 * self.m)
        for key in self.terms:
            for i, e in enumerate(key):
                maxexp[i] = max(maxexp[i], e)
        pows = []
        for i in range(2 * self.m):
            col = sins[:, i // 2] if i % 2 == 0 else coss[:, i // 2]
            table = np.empty((maxexp[i] + 1, N))
            table[0] = 1.0
            for e in range(1, maxexp[i] + 1):
                table[e] = table[e - 1] * col
            pows.append(table)
        out = np.zeros(N)
        for key, c in self.terms.items():
            term = np.full(N, float(c))
            for i, e in enumerate(key):
                if e:
                    term = term * pows[i][e]
            out += term
        return out

    def eval_exact(self, sc_values):
        """Exact evaluation given rational (s_i, c_i) pairs (flat tuple)."""
        total = QZERO
        for key, c in self.terms.items():
            v = c
            for x, e in zip(sc_values, key):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def to_json_terms(self):
        """Canonical JSON term list [[sc exponents, coefficient], ...]."""
        return [[list(k), qstr(c)] for k, c in sorted(self.terms.items())]


# ---- spherical parametrization and frames ---------------------------------

def parametrization_components(n):
    """TrigForms of the standard angle chart of S^{n-1}.

    Component 1 is cos(t1); component l is sin(t1)...sin(t_{l-1})cos(t_l);
    the last component is the full sine product.
    """
    m = n - 1
    comps = []
    for l in range(n):
        key = [0] * (2 * m)
        for i in range(l if l < n - 1 else m):
            key[2 * i] = 1  # leading sin factors
        if l < n - 1:
            key[2 * l + 1] = 1  # trailing cos
        comps.append(TrigForm(m, {tuple(key): QONE}))
    return comps


def identity_frame(n):
    return [[QONE if i == j else QZERO for j in range(n)] for i in range(n)]


def signed_permutation_frame(n, perm, signs):
    """Exact orthogonal frame sending e_i to signs[i]*e_perm[i]."""
    frame = [[QZERO] * n for _ in range(n)]
    for i in range(n):
        frame[i][perm[i]] = Q(signs[i])
    return frame


def check_orthogonal_frame(frame):
    n = len(frame)
    for i in range(n):
        for j in range(n):
            dot = QZERO
            for k in range(n):
                dot = dot + frame[i][k] * frame[j][k]
            if dot != (QONE if i == j else QZERO):
                raise NonOrthogonalFrameError("frame rows are not exactly orthonormal")


def to_spherical(poly, frame=None):
    """Exact substitution x = frame . p(theta) into a polynomial.

    Parameters
    ----------
    poly : Polynomial
        Polynomial on R^n; its sphere restriction is what the result
        represents.
    frame : list of list of rationals, optional
        Exact orthogonal matrix whose rows are the new axes; defaults to
        the identity (north pole at (1, 0, ..., 0)).

    Returns
    -------
    TrigForm in the n-1 angles, canonically reduced.
    """
    n = poly.n
    if frame is None:
        frame = identity_frame(n)
    check_orthogonal_frame(frame)
    comps = parametrization_components(n)
    m = n - 1
    xs = []
    for k in range(n):
        acc = TrigForm.zero(m)
        for l in range(n):
            if frame[k][l] != 0:
                acc = acc + comps[l].scale(frame[k][l])
        xs.append(acc)
    return poly.eval_in_ring(xs, TrigForm.one(m))


def diff_cartesian(form, alpha):
    """Exact multi-index Cartesian derivative of a RadialForm."""
    return form.diff_multi(alpha)


def diff_spherical(form, alpha):
    """Exact multi-index angle derivative of a TrigForm."""
    return form.diff_multi(alpha)


# ---- deterministic sampling grids ------------------------------------------

def sphere_grid(n, count):
    """Deterministic quasi-uniform points on S^{n-1}, shape (N, n).

    n=2 uses a uniform circle grid, n=3 a Fibonacci lattice, n>=4 a
    product angle grid pushed through the chart.
    """
    if n == 2:
        t = np.arange(count) * (2.0 * math.pi / count)
        return np.column_stack([np.cos(t), np.sin(t)])
    if n == 3:
        k = np.arange(count)
        z = 1.0 - (2.0 * k + 1.0) / count
        phi = k * GOLDEN_ANGLE
        s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        return np.column_stack([z, s * np.cos(phi), s * np.sin(phi)])
    m = n - 1
    per = max(3, int(round(count ** (1.0 / m))))
    axes = [np.linspace(0.0, math.pi, per) for _ in range(m - 1)]
    axes.append(np.linspace(0.0, 2.0 * math.pi, 2 * per, endpoint=False))
    mesh = np.meshgrid(*axes, indexing="ij")
    thetas = np.column_stack([ax.ravel() for ax in mesh])
    return angles_to_points(thetas)


def angles_to_points(thetas):
    """Map angle tuples (N, n-1) to points on S^{n-1} via the chart."""
    thetas = np.asarray(thetas, dtype=float)
    if thetas.ndim == 1:
        thetas = thetas[None, :]
    m = thetas.shape[1]
    n = m + 1
    out = np.empty((thetas.shape[0], n))
    sin_prod = np.ones(thetas.shape[0])
    for l in range(m):
        out[:, l] = sin_prod * np.cos(thetas[:, l])
        sin_prod = sin_prod * np.sin(thetas[:, l])
    out[:, n - 1] = sin_prod
    return out


def angle_grid(m, count):
    """Deterministic grid in the angle box, shape (N, m)."""
    per = max(4, int(round(count ** (1.0 / m))))
    axes = [np.linspace(0.0, 2.0 * math.pi, per, endpoint=False) for _ in range(m)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([ax.ravel() for ax in mesh])


def _refine_on_sphere(fun, x0, steps=40):
    x = np.array(x0, dtype=float)
    best = float(fun(x[None, :])[0])
    h = 0.1
    n = x.shape[0]
    for _ in range(steps):
        improved = False
        for i in range(n):
            for sgn in (1.0, -1.0):
                cand = x.copy()
                cand[i] += sgn * h
                cand /= np.linalg.norm(cand)
                v = float(fun(cand[None, :])[0])
                if v > best:
                    best, x, improved = v, cand, True
        if not improved:
            h *= 0.5
            if h < 1e-7:
                break
    return best, x


def _refine_in_angles(fun, t0, steps=40):
    t = np.array(t0, dtype=float)
    best = float(fun(t[None, :])[0])
    h = 0.1
    for _ in range(steps):
        improved = False
        for i in range(t.shape[0]):
            for sgn in (1.0, -1.0):
                cand = t.copy()
                cand[i] += sgn * h
                v = float(fun(cand[None, :])[0])
                if v > best:
                    best, t, improved = v, cand, True
        if not improved:
            h *= 0.5
            if h < 1e-7:
                break
    return best, t


def sup_norm_estimate(form, samples=2048, refine=True, n=None, grid=None):
    """Certified lower bound for the sup norm of a form.

    Samples a deterministic grid (on the sphere, or in the angle box for
    a TrigForm), optionally followed by local coordinate ascent.  The
    returned value never exceeds the true sup.

    Returns
    -------
    (value, argmax) where argmax is a sphere point or an angle tuple.
    """
    if isinstance(form, TrigForm):
        pts = grid if grid is not None else angle_grid(form.m, samples)
        fun = lambda t: np.abs(form.eval_many(t))
    else:
        if isinstance(form, RadialForm):
            dim = form.n
            fun = lambda x: np.abs(form.eval_sphere_many(x))
        elif isinstance(form, Polynomial):
            dim = form.n
            fun = lambda x: np.abs(form.eval_many(x))
        else:
            if n is None:
                raise TypeError("callable forms require the dimension n")
            dim = n
            fun = lambda x: np.abs(np.asarray(form(x), dtype=float))
        pts = grid if grid is not None else sphere_grid(dim, samples)
    vals = fun(pts)
    k = int(np.argmax(vals))
    best, arg = float(vals[k]), pts[k]
    if refine:
        refiner = _refine_in_angles if isinstance(form, TrigForm) else _refine_on_sphere
        best, arg = refiner(fun, arg)
    return best, arg
