"""Spherical-harmonic expansions: finite coefficient data plus an
optional all-degree zonal tail.

An ``Expansion`` stores per-degree components f_j, each either

* a coefficient vector over the surface-orthonormal basis Y_{k,j}, or
* a weighted pole combination  sum_i w_i Z_j(., p_i),

and may in addition carry a ``zonal_tail``: a fixed pole combination
contributing f_j = sum_i w_i Z_j(., p_i) for every degree j >= 0.  The
tail is what makes point-mass (Dirac) inputs exact: their Abel-Poisson
means collapse to the closed-form Poisson kernel instead of a truncated
series.
"""

import math

import numpy as np

from .errors import BadMultiIndexError, DomainError
from .harmonics import build_basis, dim_h, eigenvalue, surface_area, zonal_value
from .polynomials import sphere_grid


class CoeffComponent:
    """Degree-j harmonic given by coefficients over the orthonormal basis."""

    __slots__ = ("n", "j", "coeffs")

    def __init__(self, n, j, coeffs):
        self.n = n
        self.j = j
        self.coeffs = np.asarray(coeffs, dtype=float)
        if self.coeffs.shape != (dim_h(n, j),):
            raise BadMultiIndexError(
                f"degree {j} on S^{n-1} needs {dim_h(n, j)} coefficients"
            )

    def evaluate(self, points):
        if not np.any(self.coeffs):
            pts = np.asarray(points, dtype=float)
            return np.zeros(pts.shape[0] if pts.ndim > 1 else 1)
        mat = build_basis(self.n, self.j).eval_orthonormal(points)
        return self.coeffs @ mat

    def l2_surface(self):
        return float(np.linalg.norm(self.coeffs))

    def scale(self, c):
        return CoeffComponent(self.n, self.j, self.coeffs * c)

    def is_zero(self):
        return not bool(np.any(self.coeffs))

    def to_json(self):
        return {"j": self.j, "c": [float(x) for x in self.coeffs]}


class ZonalComponent:
    """Degree-j harmonic of the form sum_i w_i Z_j(., p_i)."""

    __slots__ = ("n", "j", "poles")

    def __init__(self, n, j, poles):
        self.n = n
        self.j = j
        norm_poles = []
        for w, p in poles:
            p = np.asarray(p, dtype=float)
            if abs(np.linalg.norm(p) - 1.0) > 1e-12:
                raise DomainError("zonal poles must lie on the sphere")
            norm_poles.append((float(w), p))
        self.poles = norm_poles

    def evaluate(self, points):
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        out = np.zeros(points.shape[0])
        for w, p in self.poles:
            out += w * zonal_value(self.n, self.j, points @ p)
        return out

    def l2_surface(self):
        # <Z_j(.,p), Z_j(.,q)> = |S^{n-1}| Z_j(p.q) by the reproducing property
        area = surface_area(self.n)
        total = 0.0
        for w1, p1 in self.poles:
            for w2, p2 in self.poles:
                total += w1 * w2 * float(zonal_value(self.n, self.j, float(p1 @ p2)))
        return math.sqrt(max(0.0, area * total))

    def sup_exact_single(self):
        """|w| d_j for a single pole; None for several poles."""
        if len(self.poles) == 1:
            return abs(self.poles[0][0]) * dim_h(self.n, self.j)
        return None

    def scale(self, c):
        return ZonalComponent(self.n, self.j, [(w * c, p) for w, p in self.poles])

    def is_zero(self):
        return all(w == 0.0 for w, _ in self.poles)

    def to_json(self):
        return {
            "j": self.j,
            "poles": [{"w": w, "p": [float(x) for x in p]} for w, p in self.poles],
        }


class Expansion:
    """A function or ultradistribution on S^{n-1} given degree by degree.

    ``kind`` is "function" or "dual".  Explicit entries cover degrees
    0..max_degree with absent degrees treated as zero; ``zonal_tail``
    (if set) adds a pole combination at every degree.
    """

    def __init__(self, n, entries=None, kind="function", zonal_tail=None):
        self.n = n
        self.entries = dict(entries or {})
        self.kind = kind
        tail = []
        if zonal_tail:
            for w, p in zonal_tail:
                p = np.asarray(p, dtype=float)
                if abs(np.linalg.norm(p) - 1.0) > 1e-12:
                    raise DomainError("tail poles must lie on the sphere")
                tail.append((float(w), p))
        self.zonal_tail = tail

    # ---- constructors ----------------------------------------------------
    @classmethod
    def from_coefficients(cls, n, coeff_map, kind="function"):
        entries = {j: CoeffComponent(n, j, c) for j, c in coeff_map.items()}
        return cls(n, entries, kind)

    @classmethod
    def single_harmonic(cls, n, j, k, scale=1.0, kind="function"):
        c = np.zeros(dim_h(n, j))
        c[k] = scale
        return cls(n, {j: CoeffComponent(n, j, c)}, kind)

    @classmethod
    def delta_like(cls, n, pole, weight=None, kind="dual"):
        """Unit point mass at ``pole``: f_j = Z_j(., pole)/|S^{n-1}| for all j."""
        w = 1.0 / surface_area(n) if weight is None else float(weight)
        return cls(n, {}, kind, zonal_tail=[(w, pole)])

    # ---- structure ----------------------------------------------------------
    @property
    def max_degree(self):
        return max(self.entries) if self.entries else -1

    @property
    def has_tail(self):
        return bool(self.zonal_tail)

    def degrees(self):
        return range(0, self.max_degree + 1)

    def component(self, j):
        """Combined degree-j component (explicit entry plus tail part)."""
        parts = []
        if j in self.entries:
            parts.append(self.entries[j])
        if self.zonal_tail:
            parts.append(ZonalComponent(self.n, j, self.zonal_tail))
        if not parts:
            return CoeffComponent(self.n, j, np.zeros(dim_h(self.n, j)))
        if len(parts) == 1:
            return parts[0]
        return _SumComponent(self.n, j, parts)

    def evaluate_component(self, j, points):
        return self.component(j).evaluate(points)

    def evaluate_partial(self, points, jmax=None):
        """Pointwise sum of the stored degrees up to jmax (tail included)."""
        jmax = self.max_degree if jmax is None else jmax
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        out = np.zeros(points.shape[0])
        for j in range(jmax + 1):
            out += self.evaluate_component(j, points)
        return out

    # ---- algebra ----------------------------------------------------------
    def scale(self, c):
        return Expansion(
            self.n,
            {j: comp.scale(c) for j, comp in self.entries.items()},
            self.kind,
            [(w * c, p) for w, p in self.zonal_tail],
        )

    def __add__(self, other):
        if self.n != other.n:
            raise BadMultiIndexError("expansions live on different spheres")
        entries = dict(self.entries)
        for j, comp in other.entries.items():
            if j in entries:
                entries[j] = _SumComponent(self.n, j, [entries[j], comp])
            else:
                entries[j] = comp
        return Expansion(
            self.n, entries, self.kind, self.zonal_tail + other.zonal_tail
        )

    def laplace_beltrami(self, power=1):
        """Apply the Laplace-Beltrami operator ``power`` times.

        Multiplies each degree-j part by (-j(j+n-2))^power; requires a
        finite expansion (no all-degree tail).
        """
        if power < 0:
            raise BadMultiIndexError("power must be >= 0")
        if power == 0:
            return self
        if self.has_tail:
            raise BadMultiIndexError("tail expansions have no finite Laplacian image")
        entries = {
            j: comp.scale(float(eigenvalue(self.n, j)) ** power)
            for j, comp in self.entries.items()
        }
        return Expansion(self.n, entries, self.kind)

    # ---- serialization ------------------------------------------------------
    def to_json(self):
        entries = []
        fmt = "coeffs"
        for j in sorted(self.entries):
            comp = self.entries[j]
            entries.append(comp.to_json())
            if isinstance(comp, ZonalComponent):
                fmt = "zonal"
        out = {"n": self.n, "kind": self.kind, "format": fmt, "entries": entries}
        if self.zonal_tail:
            out["tail"] = {
                "poles": [
                    {"w": w, "p": [float(x) for x in p]} for w, p in self.zonal_tail
                ]
            }
        return out

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        kind = obj.get("kind", "function")
        entries = {}
        for item in obj.get("entries", []):
            j = item["j"]
            if "c" in item:
                entries[j] = CoeffComponent(n, j, item["c"])
            elif "poles" in item:
                entries[j] = ZonalComponent(
                    n, j, [(p["w"], p["p"]) for p in item["poles"]]
                )
            else:
                raise BadMultiIndexError("entry needs 'c' or 'poles'")
        tail = None
        if "tail" in obj:
            tail = [(p["w"], p["p"]) for p in obj["tail"]["poles"]]
        return cls(n, entries, kind, tail)


class _SumComponent:
    """Sum of degree-j components (kept lazy)."""

    __slots__ = ("n", "j", "parts")

    def __init__(self, n, j, parts):
        self.n = n
        self.j = j
        self.parts = parts

    def evaluate(self, points):
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        out = np.zeros(points.shape[0])
        for p in self.parts:
            out += p.evaluate(points)
        return out

    def l2_surface(self):
        return None  # no closed form; callers fall back to quadrature

    def scale(self, c):
        return _SumComponent(self.n, self.j, [p.scale(c) for p in self.parts])

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def to_json(self):
        raise BadMultiIndexError("sum components are not serializable; project first")


def component_sup_estimate(comp, samples=4096):
    """Sampled sup of a degree component (exact for single-pole zonals)."""
    if isinstance(comp, ZonalComponent):
        exact = comp.sup_exact_single()
        if exact is not None:
            return exact
    pts = sphere_grid(comp.n, samples)
    extra = []
    stack = [comp]
    while stack:
        c = stack.pop()
        if isinstance(c, ZonalComponent):
            extra.extend(p for _, p in c.poles)
        elif isinstance(c, _SumComponent):
            stack.extend(c.parts)
    if extra:
        pts = np.vstack([pts, np.array(extra)])
    return float(np.max(np.abs(comp.evaluate(pts))))
