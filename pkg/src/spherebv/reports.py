"""Report dataclasses shared across the verification modules."""

from dataclasses import dataclass, field
import math


def _jsonable(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "tolist"):
        return _jsonable(v.tolist())
    if hasattr(v, "to_dict"):
        return v.to_dict()
    return v


@dataclass
class BoundVerdict:
    """Outcome of checking one explicit inequality instance.

    ``holds`` means lhs <= rhs * (1 + tol); ``slack_ratio`` is lhs/rhs
    (0 when rhs vanishes together with lhs).
    """

    inequality: str
    instance: dict
    lhs: float
    rhs: float
    slack_ratio: float
    holds: bool
    note: str = ""

    def to_dict(self):
        return {
            "inequality": self.inequality,
            "instance": _jsonable(self.instance),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "slack_ratio": _jsonable(self.slack_ratio),
            "holds": self.holds,
            "note": self.note,
        }


def make_verdict(inequality, instance, lhs, rhs, tol=0.0, note=""):
    if rhs == 0.0:
        holds = lhs <= tol
        ratio = 0.0 if lhs == 0.0 else math.inf
    else:
        holds = lhs <= rhs * (1.0 + tol)
        ratio = lhs / rhs
    return BoundVerdict(inequality, instance, lhs, rhs, ratio, holds, note)


@dataclass
class ClassificationReport:
    """Decay classification of a spherical-harmonic expansion."""

    weight: dict
    side: str
    satisfied: list
    fitted_h: float
    fitted_c: float
    fitted_log_c: float
    norm_track: list
    q: object
    root_test_limsup: float
    h_grid: list
    per_h_bounded: dict
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "weight": _jsonable(self.weight),
            "side": self.side,
            "satisfied": list(self.satisfied),
            "fitted_h": _jsonable(self.fitted_h),
            "fitted_c": _jsonable(self.fitted_c),
            "fitted_log_c": _jsonable(self.fitted_log_c),
            "norm_track": _jsonable(self.norm_track),
            "q": "inf" if self.q == math.inf else self.q,
            "root_test_limsup": _jsonable(self.root_test_limsup),
            "h_grid": _jsonable(self.h_grid),
            "per_h_bounded": _jsonable(self.per_h_bounded),
            "notes": list(self.notes),
        }


@dataclass
class GrowthReport:
    """Growth classification of a harmonic function near the boundary."""

    weight: dict
    verdict: str
    h_results: dict
    r_levels: list
    policy: dict
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "weight": _jsonable(self.weight),
            "verdict": self.verdict,
            "h_results": _jsonable(self.h_results),
            "r_levels": _jsonable(self.r_levels),
            "policy": _jsonable(self.policy),
            "notes": list(self.notes),
        }


@dataclass
class Cap:
    """Closed spherical cap: center point and geodesic radius (radians)."""

    center: list
    radius: float

    def to_dict(self):
        return {"center": _jsonable(self.center), "radius": _jsonable(self.radius)}

    def contains(self, point, slack=0.0):
        import numpy as np

        c = np.asarray(self.center, dtype=float)
        p = np.asarray(point, dtype=float)
        ang = math.acos(max(-1.0, min(1.0, float(np.dot(c, p)))))
        return ang <= self.radius + slack


@dataclass
class SupportReport:
    """Abel-summability support estimate on the sphere."""

    delta: float
    tau: float
    tau_effective: float
    r_levels: list
    nodes: object
    classified: list
    support_caps: list
    rate_slopes: object
    profiles: object = None
    notes: list = field(default_factory=list)

    def persist_nodes(self):
        import numpy as np

        nodes = np.asarray(self.nodes, dtype=float)
        mask = np.array([c == "persists" for c in self.classified])
        return nodes[mask]

    def to_dict(self, include_profiles=False):
        out = {
            "delta": _jsonable(self.delta),
            "tau": _jsonable(self.tau),
            "tau_effective": _jsonable(self.tau_effective),
            "r_levels": _jsonable(self.r_levels),
            "nodes": _jsonable(self.nodes),
            "classified": list(self.classified),
            "support_caps": [c.to_dict() for c in self.support_caps],
            "rate_slopes": _jsonable(self.rate_slopes),
            "notes": list(self.notes),
        }
        if include_profiles and self.profiles is not None:
            out["profiles"] = _jsonable(self.profiles)
        return out


@dataclass
class PVSearchResult:
    """Constants found for the infimal-convolution comparison."""

    ell: float
    log_l: float
    holds: bool
    max_gap: float
    note: str = ""

    def to_dict(self):
        return {
            "ell": _jsonable(self.ell),
            "log_l": _jsonable(self.log_l),
            "holds": self.holds,
            "max_gap": _jsonable(self.max_gap),
            "note": self.note,
        }
