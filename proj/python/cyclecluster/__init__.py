"""Three-cluster cell-cycle model: exact map F, flow oracle, orbit catalog.

All numbers cross the boundary as exact rationals; inputs may be ints,
Fractions or "p/q" strings and outputs are Fractions.
"""

from fractions import Fraction

from . import _core

__all__ = [
    "CycleClusterError",
    "apply_map",
    "classify_region",
    "map_simulated",
    "return_map_simulated",
    "solve_code",
    "catalog",
    "parameter_region",
    "neutral_triangle",
    "transition_violations",
    "map_check",
    "scan_csv",
    "partition_json",
    "bifurcations",
]


class CycleClusterError(ValueError):
    """Raised for every library error; `kind` names the error category."""

    def __init__(self, message):
        super().__init__(message)
        self.kind = message.split(":", 1)[0]


def _q(x):
    if isinstance(x, float):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _f(text):
    return Fraction(text)


def _pt(p):
    return (_f(p[0]), _f(p[1]))


def _call(fn, *args):
    try:
        return fn(*args)
    except _core.Error as e:
        raise CycleClusterError(str(e)) from None


def _orbit(d):
    out = dict(d)
    out["eigen"] = dict(d["eigen"], trace=_f(d["eigen"]["trace"]), det=_f(d["eigen"]["det"]))
    for key in ("cycle", "segment", "polygon"):
        if key in d:
            out[key] = [_pt(p) for p in d[key]]
    return out


def apply_map(r, s, x1, x2):
    """F(x1, x2) by the closed form: returns ((y1, y2), t1, region label)."""
    img, t1, label = _call(_core.apply_map, _q(r), _q(s), (_q(x1), _q(x2)))
    return _pt(img), _f(t1), label


def classify_region(r, s, x1, x2):
    return _call(_core.classify_region, _q(r), _q(s), (_q(x1), _q(x2)))


def map_simulated(r, s, coords):
    """F computed by integrating the flow for any number of clusters."""
    img, t1 = _call(_core.map_simulated, _q(r), _q(s), [_q(c) for c in coords])
    return [_f(c) for c in img], _f(t1)


def return_map_simulated(r, s, coords):
    img, t = _call(_core.return_map_simulated, _q(r), _q(s), [_q(c) for c in coords])
    return [_f(c) for c in img], _f(t)


def solve_code(r, s, code):
    """Periodic orbit (or family) with the given region code, e.g. "7-7-8"."""
    return _orbit(_call(_core.solve_code, _q(r), _q(s), code))


def catalog(r, s):
    return [_orbit(d) for d in _call(_core.catalog, _q(r), _q(s))]


def parameter_region(r, s):
    return _call(_core.parameter_region, _q(r), _q(s))


def neutral_triangle(r, s):
    code, corners = _call(_core.neutral_triangle, _q(r), _q(s))
    return code, [_pt(c) for c in corners]


def transition_violations(r, s, samples=1000, seed=1):
    return _call(_core.transition_violations, _q(r), _q(s), samples, seed)


def map_check(r, s, samples=1000, seed=1):
    """JSON report of the closed form against the flow oracle."""
    return _call(_core.map_check, _q(r), _q(s), samples, seed)


def scan_csv(s_values, r_resolution=400, samples=0, seed=0, threads=0):
    return _call(_core.scan_csv, [_q(s) for s in s_values], r_resolution, samples, seed, threads)


def partition_json(r, s):
    return _call(_core.partition_json, _q(r), _q(s))


def bifurcations(s):
    return [(_f(r), expr, event) for r, expr, event in _call(_core.bifurcations, _q(s))]
