"""Independent verification and brute-force point search.

``independent_verify`` deliberately re-implements the curve equations and
nondegeneracy conditions instead of importing them, so a bug in the models
or generators cannot vouch for itself.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .exact import Fraction, poly_eval, rat, rat_sqrt, rationals_of_height


@dataclass
class Verdict:
    ok: bool
    reasons: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _family_name(fam) -> str:
    name = str(getattr(fam, "value", fam)).lower()
    return {"twisted": "twisted_edwards", "ghuff": "general_huff"}.get(name, name)


def _residual(name, p, x, y):
    # everything moved to one side, written out from the defining equations
    if name == "edwards":
        d = p["d"]
        return (x * x + y * y) - (1 + d * x * x * y * y)
    if name == "twisted_edwards":
        a, d = p["a"], p["d"]
        return (a * x * x + y * y) - (1 + d * x * x * y * y)
    if name == "huff":
        a, b = p["a"], p["b"]
        return a * x * (y * y - 1) - b * y * (x * x - 1)
    if name == "general_huff":
        a, b = p["a"], p["b"]
        return x * (a * y * y - 1) - y * (b * x * x - 1)
    raise KeyError(name)


_PARAMS = {
    "edwards": ("d",),
    "twisted_edwards": ("a", "d"),
    "huff": ("a", "b"),
    "general_huff": ("a", "b"),
}


def _degeneracy(name, p) -> list:
    out = []
    if name == "edwards":
        if p["d"] in (0, 1):
            out.append(f"singular edwards parameter d={p['d']}")
    elif name == "twisted_edwards":
        if p["a"] == 0 or p["d"] == 0 or p["a"] == p["d"]:
            out.append(f"singular twisted edwards parameters a={p['a']}, d={p['d']}")
    elif name == "huff":
        if p["a"] ** 2 == p["b"] ** 2:
            out.append(f"huff parameters with a^2 = b^2: a={p['a']}, b={p['b']}")
    elif p["a"] * p["b"] * (p["a"] - p["b"]) == 0:
        out.append(f"general huff parameters with ab(a-b) = 0: a={p['a']}, b={p['b']}")
    return out


def independent_verify(cert) -> Verdict:
    """Re-check a certificate: parameters, every witness, and the value set.

    ``cert`` needs ``family``, ``params``, ``values``, ``witnesses`` and
    optionally ``coordinate`` ("x" or "y").
    """
    reasons = []
    name = _family_name(cert.family)
    if name not in _PARAMS:
        return Verdict(False, [f"unknown family {name!r}"])
    try:
        p = {k: rat(cert.params[k]) for k in _PARAMS[name]}
    except (KeyError, TypeError, ValueError) as exc:
        return Verdict(False, [f"bad parameters: {exc}"])
    reasons += _degeneracy(name, p)
    coord = getattr(cert, "coordinate", "x") or "x"
    seen = set()
    for k, w in enumerate(cert.witnesses):
        x, y = (rat(c) for c in w)
        r = _residual(name, p, x, y)
        if r != 0:
            reasons.append(f"witness {k} ({x}, {y}) off the curve (residual {r})")
        seen.add(x if coord == "x" else y)
    want = {rat(v) for v in cert.values}
    if seen != want:
        missing = sorted(want - seen)
        extra = sorted(seen - want)
        reasons.append(f"{coord}-values mismatch: missing {[str(v) for v in missing]}, "
                       f"unexpected {[str(v) for v in extra]}")
    return Verdict(not reasons, reasons)


@dataclass
class SearchReport:
    curve_id: str
    height: int
    points: list
    elapsed: float = 0.0
    candidates: int = 0

    def __post_init__(self):
        for P in self.points:
            if not self._check(P):
                raise ValueError(f"{P} is not on {self.curve_id}")

    def _check(self, P) -> bool:
        name, _, rest = self.curve_id.partition(":")
        p = dict(kv.split("=") for kv in rest.split(",")) if rest else {}
        p = {k: Fraction(v) for k, v in p.items()}
        x, y = P
        return _residual(name, p, rat(x), rat(y)) == 0

    def xs(self) -> set:
        return {P.x for P in self.points}


def curve_id(curve) -> str:
    params = ",".join(f"{k}={v}" for k, v in curve.params().items())
    return f"{curve.family}:{params}"


def brute_force_points(curve, H: int) -> SearchReport:
    """All affine points whose x has height at most H, via exact fiber solving."""
    from .curves import AffinePoint, FiberError

    if H < 1:
        raise ValueError("height bound must be at least 1")
    start = time.perf_counter()
    pts, n = [], 0
    for x in sorted(rationals_of_height(H)):
        n += 1
        try:
            ys = curve.fiber_x(x)
        except FiberError:
            continue
        pts.extend(AffinePoint(x, y) for y in ys)
    return SearchReport(curve_id(curve), H, pts, time.perf_counter() - start, n)


def quartic_search(Qm, H: int) -> list:
    """All (t, z) with height(t) <= H and z^2 = f(t); both signs of z, z >= 0 first."""
    if H < 1:
        raise ValueError("height bound must be at least 1")
    f = Qm.f if hasattr(Qm, "f") else Qm
    out = []
    for t in sorted(rationals_of_height(H)):
        z = rat_sqrt(poly_eval(f, t))
        if z is None:
            continue
        out.append((t, z))
        if z != 0:
            out.append((t, -z))
    return out
