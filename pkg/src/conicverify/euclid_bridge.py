"""Euclidean notions expressed projectively through the absolute circle points.

All circles of the real plane pass through the two conjugate points
I = (1, i, 0) and J = (1, -i, 0) on the line at infinity.  That single fact
turns circles, centers, foci and confocality into incidence statements:

* circle          = conic through I and J,
* circle center   = meet of the tangents at I and J (= pole of the line at
                    infinity),
* foci            = the remaining intersections of the four tangents drawn
                    from I and J to a conic (one real pair, one conjugate
                    complex pair),
* confocal family = conics whose duals lie in the pencil spanned by the
                    dual of the base conic and the degenerate dual conic
                    carried by the point pair {I, J}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conics import (
    Conic,
    DualConic,
    adjugate,
    classify,
    evaluate,
    quadratic_roots,
    tangent_at,
    tangents_from,
    upper_triangle,
)
from .geom_core import (
    DEFAULT_TOL,
    GeometryError,
    HomLine,
    HomPoint,
    Tolerance,
    _unit,
    meet,
    normalize,
    proj_equal_residual,
)

__all__ = [
    "NotACircle",
    "IsCircle",
    "CenterOnLine",
    "FocusInput",
    "ParallelLines",
    "AbsolutePair",
    "ABSOLUTE",
    "ABS_DUAL_DEGENERATE",
    "FociResult",
    "ConfocalFamily",
    "ConfocalMembers",
    "is_circle",
    "circle",
    "circle_center",
    "circle_from_center_tangent",
    "foci",
    "confocal_family",
    "confocal_through",
    "angle_bisectors",
    "distance_point_line",
]


class NotACircle(GeometryError):
    pass


class IsCircle(GeometryError):
    pass


class CenterOnLine(GeometryError):
    pass


class FocusInput(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


@dataclass(frozen=True)
class AbsolutePair:
    I: HomPoint = field(default_factory=lambda: HomPoint(1, 1j, 0))
    J: HomPoint = field(default_factory=lambda: HomPoint(1, -1j, 0))
    l_inf: HomLine = field(default_factory=lambda: HomLine(0, 0, 1))


ABSOLUTE = AbsolutePair()

# sym(I J^T) = diag(1, 1, 0): the point pair {I, J} as a degenerate dual
# conic; its adjugate is the doubled line at infinity.
ABS_DUAL_DEGENERATE = DualConic(np.diag([1.0, 1.0, 0.0]))


def is_circle(C: Conic, tol: Tolerance = DEFAULT_TOL) -> bool:
    return evaluate(C, ABSOLUTE.I) <= tol.eps and evaluate(C, ABSOLUTE.J) <= tol.eps


def circle(center_xy, radius: float) -> Conic:
    """Circle from a real affine center and radius (radius^2 may be negative)."""
    mx, my = center_xy
    r2 = radius * radius
    return Conic(
        [
            [1.0, 0.0, -mx],
            [0.0, 1.0, -my],
            [-mx, -my, mx * mx + my * my - r2],
        ]
    )


def circle_center(C: Conic, tol: Tolerance = DEFAULT_TOL) -> HomPoint:
    """Meet of the tangents at I and J; equals the pole of the line at infinity."""
    if not is_circle(C, tol):
        raise NotACircle("conic does not pass through both absolute points")
    if classify(C) < 3:
        raise NotACircle("degenerate circle has no center construction")
    m = meet(tangent_at(C, ABSOLUTE.I, tol), tangent_at(C, ABSOLUTE.J, tol))
    w = _unit(m.v)
    k = int(np.argmax(np.abs(w)))
    w = w * np.conj(w[k] / abs(w[k]))
    return HomPoint(w.real)


def distance_point_line(p: HomPoint, l: HomLine) -> float:
    """Euclidean distance from a real affine point to a real line."""
    x, y = p.real_affine()
    a, b, c = (l.v / l.v[np.argmax(np.abs(l.v))]).real if l.is_real() else (np.nan,) * 3
    n = np.hypot(a, b)
    if not np.isfinite(n) or n < 1e-14:
        raise ParallelLines("line at infinity has no point distance")
    return abs(a * x + b * y + c) / n


def circle_from_center_tangent(M: HomPoint, l: HomLine, tol: Tolerance = DEFAULT_TOL) -> Conic:
    """Circle centered at a real point and tangent to a line.

    The squared radius is computed algebraically so complex tangents of a
    consistent configuration are accepted (their conjugate partner forces
    r^2 real); a genuinely complex r^2 is rejected.
    """
    mx, my = M.real_affine()
    lv = l.v / np.linalg.norm(l.v)
    num = lv[0] * mx + lv[1] * my + lv[2]
    den = lv[0] ** 2 + lv[1] ** 2
    if abs(num) <= tol.eps or abs(den) < 1e-14:
        raise CenterOnLine("center lies on the tangent line (or line at infinity)")
    r2 = num * num / den
    if abs(r2.imag) > 1e-9 * (1.0 + abs(r2)):
        raise CenterOnLine(f"inconsistent complex radius^2 = {r2:.3e}")
    return Conic(
        [
            [1.0, 0.0, -mx],
            [0.0, 1.0, -my],
            [-mx, -my, mx * mx + my * my - r2.real],
        ]
    )


@dataclass(frozen=True)
class FociResult:
    real_pair: tuple[HomPoint, HomPoint]
    complex_pair: tuple[HomPoint, HomPoint]


def _imag_size(p: HomPoint) -> float:
    w = _unit(p.v)
    k = int(np.argmax(np.abs(w)))
    w = w * np.conj(w[k] / abs(w[k]))
    return float(np.max(np.abs(w.imag)))


def foci(C: Conic, tol: Tolerance = DEFAULT_TOL) -> FociResult:
    """Both focus pairs of a smooth non-circle conic.

    The four tangents from I and J meet in six points; besides {I, J}
    itself the meets group into two opposite pairs, one real and one
    complex conjugate.  Pairing is chosen by minimal imaginary magnitude.
    """
    if classify(C) < 3:
        raise NotACircle("foci require a smooth conic")
    if is_circle(C, tol):
        raise IsCircle("foci of a circle degenerate to its center")
    t1, t2 = tangents_from(C, ABSOLUTE.I)
    t3, t4 = tangents_from(C, ABSOLUTE.J)
    pairing_a = (meet(t1, t3), meet(t2, t4))
    pairing_b = (meet(t1, t4), meet(t2, t3))
    score_a = max(_imag_size(p) for p in pairing_a)
    score_b = max(_imag_size(p) for p in pairing_b)
    real_pair, complex_pair = (pairing_a, pairing_b) if score_a <= score_b else (pairing_b, pairing_a)
    real_pair = tuple(sorted(real_pair, key=lambda p: tuple(np.round(_unit(p.v).real, 9))))
    return FociResult(tuple(real_pair), tuple(complex_pair))


@dataclass(frozen=True)
class ConfocalFamily:
    """Dual pencil spanned by dual(base) and the {I,J} degenerate dual conic."""

    base: Conic
    dual_degenerate: DualConic = field(default_factory=lambda: ABS_DUAL_DEGENERATE)

    def __post_init__(self):
        if classify(self.base) < 3:
            raise NotACircle("confocal family needs a smooth base conic")

    def dual_member_matrix(self, lam: complex) -> np.ndarray:
        return adjugate(self.base.A) / np.linalg.norm(adjugate(self.base.A)) + lam * self.dual_degenerate.A

    def member(self, lam: complex) -> Conic:
        return Conic(adjugate(self.dual_member_matrix(lam)))


def confocal_family(base: Conic) -> ConfocalFamily:
    return ConfocalFamily(base)


@dataclass(frozen=True)
class ConfocalMembers:
    """Members through a point: ordered smooth members plus diagnostics.

    ``members`` is deterministic (ellipse-like member first); ``raw``
    keeps the unordered root sequence; degenerate members are never
    silently dropped.
    """

    members: tuple[Conic, ...]
    raw: tuple[Conic, ...]
    degenerate: tuple[Conic, ...]
    lambdas: tuple[complex, ...]


def _ellipse_like(C: Conic) -> int:
    """0 for ellipse-like affine type, 1 for hyperbola-like, by det of the 2x2 block."""
    try:
        W = C.real_matrix()
    except ValueError:
        return 2
    return 0 if np.linalg.det(W[:2, :2]) > 0 else 1


def confocal_through(family: ConfocalFamily, P: HomPoint, tol: Tolerance = DEFAULT_TOL) -> ConfocalMembers:
    """The (generically two) family members through a point.

    Primal members are adjugates of the dual pencil, so the on-conic
    condition is quadratic in the pencil parameter; roots come from
    companion eigenvalues.  Degenerate members (focal axes) are filtered
    into diagnostics.  A double root landing on a degenerate member means
    P is a focus.
    """
    Xd = adjugate(family.base.A)
    Xd = Xd / np.linalg.norm(Xd)
    D = family.dual_degenerate.A
    v = _unit(P.v)
    adj_xd = adjugate(Xd)
    adj_d = adjugate(D)
    cross = adjugate(Xd + D) - adj_xd - adj_d
    a = v @ adj_xd @ v
    b = v @ cross @ v
    c = v @ adj_d @ v
    roots = quadratic_roots(c, b, a)
    members, degenerate, lams, raw = [], [], [], []
    for s, t in roots:
        lam = s / t if abs(t) > 1e-13 else np.inf
        M = Conic(adjugate(t * Xd + s * D))
        raw.append(M)
        if classify(M) == 3:
            members.append((lam, M))
        else:
            degenerate.append(M)
        lams.append(lam)
    if len(roots) == 2 and not members:
        (s1, t1), (s2, t2) = roots
        sep = abs(s1 * t2 - s2 * t1) / (abs(s1) + abs(t1)) / (abs(s2) + abs(t2))
        if sep < 1e-6:
            raise FocusInput("double root at a degenerate member: point is a focus")
    ordered = sorted(members, key=lambda lm: (_ellipse_like(lm[1]), _lam_key(lm[0])))
    return ConfocalMembers(
        members=tuple(m for _, m in ordered),
        raw=tuple(raw),
        degenerate=tuple(degenerate),
        lambdas=tuple(lams),
    )


def _lam_key(lam) -> tuple:
    if lam is np.inf:
        return (1, 0.0, 0.0)
    return (0, float(np.real(lam)), float(np.imag(lam)))


def angle_bisectors(a: HomLine, b: HomLine, tol: Tolerance = DEFAULT_TOL) -> tuple[HomLine, HomLine]:
    """Both angle bisectors of two real non-parallel lines.

    They pass through the meet, are orthogonal to each other, and
    reflecting one input line across either bisector yields the other.
    """
    if not (a.is_real(1e-9) and b.is_real(1e-9)):
        raise ValueError("angle bisectors need real lines")
    av = _real_rep(a.v)
    bv = _real_rep(b.v)
    V = meet(a, b)
    vv = _real_rep(V.v)
    if abs(vv[2]) < 1e-12 * np.max(np.abs(vv)):
        raise ParallelLines("lines meet at infinity")
    x, y = vv[0] / vv[2], vv[1] / vv[2]
    na = av[:2] / np.hypot(*av[:2])
    nb = bv[:2] / np.hypot(*bv[:2])
    out = []
    for w in (na + nb, na - nb):
        out.append(HomLine(w[0], w[1], -(w[0] * x + w[1] * y)))
    return out[0], out[1]


def _real_rep(v: np.ndarray) -> np.ndarray:
    w = _unit(v)
    k = int(np.argmax(np.abs(w)))
    w = w * np.conj(w[k] / abs(w[k]))
    if np.max(np.abs(w.imag)) > 1e-8:
        raise ValueError("no real representative")
    return w.real
