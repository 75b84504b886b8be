"""Conic algebra over the complex projective plane.

A conic is a symmetric 3x3 complex matrix up to scale.  This module covers
evaluation, rank classification, duality (adjugate), polarity and tangency,
degenerate splitting, pencils and linear (co)dependence, and the multi-root
constructions (conic through 4 points tangent to a line, double-contact
conic, conic/conic intersection) whose solution ambiguity the checkers in
:mod:`conicverify.theorems` certify.

Root finding uses companion-matrix eigenvalues (``numpy.roots``) so accuracy
degrades gracefully near multiple roots, which the tangency limit scans
approach on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geom_core import (
    DEFAULT_TOL,
    GeometryError,
    HomLine,
    HomPoint,
    Tolerance,
    ZeroVector,
    _check_transform,
    _unit,
    incidence_residual,
    join,
    normalize,
    proj_equal,
    proj_equal_residual,
    register_transform_rule,
)

__all__ = [
    "Conic",
    "DualConic",
    "LinePair",
    "RankOne",
    "SingularConic",
    "PointNotOnConic",
    "NotDegenerate",
    "DegeneratePointSet",
    "TangentLineThroughBasePoint",
    "ContactPointOffLine",
    "InconsistentThroughPoint",
    "LineOnConic",
    "SharedComponent",
    "adjugate",
    "evaluate",
    "classify",
    "dual",
    "primal",
    "polar",
    "pole",
    "tangent_at",
    "tangents_from",
    "line_tangency_residual",
    "contact_point",
    "split_degenerate",
    "conic_from_line_pair",
    "cluster_points",
    "transform_conic",
    "transform_dual_conic",
    "MULTIPLICITY_TOL",
    "conic_through_5",
    "conic_4pts_tangent_line",
    "conic_double_contact",
    "pencil_member",
    "dependent",
    "codependent",
    "dependence_residual",
    "intersect_conic_line",
    "intersect_conics",
    "point_on_conic",
    "seed_point",
    "upper_triangle",
    "from_upper_triangle",
    "quadratic_roots",
    "cubic_roots",
]


class RankOne(GeometryError):
    pass


class SingularConic(GeometryError):
    pass


class PointNotOnConic(GeometryError):
    pass


class NotDegenerate(GeometryError):
    pass


class DegeneratePointSet(GeometryError):
    pass


class TangentLineThroughBasePoint(GeometryError):
    pass


class ContactPointOffLine(GeometryError):
    pass


class InconsistentThroughPoint(GeometryError):
    pass


class LineOnConic(GeometryError):
    pass


class SharedComponent(GeometryError):
    pass


_UT_IDX = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]

# Relative singular-value threshold below which a direction counts as rank
# deficient (classification, null spaces, degenerate pencil members).
RANK_TOL = 1e-10


def _symmetrize_exact(M: np.ndarray) -> np.ndarray:
    """Rebuild from the averaged upper triangle so A == A.T holds bitwise."""
    A = np.empty((3, 3), dtype=complex)
    for i, j in _UT_IDX:
        v = M[i, j] if i == j else 0.5 * (M[i, j] + M[j, i])
        A[i, j] = v
        A[j, i] = v
    return A


class _SymmetricForm:
    """Symmetric 3x3 complex matrix up to scale, Frobenius-normalized."""

    __slots__ = ("A",)

    def __init__(self, matrix):
        M = np.asarray(matrix, dtype=complex)
        if M.shape != (3, 3):
            raise ValueError(f"conic matrix must be 3x3, got {M.shape}")
        if not np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag)):
            raise ValueError("non-finite conic entry")
        A = _symmetrize_exact(M)
        n = np.linalg.norm(A)
        if n < 1e-300:
            raise ZeroVector(f"zero {type(self).__name__} matrix")
        A = A / n
        A.setflags(write=False)
        object.__setattr__(self, "A", A)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if not isinstance(other, _SymmetricForm):
            return NotImplemented
        return proj_equal(upper_triangle(self), upper_triangle(other))

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}({np.array2string(self.A, precision=4)})"

    def is_real(self, tol: float = 1e-9) -> bool:
        w = self.A.flatten()
        k = int(np.argmax(np.abs(w)))
        w = w * np.conj(w[k] / abs(w[k]))
        return float(np.max(np.abs(w.imag))) <= tol

    def real_matrix(self) -> np.ndarray:
        """Real representative (phase-aligned); raises if genuinely complex."""
        w = self.A.flatten()
        k = int(np.argmax(np.abs(w)))
        W = self.A * np.conj(w[k] / abs(w[k]))
        if float(np.max(np.abs(W.imag))) > 1e-8:
            raise ValueError("conic has no real representative")
        return W.real


class Conic(_SymmetricForm):
    """Point conic: {p : p^T A p = 0}."""

    @classmethod
    def from_upper(cls, a00, a01, a02, a11, a12, a22) -> "Conic":
        return cls(from_upper_triangle([a00, a01, a02, a11, a12, a22]))


class DualConic(_SymmetricForm):
    """Line conic: {l : l^T B l = 0}; for a smooth primal, B ~ adj(A)."""

    @classmethod
    def from_upper(cls, a00, a01, a02, a11, a12, a22) -> "DualConic":
        return cls(from_upper_triangle([a00, a01, a02, a11, a12, a22]))


@dataclass(frozen=True)
class LinePair:
    """Unordered pair of lines carried by a rank<=2 conic."""

    l1: HomLine
    l2: HomLine

    def __iter__(self):
        return iter((self.l1, self.l2))

    def matches(self, other: "LinePair", tol: float = 1e-8) -> bool:
        a = proj_equal_residual(self.l1, other.l1) + proj_equal_residual(self.l2, other.l2)
        b = proj_equal_residual(self.l1, other.l2) + proj_equal_residual(self.l2, other.l1)
        return min(a, b) < tol


def upper_triangle(C) -> np.ndarray:
    """Flatten to (a00, a01, a02, a11, a12, a22)."""
    A = C.A if isinstance(C, _SymmetricForm) else np.asarray(C, dtype=complex)
    return np.array([A[i, j] for i, j in _UT_IDX], dtype=complex)


def from_upper_triangle(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    A = np.empty((3, 3), dtype=complex)
    for (i, j), v in zip(_UT_IDX, c):
        A[i, j] = v
        A[j, i] = v
    return A


def adjugate(M: np.ndarray) -> np.ndarray:
    """Adjugate of a 3x3 matrix via explicit cofactors (adj(M) @ M = det(M) I)."""
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    return np.array(
        [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ],
        dtype=complex,
    )


def evaluate(C: Conic, p: HomPoint) -> float:
    """Relative residual |p^T A p| / (|p|^2 |A|); on-conic iff <= eps."""
    v = p.v
    return float(abs(v @ C.A @ v) / (np.linalg.norm(v) ** 2 * np.linalg.norm(C.A)))


def classify(C) -> int:
    """Rank in {1,2,3} by relative singular-value thresholds."""
    s = np.linalg.svd(C.A, compute_uv=False)
    return int(np.sum(s / s[0] > RANK_TOL))


def dual(C: Conic) -> DualConic:
    """Tangent-line conic of a smooth conic; adjugate for rank 2."""
    B = adjugate(C.A)
    if np.linalg.norm(B) < 1e-14 or classify(C) < 2:
        raise RankOne("adjugate vanishes for a rank-1 conic")
    return DualConic(B)


def primal(D: DualConic) -> Conic:
    B = adjugate(D.A)
    if np.linalg.norm(B) < 1e-14 or classify(D) < 2:
        raise RankOne("adjugate vanishes for a rank-1 dual conic")
    return Conic(B)


def polar(C: Conic, p: HomPoint) -> HomLine:
    w = C.A @ p.v
    if np.max(np.abs(w)) < 1e-13 * np.linalg.norm(p.v):
        raise SingularConic("polar undefined: point is a singular point of the conic")
    return HomLine(w)


def pole(C: Conic, l: HomLine) -> HomPoint:
    if classify(C) < 3:
        raise SingularConic("pole requires a rank-3 conic")
    return HomPoint(adjugate(C.A) @ l.v)


def tangent_at(C: Conic, p: HomPoint, tol: Tolerance = DEFAULT_TOL) -> HomLine:
    """Tangent line at a point of a smooth conic (its polar)."""
    if classify(C) < 3:
        raise SingularConic("tangent_at requires a rank-3 conic")
    r = evaluate(C, p)
    if r > tol.eps:
        raise PointNotOnConic(f"residual {r:.3e} exceeds eps={tol.eps:.1e}")
    return polar(C, p)


def line_tangency_residual(C: Conic, l: HomLine) -> float:
    """Relative residual of l^T adj(A) l = 0 (tangency of a line to a smooth conic)."""
    B = adjugate(C.A)
    v = l.v
    return float(abs(v @ B @ v) / (np.linalg.norm(v) ** 2 * np.linalg.norm(B)))


def contact_point(C: Conic, l: HomLine) -> HomPoint:
    """Touching point of a tangent line (the pole of l)."""
    return pole(C, l)


def tangents_from(C: Conic, p: HomPoint) -> LinePair:
    """Both tangents from a point, complex lines permitted.

    The pair of tangents from p is the degenerate conic
    (p^T A p) A - (A p)(A p)^T; for p on the conic this collapses to the
    doubled tangent.
    """
    if classify(C) < 3:
        raise SingularConic("tangents_from requires a rank-3 conic")
    v = _unit(p.v)
    Av = C.A @ v
    M = (v @ Av) * C.A - np.outer(Av, Av)
    if np.linalg.norm(M) < 1e-14:
        raise SingularConic("tangent pair collapsed")
    pair = split_degenerate(Conic(M))
    return _sort_pair(pair)


def _canon_key(obj) -> tuple:
    w = normalize(obj).v if isinstance(obj, (HomPoint, HomLine)) else _phase_major(upper_triangle(obj))
    return tuple(np.round(np.concatenate([w.real, w.imag]), 9))


def _phase_major(w: np.ndarray) -> np.ndarray:
    u = _unit(w)
    k = int(np.argmax(np.abs(u)))
    return u * np.conj(u[k] / abs(u[k]))


def _sort_pair(pair: LinePair) -> LinePair:
    a, b = pair.l1, pair.l2
    if _canon_key(a) <= _canon_key(b):
        return LinePair(a, b)
    return LinePair(b, a)


def split_degenerate(C: Conic) -> LinePair:
    """Factor a rank<=2 conic into its two lines (equal lines for rank 1)."""
    if classify(C) == 3:
        raise NotDegenerate("conic has rank 3")
    return _split_degenerate_matrix(C.A)


def _split_degenerate_matrix(A: np.ndarray) -> LinePair:
    """Line factorization, tolerant of approximately degenerate input.

    For A ~ l m^T + m l^T the matrix -adj(A) equals s s^T with s the
    intersection point of the two lines at the right scale; adding the skew
    matrix of s turns A into the rank-1 product g h^T.  Near rank 1 the
    adjugate is numerically useless, so the doubled line is read off the
    dominant column directly.
    """
    A = A / np.linalg.norm(A)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[1] / sv[0] < 1e-8:
        k = int(np.argmax(np.abs(np.diag(A))))
        line = HomLine(A[:, k] / np.sqrt(A[k, k]))
        return LinePair(line, line)
    B = -adjugate(A)
    k = int(np.argmax(np.abs(np.diag(B))))
    s = B[:, k] / np.sqrt(B[k, k])
    Ms = np.array(
        [[0, s[2], -s[1]], [-s[2], 0, s[0]], [s[1], -s[0], 0]], dtype=complex
    )
    G = A + Ms
    gi = int(np.argmax(np.linalg.norm(G, axis=1)))
    hi = int(np.argmax(np.linalg.norm(G, axis=0)))
    return LinePair(HomLine(G[gi, :]), HomLine(G[:, hi]))


def _line_pair_conic(l1: HomLine, l2: HomLine) -> np.ndarray:
    a, b = _unit(l1.v), _unit(l2.v)
    return 0.5 * (np.outer(a, b) + np.outer(b, a))


def conic_from_line_pair(l1: HomLine, l2: HomLine) -> Conic:
    return Conic(_line_pair_conic(l1, l2))


def quadratic_roots(a, b, c) -> list[tuple[complex, complex]]:
    """Projective roots (s, t) of a*x^2 + b*x + c with x = s/t.

    Uses companion-matrix eigenvalues (numpy.roots).  Degree drops produce
    roots at infinity, returned as (1, 0); they correspond to the second
    pencil generator in tangency problems.
    """
    coeffs = np.array([a, b, c], dtype=complex)
    m = np.max(np.abs(coeffs))
    if m == 0.0:
        raise ZeroVector("identically zero quadratic")
    coeffs = coeffs / m
    lead = 0
    while lead < 2 and abs(coeffs[lead]) < 1e-13:
        lead += 1
    finite = np.roots(coeffs[lead:]) if lead < 2 else np.array([])
    roots = [(complex(r), 1.0 + 0.0j) for r in finite]
    roots.extend([(1.0 + 0.0j, 0.0j)] * lead)
    return roots


def cubic_roots(c3, c2, c1, c0) -> list[tuple[complex, complex]]:
    """Projective roots of a cubic, roots at infinity as (1, 0)."""
    coeffs = np.array([c3, c2, c1, c0], dtype=complex)
    m = np.max(np.abs(coeffs))
    if m == 0.0:
        raise ZeroVector("identically zero cubic")
    coeffs = coeffs / m
    lead = 0
    while lead < 3 and abs(coeffs[lead]) < 1e-13:
        lead += 1
    finite = np.roots(coeffs[lead:]) if lead < 3 else np.array([])
    roots = [(complex(r), 1.0 + 0.0j) for r in finite]
    roots.extend([(1.0 + 0.0j, 0.0j)] * lead)
    return roots


def conic_through_5(p1, p2, p3, p4, p5) -> Conic:
    """Unique conic through five points (no four collinear).

    Each point contributes one linear condition on the six matrix entries;
    the conic is the one-dimensional null space of the 5x6 system.
    """
    pts = [p1, p2, p3, p4, p5]
    rows = np.stack([_monomial_row(p) for p in pts])
    _, s, vh = np.linalg.svd(rows)
    if s[4] / s[0] < RANK_TOL:
        raise DegeneratePointSet("null space dimension > 1 (four points collinear?)")
    # null vector of the complex system is the conjugated last row of vh
    return Conic(from_upper_triangle(_from_monomial(np.conj(vh[-1]))))


def _monomial_row(p: HomPoint) -> np.ndarray:
    x, y, z = _unit(p.v)
    # coefficients against (a00, a01, a02, a11, a12, a22)
    return np.array([x * x, 2 * x * y, 2 * x * z, y * y, 2 * y * z, z * z])


def _from_monomial(c: np.ndarray) -> np.ndarray:
    return c  # same ordering as upper_triangle


class TangencySolutions(NamedTuple):
    smooth: list[Conic]
    degenerate: list[Conic]


def conic_4pts_tangent_line(p1, p2, p3, p4, l: HomLine, tol: Tolerance = DEFAULT_TOL) -> TangencySolutions:
    """All conics through four points tangent to a line.

    The pencil through the four points is spanned by two of its line-pair
    members; tangency to l is a quadratic in the pencil parameter whose
    roots are found by companion eigenvalues.  Members of rank < 3 satisfy
    the algebraic tangency condition spuriously (the line passes through
    their singular point) and are reported separately, never silently
    dropped: callers must disambiguate the up-to-two smooth solutions.
    """
    pts = [p1, p2, p3, p4]
    for p in pts:
        if incidence_residual(p, l) <= tol.eps:
            raise TangentLineThroughBasePoint("tangent line passes through a base point")
    D1 = _line_pair_conic(join(p1, p2), join(p3, p4))
    D2 = _line_pair_conic(join(p1, p3), join(p2, p4))
    lv = _unit(l.v)
    adj1, adj2 = adjugate(D1), adjugate(D2)
    cross = adjugate(D1 + D2) - adj1 - adj2
    a = lv @ adj1 @ lv
    b = lv @ cross @ lv
    c = lv @ adj2 @ lv
    smooth, degenerate = [], []
    for s, t in quadratic_roots(c, b, a):  # roots in lambda = s/t, member D1 + lambda*D2
        member = Conic(t * D1 + s * D2)
        if classify(member) == 3:
            smooth.append(member)
        else:
            degenerate.append(member)
    smooth.sort(key=_canon_key)
    return TangencySolutions(smooth, degenerate)


def conic_double_contact(l1: HomLine, t1: HomPoint, l2: HomLine, t2: HomPoint, p: HomPoint, tol: Tolerance = DEFAULT_TOL) -> Conic:
    """The unique conic tangent to l1 at t1 and l2 at t2 through p.

    Members of the family sym(l1 l2^T) + mu * chord chord^T (chord = t1 v t2)
    are exactly the conics with those two prescribed contacts; p fixes mu
    linearly.  Exact by construction: the polar of t1 is proportional to l1
    whenever t1 lies on l1 and on the chord.
    """
    if incidence_residual(t1, l1) > tol.eps:
        raise ContactPointOffLine("t1 does not lie on l1")
    if incidence_residual(t2, l2) > tol.eps:
        raise ContactPointOffLine("t2 does not lie on l2")
    ch = _unit(join(t1, t2).v)
    S = _line_pair_conic(l1, l2)
    pv = _unit(p.v)
    num = pv @ S @ pv
    den = (pv @ ch) ** 2
    if abs(den) <= tol.eps**2:
        raise InconsistentThroughPoint("through-point lies on the contact chord")
    if abs(num) <= tol.eps:
        raise InconsistentThroughPoint("through-point lies on one of the tangent lines")
    return Conic(S - (num / den) * np.outer(ch, ch))


def pencil_member(C1: Conic, C2: Conic, lam: complex) -> Conic:
    return Conic(C1.A + lam * C2.A)


def dependence_residual(C1, C2, C3) -> float:
    """Smallest singular value of the stacked normalized upper triangles."""
    rows = []
    for C in (C1, C2, C3):
        u = upper_triangle(C)
        rows.append(u / np.linalg.norm(u))
    s = np.linalg.svd(np.stack(rows), compute_uv=False)
    return float(s[-1])


def dependent(C1, C2, C3, tol: Tolerance = DEFAULT_TOL):
    r = dependence_residual(C1, C2, C3)
    return r <= tol.eps, r


def codependent(C1: Conic, C2: Conic, C3, tol: Tolerance = DEFAULT_TOL):
    """Linear dependence of the dual matrices (four common tangents)."""
    duals = []
    for C in (C1, C2, C3):
        if isinstance(C, DualConic):
            duals.append(C)
        else:
            duals.append(dual(C))  # raises RankOne below rank 2
    return dependent(*duals, tol=tol)


class LineConicIntersection(NamedTuple):
    points: tuple[HomPoint, HomPoint]
    tangent: bool


# Chordal root separation below which a double root counts as a tangency.
MULTIPLICITY_TOL = 1e-6


def intersect_conic_line(C: Conic, l: HomLine) -> LineConicIntersection:
    """Both intersection points of a conic with a line.

    Parameterizes the line by two basis points and solves the restricted
    quadratic.  A root separation below the multiplicity threshold (in the
    chordal metric on the parameter line) is flagged as a tangency.
    """
    lv = _unit(l.v)
    order = np.argsort(np.abs(lv))
    basis = []
    for k in order[:2]:
        e = np.zeros(3, dtype=complex)
        e[k] = 1.0
        basis.append(_unit(np.cross(lv, e)))
    u, w = basis
    alpha = u @ C.A @ u
    beta = u @ C.A @ w
    gamma = w @ C.A @ w
    scale = max(abs(alpha), abs(beta), abs(gamma))
    if scale < 1e-13:
        raise LineOnConic("line is a component of the conic")
    roots = quadratic_roots(alpha, 2 * beta, gamma)  # in s/t for point s*u + t*w
    pts = [HomPoint(s * u + t * w) for s, t in roots]
    (s1, t1), (s2, t2) = roots
    sep = abs(s1 * t2 - s2 * t1) / (np.hypot(abs(s1), abs(t1)) * np.hypot(abs(s2), abs(t2)))
    return LineConicIntersection((pts[0], pts[1]), bool(sep < MULTIPLICITY_TOL))


def _refine_on_two_conics(A1: np.ndarray, A2: np.ndarray, v: np.ndarray) -> np.ndarray:
    """A few Newton steps on (p^T A1 p, p^T A2 p) in an affine chart."""
    v = _unit(v)
    for _ in range(3):
        k = int(np.argmax(np.abs(v)))
        idx = [i for i in range(3) if i != k]
        f = np.array([v @ A1 @ v, v @ A2 @ v])
        if max(abs(f[0]), abs(f[1])) < 1e-16:
            break
        J = np.array([[2 * (A1 @ v)[i] for i in idx], [2 * (A2 @ v)[i] for i in idx]])
        try:
            step = np.linalg.solve(J, -f)
        except np.linalg.LinAlgError:
            break
        w = v.copy()
        w[idx[0]] += step[0]
        w[idx[1]] += step[1]
        w = _unit(w)
        if max(abs(w @ A1 @ w), abs(w @ A2 @ w)) < max(abs(f[0]), abs(f[1])):
            v = w
        else:
            break
    return v


def intersect_conics(C1: Conic, C2: Conic, refine: bool = True) -> list[HomPoint]:
    """The four intersection points (repeats at tangential contacts).

    Finds the most degenerate pencil member via the characteristic cubic
    det(A1 + mu A2) = 0 (companion-matrix roots, including mu = infinity),
    splits it into two lines and intersects those with C1.  Each point is
    polished by a Newton step on both conic equations.
    """
    A1, A2 = C1.A, C2.A
    c3 = np.linalg.det(A2)
    c0 = np.linalg.det(A1)
    c1 = np.trace(adjugate(A1) @ A2)
    c2 = np.trace(adjugate(A2) @ A1)
    if max(abs(c0), abs(c1), abs(c2), abs(c3)) < 1e-12:
        raise SharedComponent("every pencil member is degenerate")
    best, best_meas = None, np.inf
    for s, t in cubic_roots(c3, c2, c1, c0):
        M = t * A1 + s * A2
        n = np.linalg.norm(M)
        if n < 1e-13:
            raise SharedComponent("conics are projectively equal")
        sv = np.linalg.svd(M / n, compute_uv=False)
        meas = sv[2] / sv[0]
        if meas < best_meas:
            best, best_meas = M, meas
    # companion eigenvalues lose half precision at double roots, so the best
    # member may only be degenerate to ~1e-8; the splitter tolerates that
    if best is None or best_meas > 1e-4:
        raise SharedComponent("no usable degenerate pencil member found")
    points: list[HomPoint] = []
    for line in _split_degenerate_matrix(best):
        hit = intersect_conic_line(C1, line)
        points.extend(hit.points)
    if refine:
        points = [HomPoint(_refine_on_two_conics(A1, A2, p.v)) for p in points]
    return points


def cluster_points(points, tol: float = 1e-7) -> list[tuple[HomPoint, int]]:
    """Group projectively equal points, returning (representative, multiplicity)."""
    out: list[tuple[HomPoint, int]] = []
    for p in points:
        for i, (q, m) in enumerate(out):
            if proj_equal_residual(p, q) < tol:
                out[i] = (q, m + 1)
                break
        else:
            out.append((p, 1))
    return out


def seed_point(C: Conic) -> HomPoint:
    """Deterministic point on a smooth conic via fixed probe lines."""
    probes = [
        HomLine(1, 0, 0),
        HomLine(0, 1, 0),
        HomLine(0, 0, 1),
        HomLine(1, 1, 1),
        HomLine(1, -2, 0.5),
        HomLine(0.3, 1, -1.7),
    ]
    for l in probes:
        try:
            hit = intersect_conic_line(C, l)
        except LineOnConic:
            continue
        for p in hit.points:
            if evaluate(C, p) < 1e-10:
                return p
    raise SingularConic("no probe line produced a usable seed point")


def point_on_conic(C: Conic, t: complex, seed: HomPoint | None = None) -> HomPoint:
    """Rational parameterization of a smooth conic through a seed point.

    Chords from the seed are steered by m(t) = d0 + t*d1 with d0 on the
    tangent at the seed (so t=0 returns the seed) and d1 off that tangent.
    The second chord intersection (m^T A m) s - 2 (s^T A m) m lies on the
    conic exactly, up to roundoff in the matrix products.
    """
    if classify(C) < 3:
        raise SingularConic("parameterization requires a rank-3 conic")
    s = _unit(seed_point(C).v if seed is None else seed.v)
    tau = _unit(C.A @ s)
    d0 = None
    for k in np.argsort(np.abs(tau)):
        e = np.zeros(3, dtype=complex)
        e[k] = 1.0
        cand = np.cross(tau, e)
        if np.linalg.norm(cand) > 0.1 and proj_equal_residual(cand, s) > 1e-6:
            d0 = _unit(cand)
            break
    if d0 is None:
        raise SingularConic("could not build a parameterization frame")
    k = int(np.argmax(np.abs(tau)))
    d1 = np.zeros(3, dtype=complex)
    d1[k] = 1.0
    m = d0 + t * d1
    q = (m @ C.A @ m) * s - 2 * (s @ C.A @ m) * m
    return HomPoint(q)


def transform_conic(T, C: Conic) -> Conic:
    """Congruence action: points map by T, so A maps to T^-T A T^-1."""
    M = _check_transform(T)
    Minv = np.linalg.inv(M)
    return Conic(Minv.T @ C.A @ Minv)


def transform_dual_conic(T, D: DualConic) -> DualConic:
    M = _check_transform(T)
    return DualConic(M @ D.A @ M.T)


register_transform_rule(Conic, transform_conic)
register_transform_rule(DualConic, transform_dual_conic)
