"""Complex projective primitives: homogeneous points and lines.

Every object is a complex triple defined up to scale.  All predicates are
scale-free: inputs are renormalized internally and each predicate reports
the relative residual it decided on, so callers can certify both "holds"
(residual <= eps) and "fails" (residual >= sep*eps) with an explicit gap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GeometryError",
    "ZeroVector",
    "DegenerateJoin",
    "DegenerateMeet",
    "SingularTransform",
    "Tolerance",
    "DEFAULT_TOL",
    "PROJ_EQ_TOL",
    "HomPoint",
    "HomLine",
    "normalize",
    "proj_equal",
    "proj_equal_residual",
    "join",
    "meet",
    "incidence_residual",
    "incident",
    "collinearity_residual",
    "collinear",
    "concurrency_residual",
    "concurrent",
    "apply_transform",
    "random_projective_transform",
]


class GeometryError(Exception):
    """Base class for all geometric failures in this package."""


class ZeroVector(GeometryError):
    pass


class DegenerateJoin(GeometryError):
    pass


class DegenerateMeet(GeometryError):
    pass


class SingularTransform(GeometryError):
    pass


# Projective equality threshold: smallest singular value of the stacked
# 2x3 matrix of unit representatives, computed in closed form below.
PROJ_EQ_TOL = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Residual pass band plus the certification multiplier.

    ``eps`` bounds residuals of incidences that are claimed to hold;
    a claimed failure must show a residual >= ``sep * eps`` so that
    counterexamples are machine-distinguishable from roundoff.
    """

    eps: float = 1e-9
    sep: float = 1e4

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError(f"eps must lie in (0,1), got {self.eps}")
        if self.sep < 1e3:
            raise ValueError(f"sep must be >= 1e3, got {self.sep}")

    @property
    def gap(self) -> float:
        return self.sep * self.eps


DEFAULT_TOL = Tolerance()


def _as_triple(values) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    if v.shape != (3,):
        raise ValueError(f"expected 3 homogeneous coordinates, got shape {v.shape}")
    if not np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag)):
        raise ValueError("non-finite coordinate entering the geometry layer")
    return v


class _HomTriple:
    """Shared machinery for points and lines (duality makes them twins)."""

    __slots__ = ("v",)

    def __init__(self, c0, c1=None, c2=None):
        if c1 is None:
            v = _as_triple(c0)
        else:
            v = _as_triple([c0, c1, c2])
        if np.max(np.abs(v)) == 0.0:
            raise ZeroVector(f"all-zero {type(self).__name__}")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if not isinstance(other, _HomTriple):
            return NotImplemented
        return proj_equal(self, other)

    __hash__ = None

    def __repr__(self):
        coords = ", ".join(_fmt_scalar(c) for c in self.v)
        return f"{type(self).__name__}({coords})"

    def affine(self) -> tuple[complex, complex]:
        """Dehomogenize against the last coordinate."""
        if abs(self.v[2]) < 1e-14 * np.max(np.abs(self.v)):
            raise ZeroVector("object at infinity has no affine coordinates")
        return complex(self.v[0] / self.v[2]), complex(self.v[1] / self.v[2])

    def is_real(self, tol: float = 1e-9) -> bool:
        """True when some representative of the class has real coordinates."""
        w = _unit_major(self.v)
        return float(np.max(np.abs(w.imag))) <= tol

    def real_affine(self) -> tuple[float, float]:
        x, y = self.affine()
        return x.real, y.real


def _fmt_scalar(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:.6g}"
    return f"({c.real:.6g}{c.imag:+.6g}j)"


class HomPoint(_HomTriple):
    """Point of the complex projective plane, up to scale."""


class HomLine(_HomTriple):
    """Line of the complex projective plane (coefficient triple), up to scale."""


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n < 1e-300:
        raise ZeroVector("vector below machine threshold")
    return v / n


def _unit_major(v: np.ndarray) -> np.ndarray:
    """Unit 2-norm with the largest-modulus coordinate rotated to positive real."""
    u = _unit(v)
    k = int(np.argmax(np.abs(u)))
    phase = u[k] / abs(u[k])
    return u * np.conj(phase)


def normalize(obj):
    """Canonical representative: unit norm, dominant coordinate positive real."""
    return type(obj)(_unit_major(obj.v))


def proj_equal_residual(a, b) -> float:
    """Smallest singular value of the stacked 2xN matrix of unit representatives.

    For unit rows u, w the Gram matrix has eigenvalues 1 +- |<u,w>|, so
    sigma_min^2 = 1 - |<u,w>|.  Evaluating that difference directly loses
    half the precision near equality; the identity
    1 - |c| = |u - c*w|^2 / (1 + |c|) with c = <u,w> avoids cancellation.
    Accepts wrapped triples or plain vectors of any equal length.
    """
    u = _unit(np.asarray(getattr(a, "v", a), dtype=complex))
    w = _unit(np.asarray(getattr(b, "v", b), dtype=complex))
    c = np.vdot(w, u)  # <u, w> with conjugation on w
    perp = np.linalg.norm(u - c * w)
    return float(perp / np.sqrt(1.0 + min(abs(c), 1.0)))


def proj_equal(a, b, tol: float = PROJ_EQ_TOL) -> bool:
    return proj_equal_residual(a, b) < tol


def join(p: HomPoint, q: HomPoint, tol: Tolerance = DEFAULT_TOL) -> HomLine:
    """Line through two distinct points (cross product of representatives)."""
    if proj_equal_residual(p, q) <= tol.eps:
        raise DegenerateJoin("join of projectively equal points")
    return HomLine(np.cross(_unit(p.v), _unit(q.v)))


def meet(l: HomLine, m: HomLine, tol: Tolerance = DEFAULT_TOL) -> HomPoint:
    """Intersection point of two distinct lines."""
    if proj_equal_residual(l, m) <= tol.eps:
        raise DegenerateMeet("meet of projectively equal lines")
    return HomPoint(np.cross(_unit(l.v), _unit(m.v)))


def incidence_residual(p: HomPoint, l: HomLine) -> float:
    """|p.l| / (|p||l|); the pairing is bilinear, no conjugation."""
    pv, lv = p.v, l.v
    return float(abs(pv @ lv) / (np.linalg.norm(pv) * np.linalg.norm(lv)))


def incident(p: HomPoint, l: HomLine, tol: Tolerance = DEFAULT_TOL):
    r = incidence_residual(p, l)
    return r <= tol.eps, r


def collinearity_residual(p: HomPoint, q: HomPoint, r: HomPoint) -> float:
    m = np.stack([_unit(p.v), _unit(q.v), _unit(r.v)])
    return float(abs(np.linalg.det(m)))


def collinear(p, q, r, tol: Tolerance = DEFAULT_TOL):
    res = collinearity_residual(p, q, r)
    return res <= tol.eps, res


def concurrency_residual(l: HomLine, m: HomLine, n: HomLine) -> float:
    mt = np.stack([_unit(l.v), _unit(m.v), _unit(n.v)])
    return float(abs(np.linalg.det(mt)))


def concurrent(l, m, n, tol: Tolerance = DEFAULT_TOL):
    res = concurrency_residual(l, m, n)
    return res <= tol.eps, res


def _check_transform(T) -> np.ndarray:
    M = np.asarray(T, dtype=complex)
    if M.shape != (3, 3):
        raise ValueError(f"transform must be 3x3, got {M.shape}")
    if not np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag)):
        raise ValueError("non-finite transform entry")
    scale = np.linalg.norm(M) / np.sqrt(3.0)
    if scale < 1e-300 or abs(np.linalg.det(M)) < 1e-12 * scale**3:
        raise SingularTransform("transform determinant below degeneracy threshold")
    return M


def apply_transform(T, obj):
    """Apply an invertible projective map.

    Points map by T, lines by the inverse transpose, so incidence is
    preserved exactly.  Conic types register their congruence rule via
    :func:`register_transform_rule`.
    """
    M = _check_transform(T)
    rule = _TRANSFORM_RULES.get(type(obj))
    if rule is None:
        raise TypeError(f"no transform rule for {type(obj).__name__}")
    return rule(M, obj)


_TRANSFORM_RULES: dict[type, object] = {}


def register_transform_rule(cls, rule):
    _TRANSFORM_RULES[cls] = rule


register_transform_rule(HomPoint, lambda M, p: HomPoint(M @ p.v))
register_transform_rule(HomLine, lambda M, l: HomLine(np.linalg.solve(M.T, l.v)))


def random_projective_transform(rng: np.random.Generator, real: bool = True) -> np.ndarray:
    """Well-conditioned random 3x3 transform (|det| bounded away from 0)."""
    for _ in range(64):
        M = rng.uniform(-1.0, 1.0, (3, 3))
        if not real:
            M = M + 1j * rng.uniform(-1.0, 1.0, (3, 3))
        M = M / np.linalg.norm(M) * np.sqrt(3.0)
        if abs(np.linalg.det(M)) > 0.05:
            return M.astype(complex)
    raise SingularTransform("failed to sample a well-conditioned transform")
