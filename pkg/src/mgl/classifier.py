"""Bounded / linear / not-marginal classification of finite 2x2 matrix sets.

Decision procedure:

1. Confirm the joint spectral radius is 1 (exactly when the set has a common
   eigenline, numerically otherwise).
2. No common eigenline: the set is irreducible and admits an extremal norm,
   so every product is bounded.
3. Otherwise conjugate to upper triangular form and split off the matrices of
   unit |det|.  A nontrivial Jordan block of determinant 1, or two
   non-proportional determinant -1 matrices (whose product is such a block),
   forces linear growth.  In every other case those matrices sit inside a
   four-element group {I, -I, X, -X} and a domination argument bounds the
   semigroup.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .matrix import (
    ALL,
    Mat2,
    MatrixSet,
    ScalarKindError,
    det,
    eigenvalues,
    mat_mul,
    preserves_line,
    real_eigenlines,
    spectral_radius,
    sum_norm,
    upper_right_seminorm,
)
from .scalars import format_scalar

BOUNDED = "Bounded"
LINEAR = "Linear"
NOT_MARGINAL = "NotMarginal"

EXTREMAL_NORM_REASON = "extremal norm case"

DEFAULT_EPS = 1e-9
DEFAULT_DEPTH = 10


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Triangularization:
    basis: Mat2
    conjugated: MatrixSet


@dataclass(frozen=True)
class DetPartition:
    a0: list
    a1: list
    # 0-based positions of the members in the input set
    a0_index: list = field(default_factory=list)
    a1_index: list = field(default_factory=list)


@dataclass(frozen=True)
class BoundCertificate:
    """``sum_norm`` of every product is at most ``bound`` (in the triangular basis)."""

    beta: object
    m_const: object
    bound: object

    def to_json(self) -> dict:
        return {
            "beta": format_scalar(self.beta),
            "m_const": format_scalar(self.m_const),
            "bound": format_scalar(self.bound),
        }


@dataclass(frozen=True)
class LinearWitness:
    word: tuple
    product: Mat2
    rate_lower: object

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "rate_lower": format_scalar(self.rate_lower),
            "product": [[format_scalar(v) for v in row] for row in self.product.rows],
        }


@dataclass(frozen=True)
class RhoReport:
    status: str  # "ExactOne" | "NumericWithin" | "Not1" | "Undecided"
    estimate: object
    lower: Optional[float] = None
    upper: Optional[float] = None
    eps: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status in ("ExactOne", "NumericWithin")

    def to_json(self) -> dict:
        est = self.estimate
        return {
            "status": self.status,
            "estimate": est if isinstance(est, float) else format_scalar(est),
            "lower": self.lower,
            "upper": self.upper,
            "eps": self.eps,
        }


@dataclass(frozen=True)
class GrowthClass:
    tag: str
    reason: str = ""
    certificate: Optional[BoundCertificate] = None
    witness: Optional[LinearWitness] = None
    triangularization: Optional[Triangularization] = None
    rho: Optional[RhoReport] = None

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "reason": self.reason,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "witness": self.witness.to_json() if self.witness else None,
        }


# ---------------------------------------------------------------------------


def _require_exact(mats: MatrixSet) -> None:
    if not mats.is_exact:
        raise ScalarKindError("classification requires exact (rational or quadratic) entries")


def common_invariant_line(mats: MatrixSet):
    """A direction preserved by every matrix, or None.

    The first non-scalar matrix is the pivot; its eigenlines are tried in the
    order :func:`real_eigenlines` returns them.
    """
    _require_exact(mats)
    pivot = next((m for m in mats if not m.is_scalar()), None)
    if pivot is None:
        return (Fraction(1), Fraction(0))
    lines = real_eigenlines(pivot)
    if lines is None or lines == ALL:
        return None
    for v in lines:
        if all(preserves_line(m, v) for m in mats):
            return v
    return None


def triangularize(mats: MatrixSet) -> Optional[Triangularization]:
    v = common_invariant_line(mats)
    if v is None:
        return None
    if v == (1, 0):
        basis = Mat2.identity()
        return Triangularization(basis, MatrixSet(list(mats)))
    w = (Fraction(0), Fraction(1)) if v[0] != 0 else (Fraction(1), Fraction(0))
    basis = Mat2(v[0], w[0], v[1], w[1])
    conj = mats.conjugate(basis)
    assert all(m.e21 == 0 for m in conj)
    return Triangularization(basis, conj)


# rho = 1 ---------------------------------------------------------------


def _float_stack(mats: MatrixSet) -> np.ndarray:
    return np.array([[[float(m.e11), float(m.e12)], [float(m.e21), float(m.e22)]] for m in mats])


def _op2_batch(p: np.ndarray) -> np.ndarray:
    a, b, c, d = p[:, 0, 0], p[:, 0, 1], p[:, 1, 0], p[:, 1, 1]
    return 0.5 * (np.hypot(a + d, c - b) + np.hypot(a - d, b + c))


def _rho_batch(p: np.ndarray) -> np.ndarray:
    a, b, c, d = p[:, 0, 0], p[:, 0, 1], p[:, 1, 0], p[:, 1, 1]
    t = a + d
    dt = a * d - b * c
    disc = t * t - 4 * dt
    root = np.sqrt(np.abs(disc))
    real = np.maximum(np.abs(t + root), np.abs(t - root)) / 2
    return np.where(disc >= 0, real, np.sqrt(np.abs(dt)))


def rho_bracket(mats: MatrixSet, depth: int) -> tuple[float, float]:
    """``[max rho(P)^(1/n), min max||P||_2^(1/n)]`` over product lengths n <= depth."""
    gens = _float_stack(mats)
    level = gens.copy()
    lower, upper = 0.0, math.inf
    for n in range(1, depth + 1):
        if n > 1:
            level = np.einsum("gij,pjk->gpik", gens, level).reshape(-1, 2, 2)
        lower = max(lower, float(_rho_batch(level).max()) ** (1.0 / n))
        upper = min(upper, float(_op2_batch(level).max()) ** (1.0 / n))
    return lower, upper


def verify_rho_one(mats: MatrixSet, depth: int = DEFAULT_DEPTH, eps: float = DEFAULT_EPS) -> RhoReport:
    """Check the normalization rho(set) = 1.

    Triangularizable sets are decided exactly: the joint spectral radius is
    the largest |diagonal entry| in the triangular basis.  Otherwise the
    bracket from :func:`rho_bracket` must contain 1 and be at most ``eps``
    wide.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    tri = triangularize(mats) if mats.is_exact else None
    if tri is not None:
        rho = max(max(abs(m.e11), abs(m.e22)) for m in tri.conjugated)
        return RhoReport("ExactOne" if rho == 1 else "Not1", rho)
    lower, upper = rho_bracket(mats, depth)
    if lower > 1 + eps or upper < 1 - eps:
        est = lower if lower > 1 + eps else upper
        return RhoReport("Not1", est, lower, upper, eps)
    if upper - lower <= eps:
        return RhoReport("NumericWithin", 0.5 * (lower + upper), lower, upper, eps)
    return RhoReport("Undecided", 0.5 * (lower + upper), lower, upper, eps)


# determinant partition and the unit-determinant analysis ------------------


def partition_by_det(tri: Triangularization) -> DetPartition:
    a0, a1, i0, i1 = [], [], [], []
    for i, m in enumerate(tri.conjugated):
        if abs(det(m)) == 1:
            a1.append(m)
            i1.append(i)
        else:
            a0.append(m)
            i0.append(i)
    return DetPartition(a0, a1, i0, i1)


def is_nontrivial_jordan(m: Mat2) -> bool:
    """Upper triangular, equal diagonal entries, nonzero corner."""
    return m.e21 == 0 and m.e11 == m.e22 and m.e12 != 0


def _proportional(a: Mat2, b: Mat2) -> bool:
    # 2x2 bivector test: all 2x2 minors of the 2x4 stack vanish
    x, y = a.entries, b.entries
    return all(x[i] * y[j] == x[j] * y[i] for i in range(4) for j in range(i + 1, 4))


def bounded_certificate(tri_set: Sequence[Mat2]) -> BoundCertificate:
    """Uniform ``sum_norm`` bound for the semigroup of a contracting triangular set.

    Each member is entrywise dominated in absolute value by one of
    ``[[1, M], [0, beta]]`` or ``[[beta, M], [0, 1]]`` where ``beta`` is the
    largest smaller-diagonal modulus and ``M`` the largest |corner|.  Maximal
    products of the two dominating matrices have the form ``B1^m B2^k``, so
    ``(max(2, 1 + M/(1-beta)))^2`` bounds everything.
    """
    mats = list(tri_set)
    if not mats:
        raise PreconditionError("empty set")
    for m in mats:
        if m.e21 != 0:
            raise PreconditionError("matrix is not upper triangular")
        if max(abs(m.e11), abs(m.e22)) > 1:
            raise PreconditionError("spectral radius exceeds 1")
        if abs(det(m)) >= 1:
            raise PreconditionError("|det| must be < 1")
    beta = max(min(abs(m.e11), abs(m.e22)) for m in mats)
    m_const = max(abs(m.e12) for m in mats)
    s = 1 + m_const / (1 - beta)
    s = s if s > 2 else Fraction(2)
    return BoundCertificate(beta, m_const, s * s)


def simultaneously_diagonalizable(mats: Sequence[Mat2]) -> bool:
    """Every member diagonalizable over R and all pairwise commuting."""
    for m in mats:
        if m.is_scalar():
            continue
        lines = real_eigenlines(m)
        if lines is None or lines == ALL or _distinct_eigen_count(m) < 2:
            return False
    for a, b in itertools.combinations(mats, 2):
        if mat_mul(a, b) != mat_mul(b, a):
            return False
    return True


def _distinct_eigen_count(m: Mat2) -> int:
    ev = eigenvalues(m)
    return 0 if ev is None else len(set(ev))


def classify(
    mats: MatrixSet,
    depth: int = DEFAULT_DEPTH,
    eps: float = DEFAULT_EPS,
) -> GrowthClass:
    _require_exact(mats)
    rho = verify_rho_one(mats, depth, eps)
    if not rho.ok:
        if rho.status == "Undecided":
            reason = "joint spectral radius 1 not verified"
        else:
            est = rho.estimate
            reason = f"joint spectral radius {est if isinstance(est, float) else format_scalar(est)} != 1"
        return GrowthClass(NOT_MARGINAL, reason, rho=rho)

    tri = triangularize(mats)
    if tri is None:
        return GrowthClass(BOUNDED, EXTREMAL_NORM_REASON, rho=rho)

    if any(spectral_radius(m) > 1 for m in tri.conjugated):
        return GrowthClass(NOT_MARGINAL, "a generator has spectral radius > 1", triangularization=tri, rho=rho)

    part = partition_by_det(tri)

    for m, i in zip(part.a1, part.a1_index):
        if det(m) == 1 and is_nontrivial_jordan(m):
            w = LinearWitness((i + 1,), m, upper_right_seminorm(m))
            return GrowthClass(LINEAR, "nontrivial Jordan generator", witness=w, triangularization=tri, rho=rho)

    neg = [(m, i) for m, i in zip(part.a1, part.a1_index) if det(m) == -1]
    for (x, i), (y, j) in itertools.combinations(neg, 2):
        if not _proportional(x, y):
            b = mat_mul(x, y)  # word (j, i): y acts first
            w = LinearWitness((j + 1, i + 1), b, upper_right_seminorm(b) / 2)
            return GrowthClass(
                LINEAR, "product of two determinant -1 generators", witness=w, triangularization=tri, rho=rho
            )

    # a1 lies in {I, -I, X, -X}
    x = neg[0][0] if neg else None
    group = [Mat2.identity()]
    if x is not None:
        group.append(x)
    group_bound = max(sum_norm(g) for g in group)
    if not part.a0:
        cert = BoundCertificate(Fraction(0), Fraction(0), group_bound)
        reason = "generators lie in {I, -I, X, -X}" if x is not None else "generators are +-I"
        return GrowthClass(BOUNDED, reason, certificate=cert, triangularization=tri, rho=rho)

    hat = list(part.a0)
    if x is not None:
        for a in part.a0:
            hat.extend([mat_mul(x, a), mat_mul(a, x), mat_mul(mat_mul(x, a), x)])
    cert = bounded_certificate(hat)
    if group_bound > cert.bound:
        cert = BoundCertificate(cert.beta, cert.m_const, group_bound)
    reason = "a1 within group {+-I,+-X}" if x is not None else ("a1 within {+-I}" if part.a1 else "all |det| < 1")
    return GrowthClass(BOUNDED, reason, certificate=cert, triangularization=tri, rho=rho)

