"""2x2 matrices over Q, Q(sqrt(d)) or binary64, with the norms used for growth."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .scalars import QuadScalar, format_scalar, is_exact, parse_scalar, qsqrt, radicand


class ScalarKindError(TypeError):
    """Exact and floating entries (or two quadratic fields) were mixed."""


def _normalize(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, QuadScalar, float)):
        return x
    raise TypeError(f"unsupported matrix entry {x!r}")


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 matrix ``[[e11, e12], [e21, e22]]``."""

    e11: object
    e12: object
    e21: object
    e22: object

    def __post_init__(self):
        vals = [_normalize(v) for v in (self.e11, self.e12, self.e21, self.e22)]
        kinds = {_entry_kind(v) for v in vals}
        if "float" in kinds and len(kinds) > 1:
            if any(not (v == 0) for v in vals if _entry_kind(v) != "float"):
                raise ScalarKindError("matrix mixes exact and floating entries")
            vals = [float(v) for v in vals]
        radicands = {radicand(v) for v in vals if isinstance(v, QuadScalar)}
        if len(radicands) > 1:
            raise ScalarKindError(f"entries from several quadratic fields: {sorted(radicands)}")
        for name, v in zip(("e11", "e12", "e21", "e22"), vals):
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls, like: "Mat2 | None" = None) -> "Mat2":
        if like is not None and like.kind == "float":
            return cls(1.0, 0.0, 0.0, 1.0)
        return cls(1, 0, 0, 1)

    @property
    def entries(self) -> tuple:
        return (self.e11, self.e12, self.e21, self.e22)

    @property
    def rows(self) -> tuple:
        return ((self.e11, self.e12), (self.e21, self.e22))

    @property
    def kind(self) -> str:
        """'float', 'quad' or 'rational'."""
        kinds = {_entry_kind(v) for v in self.entries}
        if "float" in kinds:
            return "float"
        return "quad" if "quad" in kinds else "rational"

    @property
    def field(self) -> int:
        """Radicand of the quadratic field holding the entries (1 for Q)."""
        for v in self.entries:
            if isinstance(v, QuadScalar):
                return v.d
        return 1

    @property
    def is_exact(self) -> bool:
        return self.kind != "float"

    def is_upper_triangular(self) -> bool:
        return self.e21 == 0

    def is_scalar(self) -> bool:
        return self.e12 == 0 and self.e21 == 0 and self.e11 == self.e22

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __mul__(self, s) -> "Mat2":
        if isinstance(s, Mat2):
            return NotImplemented
        return Mat2(*(s * v for v in self.entries))

    __rmul__ = __mul__

    def __neg__(self) -> "Mat2":
        return Mat2(*(-v for v in self.entries))

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(a - b for a, b in zip(self.entries, other.entries)))

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(a + b for a, b in zip(self.entries, other.entries)))

    def __pow__(self, k: int) -> "Mat2":
        return mat_pow(self, k)

    def abs(self) -> "Mat2":
        return Mat2(*(abs(v) for v in self.entries))

    def to_float(self) -> "Mat2":
        return Mat2(*(float(v) for v in self.entries))

    def inverse(self) -> "Mat2":
        dt = det(self)
        if dt == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.e22 / dt, -self.e12 / dt, -self.e21 / dt, self.e11 / dt)

    def __str__(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(*(format_scalar(v) for v in self.entries))


def _entry_kind(v) -> str:
    if isinstance(v, float):
        return "float"
    if isinstance(v, QuadScalar):
        return "quad"
    return "rational"


def _check_kinds(a: Mat2, b: Mat2) -> None:
    ka, kb = a.kind, b.kind
    if (ka == "float") != (kb == "float"):
        raise ScalarKindError(f"cannot multiply {ka} and {kb} matrices")
    if ka == kb == "quad" and a.field != b.field:
        raise ScalarKindError(f"Q(sqrt({a.field})) vs Q(sqrt({b.field}))")


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    """Product ``a @ b``. Rational matrices combine with any single quadratic field."""
    _check_kinds(a, b)
    return Mat2(
        a.e11 * b.e11 + a.e12 * b.e21,
        a.e11 * b.e12 + a.e12 * b.e22,
        a.e21 * b.e11 + a.e22 * b.e21,
        a.e21 * b.e12 + a.e22 * b.e22,
    )


def mat_pow(a: Mat2, k: int) -> Mat2:
    if k < 0:
        return mat_pow(a.inverse(), -k)
    result, base = Mat2.identity(a), a
    while k:
        if k & 1:
            result = mat_mul(base, result)
        base = mat_mul(base, base)
        k >>= 1
    return result


def product(mats: Iterable[Mat2]) -> Mat2:
    """``A_n ... A_1`` for the sequence ``A_1, ..., A_n`` (first factor acts first)."""
    it = iter(mats)
    acc = next(it)
    for m in it:
        acc = mat_mul(m, acc)
    return acc


def det(a: Mat2):
    return a.e11 * a.e22 - a.e12 * a.e21


def trace(a: Mat2):
    return a.e11 + a.e22


def discriminant(a: Mat2):
    t = trace(a)
    return t * t - 4 * det(a)


def eigenvalues(a: Mat2):
    """Real eigenvalues (largest first) as exact field elements, or None when
    the pair is complex. Floats for float matrices."""
    if a.e21 == 0 or a.e12 == 0:
        return tuple(sorted((a.e11, a.e22), reverse=True))
    disc = discriminant(a)
    if disc < 0:
        return None
    t = trace(a)
    if a.kind == "float":
        r = math.sqrt(disc)
    elif a.kind == "rational":
        r = qsqrt(disc)
    else:
        raise ScalarKindError("eigenvalues of non-triangular quadratic-field matrices are not supported")
    return ((t + r) / 2, (t - r) / 2)


def spectral_radius(a: Mat2):
    """Largest eigenvalue modulus; exact for exact input where possible.

    A complex pair has modulus ``sqrt(det)``, returned as a field element for
    rational matrices.
    """
    ev = eigenvalues(a) if (a.kind != "quad" or a.e21 == 0 or a.e12 == 0) else None
    if ev is not None:
        return max(abs(ev[0]), abs(ev[1]))
    if a.kind == "quad":
        return _spectral_radius_float(a.to_float())
    if a.kind == "rational":
        return qsqrt(det(a))
    return math.sqrt(abs(det(a)))


def _spectral_radius_float(a: Mat2) -> float:
    disc = discriminant(a)
    t = trace(a)
    if disc >= 0:
        r = math.sqrt(disc)
        return max(abs((t + r) / 2), abs((t - r) / 2))
    return math.sqrt(abs(det(a)))


def sum_norm(a: Mat2):
    """Sum of the absolute values of the four entries."""
    return abs(a.e11) + abs(a.e12) + abs(a.e21) + abs(a.e22)


def op_norm_2(a: Mat2) -> float:
    """Largest singular value, via ``(sqrt((a+d)^2+(c-b)^2) + sqrt((a-d)^2+(b+c)^2)) / 2``."""
    p, q, r, s = (float(v) for v in a.entries)
    return 0.5 * (math.hypot(p + s, r - q) + math.hypot(p - s, q + r))


def upper_right_seminorm(a: Mat2):
    return abs(a.e12)


# eigenlines ---------------------------------------------------------------

ALL = "all"


def _normalize_direction(v0, v1):
    if v0 != 0:
        return (Fraction(1), v1 / v0)
    return (Fraction(0), Fraction(1))


def real_eigenlines(a: Mat2):
    """Real eigendirections of an exact matrix.

    Returns ``ALL`` for scalar matrices, ``None`` when the eigenvalues are
    complex, and otherwise a list of at most two directions normalized so that
    the first nonzero coordinate is 1. When ``e1`` is an eigendirection it is
    listed first; remaining lines follow in order of decreasing eigenvalue.
    """
    if not a.is_exact:
        raise ScalarKindError("real_eigenlines needs exact entries")
    if a.is_scalar():
        return ALL
    ev = eigenvalues(a)
    if ev is None:
        return None
    lines = []
    if a.e21 == 0:
        lines.append((Fraction(1), Fraction(0)))
    for lam in ev:
        if a.e12 != 0:
            v = _normalize_direction(a.e12, lam - a.e11)
        elif a.e21 != 0:
            v = _normalize_direction(lam - a.e22, a.e21)
        else:
            # diagonal, non-scalar
            v = (Fraction(1), Fraction(0)) if lam == a.e11 else (Fraction(0), Fraction(1))
        if v not in lines:
            lines.append(v)
    return lines


def apply(a: Mat2, v):
    return (a.e11 * v[0] + a.e12 * v[1], a.e21 * v[0] + a.e22 * v[1])


def preserves_line(a: Mat2, v) -> bool:
    """True when ``a @ v`` is parallel to ``v`` (exact cross-product test)."""
    w = apply(a, v)
    return w[0] * v[1] - w[1] * v[0] == 0


# matrix sets --------------------------------------------------------------


class MatrixSet(Sequence):
    """Nonempty ordered list of invertible matrices sharing a scalar kind.

    Symbols are 1-based: ``labels[i] == i + 1``.
    """

    def __init__(self, matrices: Iterable[Mat2], *, allow_singular: bool = False):
        mats = [m if isinstance(m, Mat2) else Mat2.of(m) for m in matrices]
        if not mats:
            raise ValueError("matrix set is empty")
        kinds = {m.kind for m in mats}
        if "float" in kinds and len(kinds) > 1:
            raise ScalarKindError("matrix set mixes exact and floating matrices")
        fields = {m.field for m in mats if m.kind == "quad"}
        if len(fields) > 1:
            raise ScalarKindError(f"matrix set spans several quadratic fields {sorted(fields)}")
        if not allow_singular:
            for i, m in enumerate(mats, 1):
                if det(m) == 0:
                    raise ValueError(f"matrix {i} is singular")
        self._mats = tuple(mats)

    def __getitem__(self, i):
        return self._mats[i]

    def __len__(self):
        return len(self._mats)

    def __iter__(self) -> Iterator[Mat2]:
        return iter(self._mats)

    def __eq__(self, other):
        return isinstance(other, MatrixSet) and self._mats == other._mats

    def __hash__(self):
        return hash(self._mats)

    def __repr__(self):
        return "MatrixSet([" + ", ".join(str(m) for m in self._mats) + "])"

    @property
    def labels(self) -> list[int]:
        return list(range(1, len(self._mats) + 1))

    @property
    def kind(self) -> str:
        ks = {m.kind for m in self._mats}
        if "float" in ks:
            return "float"
        return "quad" if "quad" in ks else "rational"

    @property
    def is_exact(self) -> bool:
        return self.kind != "float"

    def word_product(self, word: Sequence[int]) -> Mat2:
        """Product for a 1-based symbol word; the first symbol acts first."""
        return product(self._mats[s - 1] for s in word)

    def conjugate(self, r: Mat2) -> "MatrixSet":
        """``{R^-1 A R}``."""
        ri = r.inverse()
        return MatrixSet([ri @ m @ r for m in self._mats])

    def to_float(self) -> "MatrixSet":
        return MatrixSet([m.to_float() for m in self._mats])

    # JSON ------------------------------------------------------------------
    @classmethod
    def from_json(cls, obj) -> "MatrixSet":
        if not isinstance(obj, dict) or "matrices" not in obj:
            raise ValueError('matrix JSON must be an object with a "matrices" list')
        mats = []
        for k, rows in enumerate(obj["matrices"], 1):
            try:
                (a, b), (c, d) = rows
            except (TypeError, ValueError):
                raise ValueError(f"matrix {k} is not 2x2") from None
            mats.append(Mat2(*(parse_scalar(x) for x in (a, b, c, d))))
        return cls(mats)

    def to_json(self) -> dict:
        def enc(x):
            return x if isinstance(x, float) else format_scalar(x)

        return {"matrices": [[[enc(m.e11), enc(m.e12)], [enc(m.e21), enc(m.e22)]] for m in self._mats]}


def exact_entries(m: Mat2) -> bool:
    return all(is_exact(v) for v in m.entries)
