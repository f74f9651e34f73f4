"""Hand-classified matrix sets with their expected verdicts.

Each entry: (name, matrices, tag, extra) where extra is the certificate bound
for Bounded sets with a closed form, the witness rate for Linear sets, or None.
"""
from __future__ import annotations

from fractions import Fraction as F

from mgl import Mat2, MatrixSet

h, q, t3 = F(1, 2), F(1, 4), F(1, 3)
J = Mat2(1, 1, 0, 1)
ROT90 = Mat2(0, -1, 1, 0)
SWAP = Mat2(0, 1, 1, 0)
I = Mat2(1, 0, 0, 1)


def contracting_pair(beta, m):
    return [Mat2(1, m, 0, beta), Mat2(beta, m, 0, 1)]


SUITE = [
    ("jordan", [J], "Linear", F(1)),
    ("rotation90", [ROT90], "Bounded", None),
    ("det_minus_one_pair", [Mat2(1, 1, 0, -1), Mat2(1, 0, 0, -1)], "Linear", h),
    ("pair_half_one", contracting_pair(h, 1), "Bounded", F(9)),
    ("pair_quarter_two", contracting_pair(q, 2), "Bounded", F(121, 9)),
    ("pair_3q_half", contracting_pair(F(3, 4), h), "Bounded", F(9)),
    ("diagonal", [Mat2(1, 0, 0, h), Mat2(h, 0, 0, 1)], "Bounded", None),
    ("diagonal_flip", [Mat2(1, 0, 0, -1), Mat2(h, 0, 0, t3)], "Bounded", None),
    ("plus_minus_I_with_a0", [I, Mat2(-1, 0, 0, -1), Mat2(h, 1, 0, 1)], "Bounded", None),
    ("minus_I_with_a0", [Mat2(-1, 0, 0, -1), Mat2(1, 1, 0, t3)], "Bounded", None),
    ("jordan_plus_contraction", [J, Mat2(h, 0, 0, h)], "Linear", F(1)),
    ("scaled_jordan", [Mat2(2, 2, 0, 2)], "NotMarginal", None),
    ("expanding_diagonal", [Mat2(2, 0, 0, h)], "NotMarginal", None),
    ("swap_with_scalar", [SWAP, Mat2(h, 0, 0, h)], "Bounded", None),
    ("two_flips", [Mat2(1, 1, 0, -1), Mat2(-1, 0, 0, 1)], "Linear", h),
    ("swap_with_symmetric", [SWAP, Mat2(F(2, 3), t3, t3, F(2, 3))], "Bounded", None),
    ("rotation_with_scalar", [ROT90, Mat2(h, 0, 0, h)], "Bounded", None),
    ("golden", [Mat2(1, 1, 1, 0)], "NotMarginal", None),
    ("lower_jordan", [Mat2(1, 0, 1, 1)], "Linear", F(1)),
    ("lower_pair", [Mat2(1, 0, 0, h), Mat2(h, 0, 1, 1)], "Bounded", None),
    ("single_flip", [Mat2(1, 1, 0, -1)], "Bounded", None),
    ("flip_and_negative", [Mat2(1, 1, 0, -1), Mat2(-1, -1, 0, 1)], "Bounded", None),
    ("identity_only", [I, Mat2(-1, 0, 0, -1)], "Bounded", F(2)),
]

# rational rotation by the 3-4-5 angle
R345 = Mat2(F(3, 5), F(-4, 5), F(4, 5), F(3, 5))
R512 = Mat2(F(5, 13), F(-12, 13), F(12, 13), F(5, 13))


def matrix_set(mats) -> MatrixSet:
    return MatrixSet(mats)


def conjugates(mats):
    s = MatrixSet(mats)
    return [s.conjugate(R345), s.conjugate(R512)]
