"""Published values used by ``verify`` and the acceptance tests.

Polynomials are coefficient lists, constant term first.
"""

from __future__ import annotations

from .algebra import BivarPoly, IntPoly

TIER_POLYS: dict[tuple[int, ...], list[int]] = {
    (1, 1, 1): [4, 1],
    (2, 2): [4, 1],
    (1, 1, 2): [11, 5, 1],
    (1, 1, 1, 1): [33, 20, 6, 1],
    (2, 3): [11, 5, 1],
    (1, 1, 3): [26, 16, 6, 1],
    (1, 2, 2): [66, 51, 22, 6, 1],
    (1, 1, 1, 2): [171, 152, 78, 28, 7, 1],
    (1, 1, 1, 1, 1): [456, 453, 260, 111, 35, 8, 1],
    (2, 4): [26, 16, 6, 1],
    (3, 3): [66, 51, 22, 6, 1],
    (1, 1, 4): [57, 42, 22, 7, 1],
    (1, 2, 3): [302, 308, 190, 85, 29, 7, 1],
    (2, 2, 2): [627, 719, 487, 243, 97, 30, 7, 1],
    (1, 1, 1, 3): [718, 801, 549, 281, 114, 36, 8, 1],
    (1, 1, 2, 2): [1533, 1882, 1378, 766, 346, 127, 37, 8, 1],
    (1, 1, 1, 1, 2): [3784, 4957, 3868, 2327, 1154, 479, 164, 45, 9, 1],
    (1, 1, 1, 1, 1, 1): [9460, 13139, 10805, 6921, 3691, 1681, 649, 209, 54, 10, 1],
}

# (n, m) -> (T, P)
COUNTS: dict[tuple[int, int], tuple[int, int]] = {
    (3, 1): (0, 0), (3, 2): (2, 2), (3, 3): (11, 5),
    (4, 1): (0, 0), (4, 2): (7, 7), (4, 3): (72, 51), (4, 4): (306, 60),
    (5, 1): (0, 0), (5, 2): (36, 36), (5, 3): (693, 585), (5, 4): (4304, 1748), (5, 5): (16274, 1324),
    (6, 1): (0, 0), (6, 2): (246, 246), (6, 3): (8868, 8130), (6, 4): (80496, 46500),
    (6, 5): (400200, 83940), (6, 6): (1414050, 46620),
}

# row k lists T(k, k), T(k+1, k), ..., T(9, k)
TRIANGLE: dict[int, list[int]] = {
    1: [1, 3, 6, 12, 20, 35, 54, 86, 128],
    2: [1, 4, 11, 24, 49, 89, 158, 262],
    3: [1, 5, 16, 41, 91, 186, 351],
    4: [1, 6, 22, 63, 155, 342],
}

# x-degree -> q coefficients
Q_EULERIAN: dict[int, dict[int, list[int]]] = {
    4: {0: [1], 1: [7, 3, 1], 2: [6, 4, 1], 3: [1]},
    5: {0: [1], 1: [15, 7, 3, 1], 2: [25, 25, 11, 4, 1], 3: [10, 10, 5, 1], 4: [1]},
    6: {
        0: [1],
        1: [31, 15, 7, 3, 1],
        2: [90, 107, 58, 31, 11, 4, 1],
        3: [65, 105, 76, 34, 16, 5, 1],
        4: [15, 20, 15, 6, 1],
        5: [1],
    },
}

STANLEY: dict[int, dict[int, list[int]]] = {
    3: {0: [1], 1: [0, 2, 2], 2: [0, 0, 0, 1]},
    4: {0: [1], 1: [0, 3, 4, 3, 1], 2: [0, 0, 1, 3, 4, 3], 3: [0, 0, 0, 0, 0, 0, 1]},
}

MAXMIN: dict[int, dict[int, list[int]]] = {
    4: {1: [1], 2: [4, 1], 3: [1]},
    5: {1: [1], 2: [11, 5, 1], 3: [11, 5, 1], 4: [1]},
    6: {1: [1], 2: [26, 16, 6, 1], 3: [66, 51, 22, 6, 1], 4: [26, 16, 6, 1], 5: [1]},
}

# leading coefficients of W_1 .. W_4, top-down
W_SERIES: dict[int, list[int]] = {
    1: [1, 3, 7, 15, 31, 63, 127],
    2: [1, 4, 11, 31, 65, 157, 298],
    3: [1, 5, 16, 41, 112, 244, 542],
    4: [1, 6, 22, 63, 155, 393, 869],
}
# how many of those are asserted at n <= 9
W_ASSERTED = {1: 5, 2: 5, 3: 4, 4: 5}
TRIANGLE_AGREEMENT = {1: 2, 2: 3, 3: 4, 4: 5}

CNAT_COUNTS = [1, 1, 4, 33, 456, 9460]


def bivar(table: dict[int, list[int]]) -> BivarPoly:
    return BivarPoly.from_x_coefficients({d: IntPoly(c) for d, c in table.items()})


def tier_poly_reference(p: tuple[int, ...]) -> IntPoly:
    return IntPoly(TIER_POLYS[tuple(p)])
