"""Published reference systems: exponent matrices, inverses, series rows, costs."""

from fractions import Fraction

SYSTEMS = {
    (2, 3): dict(
        X=[[8, -5], [3, -2]],
        Xinv=[[2, -5], [3, -8]],
        S=[
            [278133806980282, -46355624995421, 742586, 4826809, 104068027861696512],
            [12705086, -2117503, -2, 1, 161803008],
        ],
        cost=0.759456,
    ),
    (2, 5): dict(
        X=[[-7, 3], [-2, 1]],
        Xinv=[[-1, 3], [-2, 7]],
        S=[
            [9327029143014, -1554504843507, -486, 27, 65545216000000],
            [520542, -86751, 2, 1, 3499200],
        ],
        cost=0.811450,
    ),
    (2, 3, 7): dict(
        X=[[-6, 2, 1], [-4, -1, 2], [-5, 5, -1]],
        Xinv=[[-9, 7, 5], [-14, 11, 8], [-25, 20, 14]],
        S=[
            [297314599426, -49552433153, -2, 1, 28318630330368],
            [77272372606, -12878728703, 2, 1, 5621365951488],
            [199355237389946, -33225832325053, 4952198, 47045881, 69785645582757888],
        ],
        cost=0.909610,
    ),
    (2, 3, 11): dict(
        X=[[-1, 5, -2], [-5, 1, 1], [-8, 5, 0]],
        Xinv=[[5, 10, -7], [8, 16, -11], [17, 35, -24]],
        S=[
            [241517233468190, -40252872244375, 2, 1, 87851769180634800],
            [10438496510, -1739749375, 2, 1, 508836556800],
            [278133806980282, -46355624995421, -742586, 4826809, 104068027861696512],
        ],
        cost=0.838056,
    ),
    (2, 3, 13): dict(
        X=[[-1, 3, -1], [-1, -4, 2], [-8, 5, 0]],
        Xinv=[[10, 5, -2], [16, 8, -3], [37, 19, -7]],
        S=[
            [3761526494, -626921047, 2, 1, 149502935088],
            [35732110926898, -5955351291329, 33614, 117649, 8869174125759792],
            [278133806980282, -46355624995421, -742586, 4826809, 104068027861696512],
        ],
        cost=0.966545,
    ),
    (2, 3, 5): dict(
        # first row sign corrected to agree with the inverse and series table
        X=[[-4, 4, -1], [-7, 0, 3], [-1, 5, -3]],
        Xinv=[[15, -7, -12], [24, -11, -19], [35, -16, -28]],
        S=[
            [973517952638, -162252991999, 2, 1, 117550781107200],
            [9327029143014, -1554504843507, -486, 27, 65545216000000],
            [262018021085614, -43669669391807, -33614, 117649, 96874652706750000],
        ],
        cost=0.819035,
    ),
    (2, 3, 17): dict(
        X=[[-5, -2, 2], [-8, 5, 0], [-1, -2, 1]],
        Xinv=[[5, -2, -10], [8, -3, -16], [21, -8, -41]],
        S=[
            [575598165481726, -95933027579903, 2, 1, 249089856719597568],
            [278133806980282, -46355624995421, -742586, 4826809, 104068027861696512],
            [472053890, -78675625, -2, 1, 12388042800],
        ],
        cost=0.880169,
    ),
    (2, 3, 5, 19): dict(
        X=[[-3, -2, -1, 2], [-5, -1, 1, 1], [-4, 4, -1, 0], [-1, 5, -3, 0]],
        Xinv=[[7, -14, 15, -12], [11, -22, 24, -19], [16, -32, 35, -28], [30, -59, 64, -51]],
        S=[
            [1753547120930878, -292257853487999, 2, 1, 948229997617324800],
            [2287649600258, -381274933249, -2, 1, 327702810931200],
            [973517952638, -162252991999, 2, 1, 117550781107200],
            [262018021085614, -43669669391807, -33614, 117649, 96874652706750000],
        ],
        cost=0.971132,
    ),
}

# single-log coefficient vectors over the series of each system
COMBINATIONS = {
    (2, 3): {2: [2, -5], 3: [3, -8]},
    (2, 5): {10: [-3, 10], 5: [-2, 7], 2: [-1, 3]},
    (2, 3, 7): {7: [-25, 20, 14]},
    (2, 3, 11): {11: [17, 35, -24]},
    (2, 3, 13): {13: [37, 19, -7]},
    (2, 3, 5): {3: [24, -11, -19], 5: [35, -16, -28], 10: [50, -23, -40], 15: [59, -27, -47]},
    (2, 3, 17): {17: [21, -8, -41]},
    (2, 3, 5, 19): {19: [30, -59, 64, -51]},
}

# which system computes which logarithm at high precision
DIGIT_TARGETS = {2: (2, 3), 3: (2, 3), 5: (2, 5), 7: (2, 3, 7), 10: (2, 5), 11: (2, 3, 11)}

# first primes: input bits and the best total cost reported for each n
PRIME_COSTS = {2: (32, 1.014), 3: (64, 0.819), 4: (96, 0.694), 5: (96, 0.779), 6: (128, 0.756)}

FIVE_PRIMES = (2, 3, 5, 7, 11)
FIVE_PRIMES_X64 = [
    [-3, 2, -1, 2, -1],
    [-7, -1, 1, 1, 1],
    [-1, 5, 0, 0, -2],
    [-4, 0, 2, 1, -1],
    [0, -5, 1, 2, 0],
]
FIVE_PRIMES_TOTAL = 1.02940
FIVE_PRIMES_PER_LOG = 0.205880

LARGE_PRIME = 16290047
LARGE_BASIS = (2, 3, 5, LARGE_PRIME)
LARGE_X = [[0, -1, 11, -1], [-15, 8, 1, 0], [-8, -13, 2, 1], [-9, 13, -5, 0]]
LARGE_BITS = 192
LARGE_COMBINATION = [-1270, 2373, -1269, -2827]


def frac_rows(rows):
    return [[Fraction(c) for c in r] for r in rows]
