"""Exact integer coefficient tables for the closed-form edge-density moments.

Polynomials are written highest degree first.  Every piece is a
:class:`~pepcd.asymptotics.piecewise.RationalPiece` kept in the factored form
of its published expression.

Three entries differ from the published text (tests/test_tables.py pins
them):

* the mean of the AND kernel on [4/3, 3/2) and of the OR kernel on [3/2, 2)
  carry an overall minus sign in front of the whole numerator; this is the
  form implied by the factored kernel variances and the only one that is
  continuous and satisfies Var = p(1 - p);
* the AND covariance on [4/3, (6+sqrt15)/7) uses the expression of the next
  interval, not the previous one, as the numerical-integration oracle shows.
"""

from .piecewise import Surd, piece as _piece

# common linear and quadratic factors
_R = (1, 0)
_RP1 = (1, 1)
_RP2 = (1, 2)
_RM1 = (1, -1)
_ONE_MINUS_R = (-1, 1)
_Q1 = (2, 0, 1)  # 2r^2 + 1
_Q2 = (1, 0, 1)  # r^2 + 1
_Q3 = (1, 0, -2)  # r^2 - 2
_Q4 = (2, 0, -1)  # 2r^2 - 1

MEAN_BREAKPOINTS = (Surd(1), Surd(4, s=3), Surd(3, s=2), Surd(2))

NU_BREAKPOINTS = (
    Surd(1),
    Surd(0, 2, 3, 3),  # 2/sqrt(3)
    Surd(6, s=5),
    Surd(-1, 1, 5, 1),  # sqrt(5) - 1
    Surd(6, 2, 2, 7),
    Surd(4, s=3),
    Surd(6, 1, 15, 7),
    Surd(3, s=2),
    Surd(1, 1, 5, 2),  # golden ratio
    Surd(2, 1, 2, 2),  # 1 + 1/sqrt(2)
    Surd(2),
)

# --- means -----------------------------------------------------------------

_PA1 = (5, -148, 245, -178, -232, 128)
_PA2 = (101, -801, 1302, -732, -536, 672)
_PA3 = (1, -13, 30, 148, -448, 264, 288, -368, 96)
_PA4 = (1, 3, 2, -2)

_PO1 = (47, -195, 860, -846, -108, 720, -256)
_PO2 = (175, -579, 1450, -732, -536, 672)
_PO3 = (3, -7, -30, 84, -264, 304, 144, -368, 96)
_PO4 = (1, 1, 0, 0, -6, 2)

MEAN_AND = (
    _piece((1, 54), [(_ONE_MINUS_R, 1), (_PA1, 1)], [(_R, 2), (_RP2, 1), (_RP1, 1)]),
    _piece((-1, 216), [(_PA2, 1)], [(_R, 1), (_RP2, 1), (_RP1, 1)]),
    _piece((1, 8), [(_PA3, 1)], [(_R, 4), (_RP2, 1), (_RP1, 1)]),
    _piece(1, [(_PA4, 1), (_RM1, 2)], [(_R, 4), (_RP1, 1)]),
)

MEAN_OR = (
    _piece((1, 108), [(_PO1, 1)], [(_R, 2), (_RP2, 1), (_RP1, 1)]),
    _piece((1, 216), [(_PO2, 1)], [(_R, 1), (_RP2, 1), (_RP1, 1)]),
    _piece((-1, 8), [(_PO3, 1)], [(_R, 4), (_RP2, 1), (_RP1, 1)]),
    _piece(1, [(_PO4, 1)], [(_R, 4), (_RP1, 1)]),
)

# --- kernel variances ------------------------------------------------------

VAR_AND = (
    _piece((-1, 2916),
           [((5, -153, 393, -423, -54, 360, -128), 1),
            ((5, -153, 447, -261, 54, 360, -128), 1)],
           [(_R, 4), (_RP2, 2), (_RP1, 2)]),
    _piece((-1, 46656),
           [(_PA2, 1), ((101, -801, 1518, -84, -104, 672), 1)],
           [(_R, 2), (_RP2, 2), (_RP1, 2)]),
    _piece((-1, 64),
           [(_PA3, 1), ((1, -13, 22, 124, -464, 264, 288, -368, 96), 1)],
           [(_R, 8), (_RP2, 2), (_RP1, 2)]),
    _piece(1,
           [((1, 1, -3, -3, 6, -2), 1), ((3, 3, -6, 2), 1)],
           [(_R, 8), (_RP1, 2)]),
)

VAR_OR = (
    _piece((-1, 11664),
           [(_PO1, 1), ((47, -195, 752, -1170, -324, 720, -256), 1)],
           [(_R, 4), (_RP2, 2), (_RP1, 2)]),
    _piece((-1, 46656),
           [(_PO2, 1), ((175, -579, 1234, -1380, -968, 672), 1)],
           [(_R, 2), (_RP2, 2), (_RP1, 2)]),
    _piece((-1, 64),
           [(_PO3, 1), ((3, -7, -22, 108, -248, 304, 144, -368, 96), 1)],
           [(_R, 8), (_RP2, 2), (_RP1, 2)]),
    _piece(2, [(_PO4, 1), ((3, -1), 1)], [(_R, 8), (_RP1, 2)]),
)

# --- kernel covariances (nu) -----------------------------------------------

_AND1 = (
        972, 8748, 44456, 140328, 121371, -412117, -27145, -4503501, 1336147, 10640999,
        -982009, -6677105, -2274458, -1150162, 249126, 1232530, 1234372, 226776,
        -184944, -81920,
    )

_AND2 = (
        486, 3402, -269, -45155, -118850, 443518, 3251855, -13836295, 13434672,
        11140788, -27667544, 13293088, 7159710, -13013598, 4185440, 3262952, 586636,
        -1616444, -680120, -55952, 219936, 49152,
    )

_AND3 = (
        486, 3402, -269, -45155, -118850, 443518, 2751855, -13736295, 18084672, 8770788,
        -43009544, 24604048, 27137438, -30889822, -2832544, 11101160, -4168820, 2364868,
        2305864, -3041936, 219936, 49152,
    )

_AND4 = (
        3632, 25632, -60328, -441888, 1353430, -297666, -4791125, 12849927, -10894618,
        -26295324, 62283823, -2280753, -81700012, 32551926, 39974410, -11284026,
        -5806580, -9167580, -2004944, 4646688, 1931776, -489024, -98304,
    )

_AND5 = (
        3632, 25632, -49432, -364992, 958940, -1167012, 1200518, 5424126, -23566328,
        23837088, 11797395, -41623065, 39261953, -8239197, -30178496, 27901506,
        -4936170, 61038, 4719720, -5513952, 340736, 23328, 65536,
    )

_AND7 = (
        1562, -11142, -103099, 2105697, -9774118, 10220280, 27825711, -69243129,
        81624200, -76052574, -65530400, 262451196, -178092280, -69106464, 158439568,
        -97568688, 12246288, 17591952, -21111616, 15628032, -2545664, 993024,
    )

_AND8 = (
        2, -30, 281, -2395, 8770, 29528, -268053, 245667, 2066216, -5313494, -1589216,
        18512684, -18946136, -2665248, 22789584, -32987760, 20482512, 13109584,
        -28084416, 17326976, -3864576, -4579328, 6666240, -3576320, 635904, -116736,
        61440,
    )

_AND9 = (
        2, -30, 281, -2395, 8258, 31064, -262677, 225443, 2052136, -5219030, -1608928,
        18337836, -18837080, -2598688, 22736336, -32858736, 20384720, 12930896,
        -27988416, 17416832, -3862784, -4575488, 6638848, -3603200, 640512, -107520,
        63488,
    )

_AND10 = (
        2, -32, 307, -2612, 11572, 21934, -328867, 524994, 2446870, -8676180, -437020,
        36944680, -40677696, -44860384, 106256352, -15515040, -98636848, 66358080,
        27142272, -42614272, 7781120, 7327232, -3388672, 430592, -171008, 63488,
    )

_AND11 = (
        30, 90, -127, -621, 320, 1568, -858, -1370, 909, 295, -292, 44, 6, -2,
    )

_OR1 = (
        1458, 13122, 50731, -84225, -19193, -1823223, 5576151, 2978697, -33432692,
        37427862, 15883834, -60944766, 49876417, -1754523, -36606859, 32338215,
        -10290256, -2234754, 7085471, -5608569, 1645826, -132876, 30824,
    )

_OR23 = (
        1458, 13122, 62825, -175011, 156014, -3300900, 11053023, 5055135, -67685050,
        75243552, 33155180, -120628524, 99831906, -4883958, -74801558, 64360782,
        -19812000, -3667716, 14541630, -11254002, 3070468, -413208, 28880,
    )

_OR4 = (
        972, 8748, 29590, -149106, -36820, -986280, 5942884, 2883672, -47189711,
        43450125, 85975304, -156173934, 27378901, 123606417, -152209261, 64653597,
        56621894, -88962768, 43754559, -5940597, -13006396, 17019366, -7037340, 413208,
        -28880,
    )

_OR5 = (
        972, 8748, 31534, -131610, 261546, -1552026, 3745643, 4573731, -29416804,
        26163354, 19600850, -43126062, 31497249, -7381467, -22237963, 26778663,
        -9107024, -115074, 3136927, -5055609, 2292994, 14580, -1944,
    )

_OR6 = (
        486, -7290, -181459, 1024401, -2691213, 3921057, 1844321, -33347697, 80028903,
        -29292735, -98093906, 125034492, -46658244, -57216612, 88057996, -26383068,
        -12851392, 14179848, -8656508, 1593828, 134136, -58320, 7776,
    )

_OR7 = (
        486, -7776, -174169, 1205860, -4656806, 8763566, 7460036, -63559490, 91134324,
        18516450, -122708655, 18577230, 80410332, -19357704, -39129236, 75311048,
        -77449360, 4053376, 48283912, -40690240, 17736336, -4315680, 544320, -31104,
    )

_OR8 = (
        2, -30, -161, 107, 4137, -10685, 8367, 78713, -450859, 697707, 517846, -3723120,
        6565124, -1468692, -8695792, 9535720, -6773160, 526744, 10691376, -7797264,
        1137696, 523712, -2687872, 1701888, -245760,
    )

_OR9 = (
        2, -32, -129, 236, 4157, -15610, 21289, 67536, -511355, 1161830, -634128,
        -3001568, 9512164, -11014136, 2344968, 7126240, -13850504, 14466592, -3823216,
        -4018976, 5155776, -4633984, 1959808, -244480, -3584, -1024,
    )

_OR10 = (
        2, -34, -101, 433, 5400, -26982, 23049, 166787, -717366, 1196092, 89468,
        -5130844, 12748688, -11274744, -12243496, 33980568, -14886656, -19910592,
        20667776, -1262208, -5402752, 2217088, -235776, -2560, -1024,
    )

_OR11 = (
        180, -48, -648, 396, 214, -190, 39, -4, 1,
    )

_THETA_AND_67 = _piece((1, 466560), [(_AND7, 1)], [(_RP2, 3), (_Q1, 1), (_Q2, 1), (_RP1, 3), (_R, 5)])
_THETA_OR_23 = _piece((-1, 116640), [(_OR23, 1)], [(_Q2, 1), (_Q1, 1), (_RP1, 3), (_RP2, 3), (_R, 6)])

NU_AND = (
    _piece((-1, 58320), [(_RM1, 2), (_AND1, 1)], [(_Q1, 1), (_RP2, 2), (_RP1, 3), (_R, 6)]),  # 1
    _piece((-1, 116640), [(_AND2, 1)], [(_Q1, 1), (_RP2, 2), (_RP1, 3), (_R, 6)]),  # 2
    _piece((-1, 116640), [(_AND3, 1)], [(_Q1, 1), (_RP2, 2), (_RP1, 3), (_R, 6)]),  # 3
    _piece((-1, 58320), [(_AND4, 1)], [(_RP2, 3), (_Q3, 1), (_Q1, 1), (_RP1, 3), (_R, 6)]),  # 4
    _piece((-1, 58320), [(_AND5, 1)], [(_RP2, 3), (_Q1, 1), (_Q2, 1), (_RP1, 3), (_R, 6)]),  # 5
    _THETA_AND_67,  # 6: same expression as 7
    _THETA_AND_67,  # 7
    _piece((-1, 1920), [(_AND8, 1)], [(_RP2, 3), (_Q2, 1), (_Q1, 1), (_RP1, 3), (_R, 10)]),  # 8
    _piece((-1, 1920), [(_AND9, 1)], [(_RP2, 3), (_Q2, 1), (_Q1, 1), (_RP1, 3), (_R, 10)]),  # 9
    _piece((-1, 1920), [(_AND10, 1)], [(_RP2, 3), (_RM1, 1), (_RP1, 3), (_Q4, 1), (_R, 10)]),  # 10
    _piece((1, 15), [(_AND11, 1)], [(_Q4, 1), (_RP1, 3), (_R, 10)]),  # 11
)

NU_OR = (
    _piece((-1, 58320), [(_OR1, 1)], [(_Q2, 1), (_Q1, 1), (_RP1, 3), (_RP2, 3), (_R, 6)]),  # 1
    _THETA_OR_23,  # 2
    _THETA_OR_23,  # 3
    _piece((-1, 58320), [(_OR4, 1)], [(_Q2, 1), (_Q1, 1), (_Q3, 1), (_RP1, 3), (_RP2, 3), (_R, 6)]),  # 4
    _piece((-1, 58320), [(_OR5, 1)], [(_Q2, 1), (_Q1, 1), (_RP1, 3), (_RP2, 3), (_R, 6)]),  # 5
    _piece((1, 233280), [(_OR6, 1)], [(_Q2, 1), (_Q1, 1), (_RP1, 3), (_RP2, 3), (_R, 6)]),  # 6
    _piece((1, 233280), [(_OR7, 1)], [(_RP2, 3), (_Q2, 1), (_Q1, 1), (_RP1, 3), (_RM1, 1), (_R, 6)]),  # 7
    _piece((1, 960), [(_OR8, 1)], [(_RP2, 3), (_Q2, 1), (_Q1, 1), (_RP1, 3), (_R, 8)]),  # 8
    _piece((1, 960), [(_OR9, 1)], [(_Q1, 1), (_RP1, 2), (_RP2, 3), (_Q2, 1), (_R, 10)]),  # 9
    _piece((1, 960), [(_OR10, 1)], [(_Q4, 1), (_RP2, 3), (_RM1, 1), (_RP1, 2), (_R, 10)]),  # 10
    _piece((2, 15), [(_OR11, 1)], [(_Q4, 1), (_RP1, 2), (_R, 10)]),  # 11
)
