// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace trace_repair::detail {

// Conway polynomials over GF(p) of degree >= 2 with p^degree <= 2^20.
// Coefficients are little-endian (constant term first); the leading 1 is included.
// Degree 1 is not listed: it is x - g for the least primitive root g mod p.
struct ConwayEntry {
  std::uint32_t p;
  std::uint32_t degree;
  std::array<std::uint16_t, 21> coeffs;
};

inline constexpr std::array<ConwayEntry, 242> kConwayTable{{
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
    {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 14, {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {2, 15, {1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 16, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 17, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 18, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
    {2, 19, {1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 20, {1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 2, 1, 0, 2, 0, 1}},
    {3, 7, {1, 0, 2, 0, 0, 0, 0, 1}},
    {3, 8, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
    {3, 9, {1, 1, 2, 2, 0, 0, 0, 0, 0, 1}},
    {3, 10, {2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1}},
    {3, 11, {1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 12, {2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {5, 4, {2, 4, 4, 0, 1}},
    {5, 5, {3, 4, 0, 0, 0, 1}},
    {5, 6, {2, 0, 1, 4, 1, 0, 1}},
    {5, 7, {3, 3, 0, 0, 0, 0, 0, 1}},
    {5, 8, {2, 4, 3, 0, 1, 0, 0, 0, 1}},
    {7, 2, {3, 6, 1}},
    {7, 3, {4, 0, 6, 1}},
    {7, 4, {3, 4, 5, 0, 1}},
    {7, 5, {4, 1, 0, 0, 0, 1}},
    {7, 6, {3, 6, 4, 5, 1, 0, 1}},
    {7, 7, {4, 6, 0, 0, 0, 0, 0, 1}},
    {11, 2, {2, 7, 1}},
    {11, 3, {9, 2, 0, 1}},
    {11, 4, {2, 10, 8, 0, 1}},
    {11, 5, {9, 0, 10, 0, 0, 1}},
    {13, 2, {2, 12, 1}},
    {13, 3, {11, 2, 0, 1}},
    {13, 4, {2, 12, 3, 0, 1}},
    {13, 5, {11, 4, 0, 0, 0, 1}},
    {17, 2, {3, 16, 1}},
    {17, 3, {14, 1, 0, 1}},
    {17, 4, {3, 10, 7, 0, 1}},
    {19, 2, {2, 18, 1}},
    {19, 3, {17, 4, 0, 1}},
    {19, 4, {2, 11, 2, 0, 1}},
    {23, 2, {5, 21, 1}},
    {23, 3, {18, 2, 0, 1}},
    {23, 4, {5, 19, 3, 0, 1}},
    {29, 2, {2, 24, 1}},
    {29, 3, {27, 2, 0, 1}},
    {29, 4, {2, 15, 2, 0, 1}},
    {31, 2, {3, 29, 1}},
    {31, 3, {28, 1, 0, 1}},
    {31, 4, {3, 16, 3, 0, 1}},
    {37, 2, {2, 33, 1}},
    {37, 3, {35, 6, 0, 1}},
    {41, 2, {6, 38, 1}},
    {41, 3, {35, 1, 0, 1}},
    {43, 2, {3, 42, 1}},
    {43, 3, {40, 1, 0, 1}},
    {47, 2, {5, 45, 1}},
    {47, 3, {42, 3, 0, 1}},
    {53, 2, {2, 49, 1}},
    {53, 3, {51, 3, 0, 1}},
    {59, 2, {2, 58, 1}},
    {59, 3, {57, 5, 0, 1}},
    {61, 2, {2, 60, 1}},
    {61, 3, {59, 7, 0, 1}},
    {67, 2, {2, 63, 1}},
    {67, 3, {65, 6, 0, 1}},
    {71, 2, {7, 69, 1}},
    {71, 3, {64, 4, 0, 1}},
    {73, 2, {5, 70, 1}},
    {73, 3, {68, 2, 0, 1}},
    {79, 2, {3, 78, 1}},
    {79, 3, {76, 9, 0, 1}},
    {83, 2, {2, 82, 1}},
    {83, 3, {81, 3, 0, 1}},
    {89, 2, {3, 82, 1}},
    {89, 3, {86, 3, 0, 1}},
    {97, 2, {5, 96, 1}},
    {97, 3, {92, 9, 0, 1}},
    {101, 2, {2, 97, 1}},
    {101, 3, {99, 3, 0, 1}},
    {103, 2, {5, 102, 1}},
    {107, 2, {2, 103, 1}},
    {109, 2, {6, 108, 1}},
    {113, 2, {3, 101, 1}},
    {127, 2, {3, 126, 1}},
    {131, 2, {2, 127, 1}},
    {137, 2, {3, 131, 1}},
    {139, 2, {2, 138, 1}},
    {149, 2, {2, 145, 1}},
    {151, 2, {6, 149, 1}},
    {157, 2, {5, 152, 1}},
    {163, 2, {2, 159, 1}},
    {167, 2, {5, 166, 1}},
    {173, 2, {2, 169, 1}},
    {179, 2, {2, 172, 1}},
    {181, 2, {2, 177, 1}},
    {191, 2, {19, 190, 1}},
    {193, 2, {5, 192, 1}},
    {197, 2, {2, 192, 1}},
    {199, 2, {3, 193, 1}},
    {211, 2, {2, 207, 1}},
    {223, 2, {3, 221, 1}},
    {227, 2, {2, 220, 1}},
    {229, 2, {6, 228, 1}},
    {233, 2, {3, 232, 1}},
    {239, 2, {7, 237, 1}},
    {241, 2, {7, 238, 1}},
    {251, 2, {6, 242, 1}},
    {257, 2, {3, 251, 1}},
    {263, 2, {5, 261, 1}},
    {269, 2, {2, 268, 1}},
    {271, 2, {6, 269, 1}},
    {277, 2, {5, 274, 1}},
    {281, 2, {3, 280, 1}},
    {283, 2, {3, 282, 1}},
    {293, 2, {2, 292, 1}},
    {307, 2, {5, 306, 1}},
    {311, 2, {17, 310, 1}},
    {313, 2, {10, 310, 1}},
    {317, 2, {2, 313, 1}},
    {331, 2, {3, 326, 1}},
    {337, 2, {10, 332, 1}},
    {347, 2, {2, 343, 1}},
    {349, 2, {2, 348, 1}},
    {353, 2, {3, 348, 1}},
    {359, 2, {7, 358, 1}},
    {367, 2, {6, 366, 1}},
    {373, 2, {2, 369, 1}},
    {379, 2, {2, 374, 1}},
    {383, 2, {5, 382, 1}},
    {389, 2, {2, 379, 1}},
    {397, 2, {5, 392, 1}},
    {401, 2, {3, 396, 1}},
    {409, 2, {21, 404, 1}},
    {419, 2, {2, 418, 1}},
    {421, 2, {2, 417, 1}},
    {431, 2, {7, 430, 1}},
    {433, 2, {5, 432, 1}},
    {439, 2, {15, 436, 1}},
    {443, 2, {2, 437, 1}},
    {449, 2, {3, 444, 1}},
    {457, 2, {13, 454, 1}},
    {461, 2, {2, 460, 1}},
    {463, 2, {3, 461, 1}},
    {467, 2, {2, 463, 1}},
    {479, 2, {13, 474, 1}},
    {487, 2, {3, 485, 1}},
    {491, 2, {2, 487, 1}},
    {499, 2, {7, 493, 1}},
    {503, 2, {5, 498, 1}},
    {509, 2, {2, 508, 1}},
    {521, 2, {3, 515, 1}},
    {523, 2, {2, 522, 1}},
    {541, 2, {2, 537, 1}},
    {547, 2, {2, 543, 1}},
    {557, 2, {2, 553, 1}},
    {563, 2, {2, 559, 1}},
    {569, 2, {3, 568, 1}},
    {571, 2, {3, 570, 1}},
    {577, 2, {5, 572, 1}},
    {587, 2, {2, 583, 1}},
    {593, 2, {3, 592, 1}},
    {599, 2, {7, 598, 1}},
    {601, 2, {7, 598, 1}},
    {607, 2, {3, 606, 1}},
    {613, 2, {2, 609, 1}},
    {617, 2, {3, 612, 1}},
    {619, 2, {2, 618, 1}},
    {631, 2, {3, 629, 1}},
    {641, 2, {3, 635, 1}},
    {643, 2, {11, 641, 1}},
    {647, 2, {5, 645, 1}},
    {653, 2, {2, 649, 1}},
    {659, 2, {2, 655, 1}},
    {661, 2, {2, 660, 1}},
    {673, 2, {5, 672, 1}},
    {677, 2, {2, 672, 1}},
    {683, 2, {5, 682, 1}},
    {691, 2, {3, 686, 1}},
    {701, 2, {2, 697, 1}},
    {709, 2, {2, 705, 1}},
    {719, 2, {11, 715, 1}},
    {727, 2, {5, 725, 1}},
    {733, 2, {6, 732, 1}},
    {739, 2, {3, 734, 1}},
    {743, 2, {5, 742, 1}},
    {751, 2, {3, 749, 1}},
    {757, 2, {2, 753, 1}},
    {761, 2, {6, 758, 1}},
    {769, 2, {11, 765, 1}},
    {773, 2, {2, 772, 1}},
    {787, 2, {2, 786, 1}},
    {797, 2, {2, 793, 1}},
    {809, 2, {3, 799, 1}},
    {811, 2, {3, 806, 1}},
    {821, 2, {2, 816, 1}},
    {823, 2, {3, 821, 1}},
    {827, 2, {2, 821, 1}},
    {829, 2, {2, 828, 1}},
    {839, 2, {11, 838, 1}},
    {853, 2, {2, 852, 1}},
    {857, 2, {3, 850, 1}},
    {859, 2, {2, 858, 1}},
    {863, 2, {5, 862, 1}},
    {877, 2, {2, 873, 1}},
    {881, 2, {3, 869, 1}},
    {883, 2, {2, 879, 1}},
    {887, 2, {5, 885, 1}},
    {907, 2, {2, 903, 1}},
    {911, 2, {17, 909, 1}},
    {919, 2, {7, 910, 1}},
    {929, 2, {3, 917, 1}},
    {937, 2, {5, 934, 1}},
    {941, 2, {2, 940, 1}},
    {947, 2, {2, 943, 1}},
    {953, 2, {3, 947, 1}},
    {967, 2, {5, 965, 1}},
    {971, 2, {6, 970, 1}},
    {977, 2, {3, 972, 1}},
    {983, 2, {5, 981, 1}},
    {991, 2, {6, 989, 1}},
    {997, 2, {7, 995, 1}},
    {1009, 2, {11, 1008, 1}},
    {1013, 2, {3, 1006, 1}},
    {1019, 2, {2, 1015, 1}},
    {1021, 2, {10, 1020, 1}},
}};

}  // namespace trace_repair::detail
