#pragma once

// Hurwitz-Radon arithmetic and dimension/multiplicity screens for two-root
// eigenvalue patterns.

#include <cstdint>
#include <string>

#include "jacobilab/errors.hpp"

namespace jacobilab {

/// Hurwitz-Radon number: write n = odd * 2^(4b+c) with 0 <= c <= 3 and return
/// 8b + 2^c. Bounds the dimensions of continuous distributions on spheres.
int rho(std::uint64_t n);

/// Eigenvalue multiplicities (p, q) of a candidate two-root spectrum in
/// dimension n, normalized to p >= q >= 1 with p + q = n - 1.
struct MultiplicityPattern {
    int n = 0;
    int p = 0;
    int q = 0;
};

struct AdmissibilityVerdict {
    bool admissible = false;
    std::string reason;
};

/// Admissible iff q < rho(n): the unit sphere carries no continuous
/// q-dimensional distribution otherwise, so the pattern cannot occur.
/// Throws InvalidPattern when the pattern invariants fail.
AdmissibilityVerdict admissible(const MultiplicityPattern& pattern);

enum class ScreenCode {
    OddImpossible,      // odd n: no two-root tensor at all
    TwiceOddOsserman,   // n = 2 mod 4: q = 1 forced, globally Osserman
    NoScreen            // n = 0 mod 4: open territory
};

struct ScreenVerdict {
    int n = 0;
    ScreenCode code = ScreenCode::NoScreen;
    std::string message;
    int q_min = 0;  // admissible q range [q_min, q_max]; empty when q_max < q_min
    int q_max = 0;
};

ScreenVerdict dimension_screen(int n);

const char* to_string(ScreenCode code);

}  // namespace jacobilab
