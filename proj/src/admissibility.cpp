#include "jacobilab/admissibility.hpp"

#include <sstream>

namespace jacobilab {

int rho(std::uint64_t n) {
    if (n == 0) throw InvalidPattern("rho: n must be positive");
    int m = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++m;
    }
    const int b = m / 4;
    const int c = m % 4;
    return 8 * b + (1 << c);
}

AdmissibilityVerdict admissible(const MultiplicityPattern& pattern) {
    if (pattern.n < 3)
        throw InvalidPattern("admissible: n must be >= 3");
    if (pattern.q < 1 || pattern.p < pattern.q)
        throw InvalidPattern("admissible: need p >= q >= 1");
    if (pattern.p + pattern.q != pattern.n - 1)
        throw InvalidPattern("admissible: p + q must equal n - 1");

    const int bound = rho(static_cast<std::uint64_t>(pattern.n));
    AdmissibilityVerdict verdict;
    verdict.admissible = pattern.q < bound;
    std::ostringstream reason;
    if (verdict.admissible) {
        reason << "q = " << pattern.q << " < rho(" << pattern.n << ") = " << bound;
    } else {
        reason << "q = " << pattern.q << " >= rho(" << pattern.n << ") = " << bound
               << ": the sphere S^" << (pattern.n - 1)
               << " does not admit a continuous " << pattern.q
               << "-dimensional distribution";
    }
    verdict.reason = reason.str();
    return verdict;
}

const char* to_string(ScreenCode code) {
    switch (code) {
        case ScreenCode::OddImpossible: return "odd_impossible";
        case ScreenCode::TwiceOddOsserman: return "twice_odd_osserman";
        case ScreenCode::NoScreen: return "no_screen";
    }
    return "unknown";
}

ScreenVerdict dimension_screen(int n) {
    if (n < 3) throw InvalidPattern("dimension_screen: n must be >= 3");

    ScreenVerdict verdict;
    verdict.n = n;
    const int bound = rho(static_cast<std::uint64_t>(n));
    verdict.q_min = 1;
    verdict.q_max = bound - 1;
    if (n % 2 == 1) {
        verdict.code = ScreenCode::OddImpossible;
        verdict.message = "two-root impossible";
    } else if (n % 4 == 2) {
        verdict.code = ScreenCode::TwiceOddOsserman;
        verdict.message = "two-root => globally Osserman; q=1 forced";
    } else {
        verdict.code = ScreenCode::NoScreen;
        std::ostringstream msg;
        msg << "no screen; admissible q in [1, " << verdict.q_max << "]";
        verdict.message = msg.str();
    }
    return verdict;
}

}  // namespace jacobilab
