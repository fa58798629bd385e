#pragma once

// Constructive inverse of the two-root classification with a simple root:
// recover (sigma, mu, P, frame, nu_i) from a tensor and certify the
// reconstruction R = sign * (-1/3 R^P + mu R^0).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jacobilab/admissibility.hpp"
#include "jacobilab/spectral.hpp"

namespace jacobilab {

/// Recovered structure: skew-adjoint P with canonical paired frame
/// (E_i, F_i), constants nu_1 >= ... >= nu_{n/2} > 0, shift mu and sign.
/// P(E_i) = sqrt(nu_i) F_i and P(F_i) = -sqrt(nu_i) E_i; -P^2 has eigenvalues
/// nu_i, each with even multiplicity.
struct SkewStructure {
    SkewEndomorphism P;
    int sign = +1;
    double mu = 0.0;
    Eigen::MatrixXd frame;     // columns E_1, F_1, ..., E_{n/2}, F_{n/2}
    std::vector<double> nus;   // per pair, non-increasing
};

/// Symmetric coefficient matrices A^{ab} with J_{ab}(X) = X^T A^{ab} X.
struct QuadraticFormFamily {
    int dim = 0;
    std::vector<Eigen::MatrixXd> forms;  // row-major a * dim + b

    const Eigen::MatrixXd& form(int a, int b) const {
        return forms[static_cast<std::size_t>(a) * dim + b];
    }
};

/// A^{ab}[i][j] = (R[b][i][j][a] + R[b][j][i][a]) / 2.
QuadraticFormFamily quadratic_form_family(const CurvatureTensor& R);

struct MuEstimate {
    double mu = 0.0;            // the multiplicity-(n-2) reduced eigenvalue
    double max_deviation = 0.0; // spread across samples
    int p = 0, q = 0;           // observed multiplicities (q = 1)
};

/// Repeated reduced eigenvalue of a simple-root two-root tensor, checked
/// constant across samples. Requires n > 4 and a uniform k = 2, q = 1 spectrum
/// (NotSimpleRootTwoRoot / MuNotConstant otherwise).
MuEstimate estimate_mu(const CurvatureTensor& R, int samples, std::uint64_t seed,
                       double rel_tol);

struct ExtractedP {
    SkewEndomorphism P;
    int sign = +1;  // sigma: sign of the nonzero eigenvalue of the shifted Jacobi
};

/// Shifts R' = R - mu R0 and recovers P from the rank-one structure of the
/// shifted quadratic-form family: sigma A^{aa} = p_a p_a^T, off-diagonal data
/// fixes relative signs. Verifies skewness and the eigenvector property on
/// fresh samples. Throws RankExceeded, SignInconsistency, SkewnessViolation.
ExtractedP extract_p(const CurvatureTensor& R, double mu, double rel_tol,
                     std::uint64_t seed = 0x657874726163ULL);

struct FrameResult {
    Eigen::MatrixXd frame;
    std::vector<double> nus;
};

/// Canonical paired frame of a nonsingular skew P: eigendecompose -P^2, pick
/// E_i inside each eigenblock, set F_i = P(E_i)/sqrt(nu_i). Throws SingularP
/// for (numerically) singular P and OddMultiplicity on eigensolver breakdown.
FrameResult canonical_frame(const SkewEndomorphism& P, double rel_tol);

/// sign * (-1/3 R^P + mu R^0).
CurvatureTensor reconstruct(const SkewStructure& structure);

enum class PipelineStage {
    DimensionScreen,
    KRootClassification,
    Admissibility,
    MuEstimation,
    PExtraction,
    FrameConstruction,
    Certified
};

const char* to_string(PipelineStage stage);

/// Full pipeline outcome: either a certified structure with its componentwise
/// reconstruction residual, or the first refutation with a witness message.
struct PipelineReport {
    bool certified = false;
    PipelineStage stage = PipelineStage::DimensionScreen;
    std::string message;
    std::optional<SkewStructure> structure;
    double residual = 0.0;
    std::optional<MuEstimate> mu_estimate;
    int samples = 0;
    std::uint64_t seed = 0;
    double rel_tol = 0.0;
};

/// Screens (dimension parity, k-root count, Hurwitz-Radon bound, simple root),
/// then mu -> P -> frame -> reconstruct -> residual.
PipelineReport classify_two_root_simple(const CurvatureTensor& R, int samples,
                                        std::uint64_t seed, double rel_tol);

}  // namespace jacobilab
