#pragma once

// Jacobi operator assembly and spectral classification: k-root detection,
// Osserman testing, k-stein invariants, eigenspace extraction.

#include <cstdint>
#include <optional>
#include <vector>

#include "jacobilab/curvature.hpp"
#include "jacobilab/linalg.hpp"

namespace jacobilab {

/// Clustered spectrum of the reduced Jacobi operator at a direction.
/// With exactly two clusters, mu_X is the smaller value and nu_X the larger;
/// p and q are their multiplicities. The literature normalizes p >= q (flipping
/// the tensor sign otherwise); we keep the smaller-value labeling and expose
/// p_ge_q instead.
struct SpectralProfile {
    Eigen::VectorXd point;
    EigenClusterSet clusters;
    double mu_X = 0.0;
    double nu_X = 0.0;
    int p = 0;
    int q = 0;

    bool two_root() const { return clusters.clusters.size() == 2; }
    bool p_ge_q() const { return p >= q; }
};

/// Orthonormal bases (columns, in the ambient space) of the two eigenspaces
/// M(X) and N(X) of the reduced Jacobi operator.
struct EigenspacePair {
    Eigen::MatrixXd M_basis;  // mu_X eigenspace, p columns
    Eigen::MatrixXd N_basis;  // nu_X eigenspace, q columns
};

struct WitnessPair {
    Eigen::VectorXd x1, x2;
    double deviation = 0.0;
};

struct KRootResult {
    bool uniform = false;           // same cluster structure at every sample
    int k = 0;                      // cluster count when uniform
    std::vector<int> multiplicities;
    std::optional<WitnessPair> witness;  // a mismatching pair when not uniform
};

struct OssermanResult {
    bool osserman = false;
    double max_deviation = 0.0;
    WitnessPair witness;  // directions attaining the extreme spread
};

struct SteinResult {
    std::vector<double> constants;  // C_1 ... C_kmax (sample means)
    double max_deviation = 0.0;     // max spread of any tr(J^k) across samples
    // p mu^k + q nu^k cross-check, available when the spectrum is uniformly
    // two-root across the samples.
    std::optional<std::vector<double>> formula_constants;
    double formula_gap = 0.0;
};

/// (J_X)_{ab} = sum_{i,j} R[b][i][j][a] x_i x_j. Zero x gives the zero matrix.
SymmetricMatrix jacobi_matrix(const CurvatureTensor& R, const Eigen::VectorXd& x);

/// J_X restricted to an orthonormal basis of x^perp.
SymmetricMatrix reduced_jacobi(const CurvatureTensor& R, const Eigen::VectorXd& x);

/// Eigenvalues of the reduced operator divided by e_x, clustered at rel_tol.
SpectralProfile spectral_profile(const CurvatureTensor& R,
                                 const Eigen::VectorXd& x, double rel_tol);

/// k = cluster count if identical (values may move, multiplicity signature may
/// not) across sampled unit directions; otherwise reports a witness pair.
KRootResult classify_k_root(const CurvatureTensor& R, int samples,
                            std::uint64_t seed, double rel_tol);

/// Osserman iff the sorted reduced eigenvalue vectors agree across samples
/// within rel_tol * scale. Sampling can refute, never prove; a positive
/// verdict means "consistent with Osserman at this sample count".
OssermanResult osserman_test(const CurvatureTensor& R, int samples,
                             std::uint64_t seed, double rel_tol);

/// C_k = tr(J_X^k) / e_X^k averaged over samples, with spread.
SteinResult k_stein_invariants(const CurvatureTensor& R, int k_max, int samples,
                               std::uint64_t seed);

/// Orthonormal eigenspace bases at a two-root direction.
/// Throws NotTwoRoot when the profile does not have exactly two clusters.
EigenspacePair eigenspaces(const CurvatureTensor& R, const Eigen::VectorXd& x,
                           double rel_tol);

/// Aggregated per-tensor verdicts; a pure function of (tensor, samples, seed,
/// rel_tol, k_max).
struct AnalysisReport {
    int dim = 0;
    SymmetryReport symmetry;
    KRootResult kroot;
    OssermanResult osserman;
    SteinResult stein;
    int samples = 0;
    std::uint64_t seed = 0;
    double rel_tol = 0.0;
    int k_max = 0;
};

AnalysisReport analyze(const CurvatureTensor& R, int samples, std::uint64_t seed,
                       double rel_tol, int k_max = 4);

}  // namespace jacobilab
