#pragma once

// Executable checks of the structural identities satisfied by two-root
// curvature tensors: duality, eigenvalue bounds, the eps_M decomposition
// formula, the rotation lemma, and extremal-set probes. Checks emit violation
// records; an empty list means every sampled identity held within tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jacobilab/spectral.hpp"

namespace jacobilab {

/// A single identity that failed, with the vectors involved.
struct ViolationRecord {
    std::string check;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    double magnitude = 0.0;
};

/// Estimated extrema of mu_X and nu_X over the unit sphere with witness
/// directions; sampling lower-bounds nu_max and upper-bounds mu_min.
struct ExtremaReport {
    double mu_min = 0.0, mu_max = 0.0;
    double nu_min = 0.0, nu_max = 0.0;
    Eigen::VectorXd witness_U;  // attains mu_min over the sample
    Eigen::VectorXd witness_W;  // attains nu_max over the sample
    int samples = 0;
    std::uint64_t seed = 0;
    // dim((Span{U} + M(U)) cap (Span{W} + N(W))); >= 1 is forced by dimension
    // count for two-root tensors.
    int intersection_dim = 0;
};

/// For sampled X, each reduced eigenvector Y of J_X must make X an eigenvector
/// of J_Y (Rayleigh-quotient form). Holds exactly for pointwise Osserman
/// tensors; genuinely fails on non-Osserman ones.
std::vector<ViolationRecord> duality_check(const CurvatureTensor& R, int samples,
                                           std::uint64_t seed, double rel_tol);

/// Checks mu_Y <= mu_X <= nu_Y for Y in M(X) and mu_Y <= nu_X <= nu_Y for
/// Y in N(X). Non-two-root samples are recorded as violations.
std::vector<ViolationRecord> eigenvalue_bounds_check(const CurvatureTensor& R,
                                                     int samples,
                                                     std::uint64_t seed,
                                                     double rel_tol);

/// Checks eps_M = eps_X (nu_Y - mu_X)/(nu_Y - mu_Y) for unit Y in M(X), where
/// X = M + N against M(Y) + N(Y), and the dual chain for Y in N(X).
std::vector<ViolationRecord> emex_check(const CurvatureTensor& R, int samples,
                                        std::uint64_t seed, double rel_tol);

/// For harvested dual pairs (J_X Y = lambda Y and J_Y X = lambda X) and random
/// alpha, beta, checks
///   J_{aX+bY}(b X - a Y) = eps_{aX+bY} lambda (b X - a Y).
/// Throws NoDualPairsFound when the harvest is empty.
std::vector<ViolationRecord> rotation_lemma_check(const CurvatureTensor& R,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  double rel_tol);

ExtremaReport extrema_probe(const CurvatureTensor& R, int samples,
                            std::uint64_t seed);

/// All probe sections for one tensor. Two-root-specific sections are skipped
/// (flagged) when the k-root pre-check does not find a uniform k = 2.
struct ProbeReport {
    int dim = 0;
    KRootResult kroot;
    std::vector<ViolationRecord> duality;
    std::vector<ViolationRecord> bounds;
    std::vector<ViolationRecord> emex;
    std::vector<ViolationRecord> rotation;
    std::optional<ExtremaReport> extrema;
    bool two_root_sections_skipped = false;
    bool rotation_skipped = false;  // no dual pairs harvested
    int samples = 0;
    std::uint64_t seed = 0;
    double rel_tol = 0.0;

    bool all_green() const;
};

ProbeReport probe(const CurvatureTensor& R, int samples, std::uint64_t seed,
                  double rel_tol);

}  // namespace jacobilab
