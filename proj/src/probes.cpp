#include "jacobilab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jacobilab {

namespace {

double violation_scale(const CurvatureTensor& R) { return 1.0 + R.max_abs(); }

struct DualPair {
    Eigen::VectorXd x, y;
    double lambda;
};

// Dual pairs (X, Y) with J_X Y = lambda Y and J_Y X = lambda X, harvested from
// reduced eigenvectors whose Rayleigh quotient matches back.
std::vector<DualPair> harvest_dual_pairs(const CurvatureTensor& R, int samples,
                                         std::uint64_t seed, double rel_tol) {
    const auto points = sample_unit_sphere(R.dim(), samples, seed);
    const double tol = rel_tol * violation_scale(R);
    std::vector<DualPair> pairs;
    for (const auto& x : points) {
        const Eigen::MatrixXd basis = orthonormal_complement(x);
        const SymEigenResult eig = sym_eigen(reduced_jacobi(R, x));
        for (Eigen::Index c = 0; c < eig.values.size(); ++c) {
            const Eigen::VectorXd y = basis * eig.vectors.col(c);
            const Eigen::VectorXd jyx = jacobi_matrix(R, y).dense() * x;
            const double back = x.dot(jyx);
            if ((jyx - back * x).norm() > tol) continue;
            if (std::abs(back - eig.values[c]) > tol) continue;
            pairs.push_back({x, y, eig.values[c]});
        }
    }
    return pairs;
}

}  // namespace

std::vector<ViolationRecord> duality_check(const CurvatureTensor& R, int samples,
                                           std::uint64_t seed, double rel_tol) {
    const auto points = sample_unit_sphere(R.dim(), samples, seed);
    const double tol = rel_tol * violation_scale(R);
    std::vector<ViolationRecord> violations;
    for (const auto& x : points) {
        const Eigen::MatrixXd basis = orthonormal_complement(x);
        const SymEigenResult eig = sym_eigen(reduced_jacobi(R, x));
        for (Eigen::Index c = 0; c < eig.values.size(); ++c) {
            const Eigen::VectorXd y = basis * eig.vectors.col(c);
            const Eigen::VectorXd jyx = jacobi_matrix(R, y).dense() * x;
            const double rayleigh = x.dot(jyx);
            const double residual = (jyx - rayleigh * x).norm();
            if (residual > tol)
                violations.push_back({"duality", x, y, residual});
        }
    }
    return violations;
}

std::vector<ViolationRecord> eigenvalue_bounds_check(const CurvatureTensor& R,
                                                     int samples,
                                                     std::uint64_t seed,
                                                     double rel_tol) {
    const auto points = sample_unit_sphere(R.dim(), samples, seed);
    const double tol = rel_tol * violation_scale(R);
    std::vector<ViolationRecord> violations;
    for (const auto& x : points) {
        const SpectralProfile px = spectral_profile(R, x, rel_tol);
        if (!px.two_root()) {
            violations.push_back({"bounds:not_two_root", x, x, 1.0});
            continue;
        }
        const EigenspacePair spaces = eigenspaces(R, x, rel_tol);
        auto check_side = [&](const Eigen::MatrixXd& side, double value,
                              const char* name) {
            for (Eigen::Index c = 0; c < side.cols(); ++c) {
                const Eigen::VectorXd y = side.col(c);
                const SpectralProfile py = spectral_profile(R, y, rel_tol);
                if (!py.two_root()) {
                    violations.push_back({"bounds:not_two_root", x, y, 1.0});
                    continue;
                }
                const double excess =
                    std::max(py.mu_X - value, value - py.nu_X);
                if (excess > tol)
                    violations.push_back({name, x, y, excess});
            }
        };
        check_side(spaces.M_basis, px.mu_X, "bounds:M");
        check_side(spaces.N_basis, px.nu_X, "bounds:N");
    }
    return violations;
}

std::vector<ViolationRecord> emex_check(const CurvatureTensor& R, int samples,
                                        std::uint64_t seed, double rel_tol) {
    const auto points = sample_unit_sphere(R.dim(), samples, seed);
    const double tol = rel_tol * violation_scale(R);
    std::vector<ViolationRecord> violations;
    for (const auto& x : points) {
        const SpectralProfile px = spectral_profile(R, x, rel_tol);
        if (!px.two_root()) {
            violations.push_back({"emex:not_two_root", x, x, 1.0});
            continue;
        }
        const EigenspacePair spaces = eigenspaces(R, x, rel_tol);
        auto check_side = [&](const Eigen::MatrixXd& side, bool m_side) {
            for (Eigen::Index c = 0; c < side.cols(); ++c) {
                const Eigen::VectorXd y = side.col(c);
                const SpectralProfile py = spectral_profile(R, y, rel_tol);
                if (!py.two_root()) {
                    violations.push_back({"emex:not_two_root", x, y, 1.0});
                    continue;
                }
                const EigenspacePair spaces_y = eigenspaces(R, y, rel_tol);
                double predicted, actual;
                if (m_side) {
                    // eps_M = eps_X (nu_Y - mu_X)/(nu_Y - mu_Y)
                    predicted = (py.nu_X - px.mu_X) / (py.nu_X - py.mu_X);
                    actual = (spaces_y.M_basis.transpose() * x).squaredNorm();
                } else {
                    // eps_N = eps_X (mu_Y - nu_X)/(mu_Y - nu_Y)
                    predicted = (py.mu_X - px.nu_X) / (py.mu_X - py.nu_X);
                    actual = (spaces_y.N_basis.transpose() * x).squaredNorm();
                }
                const double gap = std::abs(actual - predicted);
                if (gap > tol)
                    violations.push_back(
                        {m_side ? "emex:M" : "emex:N", x, y, gap});
            }
        };
        check_side(spaces.M_basis, true);
        check_side(spaces.N_basis, false);
    }
    return violations;
}

std::vector<ViolationRecord> rotation_lemma_check(const CurvatureTensor& R,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  double rel_tol) {
    const auto pairs = harvest_dual_pairs(R, samples, seed, rel_tol);
    if (pairs.empty())
        throw NoDualPairsFound("rotation_lemma_check: no dual pairs harvested");

    const double tol = rel_tol * violation_scale(R);
    std::mt19937_64 rng(seed ^ 0x726f746174656ULL);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);

    std::vector<ViolationRecord> violations;
    for (const auto& pair : pairs) {
        for (int rep = 0; rep < 2; ++rep) {
            const double alpha = coeff(rng);
            const double beta = coeff(rng);
            const Eigen::VectorXd z = alpha * pair.x + beta * pair.y;
            const double ez = z.squaredNorm();
            if (ez < 1e-8) continue;
            // eps_X = eps_Y = 1 for unit pairs
            const Eigen::VectorXd w = beta * pair.x - alpha * pair.y;
            const Eigen::VectorXd lhs = jacobi_matrix(R, z).dense() * w;
            const double residual = (lhs - ez * pair.lambda * w).norm();
            if (residual > tol * std::max(1.0, ez))
                violations.push_back({"rotation_lemma", pair.x, pair.y, residual});
        }
    }
    return violations;
}

ExtremaReport extrema_probe(const CurvatureTensor& R, int samples,
                            std::uint64_t seed) {
    constexpr double kClusterTol = 1e-6;
    const auto points = sample_unit_sphere(R.dim(), samples, seed);

    ExtremaReport report;
    report.samples = samples;
    report.seed = seed;
    bool first = true;
    for (const auto& x : points) {
        const SpectralProfile profile = spectral_profile(R, x, kClusterTol);
        if (!profile.two_root())
            throw NotTwoRoot("extrema_probe: non-two-root sample encountered");
        if (first) {
            report.mu_min = report.mu_max = profile.mu_X;
            report.nu_min = report.nu_max = profile.nu_X;
            report.witness_U = x;
            report.witness_W = x;
            first = false;
            continue;
        }
        if (profile.mu_X < report.mu_min) {
            report.mu_min = profile.mu_X;
            report.witness_U = x;
        }
        if (profile.nu_X > report.nu_max) {
            report.nu_max = profile.nu_X;
            report.witness_W = x;
        }
        report.mu_max = std::max(report.mu_max, profile.mu_X);
        report.nu_min = std::min(report.nu_min, profile.nu_X);
    }

    const EigenspacePair at_u = eigenspaces(R, report.witness_U, kClusterTol);
    const EigenspacePair at_w = eigenspaces(R, report.witness_W, kClusterTol);
    Eigen::MatrixXd span_u(R.dim(), at_u.M_basis.cols() + 1);
    span_u << report.witness_U, at_u.M_basis;
    Eigen::MatrixXd span_w(R.dim(), at_w.N_basis.cols() + 1);
    span_w << report.witness_W, at_w.N_basis;
    report.intersection_dim = subspace_intersection_dim(span_u, span_w, 1e-8);
    return report;
}

bool ProbeReport::all_green() const {
    return duality.empty() && bounds.empty() && emex.empty() && rotation.empty();
}

ProbeReport probe(const CurvatureTensor& R, int samples, std::uint64_t seed,
                  double rel_tol) {
    ProbeReport report;
    report.dim = R.dim();
    report.samples = samples;
    report.seed = seed;
    report.rel_tol = rel_tol;
    report.kroot = classify_k_root(R, samples, seed, rel_tol);

    report.duality = duality_check(R, samples, seed, rel_tol);
    try {
        report.rotation = rotation_lemma_check(R, samples, seed, rel_tol);
    } catch (const NoDualPairsFound&) {
        report.rotation_skipped = true;
    }

    const bool two_root = report.kroot.uniform && report.kroot.k == 2;
    if (two_root) {
        report.bounds = eigenvalue_bounds_check(R, samples, seed, rel_tol);
        report.emex = emex_check(R, samples, seed, rel_tol);
        report.extrema = extrema_probe(R, samples, seed);
    } else {
        report.two_root_sections_skipped = true;
    }
    return report;
}

}  // namespace jacobilab
