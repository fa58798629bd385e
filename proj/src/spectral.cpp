#include "jacobilab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace jacobilab {

namespace {

constexpr double kClusterTolDefault = 1e-6;

std::vector<double> sorted_reduced_eigenvalues(const CurvatureTensor& R,
                                               const Eigen::VectorXd& x) {
    const SymEigenResult eig = sym_eigen(reduced_jacobi(R, x));
    std::vector<double> vals(eig.values.data(), eig.values.data() + eig.values.size());
    return vals;  // SelfAdjointEigenSolver already sorts ascending
}

}  // namespace

SymmetricMatrix jacobi_matrix(const CurvatureTensor& R, const Eigen::VectorXd& x) {
    const int n = R.dim();
    if (x.size() != n)
        throw InvalidMatrix("jacobi_matrix: vector dimension mismatch");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                if (x[i] == 0.0) continue;
                for (int jj = 0; jj < n; ++jj)
                    sum += R(b, i, jj, a) * x[i] * x[jj];
            }
            j(a, b) = sum;
        }
    return SymmetricMatrix::from_dense(j);
}

SymmetricMatrix reduced_jacobi(const CurvatureTensor& R, const Eigen::VectorXd& x) {
    if (!(x.norm() > 0.0)) throw ZeroVector("reduced_jacobi: zero vector");
    const Eigen::MatrixXd basis = orthonormal_complement(x);
    const Eigen::MatrixXd full = jacobi_matrix(R, x).dense();
    return SymmetricMatrix::from_dense(basis.transpose() * full * basis);
}

SpectralProfile spectral_profile(const CurvatureTensor& R,
                                 const Eigen::VectorXd& x, double rel_tol) {
    const double ex = x.squaredNorm();
    if (!(ex > 0.0)) throw ZeroVector("spectral_profile: zero vector");

    std::vector<double> vals = sorted_reduced_eigenvalues(R, x);
    for (double& v : vals) v /= ex;

    SpectralProfile profile;
    profile.point = x / std::sqrt(ex);
    profile.clusters = cluster_eigenvalues(vals, rel_tol);
    if (profile.two_root()) {
        profile.mu_X = profile.clusters.clusters[0].value;
        profile.nu_X = profile.clusters.clusters[1].value;
        profile.p = profile.clusters.clusters[0].multiplicity;
        profile.q = profile.clusters.clusters[1].multiplicity;
    }
    return profile;
}

KRootResult classify_k_root(const CurvatureTensor& R, int samples,
                            std::uint64_t seed, double rel_tol) {
    if (samples < 1) throw Error("classify_k_root: samples must be >= 1");
    const auto points = sample_unit_sphere(R.dim(), samples, seed);

    KRootResult result;
    std::vector<int> reference;
    for (int s = 0; s < samples; ++s) {
        const SpectralProfile profile = spectral_profile(R, points[s], rel_tol);
        std::vector<int> signature;
        for (const auto& c : profile.clusters.clusters)
            signature.push_back(c.multiplicity);
        if (s == 0) {
            reference = signature;
            continue;
        }
        if (signature != reference) {
            result.uniform = false;
            result.witness = WitnessPair{points[0], points[s], 0.0};
            return result;
        }
    }
    result.uniform = true;
    result.k = static_cast<int>(reference.size());
    result.multiplicities = reference;
    return result;
}

OssermanResult osserman_test(const CurvatureTensor& R, int samples,
                             std::uint64_t seed, double rel_tol) {
    if (samples < 2) throw Error("osserman_test: samples must be >= 2");
    const auto points = sample_unit_sphere(R.dim(), samples, seed);
    const int m = R.dim() - 1;

    std::vector<std::vector<double>> spectra;
    spectra.reserve(points.size());
    double scale = 1.0;
    for (const auto& x : points) {
        spectra.push_back(sorted_reduced_eigenvalues(R, x));
        for (double v : spectra.back()) scale = std::max(scale, std::abs(v));
    }

    OssermanResult result;
    int best_coord = 0, best_lo = 0, best_hi = 0;
    for (int c = 0; c < m; ++c) {
        int lo = 0, hi = 0;
        for (int s = 1; s < samples; ++s) {
            if (spectra[s][c] < spectra[lo][c]) lo = s;
            if (spectra[s][c] > spectra[hi][c]) hi = s;
        }
        const double range = spectra[hi][c] - spectra[lo][c];
        if (range > result.max_deviation) {
            result.max_deviation = range;
            best_coord = c;
            best_lo = lo;
            best_hi = hi;
        }
    }
    (void)best_coord;
    result.osserman = result.max_deviation <= rel_tol * scale;
    result.witness = WitnessPair{points[best_lo], points[best_hi],
                                 result.max_deviation};
    return result;
}

SteinResult k_stein_invariants(const CurvatureTensor& R, int k_max, int samples,
                               std::uint64_t seed) {
    if (k_max < 1) throw Error("k_stein_invariants: k_max must be >= 1");
    if (samples < 1) throw Error("k_stein_invariants: samples must be >= 1");
    const auto points = sample_unit_sphere(R.dim(), samples, seed);

    SteinResult result;
    result.constants.assign(k_max, 0.0);
    std::vector<double> lo(k_max, 0.0), hi(k_max, 0.0);

    bool two_root_everywhere = true;
    int p = 0, q = 0;
    double mu_sum = 0.0, nu_sum = 0.0;

    for (int s = 0; s < samples; ++s) {
        const std::vector<double> vals = sorted_reduced_eigenvalues(R, points[s]);
        for (int k = 1; k <= k_max; ++k) {
            double trace = 0.0;
            for (double v : vals) trace += std::pow(v, k);
            result.constants[k - 1] += trace;
            if (s == 0) {
                lo[k - 1] = hi[k - 1] = trace;
            } else {
                lo[k - 1] = std::min(lo[k - 1], trace);
                hi[k - 1] = std::max(hi[k - 1], trace);
            }
        }
        if (two_root_everywhere) {
            const EigenClusterSet clusters =
                cluster_eigenvalues(vals, kClusterTolDefault);
            if (clusters.clusters.size() != 2) {
                two_root_everywhere = false;
            } else {
                const int sp = clusters.clusters[0].multiplicity;
                const int sq = clusters.clusters[1].multiplicity;
                if (s == 0) {
                    p = sp;
                    q = sq;
                } else if (sp != p || sq != q) {
                    two_root_everywhere = false;
                }
                mu_sum += clusters.clusters[0].value;
                nu_sum += clusters.clusters[1].value;
            }
        }
    }

    for (int k = 0; k < k_max; ++k) {
        result.constants[k] /= samples;
        result.max_deviation = std::max(result.max_deviation, hi[k] - lo[k]);
    }

    if (two_root_everywhere) {
        const double mu = mu_sum / samples;
        const double nu = nu_sum / samples;
        std::vector<double> formula(k_max);
        for (int k = 1; k <= k_max; ++k) {
            formula[k - 1] = p * std::pow(mu, k) + q * std::pow(nu, k);
            result.formula_gap = std::max(
                result.formula_gap,
                std::abs(formula[k - 1] - result.constants[k - 1]));
        }
        result.formula_constants = std::move(formula);
    }
    return result;
}

EigenspacePair eigenspaces(const CurvatureTensor& R, const Eigen::VectorXd& x,
                           double rel_tol) {
    const double ex = x.squaredNorm();
    if (!(ex > 0.0)) throw ZeroVector("eigenspaces: zero vector");

    const SpectralProfile profile = spectral_profile(R, x, rel_tol);
    if (!profile.two_root())
        throw NotTwoRoot("eigenspaces: expected exactly two clusters, got " +
                         std::to_string(profile.clusters.clusters.size()));

    const Eigen::MatrixXd basis = orthonormal_complement(x);
    const SymEigenResult eig = sym_eigen(reduced_jacobi(R, x));

    const int m = static_cast<int>(eig.values.size());
    EigenspacePair pair;
    pair.M_basis.resize(x.size(), profile.p);
    pair.N_basis.resize(x.size(), profile.q);
    int im = 0, in = 0;
    for (int i = 0; i < m; ++i) {
        const double value = eig.values[i] / ex;
        const Eigen::VectorXd v = basis * eig.vectors.col(i);
        if (std::abs(value - profile.mu_X) <= std::abs(value - profile.nu_X))
            pair.M_basis.col(im++) = v;
        else
            pair.N_basis.col(in++) = v;
    }
    if (im != profile.p || in != profile.q)
        throw NotTwoRoot("eigenspaces: cluster assignment mismatch");
    return pair;
}

AnalysisReport analyze(const CurvatureTensor& R, int samples, std::uint64_t seed,
                       double rel_tol, int k_max) {
    AnalysisReport report;
    report.dim = R.dim();
    report.symmetry = validate_symmetries(R);
    report.kroot = classify_k_root(R, samples, seed, rel_tol);
    report.osserman = osserman_test(R, std::max(2, samples), seed, rel_tol);
    report.stein = k_stein_invariants(R, k_max, samples, seed);
    report.samples = samples;
    report.seed = seed;
    report.rel_tol = rel_tol;
    report.k_max = k_max;
    return report;
}

}  // namespace jacobilab
