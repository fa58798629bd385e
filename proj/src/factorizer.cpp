#include "jacobilab/factorizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jacobilab {

QuadraticFormFamily quadratic_form_family(const CurvatureTensor& R) {
    const int n = R.dim();
    QuadraticFormFamily family;
    family.dim = n;
    family.forms.reserve(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Eigen::MatrixXd form(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    form(i, j) = 0.5 * (R(b, i, j, a) + R(b, j, i, a));
            family.forms.push_back(std::move(form));
        }
    return family;
}

MuEstimate estimate_mu(const CurvatureTensor& R, int samples, std::uint64_t seed,
                       double rel_tol) {
    const int n = R.dim();
    if (n <= 4)
        throw NotSimpleRootTwoRoot(
            "estimate_mu: the simple-root classification requires dimension n > 4");
    if (samples < 1) throw Error("estimate_mu: samples must be >= 1");

    const auto points = sample_unit_sphere(n, samples, seed);
    MuEstimate estimate;
    double lo = 0.0, hi = 0.0;
    for (int s = 0; s < samples; ++s) {
        const SpectralProfile profile = spectral_profile(R, points[s], rel_tol);
        if (!profile.two_root())
            throw NotSimpleRootTwoRoot(
                "estimate_mu: sampled direction has " +
                std::to_string(profile.clusters.clusters.size()) +
                " eigenvalue clusters, expected 2");
        if (std::min(profile.p, profile.q) != 1)
            throw NotSimpleRootTwoRoot(
                "estimate_mu: smallest multiplicity is " +
                std::to_string(std::min(profile.p, profile.q)) +
                ", expected a simple root (q = 1)");
        // The repeated root carries multiplicity n - 2.
        const double repeated = profile.p == n - 2 ? profile.mu_X : profile.nu_X;
        if (s == 0) {
            lo = hi = repeated;
            estimate.p = n - 2;
            estimate.q = 1;
        } else {
            lo = std::min(lo, repeated);
            hi = std::max(hi, repeated);
        }
    }
    estimate.max_deviation = hi - lo;
    estimate.mu = 0.5 * (lo + hi);
    const double scale = 1.0 + R.max_abs();
    if (estimate.max_deviation > rel_tol * scale)
        throw MuNotConstant("estimate_mu: repeated eigenvalue varies by " +
                            std::to_string(estimate.max_deviation) +
                            " across samples");
    return estimate;
}

namespace {

// Rank-one factor of a PSD-up-to-tolerance symmetric matrix: s = v v^T.
// Returns the zero vector when the matrix (numerically) vanishes.
Eigen::VectorXd rank_one_factor(const Eigen::MatrixXd& s, double defect_tol,
                                int row_index) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    const auto& evals = solver.eigenvalues();
    const int n = static_cast<int>(evals.size());
    const double top = evals[n - 1];
    const double defect =
        std::max({-evals[0], n >= 2 ? evals[n - 2] : 0.0, 0.0});
    if (defect > defect_tol) {
        std::ostringstream msg;
        msg << "extract_p: diagonal quadratic form " << row_index
            << " is not rank-one PSD (defect " << defect << ")";
        throw RankExceeded(msg.str());
    }
    if (top <= defect_tol) return Eigen::VectorXd::Zero(n);
    return std::sqrt(top) * solver.eigenvectors().col(n - 1);
}

Eigen::MatrixXd symmetric_outer(const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v) {
    return 0.5 * (u * v.transpose() + v * u.transpose());
}

}  // namespace

ExtractedP extract_p(const CurvatureTensor& R, double mu, double rel_tol,
                     std::uint64_t seed) {
    const int n = R.dim();
    const double scale = 1.0 + R.max_abs();
    const double tol = rel_tol * scale;

    const CurvatureTensor shifted = shift(R, mu);

    // sigma: sign of the nonzero reduced eigenvalue of the shifted tensor.
    const auto probe = sample_unit_sphere(n, 1, seed);
    const SymEigenResult eig = sym_eigen(reduced_jacobi(shifted, probe[0]));
    const double bottom = eig.values[0];
    const double top = eig.values[eig.values.size() - 1];
    const double extreme = std::abs(bottom) > std::abs(top) ? bottom : top;
    if (std::abs(extreme) <= tol)
        throw RankExceeded("extract_p: zero simple root (shifted tensor vanishes)");
    const int sigma = extreme > 0.0 ? +1 : -1;
    const double sig = sigma;

    const QuadraticFormFamily family = quadratic_form_family(shifted);

    // sigma A^{aa} = p_a p_a^T.
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(n);
    for (int a = 0; a < n; ++a)
        rows.push_back(rank_one_factor(sig * family.form(a, a), tol, a));

    // Anchor: first row of maximal norm; its first nonzero coordinate positive.
    int anchor = 0;
    for (int a = 1; a < n; ++a)
        if (rows[a].norm() > rows[anchor].norm()) anchor = a;
    const double anchor_norm = rows[anchor].norm();
    if (anchor_norm <= tol)
        throw RankExceeded("extract_p: zero simple root (all diagonal forms vanish)");
    for (int i = 0; i < n; ++i) {
        if (std::abs(rows[anchor][i]) > 1e-8 * anchor_norm) {
            if (rows[anchor][i] < 0.0) rows[anchor] = -rows[anchor];
            break;
        }
    }

    // Fix relative signs against the anchor via sigma A^{anchor, a}.
    for (int a = 0; a < n; ++a) {
        if (a == anchor || rows[a].norm() <= tol) continue;
        const Eigen::MatrixXd target = sig * family.form(anchor, a);
        const double plus =
            (target - symmetric_outer(rows[anchor], rows[a])).cwiseAbs().maxCoeff();
        const double minus =
            (target + symmetric_outer(rows[anchor], rows[a])).cwiseAbs().maxCoeff();
        if (std::min(plus, minus) > tol)
            throw SignInconsistency(
                "extract_p: off-diagonal data inconsistent with any sign choice "
                "for row " + std::to_string(a));
        if (minus < plus) rows[a] = -rows[a];
    }

    // Whole-family consistency.
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            const double gap = (sig * family.form(a, b) -
                                symmetric_outer(rows[a], rows[b]))
                                   .cwiseAbs()
                                   .maxCoeff();
            if (gap > 10.0 * tol)
                throw SignInconsistency("extract_p: quadratic family residual " +
                                        std::to_string(gap) + " at pair (" +
                                        std::to_string(a) + "," +
                                        std::to_string(b) + ")");
        }

    // P(X) = sum_a (p_a . X) E_a, i.e. row a of P is p_a.
    Eigen::MatrixXd p(n, n);
    for (int a = 0; a < n; ++a) p.row(a) = rows[a].transpose();

    const double skew_defect = (p + p.transpose()).cwiseAbs().maxCoeff();
    if (skew_defect > tol)
        throw SkewnessViolation("extract_p: recovered map is not skew-adjoint, "
                                "defect " + std::to_string(skew_defect));
    p = 0.5 * (p - p.transpose());

    // Eigenvector property on fresh samples: J'_X P(X) = sigma e_{P(X)} P(X).
    const auto fresh = sample_unit_sphere(n, 8, seed + 1);
    for (const auto& x : fresh) {
        const Eigen::VectorXd px = p * x;
        const Eigen::VectorXd jpx = jacobi_matrix(shifted, x).dense() * px;
        const double residual =
            (jpx - sigma * px.squaredNorm() * px).norm();
        if (residual > tol * std::max(1.0, px.squaredNorm()))
            throw SignInconsistency(
                "extract_p: eigenvector verification failed, residual " +
                std::to_string(residual));
    }

    return ExtractedP{SkewEndomorphism(p), sigma};
}

FrameResult canonical_frame(const SkewEndomorphism& P, double rel_tol) {
    const int n = P.dim();
    if (n % 2 != 0)
        throw SingularP("canonical_frame: skew maps in odd dimension are singular");

    const Eigen::MatrixXd s = -P.matrix() * P.matrix();
    const SymEigenResult eig = sym_eigen(SymmetricMatrix::from_dense(s));
    std::vector<double> vals(eig.values.data(), eig.values.data() + n);
    const EigenClusterSet clusters = cluster_eigenvalues(vals, rel_tol);

    for (const auto& c : clusters.clusters)
        if (c.value <= clusters.tolerance_used)
            throw SingularP("canonical_frame: eigenvalue " +
                            std::to_string(c.value) + " of -P^2 is not positive");

    FrameResult result;
    result.frame.resize(n, n);
    int column = 0;

    // Clusters of -P^2 in descending order so nus come out non-increasing.
    int offset_from_top = 0;
    for (auto it = clusters.clusters.rbegin(); it != clusters.clusters.rend();
         ++it) {
        const int m = it->multiplicity;
        if (m % 2 != 0)
            throw OddMultiplicity("canonical_frame: eigenvalue " +
                                  std::to_string(it->value) +
                                  " of -P^2 has odd multiplicity " +
                                  std::to_string(m));
        const double nu = it->value;
        const double root = std::sqrt(nu);

        // Eigenvector columns for this cluster (ascending storage order).
        const int start = n - offset_from_top - m;
        std::vector<Eigen::VectorXd> pool;
        for (int i = 0; i < m; ++i) pool.push_back(eig.vectors.col(start + i));
        offset_from_top += m;

        while (!pool.empty()) {
            const Eigen::VectorXd e = pool.front().normalized();
            const Eigen::VectorXd f = (P.matrix() * e) / root;
            result.frame.col(column++) = e;
            result.frame.col(column++) = f;
            result.nus.push_back(nu);

            // Reduce the pool orthogonally to {e, f}.
            std::vector<Eigen::VectorXd> next;
            for (std::size_t i = 1; i < pool.size(); ++i) {
                Eigen::VectorXd v = pool[i];
                v -= e * e.dot(v) + f * f.dot(v);
                for (const auto& w : next) v -= w * w.dot(v);
                const double norm = v.norm();
                if (norm > 1e-6) next.push_back(v / norm);
            }
            if (static_cast<int>(next.size()) != static_cast<int>(pool.size()) - 2)
                throw OddMultiplicity(
                    "canonical_frame: eigenblock pairing lost rank");
            pool = std::move(next);
        }
    }
    return result;
}

CurvatureTensor reconstruct(const SkewStructure& structure) {
    const CurvatureTensor rp = build_rp(structure.P);
    const CurvatureTensor r0 = build_r0(structure.P.dim());
    return rp.scaled(-structure.sign / 3.0)
        .plus(r0, structure.sign * structure.mu);
}

const char* to_string(PipelineStage stage) {
    switch (stage) {
        case PipelineStage::DimensionScreen: return "dimension_screen";
        case PipelineStage::KRootClassification: return "k_root_classification";
        case PipelineStage::Admissibility: return "admissibility";
        case PipelineStage::MuEstimation: return "mu_estimation";
        case PipelineStage::PExtraction: return "p_extraction";
        case PipelineStage::FrameConstruction: return "frame_construction";
        case PipelineStage::Certified: return "certified";
    }
    return "unknown";
}

PipelineReport classify_two_root_simple(const CurvatureTensor& R, int samples,
                                        std::uint64_t seed, double rel_tol) {
    PipelineReport report;
    report.samples = samples;
    report.seed = seed;
    report.rel_tol = rel_tol;

    auto refute = [&](PipelineStage stage, std::string message) {
        report.certified = false;
        report.stage = stage;
        report.message = std::move(message);
        return report;
    };

    // Parity screen first: no spectral work for odd dimensions.
    const ScreenVerdict screen = dimension_screen(R.dim());
    if (screen.code == ScreenCode::OddImpossible)
        return refute(PipelineStage::DimensionScreen,
                      "refuted: dimension " + std::to_string(R.dim()) +
                          " is odd; " + screen.message);

    const KRootResult kroot = classify_k_root(R, samples, seed, rel_tol);
    if (!kroot.uniform)
        return refute(PipelineStage::KRootClassification,
                      "refuted: eigenvalue structure varies across directions");
    if (kroot.k != 2)
        return refute(PipelineStage::KRootClassification,
                      "refuted: k=" + std::to_string(kroot.k) +
                          " at stage classify_k_root");

    MultiplicityPattern pattern;
    pattern.n = R.dim();
    pattern.p = std::max(kroot.multiplicities[0], kroot.multiplicities[1]);
    pattern.q = std::min(kroot.multiplicities[0], kroot.multiplicities[1]);
    const AdmissibilityVerdict verdict = admissible(pattern);
    if (!verdict.admissible)
        return refute(PipelineStage::Admissibility, "refuted: " + verdict.reason);

    try {
        report.mu_estimate = estimate_mu(R, samples, seed, rel_tol);
    } catch (const Error& e) {
        return refute(PipelineStage::MuEstimation,
                      std::string("refuted: ") + e.what());
    }
    const double repeated = report.mu_estimate->mu;

    std::optional<ExtractedP> extracted;
    try {
        extracted = extract_p(R, repeated, rel_tol, seed + 0x5eedULL);
    } catch (const Error& e) {
        return refute(PipelineStage::PExtraction,
                      std::string("refuted: ") + e.what());
    }

    FrameResult frame;
    try {
        frame = canonical_frame(extracted->P, rel_tol);
    } catch (const Error& e) {
        return refute(PipelineStage::FrameConstruction,
                      std::string("refuted: ") + e.what());
    }

    SkewStructure structure{extracted->P, extracted->sign,
                            extracted->sign * repeated, frame.frame, frame.nus};
    const CurvatureTensor rebuilt = reconstruct(structure);

    double residual = 0.0;
    const int n = R.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    residual = std::max(
                        residual, std::abs(rebuilt(i, j, k, l) - R(i, j, k, l)));
    report.residual = residual;
    report.stage = PipelineStage::Certified;
    if (residual > rel_tol * (1.0 + R.max_abs())) {
        report.certified = false;
        report.message = "reconstruction residual " + std::to_string(residual) +
                         " exceeds tolerance";
        return report;
    }
    report.certified = true;
    report.message = "certified";
    report.structure = std::move(structure);
    return report;
}

}  // namespace jacobilab
