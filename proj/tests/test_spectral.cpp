#include <doctest.h>

#include "jacobilab/spectral.hpp"

using namespace jacobilab;

namespace {

CurvatureTensor equal_nu_model() {
    return build_two_root_model(
        TwoRootModelParams::standard(6, 1.0, {3.0, 3.0, 3.0}));
}

CurvatureTensor mixed_nu_model() {
    return build_two_root_model(
        TwoRootModelParams::standard(6, 1.0, {3.0, 2.0, 1.0}));
}

Eigen::VectorXd basis_vector(int dim, int i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[i] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("jacobi_matrix of r0 is e_x I - x x^T") {
    const CurvatureTensor r0 = build_r0(4);
    Eigen::VectorXd x(4);
    x << 1.0, -2.0, 0.5, 1.5;
    const Eigen::MatrixXd j = jacobi_matrix(r0, x).dense();
    const Eigen::MatrixXd expected =
        x.squaredNorm() * Eigen::MatrixXd::Identity(4, 4) - x * x.transpose();
    CHECK((j - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reduced jacobi of r0 is the identity on x^perp") {
    const CurvatureTensor r0 = build_r0(5);
    Eigen::VectorXd x(5);
    x << 0.2, 1.0, -0.4, 0.0, 2.0;
    const Eigen::MatrixXd j = reduced_jacobi(r0, x).dense();
    CHECK((j - x.squaredNorm() * Eigen::MatrixXd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("spectral profile of the equal-nu model at a frame direction") {
    const CurvatureTensor R = equal_nu_model();
    const SpectralProfile prof =
        spectral_profile(R, basis_vector(6, 0), 1e-8);
    REQUIRE(prof.two_root());
    CHECK(prof.mu_X == doctest::Approx(1.0));
    CHECK(prof.nu_X == doctest::Approx(4.0));
    CHECK(prof.p == 4);
    CHECK(prof.q == 1);
    CHECK(prof.p_ge_q());
}

TEST_CASE("spectral profile is scale-invariant (reduced by e_x)") {
    const CurvatureTensor R = mixed_nu_model();
    Eigen::VectorXd x(6);
    x << 0.3, -1.0, 0.7, 0.1, 0.4, -0.6;
    const SpectralProfile a = spectral_profile(R, x, 1e-8);
    const SpectralProfile b = spectral_profile(R, 2.5 * x, 1e-8);
    REQUIRE(a.two_root());
    REQUIRE(b.two_root());
    CHECK(a.mu_X == doctest::Approx(b.mu_X));
    CHECK(a.nu_X == doctest::Approx(b.nu_X));
}

TEST_CASE("classify_k_root: r0 is 1-root, two-root models are 2-root") {
    const KRootResult one = classify_k_root(build_r0(6), 64, 7, 1e-6);
    REQUIRE(one.uniform);
    CHECK(one.k == 1);
    CHECK(one.multiplicities == std::vector<int>{5});

    const KRootResult two = classify_k_root(mixed_nu_model(), 64, 7, 1e-6);
    REQUIRE(two.uniform);
    CHECK(two.k == 2);
    CHECK(two.multiplicities == std::vector<int>{4, 1});
}

TEST_CASE("classify_k_root invariants: multiplicities sum to n - 1") {
    CurvatureTensor R = build_r0(4).plus(
        build_act(4, {{0, 1, 1, 0, 0.5}}), 1.0);
    const KRootResult result = classify_k_root(R, 64, 7, 1e-6);
    if (result.uniform) {
        int total = 0;
        for (int m : result.multiplicities) total += m;
        CHECK(total == 3);
        CHECK(result.k == static_cast<int>(result.multiplicities.size()));
    } else {
        REQUIRE(result.witness.has_value());
        CHECK(result.witness->x1.size() == 4);
    }
}

TEST_CASE("osserman_test separates equal-nu from mixed-nu models") {
    const OssermanResult good = osserman_test(equal_nu_model(), 128, 11, 1e-6);
    CHECK(good.osserman);
    CHECK(good.max_deviation < 1e-8);

    const OssermanResult bad = osserman_test(mixed_nu_model(), 128, 11, 1e-6);
    CHECK(!bad.osserman);
    CHECK(bad.max_deviation > 0.1);
    CHECK(bad.witness.x1.size() == 6);
}

TEST_CASE("k-stein constants of the equal-nu model") {
    // Reduced spectrum {1 x4, 4 x1}: C_k = 4 * 1^k + 1 * 4^k.
    const SteinResult stein = k_stein_invariants(equal_nu_model(), 4, 128, 13);
    REQUIRE(stein.constants.size() == 4);
    CHECK(stein.constants[0] == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(stein.constants[1] == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(stein.constants[2] == doctest::Approx(68.0).epsilon(1e-9));
    CHECK(stein.constants[3] == doctest::Approx(260.0).epsilon(1e-9));
    CHECK(stein.max_deviation < 1e-8);
    REQUIRE(stein.formula_constants.has_value());
    CHECK(stein.formula_gap < 1e-8);
}

TEST_CASE("k-stein constants of r0 are n - 1") {
    const SteinResult stein = k_stein_invariants(build_r0(5), 3, 64, 17);
    for (double c : stein.constants) CHECK(c == doctest::Approx(4.0));
}

TEST_CASE("eigenspaces split x^perp into M(X) and N(X)") {
    const CurvatureTensor R = equal_nu_model();
    const Eigen::VectorXd x = basis_vector(6, 0);
    const EigenspacePair pair = eigenspaces(R, x, 1e-8);
    REQUIRE(pair.M_basis.cols() == 4);
    REQUIRE(pair.N_basis.cols() == 1);
    // N(E1) is spanned by F1 = e2 (second basis vector).
    CHECK(std::abs(pair.N_basis.col(0)[1]) == doctest::Approx(1.0));
    // Both eigenspaces are orthogonal to x.
    CHECK((pair.M_basis.transpose() * x).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((pair.N_basis.transpose() * x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigenspaces rejects a 1-root tensor") {
    CHECK_THROWS_AS(eigenspaces(build_r0(5), basis_vector(5, 0), 1e-8),
                    NotTwoRoot);
}

TEST_CASE("analyze is deterministic in (tensor, samples, seed)") {
    const CurvatureTensor R = mixed_nu_model();
    const AnalysisReport a = analyze(R, 32, 99, 1e-6);
    const AnalysisReport b = analyze(R, 32, 99, 1e-6);
    CHECK(a.kroot.uniform == b.kroot.uniform);
    CHECK(a.kroot.k == b.kroot.k);
    CHECK(a.osserman.max_deviation == b.osserman.max_deviation);
    CHECK(a.stein.constants == b.stein.constants);
    CHECK(a.dim == 6);
}
