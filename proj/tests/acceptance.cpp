// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "jacobilab/admissibility.hpp"
#include "jacobilab/factorizer.hpp"
#include "jacobilab/probes.hpp"
#include "jacobilab/spectral.hpp"

using namespace jacobilab;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
    std::cout << "criterion " << number << " (" << name << "): "
              << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!pass) ++g_failures;
}

Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = gauss(rng);
    return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

TwoRootModelParams random_model_params(int dim, std::mt19937_64& rng,
                                       bool equal_nus) {
    std::uniform_real_distribution<double> mu_dist(-2.0, 2.0);
    std::uniform_real_distribution<double> nu_dist(0.05, 4.0);
    std::vector<double> nus(dim / 2);
    if (equal_nus) {
        std::fill(nus.begin(), nus.end(), nu_dist(rng));
    } else {
        for (double& nu : nus) nu = nu_dist(rng);
        std::sort(nus.rbegin(), nus.rend());
    }
    const int sign = (rng() % 2 == 0) ? +1 : -1;
    TwoRootModelParams params =
        TwoRootModelParams::standard(dim, mu_dist(rng), std::move(nus), sign);
    params.frame = random_orthogonal(dim, rng);
    return params;
}

double max_componentwise_diff(const CurvatureTensor& a,
                              const CurvatureTensor& b) {
    double d = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    d = std::max(d, std::abs(a(i, j, k, l) - b(i, j, k, l)));
    return d;
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
    bool pass = true;
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    for (int n = 3; n <= 10 && pass; ++n) {
        const CurvatureTensor r0 = build_r0(n);
        const KRootResult kroot = classify_k_root(r0, 256, 1, 1e-6);
        if (!kroot.uniform || kroot.k != 1) {
            pass = false;
            detail << "n=" << n << " not uniformly one-root";
            break;
        }
        double max_dev = 0.0;
        for (const auto& x : sample_unit_sphere(n, 256, 1)) {
            const SpectralProfile prof = spectral_profile(r0, x, 1e-6);
            for (const auto& cluster : prof.clusters.clusters)
                max_dev = std::max(max_dev, std::abs(cluster.value - 1.0));
        }
        if (max_dev > 1e-10) {
            pass = false;
            detail << "n=" << n << " eigenvalue deviation " << max_dev;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (pass) {
        if (secs >= 5.0) {
            pass = false;
            detail << "runtime " << secs << " s exceeds 5 s";
        } else {
            detail << "n=3..10 one-root, eigenvalue 1 within 1e-10, " << secs
                   << " s";
        }
    }
    report(1, "constant-curvature baseline", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
    bool pass = true;
    std::ostringstream detail;
    const CurvatureTensor R = build_two_root_model(
        TwoRootModelParams::standard(6, 1.0, {3.0, 3.0, 3.0}));

    double max_dev = 0.0;
    for (const auto& x : sample_unit_sphere(6, 256, 2)) {
        const SpectralProfile prof = spectral_profile(R, x, 1e-6);
        if (!prof.two_root() || prof.p != 4 || prof.q != 1) {
            pass = false;
            detail << "spectrum not {mu x4, nu x1} at a sample";
            break;
        }
        max_dev = std::max({max_dev, std::abs(prof.mu_X - 1.0),
                            std::abs(prof.nu_X - 4.0)});
    }
    if (pass && max_dev > 1e-9) {
        pass = false;
        detail << "spectrum deviation " << max_dev;
    }

    if (pass) {
        // Reduced spectrum {1 x4, 4 x1}: trace oracle gives
        // C_k = p mu^k + q nu^k = 4 * 1^k + 1 * 4^k = 8, 20, 68, 260.
        const SteinResult stein = k_stein_invariants(R, 4, 256, 2);
        const double expected[] = {8.0, 20.0, 68.0, 260.0};
        for (int k = 0; k < 4; ++k)
            if (std::abs(stein.constants[k] - expected[k]) > 1e-8) {
                pass = false;
                detail << "C_" << (k + 1) << " = " << stein.constants[k]
                       << ", expected " << expected[k];
            }
        if (pass && (!stein.formula_constants || stein.formula_gap > 1e-8)) {
            pass = false;
            detail << "trace vs p mu^k + q nu^k gap " << stein.formula_gap;
        }
        if (pass)
            detail << "spectrum {1 x4, 4 x1} within 1e-9; C_1..C_4 = 8, 20, "
                      "68, 260 vs formula within 1e-8";
    }
    report(2, "two-root model spectra", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
    bool pass = true;
    std::ostringstream detail;
    // Independent evaluation of the closed form via bit counting.
    for (std::uint64_t n = 1; n <= 1024 && pass; ++n) {
        int m = 0;
        std::uint64_t odd = n;
        while ((odd & 1) == 0) {
            odd >>= 1;
            ++m;
        }
        const int expected = 8 * (m / 4) + (1 << (m % 4));
        if (rho(n) != expected) {
            pass = false;
            detail << "rho(" << n << ") = " << rho(n) << ", expected "
                   << expected;
        }
    }
    const std::pair<std::uint64_t, int> spots[] = {{7, 1}, {6, 2},  {4, 4},
                                                   {8, 8}, {16, 9}, {32, 10}};
    for (const auto& [n, expected] : spots)
        if (rho(n) != expected) {
            pass = false;
            detail << "rho(" << n << ") = " << rho(n) << ", expected "
                   << expected;
        }
    if (pass) detail << "n=1..1024 and spot values agree";
    report(3, "Hurwitz-Radon table", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
    bool pass = true;
    std::ostringstream detail;
    for (int n = 3; n <= 99; n += 2) {
        const ScreenVerdict v = dimension_screen(n);
        if (v.code != ScreenCode::OddImpossible ||
            v.message != "two-root impossible") {
            pass = false;
            detail << "odd n=" << n << " gave '" << v.message << "'";
            break;
        }
    }
    for (int n = 6; n <= 98 && pass; n += 4) {
        const ScreenVerdict v = dimension_screen(n);
        if (v.code != ScreenCode::TwiceOddOsserman || v.q_max != 1) {
            pass = false;
            detail << "n=" << n << " (2 mod 4) missing the q=1 verdict";
        }
    }
    if (pass) detail << "odd n in [3,99] impossible; n = 2 mod 4 forces q=1";
    report(4, "dimension screens", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
    bool pass = true;
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(505);

    // Duality is equivalent to the pointwise Osserman property, so it is
    // exercised on equal-nu (Osserman) models; bounds, the eps_M formula and
    // the rotation lemma hold for every two-root model and run on all draws.
    int total_identities = 0;
    for (int draw = 0; draw < 20 && pass; ++draw) {
        const int dim = (draw % 2 == 0) ? 6 : 10;
        const TwoRootModelParams params = random_model_params(dim, rng, false);
        const CurvatureTensor R = build_two_root_model(params);
        const int samples = 40;
        const auto bounds = eigenvalue_bounds_check(R, samples, 55 + draw, 1e-7);
        const auto emex = emex_check(R, samples, 55 + draw, 1e-7);
        const auto rotation = rotation_lemma_check(R, samples, 55 + draw, 1e-7);
        total_identities += 3 * samples * (dim - 2);
        if (!bounds.empty() || !emex.empty() || !rotation.empty()) {
            pass = false;
            detail << "violations on draw " << draw << ": bounds "
                   << bounds.size() << ", emex " << emex.size() << ", rotation "
                   << rotation.size();
        }

        const TwoRootModelParams eq = random_model_params(dim, rng, true);
        const CurvatureTensor Req = build_two_root_model(eq);
        const auto duality = duality_check(Req, samples, 55 + draw, 1e-7);
        total_identities += samples * (dim - 1);
        if (!duality.empty()) {
            pass = false;
            detail << "duality violations on equal-nu draw " << draw;
        }
    }

    if (pass && total_identities < 10000) {
        pass = false;
        detail << "only " << total_identities << " sampled identities";
    }

    if (pass) {
        // Negative controls at 1e-3. Duality, bounds and emex are caught by a
        // symmetry-preserving perturbation. The rotation identity is an
        // algebraic consequence of the curvature symmetries alone, so its
        // control breaks a single component's symmetry orbit; detection is a
        // recorded violation or the dual-pair harvest collapsing.
        const CurvatureTensor base = build_two_root_model(
            TwoRootModelParams::standard(6, 1.0, {2.0, 2.0, 2.0}));
        const CurvatureTensor bad =
            base.plus(build_act(6, {{0, 2, 2, 0, 1e-3}}), 1.0);
        const bool duality_detects = !duality_check(bad, 64, 5, 1e-7).empty();
        const bool bounds_detects =
            !eigenvalue_bounds_check(bad, 64, 5, 1e-7).empty();
        const bool emex_detects = !emex_check(bad, 64, 5, 1e-7).empty();
        CurvatureTensor asym = base;
        asym.at(0, 1, 1, 0) += 1e-3;
        bool rotation_detects = false;
        try {
            rotation_detects = !rotation_lemma_check(asym, 64, 5, 1e-7).empty();
        } catch (const NoDualPairsFound&) {
            rotation_detects = true;
        }
        if (!duality_detects || !bounds_detects || !emex_detects ||
            !rotation_detects) {
            pass = false;
            detail << "negative control missed: duality " << duality_detects
                   << " bounds " << bounds_detects << " emex " << emex_detects
                   << " rotation " << rotation_detects;
        }
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (pass && secs >= 60.0) {
        pass = false;
        detail << "runtime " << secs << " s exceeds 60 s";
    }
    if (pass)
        detail << total_identities
               << " identities green on 20 models; negative controls caught; "
               << secs << " s";
    report(5, "structural identities", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
    bool pass = true;
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(606);
    const int dims[] = {6, 10, 14};

    for (int draw = 0; draw < 50 && pass; ++draw) {
        const int dim = dims[draw % 3];
        const TwoRootModelParams params = random_model_params(dim, rng, false);
        const CurvatureTensor R = build_two_root_model(params);
        const PipelineReport rep = classify_two_root_simple(R, 64, 600 + draw, 1e-7);
        if (!rep.certified || !rep.structure) {
            pass = false;
            detail << "draw " << draw << " (n=" << dim << ") not certified: "
                   << rep.message;
            break;
        }
        const auto& s = *rep.structure;
        if (rep.residual > 1e-8 * (1.0 + R.max_abs())) {
            pass = false;
            detail << "draw " << draw << " residual " << rep.residual;
            break;
        }
        if (s.sign != params.sign) {
            pass = false;
            detail << "draw " << draw << " sign mismatch";
            break;
        }
        if (std::abs(s.mu - params.mu) > 1e-6) {
            pass = false;
            detail << "draw " << draw << " mu off by "
                   << std::abs(s.mu - params.mu);
            break;
        }
        std::vector<double> got = s.nus, want = params.nus;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < want.size(); ++i)
            if (std::abs(got[i] - want[i]) > 1e-6) {
                pass = false;
                detail << "draw " << draw << " nu multiset off by "
                       << std::abs(got[i] - want[i]);
            }
    }

    if (pass) {
        const PipelineReport r0_rep =
            classify_two_root_simple(build_r0(6), 64, 1, 1e-7);
        if (r0_rep.certified ||
            r0_rep.stage != PipelineStage::KRootClassification) {
            pass = false;
            detail << "r0 not refuted at the k-root stage";
        }
    }
    if (pass) {
        const PipelineReport odd_rep =
            classify_two_root_simple(build_r0(7), 64, 1, 1e-7);
        if (odd_rep.certified || odd_rep.stage != PipelineStage::DimensionScreen) {
            pass = false;
            detail << "odd dimension not refuted at the dimension screen";
        }
    }
    if (pass) {
        // Rank-defect control: r0's shifted diagonal forms have rank n-1.
        bool thrown = false;
        try {
            extract_p(build_r0(6), 0.0, 1e-7);
        } catch (const RankExceeded&) {
            thrown = true;
        }
        if (!thrown) {
            pass = false;
            detail << "rank-defect control not rejected by extract_p";
        }
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (pass && secs >= 120.0) {
        pass = false;
        detail << "runtime " << secs << " s exceeds 120 s";
    }
    if (pass)
        detail << "50 planted models certified (residual <= 1e-8 scale, sigma "
                  "exact, mu/nu within 1e-6); controls refuted; "
               << secs << " s";
    report(6, "factorization round trip", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
    bool pass = true;
    std::ostringstream detail;
    const CurvatureTensor R = build_two_root_model(
        TwoRootModelParams::standard(6, 1.0, {3.0, 2.0, 1.0}));
    const OssermanResult result = osserman_test(R, 256, 7, 1e-6);
    if (result.osserman) {
        pass = false;
        detail << "model reported Osserman";
    } else {
        const SpectralProfile p1 = spectral_profile(R, result.witness.x1, 1e-6);
        const SpectralProfile p2 = spectral_profile(R, result.witness.x2, 1e-6);
        const double top1 = p1.clusters.clusters.back().value;
        const double top2 = p2.clusters.clusters.back().value;
        const double gap = std::abs(top1 - top2);
        if (gap < 0.5) {
            pass = false;
            detail << "witness top-eigenvalue gap " << gap << " < 0.5";
        } else {
            detail << "non-Osserman with witness gap " << gap;
        }
    }
    report(7, "Osserman discrimination", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 8
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(JACOBILAB_CLI_PATH) + " " + args +
                            " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

void criterion_8() {
    bool pass = true;
    std::ostringstream detail;
    const std::string dir = "acceptance_tmp";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

    if (run_cli("build --model two-root --dim 6 --mu 1 --nus 3,2,1 -o " + dir +
                "/m.json") != 0) {
        pass = false;
        detail << "CLI build failed";
    }
    const std::string common = " -i " + dir + "/m.json --samples 64 --seed 9 ";
    struct Step {
        std::string name;
        std::string args;
        bool expect_zero;
    };
    const Step steps[] = {
        {"analyze", "analyze" + common, true},
        // Mixed nus genuinely violate duality, so probe exits 4; the report
        // files must still be byte-identical across runs.
        {"probe", "probe" + common, false},
        {"factorize", "factorize" + common, true},
    };
    for (const Step& step : steps) {
        if (!pass) break;
        const std::string out1 = dir + "/" + step.name + "1.json";
        const std::string out2 = dir + "/" + step.name + "2.json";
        const int rc1 = run_cli(step.args + "-o " + out1);
        const int rc2 = run_cli(step.args + "-o " + out2);
        const int code1 = WIFEXITED(rc1) ? WEXITSTATUS(rc1) : -1;
        const int code2 = WIFEXITED(rc2) ? WEXITSTATUS(rc2) : -1;
        if (code1 != code2 || (step.expect_zero && code1 != 0) ||
            (!step.expect_zero && code1 == 0)) {
            pass = false;
            detail << step.name << " exit codes " << code1 << "/" << code2;
            break;
        }
        const std::string a = read_file(out1);
        const std::string b = read_file(out2);
        if (a.empty() || a != b) {
            pass = false;
            detail << step.name << " reports not byte-identical";
        }
    }
    if (pass) {
        // Exit-code contract spot checks.
        const int rc_r0 = run_cli("build --model r0 --dim 6 -o " + dir +
                                  "/r0.json");
        const int rc_fact = run_cli("factorize -i " + dir +
                                    "/r0.json --samples 64 --seed 9");
        const int rc_odd = run_cli(
            "build --model two-root --dim 7 --mu 1 --nus 1,1,1 -o " + dir +
            "/bad.json");
        if (rc_r0 != 0 || !WIFEXITED(rc_fact) || WEXITSTATUS(rc_fact) != 4 ||
            !WIFEXITED(rc_odd) || WEXITSTATUS(rc_odd) != 2) {
            pass = false;
            detail << "exit-code contract violated (factorize r0 / odd build)";
        }
    }
    if (pass) detail << "byte-identical reports and exit-code contract hold";
    std::system(("rm -rf " + dir).c_str());
    report(8, "CLI determinism and exit codes", pass, detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS"
                                  : "FAILURES: " + std::to_string(g_failures))
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
