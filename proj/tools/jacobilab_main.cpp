// jacobilab: build, analyze, probe and factorize algebraic curvature tensors.
//
// Exit codes: 0 clean, 2 usage/parse error, 3 invalid tensor, 4 refutation or
// red probe section.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "jacobilab/admissibility.hpp"
#include "jacobilab/factorizer.hpp"
#include "jacobilab/probes.hpp"
#include "jacobilab/serialize.hpp"
#include "jacobilab/spectral.hpp"

namespace {

using namespace jacobilab;

constexpr int kExitClean = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidTensor = 3;
constexpr int kExitRefuted = 4;

constexpr double kSymmetryTol = 1e-10;

std::vector<double> parse_nus(const std::string& text) {
    std::vector<double> nus;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            nus.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw Error("cannot parse nu value '" + item + "'");
        }
    }
    return nus;
}

struct CommonOpts {
    std::string input;
    std::string output;
    int samples = 256;
    std::uint64_t seed = 1;
    double rel_tol = 1e-6;
};

void add_common(CLI::App* cmd, CommonOpts& opts, double default_tol) {
    opts.rel_tol = default_tol;
    cmd->add_option("-i,--input", opts.input, "input tensor file (JSON)")
        ->required();
    cmd->add_option("-o,--output", opts.output, "report output file (JSON)");
    cmd->add_option("--samples", opts.samples, "unit-sphere sample count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "sampling seed");
    cmd->add_option("--rel-tol", opts.rel_tol, "relative tolerance")
        ->check(CLI::PositiveNumber);
}

CurvatureTensor load_tensor(const std::string& path) {
    return read_tensor_file(path);
}

int run_build(const std::string& model, int dim, double mu,
              const std::string& nus_text, const std::string& sign_text,
              const std::string& p_file, const std::string& output) {
    CurvatureTensor tensor(2);
    std::ostringstream summary;
    if (model == "r0") {
        tensor = build_r0(dim);
        summary << "model=r0 dim=" << dim;
    } else if (model == "rp") {
        if (p_file.empty())
            throw Error("model rp requires --p-file with a skew matrix");
        const SkewEndomorphism p = read_skew_file(p_file);
        tensor = build_rp(p);
        summary << "model=rp dim=" << p.dim() << " p_file=" << p_file;
    } else if (model == "two-root") {
        if (dim % 2 != 0) {
            const ScreenVerdict screen = dimension_screen(dim);
            throw Error("dimension " + std::to_string(dim) + " is odd: " +
                        screen.message + " (no two-root tensor exists)");
        }
        int sign = +1;
        if (sign_text == "-" || sign_text == "-1") sign = -1;
        else if (sign_text != "+" && sign_text != "+1" && !sign_text.empty())
            throw Error("sign must be + or -");
        std::vector<double> nus = parse_nus(nus_text);
        TwoRootModelParams params =
            TwoRootModelParams::standard(dim, mu, std::move(nus), sign);
        tensor = build_two_root_model(params);
        summary << "model=two-root dim=" << dim << " mu=" << mu
                << " nus=" << nus_text << " sign=" << (sign > 0 ? "+" : "-");
    } else {
        throw Error("unknown model '" + model + "' (expected r0, rp, two-root)");
    }
    write_tensor_file(output, tensor);
    std::cout << summary.str() << " -> " << output << "\n";
    return kExitClean;
}

int run_analyze(const CommonOpts& opts) {
    const CurvatureTensor tensor = load_tensor(opts.input);
    const AnalysisReport report =
        analyze(tensor, opts.samples, opts.seed, opts.rel_tol);
    const ordered_json doc = analysis_report_to_json(report);
    if (!opts.output.empty()) write_json_file(opts.output, doc);

    std::cout << "dim                : " << report.dim << "\n";
    if (report.kroot.uniform)
        std::cout << "k-root verdict     : k=" << report.kroot.k
                  << " (consistent at " << opts.samples << " samples)\n";
    else
        std::cout << "k-root verdict     : varying\n";
    std::cout << "osserman           : "
              << (report.osserman.osserman ? "yes" : "no")
              << " (max deviation " << report.osserman.max_deviation << ")\n";
    std::cout << "stein constants    :";
    for (double c : report.stein.constants) std::cout << " " << c;
    std::cout << " (spread " << report.stein.max_deviation << ")\n";
    std::cout << "symmetry violation : " << report.symmetry.max_violation()
              << "\n";

    const double tol = kSymmetryTol * (1.0 + tensor.max_abs());
    if (!report.symmetry.passes(tol)) {
        std::cerr << "tensor fails symmetry validation\n";
        return kExitInvalidTensor;
    }
    return kExitClean;
}

int run_probe(const CommonOpts& opts) {
    const CurvatureTensor tensor = load_tensor(opts.input);
    const double tol = kSymmetryTol * (1.0 + tensor.max_abs());
    if (!validate_symmetries(tensor).passes(tol)) {
        std::cerr << "tensor fails symmetry validation\n";
        return kExitInvalidTensor;
    }
    const ProbeReport report = probe(tensor, opts.samples, opts.seed, opts.rel_tol);
    const ordered_json doc = probe_report_to_json(report);
    if (!opts.output.empty()) write_json_file(opts.output, doc);

    auto line = [&](const char* name, const std::vector<ViolationRecord>& v,
                    bool skipped, const char* reason) {
        std::cout << name << ": ";
        if (skipped)
            std::cout << "skipped (" << reason << ")\n";
        else if (v.empty())
            std::cout << "green\n";
        else
            std::cout << "red (" << v.size() << " violations)\n";
    };
    const char* reason = report.kroot.uniform
                             ? (report.kroot.k == 1 ? "k=1" : "k!=2")
                             : "varying k";
    line("duality           ", report.duality, false, "");
    line("eigenvalue bounds ", report.bounds, report.two_root_sections_skipped,
         reason);
    line("emex              ", report.emex, report.two_root_sections_skipped,
         reason);
    line("rotation lemma    ", report.rotation, report.rotation_skipped,
         "no dual pairs");
    if (report.extrema)
        std::cout << "extrema           : mu in [" << report.extrema->mu_min
                  << ", " << report.extrema->mu_max << "], nu in ["
                  << report.extrema->nu_min << ", " << report.extrema->nu_max
                  << "], intersection dim " << report.extrema->intersection_dim
                  << "\n";

    return report.all_green() ? kExitClean : kExitRefuted;
}

int run_factorize(const CommonOpts& opts) {
    const CurvatureTensor tensor = load_tensor(opts.input);
    const double tol = kSymmetryTol * (1.0 + tensor.max_abs());
    if (!validate_symmetries(tensor).passes(tol)) {
        std::cerr << "tensor fails symmetry validation\n";
        return kExitInvalidTensor;
    }
    const PipelineReport report =
        classify_two_root_simple(tensor, opts.samples, opts.seed, opts.rel_tol);
    if (!opts.output.empty())
        write_json_file(opts.output, pipeline_report_to_json(report));

    if (report.certified) {
        const auto& s = *report.structure;
        std::cout << "certified: sign=" << (s.sign > 0 ? "+" : "-")
                  << " mu=" << s.mu << " nus=";
        for (std::size_t i = 0; i < s.nus.size(); ++i)
            std::cout << (i ? "," : "") << s.nus[i];
        std::cout << " residual=" << report.residual << "\n";
        return kExitClean;
    }
    std::cout << report.message << " (stage " << to_string(report.stage)
              << ")\n";
    return kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("JACOBILAB_THREADS")) {
        const int cap = std::atoi(threads);
        if (cap > 0) Eigen::setNbThreads(cap);
    }

    CLI::App app{"jacobilab: algebraic curvature tensor toolkit"};
    app.require_subcommand(1);

    // build
    std::string model = "r0", nus_text, sign_text = "+", p_file, build_out;
    int build_dim = 6;
    double build_mu = 0.0;
    auto* build = app.add_subcommand("build", "build a model tensor file");
    build->add_option("--model", model, "r0 | rp | two-root")->required();
    build->add_option("--dim", build_dim, "dimension");
    build->add_option("--mu", build_mu, "shift parameter mu");
    build->add_option("--nus", nus_text, "comma-separated nu list (two-root)");
    build->add_option("--sign", sign_text, "+ or - (two-root)");
    build->add_option("--p-file", p_file, "skew matrix JSON file (rp)");
    build->add_option("-o,--output", build_out, "output tensor file")->required();

    CommonOpts analyze_opts, probe_opts, factorize_opts;
    auto* analyze_cmd = app.add_subcommand("analyze", "spectral analysis report");
    add_common(analyze_cmd, analyze_opts, 1e-6);
    auto* probe_cmd =
        app.add_subcommand("probe", "structural identity checks");
    add_common(probe_cmd, probe_opts, 1e-7);
    auto* factorize_cmd = app.add_subcommand(
        "factorize", "recover (sign, mu, P, frame, nus) from a two-root tensor");
    add_common(factorize_cmd, factorize_opts, 1e-7);

    // rho / screen
    std::uint64_t rho_n = 1;
    int screen_n = 3;
    auto* rho_cmd = app.add_subcommand("rho", "Hurwitz-Radon number rho(n)");
    rho_cmd->add_option("n", rho_n, "positive integer")->required();
    auto* screen_cmd =
        app.add_subcommand("screen", "dimension screen for two-root tensors");
    screen_cmd->add_option("n", screen_n, "dimension >= 3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (build->parsed())
            return run_build(model, build_dim, build_mu, nus_text, sign_text,
                             p_file, build_out);
        if (analyze_cmd->parsed()) return run_analyze(analyze_opts);
        if (probe_cmd->parsed()) return run_probe(probe_opts);
        if (factorize_cmd->parsed()) return run_factorize(factorize_opts);
        if (rho_cmd->parsed()) {
            std::cout << rho(rho_n) << "\n";
            return kExitClean;
        }
        if (screen_cmd->parsed()) {
            const ScreenVerdict verdict = dimension_screen(screen_n);
            std::cout << verdict.message << "\n";
            if (verdict.code != ScreenCode::OddImpossible)
                std::cout << "admissible q range: [" << verdict.q_min << ", "
                          << verdict.q_max << "]\n";
            return kExitClean;
        }
    } catch (const SymmetryConflict& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidTensor;
    } catch (const BianchiViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidTensor;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
