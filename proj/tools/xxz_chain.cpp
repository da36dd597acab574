// Command-line front end: verification suite, object builder, spectrum
// report and parameter sweeps for the open spin chain with a non-diagonal
// right boundary.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "xxz/charges.hpp"
#include "xxz/export.hpp"
#include "xxz/lattice.hpp"
#include "xxz/suite.hpp"

namespace {

using namespace xxz;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::optional<Complex> parse_lambda(const std::string& text) {
    if (text == "symbolic") return std::nullopt;
    double re = 0, im = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) >= 1) return Complex(re, im);
    throw CLI::ValidationError("--lambda", "expected a number, 're,im', or 'symbolic'");
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

LaurentMatrix k_to_laurent(const KMatrix& k) {
    LaurentMatrix m(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [d, c] : k.at(i, j).coeffs()) {
                CMat t = CMat::Zero(2, 2);
                t(i, j) = c;
                m.add_term(d, t);
            }
    return m;
}

struct CommonParams {
    double mu = 0.3, m = 0.7, zeta = 0.2;
    int n = 2;
    std::string gradation = "homogeneous";
    std::string bcase = "I";

    void attach(CLI::App* cmd) {
        cmd->add_option("--mu", mu, "anisotropy parameter");
        cmd->add_option("--m", m, "boundary parameter m");
        cmd->add_option("--zeta", zeta, "boundary parameter zeta");
        cmd->add_option("--n", n, "number of sites")->check(CLI::PositiveNumber);
        cmd->add_option("--gradation", gradation, "homogeneous|principal")
            ->check(CLI::IsMember({"homogeneous", "principal"}));
        cmd->add_option("--case", bcase, "left boundary case I|II|III")
            ->check(CLI::IsMember({"I", "II", "III"}));
    }

    ModelParams params() const {
        return make_params(mu, m, zeta, n, gradation_from_string(gradation));
    }
};

int run_verify(const SuiteConfig& cfg, const std::string& out_path) {
    const VerificationReport rep = run_suite(cfg);
    emit(cfg.format == "md" ? rep.to_markdown() : rep.to_json(), out_path);
    return rep.all_pass() ? kExitOk : kExitCheckFailure;
}

int run_build(const CommonParams& common, const std::string& object,
              const std::string& lambda_text, const std::string& form,
              const std::string& out_path) {
    const std::optional<Complex> lambda = parse_lambda(lambda_text);
    const ModelParams p = common.params();
    const Gradation grad = p.gradation;
    const BoundaryCase bc = boundary_case_from_string(common.bcase);

    ExportMetadata meta;
    meta.object = object;
    meta.mu = p.mu;
    meta.m = p.m;
    meta.zeta = p.zeta;
    meta.sites = p.sites;
    meta.gradation = grad;
    meta.lambda = lambda;

    LaurentMatrix laurent;
    if (object == "r") {
        laurent = r_matrix(p, grad).mat;
        meta.sites = 1;
    } else if (object == "kright") {
        laurent = k_to_laurent(
            k_right(p, form == "explicit" ? KForm::explicit_entries : KForm::blob, grad));
    } else if (object == "kleft") {
        laurent = k_to_laurent(k_left(bc, grad, p));
        meta.bcase = bc;
    } else if (object == "transfer") {
        laurent = transfer_matrix(p, bc).mat;
        meta.bcase = bc;
    } else if (object == "hamiltonian") {
        meta.bcase = BoundaryCase::I;
        meta.lambda.reset();
        emit(export_matrix_json(hamiltonian(p, HamiltonianRoute::blob), meta), out_path);
        return kExitOk;
    } else if (object == "q1" || object == "q2") {
        meta.lambda.reset();
        emit(export_matrix_json(charge_tower(object == "q1" ? 1 : 2, p), meta), out_path);
        return kExitOk;
    } else {
        throw CLI::ValidationError("--object", "unknown object '" + object + "'");
    }

    if (lambda)
        emit(export_matrix_json(laurent.eval(*lambda), meta), out_path);
    else
        emit(export_laurent_json(laurent, meta), out_path);
    return kExitOk;
}

int run_spectrum(const CommonParams& common, double cluster_tol, const std::string& out_path) {
    const ModelParams p = common.params();
    std::string csv = "operator,index,real,imag,cluster,cluster_size\n";
    auto append = [&](const std::string& name, const CMat& op) {
        const auto vals = eig_general(op);
        const int n = int(vals.size());
        // single-linkage clustering by absolute gap; informational only
        std::vector<int> cluster(n, -1);
        int nclusters = 0;
        for (int i = 0; i < n; ++i) {
            if (cluster[i] >= 0) continue;
            cluster[i] = nclusters;
            for (int j = i + 1; j < n; ++j)
                if (cluster[j] < 0 && std::abs(vals[i] - vals[j]) < cluster_tol)
                    cluster[j] = nclusters;
            ++nclusters;
        }
        std::vector<int> size(nclusters, 0);
        for (int i = 0; i < n; ++i) ++size[cluster[i]];
        for (int i = 0; i < n; ++i) {
            char line[160];
            std::snprintf(line, sizeof(line), "%s,%d,%.15e,%.15e,%d,%d\n", name.c_str(), i,
                          vals[i].real(), vals[i].imag(), cluster[i], size[cluster[i]]);
            csv += line;
        }
    };
    append("H", hamiltonian(p, HamiltonianRoute::blob));
    append("Q1", charge_tower(1, p));
    emit(csv, out_path);
    return kExitOk;
}

struct Range {
    double min = 0, max = 0;
    int steps = 1;
    double at(int i) const {
        return steps <= 1 ? min : min + (max - min) * double(i) / double(steps - 1);
    }
};

int run_sweep(const Range& mu, const Range& m, const Range& zeta, int n, double tol,
              std::uint64_t seed, const std::vector<std::string>& checks,
              const std::string& format, const std::string& out_path) {
    std::string md = "| mu | m | zeta | entries | worst residual | pass |\n"
                     "|---|---|---|---|---|---|\n";
    std::string jsonl;
    bool all_ok = true;
    for (int i = 0; i < mu.steps; ++i)
        for (int j = 0; j < m.steps; ++j)
            for (int k = 0; k < zeta.steps; ++k) {
                SuiteConfig cfg;
                cfg.mu = mu.at(i);
                cfg.m = m.at(j);
                cfg.zeta = zeta.at(k);
                cfg.max_sites = n;
                cfg.tolerance = tol;
                cfg.seed = seed;
                cfg.draws = 1;
                cfg.lambda_samples = 8;
                cfg.check_filters = checks;
                const VerificationReport rep = run_suite(cfg);
                all_ok = all_ok && rep.all_pass();
                char line[256];
                std::snprintf(line, sizeof(line), "| %.6g | %.6g | %.6g | %zu | %.3e | %s |\n",
                              *cfg.mu, *cfg.m, *cfg.zeta, rep.entries.size(),
                              rep.max_residual(), rep.all_pass() ? "yes" : "NO");
                md += line;
                std::snprintf(line, sizeof(line),
                              "{\"mu\": %.12g, \"m\": %.12g, \"zeta\": %.12g, "
                              "\"entries\": %zu, \"worst_residual\": %.6e, \"pass\": %s}\n",
                              *cfg.mu, *cfg.m, *cfg.zeta, rep.entries.size(),
                              rep.max_residual(), rep.all_pass() ? "true" : "false");
                jsonl += line;
            }
    emit(format == "md" ? md : jsonl, out_path);
    return all_ok ? kExitOk : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"open-chain boundary algebra toolkit: builds the lattice objects of the "
                 "anisotropic spin-1/2 chain with a non-diagonal right boundary and "
                 "verifies their algebraic identities"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI file");

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    SuiteConfig cfg;
    std::string verify_out;
    double vmu = -1, vm = -1, vzeta = -10;
    std::string vcase = "all", vgrad = "both";
    verify->add_option("--mu", vmu, "fix the anisotropy (otherwise drawn randomly)");
    verify->add_option("--m", vm, "fix the boundary parameter m");
    verify->add_option("--zeta", vzeta, "fix the boundary parameter zeta");
    verify->add_option("--n", cfg.max_sites, "largest chain length")
        ->check(CLI::PositiveNumber);
    verify->add_option("--case", vcase, "restrict to one left-boundary case")
        ->check(CLI::IsMember({"I", "II", "III", "all"}));
    verify->add_option("--gradation", vgrad, "restrict to one gradation")
        ->check(CLI::IsMember({"homogeneous", "principal", "both"}));
    verify->add_option("--tol", cfg.tolerance, "relative residual tolerance");
    verify->add_option("--seed", cfg.seed, "rng seed");
    verify->add_option("--draws", cfg.draws, "parameter draws per check");
    verify->add_option("--lambda-samples", cfg.lambda_samples, "spectral samples per draw");
    verify->add_option("--checks", cfg.check_filters, "substring filters on check names")
        ->delimiter(',');
    verify->add_option("--format", cfg.format, "json|md")
        ->check(CLI::IsMember({"json", "md"}));
    verify->add_option("--out", verify_out, "write the report to a file instead of stdout");

    // build
    auto* build = app.add_subcommand("build", "construct one lattice object and export it");
    CommonParams bparams;
    bparams.attach(build);
    std::string object, lambda_text = "symbolic", form = "blob", build_out;
    build->add_option("--object", object, "r|kright|kleft|transfer|hamiltonian|q1|q2")
        ->required()
        ->check(CLI::IsMember({"r", "kright", "kleft", "transfer", "hamiltonian", "q1", "q2"}));
    build->add_option("--lambda", lambda_text, "spectral point 're[,im]' or 'symbolic'");
    build->add_option("--form", form, "right boundary construction form")
        ->check(CLI::IsMember({"blob", "explicit"}));
    build->add_option("--out", build_out, "output file (stdout when omitted)");

    // spectrum
    auto* spectrum =
        app.add_subcommand("spectrum", "eigenvalues of the Hamiltonian and the boundary charge");
    CommonParams sparams;
    sparams.attach(spectrum);
    double cluster_tol = 1e-8;
    std::string spectrum_out;
    spectrum->add_option("--cluster-tol", cluster_tol,
                         "absolute gap threshold for degeneracy clustering");
    spectrum->add_option("--out", spectrum_out, "output CSV file (stdout when omitted)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "re-run selected checks over a parameter grid");
    Range rmu{0.3, 0.3, 1}, rm{0.7, 0.7, 1}, rzeta{0.2, 0.2, 1};
    int sweep_n = 2;
    double sweep_tol = 1e-10;
    std::uint64_t sweep_seed = 12345;
    std::vector<std::string> sweep_checks;
    std::string sweep_format = "md", sweep_out;
    sweep->add_option("--mu-min", rmu.min);
    sweep->add_option("--mu-max", rmu.max);
    sweep->add_option("--mu-steps", rmu.steps)->check(CLI::PositiveNumber);
    sweep->add_option("--m-min", rm.min);
    sweep->add_option("--m-max", rm.max);
    sweep->add_option("--m-steps", rm.steps)->check(CLI::PositiveNumber);
    sweep->add_option("--zeta-min", rzeta.min);
    sweep->add_option("--zeta-max", rzeta.max);
    sweep->add_option("--zeta-steps", rzeta.steps)->check(CLI::PositiveNumber);
    sweep->add_option("--n", sweep_n, "largest chain length")->check(CLI::PositiveNumber);
    sweep->add_option("--tol", sweep_tol);
    sweep->add_option("--seed", sweep_seed);
    sweep->add_option("--checks", sweep_checks, "substring filters")->delimiter(',');
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"json", "md"}));
    sweep->add_option("--out", sweep_out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            if (verify->count("--mu")) cfg.mu = vmu;
            if (verify->count("--m")) cfg.m = vm;
            if (verify->count("--zeta")) cfg.zeta = vzeta;
            if (vcase != "all") cfg.bcase = boundary_case_from_string(vcase);
            if (vgrad != "both") cfg.gradation = gradation_from_string(vgrad);
            return run_verify(cfg, verify_out);
        }
        if (build->parsed()) return run_build(bparams, object, lambda_text, form, build_out);
        if (spectrum->parsed()) return run_spectrum(sparams, cluster_tol, spectrum_out);
        if (sweep->parsed())
            return run_sweep(rmu, rm, rzeta, sweep_n, sweep_tol, sweep_seed, sweep_checks,
                             sweep_format, sweep_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
