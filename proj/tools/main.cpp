// calabi-kit: batch checks for the lcK immersion catalog. Every subcommand
// emits one JSON report; exit 0 = pass, 1 = a check failed, 2 = bad usage.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "calabikit/reports.hpp"

using calabikit::RunConfig;

namespace {

void add_common(CLI::App* cmd, RunConfig& config, std::string& out) {
    cmd->add_option("--surface", config.surface, "catalog selector, e.g. parton:k=2 or hopf:alpha=4,beta=2");
    cmd->add_option("--deck", config.deck, "deck selector(s), e.g. gamma, f0, 2id,3id");
    cmd->add_option("--samples", config.samples, "number of sample points");
    cmd->add_option("--seed", config.seed, "sample generator seed");
    cmd->add_option("--tol", config.tol, "override the per-command tolerance");
    cmd->add_option("--d", config.degree, "series truncation degree (per side)")->check(CLI::Range(1, 8));
    cmd->add_option("--jmax", config.jmax, "largest index tried by the witness search");
    cmd->add_option("--points", config.points, "JSON file with sample points as [re, im, ...] arrays");
    cmd->add_option("--out", out, "write the report to this path instead of stdout");
}

int emit(const nlohmann::json& report, const std::string& out) {
    const std::string text = calabikit::dump_report(report);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open " << out << "\n";
            return 2;
        }
        file << text;
    }
    return calabikit::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for isometric immersions into Hopf manifolds"};
    app.require_subcommand(1);

    RunConfig config;
    std::string out;
    double alpha_abs = 0.0, beta_abs = 0.0;

    CLI::App* resolvability = app.add_subcommand("resolvability", "diastasis expansion: PSD + rank report");
    CLI::App* witness = app.add_subcommand("witness", "negative-eigenvalue witness for the implicit potential");
    CLI::App* verify = app.add_subcommand("verify", "pullback-metric certificate for the covering immersion");
    CLI::App* descent = app.add_subcommand("descent", "scalar/Gram equivariance of the immersion under a deck map");
    CLI::App* character = app.add_subcommand("character", "homothety factors and the rank of their group");
    CLI::App* lck = app.add_subcommand("lck", "residual of d(omega) = theta ^ omega at interior samples");
    for (CLI::App* cmd : {resolvability, witness, verify, descent, character, lck}) add_common(cmd, config, out);
    witness->add_option("--alpha-abs", alpha_abs, "|alpha| (used when no --surface is given)");
    witness->add_option("--beta-abs", beta_abs, "|beta|");

    resolvability->add_option("--csv", config.csv, "also write the coefficient matrix to this CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json report;
        if (resolvability->parsed()) {
            report = calabikit::cmd_resolvability(config);
        } else if (witness->parsed()) {
            if (!config.surface.empty()) {
                const auto spec = calabikit::SurfaceSpec::parse(config.surface);
                alpha_abs = std::abs(spec.alpha);
                beta_abs = std::abs(spec.beta);
            }
            report = calabikit::cmd_witness(alpha_abs, beta_abs, config);
        } else if (verify->parsed()) {
            report = calabikit::cmd_verify(config);
        } else if (descent->parsed()) {
            report = calabikit::cmd_descent(config);
        } else if (character->parsed()) {
            report = calabikit::cmd_character(config);
        } else {
            report = calabikit::cmd_lck(config);
        }
        return emit(report, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
