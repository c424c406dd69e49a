#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>

#include "calabikit/surfaces.hpp"

namespace calabikit {

// One batch check per invocation; every report carries the full
// configuration so runs are reproducible byte for byte.
struct RunConfig {
    std::string surface;
    std::string deck;  // deck selector(s); empty picks the family default
    int samples = 50;
    uint64_t seed = 1;
    double tol = 0.0;  // 0: per-command default
    int degree = 6;    // series truncation, in [1, 8]
    int jmax = 40;
    std::string points;  // optional path to a JSON array of sample points
    std::string csv;     // optional path for the coefficient-matrix CSV export

    void validate() const;
};

nlohmann::json cmd_resolvability(const RunConfig& config);
nlohmann::json cmd_witness(double alpha_abs, double beta_abs, const RunConfig& config);
nlohmann::json cmd_verify(const RunConfig& config);
nlohmann::json cmd_descent(const RunConfig& config);
nlohmann::json cmd_character(const RunConfig& config);
nlohmann::json cmd_lck(const RunConfig& config);

// 0: all checks passed, 1: a check failed (configuration errors throw and
// exit with 2 at the CLI boundary)
int report_exit_code(const nlohmann::json& report);
std::string dump_report(const nlohmann::json& report);

// fixed-seed interior samples; images under `deck` stay in the domain
std::vector<CVec> surface_samples(const Surface& surface, int count, uint64_t seed, bool immersion_frame,
                                  const DeckMap* deck = nullptr);

}  // namespace calabikit
