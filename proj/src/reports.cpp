#include "calabikit/reports.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "calabikit/calabi.hpp"
#include "calabikit/util.hpp"

namespace calabikit {

namespace {

using Family = SurfaceSpec::Family;

nlohmann::json config_json(const RunConfig& c) {
    return {{"surface", c.surface}, {"deck", c.deck}, {"samples", c.samples}, {"seed", c.seed},
            {"tol", c.tol},         {"d", c.degree},  {"jmax", c.jmax},       {"points", c.points}};
}

nlohmann::json notes_json(const Surface& surface) {
    nlohmann::json notes = nlohmann::json::array();
    for (const std::string& n : surface.notes) notes.push_back(n);
    return notes;
}

nlohmann::json make_report(const std::string& command, const RunConfig& config, const std::string& claim) {
    return {{"schema", 1}, {"command", command}, {"config", config_json(config)}, {"claim", claim}};
}

nlohmann::json point_json(const CVec& z) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        j.push_back(z(i).real());
        j.push_back(z(i).imag());
    }
    return j;
}

nlohmann::json not_applicable(nlohmann::json report, const std::string& reason) {
    report["applicable"] = false;
    report["reason"] = reason;
    report["pass"] = true;
    return report;
}

double default_tol(const RunConfig& config, double fallback) { return config.tol > 0.0 ? config.tol : fallback; }

}  // namespace

void RunConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (tol < 0.0) throw std::invalid_argument("config: tol must be positive");
    if (degree < 1 || degree > 8) throw std::invalid_argument("config: d must be in [1, 8]");
    if (jmax < 2) throw std::invalid_argument("config: jmax must be >= 2");
}

std::vector<CVec> surface_samples(const Surface& surface, int count, uint64_t seed, bool immersion_frame,
                                  const DeckMap* deck) {
    const auto& sampler = immersion_frame ? surface.sample_immersion_point : surface.sample_point;
    const auto guard = [&](const CVec& z) {
        const HermitianMetricField& metric =
            immersion_frame && surface.immersion_target ? *surface.immersion_target : surface.covering_metric;
        if (!metric.in_domain(z)) return false;
        if (immersion_frame && surface.immersion && !surface.immersion->in_domain(z)) return false;
        if (deck) {
            const CVec image = deck->apply(z);
            if (!metric.in_domain(image)) return false;
            if (immersion_frame && surface.immersion && !surface.immersion->in_domain(image)) return false;
        }
        return true;
    };
    Rng rng(seed);
    std::vector<CVec> samples;
    int attempts = 0;
    while (static_cast<int>(samples.size()) < count) {
        if (++attempts > 1000 * count) throw std::runtime_error("surface_samples: rejection sampling stalled");
        CVec z = sampler(rng);
        if (guard(z)) samples.push_back(std::move(z));
    }
    return samples;
}

nlohmann::json cmd_witness(double alpha_abs, double beta_abs, const RunConfig& config) {
    config.validate();
    if (!(alpha_abs >= beta_abs && beta_abs > 1.0))
        throw std::invalid_argument("witness: requires |alpha| >= |beta| > 1");
    const GOParams params = GOParams::from_moduli(alpha_abs, beta_abs);

    nlohmann::json report = make_report("witness", config, "go-immersion-iff-equal-moduli");
    report["a"] = params.a;
    report["b"] = params.b;
    const bool equal_moduli = std::abs(params.a - 1.0) <= 1e-12;
    const auto witness = go_negative_witness(params.a, params.b, config.jmax);
    report["witness_found"] = witness.has_value();
    bool pass = witness.has_value() != equal_moduli;
    if (witness) {
        report["witness_j"] = *witness;
        report["eigenvalue_product"] = go_eigenvalue_product(params.a, params.b, *witness);
        if (*witness <= 3) {
            const GODerivativeCheck check = go_derivative_check(params, Complex(1.0, 0.0), *witness);
            const double tol = default_tol(config, *witness == 2 ? 1e-4 : 1e-3);
            const double err = std::abs(check.closed_form - check.finite_difference) /
                               std::max(1.0, std::abs(check.closed_form));
            report["cross_check"] = {{"j", *witness},
                                     {"s", 1.0},
                                     {"closed_form", check.closed_form},
                                     {"finite_difference", check.finite_difference},
                                     {"tol", tol},
                                     {"pass", err <= tol}};
            pass = pass && err <= tol;
        }
    }
    report["pass"] = pass;
    return report;
}

nlohmann::json cmd_resolvability(const RunConfig& config) {
    config.validate();
    const SurfaceSpec spec = SurfaceSpec::parse(config.surface);
    const Surface surface = build_surface(spec, config.degree);

    const PotentialField* potential = nullptr;
    if (surface.immersion_potential && surface.immersion_potential->exact_series)
        potential = &*surface.immersion_potential;
    else if (surface.covering_potential.exact_series)
        potential = &surface.covering_potential;

    if (!potential) {
        if (spec.family == Family::HopfDiagonal) {
            RunConfig routed = config;
            nlohmann::json report =
                cmd_witness(std::abs(spec.alpha), std::abs(spec.beta), routed);
            report["command"] = "resolvability";
            report["notice"] = "no exact expansion at the center; ran the negative-eigenvalue witness instead";
            return report;
        }
        return not_applicable(make_report("resolvability", config, "calabi-local-criterion"),
                              "the surface has no exact potential expansion at its center");
    }

    std::string claim = "calabi-local-criterion";
    if (spec.family == Family::HopfParton) claim = "parton-rank-k-plus-1";

    nlohmann::json report = make_report("resolvability", config, claim);
    const BiSeries d0 = diastasis_from_potential(*potential->exact_series);
    const CalabiMatrix matrix = calabi_matrix(d0);
    if (!config.csv.empty()) {
        std::ofstream file(config.csv, std::ios::binary);
        if (!file) throw std::invalid_argument("resolvability: cannot open " + config.csv);
        file << matrix.to_csv();
        report["csv"] = config.csv;
    }
    const ResolvabilityReport res = resolvability(matrix, default_tol(config, 1e-9));
    report["resolvability"] = res.to_json(matrix.labels);
    report["rank_is_lower_bound"] = true;  // rank is reported up to the truncation degree
    // single-valuedness of the extended diastasis is assumed for the
    // simply connected coverings of the catalog, not checked
    report["assumes_single_valued_diastasis"] = true;
    bool pass = res.psd;
    if (spec.family == Family::HopfParton) pass = pass && res.rank == spec.k + 1 && config.degree >= spec.k;
    report["pass"] = pass;
    return report;
}

namespace {

std::string verify_claim(Family family) {
    switch (family) {
        case Family::HopfParton: return "parton-covering-immersion";
        case Family::ProperlyElliptic: return "elliptic-covering-immersion";
        case Family::Kodaira: return "kodaira-covering-immersion";
        case Family::InoueSM: return "tricerri-covering-immersion";
        default: return "flat-covering-immersion";
    }
}

}  // namespace

nlohmann::json cmd_verify(const RunConfig& config) {
    config.validate();
    const SurfaceSpec spec = SurfaceSpec::parse(config.surface);
    const Surface surface = build_surface(spec, config.degree);
    nlohmann::json report = make_report("verify", config, verify_claim(spec.family));
    report["map"] = surface.immersion ? surface.immersion->name : "";

    if (!surface.immersion || !surface.immersion_target) {
        std::string reason = "no covering immersion on record";
        for (const std::string& n : surface.notes)
            if (n.rfind("no covering immersion", 0) == 0) reason = n;
        return not_applicable(std::move(report), reason);
    }

    const std::vector<CVec> samples = surface_samples(surface, config.samples, config.seed, true);
    const double tol = default_tol(config, 1e-6);
    const ImmersionCertificate cert = verify_immersion(*surface.immersion, *surface.immersion_target, samples, tol);
    report["certificate"] = cert.to_json();
    report["seed"] = config.seed;
    report["notes"] = notes_json(surface);
    // c far from 1 records a normalization-convention difference, it is not
    // a failure by itself
    report["normalization_constant"] = cert.fitted_constant;
    report["pass"] = cert.pass;
    return report;
}

namespace {

struct DescentExpectation {
    std::string expect;  // "scalar" | "gram" | "none"
    std::string why;
};

DescentExpectation descent_expectation(const Surface& surface, const std::string& deck_name) {
    switch (surface.spec.family) {
        case Family::HopfParton: return {"scalar", "components are homogeneous of degree k"};
        case Family::HopfDiagonal:
            if (std::abs(surface.spec.alpha - surface.spec.beta) < 1e-12)
                return {"scalar", "equal eigenvalues act as a multiple of the identity"};
            return {"gram", "equal moduli preserve the Gram pairing but no componentwise scalar exists"};
        case Family::Kodaira:
            if (deck_name == "g0") return {"scalar", "the vertical translation rescales every component"};
            return {"gram", "lattice translations act by ambient unitaries, not by scalars"};
        case Family::ProperlyElliptic: return {"scalar", "the component ratios are scale-invariant"};
        case Family::InoueSM: return {"none", "the centered diastasis is not equivariant under f0"};
        default: return {"scalar", "a multiple of the identity rescales the identity immersion"};
    }
}

}  // namespace

nlohmann::json cmd_descent(const RunConfig& config) {
    config.validate();
    const SurfaceSpec spec = SurfaceSpec::parse(config.surface);
    const Surface surface = build_surface(spec, config.degree);
    nlohmann::json report = make_report("descent", config, "quotient-descent-dichotomy");
    report["map"] = surface.immersion ? surface.immersion->name : "";

    if (!surface.immersion) {
        std::string reason = "no covering immersion on record";
        for (const std::string& n : surface.notes)
            if (n.rfind("no covering immersion", 0) == 0) reason = n;
        return not_applicable(std::move(report), reason);
    }
    const std::optional<DeckMap> deck = surface.resolve_deck(config.deck, true);
    if (!deck) throw std::invalid_argument("descent: unknown deck selector '" + config.deck + "'");
    report["deck"] = deck->name;

    const std::vector<CVec> samples =
        surface_samples(surface, std::max(config.samples, 60), config.seed, true, &*deck);
    const DescentReport descent = scalar_descent(*surface.immersion, *deck, samples, default_tol(config, 1e-8));
    report["descent"] = descent.to_json();
    report["seed"] = config.seed;
    report["samples_used"] = static_cast<int>(samples.size());
    report["notes"] = notes_json(surface);

    const DescentExpectation expectation = descent_expectation(surface, deck->name);
    report["expected_mode"] = expectation.expect;
    report["expectation_basis"] = expectation.why;
    if (spec.family == Family::HopfParton)
        report["note"] =
            "measured equivariance scalar is alpha^k; the k^k ambient contraction is not what the "
            "displayed components realize";
    const std::string mode = report["descent"]["mode"];
    report["pass"] = mode == expectation.expect;
    return report;
}

nlohmann::json cmd_character(const RunConfig& config) {
    config.validate();
    const SurfaceSpec spec = SurfaceSpec::parse(config.surface);
    const Surface surface = build_surface(spec, config.degree);
    nlohmann::json report = make_report("character", config, "proper-potential-character-rank");

    std::vector<std::string> selectors;
    if (!config.deck.empty()) {
        std::string cur;
        for (char c : config.deck + ",") {
            if (c == ',') {
                if (!cur.empty()) selectors.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
    } else if (spec.family == Family::ProperlyElliptic) {
        selectors = {"2id", "3id"};
    } else {
        for (const DeckMap& d : surface.deck) selectors.push_back(d.name);
    }

    nlohmann::json factor_records = nlohmann::json::array();
    std::vector<double> factors;
    bool all_homothetic = true;
    for (const std::string& sel : selectors) {
        const std::optional<DeckMap> deck = surface.resolve_deck(sel, false);
        if (!deck) throw std::invalid_argument("character: unknown deck selector '" + sel + "'");
        const std::vector<CVec> samples = surface_samples(surface, config.samples, config.seed, false, &*deck);
        const HomothetyResult h = homothety_factor(*deck, surface.covering_metric, samples, 1e-6);
        factor_records.push_back({{"check", "homothety"},
                                  {"deck", deck->name},
                                  {"factor", h.factor},
                                  {"spread", h.spread},
                                  {"pass", h.homothetic}});
        all_homothetic = all_homothetic && h.homothetic;
        if (h.homothetic) factors.push_back(h.factor);
    }
    report["factors"] = factor_records;

    const CharacterRankResult rank = character_rank(factors, 50, 1e-9);
    report["character_rank"] = rank.rank;
    report["rank_label"] = rank.label;
    report["verdict"] = rank.rank <= 1 ? "character rank 1: a proper potential is admissible"
                                       : "obstructed: no proper potential -> not Hopf-induced";
    report["notes"] = notes_json(surface);
    report["pass"] = all_homothetic;
    return report;
}

nlohmann::json cmd_lck(const RunConfig& config) {
    config.validate();
    const SurfaceSpec spec = SurfaceSpec::parse(config.surface);
    const Surface surface = build_surface(spec, config.degree);
    nlohmann::json report = make_report("lck", config, "lck-structure-equation");

    std::vector<CVec> samples;
    if (!config.points.empty()) {
        std::ifstream file(config.points);
        if (!file) throw std::invalid_argument("lck: cannot open points file " + config.points);
        nlohmann::json parsed;
        file >> parsed;
        for (const auto& row : parsed) {
            CVec z(surface.lck_metric.nvars);
            for (Eigen::Index a = 0; a < z.size(); ++a)
                z(a) = Complex(row.at(2 * a).get<double>(), row.at(2 * a + 1).get<double>());
            if (!surface.lck_metric.in_domain(z))
                throw std::domain_error("lck: supplied point outside the guarded domain");
            samples.push_back(std::move(z));
        }
    } else {
        samples = surface_samples(surface, config.samples, config.seed, false);
    }
    const double tol = default_tol(config, 1e-5);
    const std::vector<double> residuals = parallel_map<double>(static_cast<int>(samples.size()), [&](int i) {
        return lck_residual(surface.lck_metric, samples[static_cast<size_t>(i)]);
    });
    nlohmann::json records = nlohmann::json::array();
    double max_residual = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        max_residual = std::max(max_residual, residuals[i]);
        records.push_back({{"check", "lck-residual"},
                           {"point", point_json(samples[i])},
                           {"residual", residuals[i]},
                           {"pass", residuals[i] < tol}});
    }
    report["records"] = records;
    report["max_residual"] = max_residual;
    report["tol"] = tol;
    report["notes"] = notes_json(surface);
    report["pass"] = max_residual < tol;
    return report;
}

int report_exit_code(const nlohmann::json& report) {
    return report.contains("pass") && report["pass"].get<bool>() ? 0 : 1;
}

std::string dump_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace calabikit
