#include <nlohmann/json.hpp>

#include "calabikit/reports.hpp"
#include "doctest.h"

using namespace calabikit;

namespace {

RunConfig base_config(const std::string& surface) {
    RunConfig c;
    c.surface = surface;
    c.samples = 20;
    c.seed = 1;
    return c;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("resolvability reports carry the schema and pass for the catalog") {
    SUBCASE("degree-3 homogeneous potential at d = 4: rank 4") {
        RunConfig c = base_config("parton:k=3");
        c.degree = 4;
        const nlohmann::json r = cmd_resolvability(c);
        CHECK(r["schema"] == 1);
        CHECK(r["command"] == "resolvability");
        CHECK(r["claim"] == "parton-rank-k-plus-1");
        CHECK(r["resolvability"]["psd"] == true);
        CHECK(r["resolvability"]["rank"] == 4);
        CHECK(r["pass"] == true);
    }
    SUBCASE("flat exponents at d = 2: rank 2") {
        RunConfig c = base_config("hopf:a=1,b=1");
        c.degree = 2;
        const nlohmann::json r = cmd_resolvability(c);
        CHECK(r["resolvability"]["rank"] == 2);
        CHECK(r["pass"] == true);
    }
    SUBCASE("entire exponential potential at d = 3: psd, one block per z-power") {
        RunConfig c = base_config("kodaira");
        c.degree = 3;
        const nlohmann::json r = cmd_resolvability(c);
        CHECK(r["resolvability"]["psd"] == true);
        CHECK(r["resolvability"]["rank"] == 4);
    }
    SUBCASE("disc-model diastasis: psd, rank d + 1") {
        RunConfig c = base_config("inoue");
        c.degree = 3;
        const nlohmann::json r = cmd_resolvability(c);
        CHECK(r["resolvability"]["psd"] == true);
        CHECK(r["resolvability"]["rank"] == 4);
    }
    SUBCASE("distinct moduli are routed to the witness with a notice") {
        const nlohmann::json r = cmd_resolvability(base_config("hopf:alpha=4,beta=2"));
        CHECK(r["command"] == "resolvability");
        CHECK(r.contains("notice"));
        CHECK(r["witness_found"] == true);
        CHECK(r["witness_j"] == 2);
        CHECK(r["pass"] == true);
    }
}

TEST_CASE("witness command: products, cross-checks, and the equal-moduli case") {
    SUBCASE("|alpha| = 4, |beta| = 2") {
        const nlohmann::json r = cmd_witness(4.0, 2.0, base_config(""));
        CHECK(r["witness_found"] == true);
        CHECK(r["witness_j"] == 2);
        CHECK(r["eigenvalue_product"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(r["cross_check"]["closed_form"].get<double>() == doctest::Approx(-2.25).epsilon(1e-12));
        CHECK(r["cross_check"]["pass"] == true);
        CHECK(r["pass"] == true);
    }
    SUBCASE("|alpha| = |beta| = 3: no witness up to jmax = 40") {
        const nlohmann::json r = cmd_witness(3.0, 3.0, base_config(""));
        CHECK(r["witness_found"] == false);
        CHECK(r["pass"] == true);
    }
    SUBCASE("slightly distinct moduli") {
        const nlohmann::json r = cmd_witness(std::exp(1.01), std::exp(0.99), base_config(""));
        CHECK(r["witness_found"] == true);
        CHECK(r["witness_j"] == 2);
    }
    SUBCASE("invalid moduli") {
        CHECK_THROWS_AS(cmd_witness(2.0, 4.0, base_config("")), std::invalid_argument);
        CHECK_THROWS_AS(cmd_witness(2.0, 0.5, base_config("")), std::invalid_argument);
    }
}

TEST_CASE("verify command") {
    SUBCASE("homogeneous map passes with c = 1") {
        RunConfig c = base_config("parton:k=2");
        c.samples = 50;
        const nlohmann::json r = cmd_verify(c);
        CHECK(r["pass"] == true);
        CHECK(r["certificate"]["c"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r["map"] == "parton-k2");
    }
    SUBCASE("no immersion on record: explicit not-applicable") {
        const nlohmann::json r = cmd_verify(base_config("hopf:alpha=4,beta=2"));
        CHECK(r["applicable"] == false);
        CHECK(r["reason"].get<std::string>().find("negative eigenvalue") != std::string::npos);
    }
}

TEST_CASE("descent command certifies the dichotomy") {
    SUBCASE("homogeneous map: scalar alpha^k with the equivariance note") {
        const nlohmann::json r = cmd_descent(base_config("parton:k=2"));
        CHECK(r["descent"]["mode"] == "scalar");
        CHECK(r["descent"]["lambda"]["re"].get<double>() == doctest::Approx(4.0).epsilon(1e-9));
        CHECK(r["expected_mode"] == "scalar");
        CHECK(r.contains("note"));
        CHECK(r["pass"] == true);
    }
    SUBCASE("equal moduli, distinct eigenvalues: gram") {
        const nlohmann::json r = cmd_descent(base_config("hopf:alpha=2,beta=2i"));
        CHECK(r["descent"]["mode"] == "gram");
        CHECK(r["expected_mode"] == "gram");
        CHECK(r["pass"] == true);
    }
    SUBCASE("disc map under f0: none") {
        RunConfig c = base_config("inoue");
        c.deck = "f0";
        const nlohmann::json r = cmd_descent(c);
        CHECK(r["descent"]["mode"] == "none");
        CHECK(r["pass"] == true);
    }
    SUBCASE("unknown deck") {
        RunConfig c = base_config("parton:k=2");
        c.deck = "nope";
        CHECK_THROWS_AS(cmd_descent(c), std::invalid_argument);
    }
}

TEST_CASE("character command measures factors and ranks them") {
    SUBCASE("elliptic default decks 2id, 3id: rank 2, obstructed") {
        const nlohmann::json r = cmd_character(base_config("elliptic"));
        CHECK(r["character_rank"] == 2);
        CHECK(r["rank_label"] == "rank >= 2 (heuristic)");
        CHECK(r["verdict"].get<std::string>().find("no proper potential") != std::string::npos);
        CHECK(r["factors"][0]["factor"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(r["factors"][1]["factor"].get<double>() == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
        CHECK(r["pass"] == true);
    }
    SUBCASE("single generator on the ambient: rank 1") {
        const nlohmann::json r = cmd_character(base_config("ambient:lambda=2"));
        CHECK(r["character_rank"] == 1);
        CHECK(r["verdict"].get<std::string>().find("rank 1") != std::string::npos);
    }
}

TEST_CASE("lck command") {
    for (const std::string surface : {"inoue", "ambient:lambda=2", "hopf:alpha=4,beta=2"}) {
        const nlohmann::json r = cmd_lck(base_config(surface));
        CHECK(r["pass"] == true);
        CHECK(r["max_residual"].get<double>() < 1e-5);
        CHECK(r["records"].size() == 20);
        CHECK(r["records"][0]["check"] == "lck-residual");
    }
}

TEST_CASE("reports are byte-identical across runs with the same config") {
    for (const std::string surface : {"parton:k=2", "elliptic", "inoue"}) {
        RunConfig c = base_config(surface);
        const std::string first = dump_report(cmd_verify(c));
        const std::string second = dump_report(cmd_verify(c));
        CHECK(first == second);
        const std::string lck1 = dump_report(cmd_lck(c));
        const std::string lck2 = dump_report(cmd_lck(c));
        CHECK(lck1 == lck2);
    }
}

TEST_CASE("config validation and exit codes") {
    RunConfig c = base_config("parton:k=2");
    c.samples = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config("parton:k=2");
    c.degree = 9;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config("parton:k=2");
    c.tol = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    CHECK(report_exit_code({{"pass", true}}) == 0);
    CHECK(report_exit_code({{"pass", false}}) == 1);
    CHECK(report_exit_code(nlohmann::json::object()) == 1);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("cli");

TEST_CASE("character accepts an explicit deck list") {
    RunConfig c;
    c.surface = "elliptic";
    c.deck = "2id,3id";
    c.samples = 15;
    const nlohmann::json r = cmd_character(c);
    CHECK(r["character_rank"] == 2);
    CHECK(r["factors"].size() == 2);
}

TEST_SUITE_END();
