#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "xxz/export.hpp"
#include "xxz/suite.hpp"

using namespace xxz;
using nlohmann::json;

namespace {

SuiteConfig small_config() {
    SuiteConfig cfg;
    cfg.max_sites = 3;
    cfg.draws = 2;
    cfg.lambda_samples = 4;
    cfg.seed = 777;
    return cfg;
}

} // namespace

TEST_CASE("manifest is frozen") {
    const std::vector<std::string> expected = {
        "blob_charge_commutation",
        "blob_relations",
        "braid_relation",
        "charge_coproduct_variant",
        "charge_extraction_homogeneous",
        "charge_extraction_principal",
        "charge_routes",
        "closed_transfer_commutativity",
        "control_boundary_broken_m",
        "control_exchange_broken_x1",
        "coproduct_coassociativity",
        "doubled_monodromy_assembly",
        "doubled_monodromy_gauge",
        "doubled_monodromy_reflection",
        "eval_rep_consistency",
        "exchange_relations",
        "fundamental_exchange",
        "hamiltonian_routes",
        "hamiltonian_symmetry",
        "info_blob_charge_q2",
        "intertwiner_boundary",
        "intertwiner_doubled",
        "intertwiner_lax",
        "k_left_dual",
        "k_right_forms",
        "k_right_principal_display",
        "lax_fundamental",
        "lax_hat_inverse",
        "monodromy_asymptotics",
        "monodromy_product",
        "open_transfer_commutativity",
        "r_blob_form",
        "r_gauge",
        "reflection_equation",
        "serre_relations",
        "symmetry_case_I",
        "symmetry_case_II",
        "symmetry_case_III",
        "transfer_case_forms",
        "transfer_gauge_invariance",
        "uq_relations",
        "ybe",
    };
    CHECK(suite_manifest() == expected);
}

TEST_CASE("small suite run passes") {
    const VerificationReport rep = run_suite(small_config());
    CHECK(!rep.entries.empty());
    for (const auto& e : rep.entries) {
        INFO(e.check_name, " residual=", e.residual, " err=", e.error);
        CHECK(e.pass);
    }
    CHECK(rep.all_pass());
}

TEST_CASE("identical seed and config give identical reports") {
    const std::string a = run_suite(small_config()).to_json();
    const std::string b = run_suite(small_config()).to_json();
    CHECK(a == b);
    SuiteConfig other = small_config();
    other.seed = 778;
    CHECK(run_suite(other).to_json() != a);
}

TEST_CASE("check filters restrict the run") {
    SuiteConfig cfg = small_config();
    cfg.check_filters = {"symmetry"};
    const VerificationReport rep = run_suite(cfg);
    CHECK(!rep.entries.empty());
    for (const auto& e : rep.entries)
        CHECK(e.check_name.find("symmetry") != std::string::npos);
}

TEST_CASE("controls detect deliberately broken inputs") {
    SuiteConfig cfg = small_config();
    cfg.check_filters = {"control_"};
    const VerificationReport rep = run_suite(cfg);
    REQUIRE(rep.entries.size() >= 2);
    for (const auto& e : rep.entries) {
        CHECK(e.pass);               // the control entry passes...
        CHECK(e.residual > 1e-4);    // ...because the broken identity is loud
    }
}

TEST_CASE("singular parameter point fails only the Hamiltonian checks") {
    SuiteConfig cfg = small_config();
    cfg.mu = 0.3;
    cfg.m = 0.7;
    cfg.zeta = -0.35; // zeta = -m/2 makes x(0) vanish
    const VerificationReport rep = run_suite(cfg);
    CHECK(!rep.all_pass());
    bool ham_failed = false;
    for (const auto& e : rep.entries) {
        if (e.check_name.rfind("hamiltonian", 0) == 0) {
            CHECK(!e.pass);
            CHECK(!e.error.empty());
            ham_failed = true;
        } else if (e.check_name.rfind("info_", 0) != 0 &&
                   e.check_name.rfind("control_", 0) != 0) {
            INFO(e.check_name, " residual=", e.residual, " err=", e.error);
            CHECK(e.pass);
        }
    }
    CHECK(ham_failed);
}

TEST_CASE("report serializations") {
    SuiteConfig cfg = small_config();
    cfg.check_filters = {"blob_relations"};
    const VerificationReport rep = run_suite(cfg);
    const json parsed = json::parse(rep.to_json());
    CHECK(parsed["overall_pass"].get<bool>());
    CHECK(parsed["seed"].get<std::uint64_t>() == cfg.seed);
    CHECK(parsed["entries"].is_array());
    CHECK(!parsed["entries"].empty());
    const auto& e0 = parsed["entries"][0];
    CHECK(e0.contains("check_name"));
    CHECK(e0.contains("residual"));
    CHECK(e0.contains("tolerance"));
    CHECK(e0.contains("pass"));
    CHECK(e0["params"].contains("mu"));
    const std::string md = rep.to_markdown();
    CHECK(md.find("| check |") != std::string::npos);
    CHECK(md.find("blob_relations") != std::string::npos);
}

TEST_CASE("per-entry rng streams are decoupled") {
    const auto s1 = check_stream_seed(1, "ybe", 0);
    const auto s2 = check_stream_seed(1, "ybe", 1);
    const auto s3 = check_stream_seed(1, "reflection_equation", 0);
    const auto s4 = check_stream_seed(2, "ybe", 0);
    CHECK(s1 != s2);
    CHECK(s1 != s3);
    CHECK(s1 != s4);
}

TEST_CASE("matrix export format round-trips with full precision") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const CMat h = hamiltonian(p, HamiltonianRoute::blob);
    ExportMetadata meta;
    meta.object = "hamiltonian";
    meta.mu = p.mu;
    meta.m = p.m;
    meta.zeta = p.zeta;
    meta.sites = p.sites;
    meta.gradation = Gradation::homogeneous;
    meta.bcase = BoundaryCase::I;
    const std::string doc = export_matrix_json(h, meta);
    const json parsed = json::parse(doc);
    CHECK(parsed["dim"].get<int>() == 4);
    REQUIRE(parsed["data"].size() == 16);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            const auto& pair = parsed["data"][i * 4 + j];
            CHECK(pair[0].get<double>() == h(i, j).real());
            CHECK(pair[1].get<double>() == h(i, j).imag());
        }
    CHECK(parsed["metadata"]["object"] == "hamiltonian");
    CHECK(parsed["metadata"]["params"]["N"].get<int>() == 2);
    // every value is printed with 16 significant digits
    CHECK(doc.find("e+00") != std::string::npos);
    CHECK(doc.find('.') != std::string::npos);
}

TEST_CASE("Laurent export lists terms by degree") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    const OperatorMatrix r = r_matrix(p, Gradation::homogeneous);
    ExportMetadata meta;
    meta.object = "r";
    meta.mu = p.mu;
    meta.m = p.m;
    meta.zeta = p.zeta;
    meta.sites = 1;
    const json parsed = json::parse(export_laurent_json(r.mat, meta));
    CHECK(parsed["dim"].get<int>() == 4);
    REQUIRE(parsed["terms"].size() == 2);
    CHECK(parsed["terms"][0]["degree"].get<int>() == -1);
    CHECK(parsed["terms"][1]["degree"].get<int>() == 1);
}

TEST_CASE("grouped checks emit entries") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const auto ex = check_exchange_relations(p, Complex(0.3, 0.2), 1e-10);
    CHECK(ex.size() == 2);
    for (const auto& e : ex) CHECK(e.pass);
    const auto sym =
        check_symmetry(p, BoundaryCase::III, 1e-10, {Complex(0.2, 0.1), Complex(-0.4, 0.3)});
    CHECK(sym.size() == 2);
    for (const auto& e : sym) CHECK(e.pass);
    for (const auto& e : check_blob_charge_commutation(p, 1e-10)) CHECK(e.pass);
    for (const auto& e : check_hamiltonian(p, 1e-9)) CHECK(e.pass);
    for (const auto& e : check_braid_relation(p, 1e-10)) CHECK(e.pass);
}
