#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string tmp = "cli_out.tmp";
    const std::string cmd = std::string(XXZ_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    std::remove(tmp.c_str());
    return r;
}

} // namespace

TEST_CASE("verify at a pinned regular point exits 0 with a JSON report") {
    const RunResult r =
        run_cli("verify --mu 0.3 --m 0.7 --zeta 0.2 --n 3 --draws 1 --lambda-samples 4");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.output);
    CHECK(rep["overall_pass"].get<bool>());
    CHECK(!rep["entries"].empty());
}

TEST_CASE("verify respects check filters and markdown format") {
    const RunResult r = run_cli("verify --mu 0.3 --m 0.7 --zeta 0.2 --n 2 --draws 1 "
                                "--lambda-samples 2 --checks symmetry --format md");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("| check |") != std::string::npos);
    CHECK(r.output.find("symmetry_case_I") != std::string::npos);
    CHECK(r.output.find("ybe") == std::string::npos);
}

TEST_CASE("verify at the singular boundary locus exits 1 but keeps running") {
    // zeta = -m/2: the Hamiltonian normalization 1/x(0) is singular
    const RunResult r = run_cli("verify --mu 0.3 --m 0.7 --zeta -0.35 --n 2 --draws 1 "
                                "--lambda-samples 2");
    CHECK(r.exit_code == 1);
    const json rep = json::parse(r.output);
    CHECK(!rep["overall_pass"].get<bool>());
    bool ham_error = false, others_pass = true;
    for (const auto& e : rep["entries"]) {
        const std::string name = e["check_name"].get<std::string>();
        if (name.rfind("hamiltonian", 0) == 0) {
            if (e.contains("error")) ham_error = true;
        } else if (name.rfind("control_", 0) != 0 && name.rfind("info_", 0) != 0) {
            others_pass = others_pass && e["pass"].get<bool>();
        }
    }
    CHECK(ham_error);
    CHECK(others_pass);
}

TEST_CASE("identical seeds give identical reports") {
    const std::string args =
        "verify --mu 0.4 --m 0.9 --zeta 0.1 --n 2 --draws 1 --lambda-samples 3 --seed 99";
    CHECK(run_cli(args).output == run_cli(args).output);
}

TEST_CASE("build writes the documented matrix file") {
    const std::string out = "ham_n2.json";
    const RunResult r = run_cli("build --object hamiltonian --n 2 --mu 0.3 --m 0.7 "
                                "--zeta 0.2 --out " +
                                out);
    REQUIRE(r.exit_code == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    const json doc = json::parse(f);
    CHECK(doc["dim"].get<int>() == 4);
    CHECK(doc["data"].size() == 16);
    CHECK(doc["data"][0].size() == 2);
    CHECK(doc["metadata"]["object"] == "hamiltonian");
    CHECK(doc["metadata"]["params"]["mu"].get<double>() == doctest::Approx(0.3));
    CHECK(doc["metadata"]["params"]["N"].get<int>() == 2);
    std::remove(out.c_str());
}

TEST_CASE("build exports evaluated and symbolic objects") {
    const RunResult sym = run_cli("build --object r --mu 0.3 --lambda symbolic");
    CHECK(sym.exit_code == 0);
    const json symdoc = json::parse(sym.output);
    CHECK(symdoc["dim"].get<int>() == 4);
    CHECK(symdoc["terms"].size() == 2);

    const RunResult ev = run_cli("build --object transfer --n 2 --mu 0.3 --m 0.7 --zeta 0.2 "
                                 "--case II --lambda 0.4,0.1");
    CHECK(ev.exit_code == 0);
    const json evdoc = json::parse(ev.output);
    CHECK(evdoc["dim"].get<int>() == 4);
    CHECK(evdoc["metadata"]["case"] == "II");
    CHECK(evdoc["metadata"]["lambda"][0].get<double>() == doctest::Approx(0.4));
}

TEST_CASE("spectrum emits CSV with clustering columns") {
    const RunResult r = run_cli("spectrum --n 2 --mu 0.3 --m 0.7 --zeta 0.2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("operator,index,real,imag,cluster,cluster_size", 0) == 0);
    int lines = 0;
    for (char c : r.output)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 4 + 4); // header + H eigenvalues + Q1 eigenvalues
}

TEST_CASE("sweep runs a small grid") {
    const RunResult r = run_cli("sweep --mu-min 0.3 --mu-max 0.5 --mu-steps 2 --n 2 "
                                "--checks blob_relations --format md");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("| mu |") != std::string::npos);
    CHECK(r.output.find("0.5") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("verify --format yaml").exit_code == 2);
    CHECK(run_cli("build --object nonsense --out x.json").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}
