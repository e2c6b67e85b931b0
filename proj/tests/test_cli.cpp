/*
   Copyright 2026 The gluskabi authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gluskabi/cli.hpp>
#include <gluskabi/problem_file.hpp>

using namespace gluskabi;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kProblems = GLUSKABI_PROBLEM_DIR;

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("gluskabi_test_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path write_problem(const fs::path& dir, const std::string& name, const json& doc) {
    fs::path p = dir / (name + ".json");
    std::ofstream(p) << doc.dump(2);
    return p;
}

json problem(const std::string& name) { return json::parse(slurp(kProblems / (name + ".json"))); }

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
    std::ifstream in(p);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("shipped problem files parse") {
    for (const auto& entry : fs::directory_iterator(kProblems)) {
        INFO(entry.path().string());
        CHECK_NOTHROW(load_problem(entry.path()));
    }
}

TEST_CASE("el output parses back to the exact polynomial") {
    auto dir = scratch("el");
    RunOptions opt;
    opt.out_dir = dir;

    auto r = run("el", kProblems / "first_order_lag.json", opt);
    REQUIRE(r.status == exit_ok);
    json meta = json::parse(slurp(dir / "first_order_lag.el.json"));
    auto eta = build_eta_system(*load_problem(kProblems / "first_order_lag.json").dynamical);
    CHECK(parse_polynomial(meta["eta"]["determinant"]["display"].get<std::string>()) == eta.determinant);
    CHECK(parse_polynomial(meta["eta"]["operator"][0][0].get<std::string>()) == eta.eta_poly(0, 0));
    std::vector<Rational> c;
    for (const auto& s : meta["eta"]["determinant"]["coefficients"]) {
        c.emplace_back(s.get<std::string>());
    }
    CHECK(Polynomial(c) == Polynomial({0, 0, -2, 0, 1}));
    CHECK(meta["roots"].size() == 3);

    // A weighted norm with fractional weights: the EL operator is still exact.
    json doc = problem("quintic_transition");
    doc["norm"]["weights"] = {"1/3", 0, "2/7"};
    auto path = write_problem(dir, "weighted", doc);
    REQUIRE(run("el", path, opt).status == exit_ok);
    meta = json::parse(slurp(dir / "weighted.el.json"));
    auto file = load_problem(path);
    auto el = derive_el(file.signal->type, file.signal->norm);
    CHECK(parse_polynomial(meta["el"]["display"].get<std::string>()) == el.linear);
    c.clear();
    for (const auto& s : meta["el"]["coefficients"]) {
        c.emplace_back(s.get<std::string>());
    }
    CHECK(Polynomial(c) == el.linear);
}

TEST_CASE("reruns are byte-identical") {
    auto first = scratch("det1");
    auto second = scratch("det2");
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"signal", "quintic_transition"}, {"dynamical", "first_order_lag"}, {"dynamical", "capacitor"},
        {"member", "harmonic_nonmember"}, {"check", "two_output_plant"},  {"el", "exponential_transition"},
    };
    for (const auto& dir : {first, second}) {
        RunOptions opt;
        opt.out_dir = dir;
        for (const auto& [cmd, name] : runs) {
            REQUIRE(run(cmd, kProblems / (name + ".json"), opt).status == exit_ok);
        }
        // The nonlinear solve, on a smaller grid to keep this quick.
        opt.grid = 201;
        REQUIRE(run("signal", kProblems / "exponential_transition.json", opt).status == exit_ok);
    }
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(first)) {
        INFO(entry.path().filename().string());
        REQUIRE(fs::exists(second / entry.path().filename()));
        CHECK(slurp(entry.path()) == slurp(second / entry.path().filename()));
        ++compared;
    }
    CHECK(compared == 12);
}

TEST_CASE("capacitor CSV holds the ramp") {
    auto dir = scratch("cap");
    RunOptions opt;
    opt.out_dir = dir;
    REQUIRE(run("dynamical", kProblems / "capacitor.json", opt).status == exit_ok);
    std::string header;
    auto rows = read_csv(dir / "capacitor.csv", header);
    CHECK(header == "t,u,y");
    REQUIRE(rows.size() == 101);
    for (const auto& r : rows) {
        CHECK(std::abs(r[2] - r[0]) <= 1e-10);
        CHECK(std::abs(r[1] - (1 + r[0])) <= 1e-10);
    }
    json meta = json::parse(slurp(dir / "capacitor.meta.json"));
    CHECK(meta["cost"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(meta["problem"] == problem("capacitor"));
    CHECK_FALSE(meta.contains("timing_ms"));

    opt.timing = true;
    REQUIRE(run("dynamical", kProblems / "capacitor.json", opt).status == exit_ok);
    meta = json::parse(slurp(dir / "capacitor.meta.json"));
    CHECK(meta.contains("timing_ms"));
}

TEST_CASE("signal metadata") {
    auto dir = scratch("signal");
    RunOptions opt;
    opt.out_dir = dir;
    REQUIRE(run("signal", kProblems / "quintic_transition.json", opt).status == exit_ok);
    json meta = json::parse(slurp(dir / "quintic_transition.meta.json"));
    // 3t^2 - 2t^3 between the constants 0 and 1: cost of the second derivative is 12.
    CHECK(meta["cost"].get<double>() == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(meta["el"]["display"] == "xi^4");
    CHECK(meta["roots"][0]["multiplicity"] == 4);
    CHECK(meta.contains("basis"));
    std::string header;
    auto rows = read_csv(dir / "quintic_transition.csv", header);
    CHECK(header == "t,w");
    for (const auto& r : rows) {
        CHECK(std::abs(r[1] - (3 * r[0] * r[0] - 2 * r[0] * r[0] * r[0])) <= 1e-10);
    }
}

TEST_CASE("membership reports") {
    auto dir = scratch("member");
    RunOptions opt;
    opt.out_dir = dir;
    REQUIRE(run("member", kProblems / "exponential_member.json", opt).status == exit_ok);
    CHECK(json::parse(slurp(dir / "exponential_member.meta.json"))["member"] == true);
    REQUIRE(run("member", kProblems / "harmonic_nonmember.json", opt).status == exit_ok);
    CHECK(json::parse(slurp(dir / "harmonic_nonmember.meta.json"))["member"] == false);

    // Raw samples go through finite differences.
    json doc = problem("exponential_member");
    std::vector<double> t, v;
    for (int i = 0; i <= 200; ++i) {
        t.push_back(i / 200.0);
        v.push_back(3 * std::exp(1.5 * t.back()));
    }
    doc["trajectory"] = {{"samples", {{"t", t}, {"values", {v}}}}};
    doc["threshold"] = 1e-3;
    REQUIRE(run("member", write_problem(dir, "sampled", doc), opt).status == exit_ok);
    json meta = json::parse(slurp(dir / "sampled.meta.json"));
    CHECK(meta["member"] == true);
    CHECK(meta["derivatives"] == "finite differences");
}

TEST_CASE("exit codes and diagnostics") {
    auto dir = scratch("errors");
    RunOptions opt;
    opt.out_dir = dir;

    auto expect = [&](const json& doc, const std::string& cmd, int status, const std::string& needle) {
        auto r = run(cmd, write_problem(dir, "bad", doc), opt);
        CHECK(r.status == status);
        INFO(r.diagnostics);
        json d = json::parse(r.diagnostics);
        CHECK(d["status"] == status);
        CHECK(d["message"].get<std::string>().find(needle) != std::string::npos);
    };

    json doc = problem("capacitor");
    doc.erase("schema");
    expect(doc, "dynamical", exit_schema, "schema");
    doc = problem("capacitor");
    doc["schema"] = "gluskabi/0";
    expect(doc, "dynamical", exit_schema, "schema");
    doc = problem("capacitor");
    expect(doc, "signal", exit_schema, "does not accept");
    doc["interval"] = {1, 0};
    expect(doc, "dynamical", exit_schema, "interval");
    doc = problem("capacitor");
    doc["norms"]["y"]["weights"] = {1, "x"};
    expect(doc, "dynamical", exit_schema, "norms.y.weights[1]");
    doc = problem("exponential_transition");
    doc["boundary"]["left"] = {{"sawtooth", 1}};
    expect(doc, "signal", exit_schema, "boundary.left");
    doc = problem("exponential_transition");
    doc["norm"]["weights"] = {0, 1};
    expect(doc, "signal", exit_schema, "L2");

    // Boundary data outside the declared type.
    doc = problem("quintic_transition");
    doc["boundary"]["right"] = {{"exponential", {{"c", 1}, {"lambda", 1}}}};
    expect(doc, "signal", exit_infeasible, "");
    doc = problem("first_order_lag");
    doc["boundary"]["u"]["right"] = {{"constant", 2}};
    expect(doc, "dynamical", exit_infeasible, "");

    // Common factor between P and N.
    doc = problem("first_order_lag");
    doc["system"]["N"] = {1, 1};
    expect(doc, "dynamical", exit_infeasible, "");

    auto r = run("signal", dir / "missing.json", opt);
    CHECK(r.status == exit_schema);
    std::ofstream(dir / "garbled.json") << "{\"schema\": ";
    CHECK(run("signal", dir / "garbled.json", opt).status == exit_schema);
    CHECK(run("plot", kProblems / "capacitor.json", opt).status == exit_schema);

    CHECK(exit_code_for(errc::singular) == exit_solver);
    CHECK(exit_code_for(errc::not_converged) == exit_solver);
    CHECK(exit_code_for(errc::dimension_mismatch) == exit_schema);
    CHECK(exit_code_for(errc::not_coprime) == exit_infeasible);
}

TEST_CASE("uncontrollable plants are reported by check") {
    auto dir = scratch("check");
    RunOptions opt;
    opt.out_dir = dir;
    json doc = problem("two_output_plant");
    doc["system"]["P"] = {{"rows", json::array({json::array({"xi + 1", "0"}), json::array({"0", "xi + 1"})})}};
    REQUIRE(run("check", write_problem(dir, "twin", doc), opt).status == exit_ok);
    json meta = json::parse(slurp(dir / "twin.check.json"));
    CHECK(meta["controllable"] == false);
    CHECK(meta["minors_gcd"]["display"] == "xi + 1");
    CHECK_FALSE(meta.contains("completion"));
}

TEST_CASE("batch runs keep input order") {
    auto dir = scratch("batch");
    RunOptions opt;
    opt.out_dir = dir;
    std::vector<fs::path> inputs = {kProblems / "first_order_lag.json", dir / "missing.json", kProblems / "capacitor.json",
                                    kProblems / "two_output_plant.json"};
    std::vector<RunResult> results;
    CHECK(run_batch("dynamical", inputs, opt, 3, results) == exit_schema);
    REQUIRE(results.size() == 4);
    CHECK(results[0].status == exit_ok);
    CHECK(results[1].status == exit_schema);
    CHECK(results[2].status == exit_ok);
    CHECK(results[3].status == exit_schema);  // a check problem has no boundary data
    CHECK(results[0].report.find("xi^4 - 2*xi^2") != std::string::npos);
}

TEST_CASE("atomic writes leave no temporaries") {
    auto dir = scratch("atomic");
    write_atomically(dir / "a.txt", "one");
    write_atomically(dir / "a.txt", "two");
    CHECK(slurp(dir / "a.txt") == "two");
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
}
