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

#include <gluskabi/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <thread>

int main(int argc, char** argv) {
    using namespace gluskabi;

    CLI::App app{"Maximally persistent transitions between trajectories of a behavior"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string out_dir = ".";
    std::optional<int> grid;
    std::optional<double> tol;
    std::string el_form;
    bool timing = false;
    int jobs = 1;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"signal", "solve a free-signal transition"},
        {"dynamical", "solve a transition constrained by P(D)y = N(D)u"},
        {"el", "print the Euler-Lagrange (or eta) operator and its roots without solving"},
        {"member", "evaluate the type residual of a supplied trajectory"},
        {"check", "controllability and properness report for P, N"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--in", inputs, "problem file(s)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out-dir", out_dir, "directory for artifacts");
        sub->add_option("--grid", grid, "output grid points")->check(CLI::Range(2, 10000000));
        sub->add_option("--tol", tol, "solver tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--el-form", el_form, "Euler-Lagrange form for the exponential family")
            ->check(CLI::IsMember({"adjoint", "three_term"}));
        sub->add_flag("--timing", timing, "record wall-clock time in the metadata");
        sub->add_option("--jobs", jobs, "worker threads for several inputs")->check(CLI::Range(0, 1024));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_schema;
    }

    RunOptions options;
    options.out_dir = out_dir;
    options.grid = grid;
    options.tolerance = tol;
    options.timing = timing;
    if (!el_form.empty()) {
        options.el_form = el_form_from_string(el_form);
    }
    if (jobs == 0) {
        jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
    std::vector<RunResult> results;
    const int status = run_batch(command, paths, options, jobs, results);
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.status == exit_ok) {
            if (results.size() > 1) {
                std::cout << "== " << paths[i].string() << "\n";
            }
            std::cout << r.report;
        } else {
            std::cerr << r.diagnostics << "\n";
        }
    }
    return status;
}
