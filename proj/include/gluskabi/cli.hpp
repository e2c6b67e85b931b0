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

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gluskabi/error.hpp>
#include <gluskabi/raccord_signal.hpp>

namespace gluskabi {

// Process exit statuses.
enum ExitCode : int {
    exit_ok = 0,
    exit_schema = 2,      // unreadable file, schema violation, unsupported request
    exit_solver = 3,      // singular boundary system, no convergence
    exit_infeasible = 4,  // inconsistent boundary data, uncontrollable plant
};

int exit_code_for(errc code) noexcept;

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<int> grid;
    std::optional<double> tolerance;
    std::optional<ElForm> el_form;
    // Wall-clock timing in the metadata. Off by default so that reruns are
    // byte-identical.
    bool timing = false;
};

struct RunResult {
    int status = exit_ok;
    std::vector<std::filesystem::path> artifacts;
    std::string report;       // human-readable summary (stdout)
    std::string diagnostics;  // one JSON object on failure (stderr)
};

// command is one of signal, dynamical, el, member, check.
RunResult run(const std::string& command, const std::filesystem::path& input, const RunOptions& options);

// Independent problems on a pool of `jobs` threads. Results are in input order;
// the returned status is the largest individual one.
int run_batch(const std::string& command, const std::vector<std::filesystem::path>& inputs, const RunOptions& options,
              int jobs, std::vector<RunResult>& results);

// Writes via a temporary file in the same directory and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace gluskabi
