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
#include <string>
#include <vector>

#include <json.hpp>

#include <gluskabi/generators.hpp>
#include <gluskabi/raccord_dynamical.hpp>
#include <gluskabi/raccord_signal.hpp>
#include <gluskabi/trajectory.hpp>

namespace gluskabi {

inline constexpr const char* kSchema = "gluskabi/1";

enum class ProblemMode { signal, dynamical, membership, check };

const char* to_string(ProblemMode mode) noexcept;

// A trajectory to be tested for membership: closed-form generators (one per
// component) or raw samples on a uniform grid.
struct MembershipProblem {
    TypeOperator type;
    double a = 0.0;
    double b = 1.0;
    int grid = 201;
    std::vector<Generator> generators;
    std::vector<double> sample_times;
    std::vector<Eigen::VectorXd> samples;
    double threshold = 1e-6;
};

struct ProblemFile {
    ProblemMode mode = ProblemMode::signal;
    nlohmann::json source;
    std::optional<SignalProblem> signal;
    std::optional<DynamicalProblem> dynamical;
    std::optional<MembershipProblem> membership;
    int precision = 12;
};

// Schema violations throw errc::invalid_argument with the offending path in the
// message. Boundary data are only parsed here, not checked against the type.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile load_problem(const std::filesystem::path& path);

// Numbers may be JSON numbers or strings "n", "n/d", "-0.25".
Rational json_rational(const nlohmann::json& value, const std::string& where);
double json_number(const nlohmann::json& value, const std::string& where);

// A polynomial as ascending coefficients, a polynomial matrix as rows of such
// arrays; a bare coefficient array is read as a 1x1 matrix.
Polynomial json_polynomial(const nlohmann::json& value, const std::string& where);
PolyMatrix json_poly_matrix(const nlohmann::json& value, const std::string& where);

}  // namespace gluskabi
