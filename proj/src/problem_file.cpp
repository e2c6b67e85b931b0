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

#include <gluskabi/error.hpp>
#include <gluskabi/problem_file.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gluskabi {

using nlohmann::json;

const char* to_string(ProblemMode mode) noexcept {
    switch (mode) {
        case ProblemMode::signal:
            return "signal";
        case ProblemMode::dynamical:
            return "dynamical";
        case ProblemMode::membership:
            return "membership";
        case ProblemMode::check:
            return "check";
    }
    return "?";
}

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw error(errc::invalid_argument, where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) {
        schema(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema(where, "missing field '" + key + "'");
    }
    return *it;
}

int json_int(const json& v, const std::string& where, int min) {
    if (!v.is_number_integer() || v.get<long long>() < min || v.get<long long>() > 100000000) {
        schema(where, "expected an integer >= " + std::to_string(min));
    }
    return v.get<int>();
}

// A boundary value: a closed-form generator or a raw jet w, w', ... at the endpoint.
struct BoundarySpec {
    std::optional<Generator> generator;
    std::vector<double> jet;
};

std::vector<double> number_array(const json& v, const std::string& where) {
    if (!v.is_array()) {
        schema(where, "expected an array of numbers");
    }
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) {
        out.push_back(json_number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

BoundarySpec boundary_spec(const json& v, const std::string& where) {
    if (!v.is_object() || v.size() != 1) {
        schema(where, "expected one of {constant}, {exponential}, {polynomial}, {harmonic}, {jet}");
    }
    const std::string kind = v.begin().key();
    const json& body = v.begin().value();
    const std::string at = where + "." + kind;
    BoundarySpec out;
    if (kind == "constant") {
        out.generator = Generator::constant(json_number(body, at));
    } else if (kind == "exponential") {
        out.generator = Generator::exponential(json_number(field(body, "c", at), at + ".c"),
                                               json_number(field(body, "lambda", at), at + ".lambda"));
    } else if (kind == "polynomial") {
        out.generator = Generator::polynomial(number_array(body, at));
    } else if (kind == "harmonic") {
        const double omega = json_number(field(body, "omega", at), at + ".omega");
        if (!(omega > 0.0)) {
            schema(at + ".omega", "must be positive");
        }
        const double c0 = body.contains("c0") ? json_number(body["c0"], at + ".c0") : 0.0;
        std::vector<double> cs = body.contains("cos") ? number_array(body["cos"], at + ".cos") : std::vector<double>{};
        std::vector<double> ss = body.contains("sin") ? number_array(body["sin"], at + ".sin") : std::vector<double>{};
        out.generator = Generator::harmonic(omega, c0, cs, ss);
    } else if (kind == "jet") {
        out.jet = number_array(body, at);
        if (out.jet.empty()) {
            schema(at, "a jet needs at least the value");
        }
    } else {
        schema(where, "unknown boundary kind '" + kind + "'");
    }
    return out;
}

std::vector<BoundarySpec> boundary_list(const json& v, const std::string& where) {
    std::vector<BoundarySpec> out;
    if (v.is_array()) {
        if (v.empty()) {
            schema(where, "expected at least one component");
        }
        for (size_t i = 0; i < v.size(); ++i) {
            out.push_back(boundary_spec(v[i], where + "[" + std::to_string(i) + "]"));
        }
    } else {
        out.push_back(boundary_spec(v, where));
    }
    return out;
}

Jet make_jet(const std::vector<BoundarySpec>& specs, double t, int depth) {
    int rows = depth + 1;
    for (const auto& s : specs) {
        if (!s.generator) {
            rows = std::min(rows, static_cast<int>(s.jet.size()));
        }
    }
    Jet j;
    j.t = t;
    j.values.resize(rows, static_cast<Eigen::Index>(specs.size()));
    for (size_t c = 0; c < specs.size(); ++c) {
        for (int d = 0; d < rows; ++d) {
            j.values(d, static_cast<Eigen::Index>(c)) =
                specs[c].generator ? specs[c].generator->eval(t, d) : specs[c].jet[static_cast<size_t>(d)];
        }
    }
    return j;
}

TypeOperator type_spec(const json& v, const std::string& where) {
    const json& kind = field(v, "kind", where);
    if (!kind.is_string()) {
        schema(where + ".kind", "expected a string");
    }
    std::map<std::string, double> params;
    if (v.contains("params")) {
        const json& p = v["params"];
        if (!p.is_object()) {
            schema(where + ".params", "expected an object");
        }
        for (auto it = p.begin(); it != p.end(); ++it) {
            params[it.key()] = json_number(it.value(), where + ".params." + it.key());
        }
    }
    if (kind.get<std::string>() == "linear") {
        return TypeOperator::linear(json_polynomial(field(v, "op", where), where + ".op"));
    }
    return make_builtin_type(kind.get<std::string>(), params);
}

std::pair<double, double> interval(const json& doc) {
    const json& v = field(doc, "interval", "problem");
    if (!v.is_array() || v.size() != 2) {
        schema("interval", "expected [a, b]");
    }
    const double a = json_number(v[0], "interval[0]");
    const double b = json_number(v[1], "interval[1]");
    if (!(a < b)) {
        schema("interval", "needs a < b");
    }
    return {a, b};
}

SobolevNorm norm_spec(const json& v, const std::string& where, double a, double b) {
    if (v.is_string() && v.get<std::string>() == "zero") {
        return SobolevNorm::zero(a, b);
    }
    const json& w = field(v, "weights", where);
    if (!w.is_array() || w.empty()) {
        schema(where + ".weights", "expected a nonempty array");
    }
    std::vector<Rational> weights;
    for (size_t i = 0; i < w.size(); ++i) {
        weights.push_back(json_rational(w[i], where + ".weights[" + std::to_string(i) + "]"));
    }
    try {
        return SobolevNorm(weights, a, b);
    } catch (const error& e) {
        schema(where, e.what());
    }
}

const json* optional_object(const json& doc, const std::string& key) {
    if (!doc.contains(key)) {
        return nullptr;
    }
    if (!doc[key].is_object()) {
        schema(key, "expected an object");
    }
    return &doc[key];
}

}  // namespace

Rational json_rational(const json& v, const std::string& where) {
    if (v.is_number_integer()) {
        return Rational(std::to_string(v.get<long long>()));
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            schema(where, "expected a finite number");
        }
        // Through the shortest decimal text, so 0.1 reads as 1/10.
        return parse_rational(v.dump());
    }
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const error&) {
            schema(where, "cannot parse number '" + v.get<std::string>() + "'");
        }
    }
    schema(where, "expected a number or a \"num/den\" string");
}

double json_number(const json& v, const std::string& where) {
    if (v.is_number()) {
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            schema(where, "expected a finite number");
        }
        return d;
    }
    return json_rational(v, where).get_d();
}

Polynomial json_polynomial(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_polynomial(v.get<std::string>());
        } catch (const error&) {
            schema(where, "cannot parse polynomial '" + v.get<std::string>() + "'");
        }
    }
    if (v.is_number()) {
        return Polynomial::constant(json_rational(v, where));
    }
    if (v.is_array()) {
        std::vector<Rational> c;
        for (size_t i = 0; i < v.size(); ++i) {
            c.push_back(json_rational(v[i], where + "[" + std::to_string(i) + "]"));
        }
        return Polynomial(c);
    }
    schema(where, "expected a polynomial (coefficient array or string)");
}

PolyMatrix json_poly_matrix(const json& v, const std::string& where) {
    if (!v.is_object()) {
        return PolyMatrix(json_polynomial(v, where));
    }
    const json& rows = field(v, "rows", where);
    if (!rows.is_array() || rows.empty()) {
        schema(where + ".rows", "expected a nonempty array of rows");
    }
    std::vector<std::vector<Polynomial>> out;
    for (size_t r = 0; r < rows.size(); ++r) {
        const std::string at = where + ".rows[" + std::to_string(r) + "]";
        if (!rows[r].is_array() || rows[r].empty()) {
            schema(at, "expected a nonempty array of polynomials");
        }
        if (!out.empty() && rows[r].size() != out.front().size()) {
            schema(at, "rows have different lengths");
        }
        out.emplace_back();
        for (size_t c = 0; c < rows[r].size(); ++c) {
            out.back().push_back(json_polynomial(rows[r][c], at + "[" + std::to_string(c) + "]"));
        }
    }
    return PolyMatrix::from_rows(out);
}

ProblemFile parse_problem(const json& doc) {
    if (!doc.is_object()) {
        schema("problem", "expected a JSON object");
    }
    const json& version = field(doc, "schema", "problem");
    if (!version.is_string() || version.get<std::string>() != kSchema) {
        schema("schema", std::string("expected \"") + kSchema + "\"");
    }
    const json& mode = field(doc, "mode", "problem");
    if (!mode.is_string()) {
        schema("mode", "expected a string");
    }
    ProblemFile out;
    out.source = doc;
    const std::string m = mode.get<std::string>();

    int grid = -1;
    if (const json* o = optional_object(doc, "output")) {
        if (o->contains("grid")) {
            grid = json_int((*o)["grid"], "output.grid", 3);
        }
        if (o->contains("precision")) {
            out.precision = json_int((*o)["precision"], "output.precision", 1);
            if (out.precision > 17) {
                schema("output.precision", "at most 17 significant digits");
            }
        }
    }
    const json* solver = optional_object(doc, "solver");
    auto solver_number = [&](const char* key, double fallback) {
        return solver && solver->contains(key) ? json_number((*solver)[key], std::string("solver.") + key) : fallback;
    };

    if (m == "signal") {
        out.mode = ProblemMode::signal;
        auto [a, b] = interval(doc);
        SignalProblem p;
        p.type = type_spec(field(doc, "type", "problem"), "type");
        p.norm = norm_spec(field(doc, "norm", "problem"), "norm", a, b);
        if (p.norm.is_zero()) {
            schema("norm", "a signal problem needs a nonzero norm");
        }
        const json& bd = field(doc, "boundary", "problem");
        auto left = boundary_list(field(bd, "left", "boundary"), "boundary.left");
        auto right = boundary_list(field(bd, "right", "boundary"), "boundary.right");
        if (left.size() != right.size()) {
            schema("boundary", "left and right need the same number of components");
        }
        const int depth = std::max(boundary_condition_count(p.type, p.norm) - 1, p.type.required_order());
        p.left = make_jet(left, a, depth);
        p.right = make_jet(right, b, depth);
        if (grid > 0) {
            p.grid = grid;
        }
        p.tolerance = solver_number("tolerance", p.tolerance);
        if (solver && solver->contains("collocation_nodes")) {
            p.collocation_nodes = json_int((*solver)["collocation_nodes"], "solver.collocation_nodes", 11);
        }
        if (solver && solver->contains("el_form")) {
            const json& f = (*solver)["el_form"];
            if (!f.is_string()) {
                schema("solver.el_form", "expected a string");
            }
            try {
                p.el_form = el_form_from_string(f.get<std::string>());
            } catch (const error& e) {
                schema("solver.el_form", e.what());
            }
        }
        out.signal = std::move(p);
    } else if (m == "dynamical" || m == "check") {
        out.mode = m == "check" ? ProblemMode::check : ProblemMode::dynamical;
        DynamicalProblem p;
        const json& sys = field(doc, "system", "problem");
        p.P = json_poly_matrix(field(sys, "P", "system"), "system.P");
        p.N = json_poly_matrix(field(sys, "N", "system"), "system.N");
        if (solver && solver->contains("completion")) {
            const json& c = (*solver)["completion"];
            if (c == "bezout") {
                p.completion.method = CompletionMethod::bezout;
            } else if (c == "column_reduction") {
                p.completion.method = CompletionMethod::column_reduction;
            } else {
                schema("solver.completion", "expected \"bezout\" or \"column_reduction\"");
            }
        }
        if (out.mode == ProblemMode::dynamical || doc.contains("type")) {
            auto [a, b] = interval(doc);
            p.type = type_spec(field(doc, "type", "problem"), "type");
            const json& norms = field(doc, "norms", "problem");
            p.qu = norm_spec(field(norms, "u", "norms"), "norms.u", a, b);
            p.qy = norm_spec(field(norms, "y", "norms"), "norms.y", a, b);
            if (out.mode == ProblemMode::dynamical) {
                const json& bd = field(doc, "boundary", "problem");
                const json& bu = field(bd, "u", "boundary");
                const json& by = field(bd, "y", "boundary");
                // Deep enough for any matching order the eta equation can ask for.
                const int depth = 2 * (std::max(p.P.max_degree(), p.N.max_degree()) + p.type.required_order() +
                                       std::max({p.qu.order(), p.qy.order(), 0})) + 4;
                p.u_left = make_jet(boundary_list(field(bu, "left", "boundary.u"), "boundary.u.left"), a, depth);
                p.u_right = make_jet(boundary_list(field(bu, "right", "boundary.u"), "boundary.u.right"), b, depth);
                p.y_left = make_jet(boundary_list(field(by, "left", "boundary.y"), "boundary.y.left"), a, depth);
                p.y_right = make_jet(boundary_list(field(by, "right", "boundary.y"), "boundary.y.right"), b, depth);
            }
        }
        if (grid > 0) {
            p.grid = grid;
        }
        p.tolerance = solver_number("tolerance", p.tolerance);
        out.dynamical = std::move(p);
    } else if (m == "membership") {
        out.mode = ProblemMode::membership;
        MembershipProblem p;
        auto [a, b] = interval(doc);
        p.a = a;
        p.b = b;
        p.type = type_spec(field(doc, "type", "problem"), "type");
        if (grid > 0) {
            p.grid = grid;
        }
        if (doc.contains("threshold")) {
            p.threshold = json_number(doc["threshold"], "threshold");
        }
        const json& tr = field(doc, "trajectory", "problem");
        if (tr.is_object() && tr.contains("samples")) {
            const json& s = tr["samples"];
            p.sample_times = number_array(field(s, "t", "trajectory.samples"), "trajectory.samples.t");
            const json& values = field(s, "values", "trajectory.samples");
            if (!values.is_array() || values.empty()) {
                schema("trajectory.samples.values", "expected one array per component");
            }
            for (size_t c = 0; c < values.size(); ++c) {
                auto v = number_array(values[c], "trajectory.samples.values[" + std::to_string(c) + "]");
                if (v.size() != p.sample_times.size()) {
                    schema("trajectory.samples.values", "every component needs one value per sample time");
                }
                p.samples.push_back(Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
            }
            if (p.sample_times.size() < 9) {
                schema("trajectory.samples.t", "at least 9 samples are needed for differentiation");
            }
            if (p.sample_times.front() != a || p.sample_times.back() != b) {
                schema("trajectory.samples.t", "samples must span the interval");
            }
        } else {
            for (const auto& spec : boundary_list(tr, "trajectory")) {
                if (!spec.generator) {
                    schema("trajectory", "a raw jet cannot describe a whole trajectory; give samples instead");
                }
                p.generators.push_back(*spec.generator);
            }
        }
        out.membership = std::move(p);
    } else {
        schema("mode", "expected signal, dynamical, membership or check");
    }
    return out;
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw error(errc::invalid_argument, "cannot read " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw error(errc::invalid_argument, path.string() + ": malformed JSON: " + e.what());
    }
    return parse_problem(doc);
}

}  // namespace gluskabi
