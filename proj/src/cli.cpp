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
#include <gluskabi/finite_difference.hpp>
#include <gluskabi/problem_file.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace gluskabi {

using nlohmann::json;

int exit_code_for(errc code) noexcept {
    switch (code) {
        case errc::invalid_argument:
        case errc::dimension_mismatch:
        case errc::unsupported:
            return exit_schema;
        case errc::singular:
        case errc::not_converged:
        case errc::degree_cap:
            return exit_solver;
        case errc::inconsistent:
        case errc::not_coprime:
            return exit_infeasible;
    }
    return exit_solver;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    thread_local std::mt19937_64 rng(std::random_device{}());
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw error(errc::invalid_argument, "cannot write " + tmp.string());
        }
        out << contents;
        if (!out.flush()) {
            throw error(errc::invalid_argument, "cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string csv(const std::vector<double>& t, const std::vector<std::string>& names,
                const std::vector<Eigen::VectorXd>& columns, int precision) {
    std::string out = "t";
    for (const auto& n : names) {
        out += "," + n;
    }
    out += "\n";
    for (size_t i = 0; i < t.size(); ++i) {
        out += fmt(t[i], precision);
        for (const auto& c : columns) {
            out += "," + fmt(c(static_cast<Eigen::Index>(i)), precision);
        }
        out += "\n";
    }
    return out;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json poly_json(const Polynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) {
        coeffs.push_back(c.get_str());
    }
    return {{"display", p.to_string()}, {"coefficients", coeffs}};
}

json matrix_json(const PolyMatrix& m) {
    json rows = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c).to_string());
        }
        rows.push_back(row);
    }
    return rows;
}

json roots_json(const std::vector<Root>& roots) {
    json out = json::array();
    for (const auto& r : roots) {
        out.push_back({{"re", r.value.real()}, {"im", r.value.imag()}, {"multiplicity", r.multiplicity}});
    }
    return out;
}

std::string roots_text(const std::vector<Root>& roots) {
    std::ostringstream os;
    for (size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        os << (i ? ", " : "") << fmt(r.value.real(), 12);
        if (r.value.imag() != 0.0) {
            os << (r.value.imag() < 0 ? " - " : " + ") << fmt(std::abs(r.value.imag()), 12) << "i";
        }
        if (r.multiplicity > 1) {
            os << " (x" << r.multiplicity << ")";
        }
    }
    return os.str();
}

json basis_json(const std::vector<ModalExpansion>& signals, const std::vector<std::string>& names) {
    json out = json::object();
    for (size_t s = 0; s < signals.size(); ++s) {
        json groups = json::array();
        const auto& e = signals[s];
        for (size_t g = 0; g < e.groups().size(); ++g) {
            json coeffs = json::array();
            for (const auto& c : e.coeffs()[g]) {
                coeffs.push_back({c.real(), c.imag()});
            }
            const auto& grp = e.groups()[g];
            groups.push_back({{"root", {grp.root.real(), grp.root.imag()}},
                              {"anchor", grp.anchor},
                              {"coefficients", coeffs}});
        }
        out[names[s]] = groups;
    }
    return out;
}

json el_json(const ELEquation& el) {
    if (el.kind == ELEquation::Kind::linear) {
        json out = poly_json(el.linear);
        out["kind"] = "linear";
        out["order"] = el.order;
        out["derived"] = el.raw.to_string();
        return out;
    }
    return {{"kind", "nonlinear"}, {"form", to_string(el.form)}, {"equation", el.describe()}, {"order", el.order}};
}

std::vector<std::string> names_of(const Trajectory& t) {
    std::vector<std::string> out;
    for (int c = 0; c < t.components(); ++c) {
        out.push_back(t.component(c).name);
    }
    return out;
}

std::vector<Eigen::VectorXd> columns_of(const Trajectory& t) {
    std::vector<Eigen::VectorXd> out;
    for (int c = 0; c < t.components(); ++c) {
        out.push_back(t.values(c));
    }
    return out;
}

struct Context {
    const RunOptions& options;
    std::filesystem::path stem;
    RunResult& result;
    json meta;
    int precision = 12;

    void write(const std::string& suffix, const std::string& contents) {
        std::filesystem::path path = options.out_dir / stem;
        path += suffix;
        write_atomically(path, contents);
        result.artifacts.push_back(path);
    }
};

void run_signal(Context& ctx, SignalProblem p) {
    auto s = solve_signal_raccordation(p);
    ctx.meta["el"] = el_json(s.el);
    ctx.meta["roots"] = roots_json(s.roots);
    ctx.meta["cost"] = s.cost;
    ctx.meta["el_residual"] = number(s.el_residual);
    ctx.meta["boundary_residual"] = number(s.boundary_residual);
    ctx.meta["condition_number"] = number(s.condition_number);
    ctx.meta["iterations"] = s.iterations;
    ctx.meta["used_continuation"] = s.used_continuation;
    ctx.meta["warnings"] = s.warnings;
    ctx.meta["grid"] = {{"points", s.w.size()}, {"a", s.w.a()}, {"b", s.w.b()}};
    const auto names = names_of(s.w);
    std::vector<ModalExpansion> closed;
    for (int c = 0; c < s.w.components(); ++c) {
        if (s.w.component(c).closed_form) {
            closed.push_back(*s.w.component(c).closed_form);
        }
    }
    if (!closed.empty()) {
        ctx.meta["basis"] = basis_json(closed, names);
    }
    ctx.write(".csv", csv(s.w.grid(), names, columns_of(s.w), ctx.precision));
    std::ostringstream os;
    os << "EL: " << s.el.describe() << "\n";
    if (!s.roots.empty()) {
        os << "roots: " << roots_text(s.roots) << "\n";
    }
    os << "cost: " << fmt(s.cost, 12) << "\nEL residual: " << fmt(s.el_residual, 3) << "\n";
    for (const auto& w : s.warnings) {
        os << "warning: " << w << "\n";
    }
    ctx.result.report = os.str();
}

void run_dynamical(Context& ctx, const DynamicalProblem& p) {
    auto s = solve_dynamical_raccordation(p);
    ctx.meta["eta"] = {{"operator", matrix_json(s.eta.eta_poly)},
                       {"determinant", poly_json(s.eta.determinant)},
                       {"order", s.eta.order}};
    ctx.meta["completion"] = {{"U", matrix_json(s.eta.completion.U)},
                              {"U12", matrix_json(s.eta.completion.U12)},
                              {"U22", matrix_json(s.eta.completion.U22)}};
    ctx.meta["roots"] = roots_json(s.roots);
    ctx.meta["cost"] = s.cost;
    ctx.meta["derivative_conditions"] = s.derivative_conditions;
    ctx.meta["condition_count"] = s.condition_count;
    ctx.meta["condition_number"] = number(s.condition_number);
    ctx.meta["boundary_residual"] = number(s.boundary_residual);
    ctx.meta["dynamics_residual"] = number(s.dynamics_residual);
    ctx.meta["dynamics_coefficient_residual"] = number(s.dynamics_coefficient_residual);
    ctx.meta["eta_residual"] = number(s.eta_residual);
    auto names = names_of(s.u);
    auto more = names_of(s.y);
    ctx.meta["basis"] = basis_json(s.u_closed, names);
    const json ybasis = basis_json(s.y_closed, more);
    for (const auto& [k, v] : ybasis.items()) {
        ctx.meta["basis"][k] = v;
    }
    names.insert(names.end(), more.begin(), more.end());
    auto cols = columns_of(s.u);
    auto ycols = columns_of(s.y);
    cols.insert(cols.end(), ycols.begin(), ycols.end());
    ctx.meta["grid"] = {{"points", s.u.size()}, {"a", s.u.a()}, {"b", s.u.b()}};
    ctx.write(".csv", csv(s.u.grid(), names, cols, ctx.precision));
    std::ostringstream os;
    os << "eta: " << (s.eta.eta_poly.rows() == 1 ? s.eta.eta_poly(0, 0).to_string() : s.eta.determinant.to_string() + " (det)")
       << "\nroots: " << roots_text(s.roots) << "\ncost: " << fmt(s.cost, 12) << "\n";
    ctx.result.report = os.str();
}

void run_el(Context& ctx, const ProblemFile& file) {
    std::ostringstream os;
    if (file.signal) {
        const auto& p = *file.signal;
        ELEquation el = derive_el(p.type, p.norm, p.el_form);
        ctx.meta["el"] = el_json(el);
        os << "EL: " << el.describe() << "\n";
        if (el.kind == ELEquation::Kind::linear) {
            auto roots = char_roots(el.linear);
            ctx.meta["roots"] = roots_json(roots);
            os << "polynomial: " << el.linear.to_string() << "\nroots: " << roots_text(roots) << "\n";
        }
    } else {
        auto eta = build_eta_system(*file.dynamical);
        auto roots = char_roots(eta.determinant);
        ctx.meta["eta"] = {{"operator", matrix_json(eta.eta_poly)},
                           {"determinant", poly_json(eta.determinant)},
                           {"order", eta.order}};
        ctx.meta["completion"] = {{"U", matrix_json(eta.completion.U)},
                                  {"U12", matrix_json(eta.completion.U12)},
                                  {"U22", matrix_json(eta.completion.U22)}};
        ctx.meta["roots"] = roots_json(roots);
        if (eta.eta_poly.rows() == 1) {
            os << "eta: " << eta.eta_poly(0, 0).to_string() << "\n";
        } else {
            os << "eta: " << eta.eta_poly << "\ndet: " << eta.determinant.to_string() << "\n";
        }
        os << "roots: " << roots_text(roots) << "\n";
    }
    ctx.result.report = os.str();
}

void run_member(Context& ctx, const MembershipProblem& p) {
    const int depth = p.type.required_order();
    std::vector<double> grid;
    std::vector<Jet> jets;
    if (!p.generators.empty()) {
        grid = uniform_grid(p.a, p.b, p.grid);
        for (double t : grid) {
            jets.push_back(jet_of(p.generators, t, depth));
        }
    } else {
        grid = p.sample_times;
        std::vector<std::vector<Eigen::VectorXd>> derivs;
        std::vector<std::string> names;
        for (size_t c = 0; c < p.samples.size(); ++c) {
            derivs.push_back({p.samples[c]});
            names.push_back("w" + std::to_string(c + 1));
        }
        Trajectory tr = Trajectory::from_samples(grid, names, derivs);
        std::vector<std::vector<Eigen::VectorXd>> d(p.samples.size());
        for (int c = 0; c < tr.components(); ++c) {
            for (int k = 0; k <= depth; ++k) {
                d[static_cast<size_t>(c)].push_back(tr.derivative(c, k));
            }
        }
        for (size_t i = 0; i < grid.size(); ++i) {
            Jet j;
            j.t = grid[i];
            j.values.resize(depth + 1, static_cast<Eigen::Index>(p.samples.size()));
            for (size_t c = 0; c < p.samples.size(); ++c) {
                for (int k = 0; k <= depth; ++k) {
                    j.values(k, static_cast<Eigen::Index>(c)) = d[c][static_cast<size_t>(k)](static_cast<Eigen::Index>(i));
                }
            }
            jets.push_back(std::move(j));
        }
    }
    Eigen::VectorXd res(static_cast<Eigen::Index>(jets.size()));
    Eigen::VectorXd rel(static_cast<Eigen::Index>(jets.size()));
    for (size_t i = 0; i < jets.size(); ++i) {
        res(static_cast<Eigen::Index>(i)) = residual(p.type, jets[i]).cwiseAbs().maxCoeff();
        rel(static_cast<Eigen::Index>(i)) = membership_defect(p.type, jets[i]);
    }
    Eigen::Index worst = 0;
    const double max_rel = rel.maxCoeff(&worst);
    ctx.meta["max_residual"] = res.cwiseAbs().maxCoeff();
    ctx.meta["max_relative_residual"] = max_rel;
    ctx.meta["worst_t"] = grid[static_cast<size_t>(worst)];
    ctx.meta["threshold"] = p.threshold;
    ctx.meta["member"] = max_rel <= p.threshold;
    ctx.meta["derivatives"] = p.generators.empty() ? "finite differences" : "closed form";
    ctx.write(".csv", csv(grid, {"residual", "relative"}, {res, rel}, ctx.precision));
    ctx.result.report = std::string(max_rel <= p.threshold ? "member" : "not a member") +
                        " (max relative residual " + fmt(max_rel, 3) + " at t = " + fmt(grid[static_cast<size_t>(worst)], 6) + ")\n";
}

void run_check(Context& ctx, const DynamicalProblem& p) {
    std::ostringstream os;
    const Polynomial det = p.P.det();
    ctx.meta["det_P"] = poly_json(det);
    bool square = p.P.is_square() && p.N.rows() == p.P.rows();
    if (!square) {
        throw error(errc::dimension_mismatch, "P must be g x g and N must have g rows");
    }
    const bool proper = !det.is_zero() && is_proper(p.P, p.N);
    ctx.meta["proper"] = proper;
    Polynomial g;
    for (const auto& m : maximal_minors(hcat(p.P, -p.N))) {
        g = gcd(g, m);
    }
    ctx.meta["minors_gcd"] = poly_json(g);
    const bool controllable = !g.is_zero() && g.degree() == 0;
    ctx.meta["controllable"] = controllable;
    ctx.meta["left_coprime"] = controllable;
    os << "det P: " << det.to_string() << "\nproper: " << (proper ? "yes" : "no")
       << "\ngcd of maximal minors: " << g.to_string() << "\ncontrollable: " << (controllable ? "yes" : "no") << "\n";
    if (controllable) {
        auto u = unimodular_completion(p.N, p.P, p.completion);
        ctx.meta["completion"] = {{"U", matrix_json(u.U)}, {"U12", matrix_json(u.U12)}, {"U22", matrix_json(u.U22)}};
        os << "U: " << u.U << "\n";
    }
    ctx.result.report = os.str();
}

}  // namespace

RunResult run(const std::string& command, const std::filesystem::path& input, const RunOptions& options) {
    RunResult result;
    const auto start = std::chrono::steady_clock::now();
    try {
        ProblemFile file = load_problem(input);
        auto need = [&](std::initializer_list<ProblemMode> modes) {
            for (auto m : modes) {
                if (file.mode == m) {
                    return;
                }
            }
            throw error(errc::invalid_argument, "command '" + command + "' does not accept a " +
                                                    to_string(file.mode) + " problem");
        };
        if (file.signal) {
            if (options.grid) {
                file.signal->grid = *options.grid;
            }
            if (options.tolerance) {
                file.signal->tolerance = *options.tolerance;
            }
            if (options.el_form) {
                file.signal->el_form = *options.el_form;
            }
        }
        if (file.dynamical) {
            if (options.grid) {
                file.dynamical->grid = *options.grid;
            }
            if (options.tolerance) {
                file.dynamical->tolerance = *options.tolerance;
            }
        }
        if (file.membership && options.grid) {
            file.membership->grid = *options.grid;
        }
        std::filesystem::create_directories(options.out_dir);
        Context ctx{options, input.stem(), result, json::object(), file.precision};
        ctx.meta["schema"] = kSchema;
        ctx.meta["command"] = command;
        ctx.meta["problem"] = file.source;
        std::string suffix = ".meta.json";
        if (command == "signal") {
            need({ProblemMode::signal});
            run_signal(ctx, *file.signal);
        } else if (command == "dynamical") {
            need({ProblemMode::dynamical});
            run_dynamical(ctx, *file.dynamical);
        } else if (command == "el") {
            need({ProblemMode::signal, ProblemMode::dynamical});
            run_el(ctx, file);
            suffix = ".el.json";
        } else if (command == "member") {
            need({ProblemMode::membership});
            run_member(ctx, *file.membership);
        } else if (command == "check") {
            need({ProblemMode::dynamical, ProblemMode::check});
            run_check(ctx, *file.dynamical);
            suffix = ".check.json";
        } else {
            throw error(errc::invalid_argument, "unknown command '" + command + "'");
        }
        if (options.timing) {
            ctx.meta["timing_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        ctx.write(suffix, ctx.meta.dump(2) + "\n");
        result.status = exit_ok;
    } catch (const error& e) {
        result.status = exit_code_for(e.code());
        result.diagnostics = json{{"file", input.string()},
                                  {"command", command},
                                  {"status", result.status},
                                  {"error", to_string(e.code())},
                                  {"message", e.what()}}
                                 .dump();
    } catch (const std::exception& e) {
        result.status = exit_solver;
        result.diagnostics =
            json{{"file", input.string()}, {"command", command}, {"status", result.status}, {"error", "internal"}, {"message", e.what()}}
                .dump();
    }
    return result;
}

int run_batch(const std::string& command, const std::vector<std::filesystem::path>& inputs, const RunOptions& options,
              int jobs, std::vector<RunResult>& results) {
    results.assign(inputs.size(), RunResult{});
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next++; i < inputs.size(); i = next++) {
            results[i] = run(command, inputs[i], options);
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(inputs.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    int status = exit_ok;
    for (const auto& r : results) {
        status = std::max(status, r.status);
    }
    return status;
}

}  // namespace gluskabi
