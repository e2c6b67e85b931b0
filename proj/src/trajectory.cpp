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
#include <gluskabi/finite_difference.hpp>
#include <gluskabi/trajectory.hpp>

#include <cmath>

namespace gluskabi {

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 2) {
        throw error(errc::invalid_argument, "trajectory grid needs at least two points");
    }
    for (size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw error(errc::invalid_argument, "trajectory grid must be strictly increasing");
        }
    }
}

}  // namespace

Trajectory Trajectory::from_closed_form(std::vector<double> grid, std::vector<std::string> names,
                                        std::vector<ModalExpansion> expansions) {
    check_grid(grid);
    if (names.size() != expansions.size()) {
        throw error(errc::dimension_mismatch, "one name per trajectory component");
    }
    Trajectory t;
    t.grid_ = std::move(grid);
    for (size_t c = 0; c < names.size(); ++c) {
        Component comp{std::move(names[c]), std::move(expansions[c]), {}};
        Eigen::VectorXd v(static_cast<Eigen::Index>(t.grid_.size()));
        for (size_t i = 0; i < t.grid_.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = comp.closed_form->eval(t.grid_[i]);
        }
        comp.derivatives.push_back(std::move(v));
        t.components_.push_back(std::move(comp));
    }
    return t;
}

Trajectory Trajectory::from_samples(std::vector<double> grid, std::vector<std::string> names,
                                    std::vector<std::vector<Eigen::VectorXd>> derivatives) {
    check_grid(grid);
    if (names.size() != derivatives.size()) {
        throw error(errc::dimension_mismatch, "one name per trajectory component");
    }
    Trajectory t;
    t.grid_ = std::move(grid);
    for (size_t c = 0; c < names.size(); ++c) {
        if (derivatives[c].empty()) {
            throw error(errc::invalid_argument, "component without samples");
        }
        for (const auto& d : derivatives[c]) {
            if (d.size() != static_cast<Eigen::Index>(t.grid_.size())) {
                throw error(errc::dimension_mismatch, "sample count does not match the grid");
            }
        }
        t.components_.push_back({std::move(names[c]), std::nullopt, std::move(derivatives[c])});
    }
    return t;
}

int Trajectory::index_of(const std::string& name) const {
    for (size_t c = 0; c < components_.size(); ++c) {
        if (components_[c].name == name) {
            return static_cast<int>(c);
        }
    }
    throw error(errc::invalid_argument, "no trajectory component named '" + name + "'");
}

bool Trajectory::uniform() const {
    const double h = (b() - a()) / (size() - 1);
    for (size_t i = 1; i < grid_.size(); ++i) {
        if (std::abs(grid_[i] - grid_[i - 1] - h) > 1e-9 * h) {
            return false;
        }
    }
    return true;
}

Eigen::VectorXd Trajectory::derivative(int c, int order) const {
    const Component& comp = component(c);
    if (order < 0) {
        throw error(errc::invalid_argument, "negative derivative order");
    }
    if (comp.closed_form) {
        if (order == 0) {
            return comp.derivatives.front();
        }
        Eigen::VectorXd v(size());
        for (int i = 0; i < size(); ++i) {
            v(i) = comp.closed_form->eval(grid_[static_cast<size_t>(i)], order);
        }
        return v;
    }
    if (order < static_cast<int>(comp.derivatives.size())) {
        return comp.derivatives[static_cast<size_t>(order)];
    }
    if (!uniform()) {
        throw error(errc::invalid_argument, "finite-difference derivatives need a uniform grid");
    }
    const int base = static_cast<int>(comp.derivatives.size()) - 1;
    const double h = (b() - a()) / (size() - 1);
    return fd_matrix(size(), h, order - base) * comp.derivatives.back();
}

Jet Trajectory::jet(int index, int depth) const {
    Jet j;
    j.t = grid_.at(static_cast<size_t>(index));
    j.values.resize(depth + 1, components());
    for (int c = 0; c < components(); ++c) {
        const Component& comp = components_[static_cast<size_t>(c)];
        for (int d = 0; d <= depth; ++d) {
            if (comp.closed_form) {
                j.values(d, c) = comp.closed_form->eval(j.t, d);
            } else {
                j.values(d, c) = derivative(c, d)(index);
            }
        }
    }
    return j;
}

Jet jet_of(const std::vector<ModalExpansion>& signals, double t, int depth) {
    Jet j;
    j.t = t;
    j.values.resize(depth + 1, static_cast<Eigen::Index>(signals.size()));
    for (size_t c = 0; c < signals.size(); ++c) {
        for (int d = 0; d <= depth; ++d) {
            j.values(d, static_cast<Eigen::Index>(c)) = signals[c].eval(t, d);
        }
    }
    return j;
}

}  // namespace gluskabi
