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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <gluskabi/jet.hpp>
#include <gluskabi/modal.hpp>

namespace gluskabi {

// A sampled signal on [grid.front(), grid.back()]. Each component either has a
// closed-form modal expansion (derivatives are then exact) or stored samples of
// its first few derivatives; anything deeper falls back to finite differences on
// the grid, which is markedly less accurate.
class Trajectory {
   public:
    struct Component {
        std::string name;
        std::optional<ModalExpansion> closed_form;
        // derivatives[d] holds samples of the d-th derivative.
        std::vector<Eigen::VectorXd> derivatives;
    };

    Trajectory() = default;

    static Trajectory from_closed_form(std::vector<double> grid, std::vector<std::string> names,
                                       std::vector<ModalExpansion> expansions);
    static Trajectory from_samples(std::vector<double> grid, std::vector<std::string> names,
                                   std::vector<std::vector<Eigen::VectorXd>> derivatives);

    const std::vector<double>& grid() const noexcept { return grid_; }
    double a() const { return grid_.front(); }
    double b() const { return grid_.back(); }
    int size() const noexcept { return static_cast<int>(grid_.size()); }
    int components() const noexcept { return static_cast<int>(components_.size()); }
    const Component& component(int c) const { return components_.at(static_cast<size_t>(c)); }
    int index_of(const std::string& name) const;

    Eigen::VectorXd values(int c) const { return derivative(c, 0); }
    Eigen::VectorXd derivative(int c, int order) const;
    Jet jet(int index, int depth) const;

    bool uniform() const;

   private:
    std::vector<double> grid_;
    std::vector<Component> components_;
};

// Jet of closed-form signals at time t.
Jet jet_of(const std::vector<ModalExpansion>& signals, double t, int depth);

}  // namespace gluskabi
