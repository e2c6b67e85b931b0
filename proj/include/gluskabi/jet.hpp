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

#include <Eigen/Core>

namespace gluskabi {

// Derivatives of a (possibly vector) signal at one instant: values(i, j) is the
// i-th derivative of component j.
struct Jet {
    double t = 0.0;
    Eigen::MatrixXd values;

    // Highest derivative order carried.
    int depth() const noexcept { return static_cast<int>(values.rows()) - 1; }
    int components() const noexcept { return static_cast<int>(values.cols()); }
    double operator()(int derivative, int component = 0) const { return values(derivative, component); }
};

}  // namespace gluskabi
