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

#include <stdexcept>
#include <string>

namespace gluskabi {

enum class errc {
    invalid_argument,
    dimension_mismatch,
    not_coprime,
    singular,
    not_converged,
    inconsistent,
    unsupported,
    degree_cap,
};

const char* to_string(errc code) noexcept;

// Every failure raised by the library carries one of the codes above so that the
// CLI can map it onto an exit status.
class error : public std::runtime_error {
   public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

   private:
    errc code_;
};

}  // namespace gluskabi
