// SPDX-License-Identifier: Apache-2.0
//
// losmimo - line-of-sight wide-aperture MIMO array design and beam focusing
// Copyright (C) 2026 The losmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LOSMIMO_ERROR_HPP
#define LOSMIMO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace losmimo {

enum class Errc {
    InvalidArgument,
    NonFinite,
    NonSquare,
    NonHermitianInput,
    DimensionMismatch,
    IllConditionedBasis,
    OddStreamCount,
    StreamExceedsArray,
    DegeneratePlane,
    NotParallel,
    BadEpsilon,
    AllZeroEigenvalues,
    SingularCombiner,
    DictionaryExhausted,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this exception type; callers that
// need to branch on the failure kind inspect code().
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace losmimo

#endif
