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

#include "losmimo/error.hpp"

namespace losmimo {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NonSquare: return "NonSquare";
    case Errc::NonHermitianInput: return "NonHermitianInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IllConditionedBasis: return "IllConditionedBasis";
    case Errc::OddStreamCount: return "OddStreamCount";
    case Errc::StreamExceedsArray: return "StreamExceedsArray";
    case Errc::DegeneratePlane: return "DegeneratePlane";
    case Errc::NotParallel: return "NotParallel";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::AllZeroEigenvalues: return "AllZeroEigenvalues";
    case Errc::SingularCombiner: return "SingularCombiner";
    case Errc::DictionaryExhausted: return "DictionaryExhausted";
    }
    return "Unknown";
}

} // namespace losmimo
