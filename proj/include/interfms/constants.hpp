// Copyright 2026 The Interf-MS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace interfms {

/// Planck constant, exact SI value [J s].
inline constexpr double kPlanck = 6.62607015e-34;

/// Unified atomic mass unit [kg].
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;

/// Elementary charge, exact SI value [C].
inline constexpr double kElementaryCharge = 1.602176634e-19;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace interfms
