// SPDX-License-Identifier: Apache-2.0
//
// fbia: feedback interference alignment for the 3-user Gaussian interference channel
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


#pragma once

#include <array>

#include <Eigen/Core>

#include "fbia/alignment.hpp"

namespace fbia {

/// Slot-2 power constraint at common power P (unit noise variance). User l may
/// use (t_l, f_l) iff ||E[l] (t_l, f_l)|| <= 1, where
/// E[l] = [[1, h_ll], [0, sqrt(1/P + sum_{j != l} h_lj^2)]].
/// The receive weights d cost no transmit power and are never constrained.
struct FeasibleRegion {
    double P = 1.0;
    std::array<Eigen::Matrix2d, 3> E;
};

/// Throws NonpositivePower for P <= 0.
FeasibleRegion constraint_matrices(const ChannelMatrix& H, double P);

/// ||E[l] (t_l, f_l)|| for user l.
double constraint_norm(const FeasibleRegion& region, const CoefficientVector& a, int user);

bool is_feasible(const FeasibleRegion& region, const CoefficientVector& a, double tol = 0.0);

/// Largest c with c * direction feasible: min over users of 1 / ||E[l] (t_l, f_l)||.
/// Users with (t_l, f_l) = 0 impose no bound; returns +infinity if none does.
double max_scale(const FeasibleRegion& region, const CoefficientVector& direction);

} // namespace fbia
