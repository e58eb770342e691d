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

#include <string_view>

#include <Eigen/Core>

#include "fbia/alignment.hpp"
#include "fbia/power.hpp"
#include "fbia/rates.hpp"

namespace fbia {

enum class SchemeTag { ExactIaSvd, MaxSinr };

std::string_view to_string(SchemeTag tag);

/// Unit direction in N(B) (perfect alignment) and unit departure direction in R(B^T).
struct DirectionPair {
    Vector9d u_star;
    Vector9d v_star;
};

struct OptimizerResult {
    CoefficientVector a;
    Eigen::Vector3d t;
    Eigen::Vector3d f;
    double theta_star = 0.0;
    double sum_rate = 0.0;
    SchemeTag scheme_tag = SchemeTag::ExactIaSvd;
    bool ridge_applied = false;
};

/// Aligned direction maximizing ||Q u|| over unit u in N(B): the principal
/// right singular direction of Q N on an orthonormal nullspace basis.
/// Throws DegenerateChannel when B is rank deficient or Q vanishes on N(B).
Vector9d alignment_direction(const AlignmentSystem& system);

struct MaxSinrDirection {
    Vector9d v_star;
    double ratio = 0.0;          // ||Q v||^2 / ||B v||^2 at v_star
    bool ridge_applied = false;  // B-side Gram matrix had condition number > 1e12
};

/// Departure direction v in R(B^T) maximizing ||Q v||^2 / ||B v||^2, solved as
/// a generalized symmetric eigenproblem on an orthonormal rowspace basis.
/// Throws DegenerateChannel when B is rank deficient.
MaxSinrDirection max_sinr_direction(const AlignmentSystem& system);

/// Same problem on a caller-supplied (not necessarily orthonormal) rowspace basis.
MaxSinrDirection max_sinr_direction(const AlignmentSystem& system, const Matrix96d& rowspace_basis);

inline constexpr int kDefaultGridPoints = 181;

/// a(theta) = beta(theta) [u* cos(theta) + v* sin(theta)], beta the largest feasible scale.
CoefficientVector candidate_at(const FeasibleRegion& region, const DirectionPair& dirs,
                               double theta);

/// Maximizes the MMSE sum rate over theta in [0, pi): uniform grid of `grid_points`
/// angles starting at 0, then golden-section refinement to 1e-4 rad inside the
/// winning cell. Throws std::invalid_argument for grid_points < 2.
OptimizerResult line_search_theta(const ChannelMatrix& H, double P, const DirectionPair& dirs,
                                  int grid_points = kDefaultGridPoints);

/// Full max-SINR feedback design: directions from the alignment system, then the
/// theta line search. t = a[3..5], f = a[6..8].
OptimizerResult max_sinr_feedback(const ChannelMatrix& H, double P,
                                  int grid_points = kDefaultGridPoints);

/// Exact alignment along the principal component of Q N, scaled onto the power boundary.
OptimizerResult exact_ia_svd(const ChannelMatrix& H, double P);

} // namespace fbia
