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
#include <cmath>

#include <Eigen/Core>

#include "fbia/alignment.hpp"

namespace fbia {

/// Two-slot view of receiver k: r_k = G x[1] + w_k with Cov(w_k) = C.
struct EquivalentChannel {
    Eigen::Matrix<double, 2, 3> G;
    Eigen::Matrix2d C;
};

/// Rates in bits per real channel use (two-slot normalization included).
struct RateBreakdown {
    Eigen::Vector3d per_user = Eigen::Vector3d::Zero();
    double sum = 0.0;
};

/// Per-realization sum rates of the reference schemes, in bits.
struct BaselineRates {
    double time_sharing = 0.0;
    double treat_as_noise = 0.0;
    double ergodic_ia = 0.0;
};

/// `k` is zero-based. Only the t and f parts of `a` enter.
EquivalentChannel equivalent_channel(const ChannelMatrix& H, const CoefficientVector& a, int k);

/// Linear-MMSE rate of each user,
/// R_k = 1/4 log2 det(C + P sum_l g_l g_l^T) / det(C + P sum_{l != k} g_l g_l^T).
/// Throws NonpositivePower.
RateBreakdown sum_rate(const ChannelMatrix& H, const CoefficientVector& a, double P);

/// Time sharing (1/6 log2(1 + 3P h_kk^2)), treating interference as noise, and the
/// ergodic alignment benchmark (1/4 log2(1 + 2P h_kk^2)), summed over users.
/// Throws NonpositivePower.
BaselineRates baseline_rates(const ChannelMatrix& H, double P);

inline double snr_db_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

} // namespace fbia
