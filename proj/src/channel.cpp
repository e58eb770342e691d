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


#include "fbia/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fbia/alignment.hpp"

namespace fbia {

ChannelMatrix::ChannelMatrix(const Eigen::Matrix3d& h) : h_(h) {
    if (!h.allFinite()) {
        throw std::invalid_argument("channel matrix has non-finite entries");
    }
}

ChannelDistribution ChannelDistribution::with_cross_gain_db(double cross_gain_db) {
    return ChannelDistribution{1.0, std::pow(10.0, cross_gain_db / 20.0)};
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    // splitmix64 finalizer applied to a mix of both words
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master_seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

ChannelMatrix sample_channel(std::uint64_t seed, const ChannelDistribution& dist) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix3d h;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            const double sigma = (k == l) ? dist.direct_gain_std : dist.cross_gain_std;
            h(k, l) = sigma * normal(rng);
        }
    }
    return ChannelMatrix(h);
}

namespace {

bool nonzero(double x, double scale, double tol) {
    return std::abs(x) > tol * std::max(scale, 1.0);
}

// Product of the scales of the two numerator factors over |denominator|.
double s_scale(double a1, double a2, double b1, double b2, double denominator) {
    return (std::abs(a1) + std::abs(a2)) * (std::abs(b1) + std::abs(b2)) / std::abs(denominator);
}

} // namespace

NondegeneracyReport check_nondegeneracy(const ChannelMatrix& H, double tol) {
    const auto h = [&](int k, int l) { return H(k - 1, l - 1); };
    const double gain_scale = H.max_abs();

    NondegeneracyReport r;
    r.all_gains_nonzero = true;
    for (int k = 1; k <= 3; ++k) {
        for (int l = 1; l <= 3; ++l) {
            r.all_gains_nonzero = r.all_gains_nonzero && nonzero(h(k, l), gain_scale, tol);
        }
    }
    r.nullspace_denominators_nonzero = nonzero(h(1, 2), gain_scale, tol) &&
                                       nonzero(h(2, 1), gain_scale, tol) &&
                                       nonzero(h(1, 3), gain_scale, tol) &&
                                       nonzero(h(3, 1), gain_scale, tol);

    const double lhs = h(1, 3) * (h(2, 1) * h(3, 2) + h(2, 3) * h(3, 2));
    const double rhs = h(2, 3) * (h(1, 1) * h(3, 2) + h(1, 2) * h(3, 1));
    const double cross_scale = std::abs(h(1, 3)) * (std::abs(h(2, 1) * h(3, 2)) + std::abs(h(2, 3) * h(3, 2))) +
                               std::abs(h(2, 3)) * (std::abs(h(1, 1) * h(3, 2)) + std::abs(h(1, 2) * h(3, 1)));
    r.printed_cross_condition = nonzero(lhs - rhs, cross_scale, tol);
    r.cross_conditions_disagree = r.printed_cross_condition != r.nullspace_denominators_nonzero;

    r.lambda_product = std::numeric_limits<double>::quiet_NaN();
    if (h(1, 2) != 0.0 && h(2, 1) != 0.0 && h(1, 3) != 0.0 && h(3, 1) != 0.0) {
        const SValues s = compute_s_values(H);
        r.s_values = s;
        const double d1331 = h(1, 3) * h(3, 1);
        const double d1221 = h(1, 2) * h(2, 1);
        r.s22_nonzero = nonzero(s.s22,
                                s_scale(h(1, 2) * h(2, 3), h(1, 3) * h(2, 2), h(2, 1) * h(3, 2),
                                        h(2, 2) * h(3, 1), d1331),
                                tol);
        r.s33_nonzero = nonzero(s.s33,
                                s_scale(h(1, 3) * h(3, 2), h(1, 2) * h(3, 3), h(2, 1) * h(3, 3),
                                        h(2, 3) * h(3, 1), d1221),
                                tol);
        if (r.s22_nonzero && r.s33_nonzero) {
            const double x = s.s12 / s.s22;
            const double y = s.s13 / s.s33;
            r.lambda_product = x + y;
            r.lambda_product_nonzero = nonzero(x + y, std::abs(x) + std::abs(y), tol);
        }
    }

    r.overall = r.all_gains_nonzero && r.s22_nonzero && r.s33_nonzero && r.lambda_product_nonzero;
    return r;
}

} // namespace fbia
