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


#include "fbia/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fbia {

EquivalentChannel equivalent_channel(const ChannelMatrix& H, const CoefficientVector& a, int k) {
    const Eigen::Matrix3d& h = H.matrix();
    const Eigen::RowVector3d hk = h.row(k);
    const Eigen::Vector3d f = a.f();

    EquivalentChannel eq;
    eq.G.row(0) = hk;
    eq.G.row(1) = hk * (Eigen::Matrix3d(a.t().asDiagonal()) + f.asDiagonal() * h);
    const double off = h(k, k) * f(k);
    eq.C << 1.0, off, off, hk.cwiseProduct(f.transpose()).squaredNorm() + 1.0;
    return eq;
}

namespace {

void require_power(double P) {
    if (!(P > 0.0)) throw NonpositivePower(P);
}

// log2(1 + x) / 4 for x >= 0
double quarter_log2_1p(double x) {
    return std::log1p(std::max(x, 0.0)) / (4.0 * std::numbers::ln2);
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

} // namespace

RateBreakdown sum_rate(const ChannelMatrix& H, const CoefficientVector& a, double P) {
    require_power(P);
    const Eigen::Matrix3d& h = H.matrix();
    const Eigen::Vector3d f = a.f();
    const double root_p = std::sqrt(P);
    RateBreakdown out;
    for (int k = 0; k < 3; ++k) {
        const EquivalentChannel eq = equivalent_channel(H, a, k);
        // Interference-plus-noise covariance A = M M^T, one column per independent source:
        // the receiver's own slot-1 noise, its slot-2 noise, the other receivers' fed-back
        // noise and the two interfering streams. Working with M keeps det(A) and
        // g^T adj(A) g as sums of squares, which avoids cancellation once interference aligns.
        Eigen::Matrix<double, 2, 6> M = Eigen::Matrix<double, 2, 6>::Zero();
        int col = 0;
        M.col(col++) << 1.0, h(k, k) * f(k);
        M.col(col++) << 0.0, 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j == k) continue;
            M.col(col++) << 0.0, h(k, j) * f(j);
        }
        for (int l = 0; l < 3; ++l) {
            if (l != k) M.col(col++) = root_p * eq.G.col(l);
        }
        const Eigen::Vector2d g = eq.G.col(k);
        double det = 0.0;
        double quad = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double cross = g(0) * M(1, i) - g(1) * M(0, i);
            quad += cross * cross;
            for (int j = i + 1; j < 6; ++j) {
                const double minor = M(0, i) * M(1, j) - M(1, i) * M(0, j);
                det += minor * minor;
            }
        }
        out.per_user(k) = quarter_log2_1p(P * quad / det);
    }
    out.sum = out.per_user.sum();
    return out;
}

BaselineRates baseline_rates(const ChannelMatrix& H, double P) {
    require_power(P);
    BaselineRates r;
    for (int k = 0; k < 3; ++k) {
        const double direct = H(k, k) * H(k, k);
        double cross = 0.0;
        for (int l = 0; l < 3; ++l) {
            if (l != k) cross += H(k, l) * H(k, l);
        }
        r.time_sharing += log2_1p(3.0 * P * direct) / 6.0;
        r.treat_as_noise += log2_1p(P * direct / (1.0 + P * cross)) / 2.0;
        r.ergodic_ia += log2_1p(2.0 * P * direct) / 4.0;
    }
    return r;
}

} // namespace fbia
