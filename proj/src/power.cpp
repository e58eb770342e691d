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


#include "fbia/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbia {

FeasibleRegion constraint_matrices(const ChannelMatrix& H, double P) {
    if (!(P > 0.0)) {
        throw NonpositivePower(P);
    }
    FeasibleRegion region;
    region.P = P;
    for (int l = 0; l < 3; ++l) {
        double cross = 0.0;
        for (int j = 0; j < 3; ++j) {
            if (j != l) cross += H(l, j) * H(l, j);
        }
        region.E[l] << 1.0, H(l, l), 0.0, std::sqrt(1.0 / P + cross);
    }
    return region;
}

double constraint_norm(const FeasibleRegion& region, const CoefficientVector& a, int user) {
    const Eigen::Vector2d tf(a[3 + user], a[6 + user]);
    return (region.E[user] * tf).norm();
}

bool is_feasible(const FeasibleRegion& region, const CoefficientVector& a, double tol) {
    for (int l = 0; l < 3; ++l) {
        if (constraint_norm(region, a, l) > 1.0 + tol) return false;
    }
    return true;
}

double max_scale(const FeasibleRegion& region, const CoefficientVector& direction) {
    double beta = std::numeric_limits<double>::infinity();
    for (int l = 0; l < 3; ++l) {
        const double n = constraint_norm(region, direction, l);
        if (n > 0.0) beta = std::min(beta, 1.0 / n);
    }
    return beta;
}

} // namespace fbia
