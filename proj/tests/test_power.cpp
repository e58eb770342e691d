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


#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "fbia/power.hpp"
#include "test_support.hpp"

using namespace fbia;

namespace {

CoefficientVector tf_vector(const Eigen::Vector3d& t, const Eigen::Vector3d& f) {
    return CoefficientVector::from_parts(Eigen::Vector3d::Zero(), t, f);
}

} // namespace

TEST_SUITE("power") {

TEST_CASE("identity channel at unit power") {
    const FeasibleRegion region = constraint_matrices(ChannelMatrix::identity(), 1.0);
    Eigen::Matrix2d expected;
    expected << 1, 1, 0, 1;
    for (const auto& E : region.E) CHECK(E == expected);
}

TEST_CASE("high-power limit drops the noise term") {
    const ChannelMatrix H = testing::generic_channel();
    const FeasibleRegion region = constraint_matrices(H, 1e18);
    for (int l = 0; l < 3; ++l) {
        double cross = 0.0;
        for (int j = 0; j < 3; ++j) {
            if (j != l) cross += H(l, j) * H(l, j);
        }
        CHECK(region.E[l](1, 1) == doctest::Approx(std::sqrt(cross)).epsilon(1e-6));
        CHECK(region.E[l](0, 1) == H(l, l));
    }
}

TEST_CASE("ellipsoid norm matches the expanded slot-2 power") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ChannelMatrix H = sample_channel(seed);
        const double P = std::pow(10.0, 4.0 * std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
        const FeasibleRegion region = constraint_matrices(H, P);
        for (int l = 0; l < 3; ++l) {
            const double t = n(rng), f = n(rng);
            const double row_norm2 = H.matrix().row(l).squaredNorm();
            const double expanded = t * t + 2.0 * t * f * H(l, l) + f * f * (row_norm2 + 1.0 / P);
            const double via_e = (region.E[l] * Eigen::Vector2d(t, f)).squaredNorm();
            CHECK(via_e == doctest::Approx(expanded).epsilon(1e-12));
        }
    }
}

TEST_CASE("nonpositive power is rejected") {
    CHECK_THROWS_AS(constraint_matrices(ChannelMatrix::identity(), 0.0), NonpositivePower);
    CHECK_THROWS_AS(constraint_matrices(ChannelMatrix::identity(), -1.0), NonpositivePower);
}

TEST_CASE("feasibility at and beyond the boundary") {
    const FeasibleRegion region = constraint_matrices(ChannelMatrix::identity(), 1.0);
    const CoefficientVector boundary = tf_vector(Eigen::Vector3d::Ones(), Eigen::Vector3d::Zero());
    for (int l = 0; l < 3; ++l) CHECK(constraint_norm(region, boundary, l) == 1.0);
    CHECK(is_feasible(region, boundary, 0.0));
    CHECK(is_feasible(region, CoefficientVector(), 0.0));
    CHECK_FALSE(is_feasible(region, boundary.scaled(1.01), 1e-6));

    // receive weights are free
    const CoefficientVector loud_d =
        CoefficientVector::from_parts(Eigen::Vector3d::Constant(1e6), Eigen::Vector3d::Ones(), Eigen::Vector3d::Zero());
    CHECK(is_feasible(region, loud_d, 0.0));
}

TEST_CASE("max scale on simple directions") {
    const FeasibleRegion region = constraint_matrices(ChannelMatrix::identity(), 1.0);
    const CoefficientVector u = tf_vector(Eigen::Vector3d::Ones(), Eigen::Vector3d::Zero());
    CHECK(max_scale(region, u) == doctest::Approx(1.0));
    CHECK(max_scale(region, u.scaled(4.0)) == doctest::Approx(0.25));

    // only user 2 transmits
    const CoefficientVector single = tf_vector(Eigen::Vector3d(0, 2, 0), Eigen::Vector3d::Zero());
    CHECK(max_scale(region, single) == doctest::Approx(0.5));

    const CoefficientVector silent =
        CoefficientVector::from_parts(Eigen::Vector3d::Ones(), Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
    CHECK(max_scale(region, silent) == std::numeric_limits<double>::infinity());
}

TEST_CASE("max scale agrees with a bisection feasibility oracle") {
    std::mt19937_64 rng(23);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ChannelMatrix H = sample_channel(seed);
        const double P = std::pow(10.0, std::uniform_real_distribution<double>(-1.0, 5.0)(rng));
        const FeasibleRegion region = constraint_matrices(H, P);
        const CoefficientVector u(testing::random_vector9(rng));

        double lo = 0.0, hi = 1.0;
        while (is_feasible(region, u.scaled(hi), 0.0)) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (is_feasible(region, u.scaled(mid), 0.0) ? lo : hi) = mid;
        }
        const double beta = max_scale(region, u);
        CHECK(beta == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));

        // homogeneity
        CHECK(max_scale(region, u.scaled(3.0)) == doctest::Approx(beta / 3.0).epsilon(1e-12));

        // the scaled vector sits on the tightest ellipsoid
        const CoefficientVector a = u.scaled(beta);
        double tightest = 0.0;
        for (int l = 0; l < 3; ++l) tightest = std::max(tightest, constraint_norm(region, a, l));
        CHECK(std::abs(tightest - 1.0) <= 1e-10);
        CHECK(is_feasible(region, a, 1e-9));
        CHECK_FALSE(is_feasible(region, u.scaled((1.0 + 1e-6) * beta), 0.0));
    }
}

} // TEST_SUITE
