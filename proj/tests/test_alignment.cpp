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
#include <random>

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "doctest.h"

#include "fbia/alignment.hpp"
#include "test_support.hpp"

using namespace fbia;
using fbia::testing::from_rows;

namespace {

// D H + H T + H F H from explicit diagonal matrices.
Eigen::Matrix3d lhs_oracle(const Eigen::Matrix3d& H, const Vector9d& a) {
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero(), T = D, F = D;
    for (int i = 0; i < 3; ++i) {
        D(i, i) = a(i);
        T(i, i) = a(3 + i);
        F(i, i) = a(6 + i);
    }
    return D * H + H * T + H * F * H;
}

double rel_projection_residual(const Eigen::MatrixXd& basis, const Eigen::VectorXd& x) {
    // basis orthonormal
    return (x - basis * (basis.transpose() * x)).norm() / x.norm();
}

} // namespace

TEST_SUITE("alignment") {

TEST_CASE("system rows for the identity channel") {
    const AlignmentSystem sys = build_system(ChannelMatrix::identity());
    Vector9d expected;
    expected << 1, 0, 0, 1, 0, 0, 1, 0, 0;
    CHECK(sys.M.row(system_row(0, 0)).transpose() == expected);
    CHECK(sys.Q.row(0).transpose() == expected);
    CHECK(sys.B.rows() == 6);
    CHECK(sys.B.cols() == 9);
    CHECK(sys.Q.rows() == 3);
    CHECK(sys.Q.cols() == 9);
}

TEST_CASE("system matches the displayed entries") {
    const ChannelMatrix H = testing::generic_channel();
    const auto h = [&](int k, int l) { return H(k - 1, l - 1); };
    const AlignmentSystem sys = build_system(H);
    Vector9d row21, row33;
    row21 << 0, h(2, 1), 0, h(2, 1), 0, 0, h(2, 1) * h(1, 1), h(2, 2) * h(2, 1), h(2, 3) * h(3, 1);
    row33 << 0, 0, h(3, 3), 0, 0, h(3, 3), h(3, 1) * h(1, 3), h(3, 2) * h(2, 3), h(3, 3) * h(3, 3);
    CHECK(sys.M.row(1).transpose() == row21);
    CHECK(sys.M.row(8).transpose() == row33);
    for (int i = 0; i < 3; ++i) CHECK(sys.Q.row(i) == sys.M.row(kDiagonalRows[i]));
    for (int i = 0; i < 6; ++i) CHECK(sys.B.row(i) == sys.M.row(kOffDiagonalRows[i]));
}

TEST_CASE("reassembled system equals D H + H T + H F H") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ChannelMatrix H = sample_channel(seed);
        const Vector9d a = testing::random_vector9(rng);
        const AlignmentSystem sys = build_system(H);
        const Eigen::Vector3d diag = sys.Q * a;
        const Eigen::Matrix<double, 6, 1> off = sys.B * a;
        Eigen::Matrix3d rebuilt;
        for (int i = 0; i < 3; ++i) {
            const int row = kDiagonalRows[i];
            rebuilt(row % 3, row / 3) = diag(i);
        }
        for (int i = 0; i < 6; ++i) {
            const int row = kOffDiagonalRows[i];
            rebuilt(row % 3, row / 3) = off(i);
        }
        const Eigen::Matrix3d oracle = lhs_oracle(H.matrix(), a);
        const double scale = alignment_scale(H, CoefficientVector(a));
        CHECK((rebuilt - oracle).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK((alignment_lhs(H, CoefficientVector(a)) - oracle).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    }
}

TEST_CASE("s-values of the reference channels") {
    const SValues g = compute_s_values(testing::generic_channel());
    CHECK(g.s12 == doctest::Approx(12.0 / 7.0));
    CHECK(g.s13 == doctest::Approx(4.5));
    CHECK(g.s22 == doctest::Approx(-3.0 / 7.0));
    CHECK(g.s33 == doctest::Approx(-1.0));

    const SValues s = compute_s_values(testing::symmetric_channel());
    CHECK(s.s12 == doctest::Approx(1.0));
    CHECK(s.s13 == doctest::Approx(1.0));
    CHECK(s.s22 == doctest::Approx(-1.0));
    CHECK(s.s33 == doctest::Approx(-1.0));
}

TEST_CASE("s12 and s13 vanish with their common factor") {
    // h11 h23 = h13 h21
    const SValues s = compute_s_values(from_rows({{2, 1, 3}, {4, 1, 6}, {1, 5, 2}}));
    CHECK(s.s12 == 0.0);
    CHECK(s.s13 == 0.0);
}

TEST_CASE("s-value denominators must be nonzero") {
    CHECK_THROWS_AS(compute_s_values(ChannelMatrix::identity()), ZeroDenominator);
    CHECK_THROWS_AS(compute_s_values(from_rows({{1, 2, 3}, {4, 5, 6}, {0, 8, 10}})), ZeroDenominator);
    CHECK_THROWS_AS(closed_form_nullspace(from_rows({{1, 0, 3}, {4, 5, 6}, {7, 8, 10}})), ZeroDenominator);
}

TEST_CASE("s12 and s13 share a numerator") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ChannelMatrix H = sample_channel(seed);
        const SValues s = compute_s_values(H);
        const double lhs = s.s12 * H(0, 2) * H(2, 0);
        const double rhs = s.s13 * H(0, 1) * H(1, 0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("closed-form nullspace entries") {
    const NullspaceBasis nb = closed_form_nullspace(testing::generic_channel());
    Vector9d first;
    first << -1, -1, -1, 1, 1, 1, 0, 0, 0;
    CHECK(nb.N.col(0) == first);
    CHECK(nb.N(6, 1) == doctest::Approx(-16.0 / 7.0));
}

TEST_CASE("closed-form nullspace spans the kernel of B") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const ChannelMatrix H = sample_channel(derive_seed(5, seed));
        const AlignmentSystem sys = build_system(H);
        const NullspaceBasis nb = closed_form_nullspace(H);

        CHECK((sys.B * nb.N).cwiseAbs().maxCoeff() <=
              1e-9 * sys.B.cwiseAbs().maxCoeff() * nb.N.cwiseAbs().maxCoeff());
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(nb.N);
        CHECK(svd.singularValues()(2) > 1e-9 * svd.singularValues()(0));

        // Independent route: LU kernel, orthonormalized.
        Eigen::FullPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd(sys.B));
        const Eigen::MatrixXd kernel = lu.kernel();
        REQUIRE(kernel.cols() == 3);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
        const Eigen::MatrixXd ortho = qr.householderQ() * Eigen::MatrixXd::Identity(9, 3);
        for (int c = 0; c < 3; ++c) {
            CHECK(rel_projection_residual(ortho, nb.N.col(c)) <= 1e-9);
        }
    }
}

TEST_CASE("B has rank 6 and Q N has the closed-form sparsity") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const ChannelMatrix H = sample_channel(derive_seed(6, seed));
        const AlignmentSystem sys = build_system(H);
        const SubspaceSplit split = numerical_subspaces(sys.B);
        CHECK(split.full_rank);
        CHECK((sys.B * split.nullspace).norm() <= 1e-9 * split.singular_values(0));

        const Eigen::Matrix3d QN = sys.Q * closed_form_nullspace(H).N;
        const SValues s = compute_s_values(H);
        const double scale = QN.cwiseAbs().maxCoeff();
        CHECK(QN.col(0).cwiseAbs().maxCoeff() <= 1e-9 * scale);
        CHECK(std::abs(QN(1, 2)) <= 1e-9 * scale);
        CHECK(std::abs(QN(2, 1)) <= 1e-9 * scale);
        CHECK(QN(0, 1) == doctest::Approx(s.s12).epsilon(1e-9));
        CHECK(QN(0, 2) == doctest::Approx(s.s13).epsilon(1e-9));
        CHECK(QN(1, 1) == doctest::Approx(s.s22).epsilon(1e-9));
        CHECK(QN(2, 2) == doctest::Approx(s.s33).epsilon(1e-9));
    }
}

TEST_CASE("exact alignment on the generic channel") {
    const ChannelMatrix H = testing::generic_channel();
    const AlignmentSolution sol = solve_exact_alignment(H);
    CHECK(sol.lambda(0) == doctest::Approx(-8.5));
    CHECK(sol.lambda(1) == 1.0);
    CHECK(sol.lambda(2) == 1.0);
    CHECK(sol.residual <= 1e-10 * alignment_scale(H, sol.a));
    const Eigen::Vector3d diag = alignment_lhs(H, sol.a).diagonal();
    CHECK(diag(0) == doctest::Approx(-8.5).epsilon(1e-12));
    CHECK(diag(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(diag(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact alignment rejects degenerate channels") {
    CHECK_THROWS_AS(solve_exact_alignment(ChannelMatrix::identity()), DegenerateChannel);
    try {
        solve_exact_alignment(testing::lambda_zero_channel());
        FAIL("expected DegenerateChannel");
    } catch (const DegenerateChannel& e) {
        CHECK_FALSE(e.report().lambda_product_nonzero);
        CHECK_FALSE(e.report().overall);
    }
}

TEST_CASE("aligned solutions diagonalize the system") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const ChannelMatrix H = sample_channel(derive_seed(8, seed));
        if (!check_nondegeneracy(H).overall) continue;
        const AlignmentSolution sol = solve_exact_alignment(H);
        const Eigen::Matrix3d L = alignment_lhs(H, sol.a);
        CHECK(sol.residual <= 1e-8 * alignment_scale(H, sol.a));
        for (int i = 0; i < 3; ++i) {
            CHECK(L(i, i) == doctest::Approx(sol.lambda(i)).epsilon(1e-9));
        }
    }
}

TEST_CASE("alignment residual") {
    const ChannelMatrix H = testing::generic_channel();
    CHECK(alignment_residual(H, CoefficientVector()) == 0.0);

    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ChannelMatrix G = sample_channel(seed);
        const CoefficientVector a(testing::random_vector9(rng));
        const double r = alignment_residual(G, a);
        CHECK(r == doctest::Approx((build_system(G).B * a.vector()).cwiseAbs().maxCoeff()).epsilon(1e-12));
        CHECK(alignment_residual(G, a.scaled(-2.5)) == doctest::Approx(2.5 * r).epsilon(1e-12));
    }
}

TEST_CASE("coefficient vector accessors") {
    Vector9d v;
    v << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    const CoefficientVector a(v);
    CHECK(a.d() == Eigen::Vector3d(1, 2, 3));
    CHECK(a.t() == Eigen::Vector3d(4, 5, 6));
    CHECK(a.f() == Eigen::Vector3d(7, 8, 9));
    v(4) = INFINITY;
    CHECK_THROWS_AS(CoefficientVector{v}, std::invalid_argument);
}

} // TEST_SUITE
