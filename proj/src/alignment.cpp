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


#include "fbia/alignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace fbia {

CoefficientVector::CoefficientVector(const Vector9d& a) : a_(a) {
    if (!a.allFinite()) {
        throw std::invalid_argument("coefficient vector has non-finite entries");
    }
}

CoefficientVector CoefficientVector::from_parts(const Eigen::Vector3d& d, const Eigen::Vector3d& t,
                                                const Eigen::Vector3d& f) {
    Vector9d a;
    a << d, t, f;
    return CoefficientVector(a);
}

AlignmentSystem build_system(const ChannelMatrix& H) {
    // Entry (k, l) of D H + H T + H F H is d_k h_kl + h_kl t_l + sum_j h_kj f_j h_jl.
    Matrix9d M = Matrix9d::Zero();
    for (int l = 0; l < 3; ++l) {
        for (int k = 0; k < 3; ++k) {
            const int row = system_row(k, l);
            M(row, k) = H(k, l);
            M(row, 3 + l) = H(k, l);
            for (int j = 0; j < 3; ++j) {
                M(row, 6 + j) = H(k, j) * H(j, l);
            }
        }
    }

    AlignmentSystem sys{M, Matrix69d::Zero(), Matrix39d::Zero(), H};
    for (int i = 0; i < 6; ++i) {
        sys.B.row(i) = M.row(kOffDiagonalRows[i]);
    }
    for (int i = 0; i < 3; ++i) {
        sys.Q.row(i) = M.row(kDiagonalRows[i]);
    }
    return sys;
}

Eigen::Matrix3d alignment_lhs(const ChannelMatrix& H, const CoefficientVector& a) {
    const Eigen::Matrix3d& h = H.matrix();
    return a.d().asDiagonal() * h + h * a.t().asDiagonal() + h * a.f().asDiagonal() * h;
}

namespace {

void require_cross_gains(const ChannelMatrix& H) {
    if (H(0, 1) == 0.0 || H(1, 0) == 0.0 || H(0, 2) == 0.0 || H(2, 0) == 0.0) {
        throw ZeroDenominator("h12, h21, h13 and h31 must be nonzero");
    }
}

} // namespace

SValues compute_s_values(const ChannelMatrix& H) {
    require_cross_gains(H);
    const auto h = [&](int k, int l) { return H(k - 1, l - 1); };

    const double common = (h(1, 1) * h(2, 3) - h(1, 3) * h(2, 1)) * (h(1, 1) * h(3, 2) - h(1, 2) * h(3, 1));
    const double d1331 = h(1, 3) * h(3, 1);
    const double d1221 = h(1, 2) * h(2, 1);

    SValues s;
    s.s12 = common / d1331;
    s.s13 = common / d1221;
    // Sign fixed so that s22 is exactly the (2,2) entry of Q N.
    s.s22 = (h(1, 2) * h(2, 3) - h(1, 3) * h(2, 2)) * (h(2, 2) * h(3, 1) - h(2, 1) * h(3, 2)) / d1331;
    s.s33 = (h(1, 3) * h(3, 2) - h(1, 2) * h(3, 3)) * (h(2, 1) * h(3, 3) - h(2, 3) * h(3, 1)) / d1221;
    return s;
}

NullspaceBasis closed_form_nullspace(const ChannelMatrix& H) {
    require_cross_gains(H);
    const double h11 = H(0, 0), h12 = H(0, 1), h13 = H(0, 2);
    const double h21 = H(1, 0), h22 = H(1, 1), h23 = H(1, 2);
    const double h31 = H(2, 0), h32 = H(2, 1), h33 = H(2, 2);

    Matrix93d N;
    N << -1.0, h23 * (h11 * h32 - h12 * h31) / (h13 * h31), h11 * h23 * h32 / (h12 * h21) - h33,
        -1.0, h21 * h32 / h31 - h22, h13 * h32 / h12 - h33,
        -1.0, 0.0, h23 * h31 / h21 - (2.0 * h12 * h33 - h13 * h32) / h12,
        1.0, h32 * (h11 * h23 - h13 * h21) / (h13 * h31),
            (h12 * h33 - h13 * h32) / h12 + h23 * (h11 * h32 - h12 * h31) / (h12 * h21),
        1.0, h12 * h23 / h13 - h22, h33 - h13 * h32 / h12,
        1.0, 0.0, 0.0,
        0.0, -h23 * h32 / (h13 * h31), -h23 * h32 / (h12 * h21),
        0.0, 1.0, 0.0,
        0.0, 0.0, 1.0;

    if (!N.allFinite()) {
        throw ZeroDenominator("closed-form nullspace overflowed");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(N);
    const auto& sv = svd.singularValues();
    if (!(sv(2) > 1e-9 * sv(0))) {
        throw DegenerateNullspace("closed-form nullspace columns are numerically dependent");
    }
    return NullspaceBasis{N};
}

SubspaceSplit numerical_subspaces(const Matrix69d& B) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullV);
    const Eigen::MatrixXd& V = svd.matrixV();
    SubspaceSplit split;
    split.singular_values = svd.singularValues();
    split.rowspace = V.leftCols<6>();
    split.nullspace = V.rightCols<3>();
    split.full_rank = split.singular_values(5) > 1e-9 * split.singular_values(0);
    return split;
}

double alignment_residual(const ChannelMatrix& H, const CoefficientVector& a) {
    Eigen::Matrix3d lhs = alignment_lhs(H, a);
    lhs.diagonal().setZero();
    return lhs.cwiseAbs().maxCoeff();
}

double alignment_scale(const ChannelMatrix& H, const CoefficientVector& a) {
    const double hmax = H.max_abs();
    return hmax * (a.vector().cwiseAbs().maxCoeff() + hmax * a.f().cwiseAbs().maxCoeff());
}

AlignmentSolution solve_exact_alignment(const ChannelMatrix& H, double tol) {
    const NondegeneracyReport report = check_nondegeneracy(H, tol);
    if (!report.overall) {
        throw DegenerateChannel("channel admits no exact alignment with nonzero gains", report);
    }
    const SValues& s = *report.s_values;
    const Eigen::Vector3d lambda(s.s12 / s.s22 + s.s13 / s.s33, 1.0, 1.0);

    Vector9d a;
    try {
        const Eigen::Vector3d w(1.0, 1.0 / s.s22, 1.0 / s.s33);
        a = closed_form_nullspace(H).N * w;
    } catch (const DegenerateNullspace&) {
        a.setConstant(std::numeric_limits<double>::quiet_NaN());
    }

    const auto within_bound = [&](const Vector9d& x) {
        if (!x.allFinite()) return false;
        const CoefficientVector c(x);
        return alignment_residual(H, c) <= 1e-8 * alignment_scale(H, c);
    };
    if (!within_bound(a)) {
        // Orthonormal nullspace, then least squares for the target diagonal.
        const AlignmentSystem sys = build_system(H);
        const SubspaceSplit split = numerical_subspaces(sys.B);
        const Eigen::Matrix3d S = sys.Q * split.nullspace;
        const Eigen::Vector3d w = S.completeOrthogonalDecomposition().solve(lambda);
        a = split.nullspace * w;
    }

    AlignmentSolution sol{CoefficientVector(a), lambda, 0.0};
    sol.residual = alignment_residual(H, sol.a);
    return sol;
}

} // namespace fbia
