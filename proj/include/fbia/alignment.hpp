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

#include <Eigen/Core>

#include "fbia/channel.hpp"

namespace fbia {

using Vector9d = Eigen::Matrix<double, 9, 1>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;
using Matrix69d = Eigen::Matrix<double, 6, 9>;
using Matrix39d = Eigen::Matrix<double, 3, 9>;
using Matrix93d = Eigen::Matrix<double, 9, 3>;
using Matrix96d = Eigen::Matrix<double, 9, 6>;

/// Stacked scheme coefficients [d1 d2 d3 t1 t2 t3 f1 f2 f3]: receive
/// combining weights d, slot-2 symbol weights t and feedback weights f.
class CoefficientVector {
public:
    CoefficientVector() : a_(Vector9d::Zero()) {}
    /// Throws std::invalid_argument on non-finite entries.
    explicit CoefficientVector(const Vector9d& a);
    static CoefficientVector from_parts(const Eigen::Vector3d& d, const Eigen::Vector3d& t,
                                        const Eigen::Vector3d& f);

    const Vector9d& vector() const { return a_; }
    double operator[](int i) const { return a_(i); }

    Eigen::Vector3d d() const { return a_.segment<3>(0); }
    Eigen::Vector3d t() const { return a_.segment<3>(3); }
    Eigen::Vector3d f() const { return a_.segment<3>(6); }

    CoefficientVector scaled(double c) const { return CoefficientVector(c * a_); }

private:
    Vector9d a_;
};

/// The alignment condition D H + H T + H F H = diag(lambda) written as M a = vec(Lambda).
/// Rows of M follow column-major order of the 3x3 left-hand side; B holds the six
/// off-diagonal rows and Q the three diagonal rows.
struct AlignmentSystem {
    Matrix9d M;
    Matrix69d B;
    Matrix39d Q;
    ChannelMatrix H;
};

/// Row of M for left-hand-side entry (k, l), zero-based.
constexpr int system_row(int k, int l) { return 3 * l + k; }

/// Rows of M that make up B, in order: (2,1) (3,1) (1,2) (3,2) (1,3) (2,3).
inline constexpr int kOffDiagonalRows[6] = {1, 2, 3, 5, 6, 7};
inline constexpr int kDiagonalRows[3] = {0, 4, 8};

AlignmentSystem build_system(const ChannelMatrix& H);

/// D H + H T + H F H computed directly from the matrices.
Eigen::Matrix3d alignment_lhs(const ChannelMatrix& H, const CoefficientVector& a);

/// Throws ZeroDenominator if h12, h21, h13 or h31 is exactly zero.
SValues compute_s_values(const ChannelMatrix& H);

struct NullspaceBasis {
    Matrix93d N;
};

/// Closed-form basis of the nullspace of B (first column [-1 -1 -1 1 1 1 0 0 0]).
/// Throws ZeroDenominator or DegenerateNullspace.
NullspaceBasis closed_form_nullspace(const ChannelMatrix& H);

/// Orthonormal split of R^9 induced by B via its singular value decomposition.
struct SubspaceSplit {
    Matrix93d nullspace;          // orthonormal, spans N(B)
    Matrix96d rowspace;           // orthonormal, spans R(B^T)
    Eigen::Matrix<double, 6, 1> singular_values;  // descending
    bool full_rank = false;       // sigma_6 > 1e-9 sigma_1
};

SubspaceSplit numerical_subspaces(const Matrix69d& B);

struct AlignmentSolution {
    CoefficientVector a;
    Eigen::Vector3d lambda;
    double residual = 0.0;
};

/// Closed-form aligned coefficients a = N w* with w* = [1, 1/s22, 1/s33], giving
/// lambda = (s12/s22 + s13/s33, 1, 1). Unnormalized. Throws DegenerateChannel.
AlignmentSolution solve_exact_alignment(const ChannelMatrix& H, double tol = 1e-9);

/// Max |off-diagonal| of D H + H T + H F H.
double alignment_residual(const ChannelMatrix& H, const CoefficientVector& a);

/// Magnitude of the terms cancelled in the alignment equations:
/// ||H||_max (||a||_inf + ||H||_max ||f||_inf).
double alignment_scale(const ChannelMatrix& H, const CoefficientVector& a);

} // namespace fbia
