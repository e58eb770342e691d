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


#include "fbia/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace fbia {

std::string_view to_string(SchemeTag tag) {
    switch (tag) {
    case SchemeTag::ExactIaSvd: return "exact-ia-svd";
    case SchemeTag::MaxSinr: return "max-sinr";
    }
    return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void throw_degenerate(const AlignmentSystem& system, const char* what) {
    throw DegenerateChannel(what, check_nondegeneracy(system.H));
}

// Unit norm, first nonzero coordinate positive.
Vector9d canonical_unit(const Vector9d& x) {
    Vector9d u = x / x.norm();
    const double floor = 1e-12 * u.cwiseAbs().maxCoeff();
    for (int i = 0; i < 9; ++i) {
        if (std::abs(u(i)) > floor) {
            if (u(i) < 0.0) u = -u;
            break;
        }
    }
    return u;
}

SubspaceSplit checked_subspaces(const AlignmentSystem& system) {
    SubspaceSplit split = numerical_subspaces(system.B);
    if (!split.full_rank) {
        throw_degenerate(system, "off-diagonal alignment equations are rank deficient");
    }
    return split;
}

} // namespace

Vector9d alignment_direction(const AlignmentSystem& system) {
    const SubspaceSplit split = checked_subspaces(system);
    const Eigen::Matrix3d S = system.Q * split.nullspace;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(S.transpose() * S);
    const double top = eig.eigenvalues()(2);
    if (!(top > 1e-18 * system.Q.squaredNorm())) {
        throw_degenerate(system, "diagonal equations vanish on the alignment nullspace");
    }
    return canonical_unit(split.nullspace * eig.eigenvectors().col(2));
}

MaxSinrDirection max_sinr_direction(const AlignmentSystem& system, const Matrix96d& rowspace_basis) {
    using Matrix6d = Eigen::Matrix<double, 6, 6>;
    const Eigen::Matrix<double, 3, 6> QR = system.Q * rowspace_basis;
    const Matrix6d BR = system.B * rowspace_basis;
    const Matrix6d signal = QR.transpose() * QR;
    Matrix6d leakage = BR.transpose() * BR;

    MaxSinrDirection out;
    Eigen::SelfAdjointEigenSolver<Matrix6d> leak_eig(leakage, Eigen::EigenvaluesOnly);
    const double lo = leak_eig.eigenvalues()(0);
    const double hi = leak_eig.eigenvalues()(5);
    if (!(lo > 0.0) || hi / lo > 1e12) {
        leakage += (1e-12 * leakage.trace() / 6.0) * Matrix6d::Identity();
        out.ridge_applied = true;
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix6d> gen(signal, leakage);
    if (gen.info() != Eigen::Success) {
        throw_degenerate(system, "generalized eigenproblem for the departure direction failed");
    }
    out.v_star = canonical_unit(rowspace_basis * gen.eigenvectors().col(5));
    out.ratio = (system.Q * out.v_star).squaredNorm() / (system.B * out.v_star).squaredNorm();
    return out;
}

MaxSinrDirection max_sinr_direction(const AlignmentSystem& system) {
    return max_sinr_direction(system, checked_subspaces(system).rowspace);
}

CoefficientVector candidate_at(const FeasibleRegion& region, const DirectionPair& dirs, double theta) {
    const CoefficientVector direction(dirs.u_star * std::cos(theta) + dirs.v_star * std::sin(theta));
    const double beta = max_scale(region, direction);
    // No (t, f) content: the rate does not depend on the scale.
    return std::isfinite(beta) ? direction.scaled(beta) : direction;
}

namespace {

struct Evaluated {
    double theta = 0.0;
    CoefficientVector a;
    double rate = 0.0;
};

OptimizerResult make_result(const Evaluated& e, SchemeTag tag) {
    OptimizerResult r;
    r.a = e.a;
    r.t = e.a.t();
    r.f = e.a.f();
    r.theta_star = e.theta;
    r.sum_rate = e.rate;
    r.scheme_tag = tag;
    return r;
}

} // namespace

OptimizerResult line_search_theta(const ChannelMatrix& H, double P, const DirectionPair& dirs,
                                  int grid_points) {
    if (grid_points < 2) {
        throw std::invalid_argument("line search needs at least 2 grid points");
    }
    const FeasibleRegion region = constraint_matrices(H, P);

    // a(theta + pi) = -a(theta) has the same rate, so angles are folded into [0, pi).
    const auto evaluate = [&](double theta) {
        theta = std::fmod(theta, kPi);
        if (theta < 0.0) theta += kPi;
        Evaluated e{theta, candidate_at(region, dirs, theta), 0.0};
        e.rate = sum_rate(H, e.a, P).sum;
        return e;
    };

    const double step = kPi / grid_points;
    Evaluated best = evaluate(0.0);
    int best_index = 0;
    for (int i = 1; i < grid_points; ++i) {
        Evaluated e = evaluate(i * step);
        if (e.rate > best.rate) {
            best = e;
            best_index = i;
        }
    }

    // Golden-section search over the neighbouring cells of the grid winner.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_index * step - step;
    double hi = best_index * step + step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double r1 = evaluate(x1).rate;
    double r2 = evaluate(x2).rate;
    while (hi - lo > 1e-4) {
        if (r1 < r2) {
            lo = x1;
            x1 = x2;
            r1 = r2;
            x2 = lo + inv_phi * (hi - lo);
            r2 = evaluate(x2).rate;
        } else {
            hi = x2;
            x2 = x1;
            r2 = r1;
            x1 = hi - inv_phi * (hi - lo);
            r1 = evaluate(x1).rate;
        }
    }
    Evaluated refined = evaluate(0.5 * (lo + hi));
    if (refined.rate > best.rate) best = refined;

    return make_result(best, SchemeTag::MaxSinr);
}

OptimizerResult max_sinr_feedback(const ChannelMatrix& H, double P, int grid_points) {
    const AlignmentSystem system = build_system(H);
    const MaxSinrDirection departure = max_sinr_direction(system);
    const DirectionPair dirs{alignment_direction(system), departure.v_star};
    OptimizerResult r = line_search_theta(H, P, dirs, grid_points);
    r.ridge_applied = departure.ridge_applied;
    return r;
}

OptimizerResult exact_ia_svd(const ChannelMatrix& H, double P) {
    const AlignmentSystem system = build_system(H);
    const FeasibleRegion region = constraint_matrices(H, P);
    const CoefficientVector u(alignment_direction(system));
    const double beta = max_scale(region, u);
    Evaluated e{0.0, std::isfinite(beta) ? u.scaled(beta) : u, 0.0};
    e.rate = sum_rate(H, e.a, P).sum;
    return make_result(e, SchemeTag::ExactIaSvd);
}

} // namespace fbia
