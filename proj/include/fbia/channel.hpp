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

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "fbia/errors.hpp"

namespace fbia {

/// Real 3x3 gain matrix. Row k is receiver k, column l is transmitter l
/// (both zero-based here); entry (k, k) is the direct gain of user k.
class ChannelMatrix {
public:
    ChannelMatrix() : h_(Eigen::Matrix3d::Zero()) {}
    /// Throws std::invalid_argument if any entry is not finite.
    explicit ChannelMatrix(const Eigen::Matrix3d& h);

    static ChannelMatrix identity() { return ChannelMatrix(Eigen::Matrix3d::Identity()); }

    double operator()(int k, int l) const { return h_(k, l); }
    const Eigen::Matrix3d& matrix() const { return h_; }

    /// Largest absolute entry.
    double max_abs() const { return h_.cwiseAbs().maxCoeff(); }

    ChannelMatrix scaled(double c) const { return ChannelMatrix(c * h_); }

    friend bool operator==(const ChannelMatrix& a, const ChannelMatrix& b) { return a.h_ == b.h_; }

private:
    Eigen::Matrix3d h_;
};

/// Zero-mean normal gains; direct and cross links have separate standard deviations.
struct ChannelDistribution {
    double direct_gain_std = 1.0;
    double cross_gain_std = 1.0;

    /// Cross gains scaled so that 10 log10 E[h^2] equals `cross_gain_db`.
    static ChannelDistribution with_cross_gain_db(double cross_gain_db);
};

/// Mixes (master_seed, index) into an independent 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Deterministic in (seed, dist). A zero standard deviation yields zero gains.
ChannelMatrix sample_channel(std::uint64_t seed, const ChannelDistribution& dist = {});

/// The four channel functions that fill the nonzero entries of Q N
/// (Q: diagonal alignment equations, N: closed-form nullspace of the
/// off-diagonal equations).
struct SValues {
    double s12 = 0.0;
    double s13 = 0.0;
    double s22 = 0.0;
    double s33 = 0.0;
};

struct NondegeneracyReport {
    bool all_gains_nonzero = false;
    std::optional<SValues> s_values;
    bool s22_nonzero = false;
    bool s33_nonzero = false;
    /// lambda_1 = s12/s22 + s13/s33 (the first effective gain once the other
    /// two are normalized to one). NaN when undefined.
    double lambda_product = 0.0;
    bool lambda_product_nonzero = false;

    // Diagnostics kept out of `overall`.
    /// h13 (h21 h32 + h23 h32) != h23 (h11 h32 + h12 h31), taken literally.
    bool printed_cross_condition = false;
    /// Every denominator of the closed-form nullspace is nonzero.
    bool nullspace_denominators_nonzero = false;
    bool cross_conditions_disagree = false;

    bool overall = false;
};

/// A quantity x with natural scale s is treated as zero when |x| <= tol * max(s, 1).
NondegeneracyReport check_nondegeneracy(const ChannelMatrix& H, double tol = 1e-9);

class DegenerateChannel : public Error {
public:
    DegenerateChannel(const std::string& what, NondegeneracyReport report)
        : Error(what), report_(std::move(report)) {}
    const NondegeneracyReport& report() const { return report_; }

private:
    NondegeneracyReport report_;
};

} // namespace fbia
