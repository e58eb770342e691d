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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbia/channel.hpp"

namespace fbia {

enum class Scheme { MaxSinr, ExactIaSvd, TimeSharing, TreatAsNoise, ErgodicIa };

inline constexpr Scheme kAllSchemes[] = {Scheme::MaxSinr, Scheme::ExactIaSvd, Scheme::TimeSharing,
                                         Scheme::TreatAsNoise, Scheme::ErgodicIa};

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);
/// Comma-separated list of every valid scheme name.
std::string valid_scheme_names();
/// Feedback schemes need a nondegenerate channel; baselines do not.
bool is_feedback_scheme(Scheme s);

struct SweepConfig {
    double snr_db_min = 0.0;
    double snr_db_max = 40.0;
    double snr_db_step = 5.0;
    int trials = 1000;
    std::uint64_t master_seed = 1;
    double cross_gain_db = 0.0;
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    int grid_points = 181;
    std::string output_path;  // empty = stdout
    double degeneracy_tol = 1e-9;
};

/// Throws ConfigError on an empty or malformed SNR grid or invalid counts.
void validate(const SweepConfig& config);

/// Inclusive grid snr_db_min, snr_db_min + step, ... <= snr_db_max.
std::vector<double> snr_grid(const SweepConfig& config);

struct SchemeOutcome {
    Scheme scheme;
    double sum_rate = 0.0;
    double theta_star = 0.0;  // max-sinr only
    bool degenerate = false;
};

/// One channel realization evaluated at one SNR point.
struct TrialRecord {
    int trial_index = 0;
    std::uint64_t channel_seed = 0;
    double snr_db = 0.0;
    bool degenerate = false;
    std::vector<SchemeOutcome> outcomes;
};

struct SweepRow {
    double snr_db = 0.0;
    std::string scheme;
    double avg_sum_rate_bits = 0.0;
    double std_error = 0.0;
    int trials_used = 0;
    int degenerate_count = 0;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;  // sorted by (snr_db, scheme)
    std::vector<TrialRecord> trials;  // ordered by (snr index, trial index)
};

/// Channel of trial `trial_index`: identical across SNR points and schemes.
ChannelMatrix trial_channel(const SweepConfig& config, int trial_index);

/// Monte Carlo sweep. `workers` = 0 picks the hardware concurrency; the result
/// does not depend on it.
SweepResult run_sweep(const SweepConfig& config, unsigned workers = 0);

void write_csv(const SweepResult& result, std::ostream& out);
/// Throws IOFailure.
void emit_csv(const SweepResult& result, const std::filesystem::path& path);
/// Parses text produced by write_csv. Throws ConfigError on malformed input.
std::vector<SweepRow> parse_csv(std::istream& in);

void write_json(const SweepResult& result, std::ostream& out);

} // namespace fbia
