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


#include "fbia/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "fbia/optimizer.hpp"
#include "fbia/rates.hpp"

namespace fbia {

std::string_view scheme_name(Scheme s) {
    switch (s) {
    case Scheme::MaxSinr: return "max-sinr";
    case Scheme::ExactIaSvd: return "exact-ia-svd";
    case Scheme::TimeSharing: return "time-sharing";
    case Scheme::TreatAsNoise: return "treat-as-noise";
    case Scheme::ErgodicIa: return "ergodic-ia";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : kAllSchemes) {
        if (scheme_name(s) == name) return s;
    }
    return std::nullopt;
}

std::string valid_scheme_names() {
    std::string out;
    for (Scheme s : kAllSchemes) {
        if (!out.empty()) out += ", ";
        out += scheme_name(s);
    }
    return out;
}

bool is_feedback_scheme(Scheme s) { return s == Scheme::MaxSinr || s == Scheme::ExactIaSvd; }

void validate(const SweepConfig& c) {
    if (!std::isfinite(c.snr_db_min) || !std::isfinite(c.snr_db_max) || !std::isfinite(c.snr_db_step)) {
        throw ConfigError("SNR grid bounds and step must be finite");
    }
    if (!(c.snr_db_step > 0.0)) throw ConfigError("SNR step must be positive");
    if (c.snr_db_max < c.snr_db_min) throw ConfigError("SNR maximum is below the minimum");
    if (c.trials < 1) throw ConfigError("trials must be at least 1");
    if (c.grid_points < 2) throw ConfigError("grid points must be at least 2");
    if (!std::isfinite(c.cross_gain_db)) throw ConfigError("cross gain must be finite");
    if (!(c.degeneracy_tol > 0.0)) throw ConfigError("degeneracy tolerance must be positive");
    for (std::size_t i = 0; i < c.schemes.size(); ++i) {
        for (std::size_t j = i + 1; j < c.schemes.size(); ++j) {
            if (c.schemes[i] == c.schemes[j]) {
                throw ConfigError("scheme listed twice: " + std::string(scheme_name(c.schemes[i])));
            }
        }
    }
}

std::vector<double> snr_grid(const SweepConfig& c) {
    validate(c);
    const auto count = static_cast<std::size_t>(std::floor((c.snr_db_max - c.snr_db_min) / c.snr_db_step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = c.snr_db_min + static_cast<double>(i) * c.snr_db_step;
    }
    return grid;
}

ChannelMatrix trial_channel(const SweepConfig& config, int trial_index) {
    return sample_channel(derive_seed(config.master_seed, static_cast<std::uint64_t>(trial_index)),
                          ChannelDistribution::with_cross_gain_db(config.cross_gain_db));
}

namespace {

// All SNR points of one channel realization.
void run_trial(const SweepConfig& config, const std::vector<double>& grid, int trial,
               std::vector<TrialRecord>& records) {
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial));
    const ChannelMatrix H = sample_channel(seed, ChannelDistribution::with_cross_gain_db(config.cross_gain_db));
    bool degenerate = !check_nondegeneracy(H, config.degeneracy_tol).overall;

    for (std::size_t si = 0; si < grid.size(); ++si) {
        const double P = snr_db_to_power(grid[si]);
        TrialRecord& rec = records[si * static_cast<std::size_t>(config.trials) + static_cast<std::size_t>(trial)];
        rec.trial_index = trial;
        rec.channel_seed = seed;
        rec.snr_db = grid[si];

        const BaselineRates base = baseline_rates(H, P);
        for (Scheme s : config.schemes) {
            SchemeOutcome o{s};
            switch (s) {
            case Scheme::TimeSharing: o.sum_rate = base.time_sharing; break;
            case Scheme::TreatAsNoise: o.sum_rate = base.treat_as_noise; break;
            case Scheme::ErgodicIa: o.sum_rate = base.ergodic_ia; break;
            case Scheme::MaxSinr:
            case Scheme::ExactIaSvd:
                if (!degenerate) {
                    try {
                        const OptimizerResult r = (s == Scheme::MaxSinr)
                                                      ? max_sinr_feedback(H, P, config.grid_points)
                                                      : exact_ia_svd(H, P);
                        o.sum_rate = r.sum_rate;
                        o.theta_star = r.theta_star;
                    } catch (const DegenerateChannel&) {
                        degenerate = true;
                    }
                }
                o.degenerate = degenerate;
                break;
            }
            rec.outcomes.push_back(o);
        }
        rec.degenerate = degenerate;
    }
    // A late optimizer failure marks the whole realization.
    if (degenerate) {
        for (std::size_t si = 0; si < grid.size(); ++si) {
            TrialRecord& rec = records[si * static_cast<std::size_t>(config.trials) + static_cast<std::size_t>(trial)];
            rec.degenerate = true;
            for (SchemeOutcome& o : rec.outcomes) {
                if (is_feedback_scheme(o.scheme)) {
                    o.degenerate = true;
                    o.sum_rate = 0.0;
                    o.theta_star = 0.0;
                }
            }
        }
    }
}

} // namespace

SweepResult run_sweep(const SweepConfig& config, unsigned workers) {
    const std::vector<double> grid = snr_grid(config);
    const int trials = config.trials;

    SweepResult result;
    result.config = config;
    result.trials.resize(grid.size() * static_cast<std::size_t>(trials));

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));

    std::atomic<int> next{0};
    auto work = [&] {
        for (int t = next++; t < trials; t = next++) {
            run_trial(config, grid, t, result.trials);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    // Reduction in trial order keeps the output independent of scheduling.
    for (std::size_t si = 0; si < grid.size(); ++si) {
        for (std::size_t pos = 0; pos < config.schemes.size(); ++pos) {
            const Scheme s = config.schemes[pos];
            std::vector<double> rates;
            int degenerate = 0;
            for (int t = 0; t < trials; ++t) {
                const SchemeOutcome& o = result.trials[si * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)].outcomes[pos];
                if (o.degenerate) {
                    ++degenerate;
                } else {
                    rates.push_back(o.sum_rate);
                }
            }
            SweepRow row;
            row.snr_db = grid[si];
            row.scheme = std::string(scheme_name(s));
            row.trials_used = static_cast<int>(rates.size());
            row.degenerate_count = degenerate;
            if (!rates.empty()) {
                double sum = 0.0;
                for (double r : rates) sum += r;
                const double mean = sum / static_cast<double>(rates.size());
                double ss = 0.0;
                for (double r : rates) ss += (r - mean) * (r - mean);
                row.avg_sum_rate_bits = mean;
                if (rates.size() > 1) {
                    const double n = static_cast<double>(rates.size());
                    row.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
                }
            }
            result.rows.push_back(row);
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
        return a.scheme < b.scheme;
    });
    return result;
}

namespace {

constexpr const char* kCsvHeader = "snr_db,scheme,avg_sum_rate_bits,std_error,trials_used,degenerate_count";

std::string fmt10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

} // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const SweepRow& r : result.rows) {
        out << fmt10(r.snr_db) << ',' << r.scheme << ',' << fmt10(r.avg_sum_rate_bits) << ','
            << fmt10(r.std_error) << ',' << r.trials_used << ',' << r.degenerate_count << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IOFailure("cannot open " + path.string() + " for writing");
    write_csv(result, out);
    out.flush();
    if (!out) throw IOFailure("failed writing " + path.string());
}

std::vector<SweepRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ConfigError("missing or unexpected CSV header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw ConfigError("CSV row needs 6 fields: " + line);
        try {
            rows.push_back(SweepRow{std::stod(fields[0]), fields[1], std::stod(fields[2]), std::stod(fields[3]),
                                    std::stoi(fields[4]), std::stoi(fields[5])});
        } catch (const std::logic_error&) {
            throw ConfigError("malformed CSV row: " + line);
        }
    }
    return rows;
}

void write_json(const SweepResult& result, std::ostream& out) {
    using nlohmann::json;
    const SweepConfig& c = result.config;
    json schemes = json::array();
    for (Scheme s : c.schemes) schemes.push_back(std::string(scheme_name(s)));
    json doc;
    doc["config"] = {{"snr_db_min", c.snr_db_min},     {"snr_db_max", c.snr_db_max},
                     {"snr_db_step", c.snr_db_step},   {"trials", c.trials},
                     {"master_seed", c.master_seed},   {"cross_gain_db", c.cross_gain_db},
                     {"schemes", schemes},             {"grid_points", c.grid_points},
                     {"output_path", c.output_path}};
    json rows = json::array();
    for (const SweepRow& r : result.rows) {
        rows.push_back({{"snr_db", r.snr_db},
                        {"scheme", r.scheme},
                        {"avg_sum_rate_bits", r.avg_sum_rate_bits},
                        {"std_error", r.std_error},
                        {"trials_used", r.trials_used},
                        {"degenerate_count", r.degenerate_count}});
    }
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
}

} // namespace fbia
