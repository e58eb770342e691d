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


#include "fbia/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fbia/simulator.hpp"

namespace fbia {

namespace {

std::vector<Scheme> parse_scheme_list(const std::string& list) {
    if (list == "all") return {std::begin(kAllSchemes), std::end(kAllSchemes)};
    std::vector<Scheme> out;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        const auto s = parse_scheme(name);
        if (!s) {
            throw ConfigError("unknown scheme '" + name + "'; valid schemes: " + valid_scheme_names());
        }
        out.push_back(*s);
    }
    return out;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo sum-rate sweep for feedback interference alignment on the 3-user "
                 "Gaussian interference channel"};

    SweepConfig config;
    std::string schemes = "all";
    std::string format = "csv";
    std::string scenario;
    double cross_gain_db = 0.0;
    unsigned workers = 0;

    app.add_option("--snr-min", config.snr_db_min, "Lowest SNR in dB")->capture_default_str();
    app.add_option("--snr-max", config.snr_db_max, "Highest SNR in dB")->capture_default_str();
    app.add_option("--snr-step", config.snr_db_step, "SNR step in dB")->capture_default_str();
    app.add_option("--trials", config.trials, "Channel realizations per SNR point")->capture_default_str();
    app.add_option("--seed", config.master_seed, "Master seed")->capture_default_str();
    auto* cross = app.add_option("--cross-gain-db", cross_gain_db, "Cross-link power 10 log10 E[h^2] in dB")
                      ->capture_default_str();
    app.add_option("--schemes", schemes, "Comma-separated schemes or 'all' (" + valid_scheme_names() + ")")
        ->capture_default_str();
    app.add_option("--grid-points", config.grid_points, "Theta grid size for max-sinr")->capture_default_str();
    app.add_option("--output", config.output_path, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--scenario", scenario, "Preset: fig1 (unit cross gains) or fig2 (-3 dB cross gains)")
        ->check(CLI::IsMember({"fig1", "fig2"}));
    app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfigError;
    }

    try {
        if (scenario == "fig1") config.cross_gain_db = 0.0;
        if (scenario == "fig2") config.cross_gain_db = -3.0;
        if (cross->count() > 0) config.cross_gain_db = cross_gain_db;
        config.schemes = parse_scheme_list(schemes);
        validate(config);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    const SweepResult result = run_sweep(config, workers);

    const auto write = [&](std::ostream& os) {
        if (format == "json") {
            write_json(result, os);
        } else {
            write_csv(result, os);
        }
    };
    if (config.output_path.empty()) {
        write(out);
        return kExitOk;
    }
    std::ofstream file(config.output_path);
    if (!file) {
        err << "error: cannot open " << config.output_path << " for writing\n";
        return kExitIoError;
    }
    write(file);
    file.flush();
    if (!file) {
        err << "error: failed writing " << config.output_path << '\n';
        return kExitIoError;
    }
    return kExitOk;
}

} // namespace fbia
