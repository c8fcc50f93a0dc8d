// SPDX-License-Identifier: Apache-2.0
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

// ris_sim: simulate | sweep | analyze | validate
// Exit codes: 0 success, 1 runtime failure, 2 config error, 3 validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ris/ris.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

struct Overrides {
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
};

ris::SystemConfig load(const std::string& path, const Overrides& o)
{
    ris::SystemConfig c = ris::load_config(path);
    if (o.runs)
        c.runs = *o.runs;
    if (o.seed)
        c.base_seed = *o.seed;
    c.validate();
    return c;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

// Provenance sidecar: RNG identifier, seed and config echo.
void write_meta(const std::string& out_path, const ris::SystemConfig& c, const std::string& config_path)
{
    nlohmann::json meta;
    meta["rng"] = c.rng;
    meta["base_seed"] = c.base_seed;
    meta["runs"] = c.runs;
    meta["config"] = config_path;
    meta["capacity_convention"] = "per-block net capacity averaged over runs";
    std::ofstream(out_path + ".meta.json", std::ios::binary) << meta.dump(2) << '\n';
}

void add_overrides(CLI::App* sub, Overrides& o)
{
    sub->add_option("--runs", o.runs, "Override the number of Monte Carlo runs")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Override base_seed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"RIS-assisted multiuser downlink simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, axis = "users";
    std::vector<int> values;
    std::vector<int> analyze_users{2, 4, 8, 16, 32, 64, 128};
    std::uint64_t validate_seed = 1;
    Overrides overrides;

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo over coherence blocks, one CSV row per run/scheme/user");
    simulate->add_option("--config", config_path, "JSON config")->required();
    simulate->add_option("--out", out_path, "Output CSV")->required();
    add_overrides(simulate, overrides);

    auto* sweep = app.add_subcommand("sweep", "Repeat the simulation over K or Q and aggregate per scheme");
    sweep->add_option("--config", config_path, "JSON config")->required();
    sweep->add_option("--axis", axis, "users or atoms")->check(CLI::IsMember({"users", "atoms"}));
    sweep->add_option("--values", values, "Comma-separated axis values, ascending")->delimiter(',')->required();
    sweep->add_option("--out", out_path, "Output CSV")->required();
    add_overrides(sweep, overrides);

    auto* analyze = app.add_subcommand("analyze", "Extreme-value capacity and SNR for the randomized scheme");
    analyze->add_option("--config", config_path, "JSON config")->required();
    analyze->add_option("--users", analyze_users, "Comma-separated K values")->delimiter(',');
    analyze->add_option("--out", out_path, "Output CSV")->required();

    auto* validate = app.add_subcommand("validate", "Run the built-in oracle and property checks");
    validate->add_option("--seed", validate_seed, "Seed for the random instances");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const auto c = load(config_path, overrides);
            const auto records = ris::run_monte_carlo(c);
            auto out = open_out(out_path);
            ris::write_records_csv(out, records);
            write_meta(out_path, c, config_path);
        } else if (*sweep) {
            const auto c = load(config_path, overrides);
            const auto a = axis == "users" ? ris::SweepAxis::users : ris::SweepAxis::atoms;
            const auto points = ris::sweep(c, a, values);
            auto out = open_out(out_path);
            ris::write_sweep_csv(out, points);
            write_meta(out_path, c, config_path);
        } else if (*analyze) {
            const auto c = load(config_path, overrides);
            auto out = open_out(out_path);
            ris::write_analysis_csv(out, ris::analyze(c, analyze_users));
        } else if (*validate) {
            bool ok = true;
            for (const auto& r : ris::run_validation_suite(validate_seed)) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                ok = ok && r.passed;
            }
            return ok ? 0 : kExitValidation;
        }
    } catch (const ris::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
