// SPDX-License-Identifier: Apache-2.0
//
// lisproc: distributed uplink processing for panelized large intelligent surfaces
// Copyright (C) 2026 The lisproc authors
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

#include <lisproc/lisproc.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_config = 2;

struct Options
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> workers;
    std::string accounting;
};

int default_workers()
{
    if (const char *env = std::getenv("LISPROC_WORKERS"))
    {
        try
        {
            const int n = std::stoi(env);
            if (n >= 1)
                return n;
        }
        catch (const std::exception &)
        {
        }
    }
    return 1;
}

lis::ExperimentConfig load(const Options &o)
{
    lis::ExperimentConfig c = o.config_path.empty() ? lis::ExperimentConfig{} : lis::load_config(o.config_path);
    if (c.workers == 0)
        c.workers = default_workers();
    if (o.seed)
        c.seed = *o.seed;
    if (o.workers)
        c.workers = *o.workers;
    if (!o.out.empty())
        c.output = o.out;
    if (!o.accounting.empty())
    {
        auto a = lis::parse_accounting(o.accounting);
        if (!a)
            throw lis::ConfigError({"--accounting: expected all-levels or paper-compat"});
        c.accounting = *a;
    }
    return c;
}

void emit(const lis::ExperimentConfig &c, lis::ResultSet rs)
{
    rs.summary["selected_accounting"] = lis::to_string(c.accounting);
    const std::string csv = lis::to_csv(rs);
    if (c.output.empty())
    {
        std::cout << csv;
        return;
    }
    lis::write_file_atomic(c.output, csv);
    lis::write_file_atomic(c.output + ".json", rs.summary.dump(2) + "\n");
}

int guarded(const std::function<void()> &body)
{
    try
    {
        body();
        return exit_ok;
    }
    catch (const lis::ConfigError &e)
    {
        for (const auto &m : e.messages())
            std::cerr << "config error: " << m << '\n';
        return exit_config;
    }
    catch (const lis::InvalidArgument &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Distributed uplink processing simulator for panelized large intelligent surfaces"};
    app.require_subcommand(1);

    Options opts;
    auto add_common = [&](CLI::App *sub, bool config_required) {
        auto *cfg = sub->add_option("--config", opts.config_path, "Experiment configuration file");
        if (config_required)
            cfg->required();
        sub->add_option("--seed", opts.seed, "Override the configured seed");
        sub->add_option("--out", opts.out, "Output CSV path (a .json summary is written alongside)");
        sub->add_option("--workers", opts.workers, "Concurrent realizations")->check(CLI::PositiveNumber);
        sub->add_option("--accounting", opts.accounting, "Cost accounting: all-levels or paper-compat");
    };

    auto *run = app.add_subcommand("run", "Run the configured experiment");
    auto *sweep_beta = app.add_subcommand("sweep-beta", "Normalized sum-rate over a beta_p x beta_b1 grid");
    auto *sweep_snr = app.add_subcommand("sweep-snr", "Capacities and bounds over an SNR list");
    auto *sweep_size = app.add_subcommand("sweep-size", "Capacities over LIS side lengths");
    auto *table1 = app.add_subcommand("table1", "Case-study cost table under both accountings");
    auto *validate = app.add_subcommand("validate-config", "Check a configuration without running it");
    for (auto *s : {run, sweep_beta, sweep_snr, sweep_size, validate})
        add_common(s, true);
    add_common(table1, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    if (run->parsed())
        return guarded([&] {
            const auto c = load(opts);
            emit(c, lis::run(c));
        });
    if (sweep_snr->parsed())
        return guarded([&] {
            const auto c = load(opts);
            emit(c, lis::sweep_snr(c));
        });
    if (sweep_beta->parsed())
        return guarded([&] {
            const auto c = load(opts);
            emit(c, lis::sweep_beta(c));
        });
    if (sweep_size->parsed())
        return guarded([&] {
            const auto c = load(opts);
            emit(c, lis::sweep_size(c));
        });
    if (validate->parsed())
        return guarded([&] {
            const auto c = load(opts);
            lis::validate_config(c, c.sweep);
            std::cout << "ok\n";
        });
    if (table1->parsed())
        return guarded([&] {
            const lis::Table1Setup setup = opts.config_path.empty() ? lis::table1_defaults()
                                                                     : lis::table1_setup(load(opts));
            auto entries = lis::report_table1(setup);
            if (!opts.accounting.empty())
            {
                const auto a = lis::parse_accounting(opts.accounting);
                if (!a)
                    throw lis::ConfigError({"--accounting: expected all-levels or paper-compat"});
                std::erase_if(entries, [&](const lis::Table1Entry &e) { return e.accounting != *a; });
            }
            const std::string csv = lis::table1_csv(entries);
            if (opts.out.empty())
                std::cout << csv;
            else
                lis::write_file_atomic(opts.out, csv);
        });
    return exit_runtime;
}
