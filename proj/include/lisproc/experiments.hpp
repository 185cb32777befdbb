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

#ifndef LISPROC_EXPERIMENTS_HPP
#define LISPROC_EXPERIMENTS_HPP

#include "capacity.hpp"
#include "config.hpp"
#include "cost.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "tree.hpp"

#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace lis
{

// ---------------------------------------------------------------- topology

struct TopologyRequest
{
    int num_antennas = 0;
    int num_users = 0;
    int panel_antennas = 0;
    std::optional<int> panel_outputs;
    std::optional<double> beta_p;
    std::vector<double> tree_betas{1.0};
    bool cdsp_dim_users = false;
};

inline TopologyRequest topology_request(const ExperimentConfig &c)
{
    TopologyRequest r;
    r.num_antennas = c.scenario.num_antennas();
    r.num_users = c.scenario.num_users;
    r.panel_antennas = c.panel_antennas;
    r.panel_outputs = c.panel_outputs;
    r.beta_p = c.beta_p;
    r.tree_betas = c.tree_betas;
    r.cdsp_dim_users = c.cdsp_dim_users;
    return r;
}

// Resolves panel count, Np and per-level node dimensions. In cdsp_dim_users
// mode the first tree level uses tree_betas[0], the top level delivers
// exactly K outputs and the levels in between share one reduction factor, so
// the whole chain of reduction factors multiplies to K / M.
inline TreeTopology derive_topology(const TopologyRequest &r)
{
    require(r.panel_antennas >= 1, "panel_antennas: must be >= 1");
    require(r.num_antennas % r.panel_antennas == 0, "panel_antennas: must divide the antenna count");
    const int p = r.num_antennas / r.panel_antennas;
    const int levels = tree_levels(p);

    int np = 0;
    if (r.panel_outputs)
        np = *r.panel_outputs;
    else if (r.beta_p)
    {
        require(*r.beta_p > 0.0 && *r.beta_p <= 1.0, "beta_p: must lie in (0, 1]");
        np = round_dimension(*r.beta_p * r.panel_antennas);
    }
    else
        np = std::min(r.panel_antennas, r.num_users);
    require(np >= 1 && np <= r.panel_antennas, "panel_outputs: must lie in [1, panel_antennas]");

    if (levels == 0)
        return make_tree(p, r.panel_antennas, np, {});

    require(!r.tree_betas.empty(), "tree_betas: at least one value is required");
    if (!r.cdsp_dim_users)
    {
        std::vector<double> betas = r.tree_betas;
        if (betas.size() == 1)
            betas.assign(static_cast<size_t>(levels), r.tree_betas.front());
        require(static_cast<int>(betas.size()) == levels, "tree_betas: need one value per tree level");
        return build_tree(p, r.panel_antennas, np, betas);
    }

    std::vector<int> dims;
    if (levels == 1)
        dims.push_back(r.num_users);
    else
    {
        const double b1 = r.tree_betas.front();
        require(b1 > 0.0 && b1 <= 1.0, "tree_betas: must lie in (0, 1]");
        dims.push_back(round_dimension(b1 * 4 * np));
        const int rest = levels - 1;
        const double beta_rest = std::pow(static_cast<double>(r.num_users) / (std::pow(4.0, rest) * dims.front()),
                                          1.0 / rest);
        require(beta_rest <= 1.0 + 1e-9, "tree_betas: CDSP dimension K unreachable from this beta_b1 and beta_p");
        for (int n = 1; n < rest; ++n)
            dims.push_back(round_dimension(beta_rest * 4 * dims.back()));
        dims.push_back(r.num_users);
    }
    return make_tree(p, r.panel_antennas, np, dims);
}

// ---------------------------------------------------------------- results

struct ResultRow
{
    int realization = 0; // -1 marks an aggregate row
    double rho_db = 0.0;
    double beta_p = 0.0;
    double beta_b1 = std::numeric_limits<double>::quiet_NaN();
    CapacityReport capacity;
    // Sweep-specific trailing columns, in the order given by ResultSet::extra_columns.
    std::vector<std::string> extra;
};

struct ResultSet
{
    std::vector<std::string> extra_columns;
    std::vector<ResultRow> rows;
    nlohmann::ordered_json summary;
};

inline const std::vector<std::string> &csv_columns()
{
    static const std::vector<std::string> cols{"realization", "rho_db", "beta_p", "beta_b1", "c_antenna",
                                               "c_z",         "c_cdsp", "c_ub1",  "c_ub2",   "normalized"};
    return cols;
}

// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

inline void write_csv(std::ostream &os, const ResultSet &rs)
{
    bool first = true;
    for (const auto &c : csv_columns())
    {
        os << (first ? "" : ",") << c;
        first = false;
    }
    for (const auto &c : rs.extra_columns)
        os << ',' << c;
    os << '\n';
    for (const auto &r : rs.rows)
    {
        const auto &c = r.capacity;
        os << r.realization << ',' << format_double(r.rho_db) << ',' << format_double(r.beta_p) << ','
           << format_double(r.beta_b1) << ',' << format_double(c.c_antenna) << ',' << format_double(c.c_z) << ','
           << format_double(c.c_cdsp) << ',' << format_double(c.c_ub1) << ',' << format_double(c.c_ub2) << ','
           << format_double(c.normalized);
        for (const auto &e : r.extra)
            os << ',' << e;
        os << '\n';
    }
}

inline std::string to_csv(const ResultSet &rs)
{
    std::ostringstream os;
    write_csv(os, rs);
    return os.str();
}

// Writes next to a temporary and renames, so a failed run leaves no file.
inline void write_file_atomic(const std::string &path, const std::string &content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw Error("cannot open '" + tmp + "' for writing");
        f << content;
        if (!f)
            throw Error("write to '" + tmp + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

inline nlohmann::ordered_json to_json(const CostReport &r)
{
    nlohmann::ordered_json j;
    j["accounting"] = to_string(r.accounting);
    j["algorithm"] = to_string(r.algorithm);
    j["c_form_mac"] = r.c_form;
    j["c_filt_mac_per_s"] = r.c_filt;
    j["r_inter_bps"] = r.r_inter;
    j["r_intra_bps"] = r.r_intra;
    j["r_eq_bps"] = r.r_eq;
    j["l_form_s"] = r.l_form;
    j["l_filt_s"] = r.l_filt;
    j["l_tot_s"] = r.l_tot;
    j["c_form_levels"] = r.c_form_levels;
    j["c_filt_levels"] = r.c_filt_levels;
    j["r_inter_levels"] = r.r_inter_levels;
    j["r_intra_levels"] = r.r_intra_levels;
    return j;
}

inline nlohmann::ordered_json to_json(const TreeTopology &t)
{
    nlohmann::ordered_json j;
    j["num_panels"] = t.num_panels;
    j["levels"] = t.levels;
    j["panel_antennas"] = t.panel_size;
    j["panel_outputs"] = t.panel_outputs;
    j["node_outputs"] = t.node_outputs;
    return j;
}

inline nlohmann::ordered_json cost_summary(const TreeTopology &t, const CostParams &p, Algorithm alg)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    j.push_back(to_json(evaluate_costs(t, p, alg, Accounting::AllLevels)));
    j.push_back(to_json(evaluate_costs(t, p, alg, Accounting::PaperCompat)));
    return j;
}

// ---------------------------------------------------------------- execution

// Runs fn(i) for i in [0, n) on up to `workers` threads. Results must be
// written to slot i; the first exception is rethrown after all threads join.
inline void parallel_for(int n, int workers, const std::function<void(int)> &fn)
{
    workers = std::max(1, std::min(workers, n));
    if (workers == 1)
    {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

// Channel of realization r: users drawn from stream r of the config seed.
inline ChannelMatrix realization_channel(const Scenario &s, std::uint64_t seed, int realization, int num_panels)
{
    const UserSet users = sample_users(s, Rng(seed).split(static_cast<std::uint64_t>(realization)));
    return build_channel(s, users, num_panels);
}

inline PlanOptions plan_options(const ExperimentConfig &c)
{
    PlanOptions o;
    o.passes = c.passes;
    o.rmf.orthonormalize = c.rmf_orthonormalize;
    return o;
}

inline double beta_b1_of(const TreeTopology &t)
{
    return t.levels >= 1 ? t.beta_level(1) : std::numeric_limits<double>::quiet_NaN();
}

// Mean over rows of every capacity field.
inline CapacityReport average(const std::vector<CapacityReport> &rs)
{
    CapacityReport m;
    if (rs.empty())
    {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, nan, nan, nan, nan};
    }
    for (const auto &r : rs)
    {
        m.c_antenna += r.c_antenna;
        m.c_z += r.c_z;
        m.c_cdsp += r.c_cdsp;
        m.c_ub1 += r.c_ub1;
        m.c_ub2 += r.c_ub2;
        m.normalized += r.normalized;
    }
    const double n = static_cast<double>(rs.size());
    m.c_antenna /= n;
    m.c_z /= n;
    m.c_cdsp /= n;
    m.c_ub1 /= n;
    m.c_ub2 /= n;
    m.normalized /= n;
    return m;
}

inline void validate_config(const ExperimentConfig &c, SweepAxis axis)
{
    std::vector<std::string> errors;
    auto check = [&](const std::function<void()> &f) {
        try
        {
            f();
        }
        catch (const InvalidArgument &e)
        {
            errors.push_back(e.what());
        }
    };
    check([&] { c.scenario.validate(); });
    if (c.passes < 1)
        errors.push_back("passes: must be >= 1");
    if (c.num_realizations < 1)
        errors.push_back("num_realizations: must be >= 1");
    if (c.workers < 0)
        errors.push_back("workers: must be >= 0");

    switch (axis)
    {
    case SweepAxis::None:
        check([&] {
            const auto t = derive_topology(topology_request(c));
            c.cost.validate(t);
            make_partition(c.scenario.antennas_x(), c.scenario.antennas_y(), t.num_panels);
            if (c.algorithm == Algorithm::RMF)
                require(t.panel_outputs <= std::min(t.panel_size, c.scenario.num_users),
                        "panel_outputs: RMF needs Np <= min(Mp, K)");
        });
        break;
    case SweepAxis::Snr:
        if (c.snr_db_list.empty())
            errors.push_back("snr_db_list: required for an SNR sweep");
        check([&] {
            const auto t = derive_topology(topology_request(c));
            make_partition(c.scenario.antennas_x(), c.scenario.antennas_y(), t.num_panels);
        });
        break;
    case SweepAxis::Beta:
        if (c.beta_p_list.empty())
            errors.push_back("beta_p_list: required for a beta sweep");
        if (c.beta_b1_list.empty())
            errors.push_back("beta_b1_list: required for a beta sweep");
        for (double b : c.beta_p_list)
            if (!(b > 0.0 && b <= 1.0))
                errors.push_back("beta_p_list: values must lie in (0, 1]");
        for (double b : c.beta_b1_list)
            if (!(b > 0.0 && b <= 1.0))
                errors.push_back("beta_b1_list: values must lie in (0, 1]");
        check([&] {
            require(c.scenario.num_antennas() % c.panel_antennas == 0,
                    "panel_antennas: must divide the antenna count");
            const int levels = tree_levels(c.scenario.num_antennas() / c.panel_antennas);
            require(levels >= 1, "panel_antennas: a beta sweep needs at least one tree level");
        });
        break;
    case SweepAxis::LisSize:
        if (c.lis_size_list.empty())
            errors.push_back("lis_size_list: required for a LIS size sweep");
        for (double b : c.lis_size_list)
            if (!(b > 0.0))
                errors.push_back("lis_size_list: values must be > 0");
        break;
    }
    if (!errors.empty())
        throw ConfigError(std::move(errors));
}

inline nlohmann::ordered_json config_summary(const ExperimentConfig &c, SweepAxis axis)
{
    nlohmann::ordered_json j;
    j["sweep"] = to_string(axis);
    j["algorithm"] = to_string(c.algorithm);
    j["num_antennas"] = c.scenario.num_antennas();
    j["num_users"] = c.scenario.num_users;
    j["snr_rho"] = c.scenario.snr_rho;
    j["panel_antennas"] = c.panel_antennas;
    j["passes"] = c.passes;
    j["num_realizations"] = c.num_realizations;
    j["seed"] = c.seed;
    j["rmf_orthonormalize"] = c.rmf_orthonormalize;
    return j;
}

// One realization, one SNR, one topology: formulate and evaluate.
inline CapacityReport evaluate_realization(const ChannelMatrix &h, const TreeTopology &t, Algorithm alg, double rho,
                                           const PlanOptions &opts)
{
    return capacity_of_plan(formulate_lis(h, t, alg, rho, opts), rho);
}

namespace detail
{

inline void append_group(ResultSet &rs, const std::vector<ResultRow> &rows, ResultRow aggregate_template)
{
    std::vector<CapacityReport> caps;
    for (const auto &r : rows)
    {
        rs.rows.push_back(r);
        caps.push_back(r.capacity);
    }
    aggregate_template.realization = -1;
    aggregate_template.capacity = average(caps);
    rs.rows.push_back(std::move(aggregate_template));
}

} // namespace detail

// Capacity rows for the configured point, or an SNR sweep (one group of rows
// per SNR value). Rows are ordered by (sweep point, realization).
inline ResultSet run_snr(const ExperimentConfig &c, const std::vector<double> &snr_db,
                         const std::vector<double> &rhos)
{
    const TreeTopology t = derive_topology(topology_request(c));
    const PlanOptions opts = plan_options(c);
    const int n = c.num_realizations;
    const size_t points = snr_db.size();

    std::vector<std::vector<CapacityReport>> caps(static_cast<size_t>(n));
    parallel_for(n, c.workers, [&](int r) {
        const ChannelMatrix h = realization_channel(c.scenario, c.seed, r, t.num_panels);
        auto &out = caps[static_cast<size_t>(r)];
        for (double rho : rhos)
            out.push_back(evaluate_realization(h, t, c.algorithm, rho, opts));
    });

    ResultSet rs;
    for (size_t s = 0; s < points; ++s)
    {
        std::vector<ResultRow> rows;
        ResultRow base;
        base.rho_db = snr_db[s];
        base.beta_p = t.beta_panel();
        base.beta_b1 = beta_b1_of(t);
        for (int r = 0; r < n; ++r)
        {
            ResultRow row = base;
            row.realization = r;
            row.capacity = caps[static_cast<size_t>(r)][s];
            rows.push_back(row);
        }
        detail::append_group(rs, rows, base);
    }
    rs.summary["topology"] = to_json(t);
    rs.summary["costs"] = cost_summary(t, [&] {
        CostParams p = c.cost;
        p.num_users = c.scenario.num_users;
        return p;
    }(), c.algorithm);
    return rs;
}

inline ResultSet run(const ExperimentConfig &c)
{
    ResultSet rs;
    switch (c.sweep)
    {
    case SweepAxis::Snr:
        validate_config(c, SweepAxis::Snr);
    {
        std::vector<double> rhos;
        for (double db : c.snr_db_list)
            rhos.push_back(db_to_linear(db));
        rs = run_snr(c, c.snr_db_list, rhos);
        break;
    }
    case SweepAxis::None:
        validate_config(c, SweepAxis::None);
        rs = run_snr(c, {linear_to_db(c.rho())}, {c.rho()});
        break;
    default:
        throw ConfigError({"sweep: run supports none or snr; use sweep-beta or sweep-size"});
    }
    rs.summary["config"] = config_summary(c, c.sweep);
    return rs;
}

inline ResultSet sweep_snr(ExperimentConfig c)
{
    c.sweep = SweepAxis::Snr;
    return run(c);
}

// Grid over (beta_p, beta_b1) for both algorithms with the CDSP dimension
// pinned to K. Each cell is evaluated on the same realizations. Cells whose
// dimensions cannot be realized are emitted as a single aggregate row with
// feasible = 0.
inline ResultSet sweep_beta(ExperimentConfig c)
{
    c.sweep = SweepAxis::Beta;
    validate_config(c, SweepAxis::Beta);
    const PlanOptions opts = plan_options(c);
    const double rho = c.rho();
    const int k = c.scenario.num_users;

    struct Cell
    {
        Algorithm alg;
        double beta_p, beta_b1;
        std::optional<TreeTopology> topo;
        std::string reason;
    };
    std::vector<Cell> cells;
    for (Algorithm alg : {Algorithm::IIC, Algorithm::RMF})
        for (double bp : c.beta_p_list)
            for (double bb : c.beta_b1_list)
            {
                Cell cell{alg, bp, bb, std::nullopt, {}};
                TopologyRequest req = topology_request(c);
                req.panel_outputs.reset();
                req.beta_p = bp;
                req.tree_betas = {bb};
                req.cdsp_dim_users = true;
                try
                {
                    TreeTopology t = derive_topology(req);
                    if (alg == Algorithm::RMF)
                    {
                        require(t.panel_outputs <= std::min(t.panel_size, k), "RMF needs Np <= min(Mp, K)");
                        for (int l = 1; l <= t.levels; ++l)
                            require(t.outputs(l) <= k, "RMF needs node outputs <= K");
                    }
                    cell.topo = t;
                }
                catch (const InvalidArgument &e)
                {
                    cell.reason = e.what();
                }
                cells.push_back(std::move(cell));
            }

    const int n = c.num_realizations;
    const int panels = c.scenario.num_antennas() / c.panel_antennas;
    std::vector<std::vector<CapacityReport>> caps(static_cast<size_t>(n));
    parallel_for(n, c.workers, [&](int r) {
        const ChannelMatrix h = realization_channel(c.scenario, c.seed, r, panels);
        auto &out = caps[static_cast<size_t>(r)];
        for (const auto &cell : cells)
            out.push_back(cell.topo ? evaluate_realization(h, *cell.topo, cell.alg, rho, opts) : CapacityReport{});
    });

    ResultSet rs;
    rs.extra_columns = {"algorithm", "feasible"};
    nlohmann::ordered_json cell_info = nlohmann::ordered_json::array();
    for (size_t i = 0; i < cells.size(); ++i)
    {
        const Cell &cell = cells[i];
        ResultRow base;
        base.rho_db = linear_to_db(rho);
        base.beta_p = cell.beta_p;
        base.beta_b1 = cell.beta_b1;
        nlohmann::ordered_json info;
        info["algorithm"] = to_string(cell.alg);
        info["beta_p"] = cell.beta_p;
        info["beta_b1"] = cell.beta_b1;
        if (!cell.topo)
        {
            base.extra = {to_string(cell.alg), "0"};
            base.realization = -1;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            base.capacity = {nan, nan, nan, nan, nan, nan};
            rs.rows.push_back(base);
            info["feasible"] = false;
            info["reason"] = cell.reason;
            cell_info.push_back(info);
            continue;
        }
        base.extra = {to_string(cell.alg), "1"};
        std::vector<ResultRow> rows;
        for (int r = 0; r < n; ++r)
        {
            ResultRow row = base;
            row.realization = r;
            row.capacity = caps[static_cast<size_t>(r)][i];
            rows.push_back(row);
        }
        detail::append_group(rs, rows, base);
        info["feasible"] = true;
        info["topology"] = to_json(*cell.topo);
        CostParams p = c.cost;
        p.num_users = k;
        info["costs"] = cost_summary(*cell.topo, p, cell.alg);
        cell_info.push_back(info);
    }
    rs.summary["config"] = config_summary(c, SweepAxis::Beta);
    rs.summary["cells"] = cell_info;
    return rs;
}

// Square LIS of each listed side length with fixed panel size; sizes whose
// panel count is not a power of four are marked infeasible.
inline ResultSet sweep_size(ExperimentConfig c)
{
    c.sweep = SweepAxis::LisSize;
    validate_config(c, SweepAxis::LisSize);
    const PlanOptions opts = plan_options(c);
    const double rho = c.rho();

    struct Point
    {
        Scenario scenario;
        std::optional<TreeTopology> topo;
        std::string reason;
    };
    std::vector<Point> points;
    for (double side : c.lis_size_list)
    {
        Point pt{c.scenario, std::nullopt, {}};
        pt.scenario.lis_width_m = side;
        pt.scenario.lis_height_m = side;
        try
        {
            pt.scenario.validate();
            TopologyRequest req = topology_request(c);
            req.num_antennas = pt.scenario.num_antennas();
            const TreeTopology t = derive_topology(req);
            make_partition(pt.scenario.antennas_x(), pt.scenario.antennas_y(), t.num_panels);
            pt.topo = t;
        }
        catch (const InvalidArgument &e)
        {
            pt.reason = e.what();
        }
        points.push_back(std::move(pt));
    }

    const int n = c.num_realizations;
    const int jobs = n * static_cast<int>(points.size());
    std::vector<CapacityReport> caps(static_cast<size_t>(jobs));
    parallel_for(jobs, c.workers, [&](int job) {
        const Point &pt = points[static_cast<size_t>(job / n)];
        if (!pt.topo)
            return;
        const ChannelMatrix h = realization_channel(pt.scenario, c.seed, job % n, pt.topo->num_panels);
        caps[static_cast<size_t>(job)] = evaluate_realization(h, *pt.topo, c.algorithm, rho, opts);
    });

    ResultSet rs;
    rs.extra_columns = {"lis_side_m", "num_antennas", "feasible"};
    nlohmann::ordered_json info_all = nlohmann::ordered_json::array();
    for (size_t s = 0; s < points.size(); ++s)
    {
        const Point &pt = points[s];
        ResultRow base;
        base.rho_db = linear_to_db(rho);
        const std::string side = format_double(pt.scenario.lis_width_m);
        const std::string m = std::to_string(pt.scenario.num_antennas());
        nlohmann::ordered_json info;
        info["lis_side_m"] = pt.scenario.lis_width_m;
        info["num_antennas"] = pt.scenario.num_antennas();
        if (!pt.topo)
        {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            base.realization = -1;
            base.beta_p = nan;
            base.capacity = {nan, nan, nan, nan, nan, nan};
            base.extra = {side, m, "0"};
            rs.rows.push_back(base);
            info["feasible"] = false;
            info["reason"] = pt.reason;
            info_all.push_back(info);
            continue;
        }
        base.beta_p = pt.topo->beta_panel();
        base.beta_b1 = beta_b1_of(*pt.topo);
        base.extra = {side, m, "1"};
        std::vector<ResultRow> rows;
        for (int r = 0; r < n; ++r)
        {
            ResultRow row = base;
            row.realization = r;
            row.capacity = caps[s * static_cast<size_t>(n) + static_cast<size_t>(r)];
            rows.push_back(row);
        }
        detail::append_group(rs, rows, base);
        CostParams p = c.cost;
        p.num_users = c.scenario.num_users;
        info["feasible"] = true;
        info["topology"] = to_json(*pt.topo);
        info["costs"] = cost_summary(*pt.topo, p, c.algorithm);
        info_all.push_back(info);
    }
    rs.summary["config"] = config_summary(c, SweepAxis::LisSize);
    rs.summary["points"] = info_all;
    return rs;
}

// ---------------------------------------------------------------- cost table

struct Table1Entry
{
    std::string metric;
    Algorithm algorithm;
    Accounting accounting;
    double value;        // in `unit`
    std::string unit;
    double published;    // published case-study value in `unit`
    double rel_deviation; // (value - published) / published
};

struct Table1Setup
{
    TreeTopology topology;
    CostParams params;
};

// Case-study LIS: M = 1024 in 16 panels of 64, K = 50, beta_p = 1/4,
// beta_b1 = 1/2, CDSP dimension K; w = 12, Nprb = 275, fB = 100 MHz,
// nP = P, T_clk = 1 ns, N_proc = 100, 100 ns local and 300 ns global links.
inline Table1Setup table1_defaults()
{
    Table1Setup s;
    s.topology = make_tree(16, 64, 16, {32, 50});
    s.params.bandwidth_hz = 100e6;
    s.params.bit_width = 12;
    s.params.num_prb = 275;
    s.params.t_clk_s = 1e-9;
    s.params.n_proc = 100;
    s.params.n_paral = 100;
    s.params.l_com_local_s = 100e-9;
    s.params.l_com_global_s = 300e-9;
    s.params.chain_panels = 16;
    s.params.num_users = 50;
    return s;
}

// Same table for the topology and cost parameters of a configuration.
inline Table1Setup table1_setup(const ExperimentConfig &c)
{
    Table1Setup s;
    s.topology = derive_topology(topology_request(c));
    s.params = c.cost;
    s.params.num_users = c.scenario.num_users;
    s.params.validate(s.topology);
    return s;
}

inline std::vector<Table1Entry> report_table1(const Table1Setup &s)
{
    struct Published
    {
        double c_form, c_filt, r_inter, r_intra, l_form, l_filt;
    };
    auto published = [](Algorithm a) {
        return a == Algorithm::IIC ? Published{3.1, 2.3, 1.0, 5.4, 110.2, 1.0}
                                   : Published{0.02, 2.3, 1.0, 5.4, 1.2, 1.0};
    };

    std::vector<Table1Entry> out;
    for (Algorithm alg : {Algorithm::IIC, Algorithm::RMF})
        for (Accounting acc : {Accounting::AllLevels, Accounting::PaperCompat})
        {
            const CostReport r = evaluate_costs(s.topology, s.params, alg, acc);
            const Published p = published(alg);
            auto add = [&](const char *metric, double v, const char *unit, double pub) {
                out.push_back({metric, alg, acc, v, unit, pub, (v - pub) / pub});
            };
            add("c_form", r.c_form / 1e9, "GMAC", p.c_form);
            add("c_filt", r.c_filt / 1e12, "TMAC/s", p.c_filt);
            add("r_inter", r.r_inter / 1e12, "Tb/s", p.r_inter);
            add("r_intra", r.r_intra / 1e12, "Tb/s", p.r_intra);
            add("l_form", r.l_form / 1e-6, "us", p.l_form);
            add("l_filt", r.l_filt / 1e-6, "us", p.l_filt);
        }
    return out;
}

inline const Table1Entry &find_entry(const std::vector<Table1Entry> &t, const std::string &metric, Algorithm alg,
                                     Accounting acc)
{
    for (const auto &e : t)
        if (e.metric == metric && e.algorithm == alg && e.accounting == acc)
            return e;
    throw InvalidArgument("table1: no entry " + metric);
}

inline std::string table1_csv(const std::vector<Table1Entry> &t)
{
    std::ostringstream os;
    os << "metric,algorithm,accounting,value,unit,published,rel_deviation\n";
    for (const auto &e : t)
        os << e.metric << ',' << to_string(e.algorithm) << ',' << to_string(e.accounting) << ','
           << format_double(e.value) << ',' << e.unit << ',' << format_double(e.published) << ','
           << format_double(e.rel_deviation) << '\n';
    return os.str();
}

} // namespace lis

#endif // LISPROC_EXPERIMENTS_HPP
