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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <lisproc/lisproc.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace lis;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Scenario desk(int users = 16)
{
    Scenario s;
    s.lis_width_m = 0.6;
    s.lis_height_m = 0.6;
    s.num_users = users;
    return s;
}

// Whiteness bookkeeping over every plan built here.
double worst_semi_unitary = 0.0;
int plans_checked = 0;

FilterPlan plan_of(const ChannelMatrix &h, const TreeTopology &t, Algorithm alg, double rho, PlanOptions opts = {})
{
    FilterPlan p = formulate_lis(h, t, alg, rho, opts);
    if (p.semi_unitary)
    {
        worst_semi_unitary = std::max(worst_semi_unitary, semi_unitary_residual(compose_total_filter(p)));
        ++plans_checked;
    }
    return p;
}

CMatrix random_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    CMatrix a(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            a(r, c) = rng.complex_normal();
    return a;
}

Outcome bound_suite()
{
    const Scenario s = desk();
    const auto t = build_tree(16, 16, 2, {1.0, 0.5});
    double worst = -1e300;
    int checked = 0;
    for (int r = 0; r < 100; ++r)
    {
        const auto h = realization_channel(s, 1001, r, 16);
        for (double rho : {0.01, 1.0, 100.0})
            for (Algorithm alg : {Algorithm::IIC, Algorithm::RMF})
            {
                const auto c = capacity_of_plan(plan_of(h, t, alg, rho), rho);
                worst = std::max(worst, c.c_z - std::min(c.c_ub1, c.c_ub2));
                ++checked;
            }
    }
    return {worst <= 1e-9, std::to_string(checked) + " evaluations, max(c_z - min bound) = " + fmt("%.3e", worst)};
}

// Observed with seed 2024 on first evaluation: 0.021552.
constexpr double low_snr_gap_pinned = 0.021552;

Outcome low_snr_gap()
{
    const Scenario s = desk();
    const auto t = build_tree(16, 16, 2, {1.0, 0.5});
    const double rho = 0.01;
    std::vector<CapacityReport> caps;
    for (int r = 0; r < 20; ++r)
        caps.push_back(capacity_of_plan(plan_of(realization_channel(s, 2024, r, 16), t, Algorithm::IIC, rho), rho));
    const auto m = average(caps);
    const double gap = (m.c_ub1 - m.c_z) / m.c_z;
    const bool pinned = std::abs(gap - low_snr_gap_pinned) <= 0.2 * low_snr_gap_pinned;
    return {gap < 0.15 && pinned, "relative gap " + fmt("%.6f", gap) + " (< 0.15, pinned " +
                                      fmt("%.6f", low_snr_gap_pinned) + " +/- 20%)"};
}

Outcome high_snr_slope()
{
    const Scenario s = desk();
    const auto t = build_tree(16, 16, 2, {1.0, 0.5});
    double diff = 0.0;
    const int n = 20;
    for (int r = 0; r < n; ++r)
    {
        const auto h = realization_channel(s, 2025, r, 16);
        const double lo = capacity_of_plan(plan_of(h, t, Algorithm::IIC, 1e3), 1e3).c_z;
        const double hi = capacity_of_plan(plan_of(h, t, Algorithm::IIC, 1e4), 1e4).c_z;
        diff += (hi - lo) / n;
    }
    const double target = 16 * std::log2(10.0);
    const double rel = (diff - target) / target;
    return {std::abs(rel) <= 0.10,
            "mean c_z(1e4) - c_z(1e3) = " + fmt("%.4f", diff) + " vs K log2(10) = " + fmt("%.4f", target) +
                " (" + fmt("%+.2f%%", 100 * rel) + ")"};
}

Outcome cost_exact()
{
    const auto t = report_table1(table1_defaults());
    const auto al = Accounting::AllLevels;
    struct Check
    {
        const char *metric;
        Algorithm alg;
        double tol;
    };
    bool ok = true;
    std::string detail;
    for (const Check &c : {Check{"c_form", Algorithm::RMF, 0.05}, Check{"r_inter", Algorithm::RMF, 0.05},
                           Check{"l_filt", Algorithm::RMF, 0.05}, Check{"l_form", Algorithm::RMF, 0.20}})
    {
        const auto &e = find_entry(t, c.metric, c.alg, al);
        ok = ok && std::abs(e.rel_deviation) <= c.tol;
        detail += std::string(detail.empty() ? "" : ", ") + c.metric + "=" + fmt("%.5g", e.value) + " " + e.unit +
                  fmt(" (%+.1f%%)", 100 * e.rel_deviation);
    }
    return {ok, detail};
}

Outcome cost_ambiguous()
{
    const auto t = report_table1(table1_defaults());
    struct Check
    {
        const char *metric;
        Algorithm alg;
        double all_levels, compat; // regression values from first evaluation
    };
    bool ok = true;
    std::string detail;
    for (const Check &c : {Check{"c_form", Algorithm::IIC, 3.7215552, 3.1829952},
                           Check{"c_filt", Algorithm::IIC, 3.0976, 2.4576},
                           Check{"r_intra", Algorithm::IIC, 4.4208, 3.9936},
                           Check{"l_form", Algorithm::IIC, 126.79296, 107.20896}})
    {
        const auto &a = find_entry(t, c.metric, c.alg, Accounting::AllLevels);
        const auto &b = find_entry(t, c.metric, c.alg, Accounting::PaperCompat);
        const bool within = std::min(std::abs(a.rel_deviation), std::abs(b.rel_deviation)) <= 0.40;
        const bool pinned = std::abs(a.value - c.all_levels) <= 1e-9 * c.all_levels &&
                            std::abs(b.value - c.compat) <= 1e-9 * c.compat;
        ok = ok && within && pinned;
        detail += std::string(detail.empty() ? "" : ", ") + c.metric + " " + fmt("%+.1f%%", 100 * a.rel_deviation) +
                  "/" + fmt("%+.1f%%", 100 * b.rel_deviation);
    }
    return {ok, detail + " (all-levels/paper-compat)"};
}

Outcome iic_optimality()
{
    Rng rng(606);
    double worst = 1e300;
    for (int inst = 0; inst < 20; ++inst)
    {
        const CMatrix h = random_matrix(rng, 2, 2);
        const CMatrix g = random_matrix(rng, 2, 2);
        const CMatrix z = hermitian_part(CMatrix::Identity(2, 2) + g.adjoint() * g);
        const double rho = 10.0;
        const auto [f, next] = iic_panel_step(h, {z}, 1, rho);
        const double got = std::exp(iic_objective_log(h, f.basis, z, rho));
        double best = 0.0;
        for (int s = 0; s < 100000; ++s)
        {
            CVector q = random_matrix(rng, 2, 1).col(0);
            q /= q.norm();
            best = std::max(best, std::exp(iic_objective_log(h, q, z, rho)));
        }
        worst = std::min(worst, (got - best) / best);
    }
    return {worst >= -1e-9, "20 instances, min (IIC - best random) / best = " + fmt("%.3e", worst)};
}

Outcome whiteness()
{
    const auto h = realization_channel(desk(), 707, 0, 16);
    const auto plan = plan_of(h, build_tree(16, 16, 2, {1.0, 0.5}), Algorithm::IIC, 10.0);
    Rng rng(708);
    const int draws = 10000;
    CMatrix cov = CMatrix::Zero(16, 16);
    for (int d = 0; d < draws; ++d)
    {
        CVector n(256);
        for (Eigen::Index i = 0; i < n.size(); ++i)
            n(i) = rng.complex_normal();
        const CVector s = filter_uplink(plan, n);
        cov += s * s.adjoint();
    }
    cov /= draws;
    const double dev = (cov - CMatrix::Identity(16, 16)).cwiseAbs().maxCoeff();
    return {dev <= 0.05 && worst_semi_unitary <= 1e-9,
            std::to_string(plans_checked) + " plans, max ||W^H W - I||_F = " + fmt("%.3e", worst_semi_unitary) +
                ", noise covariance max entry deviation " + fmt("%.4f", dev)};
}

ExperimentConfig desk_config()
{
    return parse_config("lis_width_m = 0.6\nlis_height_m = 0.6\nnum_users = 16\nsnr_rho = 10\n"
                        "panel_antennas = 16\npanel_outputs = 2\ntree_betas = 1.0, 0.5\n"
                        "num_realizations = 10\nseed = 5\n");
}

ResultSet beta_mid_grid;

Outcome monotonicity()
{
    std::vector<ResultSet> sets;
    auto c = desk_config();
    sets.push_back(run(c));
    c.snr_db_list = {-20, 0, 20, 40};
    sets.push_back(sweep_snr(c));
    auto b = desk_config();
    b.panel_outputs.reset();
    b.beta_p_list = {0.125, 0.25, 0.5, 1.0};
    b.beta_b1_list = {0.25, 0.5, 1.0};
    sets.push_back(sweep_beta(b));
    auto m = b;
    m.beta_p_list = {0.5};
    m.beta_b1_list = {0.5};
    m.num_realizations = 50;
    beta_mid_grid = sweep_beta(m);
    sets.push_back(beta_mid_grid);

    int rows = 0;
    double worst = -1e300;
    for (const auto &rs : sets)
        for (const auto &r : rs.rows)
        {
            if (std::isnan(r.capacity.c_cdsp))
                continue;
            worst = std::max({worst, r.capacity.c_cdsp - r.capacity.c_z, r.capacity.c_z - r.capacity.c_antenna});
            ++rows;
        }

    // Lossless plans: a single panel keeping K outputs, and a 16-panel IIC
    // plan with Np = Mp and no node reduction.
    double lossless = 0.0;
    auto one = parse_config("lis_width_m = 0.15\nlis_height_m = 0.15\nnum_users = 4\npanel_antennas = 16\n"
                            "num_realizations = 1\nseed = 9\n");
    for (Algorithm alg : {Algorithm::IIC, Algorithm::RMF})
    {
        one.algorithm = alg;
        for (const auto &r : run(one).rows)
            lossless = std::max(lossless, std::abs(r.capacity.normalized - 1.0));
    }
    const auto h = realization_channel(desk(), 10, 0, 16);
    const auto full = capacity_of_plan(plan_of(h, build_tree(16, 16, 16, {1.0, 1.0}), Algorithm::IIC, 10.0), 10.0);
    lossless = std::max(lossless, std::abs(full.normalized - 1.0));

    return {worst <= 1e-9 && lossless <= 1e-9, std::to_string(rows) + " rows, max violation " + fmt("%.3e", worst) +
                                                    ", lossless |normalized - 1| = " + fmt("%.3e", lossless)};
}

Outcome algorithm_ordering()
{
    double iic = 0.0, rmf = 0.0;
    for (const auto &r : beta_mid_grid.rows)
        if (r.realization == -1)
            (r.extra[0] == "iic" ? iic : rmf) = r.capacity.normalized;
    return {iic - rmf >= 0.0 && iic > 0.0 && rmf > 0.0,
            "beta_p = beta_b1 = 0.5, 50 realizations: IIC " + fmt("%.4f", iic) + ", RMF " + fmt("%.4f", rmf)};
}

Outcome pass_monotonicity()
{
    const Scenario s = desk();
    double worst = 1e300;
    for (int r = 0; r < 20; ++r)
    {
        const auto h = realization_channel(s, 1010, r, 16);
        const auto chain = iic_chain(h.blocks(), 2, 10.0, {.passes = 3});
        for (size_t p = 1; p < chain.pass_objectives.size(); ++p)
            worst = std::min(worst, chain.pass_objectives[p] - chain.pass_objectives[p - 1]);
    }
    return {worst >= -1e-10, "20 instances x 3 passes, min per-pass change in log2|Z_P| = " + fmt("%.3e", worst)};
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(LISPROC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path() / "lisproc_acceptance";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "run.cfg";
    std::ofstream(cfg) << "lis_width_m = 0.6\nlis_height_m = 0.6\nnum_users = 16\nsnr_db = 10\n"
                          "panel_antennas = 16\npanel_outputs = 2\ntree_betas = 1.0, 0.5\n"
                          "num_realizations = 8\nseed = 11\n";
    const auto a = dir / "a.csv", b = dir / "b.csv";
    const int ra = run_cli("run --config " + cfg.string() + " --out " + a.string());
    const int rb = run_cli("run --config " + cfg.string() + " --workers 4 --out " + b.string());
    const std::string ca = slurp(a), cb = slurp(b);
    const bool lib = to_csv(run(load_config(cfg.string()))) == ca;
    return {ra == 0 && rb == 0 && !ca.empty() && ca == cb && lib,
            std::to_string(ca.size()) + " bytes, CLI runs identical: " + (ca == cb ? "yes" : "no") +
                ", library matches CLI: " + (lib ? "yes" : "no")};
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char *name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "panel-output capacity below both upper bounds", bound_suite},
        {2, "low-SNR tightness of the first bound", low_snr_gap},
        {3, "high-SNR slope of the panel-output capacity", high_snr_slope},
        {4, "closed-form cost entries", cost_exact},
        {5, "accounting-dependent cost entries", cost_ambiguous},
        {6, "IIC panel step optimality", iic_optimality},
        {7, "filter whiteness", whiteness},
        {8, "data-processing monotonicity and lossless plans", monotonicity},
        {9, "IIC at least as good as RMF", algorithm_ordering},
        {10, "IIC pass monotonicity", pass_monotonicity},
        {11, "byte-identical reruns", determinism},
    };

    // Criterion 7 reports on every plan built, so it runs after the others.
    std::vector<std::pair<const Criterion *, Outcome>> results;
    auto evaluate = [](const Criterion &c) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.detail += fmt(" [%.1f s]", secs);
        return o;
    };
    std::vector<Outcome> outcomes(criteria.size());
    for (size_t i = 0; i < criteria.size(); ++i)
        if (criteria[i].id != 7)
            outcomes[i] = evaluate(criteria[i]);
    for (size_t i = 0; i < criteria.size(); ++i)
        if (criteria[i].id == 7)
            outcomes[i] = evaluate(criteria[i]);

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i)
    {
        const auto &o = outcomes[i];
        failed += !o.pass;
        std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", criteria[i].id, criteria[i].name,
                    o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
