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

#ifndef LISPROC_COST_HPP
#define LISPROC_COST_HPP

#include "frontend.hpp"
#include "tree.hpp"

#include <algorithm>
#include <vector>

namespace lis
{

// Which tree levels enter the cost sums. AllLevels counts the front-end and
// levels 1..L. PaperCompat stops at level L-1, which is the accounting the
// published case-study table is most consistent with for some entries.
enum class Accounting
{
    AllLevels,
    PaperCompat,
};

inline const char *to_string(Accounting a)
{
    return a == Accounting::AllLevels ? "all-levels" : "paper-compat";
}

struct CostParams
{
    double bandwidth_hz = 100e6; // fB
    int bit_width = 12;          // w, per real/imaginary component
    int num_prb = 275;           // Nprb
    double alpha = 0.1;          // cost(R_intra) / cost(R_inter)
    double t_clk_s = 1e-9;
    double n_proc = 100.0;
    double n_paral = 100.0; // carried for completeness, not used by the model
    double l_com_local_s = 100e-9;
    double l_com_global_s = 300e-9;
    int chain_panels = 0; // nP; <= 0 means all P panels
    int num_users = 50;   // K

    int effective_chain(const TreeTopology &t) const
    {
        return chain_panels > 0 ? chain_panels : t.num_panels;
    }

    void validate(const TreeTopology &t) const
    {
        require(bandwidth_hz >= 0.0, "cost: bandwidth must be >= 0");
        require(bit_width >= 1, "cost: bit width must be >= 1");
        require(num_prb >= 1, "cost: PRB count must be >= 1");
        require(alpha >= 0.0, "cost: alpha must be >= 0");
        require(t_clk_s >= 0.0, "cost: clock period must be >= 0");
        require(n_proc > 0.0, "cost: processing unit count must be > 0");
        require(n_proc <= n_paral, "cost: N_proc must not exceed N_paral");
        require(l_com_local_s >= 0.0 && l_com_global_s >= 0.0, "cost: link latencies must be >= 0");
        require(num_users >= 1, "cost: K must be >= 1");
        require(effective_chain(t) <= t.num_panels, "cost: nP must not exceed P");
    }
};

struct CostReport
{
    Accounting accounting = Accounting::AllLevels;
    Algorithm algorithm = Algorithm::IIC;
    double c_form = 0.0; // MAC
    double c_filt = 0.0; // MAC/s
    double r_inter = 0.0; // b/s
    double r_intra = 0.0;
    double r_eq = 0.0;
    double l_form = 0.0; // s
    double l_filt = 0.0;
    double l_tot = 0.0;
    // Index 0 is the front-end, n the n-th tree level (all units summed).
    std::vector<double> c_form_levels;
    std::vector<double> c_filt_levels;
    std::vector<double> r_inter_levels;
    std::vector<double> r_intra_levels;
};

namespace detail
{

inline int counted_levels(const TreeTopology &t, Accounting a)
{
    return a == Accounting::AllLevels ? t.levels : std::max(0, t.levels - 1);
}

} // namespace detail

// Filtering MACs per subcarrier of one unit at a level.
inline double unit_filtering_macs(const TreeTopology &t, int level)
{
    if (level == 0)
        return static_cast<double>(t.panel_size) * t.panel_outputs;
    return static_cast<double>(t.arity) * t.outputs(level - 1) * t.outputs(level);
}

// Formulation MACs of one unit at a level (one filter computation).
inline double unit_formulation_macs(const TreeTopology &t, int level, Algorithm alg, int k)
{
    const double kd = k;
    if (alg == Algorithm::RMF)
        return level == 0 ? t.panel_size * kd : t.arity * t.outputs(level - 1) * kd;

    if (level == 0)
    {
        const double mp = t.panel_size, np = t.panel_outputs;
        const double d0 = std::max(kd, mp);
        return (2.0 * kd + mp + np) * kd * kd + np * mp * kd + 2.0 * np * d0 * d0;
    }
    const double in = static_cast<double>(t.arity) * t.outputs(level - 1);
    const double out = t.outputs(level);
    const double dn = std::max(kd, in);
    return in * out * kd + 2.0 * out * dn * dn;
}

inline double filtering_complexity(const TreeTopology &t, const CostParams &p,
                                   Accounting a = Accounting::AllLevels)
{
    double macs = t.units(0) * unit_filtering_macs(t, 0);
    for (int n = 1; n <= detail::counted_levels(t, a); ++n)
        macs += t.units(n) * unit_filtering_macs(t, n);
    return p.bandwidth_hz * macs;
}

inline double formulation_complexity(const TreeTopology &t, const CostParams &p, Algorithm alg,
                                     Accounting a = Accounting::AllLevels)
{
    double macs = t.units(0) * unit_formulation_macs(t, 0, alg, p.num_users);
    for (int n = 1; n <= detail::counted_levels(t, a); ++n)
        macs += t.units(n) * unit_formulation_macs(t, n, alg, p.num_users);
    return p.num_prb * macs;
}

struct InterconnectRates
{
    double r_inter = 0.0;
    double r_intra = 0.0;
    double r_eq = 0.0;
};

inline InterconnectRates interconnect_rates(const TreeTopology &t, const CostParams &p,
                                            Accounting a = Accounting::AllLevels)
{
    const double scale = 2.0 * p.bit_width * p.bandwidth_hz;
    double inter = static_cast<double>(t.num_panels) * t.panel_outputs;
    double intra = static_cast<double>(t.num_panels) * (t.panel_size + t.panel_outputs);
    for (int n = 1; n <= detail::counted_levels(t, a); ++n)
    {
        inter += static_cast<double>(t.units(n)) * t.outputs(n);
        intra += static_cast<double>(t.units(n)) * (t.arity * t.outputs(n - 1) + t.outputs(n));
    }
    InterconnectRates r;
    r.r_inter = scale * inter;
    r.r_intra = scale * intra;
    r.r_eq = r.r_inter + p.alpha * r.r_intra;
    return r;
}

struct Latency
{
    double l_form = 0.0;
    double l_filt = 0.0;
};

// Formulation runs serially through nP panels (IIC only; RMF uses nP = 1),
// then up one branch of the tree. Filtering follows one panel-to-CDSP path.
// Both pay L + 1 global link hops.
inline Latency latency(const TreeTopology &t, const CostParams &p, Algorithm alg,
                       Accounting a = Accounting::AllLevels)
{
    const int chain = alg == Algorithm::IIC ? p.effective_chain(t) : 1;
    const int counted = detail::counted_levels(t, a);

    double form = chain * unit_formulation_macs(t, 0, alg, p.num_users);
    double filt = unit_filtering_macs(t, 0);
    for (int n = 1; n <= counted; ++n)
    {
        form += unit_formulation_macs(t, n, alg, p.num_users);
        filt += unit_filtering_macs(t, n);
    }

    const double global = (t.levels + 1) * p.l_com_global_s;
    Latency l;
    l.l_form = form * p.t_clk_s / p.n_proc + global;
    if (alg == Algorithm::IIC)
        l.l_form += (chain - 1) * p.l_com_local_s;
    l.l_filt = filt * p.t_clk_s / p.n_proc + global;
    return l;
}

inline CostReport evaluate_costs(const TreeTopology &t, const CostParams &p, Algorithm alg,
                                 Accounting a = Accounting::AllLevels)
{
    t.validate();
    p.validate(t);
    CostReport r;
    r.accounting = a;
    r.algorithm = alg;
    r.c_form = formulation_complexity(t, p, alg, a);
    r.c_filt = filtering_complexity(t, p, a);
    const auto rates = interconnect_rates(t, p, a);
    r.r_inter = rates.r_inter;
    r.r_intra = rates.r_intra;
    r.r_eq = rates.r_eq;
    const auto lat = latency(t, p, alg, a);
    r.l_form = lat.l_form;
    r.l_filt = lat.l_filt;
    r.l_tot = lat.l_form + lat.l_filt;

    const double scale = 2.0 * p.bit_width * p.bandwidth_hz;
    for (int n = 0; n <= detail::counted_levels(t, a); ++n)
    {
        r.c_form_levels.push_back(p.num_prb * t.units(n) * unit_formulation_macs(t, n, alg, p.num_users));
        r.c_filt_levels.push_back(p.bandwidth_hz * t.units(n) * unit_filtering_macs(t, n));
        if (n == 0)
        {
            r.r_inter_levels.push_back(scale * t.num_panels * t.panel_outputs);
            r.r_intra_levels.push_back(scale * t.num_panels * (t.panel_size + t.panel_outputs));
        }
        else
        {
            r.r_inter_levels.push_back(scale * t.units(n) * t.outputs(n));
            r.r_intra_levels.push_back(scale * t.units(n) * (t.arity * t.outputs(n - 1) + t.outputs(n)));
        }
    }
    return r;
}

} // namespace lis

#endif // LISPROC_COST_HPP
