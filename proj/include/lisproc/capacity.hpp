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

#ifndef LISPROC_CAPACITY_HPP
#define LISPROC_CAPACITY_HPP

#include "numerics.hpp"
#include "tree.hpp"

#include <cmath>
#include <vector>

namespace lis
{

// Sum-rate capacities in bits/s/Hz at the antenna, panel-output and CDSP
// interfaces, with the two upper bounds on the panel-output capacity.
struct CapacityReport
{
    double c_antenna = 0.0;
    double c_z = 0.0;
    double c_cdsp = 0.0;
    double c_ub1 = 0.0;
    double c_ub2 = 0.0;
    double normalized = 0.0; // c_cdsp / c_antenna
};

// log2|I_K + rho G^H G|
inline double capacity_from_equivalent(const CMatrix &g, double rho)
{
    const Eigen::Index k = g.cols();
    return log2det_hpd(CMatrix::Identity(k, k) + hermitian_part(rho * g.adjoint() * g));
}

inline double channel_capacity(const CMatrix &h, double rho)
{
    return capacity_from_equivalent(h, rho);
}

// log2|I + rho H^H W (W^H W)^{-1} W^H H|. Only the column space of W enters,
// so the projector is formed from an orthonormal basis of W.
inline double capacity_after_filter(const CMatrix &h, const CMatrix &w, double rho)
{
    require(h.rows() == w.rows(), "capacity_after_filter: H and W row counts differ");
    require(w.cols() >= 1, "capacity_after_filter: empty filter");
    const SingularDecomp d = svd(w);
    if (!(d.sigma(d.sigma.size() - 1) > 1e-10 * d.sigma(0)))
        throw InvalidArgument("capacity_after_filter: filter is rank deficient");
    return capacity_from_equivalent(d.u.adjoint() * h, rho);
}

// Mutual information through the entropy form
//   log2|rho W^H H H^H W + W^H W| - log2|W^H W|.
// Requires W^H W invertible; used to cross-check capacity_after_filter.
inline double mutual_information_entropy_form(const CMatrix &h, const CMatrix &w, double rho)
{
    const CMatrix gram = hermitian_part(w.adjoint() * w);
    const CMatrix g = w.adjoint() * h;
    return log2det_hpd(hermitian_part(rho * g * g.adjoint()) + gram) - log2det_hpd(gram);
}

struct UpperBounds
{
    double c_ub1 = 0.0;
    double c_ub2 = 0.0;
};

// Bounds on the panel-output capacity for any semi-unitary Mp x Np panel
// filters: c_ub1 = K log2(1 + rho S/K) with S the sum over panels of the Np
// largest eigenvalues of H_i^H H_i, and c_ub2 = sum log2(1 + rho lambda_n)
// over the eigenvalues of H^H H.
inline UpperBounds upper_bounds(const std::vector<CMatrix> &blocks, int np, double rho)
{
    require(!blocks.empty(), "upper_bounds: no panels");
    const Eigen::Index k = blocks.front().cols();
    require(static_cast<Eigen::Index>(blocks.size()) * np >= k, "upper_bounds: requires P * Np >= K");

    double s = 0.0;
    CMatrix gram = CMatrix::Zero(k, k);
    for (const auto &b : blocks)
    {
        const CMatrix g = hermitian_part(b.adjoint() * b);
        gram += g;
        const RVector ev = eigh(g).eigenvalues;
        for (Eigen::Index n = 0; n < std::min<Eigen::Index>(np, ev.size()); ++n)
            s += std::max(ev(n), 0.0);
    }

    UpperBounds out;
    const double kd = static_cast<double>(k);
    out.c_ub1 = kd * std::log2(1.0 + rho * s / kd);
    const RVector ev = eigh(gram).eigenvalues;
    for (Eigen::Index n = 0; n < ev.size(); ++n)
        out.c_ub2 += std::log2(1.0 + rho * std::max(ev(n), 0.0));
    return out;
}

inline std::vector<CMatrix> panel_blocks(const FilterPlan &plan)
{
    std::vector<CMatrix> out;
    const auto &t = plan.topology;
    for (int i = 0; i < t.num_panels; ++i)
        out.emplace_back(plan.channel.middleRows(static_cast<Eigen::Index>(i) * t.panel_size, t.panel_size));
    return out;
}

// Capacity at the panel outputs: log2|I + rho sum_i H_i^H Q_i Q_i^H H_i|.
inline double panel_output_capacity(const FilterPlan &plan, double rho)
{
    const auto blocks = panel_blocks(plan);
    const Eigen::Index k = plan.channel.cols();
    CMatrix a = CMatrix::Zero(k, k);
    for (size_t i = 0; i < blocks.size(); ++i)
        a += interference_contribution(blocks[i], plan.panel_filters[i].basis, rho);
    return log2det_hpd(CMatrix::Identity(k, k) + a);
}

inline CapacityReport capacity_of_plan(const FilterPlan &plan, double rho)
{
    require(rho > 0.0, "capacity_of_plan: rho must be > 0");
    CapacityReport r;
    r.c_antenna = channel_capacity(plan.channel, rho);
    r.c_z = panel_output_capacity(plan, rho);
    // With semi-unitary filters the noise at the CDSP is white, so the
    // equivalent channel alone determines the capacity.
    r.c_cdsp = plan.semi_unitary ? capacity_from_equivalent(plan.cdsp_channel(), rho)
                                 : capacity_after_filter(plan.channel, compose_total_filter(plan), rho);
    const auto blocks = panel_blocks(plan);
    const int np = plan.topology.panel_outputs;
    if (static_cast<Eigen::Index>(blocks.size()) * np >= plan.channel.cols())
    {
        const UpperBounds b = upper_bounds(blocks, np, rho);
        r.c_ub1 = b.c_ub1;
        r.c_ub2 = b.c_ub2;
    }
    else
    {
        r.c_ub1 = r.c_ub2 = std::nan("");
    }
    r.normalized = r.c_antenna > 0.0 ? r.c_cdsp / r.c_antenna : 1.0;
    return r;
}

} // namespace lis

#endif // LISPROC_CAPACITY_HPP
