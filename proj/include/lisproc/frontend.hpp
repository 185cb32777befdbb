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

#ifndef LISPROC_FRONTEND_HPP
#define LISPROC_FRONTEND_HPP

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <numeric>
#include <vector>

namespace lis
{

enum class Algorithm
{
    IIC,
    RMF,
};

inline const char *to_string(Algorithm a)
{
    return a == Algorithm::IIC ? "iic" : "rmf";
}

// Reduction filter of one panel (or tree node). `filter` is the Mp x Np
// matrix W applied as W^H y; `basis` is an orthonormal basis Q of its column
// space. For the semi-unitary filters produced by default both coincide.
struct PanelFilter
{
    CMatrix filter;
    CMatrix basis;
    int panel_index = 0;
    std::vector<int> selected_users; // RMF only, in selection order
};

struct InterferenceState
{
    CMatrix z; // K x K, Hermitian, Z >= I

    static InterferenceState identity(Eigen::Index k) { return {CMatrix::Identity(k, k)}; }
};

struct RmfOptions
{
    // Orthonormalize the selected columns (Gram-Schmidt in selection order).
    // Off: columns are only scaled to unit norm and the filter is not
    // semi-unitary.
    bool orthonormalize = true;
};

namespace detail
{

// Indices of the `count` largest column norms; ties go to the lower index.
inline std::vector<int> strongest_columns(const CMatrix &h, int count)
{
    const RVector norms = h.colwise().squaredNorm().transpose();
    std::vector<int> idx(static_cast<size_t>(h.cols()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return norms(a) > norms(b); });
    idx.resize(static_cast<size_t>(count));
    return idx;
}

// Modified Gram-Schmidt on the columns in order. A column that is (numerically)
// inside the span of its predecessors is replaced by the first standard basis
// vector that is not, so the result always has orthonormal columns.
inline CMatrix gram_schmidt(const CMatrix &a)
{
    CMatrix q = a;
    auto orthogonalize = [&](CVector v, Eigen::Index upto) {
        for (int rep = 0; rep < 2; ++rep)
            for (Eigen::Index j = 0; j < upto; ++j)
                v -= q.col(j) * q.col(j).dot(v);
        return v;
    };
    for (Eigen::Index c = 0; c < q.cols(); ++c)
    {
        const double scale = a.col(c).norm();
        CVector v = orthogonalize(a.col(c), c);
        if (v.norm() <= 1e-10 * scale)
        {
            for (Eigen::Index e = 0; e < q.rows(); ++e)
            {
                v = orthogonalize(CVector::Unit(q.rows(), e), c);
                if (v.norm() > 1e-6)
                    break;
            }
        }
        q.col(c) = v / v.norm();
    }
    return q;
}

} // namespace detail

// Reduced matched filter: the Np strongest user columns of the local channel.
inline PanelFilter rmf_filter(const CMatrix &h, int np, RmfOptions opts = {}, int panel_index = 0)
{
    require(np >= 1, "rmf_filter: Np must be >= 1");
    require(np <= std::min<Eigen::Index>(h.rows(), h.cols()), "rmf_filter: Np must be <= min(Mp, K)");

    PanelFilter out;
    out.panel_index = panel_index;
    out.selected_users = detail::strongest_columns(h, np);

    CMatrix w(h.rows(), np);
    for (int c = 0; c < np; ++c)
    {
        const auto col = h.col(out.selected_users[static_cast<size_t>(c)]);
        const double n = col.norm();
        if (n < 1e-14)
            throw NumericalError("rmf_filter: selected channel column is numerically zero");
        w.col(c) = col / n;
    }

    if (opts.orthonormalize)
    {
        out.filter = detail::gram_schmidt(w);
        out.basis = out.filter;
    }
    else
    {
        out.filter = w;
        out.basis = orthonormal_basis(w);
    }
    return out;
}

// Determinant objective |rho H^H Q Q^H H + Z| maximized by the IIC step, in
// natural log.
inline double iic_objective_log(const CMatrix &h, const CMatrix &q, const CMatrix &z, double rho)
{
    const CMatrix g = q.adjoint() * h;
    return logdet_hpd(hermitian_part(rho * g.adjoint() * g + z));
}

// ρ H^H Q Q^H H, the contribution of one panel to the interference state.
inline CMatrix interference_contribution(const CMatrix &h, const CMatrix &q, double rho)
{
    const CMatrix g = q.adjoint() * h;
    return hermitian_part(rho * g.adjoint() * g);
}

// One decentralized IIC update at a panel:
//   H~ = H U_z S_z^{-1/2},  Q = leading Np left singular vectors of H~,
//   Z' = Z + rho H^H Q Q^H H.
// When H~ has rank below Np the remaining columns of Q come from the
// orthogonal complement, which leaves the objective unchanged.
inline std::pair<PanelFilter, InterferenceState>
iic_panel_step(const CMatrix &h, const InterferenceState &z_prev, int np, double rho, int panel_index = 0)
{
    require(np >= 1, "iic_panel_step: Np must be >= 1");
    require(np <= h.rows(), "iic_panel_step: Np must be <= Mp");
    require(rho > 0.0, "iic_panel_step: rho must be > 0");
    require(z_prev.z.rows() == h.cols() && z_prev.z.cols() == h.cols(),
            "iic_panel_step: Z must be K x K");

    const CMatrix whitened = h * inv_sqrt_psd(z_prev.z);
    const bool need_complement = np > std::min(h.rows(), h.cols());
    const SingularDecomp dec = svd(whitened, need_complement);

    PanelFilter f;
    f.panel_index = panel_index;
    f.basis = dec.u.leftCols(np);
    f.filter = f.basis;

    InterferenceState next{z_prev.z + interference_contribution(h, f.basis, rho)};
    return {std::move(f), std::move(next)};
}

struct IicChainResult
{
    std::vector<PanelFilter> filters;
    InterferenceState state;
    std::vector<double> pass_objectives; // log2|Z_P| after each pass
};

struct IicChainOptions
{
    int passes = 1;
    // Stop early once a pass improves log2|Z_P| by less than this relative
    // amount. Unset: always run `passes` passes.
    std::optional<double> rel_tolerance;
};

// Sequential IIC over the panels in index order with Z passed panel to
// panel. Later passes first remove a panel's previous contribution from Z,
// so every update is a block-coordinate ascent step on log|Z_P|.
inline IicChainResult iic_chain(const std::vector<CMatrix> &panels, int np, double rho, IicChainOptions opts = {})
{
    require(!panels.empty(), "iic_chain: no panels");
    require(opts.passes >= 1, "iic_chain: passes must be >= 1");
    const Eigen::Index k = panels.front().cols();
    for (const auto &h : panels)
        require(h.cols() == k, "iic_chain: panels disagree on the user count");

    IicChainResult out;
    out.state = InterferenceState::identity(k);
    out.filters.resize(panels.size());
    std::vector<CMatrix> contrib(panels.size(), CMatrix::Zero(k, k));

    for (int pass = 0; pass < opts.passes; ++pass)
    {
        for (size_t i = 0; i < panels.size(); ++i)
        {
            InterferenceState others{out.state.z - contrib[i]};
            auto [f, next] = iic_panel_step(panels[i], others, np, rho, static_cast<int>(i));
            contrib[i] = next.z - others.z;
            out.filters[i] = std::move(f);
            out.state = std::move(next);
        }
        out.pass_objectives.push_back(log2det_hpd(out.state.z));

        if (opts.rel_tolerance && out.pass_objectives.size() >= 2)
        {
            const double prev = out.pass_objectives[out.pass_objectives.size() - 2];
            const double cur = out.pass_objectives.back();
            if (cur - prev <= *opts.rel_tolerance * std::max(std::abs(prev), 1e-300))
                break;
        }
    }
    return out;
}

} // namespace lis

#endif // LISPROC_FRONTEND_HPP
