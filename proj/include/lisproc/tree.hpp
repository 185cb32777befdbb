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

#ifndef LISPROC_TREE_HPP
#define LISPROC_TREE_HPP

#include "frontend.hpp"
#include "numerics.hpp"
#include "scenario.hpp"

#include <cmath>
#include <vector>

namespace lis
{

// Reduction tree above the panels. Level 0 is the panel level (P panels of
// Mp antennas, Np outputs each); level n in 1..L holds P / arity^n nodes with
// Nb(n) outputs each. The single level-L node feeds the central processor.
struct TreeTopology
{
    int num_panels = 1;
    int arity = 4;
    int levels = 0;
    int panel_size = 1;    // Mp
    int panel_outputs = 1; // Np
    std::vector<int> node_outputs; // Nb(1) .. Nb(L)

    // Nb(n) with Nb(0) = Np.
    int outputs(int level) const
    {
        return level == 0 ? panel_outputs : node_outputs[static_cast<size_t>(level - 1)];
    }

    // Number of processing units at a level (panels at level 0).
    int units(int level) const
    {
        int n = num_panels;
        for (int l = 0; l < level; ++l)
            n /= arity;
        return n;
    }

    int cdsp_dim() const { return outputs(levels); }

    double beta_panel() const { return static_cast<double>(panel_outputs) / panel_size; }

    double beta_level(int level) const
    {
        return static_cast<double>(outputs(level)) / (arity * outputs(level - 1));
    }

    void validate() const
    {
        require(arity >= 2, "tree: arity must be >= 2");
        require(panel_size >= 1 && panel_outputs >= 1, "tree: panel dimensions must be >= 1");
        require(panel_outputs <= panel_size, "tree: Np must be <= Mp");
        require(static_cast<int>(node_outputs.size()) == levels, "tree: one output size per level");
        int expect = 1;
        for (int l = 0; l < levels; ++l)
            expect *= arity;
        require(expect == num_panels, "tree: panel count must equal arity^levels");
        for (int l = 1; l <= levels; ++l)
        {
            require(outputs(l) >= 1, "tree: node output dimension must be >= 1");
            require(outputs(l) <= arity * outputs(l - 1),
                    "tree: node output dimension exceeds its input dimension");
        }
    }
};

// Number of levels L with arity^L = P; throws if P is not a power of arity.
inline int tree_levels(int num_panels, int arity = 4)
{
    require(num_panels >= 1, "tree: panel count must be >= 1");
    int levels = 0;
    int n = num_panels;
    while (n > 1)
    {
        require(n % arity == 0, "tree: panel count must be a power of the arity");
        n /= arity;
        ++levels;
    }
    return levels;
}

// Round to nearest, halves up.
inline int round_dimension(double x)
{
    return static_cast<int>(std::floor(x + 0.5));
}

// Builds the topology from per-level reduction factors
//   Nb(n) = round(beta_n * arity * Nb(n-1)).
// In strict mode a non-integer product is an error instead of being rounded.
inline TreeTopology build_tree(int num_panels, int panel_size, int panel_outputs,
                               const std::vector<double> &betas, bool strict = false, int arity = 4)
{
    TreeTopology t;
    t.num_panels = num_panels;
    t.arity = arity;
    t.levels = tree_levels(num_panels, arity);
    t.panel_size = panel_size;
    t.panel_outputs = panel_outputs;
    require(static_cast<int>(betas.size()) == t.levels, "tree: one beta per tree level is required");

    int prev = panel_outputs;
    for (double beta : betas)
    {
        require(beta > 0.0 && beta <= 1.0 + 1e-12, "tree: beta must lie in (0, 1]");
        const double exact = beta * arity * prev;
        const int dim = round_dimension(exact);
        if (strict && std::abs(exact - dim) > 1e-9)
            throw InvalidArgument("tree: beta * arity * Nb is not an integer");
        t.node_outputs.push_back(dim);
        prev = dim;
    }
    t.validate();
    return t;
}

// Topology from explicit node output sizes.
inline TreeTopology make_tree(int num_panels, int panel_size, int panel_outputs,
                              std::vector<int> node_outputs, int arity = 4)
{
    TreeTopology t;
    t.num_panels = num_panels;
    t.arity = arity;
    t.levels = tree_levels(num_panels, arity);
    t.panel_size = panel_size;
    t.panel_outputs = panel_outputs;
    t.node_outputs = std::move(node_outputs);
    t.validate();
    return t;
}

struct NodeFilter
{
    CMatrix filter;     // (arity * Nb(n-1)) x Nb(n)
    CMatrix equivalent; // Nb(n) x K, W^H times the stacked child equivalents
};

struct FilterPlan
{
    TreeTopology topology;
    Algorithm algorithm = Algorithm::IIC;
    bool semi_unitary = true;
    CMatrix channel;                         // full M x K channel
    std::vector<PanelFilter> panel_filters;  // P entries
    std::vector<CMatrix> panel_equivalents;  // W_i^H H_i, Np x K
    std::vector<std::vector<NodeFilter>> node_filters; // [level-1][node]
    InterferenceState panel_state;           // Z_P after the panel chain (IIC)

    const CMatrix &cdsp_channel() const
    {
        return topology.levels == 0 ? panel_equivalents.front() : node_filters.back().front().equivalent;
    }

    // Equivalent channel delivered by unit j at a level (level 0 = panels).
    const CMatrix &equivalent(int level, int unit) const
    {
        return level == 0 ? panel_equivalents[static_cast<size_t>(unit)]
                          : node_filters[static_cast<size_t>(level - 1)][static_cast<size_t>(unit)].equivalent;
    }

    // Stacked equivalent channels of the children of node j at `level`.
    CMatrix stacked_children(int level, int node) const
    {
        std::vector<CMatrix> kids;
        for (int c = 0; c < topology.arity; ++c)
            kids.push_back(equivalent(level - 1, node * topology.arity + c));
        return vstack(kids);
    }
};

struct PlanOptions
{
    int passes = 1;
    RmfOptions rmf;
};

// One backplane node: the stacked child equivalent channel is treated as the
// node's channel (the noise at its input is white when the children are
// semi-unitary) and reduced with the same formulation a panel uses. Nodes do
// not share Z; IIC starts from Z = I at every node.
inline NodeFilter formulate_node(const CMatrix &children_equiv, int nb_out, double rho, Algorithm algorithm,
                                 const RmfOptions &rmf = {})
{
    require(nb_out >= 1, "formulate_node: output dimension must be >= 1");
    require(nb_out <= children_equiv.rows(), "formulate_node: output dimension exceeds input dimension");
    NodeFilter out;
    if (algorithm == Algorithm::IIC)
    {
        auto [f, z] = iic_panel_step(children_equiv, InterferenceState::identity(children_equiv.cols()), nb_out, rho);
        out.filter = std::move(f.filter);
    }
    else
    {
        out.filter = rmf_filter(children_equiv, nb_out, rmf).filter;
    }
    out.equivalent = out.filter.adjoint() * children_equiv;
    return out;
}

inline FilterPlan formulate_lis(const ChannelMatrix &h, const TreeTopology &topo, Algorithm algorithm, double rho,
                                const PlanOptions &opts = {})
{
    topo.validate();
    require(h.partition.num_panels == topo.num_panels, "formulate_lis: partition and topology disagree on P");
    require(h.partition.panel_size == topo.panel_size, "formulate_lis: partition and topology disagree on Mp");
    require(rho > 0.0, "formulate_lis: rho must be > 0");

    FilterPlan plan;
    plan.topology = topo;
    plan.algorithm = algorithm;
    plan.semi_unitary = algorithm == Algorithm::IIC || opts.rmf.orthonormalize;
    plan.channel = h.entries;
    const auto blocks = h.blocks();
    const Eigen::Index k = h.entries.cols();

    if (algorithm == Algorithm::IIC)
    {
        auto chain = iic_chain(blocks, topo.panel_outputs, rho, {opts.passes, std::nullopt});
        plan.panel_filters = std::move(chain.filters);
        plan.panel_state = std::move(chain.state);
    }
    else
    {
        for (int i = 0; i < topo.num_panels; ++i)
            plan.panel_filters.push_back(
                rmf_filter(blocks[static_cast<size_t>(i)], topo.panel_outputs, opts.rmf, i));
        plan.panel_state = InterferenceState::identity(k);
    }
    for (int i = 0; i < topo.num_panels; ++i)
        plan.panel_equivalents.push_back(plan.panel_filters[static_cast<size_t>(i)].filter.adjoint() *
                                         blocks[static_cast<size_t>(i)]);

    for (int level = 1; level <= topo.levels; ++level)
    {
        std::vector<NodeFilter> nodes;
        for (int j = 0; j < topo.units(level); ++j)
            nodes.push_back(formulate_node(plan.stacked_children(level, j), topo.outputs(level), rho, algorithm,
                                           opts.rmf));
        plan.node_filters.push_back(std::move(nodes));
    }
    return plan;
}

// Front-end and backplane filtering of one received vector: z_i = W_i^H y_i
// at each panel, then W^H of the stacked child outputs at every node.
inline CVector filter_uplink(const FilterPlan &plan, const CVector &y)
{
    const auto &t = plan.topology;
    require(y.size() == static_cast<Eigen::Index>(t.num_panels) * t.panel_size,
            "filter_uplink: received vector has the wrong length");
    std::vector<CVector> outs;
    for (int i = 0; i < t.num_panels; ++i)
        outs.push_back(plan.panel_filters[static_cast<size_t>(i)].filter.adjoint() *
                       y.segment(static_cast<Eigen::Index>(i) * t.panel_size, t.panel_size));

    for (int level = 1; level <= t.levels; ++level)
    {
        std::vector<CVector> next;
        const Eigen::Index in = static_cast<Eigen::Index>(t.outputs(level - 1));
        for (int j = 0; j < t.units(level); ++j)
        {
            CVector stacked(in * t.arity);
            for (int c = 0; c < t.arity; ++c)
                stacked.segment(c * in, in) = outs[static_cast<size_t>(j * t.arity + c)];
            next.push_back(plan.node_filters[static_cast<size_t>(level - 1)][static_cast<size_t>(j)].filter.adjoint() *
                           stacked);
        }
        outs = std::move(next);
    }
    return outs.front();
}

// Block-diagonal filter of one level: panel filters at level 0, node filters
// above.
inline CMatrix level_filter(const FilterPlan &plan, int level)
{
    std::vector<CMatrix> blocks;
    if (level == 0)
        for (const auto &f : plan.panel_filters)
            blocks.push_back(f.filter);
    else
        for (const auto &n : plan.node_filters[static_cast<size_t>(level - 1)])
            blocks.push_back(n.filter);
    return block_diagonal(blocks);
}

// Product of the per-level block-diagonal filters, M x Nb(L); s = W^H y.
inline CMatrix compose_total_filter(const FilterPlan &plan)
{
    CMatrix w = level_filter(plan, 0);
    for (int level = 1; level <= plan.topology.levels; ++level)
        w = w * level_filter(plan, level);
    return w;
}

} // namespace lis

#endif // LISPROC_TREE_HPP
