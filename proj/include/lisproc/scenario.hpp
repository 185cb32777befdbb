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

#ifndef LISPROC_SCENARIO_HPP
#define LISPROC_SCENARIO_HPP

#include "numerics.hpp"
#include "rng.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace lis
{

inline constexpr double speed_of_light = 299792458.0;

struct Position
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Position &a, const Position &b)
{
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Physical description of one deployment. The LIS lies in the z = 0 plane,
// centered at the origin; the user volume sits in front of it (z > 0),
// laterally centered, starting standoff_offset_m away from the surface.
struct Scenario
{
    double lis_width_m = 1.2;   // along x
    double lis_height_m = 1.2;  // along y
    double volume_depth_m = 10.0;  // along z
    double volume_width_m = 10.0;  // along x
    double volume_height_m = 3.0;  // along y
    double standoff_offset_m = 0.0;
    double carrier_hz = 4e9;
    int num_users = 64;
    double snr_rho = 10.0;
    double antenna_spacing_m = 0.0; // <= 0 selects lambda/2

    double wavelength() const { return speed_of_light / carrier_hz; }

    double spacing() const
    {
        return antenna_spacing_m > 0.0 ? antenna_spacing_m : 0.5 * wavelength();
    }

    // Antennas that fit along each side; a 1e-9 slack absorbs round-off in
    // width / spacing.
    int antennas_x() const { return static_cast<int>(std::floor(lis_width_m / spacing() + 1e-9)); }
    int antennas_y() const { return static_cast<int>(std::floor(lis_height_m / spacing() + 1e-9)); }
    int num_antennas() const { return antennas_x() * antennas_y(); }

    void validate() const
    {
        require(lis_width_m > 0.0 && lis_height_m > 0.0, "scenario: LIS dimensions must be > 0");
        require(volume_depth_m > 0.0 && volume_width_m > 0.0 && volume_height_m > 0.0,
                "scenario: volume dimensions must be > 0");
        require(standoff_offset_m >= 0.0, "scenario: standoff_offset_m must be >= 0");
        require(carrier_hz > 0.0, "scenario: carrier_hz must be > 0");
        require(num_users >= 1, "scenario: num_users must be >= 1");
        require(snr_rho > 0.0, "scenario: snr_rho must be > 0");
        require(antennas_x() >= 1 && antennas_y() >= 1,
                "scenario: LIS too small for a single antenna at the given spacing");
    }
};

struct UserSet
{
    std::vector<Position> positions;

    int size() const { return static_cast<int>(positions.size()); }
};

// P disjoint row ranges of Mp antennas each. Rows of the channel matrix are
// ordered panel by panel, so panel i owns rows [i*Mp, (i+1)*Mp).
struct PanelPartition
{
    int num_panels = 1;
    int panel_size = 1;
    int panel_side = 1;
    int tiles_x = 1;
    int tiles_y = 1;

    std::vector<int> rows(int panel) const
    {
        std::vector<int> out(static_cast<size_t>(panel_size));
        for (int k = 0; k < panel_size; ++k)
            out[static_cast<size_t>(k)] = panel * panel_size + k;
        return out;
    }
};

struct ChannelMatrix
{
    CMatrix entries; // M x K
    std::vector<Position> antenna_positions;
    PanelPartition partition;

    int num_antennas() const { return static_cast<int>(entries.rows()); }
    int num_users() const { return static_cast<int>(entries.cols()); }

    auto block(int panel) const
    {
        return entries.middleRows(static_cast<Eigen::Index>(panel) * partition.panel_size,
                                  partition.panel_size);
    }

    std::vector<CMatrix> blocks() const
    {
        std::vector<CMatrix> out;
        out.reserve(static_cast<size_t>(partition.num_panels));
        for (int i = 0; i < partition.num_panels; ++i)
            out.emplace_back(block(i));
        return out;
    }
};

// Uniform placement inside the scenario volume. Draw order is x, y, z per
// user; z is taken from (offset, offset + depth] so users never sit on the
// LIS plane.
inline UserSet sample_users(const Scenario &s, Rng rng)
{
    s.validate();
    UserSet users;
    users.positions.reserve(static_cast<size_t>(s.num_users));
    for (int k = 0; k < s.num_users; ++k)
    {
        Position p;
        p.x = -0.5 * s.volume_width_m + s.volume_width_m * rng.uniform();
        p.y = -0.5 * s.volume_height_m + s.volume_height_m * rng.uniform();
        p.z = s.standoff_offset_m + s.volume_depth_m * (1.0 - rng.uniform());
        users.positions.push_back(p);
    }
    return users;
}

inline UserSet sample_users(const Scenario &s, std::uint64_t seed)
{
    return sample_users(s, Rng(seed));
}

// Near-field line-of-sight coefficient between a user and an antenna in the
// z = 0 plane.
inline cdouble los_channel(const Position &user, const Position &antenna, double wavelength)
{
    require(user.z > 0.0, "los_channel: user must be in front of the LIS (z > 0)");
    require(wavelength > 0.0, "los_channel: wavelength must be > 0");
    const double d = distance(user, antenna);
    if (!(d > 0.0))
        throw InvalidArgument("los_channel: user and antenna coincide");
    const double mag = std::sqrt(user.z) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(d, 1.5));
    const double phase = -2.0 * std::numbers::pi * d / wavelength;
    return std::polar(mag, phase);
}

// Square tiling of an nx x ny grid into P panels; throws when impossible.
inline PanelPartition make_partition(int nx, int ny, int num_panels)
{
    require(num_panels >= 1, "partition: panel count must be >= 1");
    const int m = nx * ny;
    require(m % num_panels == 0, "partition: panel count must divide the antenna count");
    const int mp = m / num_panels;
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(mp))));
    require(side * side == mp, "partition: antennas per panel must be a perfect square");
    require(nx % side == 0 && ny % side == 0,
            "partition: square panels do not tile the antenna grid");

    PanelPartition p;
    p.num_panels = num_panels;
    p.panel_size = mp;
    p.panel_side = side;
    p.tiles_x = nx / side;
    p.tiles_y = ny / side;
    return p;
}

// Antenna grid with the given spacing, centered on the origin, ordered panel
// by panel: tiles row-major over the tile grid, antennas row-major in a tile.
inline std::vector<Position> antenna_grid(int nx, int ny, double spacing, const PanelPartition &part)
{
    std::vector<Position> out;
    out.reserve(static_cast<size_t>(nx) * static_cast<size_t>(ny));
    const double x0 = -0.5 * (nx - 1) * spacing;
    const double y0 = -0.5 * (ny - 1) * spacing;
    for (int ty = 0; ty < part.tiles_y; ++ty)
        for (int tx = 0; tx < part.tiles_x; ++tx)
            for (int ly = 0; ly < part.panel_side; ++ly)
                for (int lx = 0; lx < part.panel_side; ++lx)
                {
                    const int ix = tx * part.panel_side + lx;
                    const int iy = ty * part.panel_side + ly;
                    out.push_back({x0 + ix * spacing, y0 + iy * spacing, 0.0});
                }
    return out;
}

inline ChannelMatrix build_channel(const Scenario &s, const UserSet &users, int num_panels)
{
    s.validate();
    require(users.size() >= 1, "build_channel: empty user set");
    const int nx = s.antennas_x(), ny = s.antennas_y();

    ChannelMatrix h;
    h.partition = make_partition(nx, ny, num_panels);
    h.antenna_positions = antenna_grid(nx, ny, s.spacing(), h.partition);
    const double lambda = s.wavelength();
    const auto m = static_cast<Eigen::Index>(h.antenna_positions.size());
    h.entries.resize(m, users.size());
    for (Eigen::Index k = 0; k < users.size(); ++k)
        for (Eigen::Index r = 0; r < m; ++r)
            h.entries(r, k) = los_channel(users.positions[static_cast<size_t>(k)],
                                          h.antenna_positions[static_cast<size_t>(r)], lambda);
    return h;
}

} // namespace lis

#endif // LISPROC_SCENARIO_HPP
