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

#ifndef LISPROC_CONFIG_HPP
#define LISPROC_CONFIG_HPP

#include "cost.hpp"
#include "frontend.hpp"
#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lis
{

enum class SweepAxis
{
    None,
    Snr,
    Beta,
    LisSize,
};

inline const char *to_string(SweepAxis s)
{
    switch (s)
    {
    case SweepAxis::Snr: return "snr";
    case SweepAxis::Beta: return "beta";
    case SweepAxis::LisSize: return "lis_size";
    default: return "none";
    }
}

// Raised for malformed or inconsistent configuration; carries one message
// per offending field.
class ConfigError : public InvalidArgument
{
  public:
    explicit ConfigError(std::vector<std::string> messages)
        : InvalidArgument(join(messages)), messages_(std::move(messages))
    {
    }

    const std::vector<std::string> &messages() const { return messages_; }

  private:
    static std::string join(const std::vector<std::string> &m)
    {
        std::string out;
        for (const auto &s : m)
        {
            if (!out.empty())
                out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> messages_;
};

struct ExperimentConfig
{
    Scenario scenario;

    int panel_antennas = 16;                // Mp
    std::optional<int> panel_outputs;       // Np, or derived from beta_p
    std::optional<double> beta_p;
    std::vector<double> tree_betas{1.0};    // one per level, or one broadcast to all
    bool cdsp_dim_users = false;            // force Nb(L) = K

    Algorithm algorithm = Algorithm::IIC;
    bool rmf_orthonormalize = true;
    int passes = 1;

    int num_realizations = 1;
    std::uint64_t seed = 1;
    int workers = 0; // 0: caller's default (one thread in the library)

    SweepAxis sweep = SweepAxis::None;
    std::vector<double> snr_db_list;
    std::vector<double> beta_p_list;
    std::vector<double> beta_b1_list;
    std::vector<double> lis_size_list; // square LIS side lengths in meters

    CostParams cost;
    Accounting accounting = Accounting::AllLevels;
    std::string output;

    double rho() const { return scenario.snr_rho; }
};

namespace detail
{

inline std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(const std::string &s)
{
    double v = 0.0;
    const auto *end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || !std::isfinite(v))
        return std::nullopt;
    return v;
}

inline std::optional<long long> parse_int(const std::string &s)
{
    long long v = 0;
    const auto *end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end)
        return std::nullopt;
    return v;
}

inline std::optional<std::vector<double>> parse_list(const std::string &s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        auto v = parse_double(trim(item));
        if (!v)
            return std::nullopt;
        out.push_back(*v);
    }
    if (out.empty())
        return std::nullopt;
    return out;
}

inline std::optional<bool> parse_bool(const std::string &s)
{
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no")
        return false;
    return std::nullopt;
}

} // namespace detail

inline std::optional<Accounting> parse_accounting(const std::string &s)
{
    if (s == "all-levels")
        return Accounting::AllLevels;
    if (s == "paper-compat")
        return Accounting::PaperCompat;
    return std::nullopt;
}

inline std::optional<Algorithm> parse_algorithm(const std::string &s)
{
    if (s == "iic" || s == "IIC")
        return Algorithm::IIC;
    if (s == "rmf" || s == "RMF")
        return Algorithm::RMF;
    return std::nullopt;
}

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double x)
{
    return 10.0 * std::log10(x);
}

// Flat `key = value` text, one entry per line, `#` starts a comment.
// Unknown keys and unparsable values are reported together.
inline ExperimentConfig parse_config(const std::string &text)
{
    ExperimentConfig c;
    std::vector<std::string> errors;
    std::map<std::string, int> seen;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (seen[key]++ > 0)
        {
            errors.push_back(key + ": duplicate key");
            continue;
        }

        auto bad = [&](const char *what) { errors.push_back(key + ": expected " + what + ", got '" + val + "'"); };
        auto real = [&](double &dst) {
            if (auto v = detail::parse_double(val))
                dst = *v;
            else
                bad("a number");
        };
        auto integer = [&](int &dst) {
            if (auto v = detail::parse_int(val))
                dst = static_cast<int>(*v);
            else
                bad("an integer");
        };
        auto list = [&](std::vector<double> &dst) {
            if (auto v = detail::parse_list(val))
                dst = *v;
            else
                bad("a comma-separated list of numbers");
        };
        auto boolean = [&](bool &dst) {
            if (auto v = detail::parse_bool(val))
                dst = *v;
            else
                bad("true or false");
        };

        auto &s = c.scenario;
        if (key == "lis_width_m") real(s.lis_width_m);
        else if (key == "lis_height_m") real(s.lis_height_m);
        else if (key == "volume_depth_m") real(s.volume_depth_m);
        else if (key == "volume_width_m") real(s.volume_width_m);
        else if (key == "volume_height_m") real(s.volume_height_m);
        else if (key == "standoff_offset_m") real(s.standoff_offset_m);
        else if (key == "carrier_hz") real(s.carrier_hz);
        else if (key == "antenna_spacing_m") real(s.antenna_spacing_m);
        else if (key == "num_users") integer(s.num_users);
        else if (key == "snr_rho") real(s.snr_rho);
        else if (key == "snr_db")
        {
            if (auto v = detail::parse_double(val))
                s.snr_rho = db_to_linear(*v);
            else
                bad("a number");
        }
        else if (key == "panel_antennas") integer(c.panel_antennas);
        else if (key == "panel_outputs")
        {
            int v = 0;
            integer(v);
            c.panel_outputs = v;
        }
        else if (key == "beta_p")
        {
            double v = 0.0;
            real(v);
            c.beta_p = v;
        }
        else if (key == "tree_betas") list(c.tree_betas);
        else if (key == "cdsp_dim_users") boolean(c.cdsp_dim_users);
        else if (key == "algorithm")
        {
            if (auto a = parse_algorithm(val))
                c.algorithm = *a;
            else
                bad("iic or rmf");
        }
        else if (key == "rmf_orthonormalize") boolean(c.rmf_orthonormalize);
        else if (key == "passes") integer(c.passes);
        else if (key == "num_realizations") integer(c.num_realizations);
        else if (key == "seed")
        {
            std::uint64_t v = 0;
            auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
            if (ec != std::errc() || p != val.data() + val.size())
                bad("an unsigned 64-bit integer");
            else
                c.seed = v;
        }
        else if (key == "workers") integer(c.workers);
        else if (key == "sweep")
        {
            if (val == "none") c.sweep = SweepAxis::None;
            else if (val == "snr") c.sweep = SweepAxis::Snr;
            else if (val == "beta") c.sweep = SweepAxis::Beta;
            else if (val == "lis_size") c.sweep = SweepAxis::LisSize;
            else bad("none, snr, beta or lis_size");
        }
        else if (key == "snr_db_list") list(c.snr_db_list);
        else if (key == "beta_p_list") list(c.beta_p_list);
        else if (key == "beta_b1_list") list(c.beta_b1_list);
        else if (key == "lis_size_list") list(c.lis_size_list);
        else if (key == "bandwidth_hz") real(c.cost.bandwidth_hz);
        else if (key == "bit_width") integer(c.cost.bit_width);
        else if (key == "num_prb") integer(c.cost.num_prb);
        else if (key == "alpha") real(c.cost.alpha);
        else if (key == "t_clk_s") real(c.cost.t_clk_s);
        else if (key == "n_proc") real(c.cost.n_proc);
        else if (key == "n_paral") real(c.cost.n_paral);
        else if (key == "l_com_local_s") real(c.cost.l_com_local_s);
        else if (key == "l_com_global_s") real(c.cost.l_com_global_s);
        else if (key == "chain_panels") integer(c.cost.chain_panels);
        else if (key == "accounting")
        {
            if (auto a = parse_accounting(val))
                c.accounting = *a;
            else
                bad("all-levels or paper-compat");
        }
        else if (key == "output") c.output = val;
        else errors.push_back(key + ": unknown key");
    }

    if (c.panel_outputs && c.beta_p)
        errors.push_back("panel_outputs: give either panel_outputs or beta_p, not both");
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    c.cost.num_users = c.scenario.num_users;
    return c;
}

inline ExperimentConfig load_config(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError({"config: cannot open '" + path + "'"});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace lis

#endif // LISPROC_CONFIG_HPP
