#pragma once
// Run configuration: flat "key = value" files (# starts a comment) layered
// under command-line flags. Later layers win; within one layer, two spellings
// of the same quantity (e.g. delta and delta_t) are rejected.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../cavity.hpp"
#include "../errors.hpp"
#include "../oracle.hpp"
#include "../resmap.hpp"

namespace casimir_duomode::cli {

enum class OutputFormat { Csv, Svg, Both };
enum class Layer { Analytic, Oracle, Both };

struct RunConfig {
    ModelParams model;
    OracleOptions oracle;
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::Both;
    std::uint64_t seed = 20240229;

    double tau_max = 2.0;
    std::size_t steps = 200;
    Layer layer = Layer::Analytic;

    std::optional<double> tau;  ///< pdf time; unset means 5 pi / (2 rho)
    int mode = 1;
    std::optional<std::size_t> n_max;

    AxisRange map_delta{-6.0, 6.0, 121};
    AxisRange map_big_delta{-6.0, 6.0, 121};

    std::vector<std::string> warnings;

    bool wants_csv() const { return format != OutputFormat::Svg; }
    bool wants_svg() const { return format != OutputFormat::Csv; }
};

using KeyValues = std::map<std::string, std::string>;

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "epsilon", "delta",    "big_delta", "delta_t", "big_delta_t", "nu",        "mu",    "mode_pair",
        "theta1",  "theta3",   "beta",      "tau_max", "steps",       "layer",     "out",   "format",
        "seed",    "epsilon_tilde", "dt",   "tau",     "mode",        "n_max",     "delta_t_min",
        "delta_t_max", "big_delta_t_min", "big_delta_t_max", "resolution"};
    return keys;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Alternatives for one quantity: each inner set is one way of giving it.
inline const std::vector<std::vector<std::set<std::string>>>& exclusive_groups() {
    static const std::vector<std::vector<std::set<std::string>>> groups{
        {{"delta"}, {"delta_t"}},
        {{"big_delta"}, {"big_delta_t"}},
        {{"nu"}, {"mu"}, {"mode_pair"}},
        {{"theta1", "theta3"}, {"beta"}},
    };
    return groups;
}

}  // namespace detail

inline double parse_real(const std::string& key, const std::string& text) {
    const std::string s = detail::trim(text);
    // Accept a simple fraction such as 50/3.
    const auto slash = s.find('/');
    if (slash != std::string::npos)
        return parse_real(key, s.substr(0, slash)) / parse_real(key, s.substr(slash + 1));
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        std::ostringstream os;
        os << "bad number for " << key << ": '" << text << "'";
        throw InvalidParameter(os.str());
    }
    return v;
}

inline long long parse_integer(const std::string& key, const std::string& text) {
    const std::string s = detail::trim(text);
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        std::ostringstream os;
        os << "bad integer for " << key << ": '" << text << "'";
        throw InvalidParameter(os.str());
    }
    return v;
}

/// Parses flat key = value text. Unknown keys and malformed lines are errors.
inline KeyValues parse_key_values(std::istream& in, const std::string& source = "config") {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << source << ":" << lineno << ": expected key = value";
            throw InvalidParameter(os.str());
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (!known_keys().count(key)) {
            std::ostringstream os;
            os << source << ":" << lineno << ": unknown key '" << key << "'";
            throw InvalidParameter(os.str());
        }
        if (kv.count(key)) {
            std::ostringstream os;
            os << source << ":" << lineno << ": duplicate key '" << key << "'";
            throw InvalidParameter(os.str());
        }
        kv[key] = value;
    }
    return kv;
}

inline KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot read config file " + path);
    return parse_key_values(in, path);
}

/// Merges layers in order of increasing precedence.
inline KeyValues merge_layers(const std::vector<KeyValues>& layers) {
    KeyValues merged;
    for (const auto& layer : layers) {
        for (const auto& group : detail::exclusive_groups()) {
            int given = -1;
            for (std::size_t a = 0; a < group.size(); ++a) {
                bool any = false;
                for (const auto& k : group[a]) any = any || layer.count(k);
                if (!any) continue;
                if (given >= 0) {
                    std::ostringstream os;
                    os << "conflicting settings: '" << *group[given].begin() << "' and '" << *group[a].begin()
                       << "' give the same quantity";
                    throw InvalidParameter(os.str());
                }
                given = static_cast<int>(a);
            }
            if (given < 0) continue;
            for (std::size_t a = 0; a < group.size(); ++a)
                if (static_cast<int>(a) != given)
                    for (const auto& k : group[a]) merged.erase(k);
        }
        for (const auto& [k, v] : layer) merged[k] = v;
    }
    return merged;
}

inline RunConfig resolve(const KeyValues& kv) {
    RunConfig c;
    auto real = [&](const char* key) -> std::optional<double> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return parse_real(key, it->second);
    };
    auto integer = [&](const char* key) -> std::optional<long long> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return parse_integer(key, it->second);
    };
    auto text = [&](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    if (auto v = real("epsilon")) c.model.epsilon = *v;
    if (!(c.model.epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
    if (auto v = real("delta")) c.model.delta = *v;
    if (auto v = real("delta_t")) c.model.delta = *v * c.model.epsilon;
    if (auto v = real("big_delta")) c.model.big_delta = *v;
    if (auto v = real("big_delta_t")) c.model.big_delta = *v * c.model.epsilon;

    if (auto v = real("nu")) c.model.nu = *v;
    if (auto v = real("mu")) {
        if (*v < 0.0) throw InvalidParameter("mu must be >= 0");
        c.model.nu = nu_from_mu(*v);
    }
    if (auto v = text("mode_pair")) {
        const auto comma = v->find(',');
        if (comma == std::string::npos) throw InvalidParameter("mode_pair must be KX,JX");
        const auto kx = parse_integer("mode_pair", v->substr(0, comma));
        const auto jx = parse_integer("mode_pair", v->substr(comma + 1));
        c.model.nu = nu_from_mu(mu_from_resonant_pair(static_cast<int>(kx), static_cast<int>(jx), &c.warnings));
    }

    if (auto v = real("theta1")) c.model.theta1 = *v;
    if (auto v = real("theta3")) c.model.theta3 = *v;
    if (auto v = real("beta")) {
        const ThetaPair tp = theta_pair_from_beta(*v);
        c.model.theta1 = tp.theta1;
        c.model.theta3 = tp.theta3;
    }

    if (auto v = real("epsilon_tilde")) c.oracle.epsilon_tilde = *v;
    if (auto v = real("dt")) {
        if (!(*v > 0.0)) throw InvalidParameter("dt must be > 0");
        c.oracle.dt = *v;
    }

    if (auto v = real("tau_max")) c.tau_max = *v;
    if (!(c.tau_max > 0.0)) throw InvalidParameter("tau_max must be > 0");
    if (auto v = integer("steps")) {
        if (*v < 1) throw InvalidParameter("steps must be >= 1");
        c.steps = static_cast<std::size_t>(*v);
    }
    if (auto v = text("layer")) {
        if (*v == "analytic") c.layer = Layer::Analytic;
        else if (*v == "oracle") c.layer = Layer::Oracle;
        else if (*v == "both") c.layer = Layer::Both;
        else throw InvalidParameter("layer must be analytic, oracle or both");
    }
    if (auto v = text("out")) c.output_dir = *v;
    if (auto v = text("format")) {
        if (*v == "csv") c.format = OutputFormat::Csv;
        else if (*v == "svg") c.format = OutputFormat::Svg;
        else if (*v == "both") c.format = OutputFormat::Both;
        else throw InvalidParameter("format must be csv, svg or both");
    }
    if (auto v = integer("seed")) {
        if (*v < 0) throw InvalidParameter("seed must be >= 0");
        c.seed = static_cast<std::uint64_t>(*v);
    }

    if (auto v = real("tau")) {
        if (!(*v >= 0.0)) throw InvalidParameter("tau must be >= 0");
        c.tau = *v;
    }
    if (auto v = integer("mode")) {
        if (*v != 1 && *v != 3) throw InvalidParameter("mode must be 1 or 3");
        c.mode = static_cast<int>(*v);
    }
    if (auto v = integer("n_max")) {
        if (*v < 0) throw InvalidParameter("n_max must be >= 0");
        c.n_max = static_cast<std::size_t>(*v);
    }

    if (auto v = real("delta_t_min")) c.map_delta.min = *v;
    if (auto v = real("delta_t_max")) c.map_delta.max = *v;
    if (auto v = real("big_delta_t_min")) c.map_big_delta.min = *v;
    if (auto v = real("big_delta_t_max")) c.map_big_delta.max = *v;
    if (auto v = integer("resolution")) {
        if (*v < 2) throw InvalidParameter("resolution must be >= 2");
        c.map_delta.count = c.map_big_delta.count = static_cast<std::size_t>(*v);
    }

    auto soft = validate(c.model);
    c.warnings.insert(c.warnings.end(), soft.begin(), soft.end());
    if (c.oracle.dt > 0.0 || c.oracle.epsilon_tilde) validate(c.oracle, c.model);
    return c;
}

}  // namespace casimir_duomode::cli
