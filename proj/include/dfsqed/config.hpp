// config.hpp: Line-oriented experiment configuration.
//
//   # comment
//   experiment = teleport
//   G = 295309.7094
//   delta_ratios = 10, 20, 40
//
// Keys are case-sensitive; unknown or repeated keys are errors.

#pragma once

#include "dfsqed/hilbert.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dfsqed {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& message)
        : std::runtime_error(format(line, key, message)), line_(line), key_(std::move(key)) {}

    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    static std::string format(int line, const std::string& key, const std::string& message) {
        std::string s;
        if (line > 0) s += "line " + std::to_string(line) + ": ";
        if (!key.empty()) s += "key '" + key + "': ";
        return s + message;
    }

    int line_;
    std::string key_;
};

inline const std::vector<std::string_view>& experiment_names() {
    static const std::vector<std::string_view> names{"entangle",      "cnot-verify", "bell",
                                                     "teleport",      "stagger-sweep", "thermal",
                                                     "validate-effective", "durations"};
    return names;
}

inline constexpr double kDefaultG = 2.0 * std::numbers::pi * 47e3;

struct ExperimentConfig {
    std::string experiment;

    // system
    double G = kDefaultG;
    std::optional<double> delta;    // default 10 G
    std::optional<double> omega_a;  // default 0
    std::optional<double> omega;    // default omega_a + delta / 2
    int n_max = 8;

    // teleport
    double theta = 0.0;
    double delay_T = 0.0;
    std::string encoding = "dfs";
    double energy_split = 1.0;  // E_e - E_g (rad/s) of the receiver's bare levels
    double dephase_phi = 0.7;
    int theta_count = 12;
    int delay_count = 8;
    double delay_max = 10.0;  // s

    // staggered insertion
    double t1_fraction = 0.02;
    std::vector<double> t1_fractions;  // empty: sweep_points from 0 to sweep_max
    int sweep_points = 50;
    double sweep_max = 0.25;

    // thermal
    std::vector<double> nbar_grid{0.0, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0};
    double pulse_area = std::numbers::pi / 4.0;

    // validation
    std::vector<double> delta_ratios{10.0, 20.0, 40.0};
    int n = 0;

    // bell / sampling
    std::uint64_t seed = 12345;
    int trials = 10000;

    // durations
    double p_gate_time = 0.0;
    double lifetime = 3e-2;

    // output
    std::string output;
    std::string format = "json";

    SystemParams system() const {
        const double d = delta.value_or(omega && omega_a ? 2.0 * (*omega - *omega_a) : 10.0 * G);
        const double wa = omega_a.value_or(omega ? *omega - 0.5 * d : 0.0);
        SystemParams p{G, d, wa, omega.value_or(wa + 0.5 * d), n_max};
        p.validate();
        return p;
    }

    std::vector<double> stagger_fractions() const {
        if (!t1_fractions.empty()) return t1_fractions;
        std::vector<double> out;
        for (int k = 0; k < sweep_points; ++k)
            out.push_back(sweep_points == 1 ? 0.0 : sweep_max * k / (sweep_points - 1));
        return out;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view v, int line, const std::string& key) {
    double x = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || ptr != end) throw ConfigError(line, key, "not a number: '" + std::string(v) + "'");
    if (!std::isfinite(x)) throw ConfigError(line, key, "value must be finite");
    return x;
}

inline long long parse_integer(std::string_view v, int line, const std::string& key) {
    long long x = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || ptr != end) throw ConfigError(line, key, "not an integer: '" + std::string(v) + "'");
    return x;
}

inline std::vector<double> parse_list(std::string_view v, int line, const std::string& key) {
    std::vector<double> out;
    while (true) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        if (item.empty()) throw ConfigError(line, key, "empty list item");
        out.push_back(parse_double(item, line, key));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

inline std::string render(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string render(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + render(v[k]);
    return s;
}

}  // namespace detail

// Range checks shared by the parser and the CLI overrides. line = 0 when the
// value did not come from a config line.
inline void validate_config(const ExperimentConfig& c, int line = 0) {
    auto fail = [line](const std::string& key, const std::string& msg) { throw ConfigError(line, key, msg); };
    if (c.experiment.empty()) fail("experiment", "missing experiment name");
    bool known = false;
    for (auto n : experiment_names()) known = known || n == c.experiment;
    if (!known) fail("experiment", "unknown experiment '" + c.experiment + "'");
    if (!(c.G > 0.0)) fail("G", "must be > 0");
    if (c.delta && *c.delta == 0.0) fail("delta", "must be nonzero");
    if (c.n_max < 4 || c.n_max > 40) fail("n_max", "must lie in [4, 40]");
    if (c.delay_T < 0.0) fail("delay_T", "must be >= 0");
    if (c.encoding != "dfs" && c.encoding != "bare") fail("encoding", "must be dfs or bare");
    if (!(c.energy_split > 0.0)) fail("energy_split", "must be > 0");
    if (c.theta_count < 1 || c.theta_count > 1000) fail("theta_count", "must lie in [1, 1000]");
    if (c.delay_count < 1 || c.delay_count > 1000) fail("delay_count", "must lie in [1, 1000]");
    if (c.delay_max < 0.0) fail("delay_max", "must be >= 0");
    if (c.t1_fraction < 0.0 || c.t1_fraction > 1.0) fail("t1_fraction", "must lie in [0, 1]");
    for (double f : c.t1_fractions)
        if (f < 0.0 || f > 1.0) fail("t1_fractions", "every fraction must lie in [0, 1]");
    if (c.sweep_points < 1 || c.sweep_points > 100000) fail("sweep_points", "must lie in [1, 100000]");
    if (c.sweep_max < 0.0 || c.sweep_max > 1.0) fail("sweep_max", "must lie in [0, 1]");
    if (c.nbar_grid.empty()) fail("nbar_grid", "must not be empty");
    for (double nb : c.nbar_grid)
        if (nb < 0.0 || nb > 100.0) fail("nbar_grid", "every nbar must lie in [0, 100]");
    if (c.delta_ratios.empty()) fail("delta_ratios", "must not be empty");
    for (double r : c.delta_ratios)
        if (r == 0.0) fail("delta_ratios", "ratios must be nonzero");
    if (c.n < 0 || c.n + 4 > c.n_max) fail("n", "must satisfy 0 <= n <= n_max - 4");
    if (c.trials < 1 || c.trials > 10000000) fail("trials", "must lie in [1, 1e7]");
    if (c.p_gate_time < 0.0) fail("p_gate_time", "must be >= 0");
    if (!(c.lifetime > 0.0)) fail("lifetime", "must be > 0");
    if (c.format != "json" && c.format != "csv") fail("format", "must be json or csv");
    try {
        (void)c.system();
    } catch (const std::invalid_argument& e) {
        fail(c.delta ? "delta" : "omega", e.what());
    }
}

// Parse a config document. `experiment_hint` fills the experiment when the
// document does not name one.
inline ExperimentConfig parse_config(std::string_view text, std::string_view experiment_hint = {}) {
    ExperimentConfig c;
    std::vector<std::string> seen;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "", "missing key");
        for (const auto& s : seen)
            if (s == key) throw ConfigError(line_no, key, "repeated key");
        seen.push_back(key);
        if (value.empty()) throw ConfigError(line_no, key, "missing value");

        auto num = [&] { return detail::parse_double(value, line_no, key); };
        auto integer = [&] { return detail::parse_integer(value, line_no, key); };
        auto list = [&] { return detail::parse_list(value, line_no, key); };
        auto check = [&](bool ok, const char* msg) {
            if (!ok) throw ConfigError(line_no, key, msg);
        };

        if (key == "experiment") c.experiment = std::string(value);
        else if (key == "G") { c.G = num(); check(c.G > 0.0, "must be > 0"); }
        else if (key == "delta") { c.delta = num(); check(*c.delta != 0.0, "must be nonzero"); }
        else if (key == "omega_a") c.omega_a = num();
        else if (key == "omega") c.omega = num();
        else if (key == "n_max") { c.n_max = static_cast<int>(integer()); check(c.n_max >= 4 && c.n_max <= 40, "must lie in [4, 40]"); }
        else if (key == "theta") c.theta = num();
        else if (key == "delay_T") { c.delay_T = num(); check(c.delay_T >= 0.0, "must be >= 0"); }
        else if (key == "encoding") c.encoding = std::string(value);
        else if (key == "energy_split") { c.energy_split = num(); check(c.energy_split > 0.0, "must be > 0"); }
        else if (key == "dephase_phi") c.dephase_phi = num();
        else if (key == "theta_count") c.theta_count = static_cast<int>(integer());
        else if (key == "delay_count") c.delay_count = static_cast<int>(integer());
        else if (key == "delay_max") c.delay_max = num();
        else if (key == "t1_fraction") c.t1_fraction = num();
        else if (key == "t1_fractions") c.t1_fractions = list();
        else if (key == "sweep_points") c.sweep_points = static_cast<int>(integer());
        else if (key == "sweep_max") c.sweep_max = num();
        else if (key == "nbar_grid") c.nbar_grid = list();
        else if (key == "pulse_area") c.pulse_area = num();
        else if (key == "delta_ratios") c.delta_ratios = list();
        else if (key == "n") c.n = static_cast<int>(integer());
        else if (key == "seed") { const auto s = integer(); check(s >= 0, "must be >= 0"); c.seed = static_cast<std::uint64_t>(s); }
        else if (key == "trials") c.trials = static_cast<int>(integer());
        else if (key == "p_gate_time") c.p_gate_time = num();
        else if (key == "lifetime") c.lifetime = num();
        else if (key == "output") c.output = std::string(value);
        else if (key == "format") c.format = std::string(value);
        else throw ConfigError(line_no, key, "unknown key");

        // per-key range check with the line number attached
        try {
            ExperimentConfig probe = c;
            if (probe.experiment.empty()) probe.experiment = "durations";
            validate_config(probe, line_no);
        } catch (const ConfigError& e) {
            if (e.key() == key) throw;
        }
    }
    if (c.experiment.empty()) c.experiment = std::string(experiment_hint);
    validate_config(c);
    return c;
}

// Inverse of parse_config: every key written explicitly, fixed order.
inline std::string serialize_config(const ExperimentConfig& c) {
    using detail::render;
    std::string s;
    auto put = [&s](const char* key, const std::string& v) { s += std::string(key) + " = " + v + "\n"; };
    put("experiment", c.experiment);
    put("G", render(c.G));
    if (c.delta) put("delta", render(*c.delta));
    if (c.omega_a) put("omega_a", render(*c.omega_a));
    if (c.omega) put("omega", render(*c.omega));
    put("n_max", std::to_string(c.n_max));
    put("theta", render(c.theta));
    put("delay_T", render(c.delay_T));
    put("encoding", c.encoding);
    put("energy_split", render(c.energy_split));
    put("dephase_phi", render(c.dephase_phi));
    put("theta_count", std::to_string(c.theta_count));
    put("delay_count", std::to_string(c.delay_count));
    put("delay_max", render(c.delay_max));
    put("t1_fraction", render(c.t1_fraction));
    if (!c.t1_fractions.empty()) put("t1_fractions", render(c.t1_fractions));
    put("sweep_points", std::to_string(c.sweep_points));
    put("sweep_max", render(c.sweep_max));
    put("nbar_grid", render(c.nbar_grid));
    put("pulse_area", render(c.pulse_area));
    put("delta_ratios", render(c.delta_ratios));
    put("n", std::to_string(c.n));
    put("seed", std::to_string(c.seed));
    put("trials", std::to_string(c.trials));
    put("p_gate_time", render(c.p_gate_time));
    put("lifetime", render(c.lifetime));
    if (!c.output.empty()) put("output", c.output);
    put("format", c.format);
    return s;
}

inline bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return serialize_config(a) == serialize_config(b);
}

}  // namespace dfsqed
