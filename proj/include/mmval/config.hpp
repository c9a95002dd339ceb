#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmval/curve.hpp"
#include "mmval/instrument.hpp"
#include "mmval/time.hpp"

namespace mmval {

/// Malformed run configuration: unknown keys, bad numbers, missing or
/// contradictory fields. Messages carry the offending line where one exists.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TradeConfig {
    std::string kind;  // fixed | floating | fra | call
    std::optional<double> notional;
    std::optional<double> rate;
    std::optional<double> spread;
    std::optional<double> fixing;
    std::optional<std::int64_t> start_day;
    std::optional<std::int64_t> end_day;
};

struct CurveConfig {
    std::optional<std::int64_t> anchor_day;
    std::vector<CurvePillar> pillars;
};

struct SimulationConfig {
    std::optional<std::int64_t> from_day;
    std::optional<std::int64_t> to_day;
};

struct OutputConfig {
    std::string format = "table";  // table | csv
    int precision = 2;
};

struct RunConfig {
    TradeConfig trade;
    CurveConfig curve;
    std::optional<CurveConfig> forecast_curve;
    std::optional<SimulationConfig> simulation;
    OutputConfig output;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] inline void config_fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

inline std::int64_t parse_int(std::string_view text, int line, const char* key) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        config_fail(line, std::string(key) + " expects an integer, got '" +
                              std::string(text) + "'");
    return out;
}

inline double parse_number(std::string_view text, int line, const char* key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        config_fail(line, std::string(key) + " expects a number, got '" +
                              std::string(text) + "'");
    return out;
}

template <typename T>
void set_once(std::optional<T>& slot, T value, int line, const char* key) {
    if (slot)
        config_fail(line, std::string("duplicate key '") + key + "'");
    slot = value;
}

inline void parse_curve_key(CurveConfig& curve, std::string_view key,
                            std::string_view value, int line) {
    if (key == "anchor_day") {
        set_once(curve.anchor_day, parse_int(value, line, "anchor_day"), line,
                 "anchor_day");
    } else if (key == "pillar") {
        auto comma = value.find(',');
        if (comma == std::string_view::npos)
            config_fail(line, "pillar expects 'day,rate'");
        CurvePillar p{TimePoint{parse_int(trim(value.substr(0, comma)), line,
                                          "pillar day")},
                      parse_number(trim(value.substr(comma + 1)), line,
                                   "pillar rate")};
        curve.pillars.push_back(p);
    } else {
        config_fail(line, "unknown curve key '" + std::string(key) + "'");
    }
}

}  // namespace detail

/// Parse the flat `key = value` config with `[section]` headers. Blank lines
/// and lines starting with '#' are skipped. Every key is single-valued except
/// `pillar`, which repeats. Structural problems raise ConfigError; semantic
/// completeness is checked by build_trade / build_curve.
inline RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    enum class Section { None, Trade, Curve, ForecastCurve, Simulation, Output };
    Section section = Section::None;
    bool seen_trade = false, seen_curve = false, seen_forecast = false;
    bool seen_simulation = false, seen_output = false;
    std::optional<std::string> format_raw;
    std::optional<std::int64_t> precision_raw;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = detail::trim(raw);
        if (text.empty() || text.front() == '#') continue;

        if (text.front() == '[') {
            if (text.back() != ']')
                detail::config_fail(line, "unterminated section header");
            std::string_view name = detail::trim(text.substr(1, text.size() - 2));
            auto open = [&](bool& seen, Section s, const char* label) {
                if (seen)
                    detail::config_fail(line, std::string("duplicate section [") +
                                                  label + "]");
                seen = true;
                section = s;
            };
            if (name == "trade") open(seen_trade, Section::Trade, "trade");
            else if (name == "curve") open(seen_curve, Section::Curve, "curve");
            else if (name == "forecast_curve")
                open(seen_forecast, Section::ForecastCurve, "forecast_curve");
            else if (name == "simulation")
                open(seen_simulation, Section::Simulation, "simulation");
            else if (name == "output") open(seen_output, Section::Output, "output");
            else
                detail::config_fail(line,
                                    "unknown section [" + std::string(name) + "]");
            continue;
        }

        auto eq = text.find('=');
        if (eq == std::string_view::npos)
            detail::config_fail(line, "expected 'key = value'");
        std::string_view key = detail::trim(text.substr(0, eq));
        std::string_view value = detail::trim(text.substr(eq + 1));
        if (key.empty()) detail::config_fail(line, "empty key");
        if (value.empty())
            detail::config_fail(line, "empty value for '" + std::string(key) + "'");

        switch (section) {
            case Section::None:
                detail::config_fail(line, "key outside any [section]");
            case Section::Trade: {
                TradeConfig& t = cfg.trade;
                if (key == "kind") {
                    if (!t.kind.empty())
                        detail::config_fail(line, "duplicate key 'kind'");
                    t.kind = std::string(value);
                } else if (key == "notional") {
                    detail::set_once(t.notional,
                                     detail::parse_number(value, line, "notional"),
                                     line, "notional");
                } else if (key == "rate") {
                    detail::set_once(t.rate,
                                     detail::parse_number(value, line, "rate"),
                                     line, "rate");
                } else if (key == "spread") {
                    detail::set_once(t.spread,
                                     detail::parse_number(value, line, "spread"),
                                     line, "spread");
                } else if (key == "fixing") {
                    detail::set_once(t.fixing,
                                     detail::parse_number(value, line, "fixing"),
                                     line, "fixing");
                } else if (key == "start_day") {
                    detail::set_once(t.start_day,
                                     detail::parse_int(value, line, "start_day"),
                                     line, "start_day");
                } else if (key == "end_day") {
                    detail::set_once(t.end_day,
                                     detail::parse_int(value, line, "end_day"),
                                     line, "end_day");
                } else {
                    detail::config_fail(line,
                                        "unknown trade key '" + std::string(key) +
                                            "'");
                }
                break;
            }
            case Section::Curve:
                detail::parse_curve_key(cfg.curve, key, value, line);
                break;
            case Section::ForecastCurve:
                if (!cfg.forecast_curve) cfg.forecast_curve.emplace();
                detail::parse_curve_key(*cfg.forecast_curve, key, value, line);
                break;
            case Section::Simulation: {
                if (!cfg.simulation) cfg.simulation.emplace();
                SimulationConfig& s = *cfg.simulation;
                if (key == "from_day") {
                    detail::set_once(s.from_day,
                                     detail::parse_int(value, line, "from_day"),
                                     line, "from_day");
                } else if (key == "to_day") {
                    detail::set_once(s.to_day,
                                     detail::parse_int(value, line, "to_day"), line,
                                     "to_day");
                } else {
                    detail::config_fail(
                        line, "unknown simulation key '" + std::string(key) + "'");
                }
                break;
            }
            case Section::Output: {
                if (key == "format") {
                    if (format_raw)
                        detail::config_fail(line, "duplicate key 'format'");
                    if (value != "table" && value != "csv")
                        detail::config_fail(
                            line, "format must be 'table' or 'csv', got '" +
                                      std::string(value) + "'");
                    format_raw = std::string(value);
                } else if (key == "precision") {
                    if (precision_raw)
                        detail::config_fail(line, "duplicate key 'precision'");
                    std::int64_t p = detail::parse_int(value, line, "precision");
                    if (p < 0 || p > 17)
                        detail::config_fail(line,
                                            "precision must be between 0 and 17");
                    precision_raw = p;
                } else {
                    detail::config_fail(
                        line, "unknown output key '" + std::string(key) + "'");
                }
                break;
            }
        }
    }

    if (!seen_trade) throw ConfigError("config: missing [trade] section");
    if (!seen_curve) throw ConfigError("config: missing [curve] section");
    if (seen_simulation && cfg.simulation) {
        const SimulationConfig& s = *cfg.simulation;
        if (!s.from_day) throw ConfigError("config: [simulation] missing from_day");
        if (!s.to_day) throw ConfigError("config: [simulation] missing to_day");
        if (*s.from_day > *s.to_day)
            throw ConfigError("config: [simulation] from_day exceeds to_day");
    }
    if (format_raw) cfg.output.format = *format_raw;
    if (precision_raw) cfg.output.precision = static_cast<int>(*precision_raw);
    return cfg;
}

inline RunConfig parse_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

namespace detail {

[[noreturn]] inline void trade_fail(const std::string& what) {
    throw ConfigError("config [trade]: " + what);
}

inline double require(const std::optional<double>& slot, const char* key) {
    if (!slot) trade_fail(std::string("missing ") + key);
    return *slot;
}

inline std::int64_t require(const std::optional<std::int64_t>& slot,
                            const char* key) {
    if (!slot) trade_fail(std::string("missing ") + key);
    return *slot;
}

inline void reject(bool present, const char* key, const char* kind) {
    if (present)
        trade_fail(std::string(key) + " is not a " + kind + " field");
}

}  // namespace detail

/// Materialize the configured trade. Field mismatches (a spread on a fixed
/// deposit, a missing maturity) and schedule violations surface as
/// ConfigError / std::invalid_argument.
inline Trade build_trade(const TradeConfig& t) {
    if (t.kind.empty()) detail::trade_fail("missing kind");
    double notional = detail::require(t.notional, "notional");

    if (t.kind == "fixed") {
        detail::reject(t.spread.has_value(), "spread", "fixed deposit");
        detail::reject(t.fixing.has_value(), "fixing", "fixed deposit");
        return FixedDeposit(notional, detail::require(t.rate, "rate"),
                            TimePoint{detail::require(t.start_day, "start_day")},
                            TimePoint{detail::require(t.end_day, "end_day")});
    }
    if (t.kind == "floating") {
        detail::reject(t.rate.has_value(), "rate", "floating deposit");
        return FloatingDeposit(notional, detail::require(t.spread, "spread"),
                               TimePoint{detail::require(t.start_day, "start_day")},
                               TimePoint{detail::require(t.end_day, "end_day")},
                               t.fixing);
    }
    if (t.kind == "fra") {
        detail::reject(t.spread.has_value(), "spread", "fra");
        detail::reject(t.fixing.has_value(), "fixing", "fra");
        return ForwardRateAgreement(
            notional, detail::require(t.rate, "rate"),
            TimePoint{detail::require(t.start_day, "start_day")},
            TimePoint{detail::require(t.end_day, "end_day")});
    }
    if (t.kind == "call") {
        detail::reject(t.spread.has_value(), "spread", "call account");
        detail::reject(t.fixing.has_value(), "fixing", "call account");
        detail::reject(t.end_day.has_value(), "end_day", "call account");
        return CallAccount(notional, detail::require(t.rate, "rate"),
                           TimePoint{detail::require(t.start_day, "start_day")});
    }
    detail::trade_fail("unknown kind '" + t.kind +
                       "' (expected fixed|floating|fra|call)");
}

inline ZeroCurve build_curve(const CurveConfig& c, const char* label = "curve") {
    if (!c.anchor_day)
        throw ConfigError(std::string("config [") + label + "]: missing anchor_day");
    if (c.pillars.empty())
        throw ConfigError(std::string("config [") + label + "]: no pillars");
    return ZeroCurve(TimePoint{*c.anchor_day}, c.pillars);
}

}  // namespace mmval
