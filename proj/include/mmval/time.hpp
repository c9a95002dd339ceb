#pragma once

#include <compare>
#include <cstdint>

namespace mmval {

/// Day count convention used for year fractions. Money-market ACT/360 is the
/// only variant; the tag exists so call sites don't change if another one is
/// ever added.
enum class DayCount { Act360 };

constexpr double denominator(DayCount) { return 360.0; }

/// A calendar-free point in time, counted in whole days from an arbitrary
/// epoch (day 0 is the trade booking date unless stated otherwise).
struct TimePoint {
    std::int64_t day = 0;

    auto operator<=>(const TimePoint&) const = default;
};

/// Whole days from `from` to `to`; negative when `to` precedes `from`.
constexpr std::int64_t days_between(TimePoint from, TimePoint to) {
    return to.day - from.day;
}

/// A dimensionless accrual fraction, days/360.
///
/// The integer day span is kept exact so that fractions over adjacent
/// periods add without rounding: (a,b) + (b,c) == (a,c) always.
struct YearFraction {
    std::int64_t days = 0;
    DayCount convention = DayCount::Act360;

    constexpr double value() const {
        return static_cast<double>(days) / denominator(convention);
    }

    constexpr YearFraction operator+(YearFraction other) const {
        return {days + other.days, convention};
    }
    constexpr YearFraction operator-() const { return {-days, convention}; }

    auto operator<=>(const YearFraction&) const = default;
};

/// Year fraction between two time points: (to - from)/360.
constexpr YearFraction year_fraction(TimePoint from, TimePoint to,
                                     DayCount dc = DayCount::Act360) {
    return {days_between(from, to), dc};
}

}  // namespace mmval
