#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmval/time.hpp"

namespace mmval {

/// One curve pillar: a day and its simple zero rate (decimal per annum).
struct CurvePillar {
    TimePoint day;
    double rate = 0.0;
};

/// Zero curve under simple interest: 1 of notional grows to 1 + z*delta.
///
/// Rates are interpolated linearly between pillars and extrapolated flat
/// beyond the ends. Discounting between two future dates uses the ratio
/// DF(anchor,to)/DF(anchor,from), which keeps forward discounting consistent
/// with the spot curve. Immutable after construction.
class ZeroCurve {
public:
    ZeroCurve(TimePoint anchor, std::vector<CurvePillar> pillars)
        : anchor_(anchor), pillars_(std::move(pillars)) {
        if (pillars_.empty())
            throw std::invalid_argument("ZeroCurve: at least one pillar required");
        for (std::size_t i = 0; i < pillars_.size(); ++i) {
            if (!std::isfinite(pillars_[i].rate))
                throw std::invalid_argument("ZeroCurve: pillar rates must be finite");
            if (i > 0 && pillars_[i].day <= pillars_[i - 1].day)
                throw std::invalid_argument(
                    "ZeroCurve: pillar days must be strictly increasing");
        }
    }

    /// Flat curve quoting `rate` at every tenor.
    static ZeroCurve flat(TimePoint anchor, double rate) {
        return ZeroCurve(anchor, {CurvePillar{anchor, rate}});
    }

    TimePoint anchor() const { return anchor_; }
    const std::vector<CurvePillar>& pillars() const { return pillars_; }

    /// Simple zero rate for the span anchor -> to. Exact at pillars, linear
    /// in rate between them, flat beyond the ends.
    double zero_rate(TimePoint to) const {
        if (to.day <= pillars_.front().day.day) return pillars_.front().rate;
        if (to.day >= pillars_.back().day.day) return pillars_.back().rate;
        auto it = std::upper_bound(
            pillars_.begin(), pillars_.end(), to,
            [](TimePoint t, const CurvePillar& p) { return t.day < p.day.day; });
        const CurvePillar& hi = *it;
        const CurvePillar& lo = *std::prev(it);
        double w = static_cast<double>(to.day - lo.day.day) /
                   static_cast<double>(hi.day.day - lo.day.day);
        return lo.rate + w * (hi.rate - lo.rate);
    }

    /// Discount factor from `from` to `to`.
    ///
    /// DF(anchor,t) = 1/(1 + z*delta); between two later dates the ratio
    /// DF(anchor,to)/DF(anchor,from) applies. DF(t,t) = 1.
    double discount_factor(TimePoint from, TimePoint to) const {
        if (from > to)
            throw std::domain_error("discount_factor: from must not exceed to");
        if (from < anchor_)
            throw std::domain_error("discount_factor: from precedes curve anchor");
        if (from == to) return 1.0;
        if (from == anchor_) return spot_df(to);
        return spot_df(to) / spot_df(from);
    }

    /// Simple forward rate f over [t1, t2] solving
    /// 1 + f*delta = DF(anchor,t1)/DF(anchor,t2).
    double implied_forward_rate(TimePoint t1, TimePoint t2) const {
        if (t1 >= t2)
            throw std::domain_error("implied_forward_rate: t1 must precede t2");
        if (t1 < anchor_)
            throw std::domain_error("implied_forward_rate: t1 precedes curve anchor");
        double ratio = spot_df(t1) / spot_df(t2);
        return (ratio - 1.0) / year_fraction(t1, t2).value();
    }

    /// Copy of the curve with every pillar rate shifted by `bump`.
    ZeroCurve parallel_shift(double bump) const {
        std::vector<CurvePillar> shifted = pillars_;
        for (CurvePillar& p : shifted) p.rate += bump;
        return ZeroCurve(anchor_, std::move(shifted));
    }

private:
    double spot_df(TimePoint to) const {
        if (to == anchor_) return 1.0;
        double z = zero_rate(to);
        double growth = 1.0 + z * year_fraction(anchor_, to).value();
        if (growth <= 0.0)
            throw std::domain_error(
                "discount_factor: 1 + z*delta must be positive (z = " +
                std::to_string(z) + ")");
        return 1.0 / growth;
    }

    TimePoint anchor_;
    std::vector<CurvePillar> pillars_;
};

}  // namespace mmval
