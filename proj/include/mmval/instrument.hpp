#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <variant>

#include "mmval/time.hpp"

namespace mmval {

/// Whether the period's interest pays at its end (deposit style) or at its
/// start (FRA style).
enum class PayTiming { End, Start };

/// Single accrual period [start, end) with its payment convention.
struct Schedule {
    Schedule(TimePoint start, TimePoint end, PayTiming pay_at = PayTiming::End)
        : start(start), end(end), pay_at(pay_at) {
        if (!(start < end))
            throw std::invalid_argument("Schedule: start must precede end");
    }

    TimePoint start;
    TimePoint end;
    PayTiming pay_at;
};

/// Where a trade sits relative to its accrual period on a valuation date.
enum class TradePhase { Forward, Cash, Matured };

/// Single-period deposit at a fixed rate, principal and interest paid at
/// maturity. Notional is lender-positive.
struct FixedDeposit {
    FixedDeposit(double notional, double rate, TimePoint start, TimePoint end)
        : notional(notional), rate(rate), schedule(start, end, PayTiming::End) {
        if (notional == 0.0)
            throw std::invalid_argument("FixedDeposit: notional must be nonzero");
        if (!std::isfinite(rate))
            throw std::invalid_argument("FixedDeposit: rate must be finite");
    }

    double notional;
    double rate;
    Schedule schedule;
};

/// Single-period deposit paying floating rate plus a fixed spread. The
/// floating rate is unknown until it fixes at the period start; `fixing`
/// holds the fixed value once known.
struct FloatingDeposit {
    FloatingDeposit(double notional, double spread, TimePoint start, TimePoint end,
                    std::optional<double> fixing = std::nullopt)
        : notional(notional),
          spread(spread),
          fixing(fixing),
          schedule(start, end, PayTiming::End) {
        if (notional == 0.0)
            throw std::invalid_argument("FloatingDeposit: notional must be nonzero");
        if (!std::isfinite(spread))
            throw std::invalid_argument("FloatingDeposit: spread must be finite");
        if (fixing && !std::isfinite(*fixing))
            throw std::invalid_argument("FloatingDeposit: fixing must be finite");
    }

    FloatingDeposit with_fixing(double rate) const {
        return FloatingDeposit(notional, spread, schedule.start, schedule.end, rate);
    }

    double notional;
    double spread;
    std::optional<double> fixing;
    Schedule schedule;
};

/// Forward rate agreement: a locked contractual rate against the floating
/// rate fixing at the period start, settled at the period start.
struct ForwardRateAgreement {
    ForwardRateAgreement(double notional, double contract_rate, TimePoint start,
                         TimePoint end)
        : notional(notional),
          contract_rate(contract_rate),
          schedule(start, end, PayTiming::Start) {
        if (notional == 0.0)
            throw std::invalid_argument("ForwardRateAgreement: notional must be nonzero");
        if (!std::isfinite(contract_rate))
            throw std::invalid_argument("ForwardRateAgreement: rate must be finite");
    }

    double notional;
    double contract_rate;
    Schedule schedule;
};

/// Callable money: accrues at a fixed rate from `start`, withdrawable any
/// day, no maturity. Valued with zero duration.
struct CallAccount {
    CallAccount(double notional, double rate, TimePoint start)
        : notional(notional), rate(rate), start(start) {
        if (notional == 0.0)
            throw std::invalid_argument("CallAccount: notional must be nonzero");
        if (!std::isfinite(rate))
            throw std::invalid_argument("CallAccount: rate must be finite");
    }

    double notional;
    double rate;
    TimePoint start;
};

using Trade =
    std::variant<FixedDeposit, FloatingDeposit, ForwardRateAgreement, CallAccount>;

inline TradePhase phase_of(const Schedule& s, TimePoint t) {
    if (t < s.start) return TradePhase::Forward;
    if (t < s.end) return TradePhase::Cash;
    return TradePhase::Matured;
}

inline TradePhase trade_phase(const FixedDeposit& d, TimePoint t) {
    return phase_of(d.schedule, t);
}
inline TradePhase trade_phase(const FloatingDeposit& d, TimePoint t) {
    return phase_of(d.schedule, t);
}
inline TradePhase trade_phase(const ForwardRateAgreement& f, TimePoint t) {
    return phase_of(f.schedule, t);
}
// A call account never matures: it stays withdrawable-cash from its start.
inline TradePhase trade_phase(const CallAccount& c, TimePoint t) {
    return t < c.start ? TradePhase::Forward : TradePhase::Cash;
}

inline TradePhase trade_phase(const Trade& trade, TimePoint t) {
    return std::visit([t](const auto& tr) { return trade_phase(tr, t); }, trade);
}

inline const char* to_string(TradePhase p) {
    switch (p) {
        case TradePhase::Forward: return "forward";
        case TradePhase::Cash: return "cash";
        case TradePhase::Matured: return "matured";
    }
    return "?";
}

}  // namespace mmval
