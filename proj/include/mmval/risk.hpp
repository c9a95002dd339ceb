#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "mmval/curve.hpp"
#include "mmval/instrument.hpp"
#include "mmval/time.hpp"
#include "mmval/valuation.hpp"

namespace mmval {

/// One-day time decay split into its accrual and mark-to-market parts.
/// total == accrual + mtm bit-exactly: the total is formed as their sum.
struct ThetaSplit {
    double total = 0.0;    // ~ N * z / 360 per calendar day
    double accrual = 0.0;  // N * r / 360
    double mtm = 0.0;      // N * (z - r) / 360
};

struct RiskReport {
    double theta = 0.0;
    double theta_accrual = 0.0;
    double theta_mtm = 0.0;
    double rho = 0.0;         // per 1.0 of rate
    double rho_per_bp = 0.0;  // rho / 10000
    std::int64_t duration_days = 0;
};

/// Carry of one calendar day for a seasoned deposit: the accrual leg earns
/// r/360, the MtM leg releases (z - r)/360 of adjustment per unit notional.
inline ThetaSplit analytic_theta(const FixedDeposit& trade, const ZeroCurve& curve,
                                 TimePoint t) {
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Cash)
        detail::wrong_phase("analytic_theta", TradePhase::Cash, p);
    double z = mtm_zero_rate(curve, t, trade.schedule.end);
    ThetaSplit split;
    split.accrual = trade.notional * trade.rate / 360.0;
    split.mtm = trade.notional * (z - trade.rate) / 360.0;
    split.total = split.accrual + split.mtm;
    return split;
}

inline ThetaSplit analytic_theta(const CallAccount& trade, const ZeroCurve&,
                                 TimePoint t) {
    ThetaSplit split;
    if (t < trade.start) return split;
    split.accrual = trade.notional * trade.rate / 360.0;
    split.total = split.accrual;  // zero duration: no MtM component
    return split;
}

/// Days of rate exposure left: the remaining accrual period, the full period
/// for a trade that has not started, zero once it has matured.
inline std::int64_t duration_days(const Schedule& s, TimePoint t) {
    return days_between(std::clamp(t, s.start, s.end), s.end);
}

/// Rate sensitivity ~ -N * delta(t, end) per unit of rate. Negative whenever
/// exposure remains: PV falls as the market rate rises.
inline double analytic_rho(const FixedDeposit& trade, TimePoint t) {
    const Schedule& s = trade.schedule;
    return -trade.notional *
           year_fraction(std::clamp(t, s.start, s.end), s.end).value();
}

inline double analytic_rho(const FloatingDeposit& trade, TimePoint t) {
    // Unfixed, the projected and discounting forwards move together and the
    // first-order sensitivity cancels; once fixed the trade is a deposit.
    if (!trade.fixing) return 0.0;
    return analytic_rho(as_fixed(trade), t);
}

inline double analytic_rho(const ForwardRateAgreement& trade, TimePoint t) {
    if (t >= trade.schedule.start) return 0.0;  // settled, nothing left to move
    return -trade.notional *
           year_fraction(trade.schedule.start, trade.schedule.end).value();
}

inline double analytic_rho(const CallAccount&, TimePoint) { return 0.0; }

inline double analytic_rho(const Trade& trade, TimePoint t) {
    return std::visit([t](const auto& tr) { return analytic_rho(tr, t); }, trade);
}

inline RiskReport analytic_greeks(const Trade& trade, const ZeroCurve& curve,
                                  TimePoint t) {
    RiskReport report;
    std::visit(
        [&](const auto& tr) {
            using T = std::decay_t<decltype(tr)>;
            if constexpr (std::is_same_v<T, FixedDeposit>) {
                if (trade_phase(tr, t) == TradePhase::Cash) {
                    ThetaSplit split = analytic_theta(tr, curve, t);
                    report.theta = split.total;
                    report.theta_accrual = split.accrual;
                    report.theta_mtm = split.mtm;
                }
                report.duration_days = duration_days(tr.schedule, t);
            } else if constexpr (std::is_same_v<T, FloatingDeposit>) {
                if (tr.fixing) {
                    report = analytic_greeks(Trade(as_fixed(tr)), curve, t);
                    return;
                }
            } else if constexpr (std::is_same_v<T, ForwardRateAgreement>) {
                if (t < tr.schedule.start)
                    report.duration_days = duration_days(tr.schedule, t);
            } else {  // CallAccount
                ThetaSplit split = analytic_theta(tr, curve, t);
                report.theta = split.total;
                report.theta_accrual = split.accrual;
                report.theta_mtm = split.mtm;
            }
        },
        trade);
    report.rho = analytic_rho(trade, t);
    report.rho_per_bp = report.rho / 10000.0;
    return report;
}

/// Exact DCF value of any trade at `t` (0 once matured or settled).
inline double exact_pv(const Trade& trade, const ZeroCurve& curve, TimePoint t) {
    return pv_breakdown(trade, curve, t).pv_dcf;
}

/// One-day finite-difference theta: revalue tomorrow on today's curve.
inline double fd_theta(const Trade& trade, const ZeroCurve& curve, TimePoint t) {
    TimePoint next{t.day + 1};
    if (trade_phase(trade, t) != trade_phase(trade, next))
        throw std::domain_error(
            "fd_theta: trade phase changes inside the one-day bump window");
    return exact_pv(trade, curve, next) - exact_pv(trade, curve, t);
}

/// Central-difference rho under a parallel shift of the whole curve.
inline double fd_rho(const Trade& trade, const ZeroCurve& curve, TimePoint t,
                     double bump = 1e-6) {
    if (!(bump > 0.0))
        throw std::invalid_argument("fd_rho: bump must be positive");
    double up = exact_pv(trade, curve.parallel_shift(bump), t);
    double down = exact_pv(trade, curve.parallel_shift(-bump), t);
    return (up - down) / (2.0 * bump);
}

}  // namespace mmval
