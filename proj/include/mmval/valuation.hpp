#pragma once

#include <stdexcept>

#include "mmval/curve.hpp"
#include "mmval/instrument.hpp"
#include "mmval/time.hpp"

namespace mmval {

/// Present value split into its accounting components.
///
/// pv_taylor = notional_leg + accrued + mtm_adjustment holds exactly by
/// construction, as does unexplained = pv_dcf - pv_taylor: `unexplained` is
/// the realized higher-order remainder the linear decomposition drops.
struct PvBreakdown {
    double notional_leg = 0.0;    // the principal term; 0 outside the accrual period
    double accrued = 0.0;         // N * r * delta(start, t)
    double mtm_adjustment = 0.0;  // N * (r - z) * delta(t, end), first order
    double pv_taylor = 0.0;       // sum of the three components above
    double pv_dcf = 0.0;          // exact discounted value
    double unexplained = 0.0;     // pv_dcf - pv_taylor
    double zero_rate = 0.0;       // market rate backing the MtM term (0 if none)
};

namespace detail {

inline PvBreakdown compose_breakdown(double notional_leg, double accrued,
                                     double mtm_adjustment, double pv_dcf,
                                     double zero_rate) {
    PvBreakdown b;
    b.notional_leg = notional_leg;
    b.accrued = accrued;
    b.mtm_adjustment = mtm_adjustment;
    b.pv_taylor = (notional_leg + accrued) + mtm_adjustment;
    b.pv_dcf = pv_dcf;
    b.unexplained = pv_dcf - b.pv_taylor;
    b.zero_rate = zero_rate;
    return b;
}

[[noreturn]] inline void wrong_phase(const char* op, TradePhase expected,
                                     TradePhase got) {
    throw std::domain_error(std::string(op) + ": requires " +
                            to_string(expected) + " phase, trade is " +
                            to_string(got));
}

}  // namespace detail

/// Zero rate spanning t -> maturity as seen from t. Read directly when the
/// curve is anchored at t; otherwise re-anchored through the discount-factor
/// ratio, so 1 + z*delta == 1/DF(t,maturity) holds in both cases.
inline double mtm_zero_rate(const ZeroCurve& curve, TimePoint t, TimePoint maturity) {
    if (t == curve.anchor()) return curve.zero_rate(maturity);
    return curve.implied_forward_rate(t, maturity);
}

// ---------------------------------------------------------------------------
// Accrual valuation
// ---------------------------------------------------------------------------

/// Accrual-based PV: zero outside the accrual period, principal plus linear
/// interest inside it. Independent of market rates.
inline double accrual_pv(const FixedDeposit& trade, TimePoint t) {
    if (trade_phase(trade, t) != TradePhase::Cash) return 0.0;
    double interest = trade.notional * trade.rate *
                      year_fraction(trade.schedule.start, t).value();
    return trade.notional + interest;
}

inline double accrual_pv(const CallAccount& trade, TimePoint t) {
    if (t < trade.start) return 0.0;
    return trade.notional +
           trade.notional * trade.rate * year_fraction(trade.start, t).value();
}

/// The fixed deposit a floating deposit becomes once its rate has fixed.
inline FixedDeposit as_fixed(const FloatingDeposit& trade) {
    if (!trade.fixing)
        throw std::domain_error("as_fixed: floating deposit has no fixing set");
    return FixedDeposit(trade.notional, *trade.fixing + trade.spread,
                        trade.schedule.start, trade.schedule.end);
}

inline double accrual_pv(const FloatingDeposit& trade, TimePoint t) {
    return accrual_pv(as_fixed(trade), t);
}

// ---------------------------------------------------------------------------
// Fixed deposit, forward phase
// ---------------------------------------------------------------------------

/// Exact DCF value of a forward-starting fixed deposit as of the curve
/// anchor: -DF(0,start) + (1 + r*delta) * DF(0,end), scaled by notional.
inline double dcf_pv_forward(const FixedDeposit& trade, const ZeroCurve& curve) {
    TimePoint t = curve.anchor();
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Forward)
        detail::wrong_phase("dcf_pv_forward", TradePhase::Forward, p);
    const Schedule& s = trade.schedule;
    double delta = year_fraction(s.start, s.end).value();
    return trade.notional * (-curve.discount_factor(t, s.start) +
                             (1.0 + trade.rate * delta) *
                                 curve.discount_factor(t, s.end));
}

/// Spread-based value of the same forward trade:
/// (r - forward) * delta * DF(0,end) * notional. Algebraically identical to
/// dcf_pv_forward given ratio-implied forwards.
inline double spread_pv(const FixedDeposit& trade, const ZeroCurve& curve) {
    TimePoint t = curve.anchor();
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Forward)
        detail::wrong_phase("spread_pv", TradePhase::Forward, p);
    const Schedule& s = trade.schedule;
    double fwd = curve.implied_forward_rate(s.start, s.end);
    return trade.notional * (trade.rate - fwd) *
           year_fraction(s.start, s.end).value() * curve.discount_factor(t, s.end);
}

/// Breakdown of a forward-phase fixed deposit valued at `t`. The whole value
/// is mark-to-market: nothing has accrued and no principal is out yet. The
/// Taylor column drops the discounting of the spread.
inline PvBreakdown forward_breakdown(const FixedDeposit& trade,
                                     const ZeroCurve& curve, TimePoint t) {
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Forward)
        detail::wrong_phase("forward_breakdown", TradePhase::Forward, p);
    const Schedule& s = trade.schedule;
    double delta = year_fraction(s.start, s.end).value();
    double fwd = curve.implied_forward_rate(s.start, s.end);
    double pv_dcf = trade.notional * (-curve.discount_factor(t, s.start) +
                                      (1.0 + trade.rate * delta) *
                                          curve.discount_factor(t, s.end));
    double mtm = trade.notional * (trade.rate - fwd) * delta;
    return detail::compose_breakdown(0.0, 0.0, mtm, pv_dcf, fwd);
}

// ---------------------------------------------------------------------------
// Fixed deposit, cash phase
// ---------------------------------------------------------------------------

/// Exact DCF value of a seasoned fixed deposit:
/// (N + N*r*delta(start,end)) * DF(t,end). Returns 0 at and past maturity --
/// the position is extinguished into cash, not discounted to zero.
inline double dcf_pv_cash(const FixedDeposit& trade, const ZeroCurve& curve,
                          TimePoint t) {
    if (t >= trade.schedule.end) return 0.0;
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Cash)
        detail::wrong_phase("dcf_pv_cash", TradePhase::Cash, p);
    const Schedule& s = trade.schedule;
    double interest =
        trade.notional * trade.rate * year_fraction(s.start, s.end).value();
    return (trade.notional + interest) * curve.discount_factor(t, s.end);
}

/// First-order decomposition of a cash-phase deposit: principal, accrued
/// interest, and the (r - z) * delta(t,end) mark-to-market adjustment,
/// alongside the exact DCF value and the remainder between them.
inline PvBreakdown taylor_breakdown(const FixedDeposit& trade,
                                    const ZeroCurve& curve, TimePoint t) {
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Cash)
        detail::wrong_phase("taylor_breakdown", TradePhase::Cash, p);
    const Schedule& s = trade.schedule;
    double z = mtm_zero_rate(curve, t, s.end);
    double accrued =
        trade.notional * trade.rate * year_fraction(s.start, t).value();
    double mtm = trade.notional * (trade.rate - z) * year_fraction(t, s.end).value();
    return detail::compose_breakdown(trade.notional, accrued, mtm,
                                     dcf_pv_cash(trade, curve, t), z);
}

// ---------------------------------------------------------------------------
// Floating deposit
// ---------------------------------------------------------------------------

/// Exact value of an unfixed forward-starting floating deposit:
/// (forward + spread - discount forward) * delta * DF(0,end) * notional.
/// The forward is projected off `forecast`; discounting uses `discount`.
/// With one curve playing both roles the forwards cancel exactly and only
/// the spread prices.
inline double floating_pv_forward(const FloatingDeposit& trade,
                                  const ZeroCurve& forecast,
                                  const ZeroCurve& discount) {
    TimePoint t = discount.anchor();
    if (trade.fixing)
        throw std::domain_error(
            "floating_pv_forward: rate already fixed; value as a fixed deposit");
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Forward)
        detail::wrong_phase("floating_pv_forward", TradePhase::Forward, p);
    const Schedule& s = trade.schedule;
    double fwd = forecast.implied_forward_rate(s.start, s.end);
    double z = discount.implied_forward_rate(s.start, s.end);
    double excess = (fwd - z) + trade.spread;
    return trade.notional * excess * year_fraction(s.start, s.end).value() *
           discount.discount_factor(t, s.end);
}

/// Breakdown counterpart: the Taylor column is N * (f + s - z) * delta with
/// the end discounting dropped.
inline PvBreakdown floating_forward_breakdown(const FloatingDeposit& trade,
                                              const ZeroCurve& forecast,
                                              const ZeroCurve& discount) {
    double pv = floating_pv_forward(trade, forecast, discount);
    const Schedule& s = trade.schedule;
    double fwd = forecast.implied_forward_rate(s.start, s.end);
    double z = discount.implied_forward_rate(s.start, s.end);
    double mtm = trade.notional * ((fwd - z) + trade.spread) *
                 year_fraction(s.start, s.end).value();
    return detail::compose_breakdown(0.0, 0.0, mtm, pv, z);
}

// ---------------------------------------------------------------------------
// Forward rate agreement
// ---------------------------------------------------------------------------

/// Settlement amount locked in at the period start:
/// N * (r - f) * delta / (1 + f * delta), the contractual-versus-market
/// interest gap discounted over the period at the same forward rate.
inline double fra_settlement_value(const ForwardRateAgreement& trade,
                                   const ZeroCurve& curve) {
    const Schedule& s = trade.schedule;
    double f = curve.implied_forward_rate(s.start, s.end);
    double delta = year_fraction(s.start, s.end).value();
    return trade.notional * (trade.contract_rate - f) * delta /
           (1.0 + f * delta);
}

/// Exact FRA value at `t` before settlement: the settlement amount
/// discounted from the period start back to t.
inline double fra_pv(const ForwardRateAgreement& trade, const ZeroCurve& curve,
                     TimePoint t) {
    if (TradePhase p = trade_phase(trade, t); p != TradePhase::Forward)
        detail::wrong_phase("fra_pv", TradePhase::Forward, p);
    return fra_settlement_value(trade, curve) *
           curve.discount_factor(t, trade.schedule.start);
}

/// Breakdown of an unsettled FRA: value is purely mark-to-market, Taylor
/// column N * (r - f) * delta without the settlement or spot discounting.
inline PvBreakdown fra_breakdown(const ForwardRateAgreement& trade,
                                 const ZeroCurve& curve, TimePoint t) {
    double pv = fra_pv(trade, curve, t);
    const Schedule& s = trade.schedule;
    double f = curve.implied_forward_rate(s.start, s.end);
    double mtm = trade.notional * (trade.contract_rate - f) *
                 year_fraction(s.start, s.end).value();
    return detail::compose_breakdown(0.0, 0.0, mtm, pv, f);
}

// ---------------------------------------------------------------------------
// Call account
// ---------------------------------------------------------------------------

/// Zero-duration valuation: pure accrual, no mark-to-market adjustment.
inline double call_account_pv(const CallAccount& trade, TimePoint t) {
    return accrual_pv(trade, t);
}

// ---------------------------------------------------------------------------
// Phase-aware dispatch
// ---------------------------------------------------------------------------

/// Value any trade at `t`, routing to the phase-appropriate kernel.
/// Matured and settled positions report an all-zero breakdown: their value
/// has moved to cash (see the simulation ledger).
inline PvBreakdown pv_breakdown(const Trade& trade, const ZeroCurve& discount,
                                const ZeroCurve& forecast, TimePoint t);

inline PvBreakdown pv_breakdown_one(const FixedDeposit& trade,
                                    const ZeroCurve& curve, TimePoint t) {
    switch (trade_phase(trade, t)) {
        case TradePhase::Forward: return forward_breakdown(trade, curve, t);
        case TradePhase::Cash: return taylor_breakdown(trade, curve, t);
        case TradePhase::Matured: return PvBreakdown{};
    }
    return PvBreakdown{};
}

inline PvBreakdown pv_breakdown_one(const FloatingDeposit& trade,
                                    const ZeroCurve& discount,
                                    const ZeroCurve& forecast, TimePoint t) {
    if (trade.fixing) return pv_breakdown_one(as_fixed(trade), discount, t);
    switch (trade_phase(trade, t)) {
        case TradePhase::Forward:
            return floating_forward_breakdown(trade, forecast, discount);
        case TradePhase::Cash:
            throw std::domain_error(
                "pv_breakdown: floating deposit is in its accrual period but has "
                "no fixing set");
        case TradePhase::Matured: return PvBreakdown{};
    }
    return PvBreakdown{};
}

inline PvBreakdown pv_breakdown_one(const ForwardRateAgreement& trade,
                                    const ZeroCurve& curve, TimePoint t) {
    if (t >= trade.schedule.start) return PvBreakdown{};  // settled at start
    return fra_breakdown(trade, curve, t);
}

inline PvBreakdown pv_breakdown_one(const CallAccount& trade, const ZeroCurve&,
                                    TimePoint t) {
    if (t < trade.start) return PvBreakdown{};
    double accrued =
        trade.notional * trade.rate * year_fraction(trade.start, t).value();
    double pv = trade.notional + accrued;
    return detail::compose_breakdown(trade.notional, accrued, 0.0, pv, 0.0);
}

inline PvBreakdown pv_breakdown(const Trade& trade, const ZeroCurve& discount,
                                const ZeroCurve& forecast, TimePoint t) {
    return std::visit(
        [&](const auto& tr) -> PvBreakdown {
            using T = std::decay_t<decltype(tr)>;
            if constexpr (std::is_same_v<T, FloatingDeposit>)
                return pv_breakdown_one(tr, discount, forecast, t);
            else
                return pv_breakdown_one(tr, discount, t);
        },
        trade);
}

inline PvBreakdown pv_breakdown(const Trade& trade, const ZeroCurve& discount,
                                TimePoint t) {
    return pv_breakdown(trade, discount, discount, t);
}

}  // namespace mmval
