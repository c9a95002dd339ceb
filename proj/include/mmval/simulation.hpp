#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmval/curve.hpp"
#include "mmval/instrument.hpp"
#include "mmval/risk.hpp"
#include "mmval/time.hpp"
#include "mmval/valuation.hpp"

namespace mmval {

/// One day of a valuation run. The first six value columns mirror the PV
/// breakdown; the theta columns carry that day's analytic carry so PNL can
/// be attributed afterwards.
struct SimRow {
    std::int64_t day = 0;
    TradePhase phase = TradePhase::Forward;
    double pv_dcf = 0.0;
    double accrued = 0.0;
    double mtm_adj = 0.0;
    double pv_taylor = 0.0;
    double unexplained = 0.0;
    double daily_pnl = 0.0;  // pv_dcf minus the previous row's (0 on the first row)
    double theta_accrual = 0.0;
    double theta_mtm = 0.0;
    double zero_rate = 0.0;  // market rate backing the MtM term that day
    double deferral = 0.0;   // pay-at-start income offset; 0 for other trades
};

/// Accrual-basis balance sheet snapshot: outstanding cash, the trade's
/// carrying value, and their sum. npv == cash_position + security_pv by
/// construction.
struct LedgerRow {
    std::int64_t day = 0;
    double cash_position = 0.0;
    double coupon_received = 0.0;
    double deferral = 0.0;     // the deferred part of an up-front coupon
    double security_pv = 0.0;  // accrual carrying value (deferral for pay-at-start)
    double npv = 0.0;
};

/// Per-day PNL decomposition into predicted carry, rate moves, and what is
/// left over. Rows spanning a phase transition are flagged, not dropped.
struct AttributionRow {
    std::int64_t day = 0;
    double daily_pnl = 0.0;
    double theta_accrual = 0.0;
    double theta_mtm = 0.0;
    double rho_effect = 0.0;
    double residual = 0.0;
    bool phase_change = false;
};

/// Supplies the market curve seen on each simulation day, anchored at that
/// day. Either a constant rate environment (same pillar rates re-anchored
/// daily, the usual flat-market setup) or an explicit curve per day.
class MarketPath {
public:
    /// Flat market: every day sees the same single rate at all tenors.
    static MarketPath constant(double zero_rate) {
        return constant_pillars({CurvePillar{TimePoint{0}, zero_rate}});
    }

    /// Constant market quoted by pillars: the same day->rate map is re-read
    /// from each valuation day.
    static MarketPath constant_pillars(std::vector<CurvePillar> pillars) {
        MarketPath path;
        path.pillars_ = std::move(pillars);
        // validate once; anchor day is irrelevant for pillar checks
        ZeroCurve probe(TimePoint{0}, path.pillars_);
        return path;
    }

    /// Explicit curve per day; each curve's anchor names its day.
    static MarketPath per_day(std::vector<ZeroCurve> curves) {
        if (curves.empty())
            throw std::invalid_argument("MarketPath: no curves supplied");
        for (std::size_t i = 1; i < curves.size(); ++i)
            if (curves[i].anchor() <= curves[i - 1].anchor())
                throw std::invalid_argument(
                    "MarketPath: curve anchors must be strictly increasing");
        MarketPath path;
        path.curves_ = std::move(curves);
        return path;
    }

    ZeroCurve at(TimePoint day) const {
        if (!curves_.empty()) {
            for (const ZeroCurve& c : curves_)
                if (c.anchor() == day) return c;
            throw std::domain_error("MarketPath: no curve for day " +
                                    std::to_string(day.day));
        }
        return ZeroCurve(day, pillars_);
    }

private:
    MarketPath() = default;

    std::vector<CurvePillar> pillars_;
    std::vector<ZeroCurve> curves_;
};

/// Deferral of a pay-at-start coupon: the slice received but not yet earned,
/// -N * r * delta(t, end) inside the period, zero outside. Added to the
/// coupon it linearizes income recognition.
inline double deferral(const ForwardRateAgreement& trade, TimePoint t) {
    const Schedule& s = trade.schedule;
    if (t < s.start || t >= s.end) return 0.0;
    return -trade.notional * trade.contract_rate * year_fraction(t, s.end).value();
}

namespace detail {

inline SimRow row_from_breakdown(std::int64_t day, TradePhase phase,
                                 const PvBreakdown& b) {
    SimRow row;
    row.day = day;
    row.phase = phase;
    row.pv_dcf = b.pv_dcf;
    row.accrued = b.accrued;
    row.mtm_adj = b.mtm_adjustment;
    row.pv_taylor = b.pv_taylor;
    row.unexplained = b.unexplained;
    row.zero_rate = b.zero_rate;
    return row;
}

// Maturity-day row: the final payment is still on the books this day (it
// moves to the cash ledger the same instant), so the row reports the
// cum-coupon value and the breakdown is exact.
inline SimRow settlement_row(const FixedDeposit& trade, const ZeroCurve& curve,
                             TimePoint t) {
    const Schedule& s = trade.schedule;
    double interest =
        trade.notional * trade.rate * year_fraction(s.start, s.end).value();
    double z = curve.zero_rate(s.end);
    PvBreakdown b = compose_breakdown(trade.notional, interest, 0.0,
                                      (trade.notional + interest) * 1.0, z);
    SimRow row = row_from_breakdown(t.day, TradePhase::Matured, b);
    row.theta_accrual = trade.notional * trade.rate / 360.0;
    row.theta_mtm = trade.notional * (z - trade.rate) / 360.0;
    return row;
}

inline SimRow fixed_deposit_row(const FixedDeposit& trade, const ZeroCurve& curve,
                                TimePoint t) {
    if (t == trade.schedule.end) return settlement_row(trade, curve, t);
    TradePhase phase = trade_phase(trade, t);
    SimRow row = row_from_breakdown(
        t.day, phase, pv_breakdown_one(trade, curve, t));
    if (phase == TradePhase::Cash) {
        row.theta_accrual = trade.notional * trade.rate / 360.0;
        row.theta_mtm = trade.notional * (row.zero_rate - trade.rate) / 360.0;
    }
    return row;
}

}  // namespace detail

/// Day-by-day revaluation of a trade over [from, to] against the curves the
/// path supplies. Phase transitions are carried through: forward rows hold
/// no accrual, the maturity row books the final payment, later rows are
/// empty. A floating deposit fixes automatically when the run crosses its
/// period start.
inline std::vector<SimRow> simulate(const Trade& trade, const MarketPath& path,
                                    TimePoint from, TimePoint to) {
    if (from > to) throw std::invalid_argument("simulate: empty horizon");

    std::vector<SimRow> rows;
    rows.reserve(static_cast<std::size_t>(to.day - from.day + 1));

    // Floating deposits pick up their fixing mid-run.
    std::optional<double> pending_fixing;
    if (const auto* fl = std::get_if<FloatingDeposit>(&trade))
        pending_fixing = fl->fixing;

    for (std::int64_t d = from.day; d <= to.day; ++d) {
        TimePoint t{d};
        ZeroCurve curve = path.at(t);
        SimRow row;

        if (const auto* fix = std::get_if<FixedDeposit>(&trade)) {
            row = detail::fixed_deposit_row(*fix, curve, t);
        } else if (const auto* fl = std::get_if<FloatingDeposit>(&trade)) {
            if (!pending_fixing && t == fl->schedule.start)
                pending_fixing = mtm_zero_rate(curve, t, fl->schedule.end);
            if (pending_fixing) {
                row = detail::fixed_deposit_row(
                    as_fixed(fl->with_fixing(*pending_fixing)), curve, t);
            } else if (t > fl->schedule.start) {
                throw std::domain_error(
                    "simulate: floating deposit passed its fixing date before the "
                    "horizon began and no fixing is set");
            } else {
                row = detail::row_from_breakdown(
                    d, TradePhase::Forward,
                    floating_forward_breakdown(*fl, curve, curve));
            }
        } else if (const auto* fra = std::get_if<ForwardRateAgreement>(&trade)) {
            TradePhase phase = trade_phase(*fra, t);
            if (phase == TradePhase::Forward)
                row = detail::row_from_breakdown(d, phase,
                                                 fra_breakdown(*fra, curve, t));
            else
                row.phase = phase;  // settled: valuation columns stay zero
            row.day = d;
            row.deferral = deferral(*fra, t);
        } else {
            const auto& call = std::get<CallAccount>(trade);
            TradePhase phase = trade_phase(call, t);
            row = detail::row_from_breakdown(d, phase,
                                             pv_breakdown_one(call, curve, t));
            if (phase == TradePhase::Cash)
                row.theta_accrual = call.notional * call.rate / 360.0;
        }

        row.daily_pnl = rows.empty() ? 0.0 : row.pv_dcf - rows.back().pv_dcf;
        rows.push_back(row);
    }
    return rows;
}

/// Decompose each day-over-day PNL into the carry predicted at the start of
/// the step plus the rate move scaled by duration; the remainder is reported
/// as residual, never absorbed.
inline std::vector<AttributionRow> attribute(const Trade& trade,
                                             std::span<const SimRow> rows) {
    if (rows.size() < 2)
        throw std::domain_error("attribute: at least two rows required");

    std::vector<AttributionRow> out;
    out.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const SimRow& prev = rows[i - 1];
        const SimRow& cur = rows[i];
        AttributionRow a;
        a.day = cur.day;
        a.daily_pnl = cur.daily_pnl;
        a.theta_accrual = prev.theta_accrual;
        a.theta_mtm = prev.theta_mtm;
        a.rho_effect = analytic_rho(trade, TimePoint{prev.day}) *
                       (cur.zero_rate - prev.zero_rate);
        a.residual = a.daily_pnl - a.theta_accrual - a.theta_mtm - a.rho_effect;
        a.phase_change = cur.phase != prev.phase;
        out.push_back(a);
    }
    return out;
}

namespace detail {

inline LedgerRow deposit_ledger_row(const FixedDeposit& trade, TimePoint t) {
    const Schedule& s = trade.schedule;
    double coupon =
        trade.notional * trade.rate * year_fraction(s.start, s.end).value();
    LedgerRow row;
    row.day = t.day;
    if (t < s.start) return row;
    if (t < s.end) {
        row.cash_position = -trade.notional;  // principal lent out
        row.security_pv = accrual_pv(trade, t);
    } else {
        // principal round-trips; only the coupon remains as cash
        row.cash_position = coupon;
        row.coupon_received = coupon;
    }
    row.npv = row.cash_position + row.security_pv;
    return row;
}

inline LedgerRow fra_ledger_row(const ForwardRateAgreement& trade, TimePoint t) {
    const Schedule& s = trade.schedule;
    double coupon = trade.notional * trade.contract_rate *
                    year_fraction(s.start, s.end).value();
    LedgerRow row;
    row.day = t.day;
    if (t < s.start) return row;
    row.cash_position = coupon;  // paid up front, no principal exchange
    row.coupon_received = coupon;
    row.deferral = deferral(trade, t);
    row.security_pv = row.deferral;  // unearned income carried as a liability
    row.npv = row.cash_position + row.security_pv;
    return row;
}

inline LedgerRow call_ledger_row(const CallAccount& trade, TimePoint t) {
    LedgerRow row;
    row.day = t.day;
    if (t < trade.start) return row;
    row.cash_position = -trade.notional;
    row.security_pv = accrual_pv(trade, t);
    row.npv = row.cash_position + row.security_pv;
    return row;
}

}  // namespace detail

/// Accrual-basis cash/NPV profile of a fixed-rate trade over [from, to]:
/// zero before the period, income building linearly through it, flat at the
/// full coupon after payment.
inline std::vector<LedgerRow> ledger_profile(const Trade& trade, TimePoint from,
                                             TimePoint to) {
    if (from > to) throw std::invalid_argument("ledger_profile: empty horizon");

    std::vector<LedgerRow> rows;
    rows.reserve(static_cast<std::size_t>(to.day - from.day + 1));
    for (std::int64_t d = from.day; d <= to.day; ++d) {
        TimePoint t{d};
        LedgerRow row = std::visit(
            [&](const auto& tr) -> LedgerRow {
                using T = std::decay_t<decltype(tr)>;
                if constexpr (std::is_same_v<T, FixedDeposit>)
                    return detail::deposit_ledger_row(tr, t);
                else if constexpr (std::is_same_v<T, FloatingDeposit>)
                    return detail::deposit_ledger_row(as_fixed(tr), t);
                else if constexpr (std::is_same_v<T, ForwardRateAgreement>)
                    return detail::fra_ledger_row(tr, t);
                else
                    return detail::call_ledger_row(tr, t);
            },
            trade);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mmval
