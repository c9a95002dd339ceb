#include <gtest/gtest.h>

#include <stdexcept>
#include <string>

#include "mmval/config.hpp"

using namespace mmval;

namespace {

/// Expect a ConfigError whose message mentions `needle`.
template <typename Fn>
void expect_config_error(Fn&& fn, const std::string& needle) {
    try {
        fn();
        FAIL() << "expected ConfigError mentioning '" << needle << "'";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
            << "actual message: " << e.what();
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

TEST(ParseConfig, ReadsAFullRunConfig) {
    RunConfig cfg = parse_config_text(
        "# ten day deposit against a flat market\n"
        "[trade]\n"
        "kind = fixed\n"
        "notional = 1000000\n"
        "rate = 0.05\n"
        "start_day = 0\n"
        "end_day = 10\n"
        "\n"
        "[curve]\n"
        "anchor_day = 1\n"
        "pillar = 1, 0.07\n"
        "pillar = 400, 0.07\n"
        "\n"
        "[simulation]\n"
        "from_day = 1\n"
        "to_day = 10\n"
        "\n"
        "[output]\n"
        "format = csv\n"
        "precision = 4\n");
    EXPECT_EQ(cfg.trade.kind, "fixed");
    EXPECT_EQ(cfg.trade.notional, 1000000.0);
    EXPECT_EQ(cfg.trade.rate, 0.05);
    EXPECT_EQ(cfg.trade.start_day, 0);
    EXPECT_EQ(cfg.trade.end_day, 10);
    EXPECT_FALSE(cfg.trade.spread.has_value());
    EXPECT_EQ(cfg.curve.anchor_day, 1);
    ASSERT_EQ(cfg.curve.pillars.size(), 2u);
    EXPECT_EQ(cfg.curve.pillars[0].day, TimePoint{1});
    EXPECT_EQ(cfg.curve.pillars[0].rate, 0.07);
    EXPECT_EQ(cfg.curve.pillars[1].day, TimePoint{400});
    ASSERT_TRUE(cfg.simulation.has_value());
    EXPECT_EQ(cfg.simulation->from_day, 1);
    EXPECT_EQ(cfg.simulation->to_day, 10);
    EXPECT_EQ(cfg.output.format, "csv");
    EXPECT_EQ(cfg.output.precision, 4);
    EXPECT_FALSE(cfg.forecast_curve.has_value());
}

TEST(ParseConfig, DefaultsAndMinimalConfig) {
    RunConfig cfg = parse_config_text(
        "[trade]\n"
        "kind = call\n"
        "notional = 1e6\n"
        "rate = 0.05\n"
        "start_day = 0\n"
        "[curve]\n"
        "anchor_day = 0\n"
        "pillar = 0, 0.05\n");
    EXPECT_EQ(cfg.output.format, "table");
    EXPECT_EQ(cfg.output.precision, 2);
    EXPECT_FALSE(cfg.simulation.has_value());
    EXPECT_EQ(cfg.trade.notional, 1e6);
}

TEST(ParseConfig, ToleratesCommentsAndLooseWhitespace) {
    RunConfig cfg = parse_config_text(
        "\n"
        "  # leading comment\n"
        "\t[trade]\r\n"
        "  kind\t=  floating \n"
        "\tnotional = 2.5e7\r\n"
        "  spread=0.001\n"
        "start_day =-5\n"
        "end_day = 175\n"
        "fixing = 0.03\n"
        "[ curve ]\n"
        "anchor_day = -5\n"
        "pillar =  10 ,\t0.02 \n"
        "# trailing comment\n");
    EXPECT_EQ(cfg.trade.kind, "floating");
    EXPECT_EQ(cfg.trade.notional, 2.5e7);
    EXPECT_EQ(cfg.trade.spread, 0.001);
    EXPECT_EQ(cfg.trade.fixing, 0.03);
    EXPECT_EQ(cfg.trade.start_day, -5);
    EXPECT_EQ(cfg.curve.anchor_day, -5);
    ASSERT_EQ(cfg.curve.pillars.size(), 1u);
    EXPECT_EQ(cfg.curve.pillars[0].rate, 0.02);
}

TEST(ParseConfig, ReadsASeparateForecastCurve) {
    RunConfig cfg = parse_config_text(
        "[trade]\n"
        "kind = floating\n"
        "notional = 1e6\n"
        "spread = 0\n"
        "start_day = 30\n"
        "end_day = 120\n"
        "[curve]\n"
        "anchor_day = 0\n"
        "pillar = 120, 0.07\n"
        "[forecast_curve]\n"
        "anchor_day = 0\n"
        "pillar = 120, 0.08\n");
    ASSERT_TRUE(cfg.forecast_curve.has_value());
    EXPECT_EQ(cfg.forecast_curve->anchor_day, 0);
    ASSERT_EQ(cfg.forecast_curve->pillars.size(), 1u);
    EXPECT_EQ(cfg.forecast_curve->pillars[0].rate, 0.08);
}

TEST(ParseConfig, StructuralErrorsCarryTheLineNumber) {
    expect_config_error([] { parse_config_text("[margins]\n"); },
                        "unknown section");
    expect_config_error(
        [] { parse_config_text("[trade\nkind = fixed\n"); },
        "unterminated section");
    expect_config_error(
        [] { parse_config_text("[trade]\n[curve]\n[trade]\n"); },
        "duplicate section [trade]");
    expect_config_error([] { parse_config_text("kind = fixed\n"); },
                        "outside any [section]");
    expect_config_error([] { parse_config_text("[trade]\nkind fixed\n"); },
                        "expected 'key = value'");
    expect_config_error([] { parse_config_text("[trade]\n= fixed\n"); },
                        "empty key");
    expect_config_error([] { parse_config_text("[trade]\nrate =\n"); },
                        "empty value");
    expect_config_error([] { parse_config_text("[trade]\nrate = fast\n"); },
                        "expects a number");
    expect_config_error(
        [] { parse_config_text("[trade]\nstart_day = 1.5\n"); },
        "expects an integer");
    expect_config_error([] { parse_config_text("[trade]\nhorizon = 3\n"); },
                        "unknown trade key");
    try {
        parse_config_text("[trade]\nkind = fixed\nhorizon = 3\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(ParseConfig, RejectsDuplicateKeys) {
    expect_config_error(
        [] { parse_config_text("[trade]\nkind = fixed\nkind = fra\n"); },
        "duplicate key 'kind'");
    expect_config_error(
        [] {
            parse_config_text("[trade]\nnotional = 1\nnotional = 2\n");
        },
        "duplicate key 'notional'");
    expect_config_error(
        [] {
            parse_config_text("[curve]\nanchor_day = 0\nanchor_day = 1\n");
        },
        "duplicate key 'anchor_day'");
    expect_config_error(
        [] {
            parse_config_text("[simulation]\nfrom_day = 0\nfrom_day = 1\n");
        },
        "duplicate key 'from_day'");
    expect_config_error(
        [] { parse_config_text("[output]\nformat = csv\nformat = csv\n"); },
        "duplicate key 'format'");
    expect_config_error(
        [] {
            parse_config_text("[output]\nprecision = 2\nprecision = 2\n");
        },
        "duplicate key 'precision'");
}

TEST(ParseConfig, RejectsBadCurveAndOutputValues) {
    expect_config_error(
        [] { parse_config_text("[curve]\npillar = 10\n"); },
        "pillar expects 'day,rate'");
    expect_config_error(
        [] { parse_config_text("[curve]\npillar = x, 0.07\n"); },
        "expects an integer");
    expect_config_error(
        [] { parse_config_text("[curve]\npillar = 10, seven\n"); },
        "expects a number");
    expect_config_error([] { parse_config_text("[curve]\nshape = flat\n"); },
                        "unknown curve key");
    expect_config_error(
        [] { parse_config_text("[output]\nformat = json\n"); },
        "format must be 'table' or 'csv'");
    expect_config_error(
        [] { parse_config_text("[output]\nprecision = -1\n"); },
        "precision must be between 0 and 17");
    expect_config_error(
        [] { parse_config_text("[output]\nprecision = 18\n"); },
        "precision must be between 0 and 17");
    expect_config_error(
        [] { parse_config_text("[simulation]\nhorizon = 10\n"); },
        "unknown simulation key");
    expect_config_error([] { parse_config_text("[output]\ncolor = red\n"); },
                        "unknown output key");
}

TEST(ParseConfig, EnforcesRequiredSectionsAndHorizonOrder) {
    expect_config_error(
        [] { parse_config_text("[curve]\nanchor_day = 0\n"); },
        "missing [trade] section");
    expect_config_error([] { parse_config_text("[trade]\nkind = fixed\n"); },
                        "missing [curve] section");
    std::string base =
        "[trade]\nkind = fixed\n[curve]\nanchor_day = 0\n[simulation]\n";
    expect_config_error(
        [&] { parse_config_text(base + "to_day = 10\n"); },
        "missing from_day");
    expect_config_error(
        [&] { parse_config_text(base + "from_day = 10\n"); },
        "missing to_day");
    expect_config_error(
        [&] { parse_config_text(base + "from_day = 10\nto_day = 5\n"); },
        "from_day exceeds to_day");
    RunConfig ok = parse_config_text(base + "from_day = 5\nto_day = 5\n");
    EXPECT_EQ(ok.simulation->from_day, 5);
    EXPECT_EQ(ok.simulation->to_day, 5);
}

TEST(LoadConfig, MissingFileIsAConfigError) {
    expect_config_error([] { load_config("/nonexistent/run.cfg"); },
                        "cannot open");
}

// ---------------------------------------------------------------------------
// materializing trades
// ---------------------------------------------------------------------------

namespace {

TradeConfig fixed_config() {
    TradeConfig t;
    t.kind = "fixed";
    t.notional = 1e6;
    t.rate = 0.05;
    t.start_day = 0;
    t.end_day = 10;
    return t;
}

}  // namespace

TEST(BuildTrade, MaterializesEachKind) {
    Trade fixed = build_trade(fixed_config());
    ASSERT_TRUE(std::holds_alternative<FixedDeposit>(fixed));
    EXPECT_EQ(std::get<FixedDeposit>(fixed).rate, 0.05);
    EXPECT_EQ(std::get<FixedDeposit>(fixed).schedule.end, TimePoint{10});

    TradeConfig f;
    f.kind = "floating";
    f.notional = 1e6;
    f.spread = 0.001;
    f.start_day = 5;
    f.end_day = 15;
    Trade floating = build_trade(f);
    ASSERT_TRUE(std::holds_alternative<FloatingDeposit>(floating));
    EXPECT_FALSE(std::get<FloatingDeposit>(floating).fixing.has_value());
    f.fixing = 0.049;
    EXPECT_EQ(std::get<FloatingDeposit>(build_trade(f)).fixing, 0.049);

    TradeConfig a;
    a.kind = "fra";
    a.notional = 1e6;
    a.rate = 0.05;
    a.start_day = 90;
    a.end_day = 180;
    Trade fra = build_trade(a);
    ASSERT_TRUE(std::holds_alternative<ForwardRateAgreement>(fra));
    EXPECT_EQ(std::get<ForwardRateAgreement>(fra).schedule.pay_at, PayTiming::Start);

    TradeConfig c;
    c.kind = "call";
    c.notional = 1e6;
    c.rate = 0.05;
    c.start_day = 0;
    Trade call = build_trade(c);
    ASSERT_TRUE(std::holds_alternative<CallAccount>(call));
    EXPECT_EQ(std::get<CallAccount>(call).start, TimePoint{0});
}

TEST(BuildTrade, ReportsMissingFields) {
    expect_config_error([] { build_trade(TradeConfig{}); }, "missing kind");
    TradeConfig t = fixed_config();
    t.notional.reset();
    expect_config_error([&] { build_trade(t); }, "missing notional");
    t = fixed_config();
    t.rate.reset();
    expect_config_error([&] { build_trade(t); }, "missing rate");
    t = fixed_config();
    t.start_day.reset();
    expect_config_error([&] { build_trade(t); }, "missing start_day");
    t = fixed_config();
    t.end_day.reset();
    expect_config_error([&] { build_trade(t); }, "missing end_day");
    TradeConfig f;
    f.kind = "floating";
    f.notional = 1e6;
    f.start_day = 0;
    f.end_day = 10;
    expect_config_error([&] { build_trade(f); }, "missing spread");
}

TEST(BuildTrade, RejectsFieldsForeignToTheKind) {
    TradeConfig t = fixed_config();
    t.spread = 0.001;
    expect_config_error([&] { build_trade(t); }, "spread is not a fixed deposit");
    t = fixed_config();
    t.fixing = 0.05;
    expect_config_error([&] { build_trade(t); }, "fixing is not a fixed deposit");
    TradeConfig f;
    f.kind = "floating";
    f.notional = 1e6;
    f.spread = 0.001;
    f.rate = 0.05;
    f.start_day = 0;
    f.end_day = 10;
    expect_config_error([&] { build_trade(f); }, "rate is not a floating");
    TradeConfig c;
    c.kind = "call";
    c.notional = 1e6;
    c.rate = 0.05;
    c.start_day = 0;
    c.end_day = 10;
    expect_config_error([&] { build_trade(c); }, "end_day is not a call");
    TradeConfig a = fixed_config();
    a.kind = "fra";
    a.spread = 0.001;
    expect_config_error([&] { build_trade(a); }, "spread is not a fra");
    TradeConfig u = fixed_config();
    u.kind = "swap";
    expect_config_error([&] { build_trade(u); }, "unknown kind 'swap'");
}

TEST(BuildTrade, ScheduleAndNotionalRulesStillApply) {
    TradeConfig t = fixed_config();
    t.start_day = 10;
    t.end_day = 10;
    EXPECT_THROW(build_trade(t), std::invalid_argument);
    t = fixed_config();
    t.notional = 0.0;
    EXPECT_THROW(build_trade(t), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// materializing curves
// ---------------------------------------------------------------------------

TEST(BuildCurve, MaterializesTheConfiguredCurve) {
    CurveConfig c;
    c.anchor_day = 1;
    c.pillars = {CurvePillar{TimePoint{10}, 0.07}};
    ZeroCurve curve = build_curve(c);
    EXPECT_EQ(curve.anchor(), TimePoint{1});
    EXPECT_EQ(curve.zero_rate(TimePoint{200}), 0.07);
}

TEST(BuildCurve, ReportsWhatIsMissingAndWhere) {
    CurveConfig c;
    c.pillars = {CurvePillar{TimePoint{10}, 0.07}};
    expect_config_error([&] { build_curve(c); }, "config [curve]: missing anchor_day");
    expect_config_error([&] { build_curve(c, "forecast_curve"); },
                        "config [forecast_curve]");
    CurveConfig empty;
    empty.anchor_day = 0;
    expect_config_error([&] { build_curve(empty); }, "no pillars");
    CurveConfig unsorted;
    unsorted.anchor_day = 0;
    unsorted.pillars = {CurvePillar{TimePoint{10}, 0.07},
                        CurvePillar{TimePoint{5}, 0.07}};
    EXPECT_THROW(build_curve(unsorted), std::invalid_argument);
}
