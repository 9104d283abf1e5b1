#include "bessu/error.hpp"
#include "bessu/sweep.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bessu;
using namespace bessu::testing;

namespace {

ZoneData arbitrage_zone(const std::string& code, PriceSeries series)
{
    ZoneData z;
    z.zone = series.zone();
    z.zone.code = code;
    z.day_ahead = std::move(series);
    return z;
}

SweepConfig arbitrage_config(std::vector<std::string> zones, DateRange period, double lo = 0.0,
                             double hi = 100.0, double step = 1.0)
{
    SweepConfig c;
    c.wear_min = lo;
    c.wear_max = hi;
    c.step = step;
    c.application = Application::Arbitrage;
    for (auto& z : zones) c.zones.push_back(BiddingZone{z, "EUR"});
    c.period = period;
    return c;
}

PriceSeries random_days(std::mt19937_64& rng, const std::string& zone, Day first, int days)
{
    std::uniform_real_distribution<double> price(-20.0, 200.0);
    std::vector<double> prices(static_cast<std::size_t>(days) * 24);
    for (auto& p : prices) p = price(rng);
    return hourly_series(zone, PriceKind::DayAheadEnergy, Hour{first}, prices);
}

}  // namespace

TEST(SweepConfig, GridIncludesEndpoints)
{
    SweepConfig c = arbitrage_config({}, {day_of(2020, 1, 1), day_of(2020, 1, 1)});
    auto g = c.grid();
    ASSERT_EQ(g.size(), 101u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 100.0);

    c.wear_max = 0.0;
    EXPECT_EQ(c.grid().size(), 1u);
    c.wear_min = 0.0;
    c.wear_max = 1.0;
    c.step = 0.1;
    EXPECT_EQ(c.grid().size(), 11u);
    c.step = 0.3;
    EXPECT_EQ(c.grid().size(), 4u);  // 0, 0.3, 0.6, 0.9
}

TEST(SweepConfig, RejectsBadRanges)
{
    DateRange p{day_of(2020, 1, 1), day_of(2020, 1, 1)};
    EXPECT_THROW(arbitrage_config({}, p, -1.0, 10.0).validate(), std::invalid_argument);
    EXPECT_THROW(arbitrage_config({}, p, 20.0, 10.0).validate(), std::invalid_argument);
    EXPECT_THROW(arbitrage_config({}, p, 0.0, 10.0, 0.0).validate(), std::invalid_argument);
    EXPECT_THROW(arbitrage_config({}, {day_of(2020, 1, 2), day_of(2020, 1, 1)}).validate(),
                 std::invalid_argument);
    EXPECT_THROW(arbitrage_config({"FR", "FR"}, p).validate(), std::invalid_argument);
}

TEST(RunSweep, FlatPricesGiveZero)
{
    DateRange jan{day_of(2020, 1, 1), day_of(2020, 1, 31)};
    auto flat = repeated_days("FR", jan.first, 31, std::vector<double>(24, 45.0));
    auto curves = run_sweep(arbitrage_config({"FR"}, jan, 0.0, 0.0), {arbitrage_zone("FR", flat)},
                            BatterySpec(0.0, 0.85));
    ASSERT_EQ(curves.size(), 1u);
    ASSERT_EQ(curves[0].points.size(), 1u);
    EXPECT_EQ(curves[0].points[0].ppur, 0.0);
}

TEST(RunSweep, TwoLevelThreshold)
{
    DateRange jan{day_of(2020, 1, 1), day_of(2020, 1, 31)};
    auto s = repeated_days("FR", jan.first, 31, two_level_day(10.0, 60.0));
    auto curves = run_sweep(arbitrage_config({"FR"}, jan, 0.0, 100.0, 50.0), {arbitrage_zone("FR", s)},
                            BatterySpec(0.0, 0.85));
    const auto& pts = curves.at(0).points;
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0].ppur, 1.0);
    EXPECT_EQ(pts[1].ppur, 0.0);
    EXPECT_EQ(pts[2].ppur, 0.0);
    EXPECT_EQ(curves[0].total_periods, 31u);

    // Margin at 48 is still positive, at 49 it is gone.
    EXPECT_LT(48.0, oracle::arbitrage_threshold(60.0, 10.0, 0.85));
    auto fine = run_sweep(arbitrage_config({"FR"}, jan, 48.0, 49.0, 1.0), {arbitrage_zone("FR", s)},
                          BatterySpec(0.0, 0.85));
    EXPECT_EQ(fine[0].points[0].ppur, 1.0);
    EXPECT_EQ(fine[0].points[1].ppur, 0.0);
}

TEST(RunSweep, MissingDaysLowerTheRate)
{
    DateRange span{day_of(2020, 1, 1), day_of(2020, 1, 10)};
    auto s = repeated_days("FR", span.first, 8, two_level_day());
    auto curves = run_sweep(arbitrage_config({"FR"}, span, 0.0, 0.0), {arbitrage_zone("FR", s)},
                            BatterySpec(0.0, 0.85));
    EXPECT_DOUBLE_EQ(curves[0].points[0].ppur, 0.8);
    EXPECT_EQ(curves[0].skipped_periods, 2u);
}

TEST(RunSweep, CurvesAreMonotone)
{
    std::mt19937_64 rng(41);
    DateRange span{day_of(2020, 1, 1), day_of(2020, 2, 29)};
    std::vector<ZoneData> data;
    for (const char* z : {"A", "B", "C"}) data.push_back(arbitrage_zone(z, random_days(rng, z, span.first, 60)));
    auto curves = run_sweep(arbitrage_config({"A", "B", "C"}, span), data, BatterySpec(0.0, 0.85));
    ASSERT_EQ(curves.size(), 3u);
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            EXPECT_GE(c.points[i].ppur, 0.0);
            EXPECT_LE(c.points[i].ppur, 1.0);
            if (i > 0) {
                EXPECT_GT(c.points[i].wear_cost, c.points[i - 1].wear_cost);
                EXPECT_LE(c.points[i].ppur, c.points[i - 1].ppur);
            }
        }
    }
}

TEST(RunSweep, LargeWearKillsArbitrage)
{
    std::mt19937_64 rng(43);
    DateRange span{day_of(2020, 1, 1), day_of(2020, 1, 20)};
    auto s = random_days(rng, "FR", span.first, 20);
    auto curves = run_sweep(arbitrage_config({"FR"}, span, 1e6, 1e6), {arbitrage_zone("FR", s)},
                            BatterySpec(0.0, 0.85));
    EXPECT_EQ(curves[0].points[0].ppur, 0.0);
}

TEST(RunSweep, ParallelMatchesSerial)
{
    std::mt19937_64 rng(47);
    DateRange span{day_of(2020, 1, 1), day_of(2020, 1, 31)};
    std::vector<ZoneData> data;
    std::vector<std::string> zones;
    for (int i = 0; i < 5; ++i) {
        auto code = "Z" + std::to_string(i);
        zones.push_back(code);
        data.push_back(arbitrage_zone(code, random_days(rng, code, span.first, 31)));
    }
    auto config = arbitrage_config(zones, span, 0.0, 100.0, 0.5);
    SweepOptions serial, parallel;
    serial.threads = 1;
    parallel.threads = 8;
    auto a = run_sweep(config, data, BatterySpec(0.0, 0.85), serial);
    auto b = run_sweep(config, data, BatterySpec(0.0, 0.85), parallel);
    EXPECT_EQ(curves_to_csv(a), curves_to_csv(b));
    EXPECT_EQ(curves_to_json(a), curves_to_json(b));
    for (std::size_t i = 0; i < zones.size(); ++i) EXPECT_EQ(a[i].zone, zones[i]);
}

TEST(RunSweep, MissingZoneData)
{
    DateRange span{day_of(2020, 1, 1), day_of(2020, 1, 1)};
    auto s = repeated_days("FR", span.first, 1, two_level_day());
    EXPECT_THROW(run_sweep(arbitrage_config({"DE"}, span), {arbitrage_zone("FR", s)}, BatterySpec(0, 0.85)),
                 MissingData);
    ZoneData empty;
    empty.zone = BiddingZone{"FR", "EUR"};
    EXPECT_THROW(run_sweep(arbitrage_config({"FR"}, span), {empty}, BatterySpec(0, 0.85)), MissingData);
}

TEST(RunSweep, ReserveUsesPresetDefaults)
{
    DateRange span{day_of(2021, 1, 1), day_of(2021, 1, 3)};
    ZoneData dk2;
    dk2.zone = BiddingZone{"DK2", "EUR"};
    dk2.capacity = repeated_days("DK2", span.first, 3, std::vector<double>(24, 20.0), PriceKind::ReserveCapacity);
    dk2.day_ahead = repeated_days("DK2", span.first, 3, std::vector<double>(24, 50.0));
    SweepConfig c = arbitrage_config({"DK2"}, span, 0.0, 120.0, 10.0);
    c.application = Application::FCR_N;
    auto curves = run_sweep(c, {dk2}, BatterySpec(0.0, 0.85));
    // Payoff 18.5 - 0.17 * W: positive up to W = 108.8.
    for (const auto& p : curves[0].points) EXPECT_EQ(p.ppur, p.wear_cost < 108.8 ? 1.0 : 0.0) << p.wear_cost;
    EXPECT_EQ(curves[0].total_periods, 72u);

    ZoneData es;
    es.zone = BiddingZone{"ES", "EUR"};
    es.capacity = dk2.capacity;
    SweepConfig ces = c;
    ces.application = Application::FCR;
    ces.zones = {es.zone};
    EXPECT_THROW(run_sweep(ces, {es}, BatterySpec(0.0, 0.85)), DataError);
}

TEST(CompareZones, RanksAndInterpolates)
{
    UtilizationCurve a{"A", Application::Arbitrage, {}, 10, 0, {{0, 1.0, 10}, {50, 0.8, 8}, {100, 0.5, 5}}};
    UtilizationCurve b{"B", Application::Arbitrage, {}, 10, 0, {{0, 0.9, 9}, {50, 0.4, 4}, {100, 0.1, 1}}};
    for (double w : {0.0, 25.0, 50.0, 99.0}) {
        auto r = compare_zones({b, a}, w);
        EXPECT_EQ(r[0].zone, "A");
        EXPECT_EQ(r[1].zone, "B");
    }
    EXPECT_EQ(ppur_at(a, 50.0), 0.8);

    UtilizationCurve c{"C", Application::Arbitrage, {}, 10, 0, {{40, 0.8, 8}, {60, 0.4, 4}}};
    EXPECT_NEAR(ppur_at(c, 50.0), 0.6, 1e-12);
    EXPECT_THROW(ppur_at(c, 30.0), OutOfRange);
    EXPECT_THROW(compare_zones({a, c}, 100.0), OutOfRange);
}

TEST(CompareZones, TiesByCode)
{
    UtilizationCurve x{"NO1", Application::Arbitrage, {}, 1, 0, {{0, 0.5, 1}}};
    UtilizationCurve y{"DK1", Application::Arbitrage, {}, 1, 0, {{0, 0.5, 1}}};
    auto r = compare_zones({x, y}, 0.0);
    EXPECT_EQ(r[0].zone, "DK1");
}

TEST(CurveExport, Formats)
{
    UtilizationCurve c{"FR", Application::FCR, {day_of(2020, 1, 1), day_of(2020, 1, 31)}, 744, 0,
                       {{0, 1.0, 744}, {0.5, 0.25, 186}}};
    EXPECT_EQ(curves_to_csv({c}), "zone,application,wear_cost_eur_mwh,ppur\nFR,fcr,0,1\nFR,fcr,0.5,0.25\n");
    auto dat = curve_to_dat(c);
    EXPECT_NE(dat.find("0.5 0.25\n"), std::string::npos);
    auto json = curves_to_json({c});
    EXPECT_NE(json.find("\"application\": \"fcr\""), std::string::npos);
    EXPECT_NE(json.find("\"pput\": 186"), std::string::npos);
}
