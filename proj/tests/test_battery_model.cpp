#include "bessu/battery_model.hpp"
#include "bessu/error.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bessu;
using namespace bessu::testing;

TEST(WearCost, FromCapexAndCycleLife)
{
    EXPECT_EQ(wear_cost_from_capex(300.0, 3000.0), 100.0);
    EXPECT_EQ(wear_cost_from_capex(0.0, 3000.0), 0.0);
    EXPECT_EQ(wear_cost_from_capex(250.0, 5000.0), 50.0);
    EXPECT_THROW(wear_cost_from_capex(300.0, 0.0), NonPositiveCycleLife);
    EXPECT_THROW(wear_cost_from_capex(300.0, -1.0), NonPositiveCycleLife);
    EXPECT_THROW(wear_cost_from_capex(-1.0, 100.0), std::invalid_argument);
}

TEST(WearCost, Homogeneous)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> capex(0.0, 1000.0), cycles(100.0, 20000.0);
    for (int i = 0; i < 1000; ++i) {
        double c = capex(rng), n = cycles(rng);
        double w = wear_cost_from_capex(c, n);
        EXPECT_TRUE(close_rel(wear_cost_from_capex(2 * c, n), 2 * w, 1e-12));
        EXPECT_TRUE(close_rel(wear_cost_from_capex(c, 2 * n), w / 2, 1e-12));
    }
}

TEST(BatterySpec, RejectsInvalidParameters)
{
    EXPECT_NO_THROW(BatterySpec(0.0, 1.0, 0.0));
    EXPECT_THROW(BatterySpec(10.0, 0.0), std::invalid_argument);
    EXPECT_THROW(BatterySpec(10.0, 1.01), std::invalid_argument);
    EXPECT_THROW(BatterySpec(10.0, -0.5), std::invalid_argument);
    EXPECT_THROW(BatterySpec(-1.0, 0.85), std::invalid_argument);
    EXPECT_THROW(BatterySpec(10.0, 0.85, -0.1), std::invalid_argument);
    auto spec = BatterySpec(10.0, 0.85, 2.0).with_wear_cost(40.0);
    EXPECT_EQ(spec.wear_cost(), 40.0);
    EXPECT_EQ(spec.efficiency(), 0.85);
    EXPECT_EQ(spec.opex(), 2.0);
}

TEST(EnergyBalance, FranceSelectedRow)
{
    auto fr = find_builtin_profile("france-2019-2021");
    ASSERT_TRUE(fr);
    EXPECT_EQ(fr->service_discharge, 0.054);
    EXPECT_EQ(fr->service_charge, 0.053);
    EXPECT_EQ(fr->balancing_discharge, 0.023);
    EXPECT_EQ(fr->balancing_charge, 0.037);
    EXPECT_EQ(fr->efficiency, 0.850);
    auto r = check_energy_balance(*fr, 0.001);
    EXPECT_NEAR(r.residual, 0.0005, 1e-12);
    EXPECT_TRUE(r.passed);
}

TEST(EnergyBalance, FinlandFcrN)
{
    auto fi = find_builtin_profile("finland-2021");
    ASSERT_TRUE(fi);
    EXPECT_EQ(fi->service, ReserveService::FCR_N);
    auto r = check_energy_balance(*fi);
    EXPECT_EQ(r.residual, 0.0);
    EXPECT_TRUE(r.passed);
}

TEST(EnergyBalance, ZeroProfileAndFailure)
{
    ServiceEnergyProfile zero;
    auto r = check_energy_balance(zero);
    EXPECT_EQ(r.residual, 0.0);
    EXPECT_TRUE(r.passed);

    ServiceEnergyProfile skewed{"skewed", ReserveService::FCR, 0.1, 0.0, 0.0, 0.0, 0.85, ""};
    EXPECT_FALSE(check_energy_balance(skewed).passed);
    EXPECT_TRUE(check_energy_balance(skewed, 0.2).passed);
}

TEST(EnergyBalance, EveryBuiltinProfilePasses)
{
    for (const auto& p : builtin_profiles()) {
        EXPECT_NO_THROW(validate_profile(p)) << p.name;
        EXPECT_TRUE(check_energy_balance(p, kBalanceTolerance).passed) << p.name;
    }
    EXPECT_EQ(find_builtin_profile("germany-2014")->efficiency, 0.776);
}

TEST(Profiles, LoadsCsv)
{
    auto profiles = load_profiles_csv(std::filesystem::path(BESSU_DATA_DIR) / "profiles" /
                                      "example_fcr_profile.csv");
    ASSERT_EQ(profiles.size(), 1u);
    EXPECT_EQ(profiles[0].name, "example_fcr_profile");
    EXPECT_EQ(profiles[0].service_discharge, 0.040);
    EXPECT_EQ(profiles[0].provenance, "example custom profile");

    TempDir dir;
    write_text(dir / "two.csv",
               "service,E_sd,E_sc,E_bd,E_bc,eta,provenance\n"
               "FCR,0.054,0.053,0.023,0.037,0.85,a\n"
               "FCR-N,0.091,0.093,0.079,0.107,0.85,b\n");
    auto two = load_profiles_csv(dir / "two.csv");
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[1].name, "two:2");
    EXPECT_EQ(two[1].service, ReserveService::FCR_N);

    write_text(dir / "neg.csv", "service,E_sd,E_sc,E_bd,E_bc,eta,provenance\nFCR,-1,0,0,0,0.85,x\n");
    EXPECT_THROW(load_profiles_csv(dir / "neg.csv"), MalformedRow);
    write_text(dir / "svc.csv", "service,E_sd,E_sc,E_bd,E_bc,eta,provenance\naFRR,0,0,0,0,0.85,x\n");
    EXPECT_THROW(load_profiles_csv(dir / "svc.csv"), MalformedRow);

    EXPECT_EQ(resolve_profile("finland-2021").name, "finland-2021");
    EXPECT_THROW(resolve_profile("no-such-profile"), std::invalid_argument);
}

TEST(MarketConfig, PaidLegNeedsPriceSource)
{
    ServiceMarketConfig c{true, true, false, EnergyPriceSource::None};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.energy_price_source = EnergyPriceSource::DayAheadSpot;
    EXPECT_NO_THROW(c.validate());
    ServiceMarketConfig capacity_only{true, false, false, EnergyPriceSource::None};
    EXPECT_NO_THROW(capacity_only.validate());
}

TEST(MarketPresets, EncodeFcrMarketDesigns)
{
    auto fr = find_preset("FR-FCR");
    ASSERT_TRUE(fr);
    EXPECT_TRUE(fr->config.capacity_paid);
    EXPECT_TRUE(fr->config.service_energy_paid);
    EXPECT_EQ(fr->default_profile, "france-2019-2021");

    auto de = find_preset("de-fcr");
    ASSERT_TRUE(de);
    EXPECT_FALSE(de->config.service_energy_paid);
    EXPECT_EQ(de->default_profile, "france-2019-2021");

    for (const char* zone : {"DK2", "NO1", "NO5"}) {
        auto p = preset_for_zone(zone, ReserveService::FCR_N);
        ASSERT_TRUE(p) << zone;
        EXPECT_EQ(p->default_profile, "finland-2021");
    }
    EXPECT_EQ(preset_for_zone("DE", ReserveService::FCR)->name, "DE-FCR");
    EXPECT_EQ(preset_for_zone("DE-LU", ReserveService::FCR)->name, "DE-FCR");
    EXPECT_FALSE(preset_for_zone("DK1", ReserveService::FCR_N));

    for (const char* zone : {"ES", "IT", "IT-Centre-South"}) {
        auto p = preset_for_zone(zone, ReserveService::FCR);
        ASSERT_TRUE(p) << zone;
        EXPECT_FALSE(p->remunerable);
    }
    for (const auto& p : builtin_presets()) {
        EXPECT_NO_THROW(p.config.validate()) << p.name;
        if (p.remunerable) EXPECT_TRUE(find_builtin_profile(p.default_profile)) << p.name;
    }
}
