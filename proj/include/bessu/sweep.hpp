#pragma once

#include "bessu/battery_model.hpp"
#include "bessu/market_data.hpp"
#include "bessu/payoff_engine.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bessu {

enum class Application { Arbitrage, FCR, FCR_N };

std::string_view to_string(Application app);
std::optional<Application> parse_application(std::string_view text);

struct SweepConfig {
    double wear_min{0.0};
    double wear_max{100.0};
    double step{1.0};
    Application application{Application::Arbitrage};
    std::vector<BiddingZone> zones;
    DateRange period;

    /// Throws std::invalid_argument when the grid or period is unusable.
    void validate() const;
    /// wear_min, wear_min + step, ... up to wear_max (included when on the grid).
    std::vector<double> grid() const;
};

/// Everything needed to evaluate one zone. Arbitrage uses `day_ahead`; reserve
/// applications use `capacity`, `profile`, `market` and `day_ahead` as the spot
/// series when the market pays energy legs.
struct ZoneData {
    BiddingZone zone;
    std::optional<PriceSeries> day_ahead;
    std::optional<PriceSeries> capacity;
    std::optional<ServiceEnergyProfile> profile;
    std::optional<ServiceMarketConfig> market;
};

struct SweepOptions {
    ArbitrageOptions arbitrage{};
    FcrOptions fcr{};
    DayGrouping grouping{};
    unsigned threads{1};  // 0 picks hardware concurrency
};

struct CurvePoint {
    double wear_cost;
    double ppur;
    std::size_t pput;
};

struct UtilizationCurve {
    std::string zone;
    Application application;
    DateRange period;
    std::size_t total_periods{0};
    std::size_t skipped_periods{0};
    std::vector<CurvePoint> points;
};

/// One curve per configured zone, in configuration order. Throws MissingData when
/// a zone has no usable series for the application.
std::vector<UtilizationCurve> run_sweep(const SweepConfig& config, const std::vector<ZoneData>& data,
                                        const BatterySpec& spec_template,
                                        const SweepOptions& options = {});

/// PPUR at `wear_cost`, linearly interpolated between grid points. Throws OutOfRange.
double ppur_at(const UtilizationCurve& curve, double wear_cost);

struct ZoneRank {
    std::string zone;
    double ppur;
};

/// Zones by PPUR at `wear_cost`, highest first; ties ordered by zone code.
std::vector<ZoneRank> compare_zones(const std::vector<UtilizationCurve>& curves, double wear_cost);

std::string curves_to_csv(const std::vector<UtilizationCurve>& curves);
std::string curves_to_json(const std::vector<UtilizationCurve>& curves);
/// Two-column `wear ppur` text for plotting one curve.
std::string curve_to_dat(const UtilizationCurve& curve);

}  // namespace bessu
