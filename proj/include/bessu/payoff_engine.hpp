#pragma once

#include "bessu/battery_model.hpp"
#include "bessu/market_data.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bessu {

/// Prices (EUR/MW/h, EUR/MWh) and energies (MWh) for one period of a service.
struct GeneralPayoffInputs {
    double capacity_price{0.0};
    double capacity_mw{0.0};
    double service_discharge_price{0.0};
    double service_charge_price{0.0};
    double balancing_discharge_price{0.0};
    double balancing_charge_price{0.0};
    double service_discharge{0.0};
    double service_charge{0.0};
    double balancing_discharge{0.0};
    double balancing_charge{0.0};

    /// Throws std::invalid_argument for negative capacity or energies.
    void validate() const;
};

struct PayoffTerms {
    double remuneration;  // capacity plus service energy legs
    double balancing;
    double operating_cost;  // wear on delivered energy plus opex

    double net() const { return remuneration + balancing - operating_cost; }
    double payoff() const;
};

PayoffTerms payoff_terms(const GeneralPayoffInputs& in, const BatterySpec& spec);

/// Option-style payoff: the battery only runs when revenue beats operating cost.
double general_payoff(const GeneralPayoffInputs& in, const BatterySpec& spec);

enum class PeriodKind { Hourly, Daily };

struct PayoffEntry {
    std::string period;
    double payoff;
    bool profitable;
};

class PayoffSeries {
public:
    explicit PayoffSeries(PeriodKind kind) : kind_(kind) {}

    /// Throws std::invalid_argument for negative or non-finite payoffs.
    void append(std::string period, double payoff);

    PeriodKind kind() const { return kind_; }
    const std::vector<PayoffEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    PeriodKind kind_;
    std::vector<PayoffEntry> entries_;
};

std::size_t ppu_time(const PayoffSeries& series);
double ppu_rate(const PayoffSeries& series, std::size_t total_periods);

// --- energy arbitrage -------------------------------------------------------

enum class CycleOrdering {
    AnyOrder,              // charge and discharge hours picked independently
    ChargeBeforeDischarge  // optional stricter schedule
};

struct ArbitrageOptions {
    double discharge_mwh{1.0};
    CycleOrdering ordering{CycleOrdering::AnyOrder};
};

struct ArbitrageDay {
    double payoff;
    Hour charge_hour;
    Hour discharge_hour;
};

/// One charge/discharge cycle per day at the best prices with perfect foresight.
/// Throws IncompleteDay for an incomplete block.
ArbitrageDay arbitrage_daily_payoff(const DailyPriceBlock& block, const BatterySpec& spec,
                                    const ArbitrageOptions& options = {});

struct PayoffRun {
    PayoffSeries series;
    std::size_t total_periods;    // T: every period of the requested span
    std::size_t skipped_periods;  // periods in the span without a payoff

    std::size_t pput() const { return ppu_time(series); }
    double ppur() const { return ppu_rate(series, total_periods); }
};

/// Daily arbitrage payoffs over a span. Incomplete or absent days are skipped
/// but still count towards T. Throws WrongKind / MissingData.
PayoffRun evaluate_arbitrage(const PriceSeries& day_ahead, const DateRange& span,
                             const BatterySpec& spec, const ArbitrageOptions& options = {},
                             DayGrouping grouping = {});

// --- frequency containment reserve -----------------------------------------

/// Hourly reserve payoff for `capacity_mw` of capacity. Paid energy legs use the
/// same-hour spot price; throws UnpricedEnergyLeg if one is needed but absent.
double fcr_hourly_payoff(double capacity_price, std::optional<double> spot_price,
                         const ServiceEnergyProfile& profile, const ServiceMarketConfig& config,
                         const BatterySpec& spec, double capacity_mw = 1.0);

struct FcrOptions {
    double capacity_mw{1.0};
    double balance_tolerance{kBalanceTolerance};
};

/// Hourly reserve payoffs over a span. Hours lacking a capacity price, or a spot
/// price when the config pays energy legs, are skipped but count towards T.
PayoffRun evaluate_fcr(const PriceSeries& capacity, const PriceSeries* spot,
                       const DateRange& span, const ServiceEnergyProfile& profile,
                       const ServiceMarketConfig& config, const BatterySpec& spec,
                       const FcrOptions& options = {}, UtcOffset offset = {});

std::string to_csv(const PayoffSeries& series);
std::string to_json(const PayoffSeries& series);

}  // namespace bessu
