#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bessu {

/// Economic parameters of a battery. Wear cost is charged per MWh delivered.
class BatterySpec {
public:
    BatterySpec(double wear_cost_eur_mwh, double round_trip_efficiency, double opex_eur = 0.0);

    double wear_cost() const { return wear_cost_; }
    double efficiency() const { return efficiency_; }
    double opex() const { return opex_; }

    BatterySpec with_wear_cost(double wear_cost_eur_mwh) const;

private:
    double wear_cost_;
    double efficiency_;
    double opex_;
};

inline constexpr double kDefaultEfficiency = 0.85;

/// Wear cost per delivered MWh from battery capex (EUR/kWh) and equivalent full cycles.
double wear_cost_from_capex(double capex_eur_kwh, double cycle_life);

enum class ReserveService { FCR, FCR_N };

std::string_view to_string(ReserveService service);
std::optional<ReserveService> parse_reserve_service(std::string_view text);

/// Expected energy per MW of reserve capacity per hour (MWh/MW/h).
struct ServiceEnergyProfile {
    std::string name;
    ReserveService service{ReserveService::FCR};
    double service_discharge{0.0};    // upward regulation
    double service_charge{0.0};       // downward regulation
    double balancing_discharge{0.0};
    double balancing_charge{0.0};
    double efficiency{kDefaultEfficiency};
    std::string provenance;

    double delivered() const { return service_discharge + balancing_discharge; }
    double charged() const { return service_charge + balancing_charge; }
};

inline constexpr double kBalanceTolerance = 0.001;

struct BalanceReport {
    double residual;  // delivered - efficiency * charged
    double tolerance;
    bool passed;
};

BalanceReport check_energy_balance(const ServiceEnergyProfile& profile,
                                   double tolerance = kBalanceTolerance);

/// Throws std::invalid_argument for negative energies or efficiency outside (0, 1].
void validate_profile(const ServiceEnergyProfile& profile);

const std::vector<ServiceEnergyProfile>& builtin_profiles();
std::optional<ServiceEnergyProfile> find_builtin_profile(std::string_view name);

/// Reads `service,E_sd,E_sc,E_bd,E_bc,eta,provenance` rows. Profiles are named
/// after the file stem, with a `:<row>` suffix when the file holds several.
std::vector<ServiceEnergyProfile> load_profiles_csv(const std::filesystem::path& path);

/// Builtin name or path to a profile CSV (first row used).
ServiceEnergyProfile resolve_profile(const std::string& name_or_path);

enum class EnergyPriceSource { DayAheadSpot, None };

/// Which legs of a reserve service are remunerated.
struct ServiceMarketConfig {
    bool capacity_paid{true};
    bool service_energy_paid{false};
    bool balancing_energy_paid{false};
    EnergyPriceSource energy_price_source{EnergyPriceSource::None};

    bool needs_energy_price() const { return service_energy_paid || balancing_energy_paid; }
    /// Throws std::invalid_argument when a paid leg has no price source.
    void validate() const;
};

/// Reserve market design of one zone, with the profile used for its energy terms.
struct MarketPreset {
    std::string name;  // e.g. "FR-FCR"
    std::string zone;
    ReserveService service;
    bool remunerable;
    ServiceMarketConfig config;
    std::string default_profile;
    std::string note;
};

const std::vector<MarketPreset>& builtin_presets();
std::optional<MarketPreset> find_preset(std::string_view name);
/// Preset covering a zone for a service (NO1..NO5 map to the NO preset).
std::optional<MarketPreset> preset_for_zone(std::string_view zone, ReserveService service);

}  // namespace bessu
