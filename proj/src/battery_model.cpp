#include "bessu/battery_model.hpp"

#include "bessu/error.hpp"
#include "text.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace bessu {

BatterySpec::BatterySpec(double wear_cost_eur_mwh, double round_trip_efficiency, double opex_eur)
    : wear_cost_(wear_cost_eur_mwh), efficiency_(round_trip_efficiency), opex_(opex_eur)
{
    if (!std::isfinite(wear_cost_) || wear_cost_ < 0.0)
        throw std::invalid_argument("wear cost must be a non-negative number");
    if (!(efficiency_ > 0.0 && efficiency_ <= 1.0))
        throw std::invalid_argument("round-trip efficiency must lie in (0, 1]");
    if (!std::isfinite(opex_) || opex_ < 0.0)
        throw std::invalid_argument("opex must be a non-negative number");
}

BatterySpec BatterySpec::with_wear_cost(double wear_cost_eur_mwh) const
{
    return {wear_cost_eur_mwh, efficiency_, opex_};
}

double wear_cost_from_capex(double capex_eur_kwh, double cycle_life)
{
    if (!(cycle_life > 0.0)) throw NonPositiveCycleLife();
    if (!(capex_eur_kwh >= 0.0)) throw std::invalid_argument("capex must be non-negative");
    // EUR/kWh per cycle -> EUR/MWh
    return capex_eur_kwh * 1000.0 / cycle_life;
}

std::string_view to_string(ReserveService service)
{
    return service == ReserveService::FCR ? "FCR" : "FCR-N";
}

std::optional<ReserveService> parse_reserve_service(std::string_view s)
{
    auto t = text::to_lower(text::trim(s));
    if (t == "fcr") return ReserveService::FCR;
    if (t == "fcr-n" || t == "fcr_n" || t == "fcrn") return ReserveService::FCR_N;
    return std::nullopt;
}

BalanceReport check_energy_balance(const ServiceEnergyProfile& profile, double tolerance)
{
    // Quantized to 1e-12 MWh; profile energies carry far fewer digits than that.
    double residual = std::round((profile.delivered() - profile.efficiency * profile.charged()) * 1e12) / 1e12 + 0.0;
    return {residual, tolerance, std::abs(residual) <= tolerance};
}

void validate_profile(const ServiceEnergyProfile& p)
{
    for (double e : {p.service_discharge, p.service_charge, p.balancing_discharge, p.balancing_charge})
        if (!std::isfinite(e) || e < 0.0)
            throw std::invalid_argument("profile '" + p.name + "' has a negative energy");
    if (!(p.efficiency > 0.0 && p.efficiency <= 1.0))
        throw std::invalid_argument("profile '" + p.name + "' efficiency must lie in (0, 1]");
}

const std::vector<ServiceEnergyProfile>& builtin_profiles()
{
    // Expected MWh per MW of reserve per hour.
    static const std::vector<ServiceEnergyProfile> profiles{
        {"france-2019", ReserveService::FCR, 0.056, 0.057, 0.026, 0.040, 0.850,
         "France FCR hourly operational data, 2019"},
        {"france-2020", ReserveService::FCR, 0.051, 0.052, 0.022, 0.035, 0.850,
         "France FCR hourly operational data, 2020"},
        {"france-2021", ReserveService::FCR, 0.054, 0.051, 0.020, 0.036, 0.850,
         "France FCR hourly operational data, 2021 Jan-Sep"},
        {"germany-2014", ReserveService::FCR, 0.035, 0.036, 0.019, 0.033, 0.776,
         "Germany 2014, simulated 5 MW BESS (Thien et al. 2017)"},
        {"france-2019-2021", ReserveService::FCR, 0.054, 0.053, 0.023, 0.037, 0.850,
         "France FCR 2019 to Sep 2021; default for FR and DE"},
        {"finland-2021", ReserveService::FCR_N, 0.091, 0.093, 0.079, 0.107, 0.850,
         "Finland FCR-N hourly operational data, 2021 Jan-Sep; default for DK2 and NO"},
    };
    return profiles;
}

std::optional<ServiceEnergyProfile> find_builtin_profile(std::string_view name)
{
    for (const auto& p : builtin_profiles())
        if (p.name == name) return p;
    return std::nullopt;
}

std::vector<ServiceEnergyProfile> load_profiles_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw FileNotFound(path.string());
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<ServiceEnergyProfile> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        auto f = text::split_record(line);
        if (!header_seen) {
            header_seen = true;
            if (f.size() < 6 || text::to_lower(text::trim(f[0])) != "service")
                throw MalformedRow(lineno, "expected header service,E_sd,E_sc,E_bd,E_bc,eta,provenance");
            continue;
        }
        if (f.size() < 6) throw MalformedRow(lineno, "expected 7 fields");
        ServiceEnergyProfile p;
        auto service = parse_reserve_service(f[0]);
        if (!service) throw MalformedRow(lineno, "unknown service '" + f[0] + "'");
        p.service = *service;
        double* targets[] = {&p.service_discharge, &p.service_charge, &p.balancing_discharge,
                             &p.balancing_charge, &p.efficiency};
        for (std::size_t i = 0; i < 5; ++i) {
            auto v = text::parse_double(f[i + 1]);
            if (!v) throw MalformedRow(lineno, "unparseable number '" + f[i + 1] + "'");
            *targets[i] = *v;
        }
        p.provenance = f.size() > 6 ? std::string(text::trim(f[6])) : "";
        p.name = path.stem().string() + ":" + std::to_string(out.size() + 1);
        try {
            validate_profile(p);
        } catch (const std::invalid_argument& e) {
            throw MalformedRow(lineno, e.what());
        }
        out.push_back(std::move(p));
    }
    if (out.size() == 1) out.front().name = path.stem().string();
    return out;
}

ServiceEnergyProfile resolve_profile(const std::string& name_or_path)
{
    if (auto p = find_builtin_profile(name_or_path)) return *p;
    if (!std::filesystem::exists(name_or_path))
        throw std::invalid_argument("unknown profile '" + name_or_path +
                                    "' (not a builtin name or an existing file)");
    auto profiles = load_profiles_csv(name_or_path);
    if (profiles.empty()) throw DataError("profile file " + name_or_path + " has no rows");
    return profiles.front();
}

void ServiceMarketConfig::validate() const
{
    if (needs_energy_price() && energy_price_source == EnergyPriceSource::None)
        throw std::invalid_argument("paid energy legs need an energy price source");
}

const std::vector<MarketPreset>& builtin_presets()
{
    using S = ReserveService;
    constexpr auto spot = EnergyPriceSource::DayAheadSpot;
    static const std::vector<MarketPreset> presets{
        {"FR-FCR", "FR", S::FCR, true, {true, true, true, spot}, "france-2019-2021",
         "capacity payment; energy settled at the reference spot price"},
        {"DE-FCR", "DE-LU", S::FCR, true, {true, false, true, spot}, "france-2019-2021",
         "capacity payment only; balancing energy traded at spot"},
        {"DK2-FCR-N", "DK2", S::FCR_N, true, {true, true, true, spot}, "finland-2021",
         "capacity payment; regulating power price approximated by spot"},
        {"NO-FCR-N", "NO", S::FCR_N, true, {true, true, true, spot}, "finland-2021",
         "capacity payment; regulating power price approximated by spot"},
        {"ES-FCR", "ES", S::FCR, false, {false, false, false, EnergyPriceSource::None}, "",
         "primary regulation is mandatory and not remunerated"},
        {"IT-FCR", "IT", S::FCR, false, {false, false, false, EnergyPriceSource::None}, "",
         "primary regulation is mandatory and not remunerated"},
    };
    return presets;
}

std::optional<MarketPreset> find_preset(std::string_view name)
{
    auto want = text::to_lower(name);
    for (const auto& p : builtin_presets())
        if (text::to_lower(p.name) == want) return p;
    return std::nullopt;
}

std::optional<MarketPreset> preset_for_zone(std::string_view zone, ReserveService service)
{
    for (const auto& p : builtin_presets()) {
        if (p.service != service) continue;
        if (zone == p.zone) return p;
        // Sub-zones share the national preset: NO1..NO5, IT-North, DE-LU vs DE.
        if (zone.size() > p.zone.size() && zone.substr(0, p.zone.size()) == p.zone) return p;
        if (p.zone.size() > zone.size() && p.zone.substr(0, zone.size()) == zone &&
            p.zone[zone.size()] == '-')
            return p;
    }
    return std::nullopt;
}

}  // namespace bessu
