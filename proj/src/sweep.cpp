#include "bessu/sweep.hpp"

#include "bessu/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bessu {

std::string_view to_string(Application app)
{
    switch (app) {
    case Application::Arbitrage: return "arbitrage";
    case Application::FCR: return "fcr";
    case Application::FCR_N: return "fcr-n";
    }
    return "?";
}

std::optional<Application> parse_application(std::string_view s)
{
    auto t = text::to_lower(text::trim(s));
    if (t == "arbitrage") return Application::Arbitrage;
    if (t == "fcr") return Application::FCR;
    if (t == "fcr-n" || t == "fcr_n" || t == "fcrn") return Application::FCR_N;
    return std::nullopt;
}

void SweepConfig::validate() const
{
    if (!(wear_min >= 0.0) || !(wear_max >= wear_min) || !std::isfinite(wear_max))
        throw std::invalid_argument("wear range must satisfy 0 <= min <= max");
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("sweep step must be positive");
    if (period.empty()) throw std::invalid_argument("sweep period is empty");
    std::set<std::string> seen;
    for (const auto& z : zones)
        if (!seen.insert(z.code).second) throw std::invalid_argument("zone " + z.code + " listed twice");
}

std::vector<double> SweepConfig::grid() const
{
    validate();
    auto n = static_cast<std::size_t>(std::floor((wear_max - wear_min) / step + 1e-9));
    std::vector<double> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out.push_back(wear_min + static_cast<double>(i) * step);
    return out;
}

namespace {

struct PreparedZone {
    const ZoneData* data;
    ServiceEnergyProfile profile;
    ServiceMarketConfig market;
};

PreparedZone prepare(const ZoneData& z, Application app)
{
    PreparedZone out{&z, {}, {}};
    if (app == Application::Arbitrage) {
        if (!z.day_ahead) throw MissingData(z.zone.code, "day_ahead_energy");
        return out;
    }
    if (!z.capacity) throw MissingData(z.zone.code, "reserve_capacity");
    auto service = app == Application::FCR ? ReserveService::FCR : ReserveService::FCR_N;
    std::optional<MarketPreset> preset;
    if (!z.profile || !z.market) {
        preset = preset_for_zone(z.zone.code, service);
        if (!preset) throw MissingData(z.zone.code, "reserve market preset");
        if (!preset->remunerable)
            throw DataError("zone " + z.zone.code + ": " + preset->note);
    }
    out.profile = z.profile ? *z.profile : *find_builtin_profile(preset->default_profile);
    out.market = z.market ? *z.market : preset->config;
    if (out.market.needs_energy_price() && !z.day_ahead)
        throw MissingData(z.zone.code, "day_ahead_energy");
    return out;
}

PayoffRun evaluate(const PreparedZone& z, Application app, const DateRange& period,
                   const BatterySpec& spec, const SweepOptions& options)
{
    if (app == Application::Arbitrage)
        return evaluate_arbitrage(*z.data->day_ahead, period, spec, options.arbitrage, options.grouping);
    const PriceSeries* spot = z.data->day_ahead ? &*z.data->day_ahead : nullptr;
    return evaluate_fcr(*z.data->capacity, spot, period, z.profile, z.market, spec, options.fcr,
                        options.grouping.offset);
}

}  // namespace

std::vector<UtilizationCurve> run_sweep(const SweepConfig& config, const std::vector<ZoneData>& data,
                                        const BatterySpec& spec_template, const SweepOptions& options)
{
    const auto grid = config.grid();

    std::vector<PreparedZone> zones;
    for (const auto& zone : config.zones) {
        auto it = std::find_if(data.begin(), data.end(),
                               [&](const ZoneData& d) { return d.zone.code == zone.code; });
        if (it == data.end())
            throw MissingData(zone.code, config.application == Application::Arbitrage
                                             ? "day_ahead_energy"
                                             : "reserve_capacity");
        zones.push_back(prepare(*it, config.application));
    }

    std::vector<UtilizationCurve> curves(zones.size());
    for (std::size_t z = 0; z < zones.size(); ++z) {
        curves[z].zone = zones[z].data->zone.code;
        curves[z].application = config.application;
        curves[z].period = config.period;
        curves[z].points.resize(grid.size());
    }

    // Each (zone, wear) cell is independent and written to its own slot.
    const std::size_t cells = zones.size() * grid.size();
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t cell = next++; cell < cells; cell = next++) {
            const std::size_t z = cell / grid.size();
            const std::size_t w = cell % grid.size();
            try {
                auto run = evaluate(zones[z], config.application, config.period,
                                    spec_template.with_wear_cost(grid[w]), options);
                curves[z].points[w] = {grid[w], run.ppur(), run.pput()};
                if (w == 0) {
                    curves[z].total_periods = run.total_periods;
                    curves[z].skipped_periods = run.skipped_periods;
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells;
            }
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return curves;
}

double ppur_at(const UtilizationCurve& curve, double wear_cost)
{
    const auto& pts = curve.points;
    if (pts.empty() || wear_cost < pts.front().wear_cost || wear_cost > pts.back().wear_cost)
        throw OutOfRange("wear cost " + text::format_double(wear_cost) + " outside the curve of " +
                         curve.zone);
    auto hi = std::lower_bound(pts.begin(), pts.end(), wear_cost,
                               [](const CurvePoint& p, double w) { return p.wear_cost < w; });
    if (hi->wear_cost == wear_cost) return hi->ppur;
    auto lo = hi - 1;
    double f = (wear_cost - lo->wear_cost) / (hi->wear_cost - lo->wear_cost);
    return lo->ppur + f * (hi->ppur - lo->ppur);
}

std::vector<ZoneRank> compare_zones(const std::vector<UtilizationCurve>& curves, double wear_cost)
{
    std::vector<ZoneRank> out;
    out.reserve(curves.size());
    for (const auto& c : curves) out.push_back({c.zone, ppur_at(c, wear_cost)});
    std::sort(out.begin(), out.end(), [](const ZoneRank& a, const ZoneRank& b) {
        if (a.ppur != b.ppur) return a.ppur > b.ppur;
        return a.zone < b.zone;
    });
    return out;
}

std::string curves_to_csv(const std::vector<UtilizationCurve>& curves)
{
    std::ostringstream out;
    out << "zone,application,wear_cost_eur_mwh,ppur\n";
    for (const auto& c : curves)
        for (const auto& p : c.points)
            out << c.zone << ',' << to_string(c.application) << ',' << text::format_double(p.wear_cost)
                << ',' << text::format_double(p.ppur) << '\n';
    return out.str();
}

std::string curves_to_json(const std::vector<UtilizationCurve>& curves)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : curves) {
        nlohmann::ordered_json j;
        j["zone"] = c.zone;
        j["application"] = to_string(c.application);
        j["period"] = {{"from", format_day(c.period.first)}, {"to", format_day(c.period.last)}};
        j["total_periods"] = c.total_periods;
        j["skipped_periods"] = c.skipped_periods;
        auto pts = nlohmann::ordered_json::array();
        for (const auto& p : c.points)
            pts.push_back({{"wear_cost_eur_mwh", p.wear_cost}, {"ppur", p.ppur}, {"pput", p.pput}});
        j["points"] = std::move(pts);
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string curve_to_dat(const UtilizationCurve& curve)
{
    std::ostringstream out;
    out << "# " << curve.zone << ' ' << to_string(curve.application) << ' '
        << format_day(curve.period.first) << ' ' << format_day(curve.period.last) << '\n'
        << "# wear_cost_eur_mwh ppur\n";
    for (const auto& p : curve.points)
        out << text::format_double(p.wear_cost) << ' ' << text::format_double(p.ppur) << '\n';
    return out.str();
}

}  // namespace bessu
