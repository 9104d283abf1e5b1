#include "bessu/payoff_engine.hpp"

#include "bessu/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bessu {

void GeneralPayoffInputs::validate() const
{
    if (!(capacity_mw >= 0.0)) throw std::invalid_argument("capacity must be non-negative");
    for (double e : {service_discharge, service_charge, balancing_discharge, balancing_charge})
        if (!(e >= 0.0)) throw std::invalid_argument("energies must be non-negative");
}

double PayoffTerms::payoff() const
{
    return std::max(net(), 0.0);
}

PayoffTerms payoff_terms(const GeneralPayoffInputs& in, const BatterySpec& spec)
{
    in.validate();
    PayoffTerms t{};
    t.remuneration = in.capacity_price * in.capacity_mw +
                     in.service_discharge_price * in.service_discharge -
                     in.service_charge_price * in.service_charge;
    t.balancing = in.balancing_discharge_price * in.balancing_discharge -
                  in.balancing_charge_price * in.balancing_charge;
    t.operating_cost =
        spec.wear_cost() * (in.service_discharge + in.balancing_discharge) + spec.opex();
    return t;
}

double general_payoff(const GeneralPayoffInputs& in, const BatterySpec& spec)
{
    return payoff_terms(in, spec).payoff();
}

void PayoffSeries::append(std::string period, double payoff)
{
    if (!std::isfinite(payoff) || payoff < 0.0)
        throw std::invalid_argument("payoff must be finite and non-negative");
    entries_.push_back({std::move(period), payoff, payoff > 0.0});
}

std::size_t ppu_time(const PayoffSeries& series)
{
    return static_cast<std::size_t>(std::count_if(series.entries().begin(), series.entries().end(),
                                                  [](const PayoffEntry& e) { return e.payoff > 0.0; }));
}

double ppu_rate(const PayoffSeries& series, std::size_t total_periods)
{
    if (total_periods == 0) throw ZeroTotalPeriods();
    if (total_periods < series.size())
        throw std::invalid_argument("total periods smaller than the payoff series");
    return static_cast<double>(ppu_time(series)) / static_cast<double>(total_periods);
}

// --- arbitrage ----------------------------------------------------------------

namespace {

void require_eur(const PriceSeries& s)
{
    if (s.zone().currency != "EUR") throw CurrencyMismatch(s.zone().currency, "EUR");
}

}  // namespace

ArbitrageDay arbitrage_daily_payoff(const DailyPriceBlock& block, const BatterySpec& spec,
                                    const ArbitrageOptions& options)
{
    if (block.incomplete || block.points.empty())
        throw IncompleteDay("day " + format_day(block.day) + " has only " +
                            std::to_string(block.points.size()) + " hours");
    if (!(options.discharge_mwh > 0.0))
        throw std::invalid_argument("discharged energy per cycle must be positive");

    const auto& pts = block.points;
    const double eta = spec.efficiency();
    std::size_t charge = 0;
    std::size_t discharge = 0;

    if (options.ordering == CycleOrdering::AnyOrder) {
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i].price > pts[discharge].price) discharge = i;
            if (pts[i].price < pts[charge].price) charge = i;
        }
    } else if (pts.size() > 1) {
        // Best spread with the charge hour strictly earlier than the discharge hour.
        std::size_t running_min = 0;
        discharge = 1;
        double best = pts[1].price - pts[0].price / eta;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i - 1].price < pts[running_min].price) running_min = i - 1;
            double spread = pts[i].price - pts[running_min].price / eta;
            if (spread > best) {
                best = spread;
                discharge = i;
                charge = running_min;
            }
        }
    } else {
        return {0.0, pts[0].time, pts[0].time};
    }

    // One cycle delivers E_sd after charging E_sd / eta.
    GeneralPayoffInputs in;
    in.service_discharge_price = pts[discharge].price;
    in.service_discharge = options.discharge_mwh;
    in.balancing_charge_price = pts[charge].price;
    in.balancing_charge = options.discharge_mwh / eta;
    return {general_payoff(in, spec), pts[charge].time, pts[discharge].time};
}

PayoffRun evaluate_arbitrage(const PriceSeries& day_ahead, const DateRange& span,
                             const BatterySpec& spec, const ArbitrageOptions& options,
                             DayGrouping grouping)
{
    if (day_ahead.kind() != PriceKind::DayAheadEnergy)
        throw WrongKind("arbitrage needs day-ahead energy prices");
    require_eur(day_ahead);
    if (span.empty()) throw std::invalid_argument("empty evaluation period");

    auto [from, to] = hour_bounds(span, grouping.offset);
    auto window = day_ahead.slice(from, to);
    if (window.empty()) throw MissingData(day_ahead.zone().code, "day_ahead_energy");

    auto blocks = group_by_day(window, grouping);
    std::map<Day, const DailyPriceBlock*> by_day;
    for (const auto& b : blocks) by_day.emplace(b.day, &b);

    PayoffRun run{PayoffSeries(PeriodKind::Daily), static_cast<std::size_t>(span.days()), 0};
    for (Day d = span.first; d <= span.last; d += std::chrono::days{1}) {
        auto it = by_day.find(d);
        if (it == by_day.end() || it->second->incomplete) {
            ++run.skipped_periods;
            continue;
        }
        run.series.append(format_day(d), arbitrage_daily_payoff(*it->second, spec, options).payoff);
    }
    return run;
}

// --- reserve ------------------------------------------------------------------

double fcr_hourly_payoff(double capacity_price, std::optional<double> spot_price,
                         const ServiceEnergyProfile& profile, const ServiceMarketConfig& config,
                         const BatterySpec& spec, double capacity_mw)
{
    if (!(capacity_mw > 0.0)) throw std::invalid_argument("reserve capacity must be positive");
    config.validate();
    if (config.needs_energy_price() && !spot_price)
        throw UnpricedEnergyLeg("a paid energy leg has no spot price for this hour");

    const double spot = spot_price.value_or(0.0);
    GeneralPayoffInputs in;
    in.capacity_price = config.capacity_paid ? capacity_price : 0.0;
    in.capacity_mw = capacity_mw;
    if (config.service_energy_paid) {
        in.service_discharge_price = spot;
        in.service_charge_price = spot;
    }
    if (config.balancing_energy_paid) {
        in.balancing_discharge_price = spot;
        in.balancing_charge_price = spot;
    }
    in.service_discharge = profile.service_discharge * capacity_mw;
    in.service_charge = profile.service_charge * capacity_mw;
    in.balancing_discharge = profile.balancing_discharge * capacity_mw;
    in.balancing_charge = profile.balancing_charge * capacity_mw;
    return general_payoff(in, spec);
}

PayoffRun evaluate_fcr(const PriceSeries& capacity, const PriceSeries* spot, const DateRange& span,
                       const ServiceEnergyProfile& profile, const ServiceMarketConfig& config,
                       const BatterySpec& spec, const FcrOptions& options, UtcOffset offset)
{
    if (capacity.kind() != PriceKind::ReserveCapacity)
        throw WrongKind("reserve payoff needs a capacity price series");
    require_eur(capacity);
    if (spot) {
        if (spot->kind() != PriceKind::DayAheadEnergy)
            throw WrongKind("spot series must hold day-ahead energy prices");
        require_eur(*spot);
    }
    validate_profile(profile);
    if (!check_energy_balance(profile, options.balance_tolerance).passed)
        throw std::invalid_argument("profile '" + profile.name + "' is not energy balanced");
    config.validate();
    if (span.empty()) throw std::invalid_argument("empty evaluation period");

    auto [from, to] = hour_bounds(span, offset);
    auto caps = capacity.slice(from, to);
    if (caps.empty()) throw MissingData(capacity.zone().code, "reserve_capacity");
    if (config.needs_energy_price() && (!spot || spot->slice(from, to).empty()))
        throw MissingData(capacity.zone().code, "day_ahead_energy");

    PayoffRun run{PayoffSeries(PeriodKind::Hourly), static_cast<std::size_t>((to - from).count()), 0};
    auto cap_it = caps.points().begin();
    for (Hour h = from; h < to; h += std::chrono::hours{1}) {
        while (cap_it != caps.points().end() && cap_it->time < h) ++cap_it;
        if (cap_it == caps.points().end() || cap_it->time != h) {
            ++run.skipped_periods;
            continue;
        }
        std::optional<double> spot_price;
        if (spot) spot_price = spot->at(h);
        if (config.needs_energy_price() && !spot_price) {
            ++run.skipped_periods;
            continue;
        }
        run.series.append(format_hour(h), fcr_hourly_payoff(cap_it->price, spot_price, profile, config,
                                                            spec, options.capacity_mw));
    }
    return run;
}

// --- export -------------------------------------------------------------------

std::string to_csv(const PayoffSeries& series)
{
    std::ostringstream out;
    out << "period,payoff_eur,profitable\n";
    for (const auto& e : series.entries())
        out << e.period << ',' << text::format_double(e.payoff) << ',' << (e.profitable ? 1 : 0) << '\n';
    return out.str();
}

std::string to_json(const PayoffSeries& series)
{
    nlohmann::ordered_json j;
    j["period_kind"] = series.kind() == PeriodKind::Hourly ? "hourly" : "daily";
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : series.entries())
        entries.push_back({{"period", e.period}, {"payoff_eur", e.payoff}, {"profitable", e.profitable}});
    j["entries"] = std::move(entries);
    return j.dump(2);
}

}  // namespace bessu
