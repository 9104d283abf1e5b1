#include "bessu/cli.hpp"

#include "bessu/battery_model.hpp"
#include "bessu/error.hpp"
#include "bessu/manifest.hpp"
#include "bessu/market_data.hpp"
#include "bessu/payoff_engine.hpp"
#include "bessu/sweep.hpp"
#include "text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

namespace bessu {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DataFlags {
    std::string schema;
    std::string zone;
    std::string from;
    std::string to;
    double utc_offset_hours{0.0};
    std::string currency_rate;
    std::string format{"csv"};
    std::string out{"runs"};
};

struct BatteryFlags {
    double efficiency{kDefaultEfficiency};
    double wear_cost{100.0};
    double opex{0.0};
};

void add_data_flags(CLI::App* cmd, DataFlags& f, bool with_zone = true)
{
    cmd->add_option("--schema", f.schema, "Adapter file mapping source columns to canonical ones");
    if (with_zone) cmd->add_option("--zone", f.zone, "Bidding zone code (overrides the file)");
    cmd->add_option("--from", f.from, "First day of the period (YYYY-MM-DD)");
    cmd->add_option("--to", f.to, "Last day of the period (YYYY-MM-DD)");
    cmd->add_option("--utc-offset", f.utc_offset_hours,
                    "Hours added to UTC to cut calendar days (default 0)");
    cmd->add_option("--currency-rate", f.currency_rate, "Conversion to EUR, FROM:TO:RATE")
        ->default_str("GBP:EUR:1.12 for GB");
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "Output root directory")->capture_default_str();
}

void add_battery_flags(CLI::App* cmd, BatteryFlags& b, bool with_wear = true)
{
    cmd->add_option("--efficiency", b.efficiency, "Round-trip efficiency in (0, 1]")
        ->capture_default_str();
    if (with_wear)
        cmd->add_option("--wear-cost", b.wear_cost, "Battery wear cost, EUR per MWh delivered")
            ->capture_default_str();
    cmd->add_option("--opex", b.opex, "Other marginal operating cost per period, EUR")
        ->capture_default_str();
}

UtcOffset offset_of(const DataFlags& f)
{
    return {std::chrono::minutes{std::lround(f.utc_offset_hours * 60.0)}};
}

Day require_day(const std::string& text, const char* flag)
{
    auto d = parse_day(text);
    if (!d) throw UsageError(std::string(flag) + " expects YYYY-MM-DD, got '" + text + "'");
    return *d;
}

CsvSchema schema_of(const DataFlags& f)
{
    return f.schema.empty() ? CsvSchema::canonical() : CsvSchema::load(f.schema);
}

/// Loads a series strictly and brings it to EUR.
PriceSeries load_series(const fs::path& path, const DataFlags& f, std::optional<PriceKind> kind,
                        RunManifest& manifest)
{
    std::optional<BiddingZone> zone;
    if (!f.zone.empty()) zone = BiddingZone::with_default_currency(f.zone);
    auto series = parse_price_csv(path, schema_of(f), zone, kind);
    manifest.add_input(path);
    if (series.zone().currency != "EUR") {
        const auto& currency = series.zone().currency;
        if (f.currency_rate.empty() && currency != "GBP")
            throw UsageError(path.string() + " is priced in " + currency + "; pass --currency-rate " +
                             currency + ":EUR:<rate>");
        auto rate = f.currency_rate.empty() ? CurrencyRate("GBP", "EUR", kDefaultGbpToEur)
                                            : CurrencyRate::parse(f.currency_rate);
        if (rate.to != "EUR") throw UsageError("--currency-rate must convert to EUR");
        series = convert_currency(series, rate);
    }
    return series;
}

DateRange resolve_span(const DataFlags& f, const std::vector<const PriceSeries*>& series)
{
    auto offset = offset_of(f);
    std::optional<Day> first, last;
    if (!f.from.empty()) first = require_day(f.from, "--from");
    if (!f.to.empty()) last = require_day(f.to, "--to");
    if (!first || !last) {
        std::optional<Day> lo, hi;
        for (const auto* s : series) {
            if (!s || s->empty()) continue;
            auto a = offset.local_day(s->points().front().time);
            auto b = offset.local_day(s->points().back().time);
            lo = lo ? std::min(*lo, a) : a;
            hi = hi ? std::max(*hi, b) : b;
        }
        if (!lo) {
            std::string zone = series.empty() || !series.front() ? "?" : series.front()->zone().code;
            throw MissingData(zone, "price");
        }
        if (!first) first = lo;
        if (!last) last = hi;
    }
    if (*last < *first) throw UsageError("--to is before --from");
    return {*first, *last};
}

Json coverage_summary(const PriceSeries& s, const DateRange& span, UtcOffset offset)
{
    auto report = validate_series(s, span, offset);
    return {{"zone", s.zone().code},
            {"kind", to_string(s.kind())},
            {"hours_present", report.hours_present},
            {"hours_expected", report.hours_expected},
            {"gap_count", report.gaps.size()},
            {"coverage_fraction", report.coverage_fraction}};
}

Json span_json(const DateRange& span)
{
    return {{"from", format_day(span.first)}, {"to", format_day(span.last)}};
}

fs::path open_run_dir(const DataFlags& f, const RunManifest& manifest)
{
    fs::path dir = fs::path(f.out) / manifest.run_id();
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << body;
}

void finish_run(const fs::path& dir, RunManifest& manifest)
{
    manifest.timestamp = utc_now_iso();
    write_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
}

void write_payoffs(const fs::path& dir, const DataFlags& f, const PayoffSeries& series,
                   const RunManifest& manifest)
{
    if (f.format == "json") {
        auto j = Json::parse(to_json(series));
        Json wrapped;
        wrapped["manifest"] = manifest.run_id();
        wrapped.update(j);
        write_file(dir / "payoffs.json", wrapped.dump(2) + "\n");
    } else {
        write_file(dir / "payoffs.csv", to_csv(series));
    }
}

Json battery_json(const BatteryFlags& b)
{
    return {{"efficiency", b.efficiency}, {"wear_cost_eur_mwh", b.wear_cost}, {"opex_eur", b.opex}};
}

Json data_json(const DataFlags& f)
{
    return {{"schema", f.schema},         {"zone", f.zone},
            {"from", f.from},             {"to", f.to},
            {"utc_offset_hours", f.utc_offset_hours},
            {"currency_rate", f.currency_rate}, {"format", f.format}};
}

void print_summary(std::ostream& out, const std::string& zone, const DateRange& span,
                   const PayoffRun& run, const char* unit, const fs::path& dir)
{
    out << "zone " << zone << "  period " << format_day(span.first) << ".." << format_day(span.last)
        << '\n'
        << "periods " << run.total_periods << " " << unit << "  evaluated " << run.series.size()
        << "  skipped " << run.skipped_periods << '\n'
        << "PPUT " << run.pput() << '\n'
        << "PPUR " << std::fixed << std::setprecision(6) << run.ppur() << std::defaultfloat << '\n'
        << "output " << dir.string() << '\n';
}

Json summary_json(const RunManifest& m, const std::string& zone, const std::string& application,
                  const DateRange& span, const PayoffRun& run)
{
    return {{"manifest", m.run_id()},          {"zone", zone},
            {"application", application},      {"period", span_json(span)},
            {"total_periods", run.total_periods}, {"evaluated_periods", run.series.size()},
            {"skipped_periods", run.skipped_periods}, {"pput", run.pput()},
            {"ppur", run.ppur()}};
}

// --- validate -------------------------------------------------------------------

struct ValidateArgs {
    DataFlags data;
    std::vector<std::string> inputs;
    std::vector<std::string> prices;
    std::vector<std::string> capacity;
};

void collect_csvs(const std::string& input, std::vector<fs::path>& files)
{
    fs::path p(input);
    if (fs::is_directory(p)) {
        std::vector<fs::path> found;
        for (const auto& e : fs::directory_iterator(p))
            if (e.is_regular_file() && text::to_lower(e.path().extension().string()) == ".csv")
                found.push_back(e.path());
        std::sort(found.begin(), found.end());
        files.insert(files.end(), found.begin(), found.end());
    } else {
        files.push_back(p);
    }
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err)
{
    std::vector<std::pair<fs::path, std::optional<PriceKind>>> files;
    {
        std::vector<fs::path> tmp;
        for (const auto& i : a.inputs) collect_csvs(i, tmp);
        for (auto& p : tmp) files.emplace_back(p, std::nullopt);
        tmp.clear();
        for (const auto& i : a.prices) collect_csvs(i, tmp);
        for (auto& p : tmp) files.emplace_back(p, PriceKind::DayAheadEnergy);
        tmp.clear();
        for (const auto& i : a.capacity) collect_csvs(i, tmp);
        for (auto& p : tmp) files.emplace_back(p, PriceKind::ReserveCapacity);
    }
    if (files.empty()) {
        err << "error: no input series\n";
        return kExitDataError;
    }

    RunManifest manifest;
    manifest.command = "validate";
    manifest.config = data_json(a.data);
    auto schema = schema_of(a.data);
    auto offset = offset_of(a.data);

    std::vector<std::pair<std::string, CoverageReport>> reports;
    bool ok = true;
    for (const auto& [path, kind] : files) {
        try {
            std::optional<BiddingZone> zone;
            if (!a.data.zone.empty()) zone = BiddingZone::with_default_currency(a.data.zone);
            auto result = read_price_csv(path, schema, zone, kind);
            manifest.add_input(path);
            for (const auto& r : result.rejected) err << path.string() << ":" << r.line << ": " << r.reason << '\n';
            if (!result.rejected.empty()) ok = false;
            if (result.series.empty() && (a.data.from.empty() || a.data.to.empty())) {
                err << path.string() << ": no price rows\n";
                ok = false;
                continue;
            }
            auto span = resolve_span(a.data, {&result.series});
            auto report = validate_series(result.series, span, offset);
            manifest.coverage.push_back(coverage_summary(result.series, span, offset));
            out << path.string() << ": " << result.series.zone().code << ' '
                << to_string(result.series.kind()) << ' ' << report.hours_present << '/'
                << report.hours_expected << " hours, " << report.gaps.size() << " gap(s), "
                << result.rejected.size() << " rejected row(s)\n";
            reports.emplace_back(path.stem().string(), std::move(report));
        } catch (const DataError& e) {
            err << path.string() << ": " << e.what() << '\n';
            ok = false;
        }
    }

    if (!reports.empty()) {
        auto dir = open_run_dir(a.data, manifest);
        for (const auto& [stem, report] : reports) {
            auto j = Json::parse(to_json(report));
            Json wrapped{{"manifest", manifest.run_id()}};
            wrapped.update(j);
            write_file(dir / ("coverage_" + stem + ".json"), wrapped.dump(2) + "\n");
        }
        finish_run(dir, manifest);
        out << "output " << dir.string() << '\n';
    }
    return ok ? kExitOk : kExitDataError;
}

// --- arbitrage ------------------------------------------------------------------

struct ArbitrageArgs {
    DataFlags data;
    BatteryFlags battery;
    std::string prices;
    double energy{1.0};
    bool strict_ordering{false};
    int min_hours{20};
};

int cmd_arbitrage(const ArbitrageArgs& a, std::ostream& out)
{
    BatterySpec spec(a.battery.wear_cost, a.battery.efficiency, a.battery.opex);
    if (a.min_hours < 1 || a.min_hours > 24) throw UsageError("--min-hours must be in 1..24");

    RunManifest manifest;
    manifest.command = "arbitrage";
    auto series = load_series(a.prices, a.data, PriceKind::DayAheadEnergy, manifest);
    auto span = resolve_span(a.data, {&series});
    auto offset = offset_of(a.data);

    ArbitrageOptions opts{a.energy, a.strict_ordering ? CycleOrdering::ChargeBeforeDischarge
                                                      : CycleOrdering::AnyOrder};
    DayGrouping grouping{offset, a.min_hours};
    manifest.config = data_json(a.data);
    manifest.config["battery"] = battery_json(a.battery);
    manifest.config["discharge_mwh"] = a.energy;
    manifest.config["strict_ordering"] = a.strict_ordering;
    manifest.config["min_hours"] = a.min_hours;
    manifest.config["period"] = span_json(span);
    manifest.coverage.push_back(coverage_summary(series, span, offset));

    auto run = evaluate_arbitrage(series, span, spec, opts, grouping);

    auto dir = open_run_dir(a.data, manifest);
    write_payoffs(dir, a.data, run.series, manifest);
    write_file(dir / "summary.json",
               summary_json(manifest, series.zone().code, "arbitrage", span, run).dump(2) + "\n");
    finish_run(dir, manifest);
    print_summary(out, series.zone().code, span, run, "days", dir);
    return kExitOk;
}

// --- fcr ------------------------------------------------------------------------

struct FcrArgs {
    DataFlags data;
    BatteryFlags battery;
    std::string capacity_prices;
    std::string prices;
    std::string preset;
    std::string service;
    std::string profile;
    double capacity_mw{1.0};
};

MarketPreset pick_preset(const std::string& name, const std::string& zone, std::optional<ReserveService> service)
{
    if (!name.empty()) {
        auto p = find_preset(name);
        if (!p) throw UsageError("unknown preset '" + name + "' (see `profiles list`)");
        return *p;
    }
    for (auto s : {ReserveService::FCR, ReserveService::FCR_N}) {
        if (service && *service != s) continue;
        if (auto p = preset_for_zone(zone, s)) return *p;
    }
    throw UsageError("no reserve preset for zone '" + zone + "'; pass --preset");
}

int cmd_fcr(const FcrArgs& a, std::ostream& out)
{
    BatterySpec spec(a.battery.wear_cost, a.battery.efficiency, a.battery.opex);
    std::optional<ReserveService> service;
    if (!a.service.empty()) {
        service = parse_reserve_service(a.service);
        if (!service) throw UsageError("--service must be fcr or fcr-n");
    }

    RunManifest manifest;
    manifest.command = "fcr";

    // A preset named explicitly is checked before any data is read.
    std::optional<MarketPreset> preset;
    if (!a.preset.empty() || !a.data.zone.empty()) preset = pick_preset(a.preset, a.data.zone, service);
    if (preset && !preset->remunerable)
        throw DataError(preset->name + ": " + preset->note + "; no reserve payoff to evaluate");

    auto capacity = load_series(a.capacity_prices, a.data, PriceKind::ReserveCapacity, manifest);
    if (!preset) preset = pick_preset("", capacity.zone().code, service);
    if (!preset->remunerable)
        throw DataError(preset->name + ": " + preset->note + "; no reserve payoff to evaluate");

    std::optional<PriceSeries> spot;
    if (!a.prices.empty()) spot = load_series(a.prices, a.data, PriceKind::DayAheadEnergy, manifest);
    if (preset->config.needs_energy_price() && !spot)
        throw MissingData(capacity.zone().code, "day_ahead_energy (--prices)");

    auto profile = resolve_profile(a.profile.empty() ? preset->default_profile : a.profile);
    if (!a.profile.empty() && fs::exists(a.profile)) manifest.add_input(a.profile);

    auto span = resolve_span(a.data, {&capacity});
    auto offset = offset_of(a.data);
    manifest.config = data_json(a.data);
    manifest.config["battery"] = battery_json(a.battery);
    manifest.config["preset"] = preset->name;
    manifest.config["profile"] = profile.name;
    manifest.config["capacity_mw"] = a.capacity_mw;
    manifest.config["period"] = span_json(span);
    manifest.coverage.push_back(coverage_summary(capacity, span, offset));
    if (spot) manifest.coverage.push_back(coverage_summary(*spot, span, offset));

    FcrOptions opts{a.capacity_mw, kBalanceTolerance};
    auto run = evaluate_fcr(capacity, spot ? &*spot : nullptr, span, profile, preset->config, spec,
                            opts, offset);

    auto dir = open_run_dir(a.data, manifest);
    write_payoffs(dir, a.data, run.series, manifest);
    auto summary = summary_json(manifest, capacity.zone().code, std::string(to_string(preset->service)),
                                span, run);
    summary["preset"] = preset->name;
    summary["profile"] = profile.name;
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    finish_run(dir, manifest);
    out << "preset " << preset->name << "  profile " << profile.name << '\n';
    print_summary(out, capacity.zone().code, span, run, "hours", dir);
    return kExitOk;
}

// --- sweep ----------------------------------------------------------------------

struct SweepArgs {
    DataFlags data;
    BatteryFlags battery;
    std::string application{"arbitrage"};
    std::vector<std::string> prices;
    std::vector<std::string> capacity;
    std::vector<std::string> zones;
    std::string profile;
    double wear_min{0.0};
    double wear_max{100.0};
    double wear_step{1.0};
    double energy{1.0};
    double capacity_mw{1.0};
    bool strict_ordering{false};
    int min_hours{20};
    unsigned threads{0};
    bool plot_data{false};
    std::optional<double> rank_at;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out)
{
    auto app = parse_application(a.application);
    if (!app) throw UsageError("--application must be arbitrage, fcr, or fcr-n");
    BatterySpec spec(a.wear_min, a.battery.efficiency, a.battery.opex);
    if (a.min_hours < 1 || a.min_hours > 24) throw UsageError("--min-hours must be in 1..24");

    RunManifest manifest;
    manifest.command = "sweep";

    // Zone codes come from the files; --zone selects and orders them.
    DataFlags per_file = a.data;
    per_file.zone.clear();
    std::map<std::string, ZoneData> by_zone;
    auto add = [&](const std::string& path, PriceKind kind) {
        std::vector<fs::path> files;
        collect_csvs(path, files);
        bool from_dir = fs::is_directory(path);
        for (const auto& f : files) {
            // A directory may mix energy and capacity files; take the matching ones.
            if (from_dir && parse_price_csv(f, schema_of(per_file)).kind() != kind) continue;
            auto s = load_series(f, per_file, kind, manifest);
            auto& zd = by_zone[s.zone().code];
            zd.zone = s.zone();
            auto& slot = kind == PriceKind::DayAheadEnergy ? zd.day_ahead : zd.capacity;
            if (slot) throw DataError("two " + std::string(to_string(kind)) + " series for zone " + s.zone().code);
            slot = std::move(s);
        }
    };
    for (const auto& p : a.prices) add(p, PriceKind::DayAheadEnergy);
    for (const auto& p : a.capacity) add(p, PriceKind::ReserveCapacity);
    if (by_zone.empty()) throw MissingData("*", "input series");

    std::vector<std::string> codes = a.zones;
    if (codes.empty()) {
        for (const auto& [code, zd] : by_zone) {
            bool usable = *app == Application::Arbitrage ? zd.day_ahead.has_value() : zd.capacity.has_value();
            if (usable) codes.push_back(code);
        }
        if (codes.empty())
            throw MissingData("*", *app == Application::Arbitrage ? "day_ahead_energy" : "reserve_capacity");
    }

    std::optional<ServiceEnergyProfile> profile;
    if (!a.profile.empty()) {
        profile = resolve_profile(a.profile);
        if (fs::exists(a.profile)) manifest.add_input(a.profile);
    }

    SweepConfig config;
    config.application = *app;
    config.wear_min = a.wear_min;
    config.wear_max = a.wear_max;
    config.step = a.wear_step;
    std::vector<ZoneData> data;
    std::vector<const PriceSeries*> span_sources;
    for (const auto& code : codes) {
        auto it = by_zone.find(code);
        if (it == by_zone.end())
            throw MissingData(code, *app == Application::Arbitrage ? "day_ahead_energy" : "reserve_capacity");
        config.zones.push_back(it->second.zone);
        if (profile) it->second.profile = profile;
        data.push_back(it->second);
        const auto& main = *app == Application::Arbitrage ? it->second.day_ahead : it->second.capacity;
        if (main) span_sources.push_back(&*main);
    }
    config.period = resolve_span(a.data, span_sources);

    SweepOptions options;
    options.arbitrage = {a.energy, a.strict_ordering ? CycleOrdering::ChargeBeforeDischarge
                                                     : CycleOrdering::AnyOrder};
    options.fcr = {a.capacity_mw, kBalanceTolerance};
    options.grouping = {offset_of(a.data), a.min_hours};
    options.threads = a.threads;

    manifest.config = data_json(a.data);
    manifest.config["application"] = to_string(*app);
    manifest.config["zones"] = codes;
    manifest.config["battery"] = {{"efficiency", a.battery.efficiency}, {"opex_eur", a.battery.opex}};
    manifest.config["wear"] = {{"min", a.wear_min}, {"max", a.wear_max}, {"step", a.wear_step}};
    manifest.config["discharge_mwh"] = a.energy;
    manifest.config["capacity_mw"] = a.capacity_mw;
    manifest.config["strict_ordering"] = a.strict_ordering;
    manifest.config["min_hours"] = a.min_hours;
    manifest.config["profile"] = a.profile;
    manifest.config["period"] = span_json(config.period);
    for (const auto* s : span_sources)
        manifest.coverage.push_back(coverage_summary(*s, config.period, options.grouping.offset));

    auto curves = run_sweep(config, data, spec, options);

    auto dir = open_run_dir(a.data, manifest);
    if (a.data.format == "json") {
        Json j{{"manifest", manifest.run_id()}};
        j["curves"] = Json::parse(curves_to_json(curves));
        write_file(dir / "curves.json", j.dump(2) + "\n");
    } else {
        write_file(dir / "curves.csv", curves_to_csv(curves));
    }
    if (a.plot_data)
        for (const auto& c : curves) write_file(dir / (c.zone + ".dat"), curve_to_dat(c));
    finish_run(dir, manifest);

    out << "application " << to_string(*app) << "  period " << format_day(config.period.first) << ".."
        << format_day(config.period.last) << "  grid " << config.grid().size() << " points\n";
    for (const auto& c : curves) {
        out << c.zone << "  periods " << c.total_periods << "  skipped " << c.skipped_periods
            << "  ppur@" << text::format_double(c.points.front().wear_cost) << " "
            << std::fixed << std::setprecision(4) << c.points.front().ppur << "  ppur@"
            << std::defaultfloat << text::format_double(c.points.back().wear_cost) << " " << std::fixed
            << std::setprecision(4) << c.points.back().ppur << std::defaultfloat << '\n';
    }
    if (a.rank_at) {
        out << "ranking at " << text::format_double(*a.rank_at) << " EUR/MWh:\n";
        int i = 1;
        for (const auto& r : compare_zones(curves, *a.rank_at))
            out << "  " << i++ << ". " << r.zone << ' ' << std::fixed << std::setprecision(4) << r.ppur
                << std::defaultfloat << '\n';
    }
    out << "output " << dir.string() << '\n';
    return kExitOk;
}

// --- profiles -------------------------------------------------------------------

int cmd_profiles_list(std::ostream& out)
{
    out << "profiles (MWh per MW per hour):\n";
    out << "  name              service  E_sd   E_sc   E_bd   E_bc   eta    residual\n";
    for (const auto& p : builtin_profiles()) {
        auto bal = check_energy_balance(p);
        out << "  " << std::left << std::setw(18) << p.name << std::setw(9) << to_string(p.service)
            << std::right << std::fixed << std::setprecision(3) << p.service_discharge << "  "
            << p.service_charge << "  " << p.balancing_discharge << "  " << p.balancing_charge << "  "
            << p.efficiency << "  " << std::setprecision(4) << bal.residual << std::defaultfloat
            << "\n      " << p.provenance << '\n';
    }
    out << "presets:\n";
    for (const auto& p : builtin_presets()) {
        out << "  " << std::left << std::setw(11) << p.name << std::right << " zone " << p.zone
            << "  capacity " << (p.config.capacity_paid ? "paid" : "unpaid") << "  service energy "
            << (p.config.service_energy_paid ? "spot" : "none") << "  balancing "
            << (p.config.balancing_energy_paid ? "spot" : "none");
        if (!p.default_profile.empty()) out << "  profile " << p.default_profile;
        out << "\n      " << p.note << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Battery storage payoff and utilization-rate analysis", "bessu"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "Parse price files and report hour coverage");
    validate->add_option("inputs", va.inputs, "CSV files or directories");
    validate->add_option("--prices", va.prices, "Day-ahead price files or directories");
    validate->add_option("--capacity-prices", va.capacity, "Reserve capacity price files or directories");
    add_data_flags(validate, va.data);

    ArbitrageArgs aa;
    auto* arbitrage = app.add_subcommand("arbitrage", "Daily energy-arbitrage payoffs");
    arbitrage->add_option("--prices", aa.prices, "Day-ahead price CSV")->required();
    add_data_flags(arbitrage, aa.data);
    add_battery_flags(arbitrage, aa.battery);
    arbitrage->add_option("--energy", aa.energy, "MWh discharged per daily cycle")->capture_default_str();
    arbitrage->add_flag("--strict-ordering", aa.strict_ordering,
                        "Require the charge hour to precede the discharge hour");
    arbitrage->add_option("--min-hours", aa.min_hours, "Hours needed for a day to count")
        ->capture_default_str();

    FcrArgs fa;
    auto* fcr = app.add_subcommand("fcr", "Hourly frequency containment reserve payoffs");
    fcr->add_option("--capacity-prices", fa.capacity_prices, "Reserve capacity price CSV")->required();
    fcr->add_option("--prices", fa.prices, "Day-ahead spot price CSV for paid energy legs");
    fcr->add_option("--preset", fa.preset, "Market preset, e.g. FR-FCR or DK2-FCR-N");
    fcr->add_option("--service", fa.service, "fcr or fcr-n, used to pick a preset by zone");
    fcr->add_option("--profile", fa.profile, "Builtin profile name or profile CSV");
    fcr->add_option("--capacity-mw", fa.capacity_mw, "Reserve capacity offered, MW")->capture_default_str();
    add_data_flags(fcr, fa.data);
    add_battery_flags(fcr, fa.battery);

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Utilization rate over a grid of wear costs");
    // Config files are read by the root app; sweep keys live under [sweep].
    app.set_config("--config", "", "TOML/INI file, sweep options under [sweep]");
    sweep->fallthrough();
    sweep->add_option("--application", sa.application, "arbitrage, fcr, or fcr-n")->capture_default_str();
    sweep->add_option("--prices", sa.prices, "Day-ahead price files or directories");
    sweep->add_option("--capacity-prices", sa.capacity, "Reserve capacity price files or directories");
    sweep->add_option("--zone", sa.zones, "Zones to include, in output order");
    sweep->add_option("--profile", sa.profile, "Profile override for every zone");
    sweep->add_option("--wear-min", sa.wear_min)->capture_default_str();
    sweep->add_option("--wear-max", sa.wear_max)->capture_default_str();
    sweep->add_option("--wear-step", sa.wear_step)->capture_default_str();
    sweep->add_option("--energy", sa.energy, "MWh discharged per daily cycle")->capture_default_str();
    sweep->add_option("--capacity-mw", sa.capacity_mw, "Reserve capacity offered, MW")->capture_default_str();
    sweep->add_flag("--strict-ordering", sa.strict_ordering);
    sweep->add_option("--min-hours", sa.min_hours)->capture_default_str();
    sweep->add_option("--threads", sa.threads, "Worker threads, 0 = all cores")->capture_default_str();
    sweep->add_flag("--plot-data", sa.plot_data, "Also write <zone>.dat two-column files");
    sweep->add_option("--rank-at", sa.rank_at, "Rank zones by PPUR at this wear cost");
    add_data_flags(sweep, sa.data, false);
    add_battery_flags(sweep, sa.battery, false);

    auto* profiles = app.add_subcommand("profiles", "Builtin service energy profiles");
    profiles->require_subcommand(1);
    auto* profiles_list = profiles->add_subcommand("list", "List profiles and market presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(va, out, err);
        if (*arbitrage) return cmd_arbitrage(aa, out);
        if (*fcr) return cmd_fcr(fa, out);
        if (*sweep) return cmd_sweep(sa, out);
        if (*profiles_list) return cmd_profiles_list(out);
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsage;
}

}  // namespace bessu
