#include "bessu/market_data.hpp"

#include "bessu/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bessu {

namespace {

constexpr std::array kKnownCurrencies{"EUR", "GBP", "DKK", "NOK", "SEK"};

}  // namespace

bool is_known_currency(std::string_view code)
{
    return std::find(kKnownCurrencies.begin(), kKnownCurrencies.end(), code) !=
           kKnownCurrencies.end();
}

BiddingZone::BiddingZone(std::string code_, std::string currency_)
    : code(std::move(code_)), currency(std::move(currency_))
{
    if (code.empty()) throw std::invalid_argument("bidding zone code is empty");
    if (!is_known_currency(currency))
        throw std::invalid_argument("unknown currency '" + currency + "' for zone " + code);
}

BiddingZone BiddingZone::with_default_currency(const std::string& code)
{
    return {code, code == "GB" ? "GBP" : "EUR"};
}

std::string_view to_string(PriceKind kind)
{
    return kind == PriceKind::DayAheadEnergy ? "day_ahead_energy" : "reserve_capacity";
}

std::optional<PriceKind> parse_price_kind(std::string_view text)
{
    auto t = text::to_lower(text::trim(text));
    if (t == "day_ahead_energy" || t == "day_ahead" || t == "dayaheadenergy" || t == "energy")
        return PriceKind::DayAheadEnergy;
    if (t == "reserve_capacity" || t == "capacity" || t == "reservecapacity")
        return PriceKind::ReserveCapacity;
    return std::nullopt;
}

PriceSeries::PriceSeries(BiddingZone zone, PriceKind kind, std::vector<PricePoint> points)
    : zone_(std::move(zone)), kind_(kind), points_(std::move(points))
{
    if (zone_.code.empty()) throw std::invalid_argument("price series needs a zone code");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].price))
            throw std::invalid_argument("non-finite price at " + format_hour(points_[i].time));
        if (i > 0 && points_[i].time <= points_[i - 1].time) {
            auto ts = format_hour(points_[i].time);
            if (points_[i].time == points_[i - 1].time) throw DuplicateTimestamp(ts);
            throw NonMonotonicTimestamp(ts);
        }
    }
}

std::optional<double> PriceSeries::at(Hour h) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), h,
                               [](const PricePoint& p, Hour t) { return p.time < t; });
    if (it == points_.end() || it->time != h) return std::nullopt;
    return it->price;
}

PriceSeries PriceSeries::slice(Hour from, Hour to) const
{
    auto cmp = [](const PricePoint& p, Hour t) { return p.time < t; };
    auto lo = std::lower_bound(points_.begin(), points_.end(), from, cmp);
    auto hi = std::lower_bound(lo, points_.end(), to, cmp);
    return {zone_, kind_, std::vector<PricePoint>(lo, hi)};
}

CurrencyRate::CurrencyRate(std::string from_, std::string to_, double rate_)
    : from(std::move(from_)), to(std::move(to_)), rate(rate_)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("currency rate must be positive");
    if (!is_known_currency(from) || !is_known_currency(to))
        throw std::invalid_argument("unknown currency in rate " + from + ":" + to);
}

CurrencyRate CurrencyRate::parse(std::string_view text)
{
    auto parts = text::split_record(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("currency rate must look like GBP:EUR:1.12");
    auto rate = text::parse_double(parts[2]);
    if (!rate) throw std::invalid_argument("bad currency rate value '" + parts[2] + "'");
    return {std::string(text::trim(parts[0])), std::string(text::trim(parts[1])), *rate};
}

PriceSeries convert_currency(const PriceSeries& series, const CurrencyRate& rate)
{
    if (series.zone().currency != rate.from)
        throw CurrencyMismatch(series.zone().currency, rate.from);
    std::vector<PricePoint> points = series.points();
    for (auto& p : points) p.price *= rate.rate;
    BiddingZone zone{series.zone().code, rate.to};
    return {std::move(zone), series.kind(), std::move(points)};
}

// --- CSV ----------------------------------------------------------------------

CsvSchema CsvSchema::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw FileNotFound(path.string());
    CsvSchema schema;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = text::trim(line);
        if (body.empty() || body.front() == '#') continue;
        auto eq = body.find('=');
        if (eq == std::string_view::npos) throw MalformedRow(lineno, "expected key = value");
        auto key = std::string(text::trim(body.substr(0, eq)));
        auto value = std::string(text::trim(body.substr(eq + 1)));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);

        if (key == "timestamp_column") schema.timestamp_column = value;
        else if (key == "price_column") schema.price_column = value;
        else if (key == "zone_column") schema.zone_column = value;
        else if (key == "kind_column") schema.kind_column = value;
        else if (key == "timestamp_format") schema.timestamp_format = value;
        else if (key == "delimiter") {
            if (value == "\\t" || value == "tab") schema.delimiter = '\t';
            else if (value.size() == 1) schema.delimiter = value[0];
            else throw MalformedRow(lineno, "delimiter must be one character");
        } else if (key == "source_utc_offset_minutes") {
            auto v = text::parse_double(value);
            if (!v) throw MalformedRow(lineno, "bad offset '" + value + "'");
            schema.source_offset.value = std::chrono::minutes{static_cast<long>(*v)};
        } else if (key == "missing_markers") {
            schema.missing_markers.clear();
            for (auto& m : text::split_record(value, '|'))
                schema.missing_markers.emplace_back(text::trim(m));
        } else if (key == "skip_missing") {
            schema.skip_missing = value == "true" || value == "1" || value == "yes";
        } else if (key == "zone") schema.zone = value;
        else if (key == "kind") {
            schema.kind = parse_price_kind(value);
            if (!schema.kind) throw MalformedRow(lineno, "unknown kind '" + value + "'");
        } else if (key == "currency") {
            if (!is_known_currency(value)) throw MalformedRow(lineno, "unknown currency " + value);
            schema.currency = value;
        } else {
            throw MalformedRow(lineno, "unknown key '" + key + "'");
        }
    }
    return schema;
}

namespace {

std::optional<std::size_t> find_column(const std::vector<std::string>& header, const std::string& name)
{
    if (name.empty()) return std::nullopt;
    auto want = text::to_lower(text::trim(name));
    for (std::size_t i = 0; i < header.size(); ++i)
        if (text::to_lower(text::trim(header[i])) == want) return i;
    return std::nullopt;
}

bool is_missing(const CsvSchema& schema, std::string_view cell)
{
    auto c = text::trim(cell);
    return std::find(schema.missing_markers.begin(), schema.missing_markers.end(), c) !=
           schema.missing_markers.end();
}

}  // namespace

PriceCsvResult read_price_csv(const std::filesystem::path& path, const CsvSchema& schema,
                              std::optional<BiddingZone> zone, std::optional<PriceKind> kind)
{
    std::ifstream in(path, std::ios::binary);
    if (!in || std::filesystem::is_directory(path)) throw FileNotFound(path.string());

    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        header = text::split_record(line, schema.delimiter);
        break;
    }
    if (header.empty()) throw MalformedRow(lineno, "missing header row");
    const std::size_t header_line = lineno;

    auto ts_col = find_column(header, schema.timestamp_column);
    auto price_col = find_column(header, schema.price_column);
    auto zone_col = find_column(header, schema.zone_column);
    auto kind_col = find_column(header, schema.kind_column);
    if (!ts_col) throw MalformedRow(header_line, "no column '" + schema.timestamp_column + "'");
    if (!price_col) throw MalformedRow(header_line, "no column '" + schema.price_column + "'");

    if (!zone && schema.zone) {
        auto z = BiddingZone::with_default_currency(*schema.zone);
        if (schema.currency) z.currency = *schema.currency;
        zone = z;
    }
    if (!kind) kind = schema.kind;

    std::vector<PricePoint> points;
    std::vector<RejectedRow> rejected;
    std::size_t skipped = 0;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        ++rows;
        auto fields = text::split_record(line, schema.delimiter);
        auto reject = [&](std::string reason) { rejected.push_back({lineno, std::move(reason)}); };

        std::size_t needed = std::max(*ts_col, *price_col);
        if (zone_col) needed = std::max(needed, *zone_col);
        if (kind_col) needed = std::max(needed, *kind_col);
        if (fields.size() <= needed) {
            reject("expected at least " + std::to_string(needed + 1) + " fields, got " +
                   std::to_string(fields.size()));
            continue;
        }

        if (zone_col) {
            auto code = std::string(text::trim(fields[*zone_col]));
            if (!zone) {
                if (code.empty()) {
                    reject("empty zone");
                    continue;
                }
                zone = BiddingZone::with_default_currency(code);
                if (schema.currency) zone->currency = *schema.currency;
            } else if (!code.empty() && code != zone->code) {
                reject("zone '" + code + "' does not match " + zone->code);
                continue;
            }
        }
        if (kind_col) {
            auto k = parse_price_kind(fields[*kind_col]);
            if (!k) {
                reject("unknown kind '" + fields[*kind_col] + "'");
                continue;
            }
            if (!kind) kind = k;
            else if (*k != *kind) {
                reject("kind '" + fields[*kind_col] + "' does not match " +
                       std::string(to_string(*kind)));
                continue;
            }
        }

        auto stamp = parse_datetime(fields[*ts_col], schema.timestamp_format);
        if (!stamp) {
            reject("unparseable timestamp '" + fields[*ts_col] + "'");
            continue;
        }
        if (!schema.timestamp_format.empty()) *stamp -= schema.source_offset.value;
        auto hour = std::chrono::floor<std::chrono::hours>(*stamp);
        if (hour != *stamp) {
            reject("timestamp '" + fields[*ts_col] + "' is not on the hour");
            continue;
        }

        if (is_missing(schema, fields[*price_col])) {
            if (schema.skip_missing) ++skipped;
            else reject("missing price");
            continue;
        }
        auto price = text::parse_double(fields[*price_col]);
        if (!price) {
            reject("unparseable price '" + fields[*price_col] + "'");
            continue;
        }

        if (!points.empty() && hour <= points.back().time) {
            auto it = std::lower_bound(points.begin(), points.end(), hour,
                                       [](const PricePoint& p, Hour t) { return p.time < t; });
            if (it != points.end() && it->time == hour) throw DuplicateTimestamp(format_hour(hour));
            throw NonMonotonicTimestamp(format_hour(hour));
        }
        points.push_back({hour, *price});
    }

    if (!zone) throw MalformedRow(header_line, "no zone given by column, adapter, or caller");
    if (!kind) throw MalformedRow(header_line, "no price kind given by column, adapter, or caller");

    return {PriceSeries(std::move(*zone), *kind, std::move(points)), std::move(rejected), skipped,
            rows};
}

PriceSeries parse_price_csv(const std::filesystem::path& path, const CsvSchema& schema,
                            std::optional<BiddingZone> zone, std::optional<PriceKind> kind)
{
    auto result = read_price_csv(path, schema, std::move(zone), kind);
    if (!result.rejected.empty())
        throw MalformedRow(result.rejected.front().line, result.rejected.front().reason);
    return std::move(result.series);
}

std::string to_canonical_csv(const PriceSeries& series)
{
    std::ostringstream out;
    out << "timestamp,price,zone,kind\n";
    for (const auto& p : series.points())
        out << format_hour(p.time) << ',' << text::format_double(p.price) << ','
            << series.zone().code << ',' << to_string(series.kind()) << '\n';
    return out.str();
}

void write_canonical_csv(const PriceSeries& series, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << to_canonical_csv(series);
}

// --- coverage and grouping ------------------------------------------------------

CoverageReport validate_series(const PriceSeries& series, const DateRange& span, UtcOffset offset)
{
    CoverageReport report;
    report.zone = series.zone();
    report.kind = series.kind();
    report.span = span;
    auto [from, to] = hour_bounds(span, offset);
    report.hours_expected = (to - from).count();

    auto window = series.slice(from, to);
    report.hours_present = static_cast<long>(window.size());

    Hour expect = from;
    for (const auto& p : window.points()) {
        if (p.time > expect) report.gaps.push_back({expect, (p.time - expect).count()});
        expect = p.time + std::chrono::hours{1};
    }
    if (expect < to) report.gaps.push_back({expect, (to - expect).count()});

    if (report.hours_expected > 0)
        report.coverage_fraction =
            static_cast<double>(report.hours_present) / static_cast<double>(report.hours_expected);
    return report;
}

std::string to_json(const CoverageReport& report)
{
    nlohmann::ordered_json j;
    j["zone"] = report.zone.code;
    j["currency"] = report.zone.currency;
    j["kind"] = to_string(report.kind);
    j["span"] = {{"from", format_day(report.span.first)}, {"to", format_day(report.span.last)}};
    j["hours_expected"] = report.hours_expected;
    j["hours_present"] = report.hours_present;
    auto gaps = nlohmann::ordered_json::array();
    for (const auto& g : report.gaps) gaps.push_back({{"start", format_hour(g.start)}, {"hours", g.hours}});
    j["gaps"] = std::move(gaps);
    j["coverage_fraction"] = report.coverage_fraction;
    return j.dump(2);
}

std::vector<DailyPriceBlock> group_by_day(const PriceSeries& series, DayGrouping grouping)
{
    if (series.kind() != PriceKind::DayAheadEnergy)
        throw WrongKind("daily grouping needs a day-ahead energy series, got " +
                        std::string(to_string(series.kind())));
    std::vector<DailyPriceBlock> blocks;
    for (const auto& p : series.points()) {
        auto day = grouping.offset.local_day(p.time);
        if (blocks.empty() || blocks.back().day != day) blocks.push_back({day, {}, false});
        blocks.back().points.push_back(p);
    }
    for (auto& b : blocks) b.incomplete = static_cast<int>(b.points.size()) < grouping.min_hours;
    return blocks;
}

}  // namespace bessu
