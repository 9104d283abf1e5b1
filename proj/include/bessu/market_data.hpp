#pragma once

#include "bessu/time.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bessu {

/// Currencies the engine knows about. All payoff arithmetic happens in EUR.
bool is_known_currency(std::string_view code);

struct BiddingZone {
    std::string code;
    std::string currency{"EUR"};

    BiddingZone() = default;
    BiddingZone(std::string code, std::string currency);

    /// Zone with the currency its day-ahead prices are published in (GB -> GBP, else EUR).
    static BiddingZone with_default_currency(const std::string& code);

    friend bool operator==(const BiddingZone&, const BiddingZone&) = default;
};

enum class PriceKind { DayAheadEnergy, ReserveCapacity };

std::string_view to_string(PriceKind kind);
std::optional<PriceKind> parse_price_kind(std::string_view text);

struct PricePoint {
    Hour time;
    double price;

    friend bool operator==(const PricePoint&, const PricePoint&) = default;
};

/// Hourly price series for one zone and one price kind. Immutable once built:
/// timestamps strictly increasing, prices finite (negative values are legal).
class PriceSeries {
public:
    PriceSeries(BiddingZone zone, PriceKind kind, std::vector<PricePoint> points);

    const BiddingZone& zone() const { return zone_; }
    PriceKind kind() const { return kind_; }
    const std::vector<PricePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Price at an hour, if present.
    std::optional<double> at(Hour h) const;

    /// Points whose hour falls in [from, to).
    PriceSeries slice(Hour from, Hour to) const;

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
    BiddingZone zone_;
    PriceKind kind_;
    std::vector<PricePoint> points_;
};

struct CurrencyRate {
    std::string from;
    std::string to;
    double rate;

    CurrencyRate(std::string from, std::string to, double rate);

    /// Parses `FROM:TO:RATE`, e.g. `GBP:EUR:1.12`.
    static CurrencyRate parse(std::string_view text);
};

/// Fixed rate used for GB day-ahead prices unless overridden.
inline constexpr double kDefaultGbpToEur = 1.12;

PriceSeries convert_currency(const PriceSeries& series, const CurrencyRate& rate);

/// Column mapping from a source CSV to the canonical fields.
///
/// The canonical layout is `timestamp,price,zone,kind` with ISO-8601 UTC stamps.
/// An empty `timestamp_format` selects ISO-8601 parsing; anything else is a
/// std::get_time pattern interpreted in `source_offset` local time.
struct CsvSchema {
    std::string timestamp_column{"timestamp"};
    std::string price_column{"price"};
    std::string zone_column{"zone"};
    std::string kind_column{"kind"};
    std::string timestamp_format;
    char delimiter{','};
    UtcOffset source_offset{};
    /// Cells equal to one of these (after trimming) count as missing values.
    std::vector<std::string> missing_markers{"", "N/A", "n/e", "-"};
    /// Skip rows whose price is a missing marker instead of rejecting them.
    bool skip_missing{false};
    /// Zone / kind / currency fixed by an adapter file, for sources without those columns.
    std::optional<std::string> zone;
    std::optional<PriceKind> kind;
    std::optional<std::string> currency;

    static CsvSchema canonical() { return {}; }

    /// Reads a `key = value` adapter file. Keys: timestamp_column, price_column,
    /// zone_column, kind_column, timestamp_format, delimiter, source_utc_offset_minutes,
    /// missing_markers (`|`-separated), skip_missing, zone, kind, currency.
    static CsvSchema load(const std::filesystem::path& path);
};

struct RejectedRow {
    std::size_t line;
    std::string reason;
};

struct PriceCsvResult {
    PriceSeries series;
    std::vector<RejectedRow> rejected;
    std::size_t skipped_missing{0};  // rows dropped as documented missing values
    std::size_t data_rows{0};        // non-empty rows after the header
};

/// Reads every row, collecting rejects instead of throwing on them. Throws
/// FileNotFound, DuplicateTimestamp, NonMonotonicTimestamp, or MalformedRow for a
/// broken header. `zone` / `kind` override what the schema or file say.
PriceCsvResult read_price_csv(const std::filesystem::path& path, const CsvSchema& schema,
                              std::optional<BiddingZone> zone = std::nullopt,
                              std::optional<PriceKind> kind = std::nullopt);

/// Strict variant: any rejected row raises MalformedRow for the first offender.
PriceSeries parse_price_csv(const std::filesystem::path& path, const CsvSchema& schema,
                            std::optional<BiddingZone> zone = std::nullopt,
                            std::optional<PriceKind> kind = std::nullopt);

/// Canonical CSV text for a series; parse_price_csv reads it back unchanged.
std::string to_canonical_csv(const PriceSeries& series);
void write_canonical_csv(const PriceSeries& series, const std::filesystem::path& path);

struct HourGap {
    Hour start;
    long hours;
};

struct CoverageReport {
    BiddingZone zone;
    PriceKind kind;
    DateRange span;
    long hours_expected{0};
    long hours_present{0};
    std::vector<HourGap> gaps;
    double coverage_fraction{0.0};
};

CoverageReport validate_series(const PriceSeries& series, const DateRange& span,
                               UtcOffset offset = {});

std::string to_json(const CoverageReport& report);

struct DayGrouping {
    UtcOffset offset{};
    int min_hours{20};
};

struct DailyPriceBlock {
    Day day;
    std::vector<PricePoint> points;
    bool incomplete{false};
};

/// Partitions a day-ahead series by reporting-clock calendar day.
std::vector<DailyPriceBlock> group_by_day(const PriceSeries& series, DayGrouping grouping = {});

}  // namespace bessu
