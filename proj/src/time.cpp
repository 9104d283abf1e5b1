#include "bessu/time.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <locale>
#include <sstream>

namespace bessu {

using namespace std::chrono;

Day UtcOffset::local_day(Hour h) const
{
    return floor<days>(h + value);
}

Hour UtcOffset::day_start(Day local) const
{
    return floor<hours>(sys_time<minutes>(local) - value);
}

std::pair<Hour, Hour> hour_bounds(const DateRange& range, UtcOffset offset)
{
    if (range.empty()) {
        auto h = offset.day_start(range.first);
        return {h, h};
    }
    return {offset.day_start(range.first), offset.day_start(range.last + days{1})};
}

long hours_in(const DateRange& range, UtcOffset offset)
{
    auto [from, to] = hour_bounds(range, offset);
    return (to - from).count();
}

std::string format_day(Day d)
{
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::string format_hour(Hour h)
{
    auto d = floor<days>(h);
    auto hh = (h - d).count();
    char buf[8];
    std::snprintf(buf, sizeof buf, "T%02ld:00Z", static_cast<long>(hh));
    return format_day(d) + buf;
}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }
    bool eat(char c)
    {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    std::optional<int> digits(std::size_t n)
    {
        if (pos_ + n > s_.size()) return std::nullopt;
        int value = 0;
        for (std::size_t i = 0; i < n; ++i) {
            char c = s_[pos_ + i];
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            value = value * 10 + (c - '0');
        }
        pos_ += n;
        return value;
    }

private:
    std::string_view s_;
    std::size_t pos_{0};
};

std::optional<Day> read_date(Cursor& c)
{
    auto y = c.digits(4);
    if (!y || !c.eat('-')) return std::nullopt;
    auto m = c.digits(2);
    if (!m || !c.eat('-')) return std::nullopt;
    auto d = c.digits(2);
    if (!d) return std::nullopt;
    year_month_day ymd{year{*y}, month{unsigned(*m)}, day{unsigned(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::optional<Day> parse_day(std::string_view text)
{
    Cursor c{trim(text)};
    auto d = read_date(c);
    if (!d || !c.done()) return std::nullopt;
    return d;
}

std::optional<sys_seconds> parse_iso_datetime(std::string_view text)
{
    Cursor c{trim(text)};
    auto d = read_date(c);
    if (!d) return std::nullopt;
    if (c.done()) return sys_seconds{*d};
    if (!c.eat('T') && !c.eat(' ')) return std::nullopt;
    auto hh = c.digits(2);
    if (!hh || !c.eat(':')) return std::nullopt;
    auto mm = c.digits(2);
    if (!mm) return std::nullopt;
    int ss = 0;
    if (c.eat(':')) {
        auto s = c.digits(2);
        if (!s) return std::nullopt;
        ss = *s;
    }
    if (*hh > 23 || *mm > 59 || ss > 59) return std::nullopt;
    auto t = sys_seconds{*d} + hours{*hh} + minutes{*mm} + seconds{ss};
    if (c.done() || c.eat('Z')) return c.done() ? std::optional{t} : std::nullopt;
    int sign = 0;
    if (c.eat('+')) sign = 1;
    else if (c.eat('-')) sign = -1;
    else return std::nullopt;
    auto oh = c.digits(2);
    if (!oh) return std::nullopt;
    c.eat(':');
    auto om = c.digits(2);
    if (!om || !c.done()) return std::nullopt;
    return t - sign * (hours{*oh} + minutes{*om});
}

std::optional<sys_seconds> parse_datetime(std::string_view text, const std::string& format)
{
    if (format.empty()) return parse_iso_datetime(text);
    std::tm tm{};
    std::istringstream in{std::string(trim(text))};
    in.imbue(std::locale::classic());
    in >> std::get_time(&tm, format.c_str());
    if (in.fail()) return std::nullopt;
    year_month_day ymd{year{tm.tm_year + 1900}, month{unsigned(tm.tm_mon + 1)},
                       day{unsigned(tm.tm_mday)}};
    if (!ymd.ok() || tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 60) return std::nullopt;
    return sys_seconds{sys_days{ymd}} + hours{tm.tm_hour} + minutes{tm.tm_min} +
           seconds{tm.tm_sec};
}

}  // namespace bessu
