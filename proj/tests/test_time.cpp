#include "bessu/time.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace bessu;
using bessu::testing::day_of;
using bessu::testing::hour_of;

TEST(Time, FormatsHoursAndDays)
{
    EXPECT_EQ(format_hour(hour_of(2020, 1, 1, 0)), "2020-01-01T00:00Z");
    EXPECT_EQ(format_hour(hour_of(2021, 9, 30, 23)), "2021-09-30T23:00Z");
    EXPECT_EQ(format_day(day_of(2020, 2, 29)), "2020-02-29");
}

TEST(Time, ParsesIsoVariants)
{
    auto expect = std::chrono::sys_seconds{hour_of(2020, 3, 29, 2)};
    EXPECT_EQ(parse_iso_datetime("2020-03-29T02:00Z"), expect);
    EXPECT_EQ(parse_iso_datetime("2020-03-29T02:00"), expect);
    EXPECT_EQ(parse_iso_datetime("2020-03-29 02:00:00"), expect);
    EXPECT_EQ(parse_iso_datetime("2020-03-29T03:00+01:00"), expect);
    EXPECT_EQ(parse_iso_datetime("2020-03-29T01:30-00:30"), expect);
    EXPECT_FALSE(parse_iso_datetime("2020-02-30T00:00Z"));
    EXPECT_FALSE(parse_iso_datetime("2020-01-01T24:00Z"));
    EXPECT_FALSE(parse_iso_datetime("yesterday"));
    EXPECT_FALSE(parse_iso_datetime("2020-01-01T00:00Zjunk"));
}

TEST(Time, ParsesCustomPattern)
{
    auto t = parse_datetime("01.01.2020 05:00 - 01.01.2020 06:00", "%d.%m.%Y %H:%M");
    ASSERT_TRUE(t);
    EXPECT_EQ(*t, std::chrono::sys_seconds{hour_of(2020, 1, 1, 5)});
    EXPECT_FALSE(parse_datetime("2020-01-01", "%d.%m.%Y %H:%M"));
}

TEST(Time, ParsesDays)
{
    EXPECT_EQ(parse_day("2021-09-30"), day_of(2021, 9, 30));
    EXPECT_FALSE(parse_day("2021-9-30"));
    EXPECT_FALSE(parse_day("2021-09-31"));
}

TEST(Time, OffsetMovesDayBoundaries)
{
    UtcOffset cet{std::chrono::minutes{60}};
    EXPECT_EQ(cet.local_day(hour_of(2020, 1, 1, 23)), day_of(2020, 1, 2));
    EXPECT_EQ(cet.local_day(hour_of(2020, 1, 1, 22)), day_of(2020, 1, 1));
    EXPECT_EQ(cet.day_start(day_of(2020, 1, 2)), hour_of(2020, 1, 1, 23));

    DateRange jan{day_of(2020, 1, 1), day_of(2020, 1, 31)};
    EXPECT_EQ(jan.days(), 31);
    EXPECT_EQ(hours_in(jan), 744);
    EXPECT_EQ(hours_in(jan, cet), 744);
    auto [from, to] = hour_bounds(jan, cet);
    EXPECT_EQ(from, hour_of(2019, 12, 31, 23));
    EXPECT_EQ(to, hour_of(2020, 1, 31, 23));
}
