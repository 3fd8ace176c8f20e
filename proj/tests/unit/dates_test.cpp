#include <gtest/gtest.h>

#include "bugforecast/model/dates.hpp"
#include "bugforecast/util/text.hpp"

using namespace bugforecast;
using namespace std::chrono;

TEST(Dates, ParsesCalendarDate) {
    auto d = parse_date("2020-08-25");
    ASSERT_TRUE(d);
    EXPECT_EQ(*d, sys_days{year{2020} / 8 / 25});
    EXPECT_FALSE(parse_date("2020-02-30"));
    EXPECT_FALSE(parse_date("2020-8-25"));
    EXPECT_FALSE(parse_date("2020-08-25x"));
}

TEST(Dates, EndOfDayIsLastSecond) {
    Date d = year{2021} / 1 / 1;
    EXPECT_EQ(end_of_day(d) - start_of_day(d), seconds{86399});
}

TEST(Dates, ParsesTrackerTimestampFormats) {
    const Timestamp expected = sys_days{year{2020} / 8 / 25} + hours{14} + minutes{27} + seconds{21};
    EXPECT_EQ(parse_timestamp("2020-08-25 14:27:21"), expected);
    EXPECT_EQ(parse_timestamp("2020-08-25T14:27:21Z"), expected);
    EXPECT_EQ(parse_timestamp("2020-08-25T14:27:21.000+0000"), expected);
    EXPECT_EQ(parse_timestamp("2020-08-25T16:27:21.123+02:00"), expected);
    EXPECT_EQ(parse_timestamp("2020-08-25T09:27:21-0500"), expected);
    EXPECT_EQ(parse_timestamp("2020-08-25"), start_of_day(year{2020} / 8 / 25));
    EXPECT_EQ(parse_timestamp("25/Aug/20 2:27 PM"), expected - seconds{21});
    EXPECT_EQ(parse_timestamp("25/Aug/20 12:05 AM"), start_of_day(year{2020} / 8 / 25) + minutes{5});
    EXPECT_FALSE(parse_timestamp(""));
    EXPECT_FALSE(parse_timestamp("None"));
    EXPECT_FALSE(parse_timestamp("2020-08-25 25:00:00"));
}

TEST(Dates, FormatsRoundTrip) {
    auto t = parse_timestamp("2021-08-24 14:30:09");
    ASSERT_TRUE(t);
    EXPECT_EQ(format_timestamp(*t), "2021-08-24T14:30:09Z");
    EXPECT_EQ(parse_timestamp(format_timestamp(*t)), t);
    EXPECT_EQ(format_date(year{2017} / 11 / 16), "2017-11-16");
}

TEST(Text, FormatDoubleRoundTripsExactly) {
    for (double v : {0.0, 1.0, 1681.0, 33.0 / 887.0, 0.1 + 0.2, 1e-300, 123456789.123456789}) {
        auto text = util::format_double(v);
        EXPECT_EQ(util::parse_double(text), v) << text;
    }
    EXPECT_EQ(util::format_double(-0.0), "0");
    EXPECT_EQ(util::format_double(1681.0), "1681");
}

TEST(Text, ParsesIntegerLists) {
    EXPECT_EQ(util::parse_int_list("1..4"), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(util::parse_int_list("1,3, 5..6"), (std::vector<int>{1, 3, 5, 6}));
    EXPECT_THROW(util::parse_int_list("4..1"), std::exception);
    EXPECT_THROW(util::parse_int_list("a"), std::exception);
}
