#include "bugforecast/model/dates.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace bugforecast {

namespace {

using namespace std::chrono;

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    bool consume(char c) {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    // Reads between `min_digits` and `max_digits` decimal digits.
    std::optional<int> digits(std::size_t min_digits, std::size_t max_digits) {
        std::size_t start = pos_;
        while (!done() && pos_ - start < max_digits && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (pos_ - start < min_digits)
            return std::nullopt;
        int value = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
        return value;
    }

    std::string_view word() {
        std::size_t start = pos_;
        while (!done() && std::isalpha(static_cast<unsigned char>(peek())))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    void skip_spaces() {
        while (!done() && peek() == ' ')
            ++pos_;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::optional<Date> make_date(int y, int m, int d) {
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        return std::nullopt;
    return sys_days{ymd};
}

std::optional<seconds> make_time(int h, int mi, int s) {
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60)
        return std::nullopt;
    return hours{h} + minutes{mi} + seconds{s};
}

std::optional<Date> read_iso_date(Cursor& c) {
    auto y = c.digits(4, 4);
    if (!y || !c.consume('-'))
        return std::nullopt;
    auto m = c.digits(2, 2);
    if (!m || !c.consume('-'))
        return std::nullopt;
    auto d = c.digits(2, 2);
    if (!d)
        return std::nullopt;
    return make_date(*y, *m, *d);
}

std::optional<Timestamp> parse_iso(std::string_view text) {
    Cursor c(text);
    auto date = read_iso_date(c);
    if (!date)
        return std::nullopt;
    if (c.done())
        return start_of_day(*date);
    if (!c.consume('T') && !c.consume(' '))
        return std::nullopt;
    auto h = c.digits(2, 2);
    if (!h || !c.consume(':'))
        return std::nullopt;
    auto mi = c.digits(2, 2);
    if (!mi)
        return std::nullopt;
    int s = 0;
    if (c.consume(':')) {
        auto sec = c.digits(2, 2);
        if (!sec)
            return std::nullopt;
        s = *sec;
    }
    auto tod = make_time(*h, *mi, s);
    if (!tod)
        return std::nullopt;
    if (c.consume('.') || c.consume(',')) {
        if (!c.digits(1, 9))
            return std::nullopt;
    }
    seconds offset{0};
    c.skip_spaces();
    if (c.consume('Z')) {
    } else if (c.peek() == '+' || c.peek() == '-') {
        int sign = c.peek() == '-' ? -1 : 1;
        c.consume(c.peek());
        auto oh = c.digits(2, 2);
        if (!oh)
            return std::nullopt;
        c.consume(':');
        auto om = c.digits(2, 2);
        if (!om)
            return std::nullopt;
        offset = sign * (hours{*oh} + minutes{*om});
    }
    if (!c.done())
        return std::nullopt;
    return start_of_day(*date) + *tod - offset;
}

// `25/Aug/20 2:27 PM`
std::optional<Timestamp> parse_jira_csv(std::string_view text) {
    static constexpr std::array<std::string_view, 12> kMonths = {
        "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};
    Cursor c(text);
    auto d = c.digits(1, 2);
    if (!d || !c.consume('/'))
        return std::nullopt;
    std::string mon{c.word()};
    for (auto& ch : mon)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    int month_index = 0;
    for (std::size_t i = 0; i < kMonths.size(); ++i)
        if (mon == kMonths[i])
            month_index = static_cast<int>(i) + 1;
    if (month_index == 0 || !c.consume('/'))
        return std::nullopt;
    auto y = c.digits(2, 4);
    if (!y)
        return std::nullopt;
    int full_year = *y < 100 ? 2000 + *y : *y;
    auto date = make_date(full_year, month_index, *d);
    if (!date)
        return std::nullopt;
    c.skip_spaces();
    auto h = c.digits(1, 2);
    if (!h || !c.consume(':'))
        return std::nullopt;
    auto mi = c.digits(2, 2);
    if (!mi)
        return std::nullopt;
    c.skip_spaces();
    std::string ampm{c.word()};
    if (!c.done())
        return std::nullopt;
    int hour = *h;
    if (ampm == "PM" || ampm == "pm") {
        if (hour < 1 || hour > 12)
            return std::nullopt;
        hour = hour % 12 + 12;
    } else if (ampm == "AM" || ampm == "am") {
        if (hour < 1 || hour > 12)
            return std::nullopt;
        hour = hour % 12;
    } else if (!ampm.empty()) {
        return std::nullopt;
    }
    auto tod = make_time(hour, *mi, 0);
    if (!tod)
        return std::nullopt;
    return start_of_day(*date) + *tod;
}

}  // namespace

Timestamp start_of_day(Date d) { return Timestamp{d.time_since_epoch()}; }

Timestamp end_of_day(Date d) { return start_of_day(d) + hours{23} + minutes{59} + seconds{59}; }

std::optional<Date> parse_date(std::string_view text) {
    Cursor c(trim(text));
    auto d = read_iso_date(c);
    if (!d || !c.done())
        return std::nullopt;
    return d;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    text = trim(text);
    if (text.empty())
        return std::nullopt;
    if (auto t = parse_iso(text))
        return t;
    return parse_jira_csv(text);
}

std::string format_date(Date d) {
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    auto day = floor<days>(t);
    hh_mm_ss<seconds> tod{t - day};
    char buf[8 + 16];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(tod.hours().count()),
                  static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
    return format_date(day) + buf;
}

}  // namespace bugforecast
