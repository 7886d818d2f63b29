#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hypefin {

/// Calendar date (proleptic Gregorian). Ordered, hashable by serial day.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    /// Days since 1970-01-01 (negative before).
    std::int64_t serial() const;
    Date plus_days(std::int64_t n) const;

    std::string to_string() const; // YYYY-MM-DD

    static Date from_serial(std::int64_t days);
    static Date parse(const std::string& iso); // throws ParseError
    static bool is_valid(int y, int m, int d);
};

} // namespace hypefin
