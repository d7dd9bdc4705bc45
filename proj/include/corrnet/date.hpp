#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace corrnet {

// Calendar date without time of day. Stored as days since the Unix epoch so
// ordering and hashing are trivial.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
    constexpr Date(int year, unsigned month, unsigned day)
        : days_(std::chrono::year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                            std::chrono::day{day}}) {}

    // Strict ISO-8601 `YYYY-MM-DD`; returns nullopt for anything else,
    // including impossible dates such as 2007-02-30.
    static std::optional<Date> parse(std::string_view text);

    // Like parse() but throws corrnet::Error naming the offending text.
    static Date from_string(std::string_view text);

    std::string to_string() const;

    constexpr std::chrono::sys_days days() const { return days_; }
    std::chrono::weekday weekday() const { return std::chrono::weekday{days_}; }

    constexpr Date next_day() const { return Date{days_ + std::chrono::days{1}}; }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;
    friend constexpr bool operator==(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

}  // namespace corrnet
