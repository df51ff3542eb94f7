#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace phkg {

/// Proleptic Gregorian calendar date, stored as days since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;

  /// Throws ValidationError for an impossible date.
  static Date from_ymd(int year, int month, int day);
  /// Parses `YYYY-MM-DD`; throws ValidationError on bad input.
  static Date parse(std::string_view iso);
  static constexpr Date from_serial(long serial) { return Date(serial); }

  long serial() const { return serial_; }
  int year() const;
  int month() const;
  int day() const;

  /// `YYYY-MM-DD`.
  std::string iso() const;
  /// Midnight at the start of this date, `YYYY-MM-DDT00:00:00-00:00`.
  std::string midnight_timestamp() const;

  Date operator+(long days) const { return Date(serial_ + days); }
  Date operator-(long days) const { return Date(serial_ - days); }
  long operator-(Date other) const { return serial_ - other.serial_; }

  auto operator<=>(const Date&) const = default;

 private:
  constexpr explicit Date(long serial) : serial_(serial) {}
  long serial_ = 0;
};

}  // namespace phkg
