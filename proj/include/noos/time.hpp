#pragma once

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace noos {

using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

// RFC 3339 in UTC, second resolution: 2003-01-06T09:00:00Z
std::string format_rfc3339(Timestamp ts);

// Accepts a trailing Z or a numeric offset; fractional seconds are truncated.
std::optional<Timestamp> parse_rfc3339(std::string_view s);

std::string format_day(Day day);
std::optional<Day> parse_day(std::string_view s);

// Calendar day of `ts` as seen from a fixed UTC offset.
Day day_of(Timestamp ts, std::chrono::minutes utc_offset);

class Clock {
public:
  virtual ~Clock() = default;
  virtual Timestamp now() = 0;
};

class SystemClock final : public Clock {
public:
  Timestamp now() override;
};

// Test and fixture clock; only moves when told to.
class ManualClock final : public Clock {
public:
  explicit ManualClock(Timestamp start) : now_(start) {}

  Timestamp now() override;
  void set(Timestamp ts);
  void advance(std::chrono::seconds by);

private:
  std::mutex mu_;
  Timestamp now_;
};

} // namespace noos
