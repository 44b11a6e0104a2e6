#include "noos/ids.hpp"
#include "noos/time.hpp"

#include <charconv>
#include <cstdio>

namespace noos {

bool is_valid_token(std::string_view s) noexcept {
  if (s.empty() || s.size() > 64)
    return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_' || c == '.' || c == '~';
    if (!ok)
      return false;
  }
  return true;
}

std::string_view to_string(ObjectKind kind) noexcept {
  switch (kind) {
  case ObjectKind::entry: return "entry";
  case ObjectKind::correction: return "correction";
  case ObjectKind::request: return "request";
  case ObjectKind::message: return "message";
  }
  return "entry";
}

std::optional<ObjectKind> parse_object_kind(std::string_view s) noexcept {
  if (s == "entry") return ObjectKind::entry;
  if (s == "correction") return ObjectKind::correction;
  if (s == "request") return ObjectKind::request;
  if (s == "message") return ObjectKind::message;
  return std::nullopt;
}

std::string to_string(const ObjectRef& ref) {
  return std::string(to_string(ref.kind)) + ":" + ref.id.str();
}

std::optional<ObjectRef> parse_object_ref(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos)
    return std::nullopt;
  auto kind = parse_object_kind(s.substr(0, colon));
  auto id = s.substr(colon + 1);
  if (!kind || !is_valid_token(id))
    return std::nullopt;
  return ObjectRef{*kind, ObjectId(std::string(id))};
}

namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size())
    return false;
  for (std::size_t i = pos; i < pos + len; ++i)
    if (s[i] < '0' || s[i] > '9')
      return false;
  auto res = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return res.ec == std::errc{};
}

} // namespace

std::string format_rfc3339(Timestamp ts) {
  using namespace std::chrono;
  auto day = floor<days>(ts);
  year_month_day ymd{day};
  hh_mm_ss hms{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(hms.hours().count()),
                int(hms.minutes().count()), int(hms.seconds().count()));
  return buf;
}

std::optional<Timestamp> parse_rfc3339(std::string_view s) {
  using namespace std::chrono;
  int y, mo, d, h, mi, sec;
  if (s.size() < 20 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't') ||
      s[13] != ':' || s[16] != ':')
    return std::nullopt;
  if (!read_int(s, 0, 4, y) || !read_int(s, 5, 2, mo) || !read_int(s, 8, 2, d) ||
      !read_int(s, 11, 2, h) || !read_int(s, 14, 2, mi) || !read_int(s, 17, 2, sec))
    return std::nullopt;
  year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60)
    return std::nullopt;

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      ++pos;
      ++digits;
    }
    if (digits == 0)
      return std::nullopt;
  }
  if (pos >= s.size())
    return std::nullopt;

  minutes offset{0};
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    int oh, om;
    if (pos + 6 > s.size() || s[pos + 3] != ':' || !read_int(s, pos + 1, 2, oh) ||
        !read_int(s, pos + 4, 2, om))
      return std::nullopt;
    offset = hours{oh} + minutes{om};
    if (s[pos] == '-')
      offset = -offset;
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size())
    return std::nullopt;

  auto local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
  return Timestamp{local - offset};
}

std::string format_day(Day day) {
  using namespace std::chrono;
  year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

std::optional<Day> parse_day(std::string_view s) {
  using namespace std::chrono;
  int y, mo, d;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !read_int(s, 0, 4, y) ||
      !read_int(s, 5, 2, mo) || !read_int(s, 8, 2, d))
    return std::nullopt;
  year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok())
    return std::nullopt;
  return sys_days{ymd};
}

Day day_of(Timestamp ts, std::chrono::minutes utc_offset) {
  return std::chrono::floor<std::chrono::days>(ts + utc_offset);
}

Timestamp SystemClock::now() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

Timestamp ManualClock::now() {
  std::lock_guard lock(mu_);
  return now_;
}

void ManualClock::set(Timestamp ts) {
  std::lock_guard lock(mu_);
  now_ = ts;
}

void ManualClock::advance(std::chrono::seconds by) {
  std::lock_guard lock(mu_);
  now_ += by;
}

} // namespace noos
