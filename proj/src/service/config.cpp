#include "noos/service/config.hpp"

#include "noos/error.hpp"

#include "json.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace noos::service {

namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  fail(Errc::invalid_config, "field " + field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& prefix, std::set<std::string> known) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key))
      field_error(prefix + key, "unknown field");
}

const json& object_at(const json& j, const std::string& field) {
  if (!j.is_object())
    field_error(field, "expected an object");
  return j;
}

std::string string_at(const json& j, const std::string& field) {
  if (!j.is_string())
    field_error(field, "expected a string");
  return j.get<std::string>();
}

long long int_at(const json& j, const std::string& field) {
  if (!j.is_number_integer())
    field_error(field, "expected an integer");
  return j.get<long long>();
}

MailSinkKind parse_sink(const std::string& s, const std::string& field) {
  if (s == "file")
    return MailSinkKind::file;
  if (s == "none")
    return MailSinkKind::none;
  field_error(field, "expected \"file\" or \"none\", got \"" + s + "\"");
}

std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    return std::nullopt;
  return v;
}

} // namespace

std::optional<std::chrono::minutes> parse_tz_offset(std::string_view s) {
  if (s.empty())
    return std::nullopt;
  if (s == "Z" || s == "UTC")
    return std::chrono::minutes{0};
  if (s[0] != '+' && s[0] != '-') {
    auto v = parse_int(s);
    if (!v || *v < -24 * 60 || *v > 24 * 60)
      return std::nullopt;
    return std::chrono::minutes{*v};
  }
  int sign = s[0] == '-' ? -1 : 1;
  std::string digits;
  for (char c : s.substr(1))
    if (c != ':')
      digits += c;
  if (digits.size() != 4 && digits.size() != 2)
    return std::nullopt;
  auto hh = parse_int(std::string_view(digits).substr(0, 2));
  auto mm = digits.size() == 4 ? parse_int(std::string_view(digits).substr(2, 2)) : 0LL;
  if (!hh || !mm || *hh > 23 || *mm > 59)
    return std::nullopt;
  return std::chrono::minutes{sign * (*hh * 60 + *mm)};
}

void Config::validate() const {
  if (listen.empty())
    field_error("listen", "must be nonempty");
  if (port < 0 || port > 65535)
    field_error("port", "must be in 0..65535");
  if (data_dir.empty())
    field_error("data_dir", "must be nonempty");
  if (rubric.negligible_max_chars <= 0)
    field_error("rubric.negligible_max_chars", "must be positive");
  if (rubric.negligible_max_chars >= rubric.developed_min_chars)
    field_error("rubric.developed_min_chars", "must exceed negligible_max_chars");
  if (session_ttl.count() <= 0)
    field_error("session_ttl_seconds", "must be positive");
  if (!is_valid_token(admin_id))
    field_error("admin.id", "must be 1-64 URL-safe characters");
  if (!admin_email.empty() && !is_valid_email(admin_email))
    field_error("admin.email", "malformed address");
}

Config parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::invalid_config, std::string("syntax: ") + e.what());
  }
  object_at(j, "<root>");
  reject_unknown(j, "", {"listen", "port", "data_dir", "rubric", "mail", "tz_offset",
                         "front_matter", "session_ttl_seconds", "admin"});
  Config c;
  if (j.contains("listen"))
    c.listen = string_at(j["listen"], "listen");
  if (j.contains("port")) {
    auto p = int_at(j["port"], "port");
    if (p < 0 || p > 65535)
      field_error("port", "must be in 0..65535");
    c.port = int(p);
  }
  if (j.contains("data_dir"))
    c.data_dir = string_at(j["data_dir"], "data_dir");
  if (j.contains("rubric")) {
    const json& r = object_at(j["rubric"], "rubric");
    reject_unknown(r, "rubric.", {"negligible_max_chars", "developed_min_chars"});
    if (r.contains("negligible_max_chars"))
      c.rubric.negligible_max_chars =
          int(int_at(r["negligible_max_chars"], "rubric.negligible_max_chars"));
    if (r.contains("developed_min_chars"))
      c.rubric.developed_min_chars =
          int(int_at(r["developed_min_chars"], "rubric.developed_min_chars"));
  }
  if (j.contains("mail")) {
    const json& m = object_at(j["mail"], "mail");
    reject_unknown(m, "mail.", {"sink", "path"});
    if (m.contains("sink"))
      c.mail_sink = parse_sink(string_at(m["sink"], "mail.sink"), "mail.sink");
    if (m.contains("path"))
      c.mail_path = string_at(m["path"], "mail.path");
  }
  if (j.contains("tz_offset")) {
    const json& t = j["tz_offset"];
    std::optional<std::chrono::minutes> off;
    if (t.is_number_integer())
      off = parse_tz_offset(std::to_string(t.get<long long>()));
    else if (t.is_string())
      off = parse_tz_offset(t.get<std::string>());
    if (!off)
      field_error("tz_offset", "expected \"+hh:mm\", \"-hh:mm\" or minutes");
    c.tz_offset = *off;
  }
  if (j.contains("front_matter")) {
    const json& f = object_at(j["front_matter"], "front_matter");
    reject_unknown(f, "front_matter.", {"title", "subtitle", "institution", "date"});
    if (f.contains("title"))
      c.front.title = string_at(f["title"], "front_matter.title");
    if (f.contains("subtitle"))
      c.front.subtitle = string_at(f["subtitle"], "front_matter.subtitle");
    if (f.contains("institution"))
      c.front.institution = string_at(f["institution"], "front_matter.institution");
    if (f.contains("date"))
      c.front.date = string_at(f["date"], "front_matter.date");
  }
  if (j.contains("session_ttl_seconds"))
    c.session_ttl = std::chrono::seconds{int_at(j["session_ttl_seconds"], "session_ttl_seconds")};
  if (j.contains("admin")) {
    const json& a = object_at(j["admin"], "admin");
    reject_unknown(a, "admin.", {"id", "name", "email", "secret"});
    if (a.contains("id"))
      c.admin_id = string_at(a["id"], "admin.id");
    if (a.contains("name"))
      c.admin_name = string_at(a["name"], "admin.name");
    if (a.contains("email"))
      c.admin_email = string_at(a["email"], "admin.email");
    if (a.contains("secret"))
      c.admin_secret = string_at(a["secret"], "admin.secret");
  }
  return c;
}

std::optional<std::string> getenv_lookup(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v)
    return std::nullopt;
  return std::string(v);
}

Config load_config(const std::optional<std::filesystem::path>& path, const EnvLookup& env) {
  Config c;
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in)
      fail(Errc::invalid_config, "cannot read config file " + path->string());
    std::ostringstream ss;
    ss << in.rdbuf();
    c = parse_config(ss.str());
  }

  if (auto v = env("NOOS_LISTEN"))
    c.listen = *v;
  if (auto v = env("NOOS_PORT")) {
    auto p = parse_int(*v);
    if (!p || *p < 0 || *p > 65535)
      field_error("NOOS_PORT", "expected a port number, got \"" + *v + "\"");
    c.port = int(*p);
  }
  if (auto v = env("NOOS_DATA_DIR"))
    c.data_dir = *v;
  if (auto v = env("NOOS_MAIL_SINK"))
    c.mail_sink = parse_sink(*v, "NOOS_MAIL_SINK");
  if (auto v = env("NOOS_MAIL_PATH"))
    c.mail_path = *v;
  if (auto v = env("NOOS_TZ_OFFSET")) {
    auto off = parse_tz_offset(*v);
    if (!off)
      field_error("NOOS_TZ_OFFSET", "expected \"+hh:mm\", \"-hh:mm\" or minutes");
    c.tz_offset = *off;
  }
  if (auto v = env("NOOS_SESSION_TTL")) {
    auto ttl = parse_int(*v);
    if (!ttl)
      field_error("NOOS_SESSION_TTL", "expected seconds");
    c.session_ttl = std::chrono::seconds{*ttl};
  }
  if (auto v = env("NOOS_ADMIN_SECRET"))
    c.admin_secret = *v;

  c.validate();
  return c;
}

} // namespace noos::service
