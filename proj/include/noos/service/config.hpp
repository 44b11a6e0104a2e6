#pragma once

#include "noos/assess.hpp"
#include "noos/notes.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace noos::service {

enum class MailSinkKind { none, file };

struct Config {
  std::string listen = "127.0.0.1";
  int port = 8080; // 0 picks an ephemeral port
  std::filesystem::path data_dir = "data";
  assess::RubricConfig rubric;
  MailSinkKind mail_sink = MailSinkKind::file;
  std::filesystem::path mail_path; // empty means <data_dir>/mail.jsonl
  std::chrono::minutes tz_offset{0};
  notes::FrontMatter front;
  std::chrono::seconds session_ttl{8 * 3600};
  std::string admin_id = "admin";
  std::string admin_name = "Administrator";
  std::string admin_email;
  std::string admin_secret; // only used to seed an empty log

  std::filesystem::path events_path() const { return data_dir / "events.jsonl"; }
  std::filesystem::path snapshot_path() const { return data_dir / "snapshot.json"; }
  std::filesystem::path resolved_mail_path() const {
    return mail_path.empty() ? data_dir / "mail.jsonl" : mail_path;
  }

  // Throws invalid-config naming the offending field.
  void validate() const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Process environment.
std::optional<std::string> getenv_lookup(const std::string& name);

// Parses a JSON config document. Unknown keys, wrong types and syntax
// errors raise invalid-config with a "line N" or "field x.y" diagnostic.
Config parse_config(std::string_view text);

// File (optional), then NOOS_* environment overrides, then validation.
Config load_config(const std::optional<std::filesystem::path>& path,
                   const EnvLookup& env = getenv_lookup);

// "+02:00", "-0330", "0" or a plain minute count.
std::optional<std::chrono::minutes> parse_tz_offset(std::string_view s);

} // namespace noos::service
