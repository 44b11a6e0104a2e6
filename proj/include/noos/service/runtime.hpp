#pragma once

#include "noos/engine.hpp"
#include "noos/service/api.hpp"
#include "noos/service/auth.hpp"
#include "noos/service/config.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace noos::service {

// Everything `serve` owns, wired from a Config: the file-backed engine,
// the mailer, sessions and the API.
class Runtime {
public:
  // Creates the data directory when needed and loads the log, resuming
  // from snapshot.json when it agrees with the log (a stale or unreadable
  // snapshot is ignored). An empty log gets the configured admin; without
  // a configured secret one is generated, see generated_secret().
  // Throws CorruptRecord when the log cannot be folded.
  explicit Runtime(const Config& config, std::shared_ptr<Clock> clock = nullptr);
  ~Runtime();

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  Engine& engine() { return *engine_; }
  SessionStore& sessions() { return *sessions_; }
  Api& api() { return *api_; }

  const std::string& generated_secret() const noexcept { return generated_secret_; }
  bool resumed_from_snapshot() const noexcept { return resumed_from_snapshot_; }

  // Flush the log and the mail queue, then write the snapshot. Idempotent.
  void shutdown();

private:
  Config config_;
  std::shared_ptr<Mailer> mailer_;
  std::unique_ptr<Engine> engine_;
  std::unique_ptr<SessionStore> sessions_;
  std::unique_ptr<Api> api_;
  std::string generated_secret_;
  bool resumed_from_snapshot_ = false;
  bool shut_down_ = false;
};

// Atomic replace via a temporary file in the same directory.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::optional<State> read_snapshot_file(const std::filesystem::path& path);

inline const std::vector<std::string>& known_reports() {
  static const std::vector<std::string> names{"participation", "closures", "export"};
  return names;
}

struct ReplayOptions {
  assess::RubricConfig rubric;
  notes::FrontMatter front;
  std::chrono::minutes tz_offset{0};
  // Closure range; defaults to the first and last day present in the log.
  std::optional<Day> from;
  std::optional<Day> to;
};

struct ReplayOutput {
  State state;
  std::vector<std::filesystem::path> written;
};

// Rebuilds state from `log_file` and writes into `out_dir`: snapshot.json,
// a copy of the log as events.jsonl (so the directory can be served), and
// per report: participation.tsv, closures.tsv, notes.tex plus
// notes.toc.txt. Throws unknown-report before touching anything, and
// CorruptRecord for unreadable or inapplicable records.
ReplayOutput replay(const std::filesystem::path& log_file, const std::filesystem::path& out_dir,
                    const std::vector<std::string>& reports, const ReplayOptions& options = {});

} // namespace noos::service
