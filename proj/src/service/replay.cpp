#include "noos/service/runtime.hpp"

#include "noos/apply.hpp"
#include "noos/assess.hpp"
#include "noos/error.hpp"
#include "noos/event_store.hpp"
#include "noos/notes.hpp"

#include <algorithm>

namespace noos::service {

ReplayOutput replay(const std::filesystem::path& log_file, const std::filesystem::path& out_dir,
                    const std::vector<std::string>& reports, const ReplayOptions& options) {
  const auto& known = known_reports();
  for (const auto& r : reports)
    if (std::find(known.begin(), known.end(), r) == known.end())
      fail(Errc::unknown_report,
           "unknown report \"" + r + "\"; expected participation, closures or export");
  options.rubric.validate();

  auto log = read_log_file(log_file);
  ReplayOutput out;
  out.state = rebuild_state(log);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    fail(Errc::storage_failure, "cannot create " + out_dir.string() + ": " + ec.message());
  auto emit = [&](const char* name, std::string_view body) {
    auto path = out_dir / name;
    write_file_atomic(path, body);
    out.written.push_back(path);
  };

  emit("snapshot.json", encode_snapshot(out.state));
  // Re-encoded rather than copied, so the served log is in canonical form.
  emit("events.jsonl", format_log(log));

  auto wants = [&](const char* name) {
    return std::find(reports.begin(), reports.end(), name) != reports.end();
  };
  if (wants("participation")) {
    auto users = assess::students(out.state);
    emit("participation.tsv",
         assess::to_tsv(assess::participation_report(users, out.state, options.rubric)));
  }
  if (wants("closures")) {
    Day first{}, last{};
    if (!log.empty()) {
      first = day_of(log.front().ts, options.tz_offset);
      last = day_of(log.back().ts, options.tz_offset);
    }
    auto h = assess::closure_histogram(log, options.from.value_or(first),
                                       options.to.value_or(last), options.tz_offset);
    emit("closures.tsv", assess::to_tsv(h));
  }
  if (wants("export")) {
    notes::CompileOptions opts;
    opts.front = options.front;
    opts.rubric = options.rubric;
    auto doc = notes::compile(out.state, opts);
    emit("notes.tex", notes::serialize(doc, notes::Format::latex));
    emit("notes.toc.txt", notes::serialize(doc, notes::Format::toc_text));
  }
  return out;
}

} // namespace noos::service
