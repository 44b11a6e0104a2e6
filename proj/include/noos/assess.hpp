#pragma once

#include "noos/event.hpp"
#include "noos/state.hpp"

#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace noos::assess {

struct RubricConfig {
  int negligible_max_chars = 200;
  int developed_min_chars = 800;

  // Throws invalid-argument unless 0 < negligible < developed.
  void validate() const;
};

// Non-whitespace bytes outside comment segments.
std::size_t content_chars(std::string_view latex);

struct EntryScore {
  ObjectId entry;
  int score = 0;

  friend bool operator==(const EntryScore&, const EntryScore&) = default;
};

int score(std::size_t chars, std::size_t open_corrections, ReviewState review,
          const RubricConfig& config);

// Throws entry-missing for unknown or tombstoned entries.
EntryScore score_entry(const State& s, const ObjectId& entry, const RubricConfig& config = {});

std::size_t open_correction_count(const State& s, const ObjectId& entry);

struct ParticipationRow {
  UserId user;
  std::string name;
  std::array<int, 4> histogram{}; // entries scoring 0, 1, 2, 3
  int total = 0;                  // entries scoring 1 to 3; negligible ones do not count
  int owned = 0;                  // every live entry the user owns

  friend bool operator==(const ParticipationRow&, const ParticipationRow&) = default;
};

struct ParticipationReport {
  std::vector<ParticipationRow> rows;
  std::array<int, 4> totals{};
  int grand_total = 0;
  int owned = 0;

  friend bool operator==(const ParticipationReport&, const ParticipationReport&) = default;
};

// One row per listed user, in the order given, over the live entries each
// currently owns.
ParticipationReport participation_report(std::span<const UserId> users, const State& s,
                                         const RubricConfig& config = {});

// Every user holding the student role, in id order.
std::vector<UserId> students(const State& s);

// Tab-separated: header, one row per user, then a TOTAL row.
std::string to_tsv(const ParticipationReport& report);
json to_json(const ParticipationReport& report);

struct ClosureHistogram {
  Day from{};
  Day to{};
  std::map<Day, int> counts; // days with no closures are absent
  int total = 0;
  std::optional<double> bunching_index;

  // Every day in [from, to], inclusive.
  std::vector<Day> axis() const;

  friend bool operator==(const ClosureHistogram&, const ClosureHistogram&) = default;
};

// Buckets correction.resolved events by local calendar day. Throws
// invalid-range when from > to.
ClosureHistogram closure_histogram(std::span<const EventRecord> log, Day from, Day to,
                                   std::chrono::minutes utc_offset = {});

// Share of closures on the busiest ceil(10%) of active days.
std::optional<double> bunching_index(const std::map<Day, int>& counts);

std::string to_tsv(const ClosureHistogram& h);
json to_json(const ClosureHistogram& h);

} // namespace noos::assess
