#include "noos/assess.hpp"

#include "noos/autolink.hpp"
#include "noos/error.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace noos::assess {

void RubricConfig::validate() const {
  if (negligible_max_chars <= 0 || negligible_max_chars >= developed_min_chars)
    fail(Errc::invalid_argument,
         "rubric thresholds must satisfy 0 < negligible_max_chars < developed_min_chars");
}

std::size_t content_chars(std::string_view latex) {
  std::size_t n = 0;
  for (const auto& seg : autolink::tokenize(latex).segments) {
    if (seg.kind == autolink::SegmentKind::comment)
      continue;
    for (unsigned char c : seg.content)
      if (!autolink::is_space(c))
        ++n;
  }
  return n;
}

int score(std::size_t chars, std::size_t open_corrections, ReviewState review,
          const RubricConfig& config) {
  if (chars <= std::size_t(config.negligible_max_chars))
    return 0;
  if (chars >= std::size_t(config.developed_min_chars))
    return open_corrections == 0 && review == ReviewState::approved ? 3 : 2;
  return 1;
}

std::size_t open_correction_count(const State& s, const ObjectId& entry) {
  return std::count_if(s.corrections.begin(), s.corrections.end(), [&](const auto& kv) {
    return kv.second.entry == entry && kv.second.open();
  });
}

EntryScore score_entry(const State& s, const ObjectId& entry, const RubricConfig& config) {
  const Entry& e = s.entry(entry);
  return {e.id, score(content_chars(e.content), open_correction_count(s, e.id), e.review_state,
                      config)};
}

ParticipationReport participation_report(std::span<const UserId> users, const State& s,
                                         const RubricConfig& config) {
  std::map<ObjectId, std::size_t> open;
  for (const auto& [id, c] : s.corrections)
    if (c.open())
      ++open[c.entry];

  std::map<UserId, std::array<int, 4>> by_owner;
  for (const Entry* e : live_entries(s)) {
    if (!e->owner)
      continue;
    auto it = open.find(e->id);
    int sc = score(content_chars(e->content), it == open.end() ? 0 : it->second,
                   e->review_state, config);
    ++by_owner[*e->owner][sc];
  }

  ParticipationReport report;
  for (const auto& uid : users) {
    ParticipationRow row;
    row.user = uid;
    if (const User* u = s.find_user(uid))
      row.name = u->name;
    if (auto it = by_owner.find(uid); it != by_owner.end())
      row.histogram = it->second;
    for (int k = 0; k < 4; ++k) {
      row.owned += row.histogram[k];
      row.total += k > 0 ? row.histogram[k] : 0;
      report.totals[k] += row.histogram[k];
    }
    report.grand_total += row.total;
    report.owned += row.owned;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<UserId> students(const State& s) {
  std::vector<UserId> out;
  for (const auto& [id, u] : s.users)
    if (u.role == Role::student)
      out.push_back(id);
  return out;
}

std::string to_tsv(const ParticipationReport& report) {
  std::string out = "user\tc0\tc1\tc2\tc3\ttotal\n";
  auto line = [&](std::string_view who, const std::array<int, 4>& h, int total) {
    out += who;
    for (int v : h)
      out += "\t" + std::to_string(v);
    out += "\t" + std::to_string(total) + "\n";
  };
  for (const auto& row : report.rows)
    line(row.user.str(), row.histogram, row.total);
  line("TOTAL", report.totals, report.grand_total);
  return out;
}

json to_json(const ParticipationReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"user", r.user.str()},
                    {"name", r.name},
                    {"histogram", r.histogram},
                    {"total", r.total},
                    {"owned", r.owned}});
  return {{"rows", rows},
          {"totals", report.totals},
          {"grand_total", report.grand_total},
          {"owned", report.owned}};
}

std::vector<Day> ClosureHistogram::axis() const {
  std::vector<Day> out;
  for (Day d = from; d <= to; d += std::chrono::days{1})
    out.push_back(d);
  return out;
}

std::optional<double> bunching_index(const std::map<Day, int>& counts) {
  if (counts.empty())
    return std::nullopt;
  std::vector<int> v;
  int total = 0;
  for (const auto& [day, n] : counts) {
    v.push_back(n);
    total += n;
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  std::size_t top = (v.size() + 9) / 10;
  int busiest = 0;
  for (std::size_t i = 0; i < top; ++i)
    busiest += v[i];
  return double(busiest) / double(total);
}

ClosureHistogram closure_histogram(std::span<const EventRecord> log, Day from, Day to,
                                   std::chrono::minutes utc_offset) {
  if (from > to)
    fail(Errc::invalid_range, "from day " + format_day(from) + " is after to day " +
                                  format_day(to));
  ClosureHistogram h;
  h.from = from;
  h.to = to;
  for (const auto& rec : log) {
    if (rec.kind != kinds::correction_resolved)
      continue;
    Day d = day_of(rec.ts, utc_offset);
    if (d < from || d > to)
      continue;
    ++h.counts[d];
    ++h.total;
  }
  h.bunching_index = bunching_index(h.counts);
  return h;
}

std::string to_tsv(const ClosureHistogram& h) {
  std::string out = "day\tcount\n";
  for (const auto& [day, n] : h.counts)
    out += format_day(day) + "\t" + std::to_string(n) + "\n";
  if (h.bunching_index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *h.bunching_index);
    out += "# bunching_index\t" + std::string(buf) + "\n";
  } else {
    out += "# bunching_index\tabsent\n";
  }
  return out;
}

json to_json(const ClosureHistogram& h) {
  json counts = json::array();
  for (const auto& [day, n] : h.counts)
    counts.push_back({{"day", format_day(day)}, {"count", n}});
  json j = {{"from", format_day(h.from)},
            {"to", format_day(h.to)},
            {"counts", counts},
            {"total", h.total},
            {"axis_days", h.axis().size()}};
  j["bunching_index"] = h.bunching_index ? json(*h.bunching_index) : json(nullptr);
  return j;
}

} // namespace noos::assess
