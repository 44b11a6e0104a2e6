// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs against the bundled fixtures only.

#include "noos/assess.hpp"
#include "noos/notes.hpp"

#include "../support/support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace noos;
using namespace noos::testing;
using namespace std::chrono;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

double seconds_since(steady_clock::time_point start) {
  return duration<double>(steady_clock::now() - start).count();
}

void table1(Outcome& out) {
  auto start = steady_clock::now();
  State s = rebuild_state(course_log());
  std::vector<UserId> users = {UserId("student1"), UserId("student2"), UserId("student3")};
  auto report = assess::participation_report(users, s);
  double elapsed = seconds_since(start);

  const std::array<std::array<int, 4>, 3> expected = {{{0, 1, 10, 26}, {1, 2, 10, 27}, {3, 6, 10, 16}}};
  const std::array<int, 3> totals = {37, 39, 32};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& row = report.rows[i];
    std::ostringstream got;
    got << row.user.str() << " (" << row.histogram[0] << "," << row.histogram[1] << ","
        << row.histogram[2] << "," << row.histogram[3] << " | " << row.total << ")";
    out.check(row.histogram == expected[i] && row.total == totals[i], got.str());
    out.detail << " " << got.str();
  }
  out.check(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  out.detail << " in " << elapsed << " s";
}

void trial_counts(Outcome& out) {
  State s = rebuild_state(course_log());
  std::size_t by_instructor = 0, by_student = 0;
  for (const auto& [id, c] : s.corrections) {
    const User& filer = s.user(c.filer, Errc::unknown_user);
    if (filer.role == Role::instructor)
      ++by_instructor;
    else if (filer.role == Role::student)
      ++by_student;
  }
  std::size_t active = requests::list_requests(s, requests::Filter::active).size();
  std::size_t orphans = authority::list_orphans(s).size();
  std::size_t entries = live_entries(s).size();
  auto report = assess::participation_report(assess::students(s), s);

  out.check(s.corrections.size() == 78, "corrections " + std::to_string(s.corrections.size()));
  out.check(by_instructor == 77 && by_student == 1, "filer split");
  out.check(active + orphans == 12, "unfilled " + std::to_string(active + orphans));
  out.check(entries == 122, "entries " + std::to_string(entries));
  out.check(report.grand_total == 108, "student rows total " + std::to_string(report.grand_total));
  out.detail << " corrections=" << s.corrections.size() << " (" << by_instructor
             << " instructor / " << by_student << " student), unfilled=" << active << "+"
             << orphans << ", entries=" << entries << ", student rows total=" << report.grand_total
             << " (owned incl. negligible " << report.owned << ")";
}

void closures(Outcome& out) {
  auto log = course_log();
  State s = rebuild_state(log);
  std::size_t resolved = 0;
  for (const auto& [id, c] : s.corrections)
    resolved += c.open() ? 0 : 1;
  auto h = assess::closure_histogram(log, sys_days{2003y / January / 1},
                                     sys_days{2003y / December / 31});
  int sum = 0;
  for (const auto& [day, n] : h.counts)
    sum += n;
  out.check(std::size_t(sum) == resolved, "histogram sums to " + std::to_string(sum));

  Harness hh;
  seed_users(*hh);
  for (int i = 0; i < 5; ++i) {
    auto e = authority::create_entry(*hh, student_ids[0], {"T" + std::to_string(i), {}, EntryKind::concept_, "x"});
    auto c = corrections::file_correction(*hh, instructor_id, e.id, "wrong");
    hh.clock->advance(hours(1));
    corrections::resolve_correction(*hh, student_ids[0], c.id, "fixed", "it was wrong");
  }
  auto one_day = assess::closure_histogram(hh->log(), sys_days{2003y / January / 1},
                                           sys_days{2003y / December / 31});
  out.check(one_day.bunching_index && *one_day.bunching_index == 1.0, "one-day bunching index");
  out.detail << " fixture sum=" << sum << " resolved=" << resolved << " days=" << h.counts.size()
             << " bunching=" << h.bunching_index.value_or(-1) << "; single-day bunching="
             << one_day.bunching_index.value_or(-1);
}

void authority_property(Outcome& out) {
  AuthorityStats stats;
  const std::uint32_t sequences = 10000;
  for (std::uint32_t seed = 1; seed <= sequences; ++seed)
    run_authority_sequence(seed, 12, stats);
  out.check(stats.violations.empty(), std::to_string(stats.violations.size()) + " violations" +
                                          (stats.violations.empty() ? "" : ": " + stats.violations.front()));
  out.detail << " sequences=" << sequences << " ops=" << stats.ops << " accepted=" << stats.accepted
             << " rejected=" << stats.rejected << " violations=" << stats.violations.size();
}

void autolink_oracle(Outcome& out) {
  auto start = steady_clock::now();
  std::size_t mismatches = 0, links = 0;
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    Rand rng(seed);
    Corpus corpus = random_corpus(rng, 100);
    auto index = autolink::TermIndex::build(corpus.entries);
    for (std::size_t k = 0; k < 5; ++k) {
      const auto& entry = corpus.entries[rng.below(corpus.entries.size())];
      std::string content = random_content(rng, 60);
      auto got = autolink::link(entry, content, index);
      auto want = oracle::link(entry, content, corpus.entries);
      links += want.links.size();
      if (got.content != want.content || got.links != want.links)
        ++mismatches;
    }
  }
  std::size_t round_trip_failures = 0;
  for (std::uint32_t seed = 1; seed <= 10000; ++seed) {
    Rand rng(seed * 7919u);
    Corpus corpus = random_corpus(rng, 20);
    auto index = autolink::TermIndex::build(corpus.entries);
    std::string content = random_content(rng, 1 + rng.below(50));
    auto linked = autolink::link(corpus.entries[0], content, index);
    if (autolink::strip_links(linked) != content)
      ++round_trip_failures;
  }
  double elapsed = seconds_since(start);
  out.check(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
  out.check(round_trip_failures == 0, std::to_string(round_trip_failures) + " round-trip failures");
  out.check(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  out.detail << " corpora=200 links=" << links << " mismatches=" << mismatches
             << " round-trips=10000 failures=" << round_trip_failures << " in " << elapsed << " s";
}

void export_golden(Outcome& out) {
  State s = rebuild_state(notes_log());
  notes::CompileOptions opts;
  opts.front = {"Topics in Ordinary Differential Equations",
                "Collaborative course notes compiled by the students of Math 5190",
                "Dalhousie University", "April 18, 2003"};
  auto doc = notes::compile(s, opts);
  std::string toc = notes::serialize(doc, notes::Format::toc_text);
  std::string golden = read_text(golden_path("notes_corpus.toc.txt"));
  out.check(!golden.empty(), "golden file missing");
  out.check(toc == golden, "toc-text differs from golden");
  std::size_t alphabetical = 0, subsections = 0;
  for (const auto& sec : doc.sections) {
    alphabetical += sec.entry ? 1 : 0;
    subsections += sec.subsections.size();
  }
  out.check(alphabetical == 79 && doc.sections.size() == 83, "section counts");
  out.check(notes::serialize(doc, notes::Format::latex) == notes::serialize(doc, notes::Format::latex),
            "latex not deterministic");
  out.detail << " sections=" << doc.sections.size() << " (alphabetical " << alphabetical
             << ", collections " << doc.sections.size() - alphabetical << ", subsections "
             << subsections << "), toc bytes=" << toc.size();
}

void event_sourcing(Outcome& out) {
  std::size_t diffs = 0;
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    Harness h;
    run_mixed_workload(h, seed, 1000);
    auto log = h->log();
    if (log.size() < 1000)
      ++diffs;
    State rebuilt = rebuild_state(log);
    if (!(rebuilt == *h->snapshot()))
      ++diffs;
    State reparsed = rebuild_state(parse_log(format_log(log)));
    if (encode_snapshot(reparsed) != encode_snapshot(rebuild_state(log)))
      ++diffs;
    if (encode_snapshot(rebuilt) != encode_snapshot(*h->snapshot()))
      ++diffs;
  }
  for (const auto& log : {course_log(), notes_log()})
    if (encode_snapshot(rebuild_state(log)) != encode_snapshot(rebuild_state(log)))
      ++diffs;
  out.check(diffs == 0, std::to_string(diffs) + " diffs");
  out.detail << " randomized sequences=5x1000 events, fixture double replays=2, diffs=" << diffs;
}

void notification_conservation(Outcome& out) {
  auto log = course_log();
  State s;
  std::size_t filings = 0, owner_notices = 0, resolutions = 0, filer_notices = 0;
  std::size_t self = 0, duplicates = 0;
  for (const auto& rec : log) {
    std::optional<UserId> owner;
    if (rec.kind == kinds::correction_filed) {
      const Entry& e = s.entry(ObjectId(rec.payload.at("entry").get<std::string>()));
      owner = e.owner;
    }
    std::optional<UserId> filer;
    if (rec.kind == kinds::correction_resolved)
      filer = s.corrections.at(ObjectId(rec.payload.at("correction").get<std::string>())).filer;
    apply(s, rec);

    auto notices = notify::notices_for_event(s, rec.seq);
    std::set<UserId> seen;
    for (const auto& n : notices) {
      if (n.user == rec.actor)
        ++self;
      if (!seen.insert(n.user).second)
        ++duplicates;
    }
    auto count_for = [&](const UserId& u) {
      return std::count_if(notices.begin(), notices.end(), [&](const Notice& n) {
        return n.user == u && n.cause == NoticeCause::implicit;
      });
    };
    if (rec.kind == kinds::correction_filed && owner) {
      ++filings;
      owner_notices += count_for(*owner) == 1 ? 1 : 0;
    }
    if (rec.kind == kinds::correction_resolved) {
      ++resolutions;
      filer_notices += count_for(*filer) == 1 ? 1 : 0;
    }
  }
  out.check(filings == 78 && owner_notices == filings, "owner notices");
  out.check(filer_notices == resolutions, "filer notices");
  out.check(self == 0, std::to_string(self) + " self-notices");
  out.check(duplicates == 0, std::to_string(duplicates) + " duplicates");
  out.detail << " filings=" << filings << " owner-notices=" << owner_notices
             << " resolutions=" << resolutions << " filer-notices=" << filer_notices
             << " self=" << self << " duplicates=" << duplicates;
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"Fixture replay: participation table rows", table1},
      {"Fixture replay: trial counts", trial_counts},
      {"Closure histogram", closures},
      {"Authority state machine property suite", authority_property},
      {"Autolink oracle equivalence and strip round trip", autolink_oracle},
      {"Export golden table of contents", export_golden},
      {"Event-sourcing determinism", event_sourcing},
      {"Notification conservation", notification_conservation},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << "  " << name << ":" << out.detail.str() << "\n";
    failures += out.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
