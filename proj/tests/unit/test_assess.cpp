#include "noos/apply.hpp"
#include "noos/assess.hpp"

#include "support.hpp"

#include "doctest.h"

using namespace noos;
using namespace noos::assess;
using namespace noos::testing;
using namespace std::chrono;

namespace {

const UserId& s1 = student_ids[0];
const UserId& s2 = student_ids[1];

std::string chars(std::size_t n) { return std::string(n, 'x'); }

EventRecord resolved_at(Seq seq, Timestamp ts) {
  return {seq, ts, UserId("u"), std::string(kinds::correction_resolved), json::object()};
}

Day ymd(int y, unsigned m, unsigned d) { return sys_days{year{y} / month{m} / d}; }

} // namespace

TEST_SUITE("rubric") {
  TEST_CASE("content characters skip whitespace and comments") {
    CHECK(content_chars("") == 0);
    CHECK(content_chars("a b\tc\n") == 3);
    CHECK(content_chars("ab % hidden words\ncd") == 4);
    CHECK(content_chars("$x$") == 3);
    CHECK(content_chars("\\% kept") == 6);
  }

  TEST_CASE("score thresholds") {
    RubricConfig cfg;
    CHECK(score(0, 0, ReviewState::approved, cfg) == 0);
    CHECK(score(200, 0, ReviewState::approved, cfg) == 0);
    CHECK(score(201, 0, ReviewState::approved, cfg) == 1);
    CHECK(score(799, 0, ReviewState::approved, cfg) == 1);
    CHECK(score(800, 0, ReviewState::unreviewed, cfg) == 2);
    CHECK(score(800, 0, ReviewState::needs_work, cfg) == 2);
    CHECK(score(800, 1, ReviewState::approved, cfg) == 2);
    CHECK(score(800, 0, ReviewState::approved, cfg) == 3);
    CHECK(score(100, 0, ReviewState::approved, {50, 90}) == 3);
  }

  TEST_CASE("rubric thresholds are validated") {
    CHECK(errc_of([] { RubricConfig{0, 800}.validate(); }) == Errc::invalid_argument);
    CHECK(errc_of([] { RubricConfig{800, 800}.validate(); }) == Errc::invalid_argument);
    CHECK_FALSE(errc_of([] { RubricConfig{}.validate(); }));
  }

  TEST_CASE("entry score tracks revisions, corrections and review") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, chars(10)});
    auto now = [&] { return score_entry(*h->snapshot(), e.id).score; };
    CHECK(now() == 0);
    revise_entry(*h, s1, e.id, chars(300));
    CHECK(now() == 1);
    revise_entry(*h, s1, e.id, chars(900));
    CHECK(now() == 2);
    review_entry(*h, instructor_id, e.id, ReviewState::approved);
    CHECK(now() == 3);
    auto c = corrections::file_correction(*h, instructor_id, e.id, "one more thing");
    CHECK(now() == 2);
    corrections::resolve_correction(*h, s1, c.id, "done", "added");
    CHECK(now() == 3);
    CHECK(errc_of([&] { score_entry(*h->snapshot(), ObjectId("e404")); }) == Errc::entry_missing);
  }
}

TEST_SUITE("participation") {
  TEST_CASE("rows count current ownership and totals skip negligible entries") {
    Harness h;
    seed_users(*h);
    auto mk = [&](const UserId& u, std::size_t n) {
      return authority::create_entry(*h, u, {"t" + std::to_string(h->last_seq()), {},
                                             EntryKind::concept_, chars(n)});
    };
    mk(s1, 10);
    mk(s1, 300);
    auto moved = mk(s1, 900);
    mk(s2, 900);
    authority::orphan_entry(*h, s1, moved.id);
    authority::adopt_entry(*h, s2, moved.id);

    std::vector<UserId> users{s1, s2};
    auto r = participation_report(users, *h->snapshot());
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].histogram == std::array<int, 4>{1, 1, 0, 0});
    CHECK(r.rows[0].total == 1);
    CHECK(r.rows[0].owned == 2);
    CHECK(r.rows[1].histogram == std::array<int, 4>{0, 0, 2, 0});
    CHECK(r.rows[1].total == 2);
    CHECK(r.totals == std::array<int, 4>{1, 1, 2, 0});
    CHECK(r.grand_total == 3);
    CHECK(r.owned == 4);

    CHECK(to_tsv(r) ==
          "user\tc0\tc1\tc2\tc3\ttotal\n"
          "s1\t1\t1\t0\t0\t1\n"
          "s2\t0\t0\t2\t0\t2\n"
          "TOTAL\t1\t1\t2\t0\t3\n");
    auto j = to_json(r);
    CHECK(j["rows"][1]["owned"] == 2);
  }

  TEST_CASE("students() lists the student role in id order") {
    auto s = rebuild_state(course_log());
    auto list = students(s);
    REQUIRE(list.size() == 3);
    CHECK(list[0].str() == "student1");
    CHECK(list[2].str() == "student3");
  }

  TEST_CASE("owned sums to the live entries held by the listed users") {
    for (std::uint32_t seed = 21; seed <= 25; ++seed) {
      Harness h;
      run_mixed_workload(h, seed, 400);
      auto s = h->snapshot();
      std::vector<UserId> users;
      for (const auto& [id, u] : s->users)
        users.push_back(id);
      auto r = participation_report(users, *s);
      int live_owned = 0;
      for (const Entry* e : live_entries(*s))
        live_owned += e->owner ? 1 : 0;
      CHECK(r.owned == live_owned);
      int hist = 0;
      for (int v : r.totals)
        hist += v;
      CHECK(hist == r.owned);
      CHECK(r.grand_total == r.owned - r.totals[0]);
    }
  }
}

TEST_SUITE("closures") {
  TEST_CASE("closures bucket by local day inside the range") {
    auto base = sys_days{2003y / February / 3};
    std::vector<EventRecord> log{
        resolved_at(1, base + 10h),
        resolved_at(2, base + 23h + 30min),
        {3, base + 23h + 40min, UserId("u"), std::string(kinds::correction_filed), json::object()},
        resolved_at(4, base + days(1) + 1h),
        resolved_at(5, base + days(30)),
    };
    auto utc = closure_histogram(log, ymd(2003, 2, 1), ymd(2003, 2, 28));
    CHECK(utc.total == 3);
    CHECK(utc.counts.at(ymd(2003, 2, 3)) == 2);
    CHECK(utc.counts.at(ymd(2003, 2, 4)) == 1);
    CHECK(utc.axis().size() == 28);

    auto east = closure_histogram(log, ymd(2003, 2, 1), ymd(2003, 2, 28), minutes(60));
    CHECK(east.counts.at(ymd(2003, 2, 3)) == 1);
    CHECK(east.counts.at(ymd(2003, 2, 4)) == 2);

    CHECK(errc_of([&] { closure_histogram(log, ymd(2003, 3, 1), ymd(2003, 2, 1)); }) ==
          Errc::invalid_range);
  }

  TEST_CASE("bunching index") {
    CHECK_FALSE(bunching_index({}));
    CHECK(bunching_index({{ymd(2003, 1, 1), 4}}) == 1.0);
    // 11 active days: ceil(1.1) = 2 busiest days, 10 + 9 of 10+9+9*1 = 28.
    std::map<Day, int> counts{{ymd(2003, 1, 1), 10}, {ymd(2003, 1, 2), 9}};
    for (unsigned d = 3; d <= 11; ++d)
      counts[ymd(2003, 1, d)] = 1;
    REQUIRE(bunching_index(counts));
    CHECK(*bunching_index(counts) == doctest::Approx(19.0 / 28.0));
  }

  TEST_CASE("serializations") {
    std::vector<EventRecord> log{resolved_at(1, sys_days{2003y / February / 3} + 10h)};
    auto h = closure_histogram(log, ymd(2003, 2, 3), ymd(2003, 2, 4));
    CHECK(to_tsv(h) == "day\tcount\n2003-02-03\t1\n# bunching_index\t1.000000\n");
    auto j = to_json(h);
    CHECK(j["axis_days"] == 2);
    CHECK(j["counts"][0]["day"] == "2003-02-03");
    auto empty = closure_histogram({}, ymd(2003, 2, 3), ymd(2003, 2, 3));
    CHECK(to_json(empty)["bunching_index"].is_null());
    CHECK(to_tsv(empty) == "day\tcount\n# bunching_index\tabsent\n");
  }

  TEST_CASE("the fixture's closures sum to its resolved corrections") {
    auto log = course_log();
    auto s = rebuild_state(log);
    int resolved = 0;
    for (const auto& [id, c] : s.corrections)
      resolved += c.open() ? 0 : 1;
    auto h = closure_histogram(log, ymd(2003, 1, 1), ymd(2003, 12, 31));
    CHECK(h.total == resolved);
  }
}
