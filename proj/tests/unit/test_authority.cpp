#include "support.hpp"

#include "doctest.h"

#include <atomic>
#include <thread>

using namespace noos;
using namespace noos::testing;

namespace {

const UserId& s1 = student_ids[0];
const UserId& s2 = student_ids[1];
const UserId& s3 = student_ids[2];

Entry make_entry(Engine& eng, const UserId& author, const std::string& title,
                 const std::string& content = "Some text.") {
  return authority::create_entry(eng, author, {title, {}, EntryKind::concept_, content});
}

} // namespace

TEST_SUITE("authority") {
  TEST_CASE("creation makes the author the owner at revision 1") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Lipschitz condition");
    CHECK(e.owner == s1);
    CHECK(e.revision == 1);
    CHECK(e.id.str() == "e6");
    CHECK(e.review_state == ReviewState::unreviewed);
  }

  TEST_CASE("creation input is validated") {
    Harness h;
    seed_users(*h);
    CHECK(errc_of([&] { make_entry(*h, s1, ""); }) == Errc::empty_title);
    CHECK(errc_of([&] { make_entry(*h, s1, "  \t"); }) == Errc::empty_title);
    CHECK(errc_of([&] { make_entry(*h, UserId("ghost"), "Flow"); }) == Errc::unknown_user);
    CHECK(h->last_seq() == 5);
  }

  TEST_CASE("only the owner orphans, and only once") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow");
    CHECK(errc_of([&] { authority::orphan_entry(*h, s2, e.id); }) == Errc::not_owner);
    auto o = authority::orphan_entry(*h, s1, e.id);
    CHECK(o.orphaned());
    CHECK(errc_of([&] { authority::orphan_entry(*h, s1, e.id); }) == Errc::already_orphaned);
    CHECK(h->log().back().kind == kinds::entry_orphaned);
  }

  TEST_CASE("moderators may orphan someone else's entry") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow");
    auto o = authority::orphan_entry(*h, instructor_id, e.id);
    CHECK(o.orphaned());
    CHECK(h->log().back().kind == kinds::entry_force_orphaned);
  }

  TEST_CASE("adoption is first come, first served") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow");
    CHECK(errc_of([&] { authority::adopt_entry(*h, s2, e.id); }) == Errc::not_orphaned);
    authority::orphan_entry(*h, s1, e.id);
    auto a = authority::adopt_entry(*h, s2, e.id);
    CHECK(a.owner == s2);
    CHECK(errc_of([&] { authority::adopt_entry(*h, s3, e.id); }) == Errc::not_orphaned);
    CHECK(h->snapshot()->entry(e.id).owner == s2);
  }

  TEST_CASE("a former owner may adopt back") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow");
    authority::orphan_entry(*h, s1, e.id);
    CHECK(authority::adopt_entry(*h, s1, e.id).owner == s1);
  }

  TEST_CASE("concurrent adopters: exactly one wins") {
    for (int round = 0; round < 20; ++round) {
      Harness h;
      seed_users(*h);
      auto e = make_entry(*h, s1, "Flow");
      authority::orphan_entry(*h, s1, e.id);
      std::atomic<int> wins{0}, losses{0};
      std::vector<std::thread> threads;
      for (const auto& who : {s2, s3, instructor_id})
        threads.emplace_back([&, who] {
          auto code = errc_of([&] { authority::adopt_entry(*h, who, e.id); });
          (code ? losses : wins)++;
          if (code)
            CHECK(*code == Errc::not_orphaned);
        });
      for (auto& t : threads)
        t.join();
      CHECK(wins == 1);
      CHECK(losses == 2);
      CHECK(h->last_seq() == 8);
    }
  }

  TEST_CASE("transfer rules") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow");
    CHECK(errc_of([&] { authority::transfer_entry(*h, s2, e.id, s3); }) == Errc::not_owner);
    CHECK(errc_of([&] { authority::transfer_entry(*h, s1, e.id, s1); }) == Errc::self_transfer);
    CHECK(errc_of([&] { authority::transfer_entry(*h, s1, e.id, UserId("ghost")); }) ==
          Errc::unknown_recipient);
    CHECK(authority::transfer_entry(*h, s1, e.id, s2).owner == s2);
    authority::orphan_entry(*h, s2, e.id);
    CHECK(errc_of([&] { authority::transfer_entry(*h, s2, e.id, s3); }) == Errc::not_owner);
  }

  TEST_CASE("missing and deleted entries") {
    Harness h;
    seed_users(*h);
    CHECK(errc_of([&] { authority::adopt_entry(*h, s1, ObjectId("e99")); }) ==
          Errc::entry_missing);
    auto e = make_entry(*h, s1, "Flow");
    CHECK(errc_of([&] { delete_entry(*h, s2, e.id); }) == Errc::not_owner);
    delete_entry(*h, s1, e.id);
    CHECK(h->snapshot()->find_entry(e.id) == nullptr);
    CHECK(errc_of([&] { authority::orphan_entry(*h, s1, e.id); }) == Errc::entry_missing);
    // Ids come from seq, so the tombstoned id is never handed out again.
    auto next = make_entry(*h, s1, "Flow");
    CHECK(next.id != e.id);
  }

  TEST_CASE("the orphan list is oldest first and skips tombstones") {
    Harness h;
    seed_users(*h);
    auto a = make_entry(*h, s1, "A");
    auto b = make_entry(*h, s2, "B");
    auto c = make_entry(*h, s3, "C");
    authority::orphan_entry(*h, s3, c.id);
    authority::orphan_entry(*h, s1, a.id);
    authority::orphan_entry(*h, s2, b.id);
    delete_entry(*h, instructor_id, b.id);
    auto orphans = authority::list_orphans(*h->snapshot());
    REQUIRE(orphans.size() == 2);
    CHECK(orphans[0].id == a.id);
    CHECK(orphans[1].id == c.id);
  }
}

TEST_SUITE("revision and review") {
  TEST_CASE("owner revises; others and stale callers do not") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow", "v1");
    CHECK(revise_entry(*h, s1, e.id, "v2").revision == 2);
    CHECK(errc_of([&] { revise_entry(*h, s2, e.id, "v3"); }) == Errc::not_owner);
    CHECK(errc_of([&] { revise_entry(*h, s1, e.id, "v3", 1); }) == Errc::revision_conflict);
    CHECK(errc_of([&] { revise_entry(*h, s1, e.id, "v2"); }) == Errc::invalid_argument);
    CHECK(revise_entry(*h, s1, e.id, "v3", 2).revision == 3);
  }

  TEST_CASE("orphans are frozen for students but not for moderators") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow", "v1");
    authority::orphan_entry(*h, s1, e.id);
    CHECK(errc_of([&] { revise_entry(*h, s1, e.id, "v2"); }) == Errc::orphaned_entry);
    auto r = revise_entry(*h, instructor_id, e.id, "v2");
    CHECK(r.revision == 2);
    CHECK(r.orphaned());
  }

  TEST_CASE("review is a moderator judgment") {
    Harness h;
    seed_users(*h);
    auto e = make_entry(*h, s1, "Flow");
    CHECK(errc_of([&] { review_entry(*h, s1, e.id, ReviewState::approved); }) == Errc::forbidden);
    CHECK(review_entry(*h, instructor_id, e.id, ReviewState::approved).review_state ==
          ReviewState::approved);
  }

  TEST_CASE("roles change only by an admin") {
    Harness h;
    seed_users(*h);
    CHECK(errc_of([&] { change_role(*h, instructor_id, s1, Role::auditor); }) == Errc::forbidden);
    CHECK(errc_of([&] { change_role(*h, admin_id, UserId("ghost"), Role::auditor); }) ==
          Errc::unknown_user);
    CHECK(change_role(*h, admin_id, s1, Role::auditor).role == Role::auditor);
  }

  TEST_CASE("user creation validates and is admin-only") {
    Harness h;
    seed_users(*h);
    CHECK(errc_of([&] {
            create_user(*h, instructor_id, {UserId("s4"), "S4", Role::student, "", ""});
          }) == Errc::forbidden);
    CHECK(errc_of([&] {
            create_user(*h, admin_id, {UserId("s1"), "Again", Role::student, "", ""});
          }) == Errc::invalid_argument);
    CHECK(errc_of([&] {
            create_user(*h, admin_id, {UserId("s4"), "S4", Role::student, "not-an-address", ""});
          }) == Errc::invalid_argument);
    CHECK(errc_of([&] {
            create_user(*h, admin_id, {UserId("bad id"), "S4", Role::student, "", ""});
          }) == Errc::invalid_argument);
    CHECK(create_user(*h, admin_id, {UserId("s4"), "S4", Role::student, "", ""}).email.empty());
  }
}

TEST_SUITE("authority properties") {
  TEST_CASE("random sequences keep exactly one owner or orphaned, and rejections change nothing") {
    AuthorityStats stats;
    for (std::uint32_t seed = 1; seed <= 300; ++seed)
      run_authority_sequence(seed, 25, stats);
    CHECK(stats.violations.empty());
    CHECK(stats.accepted > 0);
    CHECK(stats.rejected > 0);
  }
}
