#include "noos/apply.hpp"
#include "noos/mail.hpp"

#include "support.hpp"

#include "doctest.h"

#include <unistd.h>

using namespace noos;
using namespace noos::testing;
using namespace std::chrono_literals;

namespace {

const UserId& s1 = student_ids[0];
const UserId& s2 = student_ids[1];
const UserId& s3 = student_ids[2];

ObjectRef entry_ref(const ObjectId& id) { return {ObjectKind::entry, id}; }

// Fails the first `failures` deliveries, then records.
class FlakySink final : public MailSink {
public:
  explicit FlakySink(int failures) : failures_left_(failures) {}

  void deliver(const MailMessage& m) override {
    std::lock_guard lock(mu_);
    ++attempts_;
    if (failures_left_ > 0) {
      --failures_left_;
      throw std::runtime_error("smtp unavailable");
    }
    delivered_.push_back(m);
  }

  std::vector<MailMessage> delivered() {
    std::lock_guard lock(mu_);
    return delivered_;
  }
  int attempts() {
    std::lock_guard lock(mu_);
    return attempts_;
  }

private:
  std::mutex mu_;
  int failures_left_;
  int attempts_ = 0;
  std::vector<MailMessage> delivered_;
};

std::size_t notices_of(const State& s, const UserId& u) {
  return notify::inbox(s, u, notify::InboxFilter::all).size();
}

} // namespace

TEST_SUITE("notify") {
  TEST_CASE("filing notifies the owner; resolving notifies the filer") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, "x"});
    auto c = corrections::file_correction(*h, s2, e.id, "Define the domain.");
    auto s = h->snapshot();
    auto owner_inbox = notify::inbox(*s, s1, notify::InboxFilter::unread);
    REQUIRE(owner_inbox.size() == 1);
    CHECK(owner_inbox[0].cause == NoticeCause::implicit);
    CHECK(owner_inbox[0].summary.find("Define the domain.") != std::string::npos);
    CHECK(notices_of(*s, s2) == 0);

    corrections::resolve_correction(*h, s1, c.id, "Added the domain", "It was missing.");
    s = h->snapshot();
    REQUIRE(notices_of(*s, s2) == 1);
    CHECK(notices_of(*s, s1) == 1);
  }

  TEST_CASE("no notice ever goes to the actor") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, "x"});
    notify::add_watch(*h, s1, entry_ref(e.id), {true, true});
    auto c = corrections::file_correction(*h, s1, e.id, "Self-review: typo.");
    corrections::resolve_correction(*h, s1, c.id, "fixed", "typo");
    CHECK(notices_of(*h->snapshot(), s1) == 0);
  }

  TEST_CASE("watchers hear about their objects once per event") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, "x"});
    notify::add_watch(*h, s2, entry_ref(e.id), {true, false});
    notify::add_watch(*h, s1, entry_ref(e.id), {false, true});
    auto c = corrections::file_correction(*h, instructor_id, e.id, "Needs an example.");
    auto s = h->snapshot();
    auto seq = h->last_seq();
    auto produced = notify::notices_for_event(*s, seq);
    REQUIRE(produced.size() == 2);
    // s1 is both owner and watcher: one notice, implicit, channels unioned.
    const Notice* owner = nullptr;
    for (const auto& n : produced)
      if (n.user == s1)
        owner = &n;
    REQUIRE(owner);
    CHECK(owner->cause == NoticeCause::implicit);
    CHECK(owner->channels == Channels{true, true});
    CHECK(notify::inbox(*s, s2, notify::InboxFilter::all)[0].cause == NoticeCause::watch);

    // Resolving touches the correction and the entry; s2 still gets one.
    corrections::resolve_correction(*h, s1, c.id, "Added one", "Example 2");
    CHECK(notify::notices_for_event(*h->snapshot(), h->last_seq()).size() == 2);
  }

  TEST_CASE("watch management") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, "x"});
    CHECK(errc_of([&] { notify::add_watch(*h, s2, entry_ref(e.id), {false, false}); }) ==
          Errc::empty_channels);
    CHECK(errc_of([&] { notify::add_watch(*h, s2, entry_ref(ObjectId("e404")), {true, false}); }) ==
          Errc::unknown_object);
    CHECK(errc_of([&] { notify::remove_watch(*h, s2, entry_ref(e.id)); }) == Errc::no_such_watch);
    notify::add_watch(*h, s2, entry_ref(e.id), {true, false});
    auto updated = notify::add_watch(*h, s2, entry_ref(e.id), {true, true});
    CHECK(updated.channels == Channels{true, true});
    CHECK(h->snapshot()->watches.size() == 1);
    notify::remove_watch(*h, s2, entry_ref(e.id));
    CHECK(h->snapshot()->watches.empty());
    corrections::file_correction(*h, s3, e.id, "x");
    CHECK(notices_of(*h->snapshot(), s2) == 0);
  }

  TEST_CASE("mark_read is idempotent and personal") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, "x"});
    corrections::file_correction(*h, s2, e.id, "x");
    auto n = notify::inbox(*h->snapshot(), s1, notify::InboxFilter::unread).at(0);
    CHECK(errc_of([&] { notify::mark_read(*h, s2, n.id); }) == Errc::not_your_notice);
    CHECK(errc_of([&] { notify::mark_read(*h, s1, ObjectId("n1-1")); }) == Errc::notice_missing);
    CHECK(notify::mark_read(*h, s1, n.id).read);
    auto after_first = *h->snapshot();
    CHECK(notify::mark_read(*h, s1, n.id).read);
    auto after_second = *h->snapshot();
    CHECK(after_second.notices == after_first.notices);
    CHECK(notify::inbox(after_second, s1, notify::InboxFilter::unread).empty());
    CHECK(notify::inbox(after_second, s1, notify::InboxFilter::all).size() == 1);
  }

  TEST_CASE("inbox is newest first and needs a known user") {
    Harness h;
    seed_users(*h);
    auto e = authority::create_entry(*h, s1, {"Flow", {}, EntryKind::concept_, "x"});
    corrections::file_correction(*h, s2, e.id, "first");
    corrections::file_correction(*h, s3, e.id, "second");
    auto box = notify::inbox(*h->snapshot(), s1, notify::InboxFilter::all);
    REQUIRE(box.size() == 2);
    CHECK(box[0].event_seq > box[1].event_seq);
    CHECK(errc_of([&] { notify::inbox(*h->snapshot(), UserId("ghost"), notify::InboxFilter::all); }) ==
          Errc::unknown_user);
    CHECK(notify::parse_inbox_filter("unread") == notify::InboxFilter::unread);
    CHECK_FALSE(notify::parse_inbox_filter("new"));
  }

  TEST_CASE("conservation over random workloads") {
    for (std::uint32_t seed = 11; seed <= 15; ++seed) {
      Harness h;
      run_mixed_workload(h, seed, 500);
      auto s = h->snapshot();
      auto log = h->log();
      std::set<std::pair<Seq, UserId>> seen;
      for (const auto& [id, n] : s->notices) {
        CHECK(seen.insert({n.event_seq, n.user}).second);
        CHECK(log.at(std::size_t(n.event_seq) - 1).actor != n.user);
      }
    }
  }
}

TEST_SUITE("mail") {
  TEST_CASE("mail lines round-trip") {
    MailMessage m{"a@example.org", "subject \"quoted\"", "body\nline two", 42};
    CHECK(decode_mail(encode_mail(m)) == m);
  }

  TEST_CASE("email-channel notices become mail; addressless users get none") {
    Harness h;
    seed_users(*h);
    create_user(*h, admin_id, {UserId("quiet"), "Quiet", Role::student, "", ""});
    auto e = authority::create_entry(*h, UserId("quiet"), {"Flow", {}, EntryKind::concept_, "x"});
    corrections::file_correction(*h, s2, e.id, "x");
    CHECK(notify::mail_for(*h->snapshot(), h->last_seq()).empty());

    auto e2 = authority::create_entry(*h, s1, {"Flow 2", {}, EntryKind::concept_, "x"});
    corrections::file_correction(*h, s2, e2.id, "y");
    auto mail = notify::mail_for(*h->snapshot(), h->last_seq());
    REQUIRE(mail.size() == 1);
    CHECK(mail[0].to == "s1@example.org");
    CHECK(mail[0].event_seq == h->last_seq());
  }

  TEST_CASE("the mailer retries a failing sink until delivery") {
    auto sink = std::make_shared<FlakySink>(3);
    Mailer mailer(sink, 5ms);
    mailer.enqueue({{"a@example.org", "s", "b", 1}, {"b@example.org", "s", "b", 2}});
    CHECK(mailer.flush(5s));
    CHECK(mailer.pending() == 0);
    CHECK(mailer.delivered() == 2);
    CHECK(sink->delivered().size() == 2);
    CHECK(sink->attempts() == 5);
  }

  TEST_CASE("flush reports failure while the sink stays down") {
    auto sink = std::make_shared<FlakySink>(1000000);
    Mailer mailer(sink, 1ms);
    mailer.enqueue({{"a@example.org", "s", "b", 1}});
    CHECK_FALSE(mailer.flush(50ms));
    CHECK(mailer.pending() == 1);
    CHECK(mailer.delivered() == 0);
  }

  TEST_CASE("mail for committed events reaches a file sink") {
    auto path = std::filesystem::temp_directory_path() /
                ("noos-mail-" + std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(path);
    {
      auto mailer = std::make_shared<Mailer>(std::make_shared<FileMailSink>(path), 5ms);
      auto clock = std::make_shared<ManualClock>(t0());
      Engine eng(std::make_unique<MemoryStore>(), {clock, mailer, std::nullopt});
      seed_users(eng);
      auto e = authority::create_entry(eng, s1, {"Flow", {}, EntryKind::concept_, "x"});
      corrections::file_correction(eng, s2, e.id, "Define it.");
      CHECK(mailer->flush(5s));
    }
    auto text = read_text(path);
    auto nl = text.find('\n');
    REQUIRE(nl != std::string::npos);
    auto m = decode_mail(std::string_view(text).substr(0, nl));
    CHECK(m.to == "s1@example.org");
    CHECK(m.body.find("Define it.") != std::string::npos);
    std::filesystem::remove(path);
  }
}
