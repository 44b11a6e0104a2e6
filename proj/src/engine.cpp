#include "noos/engine.hpp"

#include "noos/error.hpp"
#include "noos/notify.hpp"

namespace noos {

Engine::Engine(std::unique_ptr<EventStore> store) : Engine(std::move(store), Options{}) {}

Engine::Engine(std::unique_ptr<EventStore> store, Options options)
    : store_(std::move(store)), clock_(std::move(options.clock)),
      mailer_(std::move(options.mailer)) {
  if (!clock_)
    clock_ = std::make_shared<SystemClock>();

  records_ = store_->load();
  State s;
  std::size_t start = 0;
  if (options.snapshot) {
    s = std::move(*options.snapshot);
    if (s.last_seq < 0 || std::size_t(s.last_seq) > records_.size())
      fail(Errc::corrupt_record, "snapshot is ahead of the event log");
    if (s.last_seq > 0 && records_[std::size_t(s.last_seq) - 1].ts != s.last_ts)
      throw CorruptRecord(s.last_seq, "snapshot does not match the event log");
    start = std::size_t(s.last_seq);
  }
  for (std::size_t i = start; i < records_.size(); ++i) {
    const auto& rec = records_[i];
    try {
      apply(s, rec);
    } catch (const CorruptRecord&) {
      throw;
    } catch (const Error& e) {
      throw CorruptRecord(rec.seq, std::string(to_string(e.code())) + ": " + e.what());
    } catch (const json::exception& e) {
      throw CorruptRecord(rec.seq, std::string("malformed payload: ") + e.what());
    }
  }
  state_ = std::make_shared<const State>(std::move(s));
}

Committed Engine::append(const UserId& actor, std::string_view kind, json payload,
                         std::optional<Seq> expected_last_seq) {
  std::lock_guard lock(write_mu_);
  auto current = snapshot();

  if (expected_last_seq && *expected_last_seq != current->last_seq)
    fail(Errc::seq_conflict, "log moved on: expected seq " + std::to_string(*expected_last_seq) +
                                 ", now " + std::to_string(current->last_seq));
  if (!is_registered_kind(kind))
    fail(Errc::unknown_event_kind, "unregistered event kind: " + std::string(kind));

  EventRecord rec;
  rec.seq = current->last_seq + 1;
  rec.ts = clock_->now();
  if (current->last_ts && rec.ts < *current->last_ts)
    rec.ts = *current->last_ts;
  rec.actor = actor;
  rec.kind = std::string(kind);
  rec.payload = std::move(payload);

  auto next = std::make_shared<State>(*current);
  apply(*next, rec);

  store_->append(rec);
  records_.push_back(rec);

  std::shared_ptr<const State> published = std::move(next);
  {
    std::lock_guard snap(snap_mu_);
    state_ = published;
  }
  if (mailer_)
    mailer_->enqueue(notify::mail_for(*published, rec.seq));
  return {std::move(rec), std::move(published)};
}

std::shared_ptr<const State> Engine::snapshot() const {
  std::lock_guard lock(snap_mu_);
  return state_;
}

std::vector<EventRecord> Engine::log() const {
  std::lock_guard lock(write_mu_);
  return records_;
}

Seq Engine::last_seq() const { return snapshot()->last_seq; }

void Engine::flush() {
  std::lock_guard lock(write_mu_);
  store_->flush();
}

} // namespace noos
