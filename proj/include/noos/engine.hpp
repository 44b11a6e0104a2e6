#pragma once

#include "noos/apply.hpp"
#include "noos/event_store.hpp"
#include "noos/mail.hpp"
#include "noos/state.hpp"
#include "noos/time.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace noos {

struct Committed {
  EventRecord record;
  std::shared_ptr<const State> state; // snapshot right after the append
};

// The single writer. Every mutation is an appended event; readers take
// immutable snapshots and never block the writer for long.
class Engine {
public:
  struct Options {
    std::shared_ptr<Clock> clock;
    std::shared_ptr<Mailer> mailer;
    // Resume from a snapshot instead of folding the whole log. Its seq
    // must not exceed the log length.
    std::optional<State> snapshot;
  };

  explicit Engine(std::unique_ptr<EventStore> store);
  Engine(std::unique_ptr<EventStore> store, Options options);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // Append one event. `expected_last_seq`, when given, is a compare-and-set
  // guard against the log position the caller last observed.
  Committed append(const UserId& actor, std::string_view kind, json payload,
                   std::optional<Seq> expected_last_seq = std::nullopt);

  std::shared_ptr<const State> snapshot() const;
  std::vector<EventRecord> log() const;
  Seq last_seq() const;

  Clock& clock() { return *clock_; }
  void flush();

private:
  std::unique_ptr<EventStore> store_;
  std::shared_ptr<Clock> clock_;
  std::shared_ptr<Mailer> mailer_;

  mutable std::mutex write_mu_;
  std::vector<EventRecord> records_;

  mutable std::mutex snap_mu_;
  std::shared_ptr<const State> state_;
};

} // namespace noos
