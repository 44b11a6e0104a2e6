#pragma once

#include "noos/event.hpp"
#include "noos/state.hpp"

#include <span>
#include <string>
#include <vector>

namespace noos {

// What an applied event means for notification fan-out.
struct Effects {
  struct Implicit {
    UserId user;
    std::string summary;
  };
  std::vector<Implicit> implicit;  // owner on filing, filer on resolution, ...
  std::vector<ObjectRef> subjects; // objects whose watchers hear about the event
  std::string summary;             // text used for watch notices
};

// Validate `rec` against `s` and fold it in, including notice fan-out.
// Throws Error on any precondition violation; `s` must then be discarded
// (the writer applies to a private copy).
void apply(State& s, const EventRecord& rec);

// Fold a whole log into a fresh state. Every failure becomes a
// CorruptRecord naming the offending seq.
State rebuild_state(std::span<const EventRecord> log);

} // namespace noos
