#pragma once

#include "noos/engine.hpp"
#include "noos/model.hpp"

#include <string>
#include <vector>

// Ownership state machine: create (owned by the author), orphan, adopt,
// transfer. Every transition is one event; conflicting concurrent
// transitions resolve by log order and the loser gets the precondition
// error.
namespace noos::authority {

struct NewEntry {
  std::string title;
  std::vector<std::string> synonyms;
  EntryKind kind = EntryKind::concept_;
  std::string content;
};

Entry create_entry(Engine& engine, const UserId& author, const NewEntry& spec);

// Owner releases the entry. An instructor or admin may also orphan an entry
// they do not own; that is recorded as entry.force_orphaned.
Entry orphan_entry(Engine& engine, const UserId& actor, const ObjectId& entry);

// First come, first served.
Entry adopt_entry(Engine& engine, const UserId& actor, const ObjectId& entry);

Entry transfer_entry(Engine& engine, const UserId& actor, const ObjectId& entry,
                     const UserId& recipient);

// Orphaned live entries, oldest first.
std::vector<Entry> list_orphans(const State& s);

} // namespace noos::authority
