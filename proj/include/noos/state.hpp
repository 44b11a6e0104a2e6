#pragma once

#include "noos/error.hpp"
#include "noos/event.hpp"
#include "noos/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace noos {

// Everything materialized from the event log. Values only; a State is
// copied by the writer and published as an immutable snapshot.
struct State {
  Seq last_seq = 0;
  std::optional<Timestamp> last_ts;

  std::map<UserId, User> users;
  std::map<ObjectId, Entry> entries;
  std::map<ObjectId, Correction> corrections;
  std::map<ObjectId, Request> requests;
  std::map<ObjectId, Message> messages;
  std::map<std::pair<UserId, ObjectRef>, Watch> watches;
  std::map<ObjectId, Notice> notices;
  std::map<ObjectId, Collection> collections;

  friend bool operator==(const State&, const State&) = default;

  const User* find_user(const UserId& id) const;
  const Entry* find_entry(const ObjectId& id) const; // skips tombstoned entries
  bool object_exists(const ObjectRef& ref) const;

  const User& user(const UserId& id, Errc missing) const;
  const Entry& entry(const ObjectId& id) const;
  Entry& entry_mut(const ObjectId& id);
};

// Live (non-deleted) entries in creation order.
std::vector<const Entry*> live_entries(const State& s);

json to_json(const State& s);
State state_from_json(const json& j);

// Two-line snapshot file body: a header record, then the state.
inline constexpr int snapshot_version = 1;
std::string encode_snapshot(const State& s);
State decode_snapshot(std::string_view text);

json to_json(const User& u); // omits the secret verifier
json to_json(const Entry& e);
json to_json(const Correction& c);
json to_json(const Request& r);
json to_json(const Message& m);
json to_json(const Watch& w);
json to_json(const Notice& n);
json to_json(const Collection& c);
json to_json(const ObjectRef& ref);
json to_json(Channels c);

std::optional<Channels> channels_from_json(const json& j);
std::optional<ObjectRef> object_ref_from_json(const json& j);

} // namespace noos
