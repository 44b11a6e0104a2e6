#pragma once

// Per-kind reducers. Each one validates the record against the current
// state, mutates it and reports the notification effects.

#include "noos/apply.hpp"
#include "noos/error.hpp"

#include <optional>
#include <string>

namespace noos::detail {

const std::string& str_field(const EventRecord& rec, const char* key);
std::optional<std::string> opt_str_field(const EventRecord& rec, const char* key);
std::int64_t int_field(const EventRecord& rec, const char* key);
std::optional<std::int64_t> opt_int_field(const EventRecord& rec, const char* key);
const json& field(const EventRecord& rec, const char* key);

// Object ids are derived from the seq of the creating event.
ObjectId id_for(char prefix, Seq seq);

const User& actor_of(const State& s, const EventRecord& rec);
std::string in_quotes(const std::string& title);
std::string display_name(const State& s, const UserId& id);

// core
Effects on_user_created(State& s, const EventRecord& rec);
Effects on_user_role_changed(State& s, const EventRecord& rec);
Effects on_entry_revised(State& s, const EventRecord& rec);
Effects on_entry_reviewed(State& s, const EventRecord& rec);
Effects on_entry_deleted(State& s, const EventRecord& rec);

// authority
Effects on_entry_created(State& s, const EventRecord& rec);
Effects on_entry_orphaned(State& s, const EventRecord& rec);
Effects on_entry_force_orphaned(State& s, const EventRecord& rec);
Effects on_entry_adopted(State& s, const EventRecord& rec);
Effects on_entry_transferred(State& s, const EventRecord& rec);

// corrections
Effects on_correction_filed(State& s, const EventRecord& rec);
Effects on_correction_resolved(State& s, const EventRecord& rec);

// requests
Effects on_request_created(State& s, const EventRecord& rec);
Effects on_request_filled(State& s, const EventRecord& rec);

// discussion
Effects on_message_posted(State& s, const EventRecord& rec);

// notify
Effects on_watch_set(State& s, const EventRecord& rec);
Effects on_watch_removed(State& s, const EventRecord& rec);
Effects on_notice_read(State& s, const EventRecord& rec);

// collections
Effects on_collection_created(State& s, const EventRecord& rec);
Effects on_collection_entry_added(State& s, const EventRecord& rec);

} // namespace noos::detail
