#include "noos/apply.hpp"

#include "handlers.hpp"
#include "noos/notify.hpp"

#include <unordered_map>

namespace noos {

namespace {

using Handler = Effects (*)(State&, const EventRecord&);

const std::unordered_map<std::string_view, Handler>& handlers() {
  using namespace detail;
  static const std::unordered_map<std::string_view, Handler> table = {
      {kinds::user_created, on_user_created},
      {kinds::user_role_changed, on_user_role_changed},
      {kinds::entry_created, on_entry_created},
      {kinds::entry_revised, on_entry_revised},
      {kinds::entry_reviewed, on_entry_reviewed},
      {kinds::entry_deleted, on_entry_deleted},
      {kinds::entry_orphaned, on_entry_orphaned},
      {kinds::entry_force_orphaned, on_entry_force_orphaned},
      {kinds::entry_adopted, on_entry_adopted},
      {kinds::entry_transferred, on_entry_transferred},
      {kinds::correction_filed, on_correction_filed},
      {kinds::correction_resolved, on_correction_resolved},
      {kinds::request_created, on_request_created},
      {kinds::request_filled, on_request_filled},
      {kinds::message_posted, on_message_posted},
      {kinds::watch_set, on_watch_set},
      {kinds::watch_removed, on_watch_removed},
      {kinds::notice_read, on_notice_read},
      {kinds::collection_created, on_collection_created},
      {kinds::collection_entry_added, on_collection_entry_added},
  };
  return table;
}

} // namespace

void apply(State& s, const EventRecord& rec) {
  if (rec.seq != s.last_seq + 1)
    fail(Errc::corrupt_record, "expected seq " + std::to_string(s.last_seq + 1) + ", got " +
                                   std::to_string(rec.seq));
  if (s.last_ts && rec.ts < *s.last_ts)
    fail(Errc::corrupt_record, "timestamp goes backwards");

  auto it = handlers().find(rec.kind);
  if (it == handlers().end())
    fail(Errc::unknown_event_kind, "unregistered event kind: " + rec.kind);

  // The very first user is the bootstrap admin and vouches for itself.
  bool bootstrap = s.users.empty() && rec.kind == kinds::user_created;
  if (!bootstrap && !s.find_user(rec.actor))
    fail(Errc::unknown_actor, "unknown actor: " + rec.actor.str());

  Effects effects = it->second(s, rec);
  notify::fan_out(s, rec, effects);

  s.last_seq = rec.seq;
  s.last_ts = rec.ts;
}

State rebuild_state(std::span<const EventRecord> log) {
  State s;
  for (const auto& rec : log) {
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
  return s;
}

namespace detail {

const json& field(const EventRecord& rec, const char* key) {
  auto it = rec.payload.find(key);
  if (it == rec.payload.end())
    fail(Errc::invalid_argument, std::string("payload is missing '") + key + "'");
  return *it;
}

const std::string& str_field(const EventRecord& rec, const char* key) {
  const json& v = field(rec, key);
  if (!v.is_string())
    fail(Errc::invalid_argument, std::string("payload field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

std::optional<std::string> opt_str_field(const EventRecord& rec, const char* key) {
  if (!rec.payload.contains(key) || rec.payload[key].is_null())
    return std::nullopt;
  return str_field(rec, key);
}

std::int64_t int_field(const EventRecord& rec, const char* key) {
  const json& v = field(rec, key);
  if (!v.is_number_integer())
    fail(Errc::invalid_argument, std::string("payload field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::optional<std::int64_t> opt_int_field(const EventRecord& rec, const char* key) {
  if (!rec.payload.contains(key) || rec.payload[key].is_null())
    return std::nullopt;
  return int_field(rec, key);
}

ObjectId id_for(char prefix, Seq seq) { return ObjectId(prefix + std::to_string(seq)); }

const User& actor_of(const State& s, const EventRecord& rec) {
  return s.user(rec.actor, Errc::unknown_actor);
}

std::string in_quotes(const std::string& title) { return "\"" + title + "\""; }

std::string display_name(const State& s, const UserId& id) {
  const User* u = s.find_user(id);
  return u ? u->name : id.str();
}

} // namespace detail

} // namespace noos
