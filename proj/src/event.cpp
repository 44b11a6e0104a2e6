#include "noos/event.hpp"

#include "noos/error.hpp"

#include <algorithm>

namespace noos {

const std::vector<std::string_view>& registered_kinds() {
  static const std::vector<std::string_view> all = {
      kinds::user_created,        kinds::user_role_changed,    kinds::entry_created,
      kinds::entry_revised,       kinds::entry_reviewed,       kinds::entry_deleted,
      kinds::entry_orphaned,      kinds::entry_force_orphaned, kinds::entry_adopted,
      kinds::entry_transferred,   kinds::correction_filed,     kinds::correction_resolved,
      kinds::request_created,     kinds::request_filled,       kinds::message_posted,
      kinds::watch_set,           kinds::watch_removed,        kinds::notice_read,
      kinds::collection_created,  kinds::collection_entry_added,
  };
  return all;
}

bool is_registered_kind(std::string_view kind) {
  const auto& all = registered_kinds();
  return std::find(all.begin(), all.end(), kind) != all.end();
}

std::string encode_record(const EventRecord& rec) {
  nlohmann::ordered_json out;
  out["seq"] = rec.seq;
  out["ts"] = format_rfc3339(rec.ts);
  out["actor"] = rec.actor.str();
  out["kind"] = rec.kind;
  out["payload"] = rec.payload;
  return out.dump();
}

EventRecord decode_record(std::string_view line, Seq line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorruptRecord(line_no, std::string("unparseable: ") + e.what());
  }
  if (!j.is_object())
    throw CorruptRecord(line_no, "record is not an object");

  EventRecord rec;
  auto seq_it = j.find("seq");
  if (seq_it == j.end() || !seq_it->is_number_integer())
    throw CorruptRecord(line_no, "missing or non-integer seq");
  rec.seq = seq_it->get<Seq>();

  auto field = [&](const char* name) -> const json& {
    auto it = j.find(name);
    if (it == j.end())
      throw CorruptRecord(rec.seq, std::string("missing field ") + name);
    return *it;
  };

  const json& ts = field("ts");
  if (!ts.is_string())
    throw CorruptRecord(rec.seq, "ts is not a string");
  auto parsed = parse_rfc3339(ts.get<std::string>());
  if (!parsed)
    throw CorruptRecord(rec.seq, "ts is not RFC 3339");
  rec.ts = *parsed;

  const json& actor = field("actor");
  if (!actor.is_string() || !is_valid_token(actor.get<std::string>()))
    throw CorruptRecord(rec.seq, "bad actor");
  rec.actor = UserId(actor.get<std::string>());

  const json& kind = field("kind");
  if (!kind.is_string())
    throw CorruptRecord(rec.seq, "kind is not a string");
  rec.kind = kind.get<std::string>();

  const json& payload = field("payload");
  if (!payload.is_object())
    throw CorruptRecord(rec.seq, "payload is not an object");
  rec.payload = payload;

  if (j.size() != 5)
    throw CorruptRecord(rec.seq, "unexpected fields in record");
  return rec;
}

} // namespace noos
