#pragma once

#include "noos/ids.hpp"
#include "noos/time.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace noos {

using json = nlohmann::json;

// Registered event names. Anything else is rejected at append and replay.
namespace kinds {
inline constexpr std::string_view user_created = "user.created";
inline constexpr std::string_view user_role_changed = "user.role_changed";
inline constexpr std::string_view entry_created = "entry.created";
inline constexpr std::string_view entry_revised = "entry.revised";
inline constexpr std::string_view entry_reviewed = "entry.reviewed";
inline constexpr std::string_view entry_deleted = "entry.deleted";
inline constexpr std::string_view entry_orphaned = "entry.orphaned";
inline constexpr std::string_view entry_force_orphaned = "entry.force_orphaned";
inline constexpr std::string_view entry_adopted = "entry.adopted";
inline constexpr std::string_view entry_transferred = "entry.transferred";
inline constexpr std::string_view correction_filed = "correction.filed";
inline constexpr std::string_view correction_resolved = "correction.resolved";
inline constexpr std::string_view request_created = "request.created";
inline constexpr std::string_view request_filled = "request.filled";
inline constexpr std::string_view message_posted = "message.posted";
inline constexpr std::string_view watch_set = "watch.set";
inline constexpr std::string_view watch_removed = "watch.removed";
inline constexpr std::string_view notice_read = "notice.read";
inline constexpr std::string_view collection_created = "collection.created";
inline constexpr std::string_view collection_entry_added = "collection.entry_added";
} // namespace kinds

const std::vector<std::string_view>& registered_kinds();
bool is_registered_kind(std::string_view kind);

struct EventRecord {
  Seq seq = 0;
  Timestamp ts{};
  UserId actor;
  std::string kind;
  json payload = json::object();

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// One JSON object per line with fields in the order seq, ts, actor, kind,
// payload. No trailing newline.
std::string encode_record(const EventRecord& rec);

// Throws CorruptRecord (with `line_no` as the seq when the seq field itself
// is unreadable).
EventRecord decode_record(std::string_view line, Seq line_no);

} // namespace noos
