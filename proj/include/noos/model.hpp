#pragma once

#include "noos/ids.hpp"
#include "noos/time.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noos {

enum class Role { student, instructor, auditor, admin };
enum class EntryKind { concept_, theorem, proof, example, exercise };
enum class ReviewState { unreviewed, needs_work, approved };
enum class Severity { error, improvement, style };
enum class CorrectionState { open, resolved };
enum class RequestState { active, filled };
enum class NoticeCause { implicit, watch };

std::string_view to_string(Role r) noexcept;
std::string_view to_string(EntryKind k) noexcept;
std::string_view to_string(ReviewState s) noexcept;
std::string_view to_string(Severity s) noexcept;
std::string_view to_string(CorrectionState s) noexcept;
std::string_view to_string(RequestState s) noexcept;
std::string_view to_string(NoticeCause c) noexcept;

std::optional<Role> parse_role(std::string_view s) noexcept;
std::optional<EntryKind> parse_entry_kind(std::string_view s) noexcept;
std::optional<ReviewState> parse_review_state(std::string_view s) noexcept;
std::optional<Severity> parse_severity(std::string_view s) noexcept;

// Instructors and admins may override owner-only actions.
inline bool is_moderator(Role r) noexcept { return r == Role::instructor || r == Role::admin; }

bool is_valid_email(std::string_view s) noexcept;

struct Channels {
  bool inbox = false;
  bool email = false;

  bool empty() const noexcept { return !inbox && !email; }
  Channels operator|(Channels o) const noexcept { return {inbox || o.inbox, email || o.email}; }
  friend bool operator==(const Channels&, const Channels&) = default;
};

struct User {
  UserId id;
  std::string name;
  Role role = Role::student;
  std::string email;
  std::string secret_hash; // password verifier; empty means login disabled
  Seq created_seq = 0;

  friend bool operator==(const User&, const User&) = default;
};

struct Entry {
  ObjectId id;
  std::string title;
  std::vector<std::string> synonyms;
  EntryKind kind = EntryKind::concept_;
  std::string content;
  std::optional<UserId> owner; // nullopt is the ORPHANED state
  Timestamp created_at{};
  Timestamp updated_at{};
  int revision = 1;
  ReviewState review_state = ReviewState::unreviewed;
  Seq created_seq = 0;
  bool deleted = false;
  std::optional<ObjectId> collection;

  bool orphaned() const noexcept { return !owner.has_value(); }
  friend bool operator==(const Entry&, const Entry&) = default;
};

struct Correction {
  ObjectId id;
  ObjectId entry;
  UserId filer;
  std::string text;
  Severity severity = Severity::error;
  CorrectionState state = CorrectionState::open;
  std::string action_taken;
  std::string resolution_note;
  std::optional<UserId> resolved_by;
  Timestamp filed_at{};
  std::optional<Timestamp> resolved_at;
  Seq filed_seq = 0;

  bool open() const noexcept { return state == CorrectionState::open; }
  friend bool operator==(const Correction&, const Correction&) = default;
};

struct Request {
  ObjectId id;
  std::string title;
  std::string description;
  UserId creator;
  RequestState state = RequestState::active;
  std::optional<ObjectId> filled_by;
  std::optional<UserId> filled_by_user;
  Timestamp created_at{};
  std::optional<Timestamp> filled_at;
  Seq created_seq = 0;

  friend bool operator==(const Request&, const Request&) = default;
};

struct Message {
  ObjectId id;
  // A core object for root messages, or kind=message naming the parent.
  ObjectRef target;
  ObjectRef root; // the core object the thread hangs off
  UserId author;
  std::string subject;
  std::string body;
  Timestamp posted_at{};
  Seq seq = 0;

  bool is_reply() const noexcept { return target.kind == ObjectKind::message; }
  friend bool operator==(const Message&, const Message&) = default;
};

struct Watch {
  UserId user;
  ObjectRef object;
  Channels channels;

  friend bool operator==(const Watch&, const Watch&) = default;
};

struct Notice {
  ObjectId id;
  UserId user;
  Seq event_seq = 0;
  std::string summary;
  bool read = false;
  Timestamp created_at{};
  NoticeCause cause = NoticeCause::implicit;
  Channels channels;

  friend bool operator==(const Notice&, const Notice&) = default;
};

struct Collection {
  ObjectId id;
  std::string name;
  std::vector<ObjectId> members;
  Seq created_seq = 0;

  friend bool operator==(const Collection&, const Collection&) = default;
};

} // namespace noos
