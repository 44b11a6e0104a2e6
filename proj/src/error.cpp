#include "noos/error.hpp"

namespace noos {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
  case Errc::unknown_actor: return "unknown-actor";
  case Errc::unknown_user: return "unknown-user";
  case Errc::unknown_recipient: return "unknown-recipient";
  case Errc::unknown_event_kind: return "unknown-event-kind";
  case Errc::storage_failure: return "storage-failure";
  case Errc::corrupt_record: return "corrupt-record";
  case Errc::seq_conflict: return "seq-conflict";
  case Errc::invalid_argument: return "invalid-argument";
  case Errc::forbidden: return "forbidden";
  case Errc::entry_missing: return "entry-missing";
  case Errc::empty_title: return "empty-title";
  case Errc::not_owner: return "not-owner";
  case Errc::orphaned_entry: return "orphaned-entry";
  case Errc::already_orphaned: return "already-orphaned";
  case Errc::not_orphaned: return "not-orphaned";
  case Errc::self_transfer: return "self-transfer";
  case Errc::revision_conflict: return "revision-conflict";
  case Errc::empty_text: return "empty-text";
  case Errc::already_resolved: return "already-resolved";
  case Errc::empty_action: return "empty-action";
  case Errc::correction_missing: return "correction-missing";
  case Errc::request_missing: return "request-missing";
  case Errc::already_filled: return "already-filled";
  case Errc::not_entry_owner: return "not-entry-owner";
  case Errc::unknown_target: return "unknown-target";
  case Errc::unknown_anchor: return "unknown-anchor";
  case Errc::empty_body: return "empty-body";
  case Errc::unknown_object: return "unknown-object";
  case Errc::empty_channels: return "empty-channels";
  case Errc::no_such_watch: return "no-such-watch";
  case Errc::not_your_notice: return "not-your-notice";
  case Errc::notice_missing: return "notice-missing";
  case Errc::collection_missing: return "collection-missing";
  case Errc::already_collected: return "already-collected";
  case Errc::invalid_range: return "invalid-range";
  case Errc::unsupported_format: return "unsupported-format";
  case Errc::unknown_report: return "unknown-report";
  case Errc::bad_credentials: return "bad-credentials";
  case Errc::auth_required: return "authentication-required";
  case Errc::unknown_field: return "unknown-field";
  case Errc::not_found: return "not-found";
  case Errc::invalid_config: return "invalid-config";
  }
  return "unknown";
}

ErrorClass classify(Errc code) noexcept {
  switch (code) {
  case Errc::storage_failure:
  case Errc::corrupt_record:
    return ErrorClass::internal;
  case Errc::bad_credentials:
  case Errc::auth_required:
    return ErrorClass::auth;
  case Errc::not_owner:
  case Errc::not_entry_owner:
  case Errc::not_your_notice:
  case Errc::forbidden:
    return ErrorClass::forbidden;
  case Errc::entry_missing:
  case Errc::correction_missing:
  case Errc::request_missing:
  case Errc::notice_missing:
  case Errc::collection_missing:
  case Errc::unknown_target:
  case Errc::unknown_anchor:
  case Errc::unknown_object:
  case Errc::no_such_watch:
  case Errc::not_found:
    return ErrorClass::missing;
  case Errc::already_orphaned:
  case Errc::not_orphaned:
  case Errc::already_resolved:
  case Errc::already_filled:
  case Errc::already_collected:
  case Errc::revision_conflict:
  case Errc::seq_conflict:
  case Errc::orphaned_entry:
    return ErrorClass::conflict;
  default:
    return ErrorClass::precondition;
  }
}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

} // namespace noos
