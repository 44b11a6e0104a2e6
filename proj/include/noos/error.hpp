#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noos {

// Machine-readable failure codes. The string form (see to_string) is what
// goes over the wire and into diagnostics.
enum class Errc {
  unknown_actor,
  unknown_user,
  unknown_recipient,
  unknown_event_kind,
  storage_failure,
  corrupt_record,
  seq_conflict,
  invalid_argument,
  forbidden,

  entry_missing,
  empty_title,
  not_owner,
  orphaned_entry,
  already_orphaned,
  not_orphaned,
  self_transfer,
  revision_conflict,

  empty_text,
  already_resolved,
  empty_action,
  correction_missing,

  request_missing,
  already_filled,
  not_entry_owner,

  unknown_target,
  unknown_anchor,
  empty_body,

  unknown_object,
  empty_channels,
  no_such_watch,
  not_your_notice,
  notice_missing,

  collection_missing,
  already_collected,

  invalid_range,
  unsupported_format,
  unknown_report,

  bad_credentials,
  auth_required,
  unknown_field,
  not_found,
  invalid_config,
};

std::string_view to_string(Errc code) noexcept;

// Broad class of a failure, used by the HTTP layer to pick a status code.
enum class ErrorClass { precondition, missing, conflict, auth, forbidden, internal };

ErrorClass classify(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

// Raised while rebuilding state; carries the sequence number of the
// record that could not be applied.
class CorruptRecord : public Error {
public:
  CorruptRecord(long long seq, const std::string& message)
      : Error(Errc::corrupt_record, "record " + std::to_string(seq) + ": " + message),
        seq_(seq) {}

  long long seq() const noexcept { return seq_; }

private:
  long long seq_;
};

} // namespace noos
