#include "noos/model.hpp"

namespace noos {

std::string_view to_string(Role r) noexcept {
  switch (r) {
  case Role::student: return "student";
  case Role::instructor: return "instructor";
  case Role::auditor: return "auditor";
  case Role::admin: return "admin";
  }
  return "student";
}

std::string_view to_string(EntryKind k) noexcept {
  switch (k) {
  case EntryKind::concept_: return "concept";
  case EntryKind::theorem: return "theorem";
  case EntryKind::proof: return "proof";
  case EntryKind::example: return "example";
  case EntryKind::exercise: return "exercise";
  }
  return "concept";
}

std::string_view to_string(ReviewState s) noexcept {
  switch (s) {
  case ReviewState::unreviewed: return "unreviewed";
  case ReviewState::needs_work: return "needs_work";
  case ReviewState::approved: return "approved";
  }
  return "unreviewed";
}

std::string_view to_string(Severity s) noexcept {
  switch (s) {
  case Severity::error: return "error";
  case Severity::improvement: return "improvement";
  case Severity::style: return "style";
  }
  return "error";
}

std::string_view to_string(CorrectionState s) noexcept {
  return s == CorrectionState::open ? "open" : "resolved";
}

std::string_view to_string(RequestState s) noexcept {
  return s == RequestState::active ? "active" : "filled";
}

std::string_view to_string(NoticeCause c) noexcept {
  return c == NoticeCause::implicit ? "implicit" : "watch";
}

std::optional<Role> parse_role(std::string_view s) noexcept {
  if (s == "student") return Role::student;
  if (s == "instructor") return Role::instructor;
  if (s == "auditor") return Role::auditor;
  if (s == "admin") return Role::admin;
  return std::nullopt;
}

std::optional<EntryKind> parse_entry_kind(std::string_view s) noexcept {
  if (s == "concept") return EntryKind::concept_;
  if (s == "theorem") return EntryKind::theorem;
  if (s == "proof") return EntryKind::proof;
  if (s == "example") return EntryKind::example;
  if (s == "exercise") return EntryKind::exercise;
  return std::nullopt;
}

std::optional<ReviewState> parse_review_state(std::string_view s) noexcept {
  if (s == "unreviewed") return ReviewState::unreviewed;
  if (s == "needs_work") return ReviewState::needs_work;
  if (s == "approved") return ReviewState::approved;
  return std::nullopt;
}

std::optional<Severity> parse_severity(std::string_view s) noexcept {
  if (s == "error") return Severity::error;
  if (s == "improvement") return Severity::improvement;
  if (s == "style") return Severity::style;
  return std::nullopt;
}

bool is_valid_email(std::string_view s) noexcept {
  auto at = s.find('@');
  if (at == std::string_view::npos || at == 0 || at + 1 >= s.size())
    return false;
  if (s.find('@', at + 1) != std::string_view::npos)
    return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '>')
      return false;
  auto domain = s.substr(at + 1);
  auto dot = domain.find('.');
  return dot != std::string_view::npos && dot != 0 && domain.back() != '.';
}

} // namespace noos
