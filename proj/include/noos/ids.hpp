#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace noos {

using Seq = std::int64_t;

// Opaque identifiers: at most 64 URL-safe characters.
bool is_valid_token(std::string_view s) noexcept;

template <class Tag>
class StrongId {
public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

private:
  std::string value_;
};

struct UserIdTag {};
struct ObjectIdTag {};

using UserId = StrongId<UserIdTag>;
using ObjectId = StrongId<ObjectIdTag>;

enum class ObjectKind { entry, correction, request, message };

std::string_view to_string(ObjectKind kind) noexcept;
std::optional<ObjectKind> parse_object_kind(std::string_view s) noexcept;

struct ObjectRef {
  ObjectKind kind = ObjectKind::entry;
  ObjectId id;

  friend auto operator<=>(const ObjectRef&, const ObjectRef&) = default;
  friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
};

// "entry:e12" form used in query strings and log payloads.
std::string to_string(const ObjectRef& ref);
std::optional<ObjectRef> parse_object_ref(std::string_view s);

} // namespace noos

template <class Tag>
struct std::hash<noos::StrongId<Tag>> {
  std::size_t operator()(const noos::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
