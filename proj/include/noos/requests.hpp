#pragma once

#include "noos/engine.hpp"
#include "noos/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// The global to-do list. A request is filled by explicitly linking an entry
// the fulfiller owns; there is no title matching and no cancellation.
namespace noos::requests {

enum class Filter { active, filled, all };

std::optional<Filter> parse_filter(std::string_view s) noexcept;

Request create_request(Engine& engine, const UserId& creator, std::string title,
                       std::string description = {});

Request fulfill_request(Engine& engine, const UserId& actor, const ObjectId& request,
                        const ObjectId& entry);

// Ordered by creation.
std::vector<Request> list_requests(const State& s, Filter filter);

} // namespace noos::requests
