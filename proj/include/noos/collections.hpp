#pragma once

#include "noos/engine.hpp"
#include "noos/model.hpp"

#include <string>
#include <vector>

// Named groups of entries (assignment sets) that the notes compiler places
// after the alphabetical run. An entry belongs to at most one collection.
namespace noos::collections {

Collection create_collection(Engine& engine, const UserId& actor, std::string name);
Collection add_entry(Engine& engine, const UserId& actor, const ObjectId& collection,
                     const ObjectId& entry);

// In creation order.
std::vector<Collection> list_collections(const State& s);

} // namespace noos::collections
