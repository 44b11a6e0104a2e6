#pragma once

#include "noos/engine.hpp"
#include "noos/model.hpp"

#include <string>
#include <vector>

// Threaded messages hanging off entries, corrections and requests. A target
// of kind `message` makes the post a reply.
namespace noos::discussion {

Message post_message(Engine& engine, const UserId& author, const ObjectRef& target,
                     std::string subject, std::string body);

struct ThreadNode {
  Message message;
  std::vector<ThreadNode> replies; // ordered by posting
};

// Messages attached to `anchor`, as a forest ordered by posting. For a
// message anchor the result is that message's subtree. Throws
// unknown-anchor.
std::vector<ThreadNode> get_thread(const State& s, const ObjectRef& anchor);

std::size_t count_nodes(const std::vector<ThreadNode>& forest);
std::size_t depth(const std::vector<ThreadNode>& forest);

// Full-scan check that every message has exactly one parent, parents exist
// and no reply chain loops. Returns the offending message ids.
std::vector<ObjectId> validate_threads(const State& s);

} // namespace noos::discussion
