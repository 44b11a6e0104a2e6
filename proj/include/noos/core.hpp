#pragma once

#include "noos/engine.hpp"
#include "noos/model.hpp"

#include <optional>
#include <string>

namespace noos {

struct NewUser {
  UserId id;
  std::string name;
  Role role = Role::student;
  std::string email; // optional; without one, notices stay in the inbox
  std::string secret_hash; // verifier produced by the service layer; may be empty
};

// Admin-only, except on an empty log where the first user must be an admin
// creating itself.
User create_user(Engine& engine, const UserId& actor, const NewUser& user);

// Roles are fixed at creation; only an admin may change one afterwards.
User change_role(Engine& engine, const UserId& actor, const UserId& user, Role role);

// Owner (or instructor/admin) replaces the content; revision goes up by one.
// With `expected_revision`, a stale caller gets revision-conflict.
Entry revise_entry(Engine& engine, const UserId& actor, const ObjectId& entry,
                   std::string new_content, std::optional<int> expected_revision = std::nullopt);

// Instructor/admin judgment that feeds scoring.
Entry review_entry(Engine& engine, const UserId& actor, const ObjectId& entry, ReviewState state);

// Tombstone. The id is never reused and the entry vanishes from every view.
void delete_entry(Engine& engine, const UserId& actor, const ObjectId& entry);

} // namespace noos
