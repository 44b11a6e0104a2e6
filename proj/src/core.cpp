#include "noos/core.hpp"

#include "handlers.hpp"

namespace noos {

User create_user(Engine& engine, const UserId& actor, const NewUser& user) {
  json payload = {{"id", user.id.str()},
                  {"name", user.name},
                  {"role", to_string(user.role)},
                  {"email", user.email},
                  {"secret_hash", user.secret_hash}};
  auto c = engine.append(actor, kinds::user_created, std::move(payload));
  return c.state->users.at(user.id);
}

User change_role(Engine& engine, const UserId& actor, const UserId& user, Role role) {
  auto c = engine.append(actor, kinds::user_role_changed,
                         {{"user", user.str()}, {"role", to_string(role)}});
  return c.state->users.at(user);
}

Entry revise_entry(Engine& engine, const UserId& actor, const ObjectId& entry,
                   std::string new_content, std::optional<int> expected_revision) {
  json payload = {{"entry", entry.str()}, {"content", std::move(new_content)}};
  if (expected_revision)
    payload["expected_revision"] = *expected_revision;
  auto c = engine.append(actor, kinds::entry_revised, std::move(payload));
  return c.state->entries.at(entry);
}

Entry review_entry(Engine& engine, const UserId& actor, const ObjectId& entry, ReviewState state) {
  auto c = engine.append(actor, kinds::entry_reviewed,
                         {{"entry", entry.str()}, {"state", to_string(state)}});
  return c.state->entries.at(entry);
}

void delete_entry(Engine& engine, const UserId& actor, const ObjectId& entry) {
  engine.append(actor, kinds::entry_deleted, {{"entry", entry.str()}});
}

namespace detail {

Effects on_user_created(State& s, const EventRecord& rec) {
  const auto& id = str_field(rec, "id");
  const auto& name = str_field(rec, "name");
  auto role = parse_role(str_field(rec, "role"));
  const auto& email = str_field(rec, "email");
  auto secret = opt_str_field(rec, "secret_hash");

  if (!is_valid_token(id))
    fail(Errc::invalid_argument, "user id must be 1-64 URL-safe characters");
  if (name.empty())
    fail(Errc::invalid_argument, "user name must be nonempty");
  if (!role)
    fail(Errc::invalid_argument, "unknown role");
  if (!email.empty() && !is_valid_email(email))
    fail(Errc::invalid_argument, "malformed email address: " + email);

  if (s.users.empty()) {
    if (rec.actor.str() != id || *role != Role::admin)
      fail(Errc::forbidden, "the first user must be an admin creating itself");
  } else {
    if (actor_of(s, rec).role != Role::admin)
      fail(Errc::forbidden, "only an admin may create users");
  }
  if (s.find_user(UserId(id)))
    fail(Errc::invalid_argument, "user id already taken: " + id);

  User u;
  u.id = UserId(id);
  u.name = name;
  u.role = *role;
  u.email = email;
  u.secret_hash = secret.value_or("");
  u.created_seq = rec.seq;
  s.users.emplace(u.id, std::move(u));
  return {};
}

Effects on_user_role_changed(State& s, const EventRecord& rec) {
  UserId target(str_field(rec, "user"));
  auto role = parse_role(str_field(rec, "role"));
  if (!role)
    fail(Errc::invalid_argument, "unknown role");
  if (actor_of(s, rec).role != Role::admin)
    fail(Errc::forbidden, "only an admin may change roles");
  auto it = s.users.find(target);
  if (it == s.users.end())
    fail(Errc::unknown_user, "no such user: " + target.str());
  it->second.role = *role;
  return {};
}

Effects on_entry_revised(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  const auto& content = str_field(rec, "content");
  auto expected = opt_int_field(rec, "expected_revision");

  Entry& e = s.entry_mut(id);
  const User& actor = actor_of(s, rec);
  bool moderator = is_moderator(actor.role);
  if (e.orphaned() && !moderator)
    fail(Errc::orphaned_entry, "entry is orphaned; adopt it before revising");
  if (!moderator && e.owner != actor.id)
    fail(Errc::not_owner, "only the owner may revise " + in_quotes(e.title));
  if (expected && *expected != e.revision)
    fail(Errc::revision_conflict, "entry is at revision " + std::to_string(e.revision) +
                                      ", not " + std::to_string(*expected));
  if (content == e.content)
    fail(Errc::invalid_argument, "revision does not change the content");

  e.content = content;
  e.revision += 1;
  e.updated_at = rec.ts;

  Effects fx;
  fx.subjects.push_back({ObjectKind::entry, id});
  fx.summary = actor.name + " revised " + in_quotes(e.title) + " (revision " +
               std::to_string(e.revision) + ")";
  return fx;
}

Effects on_entry_reviewed(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  auto state = parse_review_state(str_field(rec, "state"));
  if (!state)
    fail(Errc::invalid_argument, "unknown review state");
  Entry& e = s.entry_mut(id);
  const User& actor = actor_of(s, rec);
  if (!is_moderator(actor.role))
    fail(Errc::forbidden, "only an instructor or admin may review entries");
  e.review_state = *state;
  return {};
}

Effects on_entry_deleted(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  Entry& e = s.entry_mut(id);
  const User& actor = actor_of(s, rec);
  if (!is_moderator(actor.role) && e.owner != actor.id)
    fail(Errc::not_owner, "only the owner may delete " + in_quotes(e.title));
  e.deleted = true;
  e.updated_at = rec.ts;
  if (e.collection) {
    auto& members = s.collections.at(*e.collection).members;
    std::erase(members, id);
    e.collection.reset();
  }
  return {};
}

} // namespace detail

} // namespace noos
