#include "noos/authority.hpp"

#include "handlers.hpp"

#include <algorithm>

namespace noos::authority {

namespace {

void require_registered(const Engine& engine, const UserId& user) {
  // Checked up front so callers see unknown-user rather than the generic
  // unknown-actor from the log writer.
  if (!engine.snapshot()->find_user(user))
    fail(Errc::unknown_user, "no such user: " + user.str());
}

} // namespace

Entry create_entry(Engine& engine, const UserId& author, const NewEntry& spec) {
  require_registered(engine, author);
  json payload = {{"title", spec.title},
                  {"synonyms", spec.synonyms},
                  {"kind", to_string(spec.kind)},
                  {"content", spec.content}};
  auto c = engine.append(author, kinds::entry_created, std::move(payload));
  return c.state->entries.at(detail::id_for('e', c.record.seq));
}

Entry orphan_entry(Engine& engine, const UserId& actor, const ObjectId& entry) {
  auto snap = engine.snapshot();
  const Entry& e = snap->entry(entry);
  const User* u = snap->find_user(actor);
  bool force = u && is_moderator(u->role) && e.owner && *e.owner != actor;
  auto kind = force ? kinds::entry_force_orphaned : kinds::entry_orphaned;
  auto c = engine.append(actor, kind, {{"entry", entry.str()}});
  return c.state->entries.at(entry);
}

Entry adopt_entry(Engine& engine, const UserId& actor, const ObjectId& entry) {
  require_registered(engine, actor);
  auto c = engine.append(actor, kinds::entry_adopted, {{"entry", entry.str()}});
  return c.state->entries.at(entry);
}

Entry transfer_entry(Engine& engine, const UserId& actor, const ObjectId& entry,
                     const UserId& recipient) {
  auto c = engine.append(actor, kinds::entry_transferred,
                         {{"entry", entry.str()}, {"recipient", recipient.str()}});
  return c.state->entries.at(entry);
}

std::vector<Entry> list_orphans(const State& s) {
  std::vector<Entry> out;
  for (const Entry* e : live_entries(s))
    if (e->orphaned())
      out.push_back(*e);
  return out;
}

} // namespace noos::authority

namespace noos::detail {

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

Effects entry_effects(const ObjectId& id, std::string summary) {
  Effects fx;
  fx.subjects.push_back({ObjectKind::entry, id});
  fx.summary = std::move(summary);
  return fx;
}

} // namespace

Effects on_entry_created(State& s, const EventRecord& rec) {
  const auto& title = str_field(rec, "title");
  auto kind = parse_entry_kind(str_field(rec, "kind"));
  const auto& content = str_field(rec, "content");
  const json& syn = field(rec, "synonyms");

  if (blank(title))
    fail(Errc::empty_title, "entry title must be nonempty");
  if (!kind)
    fail(Errc::invalid_argument, "unknown entry kind");
  if (!syn.is_array() || !std::all_of(syn.begin(), syn.end(), [](const json& v) { return v.is_string(); }))
    fail(Errc::invalid_argument, "synonyms must be a list of strings");

  Entry e;
  e.id = id_for('e', rec.seq);
  e.title = title;
  e.synonyms = syn.get<std::vector<std::string>>();
  e.kind = *kind;
  e.content = content;
  e.owner = rec.actor;
  e.created_at = rec.ts;
  e.updated_at = rec.ts;
  e.revision = 1;
  e.review_state = ReviewState::unreviewed;
  e.created_seq = rec.seq;
  s.entries.emplace(e.id, std::move(e));
  return {};
}

Effects on_entry_orphaned(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  Entry& e = s.entry_mut(id);
  if (e.orphaned())
    fail(Errc::already_orphaned, in_quotes(e.title) + " is already orphaned");
  if (*e.owner != rec.actor)
    fail(Errc::not_owner, "only the owner may orphan " + in_quotes(e.title));
  e.owner.reset();
  e.updated_at = rec.ts;
  return entry_effects(id, display_name(s, rec.actor) + " orphaned " + in_quotes(e.title));
}

Effects on_entry_force_orphaned(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  Entry& e = s.entry_mut(id);
  if (e.orphaned())
    fail(Errc::already_orphaned, in_quotes(e.title) + " is already orphaned");
  if (!is_moderator(actor_of(s, rec).role))
    fail(Errc::not_owner, "only an instructor or admin may orphan another user's entry");
  if (*e.owner == rec.actor)
    fail(Errc::invalid_argument, "owners orphan their own entries with entry.orphaned");
  e.owner.reset();
  e.updated_at = rec.ts;
  return entry_effects(id, display_name(s, rec.actor) + " orphaned " + in_quotes(e.title) +
                               " on behalf of the course");
}

Effects on_entry_adopted(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  Entry& e = s.entry_mut(id);
  if (!e.orphaned())
    fail(Errc::not_orphaned, in_quotes(e.title) + " is not orphaned");
  e.owner = rec.actor;
  e.updated_at = rec.ts;
  return entry_effects(id, display_name(s, rec.actor) + " adopted " + in_quotes(e.title));
}

Effects on_entry_transferred(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "entry"));
  UserId recipient(str_field(rec, "recipient"));
  Entry& e = s.entry_mut(id);
  if (e.orphaned() || *e.owner != rec.actor)
    fail(Errc::not_owner, "only the owner may transfer " + in_quotes(e.title));
  if (recipient == rec.actor)
    fail(Errc::self_transfer, "cannot transfer an entry to its current owner");
  if (!s.find_user(recipient))
    fail(Errc::unknown_recipient, "no such user: " + recipient.str());
  e.owner = recipient;
  e.updated_at = rec.ts;
  return entry_effects(id, display_name(s, rec.actor) + " transferred " + in_quotes(e.title) +
                               " to " + display_name(s, recipient));
}

} // namespace noos::detail
