#include "noos/collections.hpp"

#include "handlers.hpp"

#include <algorithm>

namespace noos::collections {

Collection create_collection(Engine& engine, const UserId& actor, std::string name) {
  auto c = engine.append(actor, kinds::collection_created, {{"name", std::move(name)}});
  return c.state->collections.at(detail::id_for('k', c.record.seq));
}

Collection add_entry(Engine& engine, const UserId& actor, const ObjectId& collection,
                     const ObjectId& entry) {
  auto c = engine.append(actor, kinds::collection_entry_added,
                         {{"collection", collection.str()}, {"entry", entry.str()}});
  return c.state->collections.at(collection);
}

std::vector<Collection> list_collections(const State& s) {
  std::vector<Collection> out;
  for (const auto& [id, c] : s.collections)
    out.push_back(c);
  std::sort(out.begin(), out.end(),
            [](const Collection& a, const Collection& b) { return a.created_seq < b.created_seq; });
  return out;
}

} // namespace noos::collections

namespace noos::detail {

Effects on_collection_created(State& s, const EventRecord& rec) {
  const auto& name = str_field(rec, "name");
  if (name.empty())
    fail(Errc::empty_title, "collection name must be nonempty");
  if (!is_moderator(actor_of(s, rec).role))
    fail(Errc::forbidden, "only an instructor or admin may create collections");
  Collection c;
  c.id = id_for('k', rec.seq);
  c.name = name;
  c.created_seq = rec.seq;
  s.collections.emplace(c.id, std::move(c));
  return {};
}

Effects on_collection_entry_added(State& s, const EventRecord& rec) {
  ObjectId coll_id(str_field(rec, "collection"));
  ObjectId entry_id(str_field(rec, "entry"));
  if (!is_moderator(actor_of(s, rec).role))
    fail(Errc::forbidden, "only an instructor or admin may organize collections");
  auto it = s.collections.find(coll_id);
  if (it == s.collections.end())
    fail(Errc::collection_missing, "no such collection: " + coll_id.str());
  Entry& e = s.entry_mut(entry_id);
  if (e.collection)
    fail(Errc::already_collected, in_quotes(e.title) + " already belongs to a collection");
  e.collection = coll_id;
  it->second.members.push_back(entry_id);
  return {};
}

} // namespace noos::detail
