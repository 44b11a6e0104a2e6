#include "noos/discussion.hpp"

#include "handlers.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace noos::discussion {

Message post_message(Engine& engine, const UserId& author, const ObjectRef& target,
                     std::string subject, std::string body) {
  auto c = engine.append(author, kinds::message_posted,
                         {{"target", to_json(target)},
                          {"subject", std::move(subject)},
                          {"body", std::move(body)}});
  return c.state->messages.at(detail::id_for('m', c.record.seq));
}

namespace {

using Children = std::map<ObjectRef, std::vector<const Message*>>;

Children index_children(const State& s) {
  Children out;
  for (const auto& [id, m] : s.messages)
    out[m.target].push_back(&m);
  for (auto& [parent, list] : out)
    std::sort(list.begin(), list.end(),
              [](const Message* a, const Message* b) { return a->seq < b->seq; });
  return out;
}

ThreadNode build(const Message& m, const Children& children) {
  ThreadNode node{m, {}};
  auto it = children.find({ObjectKind::message, m.id});
  if (it != children.end())
    for (const Message* child : it->second)
      node.replies.push_back(build(*child, children));
  return node;
}

} // namespace

std::vector<ThreadNode> get_thread(const State& s, const ObjectRef& anchor) {
  if (!s.object_exists(anchor))
    fail(Errc::unknown_anchor, "no such object: " + to_string(anchor));
  auto children = index_children(s);
  std::vector<ThreadNode> out;
  if (anchor.kind == ObjectKind::message) {
    out.push_back(build(s.messages.at(anchor.id), children));
    return out;
  }
  auto it = children.find(anchor);
  if (it != children.end())
    for (const Message* m : it->second)
      out.push_back(build(*m, children));
  return out;
}

std::size_t count_nodes(const std::vector<ThreadNode>& forest) {
  std::size_t n = 0;
  for (const auto& node : forest)
    n += 1 + count_nodes(node.replies);
  return n;
}

std::size_t depth(const std::vector<ThreadNode>& forest) {
  std::size_t d = 0;
  for (const auto& node : forest)
    d = std::max(d, 1 + depth(node.replies));
  return d;
}

std::vector<ObjectId> validate_threads(const State& s) {
  std::vector<ObjectId> bad;
  for (const auto& [id, m] : s.messages) {
    std::set<ObjectId> seen{id};
    const Message* cur = &m;
    bool ok = true;
    while (cur->is_reply()) {
      auto it = s.messages.find(cur->target.id);
      if (it == s.messages.end() || !seen.insert(it->first).second || it->second.seq >= cur->seq) {
        ok = false;
        break;
      }
      cur = &it->second;
    }
    if (ok && (cur->target != m.root || m.root.kind == ObjectKind::message))
      ok = false;
    if (!ok)
      bad.push_back(id);
  }
  return bad;
}

} // namespace noos::discussion

namespace noos::detail {

Effects on_message_posted(State& s, const EventRecord& rec) {
  auto target = object_ref_from_json(field(rec, "target"));
  const auto& subject = str_field(rec, "subject");
  const auto& body = str_field(rec, "body");

  if (!target)
    fail(Errc::unknown_target, "malformed target reference");
  if (!s.object_exists(*target))
    fail(Errc::unknown_target, "no such object: " + to_string(*target));
  if (body.empty())
    fail(Errc::empty_body, "message body must be nonempty");

  Message m;
  m.id = id_for('m', rec.seq);
  m.target = *target;
  m.author = rec.actor;
  m.body = body;
  m.posted_at = rec.ts;
  m.seq = rec.seq;
  m.subject = subject;

  Effects fx;
  std::string who = display_name(s, rec.actor);
  if (target->kind == ObjectKind::message) {
    const Message& parent = s.messages.at(target->id);
    m.root = parent.root;
    if (m.subject.empty()) {
      // Replies inherit the thread subject.
      const Message* top = &parent;
      while (top->is_reply())
        top = &s.messages.at(top->target.id);
      m.subject = top->subject.starts_with("Re: ") ? top->subject : "Re: " + top->subject;
    }
    fx.implicit.push_back({parent.author, who + " replied to your message \"" + parent.subject +
                                              "\": " + m.subject});
    fx.subjects.push_back(*target);
  } else {
    m.root = *target;
  }
  fx.subjects.push_back(m.root);
  fx.summary = who + " posted \"" + m.subject + "\" on " + to_string(m.root);

  s.messages.emplace(m.id, std::move(m));
  return fx;
}

} // namespace noos::detail
