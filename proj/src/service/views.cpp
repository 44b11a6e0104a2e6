#include "noos/service/views.hpp"

#include "noos/autolink.hpp"
#include "noos/corrections.hpp"

namespace noos::service::views {

namespace {

autolink::TermSource source_of(const Entry& e) {
  return {e.id, e.title, e.synonyms, e.created_seq};
}

} // namespace

autolink::TermIndex live_index(const State& s) {
  std::vector<autolink::TermSource> sources;
  for (const Entry* e : live_entries(s))
    sources.push_back(source_of(*e));
  return autolink::TermIndex::build(sources);
}

json entry_summary(const State& s, const Entry& e, const assess::RubricConfig& rubric) {
  auto open = assess::open_correction_count(s, e.id);
  return {{"id", e.id.str()},
          {"title", e.title},
          {"kind", to_string(e.kind)},
          {"owner", e.owner ? json(e.owner->str()) : json(nullptr)},
          {"orphaned", e.orphaned()},
          {"revision", e.revision},
          {"review_state", to_string(e.review_state)},
          {"updated_at", format_rfc3339(e.updated_at)},
          {"open_corrections", open},
          {"score", assess::score(assess::content_chars(e.content), open, e.review_state, rubric)}};
}

json thread(const std::vector<discussion::ThreadNode>& forest) {
  json out = json::array();
  for (const auto& node : forest) {
    json m = to_json(node.message);
    m["replies"] = thread(node.replies);
    out.push_back(std::move(m));
  }
  return out;
}

json entry_detail(const State& s, const ObjectId& id, const assess::RubricConfig& rubric) {
  const Entry& e = s.entry(id);
  auto linked = autolink::link(source_of(e), e.content, live_index(s));

  json links = json::array();
  for (const auto& l : linked.links)
    links.push_back({{"begin", l.begin},
                     {"end", l.end},
                     {"text", e.content.substr(l.begin, l.end - l.begin)},
                     {"target", l.target.str()}});
  json diagnostics = json::array();
  for (const auto& d : linked.diagnostics)
    diagnostics.push_back({{"offset", d.offset}, {"message", d.message}});
  json pinned = json::array();
  for (const auto& c : corrections::pinned_for_display(s, id))
    pinned.push_back(to_json(c));

  json j = to_json(e);
  j["linked_content"] = linked.content;
  j["links"] = std::move(links);
  j["diagnostics"] = std::move(diagnostics);
  j["open_corrections"] = std::move(pinned);
  j["thread"] = thread(discussion::get_thread(s, {ObjectKind::entry, id}));
  j["score"] = assess::score_entry(s, id, rubric).score;
  return j;
}

} // namespace noos::service::views
