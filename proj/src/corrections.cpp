#include "noos/corrections.hpp"

#include "handlers.hpp"

#include <algorithm>

namespace noos::corrections {

Correction file_correction(Engine& engine, const UserId& filer, const ObjectId& entry,
                           std::string text, Severity severity) {
  auto c = engine.append(filer, kinds::correction_filed,
                         {{"entry", entry.str()},
                          {"text", std::move(text)},
                          {"severity", to_string(severity)}});
  return c.state->corrections.at(detail::id_for('c', c.record.seq));
}

Correction resolve_correction(Engine& engine, const UserId& actor, const ObjectId& correction,
                              std::string action, std::string note) {
  auto c = engine.append(actor, kinds::correction_resolved,
                         {{"correction", correction.str()},
                          {"action", std::move(action)},
                          {"note", std::move(note)}});
  return c.state->corrections.at(correction);
}

std::vector<Correction> corrections_for(const State& s, const ObjectId& entry) {
  s.entry(entry);
  std::vector<Correction> out;
  for (const auto& [id, c] : s.corrections)
    if (c.entry == entry)
      out.push_back(c);
  std::sort(out.begin(), out.end(),
            [](const Correction& a, const Correction& b) { return a.filed_seq < b.filed_seq; });
  return out;
}

std::vector<Correction> open_corrections(const State& s, const ObjectId& entry) {
  auto all = corrections_for(s, entry);
  std::erase_if(all, [](const Correction& c) { return !c.open(); });
  return all;
}

std::vector<Correction> pinned_for_display(const State& s, const ObjectId& entry) {
  auto open = open_corrections(s, entry);
  std::stable_sort(open.begin(), open.end(), [](const Correction& a, const Correction& b) {
    return a.severity < b.severity;
  });
  return open;
}

} // namespace noos::corrections

namespace noos::detail {

Effects on_correction_filed(State& s, const EventRecord& rec) {
  ObjectId entry_id(str_field(rec, "entry"));
  const auto& text = str_field(rec, "text");
  auto severity = parse_severity(str_field(rec, "severity"));

  const Entry& e = s.entry(entry_id);
  if (text.empty())
    fail(Errc::empty_text, "correction text must be nonempty");
  if (!severity)
    fail(Errc::invalid_argument, "unknown severity");

  Correction c;
  c.id = id_for('c', rec.seq);
  c.entry = entry_id;
  c.filer = rec.actor;
  c.text = text;
  c.severity = *severity;
  c.filed_at = rec.ts;
  c.filed_seq = rec.seq;

  Effects fx;
  std::string who = display_name(s, rec.actor);
  if (e.owner)
    fx.implicit.push_back({*e.owner, who + " filed a correction on " + in_quotes(e.title) + ": " + text});
  fx.subjects.push_back({ObjectKind::entry, entry_id});
  fx.summary = who + " filed a correction on " + in_quotes(e.title);

  s.corrections.emplace(c.id, std::move(c));
  return fx;
}

Effects on_correction_resolved(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "correction"));
  const auto& action = str_field(rec, "action");
  const auto& note = str_field(rec, "note");

  auto it = s.corrections.find(id);
  if (it == s.corrections.end())
    fail(Errc::correction_missing, "no such correction: " + id.str());
  Correction& c = it->second;
  const Entry& e = s.entry(c.entry);
  if (!c.open())
    fail(Errc::already_resolved, "correction " + id.str() + " is already resolved");
  const User& actor = actor_of(s, rec);
  if (e.owner != actor.id && !is_moderator(actor.role))
    fail(Errc::not_owner, "only the owner of " + in_quotes(e.title) + " may resolve its corrections");
  if (action.empty())
    fail(Errc::empty_action, "resolution must say what action was taken");
  if (note.empty())
    fail(Errc::empty_action, "resolution must say why");

  c.state = CorrectionState::resolved;
  c.action_taken = action;
  c.resolution_note = note;
  c.resolved_by = actor.id;
  c.resolved_at = rec.ts;

  Effects fx;
  fx.implicit.push_back({c.filer, actor.name + " resolved your correction on " + in_quotes(e.title) +
                                      ". Action: " + action + ". Why: " + note});
  fx.subjects.push_back({ObjectKind::correction, id});
  fx.subjects.push_back({ObjectKind::entry, c.entry});
  fx.summary = actor.name + " resolved a correction on " + in_quotes(e.title) + ". Action: " + action;
  return fx;
}

} // namespace noos::detail
