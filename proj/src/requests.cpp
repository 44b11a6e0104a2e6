#include "noos/requests.hpp"

#include "handlers.hpp"

#include <algorithm>
#include <cctype>

namespace noos::requests {

std::optional<Filter> parse_filter(std::string_view s) noexcept {
  if (s == "active") return Filter::active;
  if (s == "filled") return Filter::filled;
  if (s == "all") return Filter::all;
  return std::nullopt;
}

Request create_request(Engine& engine, const UserId& creator, std::string title,
                       std::string description) {
  if (!engine.snapshot()->find_user(creator))
    fail(Errc::unknown_user, "no such user: " + creator.str());
  auto c = engine.append(creator, kinds::request_created,
                         {{"title", std::move(title)}, {"description", std::move(description)}});
  return c.state->requests.at(detail::id_for('r', c.record.seq));
}

Request fulfill_request(Engine& engine, const UserId& actor, const ObjectId& request,
                        const ObjectId& entry) {
  auto c = engine.append(actor, kinds::request_filled,
                         {{"request", request.str()}, {"entry", entry.str()}});
  return c.state->requests.at(request);
}

std::vector<Request> list_requests(const State& s, Filter filter) {
  std::vector<Request> out;
  for (const auto& [id, r] : s.requests) {
    bool keep = filter == Filter::all || (filter == Filter::active) == (r.state == RequestState::active);
    if (keep)
      out.push_back(r);
  }
  std::sort(out.begin(), out.end(),
            [](const Request& a, const Request& b) { return a.created_seq < b.created_seq; });
  return out;
}

} // namespace noos::requests

namespace noos::detail {

Effects on_request_created(State& s, const EventRecord& rec) {
  const auto& title = str_field(rec, "title");
  const auto& description = str_field(rec, "description");
  if (std::all_of(title.begin(), title.end(), [](unsigned char c) { return std::isspace(c); }))
    fail(Errc::empty_title, "request title must be nonempty");

  Request r;
  r.id = id_for('r', rec.seq);
  r.title = title;
  r.description = description;
  r.creator = rec.actor;
  r.created_at = rec.ts;
  r.created_seq = rec.seq;
  s.requests.emplace(r.id, std::move(r));
  return {};
}

Effects on_request_filled(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "request"));
  ObjectId entry_id(str_field(rec, "entry"));

  auto it = s.requests.find(id);
  if (it == s.requests.end())
    fail(Errc::request_missing, "no such request: " + id.str());
  Request& r = it->second;
  if (r.state != RequestState::active)
    fail(Errc::already_filled, "request " + in_quotes(r.title) + " is already filled");
  const Entry& e = s.entry(entry_id);
  if (e.owner != rec.actor)
    fail(Errc::not_entry_owner, "requests are filled with entries you own");

  r.state = RequestState::filled;
  r.filled_by = entry_id;
  r.filled_by_user = rec.actor;
  r.filled_at = rec.ts;

  Effects fx;
  std::string who = display_name(s, rec.actor);
  fx.implicit.push_back(
      {r.creator, who + " filled your request " + in_quotes(r.title) + " with " + in_quotes(e.title)});
  fx.subjects.push_back({ObjectKind::request, id});
  fx.subjects.push_back({ObjectKind::entry, entry_id});
  fx.summary = who + " filled request " + in_quotes(r.title) + " with " + in_quotes(e.title);
  return fx;
}

} // namespace noos::detail
