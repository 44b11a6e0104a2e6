#include "noos/notify.hpp"

#include "handlers.hpp"

#include <algorithm>
#include <map>

namespace noos::notify {

Watch add_watch(Engine& engine, const UserId& user, const ObjectRef& object, Channels channels) {
  auto c = engine.append(user, kinds::watch_set,
                         {{"object", to_json(object)}, {"channels", to_json(channels)}});
  return c.state->watches.at({user, object});
}

void remove_watch(Engine& engine, const UserId& user, const ObjectRef& object) {
  engine.append(user, kinds::watch_removed, {{"object", to_json(object)}});
}

std::optional<InboxFilter> parse_inbox_filter(std::string_view s) noexcept {
  if (s == "unread") return InboxFilter::unread;
  if (s == "all") return InboxFilter::all;
  return std::nullopt;
}

std::vector<Notice> inbox(const State& s, const UserId& user, InboxFilter filter) {
  s.user(user, Errc::unknown_user);
  std::vector<Notice> out;
  for (const auto& [id, n] : s.notices) {
    if (n.user != user || !n.channels.inbox)
      continue;
    if (filter == InboxFilter::unread && n.read)
      continue;
    out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [](const Notice& a, const Notice& b) {
    if (a.event_seq != b.event_seq)
      return a.event_seq > b.event_seq;
    return a.id > b.id;
  });
  return out;
}

Notice mark_read(Engine& engine, const UserId& user, const ObjectId& notice) {
  auto c = engine.append(user, kinds::notice_read, {{"notice", notice.str()}});
  return c.state->notices.at(notice);
}

namespace {

std::string notice_prefix(Seq seq) { return "n" + std::to_string(seq) + "-"; }

} // namespace

std::vector<Notice> fan_out(State& s, const EventRecord& rec, const Effects& effects) {
  struct Pending {
    NoticeCause cause;
    Channels channels;
    std::string summary;
  };
  std::map<UserId, Pending> by_user;

  for (const auto& imp : effects.implicit) {
    if (imp.user == rec.actor)
      continue;
    const User* u = s.find_user(imp.user);
    if (!u)
      continue;
    Channels ch{true, !u->email.empty()};
    auto [it, inserted] = by_user.try_emplace(imp.user, Pending{NoticeCause::implicit, ch, imp.summary});
    if (!inserted)
      it->second.channels = it->second.channels | ch;
  }

  for (const auto& subject : effects.subjects) {
    for (const auto& [key, w] : s.watches) {
      if (w.object != subject || w.user == rec.actor)
        continue;
      auto [it, inserted] =
          by_user.try_emplace(w.user, Pending{NoticeCause::watch, w.channels, effects.summary});
      if (!inserted)
        it->second.channels = it->second.channels | w.channels;
    }
  }

  std::vector<Notice> created;
  int k = 0;
  for (auto& [user, p] : by_user) {
    Notice n;
    n.id = ObjectId(notice_prefix(rec.seq) + std::to_string(++k));
    n.user = user;
    n.event_seq = rec.seq;
    n.summary = std::move(p.summary);
    n.created_at = rec.ts;
    n.cause = p.cause;
    n.channels = p.channels;
    s.notices.emplace(n.id, n);
    created.push_back(std::move(n));
  }
  return created;
}

std::vector<Notice> notices_for_event(const State& s, Seq seq) {
  std::vector<Notice> out;
  std::string prefix = notice_prefix(seq);
  for (auto it = s.notices.lower_bound(ObjectId(prefix));
       it != s.notices.end() && it->first.str().starts_with(prefix); ++it)
    out.push_back(it->second);
  return out;
}

std::vector<MailMessage> mail_for(const State& s, Seq seq) {
  std::vector<MailMessage> out;
  for (const auto& n : notices_for_event(s, seq)) {
    if (!n.channels.email)
      continue;
    const User* u = s.find_user(n.user);
    if (!u || u->email.empty())
      continue;
    out.push_back({u->email, "[noosphere] " + n.summary.substr(0, 72), n.summary, seq});
  }
  return out;
}

} // namespace noos::notify

namespace noos::detail {

namespace {

ObjectRef object_field(const EventRecord& rec) {
  auto ref = object_ref_from_json(field(rec, "object"));
  if (!ref)
    fail(Errc::unknown_object, "malformed object reference");
  return *ref;
}

} // namespace

Effects on_watch_set(State& s, const EventRecord& rec) {
  ObjectRef object = object_field(rec);
  auto channels = channels_from_json(field(rec, "channels"));
  if (!s.object_exists(object))
    fail(Errc::unknown_object, "no such object: " + to_string(object));
  if (!channels)
    fail(Errc::invalid_argument, "channels must be a list of \"inbox\"/\"email\"");
  if (channels->empty())
    fail(Errc::empty_channels, "a watch needs at least one channel");
  s.watches[{rec.actor, object}] = Watch{rec.actor, object, *channels};
  return {};
}

Effects on_watch_removed(State& s, const EventRecord& rec) {
  ObjectRef object = object_field(rec);
  if (s.watches.erase({rec.actor, object}) == 0)
    fail(Errc::no_such_watch, "no watch on " + to_string(object));
  return {};
}

Effects on_notice_read(State& s, const EventRecord& rec) {
  ObjectId id(str_field(rec, "notice"));
  auto it = s.notices.find(id);
  if (it == s.notices.end())
    fail(Errc::notice_missing, "no such notice: " + id.str());
  if (it->second.user != rec.actor)
    fail(Errc::not_your_notice, "notice " + id.str() + " belongs to someone else");
  it->second.read = true;
  return {};
}

} // namespace noos::detail
