#include "noos/state.hpp"

#include "noos/error.hpp"

#include <algorithm>

namespace noos {

const User* State::find_user(const UserId& id) const {
  auto it = users.find(id);
  return it == users.end() ? nullptr : &it->second;
}

const Entry* State::find_entry(const ObjectId& id) const {
  auto it = entries.find(id);
  if (it == entries.end() || it->second.deleted)
    return nullptr;
  return &it->second;
}

bool State::object_exists(const ObjectRef& ref) const {
  switch (ref.kind) {
  case ObjectKind::entry: return find_entry(ref.id) != nullptr;
  case ObjectKind::correction: return corrections.count(ref.id) != 0;
  case ObjectKind::request: return requests.count(ref.id) != 0;
  case ObjectKind::message: return messages.count(ref.id) != 0;
  }
  return false;
}

const User& State::user(const UserId& id, Errc missing) const {
  const User* u = find_user(id);
  if (!u)
    fail(missing, "no such user: " + id.str());
  return *u;
}

const Entry& State::entry(const ObjectId& id) const {
  const Entry* e = find_entry(id);
  if (!e)
    fail(Errc::entry_missing, "no such entry: " + id.str());
  return *e;
}

Entry& State::entry_mut(const ObjectId& id) {
  auto it = entries.find(id);
  if (it == entries.end() || it->second.deleted)
    fail(Errc::entry_missing, "no such entry: " + id.str());
  return it->second;
}

std::vector<const Entry*> live_entries(const State& s) {
  std::vector<const Entry*> out;
  for (const auto& [id, e] : s.entries)
    if (!e.deleted)
      out.push_back(&e);
  std::sort(out.begin(), out.end(),
            [](const Entry* a, const Entry* b) { return a->created_seq < b->created_seq; });
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json opt_ts(const std::optional<Timestamp>& ts) {
  return ts ? json(format_rfc3339(*ts)) : json(nullptr);
}

Timestamp ts_from(const json& j) {
  auto ts = parse_rfc3339(j.get<std::string>());
  if (!ts)
    fail(Errc::invalid_argument, "bad timestamp in snapshot");
  return *ts;
}

std::optional<Timestamp> opt_ts_from(const json& j) {
  if (j.is_null())
    return std::nullopt;
  return ts_from(j);
}

template <class Id>
json opt_id(const std::optional<Id>& id) {
  return id ? json(id->str()) : json(nullptr);
}

template <class Id>
std::optional<Id> opt_id_from(const json& j) {
  if (j.is_null())
    return std::nullopt;
  return Id(j.get<std::string>());
}

template <class T, class Parse>
T enum_from(const json& j, Parse parse) {
  auto v = parse(j.get<std::string>());
  if (!v)
    fail(Errc::invalid_argument, "bad enum value in snapshot: " + j.get<std::string>());
  return *v;
}

CorrectionState correction_state_from(const json& j) {
  return j.get<std::string>() == "open" ? CorrectionState::open : CorrectionState::resolved;
}

RequestState request_state_from(const json& j) {
  return j.get<std::string>() == "active" ? RequestState::active : RequestState::filled;
}

} // namespace

json to_json(const ObjectRef& ref) {
  return {{"kind", to_string(ref.kind)}, {"id", ref.id.str()}};
}

std::optional<ObjectRef> object_ref_from_json(const json& j) {
  if (!j.is_object() || j.size() != 2 || !j.contains("kind") || !j.contains("id") ||
      !j["kind"].is_string() || !j["id"].is_string())
    return std::nullopt;
  auto kind = parse_object_kind(j["kind"].get<std::string>());
  auto id = j["id"].get<std::string>();
  if (!kind || !is_valid_token(id))
    return std::nullopt;
  return ObjectRef{*kind, ObjectId(id)};
}

json to_json(Channels c) {
  json out = json::array();
  if (c.inbox)
    out.push_back("inbox");
  if (c.email)
    out.push_back("email");
  return out;
}

std::optional<Channels> channels_from_json(const json& j) {
  if (!j.is_array())
    return std::nullopt;
  Channels c;
  for (const auto& v : j) {
    if (!v.is_string())
      return std::nullopt;
    auto s = v.get<std::string>();
    if (s == "inbox")
      c.inbox = true;
    else if (s == "email")
      c.email = true;
    else
      return std::nullopt;
  }
  return c;
}

json to_json(const User& u) {
  return {{"id", u.id.str()},
          {"name", u.name},
          {"role", to_string(u.role)},
          {"email", u.email},
          {"created_seq", u.created_seq}};
}

json to_json(const Entry& e) {
  return {{"id", e.id.str()},
          {"title", e.title},
          {"synonyms", e.synonyms},
          {"kind", to_string(e.kind)},
          {"content", e.content},
          {"owner", opt_id(e.owner)},
          {"orphaned", e.orphaned()},
          {"created_at", format_rfc3339(e.created_at)},
          {"updated_at", format_rfc3339(e.updated_at)},
          {"revision", e.revision},
          {"review_state", to_string(e.review_state)},
          {"created_seq", e.created_seq},
          {"deleted", e.deleted},
          {"collection", opt_id(e.collection)}};
}

json to_json(const Correction& c) {
  return {{"id", c.id.str()},
          {"entry", c.entry.str()},
          {"filer", c.filer.str()},
          {"text", c.text},
          {"severity", to_string(c.severity)},
          {"state", to_string(c.state)},
          {"action_taken", c.action_taken},
          {"resolution_note", c.resolution_note},
          {"resolved_by", opt_id(c.resolved_by)},
          {"filed_at", format_rfc3339(c.filed_at)},
          {"resolved_at", opt_ts(c.resolved_at)},
          {"filed_seq", c.filed_seq}};
}

json to_json(const Request& r) {
  return {{"id", r.id.str()},
          {"title", r.title},
          {"description", r.description},
          {"creator", r.creator.str()},
          {"state", to_string(r.state)},
          {"filled_by", opt_id(r.filled_by)},
          {"filled_by_user", opt_id(r.filled_by_user)},
          {"created_at", format_rfc3339(r.created_at)},
          {"filled_at", opt_ts(r.filled_at)},
          {"created_seq", r.created_seq}};
}

json to_json(const Message& m) {
  return {{"id", m.id.str()},
          {"target", to_json(m.target)},
          {"root", to_json(m.root)},
          {"author", m.author.str()},
          {"subject", m.subject},
          {"body", m.body},
          {"posted_at", format_rfc3339(m.posted_at)},
          {"seq", m.seq}};
}

json to_json(const Watch& w) {
  return {{"user", w.user.str()}, {"object", to_json(w.object)}, {"channels", to_json(w.channels)}};
}

json to_json(const Notice& n) {
  return {{"id", n.id.str()},
          {"user", n.user.str()},
          {"event_seq", n.event_seq},
          {"summary", n.summary},
          {"read", n.read},
          {"created_at", format_rfc3339(n.created_at)},
          {"cause", to_string(n.cause)},
          {"channels", to_json(n.channels)}};
}

json to_json(const Collection& c) {
  json members = json::array();
  for (const auto& m : c.members)
    members.push_back(m.str());
  return {{"id", c.id.str()}, {"name", c.name}, {"members", members}, {"created_seq", c.created_seq}};
}

json to_json(const State& s) {
  json users = json::array();
  for (const auto& [id, u] : s.users) {
    json j = to_json(u);
    j["secret_hash"] = u.secret_hash;
    users.push_back(std::move(j));
  }
  auto list = [](const auto& map) {
    json out = json::array();
    for (const auto& [k, v] : map)
      out.push_back(to_json(v));
    return out;
  };
  return {{"last_seq", s.last_seq},
          {"last_ts", opt_ts(s.last_ts)},
          {"users", users},
          {"entries", list(s.entries)},
          {"corrections", list(s.corrections)},
          {"requests", list(s.requests)},
          {"messages", list(s.messages)},
          {"watches", list(s.watches)},
          {"notices", list(s.notices)},
          {"collections", list(s.collections)}};
}

State state_from_json(const json& j) {
  State s;
  try {
    s.last_seq = j.at("last_seq").get<Seq>();
    s.last_ts = opt_ts_from(j.at("last_ts"));

    for (const auto& u : j.at("users")) {
      User user;
      user.id = UserId(u.at("id").get<std::string>());
      user.name = u.at("name").get<std::string>();
      user.role = enum_from<Role>(u.at("role"), parse_role);
      user.email = u.at("email").get<std::string>();
      user.secret_hash = u.at("secret_hash").get<std::string>();
      user.created_seq = u.at("created_seq").get<Seq>();
      s.users.emplace(user.id, std::move(user));
    }
    for (const auto& e : j.at("entries")) {
      Entry entry;
      entry.id = ObjectId(e.at("id").get<std::string>());
      entry.title = e.at("title").get<std::string>();
      entry.synonyms = e.at("synonyms").get<std::vector<std::string>>();
      entry.kind = enum_from<EntryKind>(e.at("kind"), parse_entry_kind);
      entry.content = e.at("content").get<std::string>();
      entry.owner = opt_id_from<UserId>(e.at("owner"));
      entry.created_at = ts_from(e.at("created_at"));
      entry.updated_at = ts_from(e.at("updated_at"));
      entry.revision = e.at("revision").get<int>();
      entry.review_state = enum_from<ReviewState>(e.at("review_state"), parse_review_state);
      entry.created_seq = e.at("created_seq").get<Seq>();
      entry.deleted = e.at("deleted").get<bool>();
      entry.collection = opt_id_from<ObjectId>(e.at("collection"));
      s.entries.emplace(entry.id, std::move(entry));
    }
    for (const auto& c : j.at("corrections")) {
      Correction corr;
      corr.id = ObjectId(c.at("id").get<std::string>());
      corr.entry = ObjectId(c.at("entry").get<std::string>());
      corr.filer = UserId(c.at("filer").get<std::string>());
      corr.text = c.at("text").get<std::string>();
      corr.severity = enum_from<Severity>(c.at("severity"), parse_severity);
      corr.state = correction_state_from(c.at("state"));
      corr.action_taken = c.at("action_taken").get<std::string>();
      corr.resolution_note = c.at("resolution_note").get<std::string>();
      corr.resolved_by = opt_id_from<UserId>(c.at("resolved_by"));
      corr.filed_at = ts_from(c.at("filed_at"));
      corr.resolved_at = opt_ts_from(c.at("resolved_at"));
      corr.filed_seq = c.at("filed_seq").get<Seq>();
      s.corrections.emplace(corr.id, std::move(corr));
    }
    for (const auto& r : j.at("requests")) {
      Request req;
      req.id = ObjectId(r.at("id").get<std::string>());
      req.title = r.at("title").get<std::string>();
      req.description = r.at("description").get<std::string>();
      req.creator = UserId(r.at("creator").get<std::string>());
      req.state = request_state_from(r.at("state"));
      req.filled_by = opt_id_from<ObjectId>(r.at("filled_by"));
      req.filled_by_user = opt_id_from<UserId>(r.at("filled_by_user"));
      req.created_at = ts_from(r.at("created_at"));
      req.filled_at = opt_ts_from(r.at("filled_at"));
      req.created_seq = r.at("created_seq").get<Seq>();
      s.requests.emplace(req.id, std::move(req));
    }
    for (const auto& m : j.at("messages")) {
      Message msg;
      msg.id = ObjectId(m.at("id").get<std::string>());
      msg.target = object_ref_from_json(m.at("target")).value();
      msg.root = object_ref_from_json(m.at("root")).value();
      msg.author = UserId(m.at("author").get<std::string>());
      msg.subject = m.at("subject").get<std::string>();
      msg.body = m.at("body").get<std::string>();
      msg.posted_at = ts_from(m.at("posted_at"));
      msg.seq = m.at("seq").get<Seq>();
      s.messages.emplace(msg.id, std::move(msg));
    }
    for (const auto& w : j.at("watches")) {
      Watch watch;
      watch.user = UserId(w.at("user").get<std::string>());
      watch.object = object_ref_from_json(w.at("object")).value();
      watch.channels = channels_from_json(w.at("channels")).value();
      s.watches.emplace(std::pair{watch.user, watch.object}, std::move(watch));
    }
    for (const auto& n : j.at("notices")) {
      Notice notice;
      notice.id = ObjectId(n.at("id").get<std::string>());
      notice.user = UserId(n.at("user").get<std::string>());
      notice.event_seq = n.at("event_seq").get<Seq>();
      notice.summary = n.at("summary").get<std::string>();
      notice.read = n.at("read").get<bool>();
      notice.created_at = ts_from(n.at("created_at"));
      notice.cause = n.at("cause").get<std::string>() == "implicit" ? NoticeCause::implicit
                                                                      : NoticeCause::watch;
      notice.channels = channels_from_json(n.at("channels")).value();
      s.notices.emplace(notice.id, std::move(notice));
    }
    for (const auto& c : j.at("collections")) {
      Collection coll;
      coll.id = ObjectId(c.at("id").get<std::string>());
      coll.name = c.at("name").get<std::string>();
      for (const auto& m : c.at("members"))
        coll.members.emplace_back(m.get<std::string>());
      coll.created_seq = c.at("created_seq").get<Seq>();
      s.collections.emplace(coll.id, std::move(coll));
    }
  } catch (const json::exception& e) {
    fail(Errc::invalid_argument, std::string("malformed snapshot: ") + e.what());
  } catch (const std::bad_optional_access&) {
    fail(Errc::invalid_argument, "malformed snapshot: bad object reference or channels");
  }
  return s;
}

std::string encode_snapshot(const State& s) {
  json header = {{"format", "noos-snapshot"}, {"version", snapshot_version}, {"seq", s.last_seq}};
  return header.dump() + "\n" + to_json(s).dump() + "\n";
}

State decode_snapshot(std::string_view text) {
  auto nl = text.find('\n');
  if (nl == std::string_view::npos)
    fail(Errc::invalid_argument, "snapshot: missing header line");
  json header;
  json body;
  try {
    header = json::parse(text.substr(0, nl));
    body = json::parse(text.substr(nl + 1));
  } catch (const json::parse_error& e) {
    fail(Errc::invalid_argument, std::string("snapshot: ") + e.what());
  }
  if (!header.is_object() || header.value("format", "") != "noos-snapshot")
    fail(Errc::invalid_argument, "snapshot: bad header");
  if (header.value("version", 0) != snapshot_version)
    fail(Errc::invalid_argument,
         "snapshot: unsupported version " + std::to_string(header.value("version", 0)));
  State s = state_from_json(body);
  if (header.value("seq", Seq{-1}) != s.last_seq)
    fail(Errc::invalid_argument, "snapshot: header seq does not match body");
  return s;
}

} // namespace noos
