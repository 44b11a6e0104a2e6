#include "noos/service/api.hpp"

#include "noos/assess.hpp"
#include "noos/authority.hpp"
#include "noos/collections.hpp"
#include "noos/core.hpp"
#include "noos/corrections.hpp"
#include "noos/discussion.hpp"
#include "noos/notes.hpp"
#include "noos/notify.hpp"
#include "noos/requests.hpp"
#include "noos/service/views.hpp"

#include "httplib.h"

#include <mutex>
#include <set>
#include <sys/socket.h>

namespace noos::service {

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    auto j = path.find('/', i);
    if (j == std::string_view::npos)
      j = path.size();
    if (j > i)
      parts.emplace_back(path.substr(i, j - i));
    i = j + 1;
  }
  return parts;
}

Response json_response(const json& j, int status = 200) {
  return {status, j.dump(), "application/json"};
}

Response text_response(std::string body, std::string content_type) {
  return {200, std::move(body), std::move(content_type)};
}

Response no_content() { return {204, "", "application/json"}; }

[[noreturn]] void route_missing(const Request& req) {
  fail(Errc::not_found, "no route for " + req.method + " " + req.path);
}

// Request body as a JSON object with a closed set of fields. An empty body
// reads as {}.
class Body {
public:
  Body(const std::string& text, std::set<std::string> known) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
      j_ = json::object();
    } else {
      try {
        j_ = json::parse(text);
      } catch (const json::parse_error& e) {
        fail(Errc::invalid_argument, std::string("request body is not JSON: ") + e.what());
      }
    }
    if (!j_.is_object())
      fail(Errc::invalid_argument, "request body must be a JSON object");
    for (const auto& [key, value] : j_.items())
      if (!known.count(key))
        fail(Errc::unknown_field, "unknown field \"" + key + "\"");
  }

  bool has(const char* f) const { return j_.contains(f) && !j_[f].is_null(); }

  std::string str(const char* f) const {
    if (!has(f))
      fail(Errc::invalid_argument, std::string("missing field \"") + f + "\"");
    if (!j_[f].is_string())
      fail(Errc::invalid_argument, std::string("field \"") + f + "\" must be a string");
    return j_[f].get<std::string>();
  }

  std::string str_or(const char* f, std::string fallback) const {
    return has(f) ? str(f) : fallback;
  }

  std::optional<int> opt_int(const char* f) const {
    if (!has(f))
      return std::nullopt;
    if (!j_[f].is_number_integer())
      fail(Errc::invalid_argument, std::string("field \"") + f + "\" must be an integer");
    return j_[f].get<int>();
  }

  std::vector<std::string> strings(const char* f) const {
    std::vector<std::string> out;
    if (!has(f))
      return out;
    if (!j_[f].is_array())
      fail(Errc::invalid_argument, std::string("field \"") + f + "\" must be an array");
    for (const auto& v : j_[f]) {
      if (!v.is_string())
        fail(Errc::invalid_argument, std::string("field \"") + f + "\" must hold strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  const json& raw(const char* f) const { return j_[f]; }

private:
  json j_;
};

ObjectRef ref_arg(const std::string& text, const char* what) {
  auto ref = parse_object_ref(text);
  if (!ref)
    fail(Errc::invalid_argument,
         std::string(what) + " must look like \"entry:e12\", got \"" + text + "\"");
  return *ref;
}

std::optional<std::string> query_param(const Request& req, const char* name) {
  auto it = req.query.find(name);
  if (it == req.query.end())
    return std::nullopt;
  return it->second;
}

Day day_arg(const Request& req, const char* name) {
  auto v = query_param(req, name);
  if (!v)
    fail(Errc::invalid_argument, std::string("missing query parameter \"") + name + "\"");
  auto d = parse_day(*v);
  if (!d)
    fail(Errc::invalid_argument, std::string(name) + " must be YYYY-MM-DD, got \"" + *v + "\"");
  return *d;
}

bool wants_tsv(const Request& req) {
  auto f = query_param(req, "format").value_or("json");
  if (f == "tsv")
    return true;
  if (f != "json")
    fail(Errc::unsupported_format, "format must be json or tsv, got \"" + f + "\"");
  return false;
}

json array_of(const auto& items) {
  json out = json::array();
  for (const auto& x : items)
    out.push_back(to_json(x));
  return out;
}

} // namespace

int status_for(Errc code) noexcept {
  switch (classify(code)) {
  case ErrorClass::precondition: return 400;
  case ErrorClass::auth: return 401;
  case ErrorClass::forbidden: return 403;
  case ErrorClass::missing: return 404;
  case ErrorClass::conflict: return 409;
  case ErrorClass::internal: return 500;
  }
  return 500;
}

Response error_response(Errc code, const std::string& message) {
  json j = {{"error", {{"code", to_string(code)}, {"message", message}}}};
  return json_response(j, status_for(code));
}

Api::Api(Engine& engine, SessionStore& sessions, ApiOptions options)
    : engine_(engine), sessions_(sessions), options_(std::move(options)) {}

Response Api::handle(const Request& req) {
  try {
    return dispatch(req);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(Errc::storage_failure, std::string("internal error: ") + e.what());
  }
}

Response Api::dispatch(const Request& req) {
  if (req.method == "OPTIONS")
    return no_content();

  auto parts = split_path(req.path);
  if (parts.empty() || parts[0] != "v1")
    route_missing(req);
  parts.erase(parts.begin());
  const auto n = parts.size();
  const std::string& m = req.method;
  auto at = [&](std::size_t i) -> const std::string& { return parts[i]; };
  auto is = [&](std::initializer_list<const char*> shape) {
    if (shape.size() != n)
      return false;
    std::size_t i = 0;
    for (const char* s : shape) {
      if (std::string_view(s) != "*" && parts[i] != s)
        return false;
      ++i;
    }
    return true;
  };
  auto caller = [&]() -> UserId {
    constexpr std::string_view bearer = "Bearer ";
    std::string_view h = req.authorization;
    if (h.substr(0, bearer.size()) != bearer)
      fail(Errc::auth_required, "missing bearer token");
    return sessions_.authenticate(h.substr(bearer.size()));
  };
  const auto& rubric = options_.rubric;

  if (m == "POST" && is({"login"})) {
    Body b(req.body, {"user", "secret"});
    auto session = sessions_.login(*engine_.snapshot(), UserId(b.str("user")), b.str("secret"));
    return json_response({{"token", session.token},
                          {"user", session.user.str()},
                          {"expires_at", format_rfc3339(session.expires_at)}});
  }

  // Users.
  if (is({"users"})) {
    if (m == "GET") {
      auto s = engine_.snapshot();
      json out = json::array();
      for (const auto& [id, u] : s->users)
        out.push_back(to_json(u));
      return json_response(out);
    }
    if (m == "POST") {
      auto actor = caller();
      Body b(req.body, {"id", "name", "role", "email", "secret"});
      NewUser nu;
      nu.id = UserId(b.str("id"));
      nu.name = b.str_or("name", nu.id.str());
      auto role = parse_role(b.str_or("role", "student"));
      if (!role)
        fail(Errc::invalid_argument, "role must be student, instructor, auditor or admin");
      nu.role = *role;
      nu.email = b.str_or("email", "");
      if (b.has("secret"))
        nu.secret_hash = hash_secret(b.str("secret"));
      return json_response(to_json(create_user(engine_, actor, nu)), 201);
    }
  }
  if (m == "POST" && is({"users", "*", "role"})) {
    auto actor = caller();
    Body b(req.body, {"role"});
    auto role = parse_role(b.str("role"));
    if (!role)
      fail(Errc::invalid_argument, "role must be student, instructor, auditor or admin");
    return json_response(to_json(change_role(engine_, actor, UserId(at(1)), *role)));
  }

  // Entries.
  if (is({"entries"})) {
    if (m == "GET") {
      auto s = engine_.snapshot();
      auto owner = query_param(req, "owner");
      json out = json::array();
      for (const Entry* e : live_entries(*s))
        if (!owner || (e->owner && e->owner->str() == *owner))
          out.push_back(views::entry_summary(*s, *e, rubric));
      return json_response(out);
    }
    if (m == "POST") {
      auto actor = caller();
      Body b(req.body, {"title", "synonyms", "kind", "content"});
      authority::NewEntry spec;
      spec.title = b.str("title");
      spec.synonyms = b.strings("synonyms");
      auto kind = parse_entry_kind(b.str_or("kind", "concept"));
      if (!kind)
        fail(Errc::invalid_argument, "unknown entry kind");
      spec.kind = *kind;
      spec.content = b.str_or("content", "");
      auto e = authority::create_entry(engine_, actor, spec);
      return json_response(views::entry_detail(*engine_.snapshot(), e.id, rubric), 201);
    }
  }
  if (n == 2 && at(0) == "entries") {
    ObjectId id(at(1));
    if (m == "GET")
      return json_response(views::entry_detail(*engine_.snapshot(), id, rubric));
    if (m == "PUT") {
      auto actor = caller();
      Body b(req.body, {"content", "expected_revision"});
      revise_entry(engine_, actor, id, b.str("content"), b.opt_int("expected_revision"));
      return json_response(views::entry_detail(*engine_.snapshot(), id, rubric));
    }
    if (m == "DELETE") {
      auto actor = caller();
      delete_entry(engine_, actor, id);
      return no_content();
    }
  }
  if (n == 3 && at(0) == "entries") {
    ObjectId id(at(1));
    const std::string& op = at(2);
    if (m == "GET" && op == "corrections") {
      auto s = engine_.snapshot();
      return json_response(array_of(corrections::corrections_for(*s, id)));
    }
    if (m == "POST") {
      if (op == "orphan") {
        auto actor = caller();
        Body b(req.body, {});
        return json_response(to_json(authority::orphan_entry(engine_, actor, id)));
      }
      if (op == "adopt") {
        auto actor = caller();
        Body b(req.body, {});
        auto e = authority::adopt_entry(engine_, actor, id);
        auto s = engine_.snapshot();
        // The adopter inherits these; no self-notice is sent for them.
        return json_response({{"entry", to_json(e)},
                              {"open_corrections", array_of(corrections::open_corrections(*s, id))}});
      }
      if (op == "transfer") {
        auto actor = caller();
        Body b(req.body, {"recipient"});
        return json_response(
            to_json(authority::transfer_entry(engine_, actor, id, UserId(b.str("recipient")))));
      }
      if (op == "review") {
        auto actor = caller();
        Body b(req.body, {"state"});
        auto state = parse_review_state(b.str("state"));
        if (!state)
          fail(Errc::invalid_argument, "state must be unreviewed, needs_work or approved");
        return json_response(to_json(review_entry(engine_, actor, id, *state)));
      }
      if (op == "corrections") {
        auto actor = caller();
        Body b(req.body, {"text", "severity"});
        auto severity = parse_severity(b.str_or("severity", "error"));
        if (!severity)
          fail(Errc::invalid_argument, "severity must be error, improvement or style");
        auto c = corrections::file_correction(engine_, actor, id, b.str("text"), *severity);
        return json_response(to_json(c), 201);
      }
    }
  }
  if (m == "GET" && is({"orphans"})) {
    auto s = engine_.snapshot();
    json out = json::array();
    for (const auto& e : authority::list_orphans(*s))
      out.push_back(views::entry_summary(*s, e, rubric));
    return json_response(out);
  }

  // Corrections.
  if (m == "POST" && is({"corrections", "*", "resolve"})) {
    auto actor = caller();
    Body b(req.body, {"action", "note"});
    return json_response(to_json(corrections::resolve_correction(
        engine_, actor, ObjectId(at(1)), b.str("action"), b.str("note"))));
  }

  // Requests.
  if (is({"requests"})) {
    if (m == "GET") {
      auto name = query_param(req, "filter").value_or("active");
      auto filter = requests::parse_filter(name);
      if (!filter)
        fail(Errc::invalid_argument, "filter must be active, filled or all");
      return json_response(array_of(requests::list_requests(*engine_.snapshot(), *filter)));
    }
    if (m == "POST") {
      auto actor = caller();
      Body b(req.body, {"title", "description"});
      auto r = requests::create_request(engine_, actor, b.str("title"), b.str_or("description", ""));
      return json_response(to_json(r), 201);
    }
  }
  if (m == "POST" && is({"requests", "*", "fulfill"})) {
    auto actor = caller();
    Body b(req.body, {"entry"});
    return json_response(to_json(
        requests::fulfill_request(engine_, actor, ObjectId(at(1)), ObjectId(b.str("entry")))));
  }

  // Discussion.
  if (m == "POST" && is({"messages"})) {
    auto actor = caller();
    Body b(req.body, {"target", "subject", "body"});
    auto target = ref_arg(b.str("target"), "target");
    auto msg = discussion::post_message(engine_, actor, target, b.str_or("subject", ""),
                                        b.str("body"));
    return json_response(to_json(msg), 201);
  }
  if (m == "GET" && is({"threads"})) {
    auto anchor = query_param(req, "anchor");
    if (!anchor)
      fail(Errc::invalid_argument, "missing query parameter \"anchor\"");
    auto ref = ref_arg(*anchor, "anchor");
    return json_response(views::thread(discussion::get_thread(*engine_.snapshot(), ref)));
  }

  // Watches and the inbox.
  if (is({"watches"})) {
    if (m == "PUT") {
      auto actor = caller();
      Body b(req.body, {"object", "channels"});
      auto object = ref_arg(b.str("object"), "object");
      Channels channels{true, false};
      if (b.has("channels")) {
        auto c = channels_from_json(b.raw("channels"));
        if (!c)
          fail(Errc::invalid_argument, "channels must be {\"inbox\":bool,\"email\":bool}");
        channels = *c;
      }
      return json_response(to_json(notify::add_watch(engine_, actor, object, channels)));
    }
    if (m == "DELETE") {
      auto actor = caller();
      std::string object_text;
      if (auto q = query_param(req, "object")) {
        object_text = *q;
      } else {
        Body b(req.body, {"object"});
        object_text = b.str("object");
      }
      notify::remove_watch(engine_, actor, ref_arg(object_text, "object"));
      return no_content();
    }
  }
  if (m == "GET" && is({"inbox"})) {
    auto user = caller();
    auto name = query_param(req, "filter").value_or("unread");
    auto filter = notify::parse_inbox_filter(name);
    if (!filter)
      fail(Errc::invalid_argument, "filter must be unread or all");
    return json_response(array_of(notify::inbox(*engine_.snapshot(), user, *filter)));
  }
  if (m == "POST" && is({"notices", "*", "read"})) {
    auto user = caller();
    Body b(req.body, {});
    return json_response(to_json(notify::mark_read(engine_, user, ObjectId(at(1)))));
  }

  // Collections.
  if (is({"collections"})) {
    if (m == "GET")
      return json_response(array_of(collections::list_collections(*engine_.snapshot())));
    if (m == "POST") {
      auto actor = caller();
      Body b(req.body, {"name"});
      return json_response(to_json(collections::create_collection(engine_, actor, b.str("name"))),
                           201);
    }
  }
  if (m == "POST" && is({"collections", "*", "entries"})) {
    auto actor = caller();
    Body b(req.body, {"entry"});
    return json_response(to_json(
        collections::add_entry(engine_, actor, ObjectId(at(1)), ObjectId(b.str("entry")))));
  }

  // Reports and export.
  if (m == "GET" && is({"reports", "participation"})) {
    bool tsv = wants_tsv(req);
    auto s = engine_.snapshot();
    auto users = assess::students(*s);
    auto report = assess::participation_report(users, *s, rubric);
    if (tsv)
      return text_response(assess::to_tsv(report), "text/tab-separated-values");
    return json_response(assess::to_json(report));
  }
  if (m == "GET" && is({"reports", "closures"})) {
    bool tsv = wants_tsv(req);
    auto from = day_arg(req, "from");
    auto to = day_arg(req, "to");
    auto log = engine_.log();
    auto h = assess::closure_histogram(log, from, to, options_.tz_offset);
    if (tsv)
      return text_response(assess::to_tsv(h), "text/tab-separated-values");
    return json_response(assess::to_json(h));
  }
  if (m == "GET" && (is({"export", "notes.tex"}) || is({"export", "toc"}))) {
    notes::CompileOptions opts;
    opts.front = options_.front;
    opts.rubric = rubric;
    auto doc = notes::compile(*engine_.snapshot(), opts);
    if (at(1) == "toc")
      return text_response(notes::serialize(doc, notes::Format::toc_text),
                           "text/plain; charset=utf-8");
    return text_response(notes::serialize(doc, notes::Format::latex), "application/x-tex");
  }

  route_missing(req);
}

struct HttpServer::Impl {
  explicit Impl(Api& a) : api(a) {}

  Api& api;
  httplib::Server server;
  std::mutex mu;
  bool run_called = false;
  bool stop_requested = false;
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>(api)) {
  auto& server = impl_->server;
  // httplib's default also sets SO_REUSEPORT, which would let a second
  // instance share the port silently.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Authorization, Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"}});
  // Catch-all routes rather than a pre-routing hook: httplib reads the
  // request body only after pre-routing.
  auto forward = [this](const httplib::Request& hreq, httplib::Response& hres) {
    Request req;
    req.method = hreq.method;
    req.path = hreq.path;
    // hreq.params also holds form-encoded body fields; take the URL's only.
    if (auto q = hreq.target.find('?'); q != std::string::npos) {
      httplib::Params params;
      httplib::detail::parse_query_text(hreq.target.substr(q + 1), params);
      for (const auto& [k, v] : params)
        req.query.emplace(k, v);
    }
    req.body = hreq.body;
    req.authorization = hreq.get_header_value("Authorization");
    auto res = impl_->api.handle(req);
    hres.status = res.status;
    if (res.status != 204)
      hres.set_content(res.body, res.content_type);
  };
  const std::string any = ".*";
  server.Get(any, forward);
  server.Post(any, forward);
  server.Put(any, forward);
  server.Patch(any, forward);
  server.Delete(any, forward);
  server.Options(any, forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  if (port == 0) {
    int bound = server.bind_to_any_port(host);
    if (bound < 0)
      throw PortInUse("cannot bind " + host + " on an ephemeral port");
    return bound;
  }
  if (!server.bind_to_port(host, port))
    throw PortInUse("port-in-use: cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::run() {
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->stop_requested)
      return;
    impl_->run_called = true;
  }
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  {
    std::lock_guard lock(impl_->mu);
    impl_->stop_requested = true;
    if (!impl_->run_called)
      return;
  }
  // run() may not have entered its accept loop yet.
  impl_->server.wait_until_ready();
  impl_->server.stop();
}

} // namespace noos::service
