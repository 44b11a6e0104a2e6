#pragma once

#include "noos/engine.hpp"
#include "noos/service/auth.hpp"
#include "noos/service/config.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace noos::service {

struct Request {
  std::string method;
  std::string path; // without the query string
  std::map<std::string, std::string> query;
  std::string body;
  std::string authorization; // raw Authorization header, may be empty
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ApiOptions {
  assess::RubricConfig rubric;
  notes::FrontMatter front;
  std::chrono::minutes tz_offset{0};
};

int status_for(Errc code) noexcept;

// {"error":{"code":...,"message":...}}
Response error_response(Errc code, const std::string& message);

// The /v1 surface, independent of any transport. GETs are anonymous except
// the inbox; every other method needs "Authorization: Bearer <token>".
// Authority rules live in the engine modules, not here.
class Api {
public:
  Api(Engine& engine, SessionStore& sessions, ApiOptions options);

  // Never throws: every failure becomes an error response.
  Response handle(const Request& req);

private:
  Response dispatch(const Request& req);

  Engine& engine_;
  SessionStore& sessions_;
  ApiOptions options_;
};

class PortInUse : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thin cpp-httplib host for an Api.
class HttpServer {
public:
  explicit HttpServer(Api& api);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks an ephemeral port. Returns the bound port; throws
  // PortInUse when the address cannot be bound.
  int bind(const std::string& host, int port);

  // Blocks until stop().
  void run();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace noos::service
