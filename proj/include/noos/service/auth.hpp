#pragma once

#include "noos/state.hpp"
#include "noos/time.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace noos::service {

// Argon2id verifier (libsodium string format). Throws internal on OOM.
std::string hash_secret(std::string_view secret);
bool verify_secret(const std::string& verifier, std::string_view secret);

// 128 random bits, hex encoded.
std::string generate_secret();

struct Session {
  std::string token;
  UserId user;
  Timestamp expires_at{};
};

// Bearer tokens live only in memory; they never reach the event log.
class SessionStore {
public:
  SessionStore(std::shared_ptr<Clock> clock, std::chrono::seconds ttl);

  // Checks the secret against the user's verifier. Unknown users and users
  // without a verifier still pay for one verification, so failures look the
  // same from outside. Throws bad-credentials.
  Session login(const State& s, const UserId& user, std::string_view secret);

  // Throws authentication-required for unknown or expired tokens.
  UserId authenticate(std::string_view token);

  void revoke(std::string_view token);
  std::size_t size() const;

private:
  std::shared_ptr<Clock> clock_;
  std::chrono::seconds ttl_;
  std::string dummy_verifier_;
  mutable std::mutex mu_;
  std::map<std::string, Session, std::less<>> sessions_;
};

} // namespace noos::service
