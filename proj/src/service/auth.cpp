#include "noos/service/auth.hpp"

#include "noos/error.hpp"

#include <sodium.h>

#include <array>

namespace noos::service {

namespace {

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready)
    fail(Errc::storage_failure, "libsodium failed to initialize");
}

template <std::size_t N>
std::string random_hex() {
  ensure_sodium();
  std::array<unsigned char, N> raw{};
  randombytes_buf(raw.data(), raw.size());
  std::array<char, N * 2 + 1> hex{};
  sodium_bin2hex(hex.data(), hex.size(), raw.data(), raw.size());
  return std::string(hex.data(), N * 2);
}

std::string random_token() { return random_hex<32>(); }

} // namespace

std::string hash_secret(std::string_view secret) {
  ensure_sodium();
  std::array<char, crypto_pwhash_STRBYTES> out{};
  if (crypto_pwhash_str(out.data(), secret.data(), secret.size(),
                        crypto_pwhash_OPSLIMIT_INTERACTIVE,
                        crypto_pwhash_MEMLIMIT_INTERACTIVE) != 0)
    fail(Errc::storage_failure, "out of memory while hashing a secret");
  return std::string(out.data());
}

bool verify_secret(const std::string& verifier, std::string_view secret) {
  ensure_sodium();
  if (verifier.empty() || verifier.size() >= crypto_pwhash_STRBYTES)
    return false;
  return crypto_pwhash_str_verify(verifier.c_str(), secret.data(), secret.size()) == 0;
}

std::string generate_secret() { return random_hex<16>(); }

SessionStore::SessionStore(std::shared_ptr<Clock> clock, std::chrono::seconds ttl)
    : clock_(std::move(clock)), ttl_(ttl), dummy_verifier_(hash_secret(random_token())) {}

Session SessionStore::login(const State& s, const UserId& user, std::string_view secret) {
  const User* u = s.find_user(user);
  bool has_verifier = u && !u->secret_hash.empty();
  bool ok = verify_secret(has_verifier ? u->secret_hash : dummy_verifier_, secret);
  if (!ok || !has_verifier)
    fail(Errc::bad_credentials, "unknown user or wrong secret");

  Session session{random_token(), user, clock_->now() + ttl_};
  std::lock_guard lock(mu_);
  // Drop expired sessions while we hold the lock anyway.
  for (auto it = sessions_.begin(); it != sessions_.end();)
    it = it->second.expires_at <= clock_->now() ? sessions_.erase(it) : std::next(it);
  sessions_.emplace(session.token, session);
  return session;
}

UserId SessionStore::authenticate(std::string_view token) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(token);
  if (it == sessions_.end())
    fail(Errc::auth_required, "missing or unknown session token");
  if (it->second.expires_at <= clock_->now()) {
    sessions_.erase(it);
    fail(Errc::auth_required, "session expired");
  }
  return it->second.user;
}

void SessionStore::revoke(std::string_view token) {
  std::lock_guard lock(mu_);
  if (auto it = sessions_.find(token); it != sessions_.end())
    sessions_.erase(it);
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

} // namespace noos::service
