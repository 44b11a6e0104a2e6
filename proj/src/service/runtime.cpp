#include "noos/service/runtime.hpp"

#include "noos/core.hpp"
#include "noos/error.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace noos::service {

namespace {

std::shared_ptr<MailSink> make_sink(const Config& c) {
  if (c.mail_sink == MailSinkKind::none)
    return std::make_shared<NullMailSink>();
  return std::make_shared<FileMailSink>(c.resolved_mail_path());
}

} // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), std::streamsize(contents.size()));
    out.flush();
    if (!out)
      fail(Errc::storage_failure, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    fail(Errc::storage_failure, "cannot replace " + path.string() + ": " + ec.message());
}

std::optional<State> read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return decode_snapshot(ss.str());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Runtime::Runtime(const Config& config, std::shared_ptr<Clock> clock) : config_(config) {
  config_.validate();
  if (!clock)
    clock = std::make_shared<SystemClock>();

  std::error_code ec;
  std::filesystem::create_directories(config_.data_dir, ec);
  if (ec)
    fail(Errc::storage_failure,
         "cannot create data directory " + config_.data_dir.string() + ": " + ec.message());

  mailer_ = std::make_shared<Mailer>(make_sink(config_));

  auto open_engine = [&](std::optional<State> snapshot) {
    Engine::Options opts;
    opts.clock = clock;
    opts.mailer = mailer_;
    opts.snapshot = std::move(snapshot);
    return std::make_unique<Engine>(std::make_unique<FileStore>(config_.events_path()),
                                    std::move(opts));
  };

  if (auto snap = read_snapshot_file(config_.snapshot_path())) {
    try {
      engine_ = open_engine(std::move(snap));
      resumed_from_snapshot_ = true;
    } catch (const Error&) {
      // The log is authoritative; a bad log fails again below with its seq.
    }
  }
  if (!engine_)
    engine_ = open_engine(std::nullopt);

  if (engine_->last_seq() == 0) {
    NewUser admin;
    admin.id = UserId(config_.admin_id);
    admin.name = config_.admin_name;
    admin.role = Role::admin;
    admin.email = config_.admin_email;
    std::string secret = config_.admin_secret;
    if (secret.empty()) {
      secret = generate_secret();
      generated_secret_ = secret;
    }
    admin.secret_hash = hash_secret(secret);
    create_user(*engine_, admin.id, admin);
  }

  sessions_ = std::make_unique<SessionStore>(clock, config_.session_ttl);
  api_ = std::make_unique<Api>(*engine_, *sessions_,
                               ApiOptions{config_.rubric, config_.front, config_.tz_offset});
}

Runtime::~Runtime() {
  try {
    shutdown();
  } catch (const std::exception& e) {
    std::cerr << "noos: shutdown: " << e.what() << "\n";
  }
}

void Runtime::shutdown() {
  if (shut_down_)
    return;
  shut_down_ = true;
  engine_->flush();
  if (!mailer_->flush(std::chrono::seconds(5)))
    std::cerr << "noos: " << mailer_->pending() << " mail message(s) left undelivered\n";
  write_file_atomic(config_.snapshot_path(), encode_snapshot(*engine_->snapshot()));
}

} // namespace noos::service
