// noos: serve the /v1 API, replay logs into reports, export notes, add users.
//
// Exit codes: 0 success, 1 usage, 2 data error (corrupt log, bad config,
// port in use, rejected operation).

#include "noos/apply.hpp"
#include "noos/assess.hpp"
#include "noos/core.hpp"
#include "noos/event_store.hpp"
#include "noos/notes.hpp"
#include "noos/service/api.hpp"
#include "noos/service/config.hpp"
#include "noos/service/runtime.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <csignal>
#include <iostream>
#include <pthread.h>
#include <thread>

namespace {

using namespace noos;
using namespace noos::service;

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

Day day_or_usage(const std::string& text, const char* flag) {
  auto d = parse_day(text);
  if (!d)
    throw CLI::ValidationError(flag, "expected YYYY-MM-DD, got " + text);
  return *d;
}

State load_state(const Config& config, std::vector<EventRecord>* log_out = nullptr) {
  auto log = std::filesystem::exists(config.events_path()) ? read_log_file(config.events_path())
                                                           : std::vector<EventRecord>{};
  auto s = rebuild_state(log);
  if (log_out)
    *log_out = std::move(log);
  return s;
}

int serve(const Config& config) {
  // Signals go to a dedicated waiter thread; every other thread inherits the mask.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  Runtime runtime(config);
  if (!runtime.generated_secret().empty())
    std::cout << "seeded admin \"" << config.admin_id
              << "\" with generated secret: " << runtime.generated_secret() << std::endl;

  HttpServer server(runtime.api());
  int port = server.bind(config.listen, config.port);
  std::cout << "listening on " << config.listen << ":" << port << " (log at "
            << config.events_path().string() << ", seq " << runtime.engine().last_seq() << ")"
            << std::endl;

  std::atomic<bool> signalled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    signalled = true;
    std::cout << "signal " << sig << ", shutting down" << std::endl;
    server.stop();
  });
  server.run();
  // The listener can also die on its own; release the waiter then.
  if (!signalled)
    pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  runtime.shutdown();
  std::cout << "log flushed, snapshot written at seq " << runtime.engine().last_seq()
            << std::endl;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noosphere knowledge-base engine"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (NOOS_* variables override it)")
      ->check(CLI::ExistingFile);

  auto* serve_cmd = app.add_subcommand("serve", "Serve the /v1 HTTP API");

  std::string replay_log, replay_out = "replay-out", replay_from, replay_to;
  std::vector<std::string> replay_reports;
  auto* replay_cmd = app.add_subcommand("replay", "Rebuild state from a log and write reports");
  replay_cmd->add_option("log", replay_log, "Event log (JSON lines)")->required();
  replay_cmd->add_option("--out", replay_out, "Output directory")->capture_default_str();
  replay_cmd->add_option("--report", replay_reports,
                         "participation, closures or export (repeatable)");
  replay_cmd->add_option("--from", replay_from, "First closure day, YYYY-MM-DD");
  replay_cmd->add_option("--to", replay_to, "Last closure day, YYYY-MM-DD");

  std::string report_name, report_format = "tsv", report_from, report_to;
  auto* report_cmd = app.add_subcommand("report", "Print a report over the data directory's log");
  report_cmd->add_option("name", report_name, "participation or closures")->required();
  report_cmd->add_option("--format", report_format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  report_cmd->add_option("--from", report_from, "First closure day, YYYY-MM-DD");
  report_cmd->add_option("--to", report_to, "Last closure day, YYYY-MM-DD");

  std::string export_format = "latex", export_out;
  auto* export_cmd = app.add_subcommand("export", "Compile the course notes");
  export_cmd->add_option("--format", export_format, "latex or toc-text")->capture_default_str();
  export_cmd->add_option("-o,--out", export_out, "Output file (default stdout)");

  std::string ua_id, ua_name, ua_role = "student", ua_email, ua_secret, ua_as;
  auto* user_cmd = app.add_subcommand("user-add", "Create an account (run while not serving)");
  user_cmd->add_option("id", ua_id, "User id")->required();
  user_cmd->add_option("--name", ua_name, "Display name");
  user_cmd->add_option("--role", ua_role, "student, instructor, auditor or admin")
      ->check(CLI::IsMember({"student", "instructor", "auditor", "admin"}))
      ->capture_default_str();
  user_cmd->add_option("--email", ua_email, "Email address");
  user_cmd->add_option("--secret", ua_secret, "Login secret (default: generated)");
  user_cmd->add_option("--as", ua_as, "Acting admin (default: the configured admin id)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  try {
    std::optional<std::filesystem::path> cfg_file;
    if (!config_path.empty())
      cfg_file = config_path;
    Config config = load_config(cfg_file);

    if (*serve_cmd)
      return serve(config);

    if (*replay_cmd) {
      ReplayOptions opts{config.rubric, config.front, config.tz_offset, {}, {}};
      if (!replay_from.empty())
        opts.from = day_or_usage(replay_from, "--from");
      if (!replay_to.empty())
        opts.to = day_or_usage(replay_to, "--to");
      auto result = replay(replay_log, replay_out, replay_reports, opts);
      std::cout << "replayed " << result.state.last_seq << " events\n";
      for (const auto& p : result.written)
        std::cout << "wrote " << p.string() << "\n";
      return 0;
    }

    if (*report_cmd) {
      std::vector<EventRecord> log;
      State s = load_state(config, &log);
      bool tsv = report_format == "tsv";
      if (report_name == "participation") {
        auto users = assess::students(s);
        auto r = assess::participation_report(users, s, config.rubric);
        std::cout << (tsv ? assess::to_tsv(r) : assess::to_json(r).dump(2) + "\n");
        return 0;
      }
      if (report_name == "closures") {
        Day first{}, last{};
        if (!log.empty()) {
          first = day_of(log.front().ts, config.tz_offset);
          last = day_of(log.back().ts, config.tz_offset);
        }
        auto from = report_from.empty() ? first : day_or_usage(report_from, "--from");
        auto to = report_to.empty() ? last : day_or_usage(report_to, "--to");
        auto h = assess::closure_histogram(log, from, to, config.tz_offset);
        std::cout << (tsv ? assess::to_tsv(h) : assess::to_json(h).dump(2) + "\n");
        return 0;
      }
      fail(Errc::unknown_report, "unknown report \"" + report_name + "\"");
    }

    if (*export_cmd) {
      notes::CompileOptions opts;
      opts.front = config.front;
      opts.rubric = config.rubric;
      auto text = notes::serialize(notes::compile(load_state(config), opts), export_format);
      if (export_out.empty())
        std::cout << text;
      else
        write_file_atomic(export_out, text);
      return 0;
    }

    if (*user_cmd) {
      Runtime runtime(config);
      NewUser nu;
      nu.id = UserId(ua_id);
      nu.name = ua_name.empty() ? ua_id : ua_name;
      nu.role = *parse_role(ua_role);
      nu.email = ua_email;
      std::string secret = ua_secret.empty() ? generate_secret() : ua_secret;
      nu.secret_hash = hash_secret(secret);
      UserId actor(ua_as.empty() ? config.admin_id : ua_as);
      create_user(runtime.engine(), actor, nu);
      runtime.shutdown();
      std::cout << "created " << ua_role << " \"" << ua_id << "\"";
      if (ua_secret.empty())
        std::cout << " with secret " << secret;
      std::cout << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "noos: " << e.what() << "\n";
    return exit_usage;
  } catch (const CorruptRecord& e) {
    std::cerr << "noos: corrupt store at seq " << e.seq() << ": " << e.what() << "\n";
    return exit_data;
  } catch (const Error& e) {
    std::cerr << "noos: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_data;
  } catch (const PortInUse& e) {
    std::cerr << "noos: " << e.what() << "\n";
    return exit_data;
  }
  return exit_usage;
}
