#pragma once

#include "noos/ids.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace noos {

struct MailMessage {
  std::string to;
  std::string subject;
  std::string body;
  Seq event_seq = 0;

  friend bool operator==(const MailMessage&, const MailMessage&) = default;
};

// {"to":...,"subject":...,"body":...,"event_seq":...} on one line.
std::string encode_mail(const MailMessage& m);
MailMessage decode_mail(std::string_view line);

// Outbound mail. deliver() throws on failure; the Mailer retries.
class MailSink {
public:
  virtual ~MailSink() = default;
  virtual void deliver(const MailMessage& m) = 0;
};

class NullMailSink final : public MailSink {
public:
  void deliver(const MailMessage&) override {}
};

class FileMailSink final : public MailSink {
public:
  explicit FileMailSink(std::filesystem::path path) : path_(std::move(path)) {}
  void deliver(const MailMessage& m) override;

private:
  std::mutex mu_;
  std::filesystem::path path_;
};

// Asynchronous at-least-once delivery: a background worker drains the
// queue and puts failed messages back with a delay.
class Mailer {
public:
  explicit Mailer(std::shared_ptr<MailSink> sink,
                  std::chrono::milliseconds retry_delay = std::chrono::milliseconds(500));
  ~Mailer();

  Mailer(const Mailer&) = delete;
  Mailer& operator=(const Mailer&) = delete;

  void enqueue(std::vector<MailMessage> messages);

  // Wait until the queue is empty or the timeout passes. Returns true when
  // everything was delivered.
  bool flush(std::chrono::milliseconds timeout);

  std::size_t pending() const;
  std::size_t delivered() const;

private:
  void run();

  std::shared_ptr<MailSink> sink_;
  std::chrono::milliseconds retry_delay_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable idle_cv_;
  std::deque<MailMessage> queue_;
  std::size_t in_flight_ = 0;
  std::size_t delivered_ = 0;
  bool stop_ = false;
  std::thread worker_;
};

} // namespace noos
