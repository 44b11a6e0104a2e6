#include "noos/mail.hpp"

#include "noos/error.hpp"

#include "json.hpp"

#include <fstream>

namespace noos {

std::string encode_mail(const MailMessage& m) {
  nlohmann::ordered_json j;
  j["to"] = m.to;
  j["subject"] = m.subject;
  j["body"] = m.body;
  j["event_seq"] = m.event_seq;
  return j.dump();
}

MailMessage decode_mail(std::string_view line) {
  auto j = nlohmann::json::parse(line);
  return {j.at("to").get<std::string>(), j.at("subject").get<std::string>(),
          j.at("body").get<std::string>(), j.at("event_seq").get<Seq>()};
}

void FileMailSink::deliver(const MailMessage& m) {
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out)
    fail(Errc::storage_failure, "cannot open mail sink " + path_.string());
  out << encode_mail(m) << '\n';
  out.flush();
  if (!out)
    fail(Errc::storage_failure, "cannot write mail sink " + path_.string());
}

Mailer::Mailer(std::shared_ptr<MailSink> sink, std::chrono::milliseconds retry_delay)
    : sink_(std::move(sink)), retry_delay_(retry_delay), worker_([this] { run(); }) {}

Mailer::~Mailer() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  worker_.join();
}

void Mailer::enqueue(std::vector<MailMessage> messages) {
  if (messages.empty())
    return;
  {
    std::lock_guard lock(mu_);
    for (auto& m : messages)
      queue_.push_back(std::move(m));
  }
  cv_.notify_all();
}

bool Mailer::flush(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  return idle_cv_.wait_for(lock, timeout, [this] { return queue_.empty() && in_flight_ == 0; });
}

std::size_t Mailer::pending() const {
  std::lock_guard lock(mu_);
  return queue_.size() + in_flight_;
}

std::size_t Mailer::delivered() const {
  std::lock_guard lock(mu_);
  return delivered_;
}

void Mailer::run() {
  std::unique_lock lock(mu_);
  while (true) {
    cv_.wait(lock, [this] { return stop_ || !queue_.empty(); });
    if (queue_.empty() && stop_)
      return;

    MailMessage m = std::move(queue_.front());
    queue_.pop_front();
    ++in_flight_;
    lock.unlock();

    bool ok = true;
    try {
      sink_->deliver(m);
    } catch (...) {
      ok = false;
    }

    lock.lock();
    --in_flight_;
    if (ok) {
      ++delivered_;
    } else {
      queue_.push_back(std::move(m));
      // Shutting down: a failing sink is not retried any further.
      if (stop_)
        return;
      cv_.wait_for(lock, retry_delay_, [this] { return stop_; });
    }
    if (queue_.empty() && in_flight_ == 0)
      idle_cv_.notify_all();
  }
}

} // namespace noos
