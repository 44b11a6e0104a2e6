#pragma once

#include "noos/event.hpp"

#include <filesystem>
#include <vector>

namespace noos {

// Durable home of the log. append() is all-or-nothing: on failure it throws
// Error(storage_failure) and the store is as it was before the call.
class EventStore {
public:
  virtual ~EventStore() = default;
  virtual std::vector<EventRecord> load() = 0;
  virtual void append(const EventRecord& rec) = 0;
  virtual void flush() {}
};

class MemoryStore final : public EventStore {
public:
  MemoryStore() = default;
  explicit MemoryStore(std::vector<EventRecord> records) : records_(std::move(records)) {}

  std::vector<EventRecord> load() override { return records_; }
  void append(const EventRecord& rec) override;

  // Make the next append fail, for exercising storage-failure paths.
  void fail_next_append() { fail_next_ = true; }

private:
  std::vector<EventRecord> records_;
  bool fail_next_ = false;
};

// JSON-lines file, one record per line, LF endings.
class FileStore final : public EventStore {
public:
  explicit FileStore(std::filesystem::path path);
  ~FileStore() override;

  FileStore(const FileStore&) = delete;
  FileStore& operator=(const FileStore&) = delete;

  std::vector<EventRecord> load() override;
  void append(const EventRecord& rec) override;
  void flush() override;

  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
  int fd_ = -1;
};

// Parse a log file. Throws CorruptRecord on malformed lines; seq continuity
// is checked by rebuild_state, not here.
std::vector<EventRecord> read_log_file(const std::filesystem::path& path);
std::vector<EventRecord> parse_log(std::string_view text);
std::string format_log(const std::vector<EventRecord>& records);

} // namespace noos
