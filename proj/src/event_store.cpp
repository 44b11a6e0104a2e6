#include "noos/event_store.hpp"

#include "noos/error.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

namespace noos {

void MemoryStore::append(const EventRecord& rec) {
  if (fail_next_) {
    fail_next_ = false;
    fail(Errc::storage_failure, "injected storage failure");
  }
  records_.push_back(rec);
}

FileStore::FileStore(std::filesystem::path path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0)
    fail(Errc::storage_failure,
         "cannot open event log " + path_.string() + ": " + std::strerror(errno));
}

FileStore::~FileStore() {
  if (fd_ >= 0) {
    ::fsync(fd_);
    ::close(fd_);
  }
}

std::vector<EventRecord> FileStore::load() { return read_log_file(path_); }

void FileStore::append(const EventRecord& rec) {
  std::string line = encode_record(rec);
  line.push_back('\n');

  struct stat st{};
  if (::fstat(fd_, &st) != 0)
    fail(Errc::storage_failure, std::string("fstat: ") + std::strerror(errno));
  const off_t before = st.st_size;

  std::size_t done = 0;
  while (done < line.size()) {
    ssize_t n = ::write(fd_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR)
        continue;
      int err = errno;
      // Drop the torn tail so the file never holds a partial record.
      [[maybe_unused]] int rc = ::ftruncate(fd_, before);
      fail(Errc::storage_failure, std::string("write: ") + std::strerror(err));
    }
    done += std::size_t(n);
  }
}

void FileStore::flush() {
  if (fd_ >= 0)
    ::fsync(fd_);
}

std::vector<EventRecord> parse_log(std::string_view text) {
  std::vector<EventRecord> out;
  Seq line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty())
      throw CorruptRecord(line_no, "empty line in log");
    if (line.back() == '\r')
      throw CorruptRecord(line_no, "CRLF line ending in log");
    out.push_back(decode_record(line, line_no));
  }
  return out;
}

std::vector<EventRecord> read_log_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!std::filesystem::exists(path))
      return {};
    fail(Errc::storage_failure, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_log(buf.str());
}

std::string format_log(const std::vector<EventRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += encode_record(rec);
    out.push_back('\n');
  }
  return out;
}

} // namespace noos
