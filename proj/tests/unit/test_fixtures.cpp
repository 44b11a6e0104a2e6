#include "noos/apply.hpp"

#include "support.hpp"

#include "doctest.h"

#include <cstdlib>
#include <unistd.h>

using namespace noos;
using namespace noos::testing;

namespace {

const char* const fixture_names[] = {"math5190.events.jsonl", "notes_corpus.events.jsonl"};

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST_SUITE("fixtures") {
  TEST_CASE("the generator reproduces the checked-in logs byte for byte") {
    auto out = std::filesystem::temp_directory_path() /
               ("noos-fixtures-" + std::to_string(::getpid()));
    std::filesystem::remove_all(out);
    auto cmd = quoted(NOOS_MAKE_FIXTURES) + " --out " + quoted(out) + " --entry-sources " +
               quoted(NOOS_ENTRY_SOURCES_DIR);
    REQUIRE(std::system(cmd.c_str()) == 0);
    for (const char* name : fixture_names) {
      auto fresh = read_text(out / name);
      CHECK_MESSAGE(!fresh.empty(), name);
      CHECK_MESSAGE(fresh == read_text(fixture_path(name)), name);
    }
    std::filesystem::remove_all(out);
  }

  TEST_CASE("the checked-in logs are dense and fold cleanly") {
    for (const char* name : fixture_names) {
      auto log = read_log_file(fixture_path(name));
      REQUIRE(!log.empty());
      bool dense = true;
      for (std::size_t i = 0; i < log.size(); ++i)
        dense = dense && log[i].seq == Seq(i + 1) && (i == 0 || log[i].ts >= log[i - 1].ts);
      CHECK_MESSAGE(dense, name);
      CHECK_NOTHROW(rebuild_state(log));
    }
  }
}
