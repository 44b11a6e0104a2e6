#pragma once

// Shared test machinery: fixture access, random workloads, and the
// brute-force autolink oracle. The oracle deliberately shares no matching
// code with the linker; it only reuses the tokenizer's segmentation.

#include "noos/authority.hpp"
#include "noos/autolink.hpp"
#include "noos/collections.hpp"
#include "noos/core.hpp"
#include "noos/corrections.hpp"
#include "noos/discussion.hpp"
#include "noos/engine.hpp"
#include "noos/event_store.hpp"
#include "noos/notify.hpp"
#include "noos/requests.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef NOOS_FIXTURE_DIR
#error "NOOS_FIXTURE_DIR must be defined"
#endif
#ifndef NOOS_GOLDEN_DIR
#error "NOOS_GOLDEN_DIR must be defined"
#endif

namespace noos::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(NOOS_FIXTURE_DIR) / name;
}

inline std::filesystem::path golden_path(const std::string& name) {
  return std::filesystem::path(NOOS_GOLDEN_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<EventRecord> course_log() {
  return read_log_file(fixture_path("math5190.events.jsonl"));
}

inline std::vector<EventRecord> notes_log() {
  return read_log_file(fixture_path("notes_corpus.events.jsonl"));
}

inline Timestamp t0() {
  using namespace std::chrono;
  return sys_days{2003y / January / 6} + 9h;
}

struct Harness {
  std::shared_ptr<ManualClock> clock = std::make_shared<ManualClock>(t0());
  std::unique_ptr<Engine> engine =
      std::make_unique<Engine>(std::make_unique<MemoryStore>(),
                               Engine::Options{clock, nullptr, std::nullopt});

  Engine& operator*() { return *engine; }
  Engine* operator->() { return engine.get(); }
};

inline const UserId admin_id("admin");
inline const UserId instructor_id("instructor");
inline const std::vector<UserId> student_ids = {UserId("s1"), UserId("s2"), UserId("s3")};

// admin, instructor, s1..s3.
inline void seed_users(Engine& eng) {
  create_user(eng, admin_id, {admin_id, "Admin", Role::admin, "admin@example.org", ""});
  create_user(eng, admin_id,
              {instructor_id, "Instructor", Role::instructor, "instructor@example.org", ""});
  for (const auto& s : student_ids)
    create_user(eng, admin_id, {s, "Student " + s.str(), Role::student, s.str() + "@example.org", ""});
}

// The error code `f` fails with, or nullopt when it succeeds.
template <class F>
std::optional<Errc> errc_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

class Rand {
public:
  explicit Rand(std::uint32_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : gen_() % n; }
  bool chance(unsigned percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
  std::mt19937 gen_;
};

// ---------------------------------------------------------------------------
// Brute-force autolink oracle.

namespace oracle {

inline bool letter(unsigned char c) { return c >= 0x80 || std::isalpha(c) != 0; }

inline bool space(unsigned char c) { return std::string_view(" \t\n\r\f\v").find(char(c)) != std::string_view::npos; }

inline std::string norm(std::string_view s) {
  // Split on whitespace, lower ASCII, rejoin with single spaces.
  std::string words, cur;
  std::vector<std::string> parts;
  for (unsigned char c : s) {
    if (space(c)) {
      if (!cur.empty())
        parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c < 0x80 ? char(std::tolower(c)) : char(c));
    }
  }
  if (!cur.empty())
    parts.push_back(cur);
  for (std::size_t i = 0; i < parts.size(); ++i)
    words += (i ? " " : "") + parts[i];
  return words;
}

struct Target {
  ObjectId id;
  Seq created_seq;
};

inline std::map<std::string, Target> terms(const std::vector<autolink::TermSource>& corpus) {
  std::map<std::string, Target> out;
  for (const auto& src : corpus) {
    std::vector<std::string> all = src.synonyms;
    all.push_back(src.title);
    for (const auto& raw : all) {
      auto t = norm(raw);
      if (t.empty())
        continue;
      auto it = out.find(t);
      if (it == out.end() || src.created_seq < it->second.created_seq)
        out[t] = {src.id, src.created_seq};
    }
  }
  return out;
}

struct Result {
  std::string content;
  std::vector<autolink::Link> links;
};

inline Result link(const autolink::TermSource& entry, std::string_view content,
                   const std::vector<autolink::TermSource>& corpus) {
  auto dict = terms(corpus);
  std::set<std::string> own;
  own.insert(norm(entry.title));
  for (const auto& s : entry.synonyms)
    own.insert(norm(s));

  Result r;
  std::set<ObjectId> done;
  for (const auto& seg : autolink::tokenize(content).segments) {
    if (seg.kind != autolink::SegmentKind::text) {
      r.content += seg.content;
      continue;
    }
    const std::string& t = seg.content;
    std::size_t i = 0, copied = 0;
    while (i < t.size()) {
      bool start_ok = (i == 0 || !letter(t[i - 1])) && !space(t[i]);
      std::size_t best = 0;
      if (start_ok) {
        for (std::size_t j = i + 1; j <= t.size(); ++j) {
          if (space(t[j - 1]))
            continue;
          if (j < t.size() && letter(t[j]))
            continue;
          if (dict.count(norm(std::string_view(t).substr(i, j - i))))
            best = j;
        }
      }
      if (!best) {
        ++i;
        continue;
      }
      std::string key = norm(std::string_view(t).substr(i, best - i));
      const Target& tg = dict.at(key);
      bool self = tg.id == entry.id || own.count(key);
      if (!self && done.insert(tg.id).second) {
        r.content += t.substr(copied, i - copied);
        r.content += "\\nooslink{" + tg.id.str() + "}{" + t.substr(i, best - i) + "}";
        r.links.push_back({seg.begin + i, seg.begin + best, tg.id});
        copied = best;
      }
      i = best;
    }
    r.content += t.substr(copied);
  }
  return r;
}

} // namespace oracle

// Random corpus: a small vocabulary so titles overlap and nest.
struct Corpus {
  std::vector<autolink::TermSource> entries;
};

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> v = {
      "limit", "point", "Limit", "flow", "linear", "system", "vector", "field",
      "curve",  "integral", "équation", "map", "fixed", "theorem", "of", "the", "a",
  };
  return v;
}

inline Corpus random_corpus(Rand& rng, std::size_t max_entries = 100) {
  Corpus c;
  std::size_t n = 1 + rng.below(max_entries);
  for (std::size_t i = 0; i < n; ++i) {
    autolink::TermSource src;
    src.id = ObjectId("e" + std::to_string(i + 1));
    src.created_seq = Seq(rng.below(1000) + 1);
    auto phrase = [&] {
      std::size_t words = 1 + rng.below(4);
      std::string s;
      for (std::size_t w = 0; w < words; ++w)
        s += (w ? (rng.chance(20) ? "  " : " ") : "") + rng.pick(vocabulary());
      return s;
    };
    src.title = phrase();
    if (rng.chance(30))
      src.synonyms.push_back(phrase());
    c.entries.push_back(std::move(src));
  }
  return c;
}

inline std::string random_content(Rand& rng, std::size_t pieces = 40) {
  static const std::vector<std::string> extras = {
      " ", "  ", "\n", "\t", ", ", ". ", "$x$", "$$y=1$$", "\\(a\\)", "\\[b\\]",
      "\\emph{", "}", "\\label{limit}", "\\ref{flow}", "% limit point comment\n", "\\verb|flow|",
      "\\begin{equation}limit\\end{equation}", "\\begin{itemize}", "\\\\", "\\$", "s", "es",
      "-", "limits", "Flow", "\\%", "{", "(", ")", "2", "$", "\\begin{align}", "é",
  };
  std::string out;
  for (std::size_t i = 0; i < pieces; ++i)
    out += rng.chance(55) ? rng.pick(vocabulary()) : rng.pick(extras);
  return out;
}

// ---------------------------------------------------------------------------
// Random ownership workload with an independent model of who owns what.

struct AuthorityStats {
  std::size_t ops = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<std::string> violations;
};

inline void run_authority_sequence(std::uint32_t seed, std::size_t length, AuthorityStats& stats) {
  Harness h;
  seed_users(*h);
  Rand rng(seed);
  std::vector<UserId> actors = student_ids;
  actors.push_back(instructor_id);
  const UserId ghost("ghost");

  std::map<ObjectId, std::optional<UserId>> model;
  std::vector<ObjectId> ids;
  auto violation = [&](const std::string& what) {
    stats.violations.push_back("seed " + std::to_string(seed) + ": " + what);
  };

  for (std::size_t step = 0; step < length; ++step) {
    h.clock->advance(std::chrono::seconds(1 + rng.below(600)));
    const UserId actor = rng.pick(actors);
    const bool moderator = actor == instructor_id;
    auto before = h->snapshot();
    int op = ids.empty() ? 0 : int(rng.below(5));
    ObjectId target = ids.empty() ? ObjectId("e0") : rng.pick(ids);
    if (rng.chance(3))
      target = ObjectId("e999999");
    const bool exists = model.count(target) != 0;
    const std::optional<UserId> owner = exists ? model[target] : std::nullopt;

    bool expect_ok = false;
    std::optional<UserId> next_owner = owner;
    UserId recipient = rng.chance(10) ? ghost : rng.pick(actors);
    try {
      ++stats.ops;
      switch (op) {
      case 0: {
        expect_ok = true;
        auto e = authority::create_entry(*h, actor, {"Entry " + std::to_string(step), {},
                                                     EntryKind::concept_, "body"});
        ids.push_back(e.id);
        model[e.id] = actor;
        target = e.id;
        next_owner = actor;
        break;
      }
      case 1:
        expect_ok = exists && owner && (*owner == actor || moderator);
        next_owner = std::nullopt;
        authority::orphan_entry(*h, actor, target);
        break;
      case 2:
        expect_ok = exists && !owner;
        next_owner = actor;
        authority::adopt_entry(*h, actor, target);
        break;
      case 3:
        expect_ok = exists && owner && *owner == actor && recipient != actor && recipient != ghost;
        next_owner = recipient;
        authority::transfer_entry(*h, actor, target, recipient);
        break;
      case 4:
        expect_ok = exists && (moderator || (owner && *owner == actor));
        revise_entry(*h, actor, target, "body " + std::to_string(step));
        break;
      }
      if (!expect_ok)
        violation("op " + std::to_string(op) + " accepted but should be rejected");
      ++stats.accepted;
      if (op != 0)
        model[target] = next_owner;
    } catch (const Error& e) {
      ++stats.rejected;
      if (expect_ok)
        violation("op " + std::to_string(op) + " rejected: " + e.what());
      auto after = h->snapshot();
      if (!(*after == *before))
        violation("rejected op changed state");
    }

    const State& s = *h->snapshot();
    for (const auto& [id, expected] : model) {
      const Entry* e = s.find_entry(id);
      if (!e) {
        violation("entry vanished");
        continue;
      }
      if (e->owner != expected)
        violation("owner mismatch on " + id.str());
      if (e->owner && s.find_user(*e->owner) == nullptr)
        violation("owner is not a user");
    }
  }
}

// ---------------------------------------------------------------------------
// Random mixed workload across every module, for replay determinism.

inline void run_mixed_workload(Harness& h, std::uint32_t seed, std::size_t events) {
  seed_users(*h);
  Rand rng(seed);
  std::vector<UserId> users = student_ids;
  users.push_back(instructor_id);
  users.push_back(admin_id);
  std::size_t guard = 0;
  while (std::size_t(h->last_seq()) < events && ++guard < events * 20) {
    h.clock->advance(std::chrono::seconds(rng.below(4000)));
    auto s = h->snapshot();
    std::vector<ObjectId> entries, corrs, reqs, msgs, notices, colls;
    for (const auto& [id, e] : s->entries)
      entries.push_back(id);
    for (const auto& [id, c] : s->corrections)
      corrs.push_back(id);
    for (const auto& [id, r] : s->requests)
      reqs.push_back(id);
    for (const auto& [id, m] : s->messages)
      msgs.push_back(id);
    for (const auto& [id, n] : s->notices)
      notices.push_back(id);
    for (const auto& [id, c] : s->collections)
      colls.push_back(id);
    auto any = [&](const std::vector<ObjectId>& v) { return v.empty() ? ObjectId("x1") : rng.pick(v); };
    const UserId actor = rng.pick(users);
    try {
      switch (rng.below(18)) {
      case 0:
      case 1:
        authority::create_entry(*h, actor, {rng.pick(vocabulary()) + " " + rng.pick(vocabulary()),
                                            {}, EntryKind::concept_, random_content(rng, 8)});
        break;
      case 2: revise_entry(*h, actor, any(entries), random_content(rng, 10)); break;
      case 3: authority::orphan_entry(*h, actor, any(entries)); break;
      case 4: authority::adopt_entry(*h, actor, any(entries)); break;
      case 5: authority::transfer_entry(*h, actor, any(entries), rng.pick(users)); break;
      case 6:
        corrections::file_correction(*h, actor, any(entries), "fix " + std::to_string(rng.below(99)),
                                     Severity(rng.below(3)));
        break;
      case 7: corrections::resolve_correction(*h, actor, any(corrs), "done", "because"); break;
      case 8: requests::create_request(*h, actor, "want " + rng.pick(vocabulary())); break;
      case 9: requests::fulfill_request(*h, actor, any(reqs), any(entries)); break;
      case 10:
        discussion::post_message(*h, actor, {ObjectKind::entry, any(entries)}, "subj", "body");
        break;
      case 11:
        discussion::post_message(*h, actor, {ObjectKind::message, any(msgs)}, "", "reply");
        break;
      case 12:
        notify::add_watch(*h, actor, {ObjectKind::entry, any(entries)},
                          {rng.chance(70), rng.chance(50)});
        break;
      case 13: notify::remove_watch(*h, actor, {ObjectKind::entry, any(entries)}); break;
      case 14: notify::mark_read(*h, actor, any(notices)); break;
      case 15: review_entry(*h, actor, any(entries), ReviewState(rng.below(3))); break;
      case 16:
        if (rng.chance(30))
          delete_entry(*h, actor, any(entries));
        else
          collections::create_collection(*h, actor, "set " + std::to_string(rng.below(9)));
        break;
      case 17: collections::add_entry(*h, actor, any(colls), any(entries)); break;
      }
    } catch (const Error&) {
      // Rejections are part of the workload.
    }
  }
}

} // namespace noos::testing
