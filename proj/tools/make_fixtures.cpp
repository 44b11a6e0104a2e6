// Regenerates the committed event-log fixtures.
//
//   make_fixtures --out fixtures --entry-sources fixtures/entry_sources
//
// Output is a pure function of this file and the entry_sources inputs; the
// fixture test regenerates into a scratch directory and compares bytes.

#include "noos/assess.hpp"
#include "noos/authority.hpp"
#include "noos/collections.hpp"
#include "noos/core.hpp"
#include "noos/corrections.hpp"
#include "noos/discussion.hpp"
#include "noos/engine.hpp"
#include "noos/notify.hpp"
#include "noos/requests.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace noos;
using namespace std::chrono;

namespace {

// Password "noosphere" for every fixture account.
constexpr const char* fixture_secret_hash =
    "$argon2id$v=19$m=65536,t=2,p=1$GFWy7KkoRD/5LM3ywfv7Mw$"
    "hBO+Lz34/uhtrDK1s/Sk62i8SZ4Li5YV/0e2dwK/RhA";

const std::vector<std::string> concept_titles = {
    "Autonomization",
    "Banach fixed point theorem",
    "Bernoulli equation",
    "Cauchy sequence",
    "Cayley-Hamilton theorem",
    "Characterization of homogeneous equations",
    "Characterization of linear ODEs",
    "Characterization of separable equations",
    "Characterization of the Bernoulli equation",
    "Characterization of trivial symmetries",
    "Compact",
    "Completeness of a compact subspace",
    "Constant coefficient symmetries",
    "Constant of integration",
    "Continuously differentiable",
    "Contraction mapping",
    "Curve",
    "Derivation of the determining equation",
    "Determining equation",
    "Diagonalization",
    "Differential form of an ODE",
    "Differential properties of flows",
    "Directional derivative",
    "Distance between functions",
    "Existence of flows",
    "Existence of integrating factor",
    "Existence theorem for IVP",
    "Exponential of a matrix",
    "Exponential of an irreducible block",
    "Extended eigenspace",
    "Flow of a linear system",
    "Homogeneous equation",
    "Homogeneous form of the determining equation",
    "Implicit function theorem",
    "Implicit solution",
    "Infinitesimal symmetry",
    "Integral curve",
    "Integrating factor",
    "Invariant subspace",
    "Inverse function theorem",
    "Irreducible nilpotent transformation",
    "Iterative definition of sine and cosine",
    "Jacobian",
    "Jordan canonical form",
    "Limit point",
    "Limit point",
    "Linear ODE",
    "Linear system",
    "Lipschitz",
    "Method of integrating factors",
    "Method of standard coordinates",
    "Metric space",
    "Nilpotent transformation",
    "Picard iteration",
    "Proof completeness wrt uniform convergence",
    "Proof of existence of flows",
    "Proof of rectification theorem",
    "Proof of the Banach fixed point theorem",
    "Proof of the existence theorem for IVPs",
    "Push forward",
    "Rectification theorem",
    "Reducible transformation",
    "Relation between symmetries and integrating factors",
    "Relation between symmetries and solution curves",
    "Separation of variables",
    "Slope evolution formula",
    "Slope transformation formula",
    "Solution curve",
    "Solution of the Bernoulli equation using the method of integrating factors",
    "Supremum",
    "Symmetries of homogeneous equations",
    "Symmetries of linear equations",
    "Symmetries of separable equations",
    "Symmetry",
    "The relation between limits and limit points",
    "Transformation",
    "Trivial symmetry",
    "Uniform convergence",
    "Vector field",
};

struct CollectionSpec {
  std::string name;
  std::vector<std::string> problems;
  sys_days released;
};

const std::vector<CollectionSpec> collection_specs = {
    {"Foundations assignment",
     {"Foundations problem 2a", "Foundations problem 2b", "Foundations problem 3a",
      "Foundations problem 3b", "Foundations problem 3c", "Foundations problem 4a",
      "Foundations problem 4b", "Foundations problem 4c", "Foundations problems 5a 5b",
      "Foundations problem 5c", "Foundations problem 5d", "Foundations problem 5e",
      "Foundations problem 5f", "Foundations problem 5g", "Foundations problem 5h",
      "Foundations problem 5i", "Foundations problems 5j", "Foundations problem 6a",
      "Foundations problem 6d", "Foundations problems 6b 6c", "Foundations problems 6e"},
     sys_days{2003y / January / 13}},
    {"Flows assignment",
     {"Flows problem 2a", "Flows problem 2b", "Flows problem 3", "Flows problem 4",
      "Flows problem 5", "Flows problem 6a", "Flows problem 6b", "Flows problem 7",
      "Flows problem 8", "Flows problem 9a", "Flows problem 9b"},
     sys_days{2003y / February / 10}},
    {"Scalar equation problems.",
     {"Scalar equations problem 1", "Scalar equations problem 2", "Scalar equations problem 3",
      "Scalar equations problem 4", "Scalar equations problem 5"},
     sys_days{2003y / March / 3}},
    {"Linear algebra problems.",
     {"linear algebra problem 1", "linear algebra problem 2", "linear algebra problem 3",
      "linear algebra problem 4", "linear algebra problem 5", "linear algebra problem 6"},
     sys_days{2003y / January / 27}},
};

// Exercises nobody adopts in the course fixture.
const std::vector<std::string> unadopted = {"Foundations problems 6e", "Flows problem 9b",
                                            "Scalar equations problem 5",
                                            "linear algebra problem 6"};

// Requests posted but never written.
const std::vector<std::string> unwritten_requests = {
    "Gronwall inequality",        "Wronskian",
    "Phase portrait",             "Stability of equilibria",
    "Variation of parameters",    "Exact equation",
    "Riccati equation",           "Lie bracket of vector fields",
};

// mt19937's output sequence is fixed by the standard; the distributions are
// not, so only raw draws are used.
class Rng {
public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : gen_() % n; }
  long between(long lo, long hi) { return lo + long(below(std::size_t(hi - lo + 1))); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937 gen_;
};

const std::vector<std::string> prose_bank = {
    "Throughout, $I \\subseteq \\mathbb{R}$ is an open interval and all functions are real "
    "valued.",
    "Recall that a metric space is complete when every Cauchy sequence converges.",
    "The key step is to estimate $|f(x,y_1) - f(x,y_2)| \\leq L |y_1 - y_2|$ on a compact "
    "set.",
    "We use the integrating factor $\\mu(x) = e^{\\int p(x)\\,dx}$ to rewrite the left side "
    "as a derivative.",
    "A vector field on the plane determines a flow, and each integral curve is an orbit of "
    "that flow.",
    "By separation of variables we obtain $\\int \\frac{dy}{g(y)} = \\int f(x)\\,dx + C$.",
    "The determining equation is linear in the infinitesimal generators $\\xi$ and $\\eta$.",
    "For a matrix $A$ the exponential $e^{tA} = \\sum_{k \\geq 0} \\frac{t^k A^k}{k!}$ "
    "converges for every $t$.",
    "A transformation that maps solution curves to solution curves is called a symmetry.",
    "The Jordan canonical form splits $A$ into an invariant subspace for each eigenvalue.",
    "Picard iteration produces a sequence of approximations converging uniformly on "
    "$[x_0 - h, x_0 + h]$.",
    "The homogeneous equation $y' = F(y/x)$ becomes separable after the substitution "
    "$y = vx$.",
    "Here the contraction mapping principle gives both existence and uniqueness.",
    "Note that the Jacobian of the change of coordinates is nonzero near the point.",
    "The rectification theorem straightens the flow near a regular point.",
    "Every bounded sequence in $\\mathbb{R}^n$ has a limit point, by compactness.",
};

const std::vector<std::string> correction_bank = {
    "The hypothesis that the domain is connected is used but never stated.",
    "The sign in the second displayed equation is wrong.",
    "The constant of integration disappears between the third and fourth lines.",
    "Please define the notation before it is used.",
    "The argument only covers the case $x > 0$.",
    "This step needs the Lipschitz condition, which is not checked.",
    "The example does not match the statement of the theorem.",
    "The conclusion does not follow from the previous line without an extra estimate.",
};

const std::vector<std::pair<std::string, std::string>> resolution_bank = {
    {"Added the missing hypothesis to the statement.", "The proof used it implicitly."},
    {"Fixed the sign and rechecked the computation.", "It was a transcription slip."},
    {"Restored the constant and carried it through.", "Dropping it lost solutions."},
    {"Added a notation paragraph at the top.", "Readers arrive from other entries."},
    {"Treated the case $x < 0$ separately.", "The substitution differs there."},
    {"Verified the Lipschitz bound on the rectangle.", "Needed for uniqueness."},
    {"Replaced the example with a matching one.", "The old one was for a different form."},
    {"Inserted the intermediate estimate.", "The gap was real."},
};

// Deterministic LaTeX prose with at least `target` non-whitespace chars
// outside comments.
std::string prose(std::uint32_t seed, std::size_t target, const std::string& lead = {}) {
  Rng rng(seed);
  std::string out = lead;
  std::size_t sentences = 0;
  while (assess::content_chars(out) < target) {
    if (!out.empty())
      out += sentences % 3 == 2 ? "\n\n" : " ";
    out += prose_bank[rng.below(prose_bank.size())];
    ++sentences;
  }
  out += "\n";
  return out;
}

class Script {
public:
  Script()
      : clock_(std::make_shared<ManualClock>(sys_days{2003y / January / 6} + 9h)),
        engine_(std::make_unique<MemoryStore>(), Engine::Options{clock_, nullptr, std::nullopt}) {}

  // Queue an action at `t`. Actions run in time order, ties in queue order.
  void at(sys_seconds t, std::function<void()> fn) {
    actions_.push_back({t, actions_.size(), std::move(fn)});
  }

  void run() {
    std::stable_sort(actions_.begin(), actions_.end(),
                     [](const Action& a, const Action& b) { return a.t < b.t; });
    for (auto& a : actions_) {
      clock_->set(a.t);
      a.fn();
    }
    actions_.clear();
  }

  Engine& engine() { return engine_; }

private:
  struct Action {
    sys_seconds t;
    std::size_t order;
    std::function<void()> fn;
  };
  std::shared_ptr<ManualClock> clock_;
  Engine engine_;
  std::vector<Action> actions_;
};

void create_users(Engine& eng, bool with_auditor) {
  const UserId admin("admin");
  auto add = [&](const char* id, const char* name, Role role) {
    create_user(eng, admin,
                {UserId(id), name, role, std::string(id) + "@math5190.example",
                 fixture_secret_hash});
  };
  add("admin", "Course administrator", Role::admin);
  add("instructor", "Instructor", Role::instructor);
  add("student1", "Student 1", Role::student);
  add("student2", "Student 2", Role::student);
  add("student3", "Student 3", Role::student);
  if (with_auditor)
    add("auditor", "Auditor", Role::auditor);
}

sys_seconds at_day(sys_days d, hours h, minutes m = 0min) { return d + h + m; }

// ---------------------------------------------------------------------------
// The course log: the per-student score histograms, 78 corrections, 12
// unfilled items, 122 entries, closures bunched on a handful of days.

struct PlannedEntry {
  std::string title;
  UserId owner;
  bool exercise = false;
  int score_class = 1;
  sys_seconds ready{};   // content in place: creation, or the solution revision
  std::string statement; // exercises only
  ObjectId id;           // filled in when the create action runs
  int revisions = 1;
  std::uint32_t seed = 0;
};

std::string content_for(const PlannedEntry& e, int rev) {
  if (e.score_class == 0)
    return "A stub for " + e.title + ", to be written.\n";
  std::size_t target;
  if (e.score_class == 1)
    target = 260 + e.seed % 60 + std::size_t(rev - 1) * 90;
  else if (rev == 1)
    target = 380 + e.seed % 120;
  else
    target = 880 + e.seed % 200 + std::size_t(rev) * 40;
  std::string lead;
  if (e.exercise)
    lead = "\\textbf{Problem.} " + e.statement + "\n\n\\textbf{Solution.}";
  return prose(e.seed * 31u + std::uint32_t(rev), target, lead);
}

std::string write_course(Script& script) {
  Engine& eng = script.engine();
  const UserId admin("admin"), instructor("instructor"), auditor("auditor");
  const std::vector<UserId> students = {UserId("student1"), UserId("student2"),
                                        UserId("student3")};
  const sys_days day0{2003y / January / 6};
  Rng rng(5190);

  script.at(at_day(day0, 9h), [&] { create_users(eng, true); });

  // Concept titles: 6 to the auditor, then 23/25/25 to the students.
  std::vector<std::string> titles = concept_titles;
  rng.shuffle(titles);
  const std::array<int, 3> concept_counts = {23, 25, 25};
  const std::array<int, 3> exercise_counts = {14, 15, 10};
  const std::array<std::array<int, 4>, 3> class_counts = {
      {{0, 1, 10, 26}, {1, 2, 10, 27}, {3, 6, 10, 16}}};

  std::vector<PlannedEntry> plan;
  std::size_t next_title = 0;
  for (int i = 0; i < 6; ++i) {
    PlannedEntry e;
    e.title = titles[next_title++];
    e.owner = auditor;
    e.score_class = 1;
    plan.push_back(e);
  }
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < concept_counts[s]; ++i) {
      PlannedEntry e;
      e.title = titles[next_title++];
      e.owner = students[s];
      plan.push_back(e);
    }

  // Exercises in release order; adopters dealt round robin with quotas.
  std::vector<std::pair<std::size_t, std::string>> exercises; // collection, title
  for (std::size_t c = 0; c < collection_specs.size(); ++c)
    for (const auto& p : collection_specs[c].problems)
      exercises.emplace_back(c, p);
  std::array<int, 3> quota = exercise_counts;
  std::size_t turn = 0;
  std::vector<std::size_t> exercise_plan_index;
  for (const auto& [c, title] : exercises) {
    PlannedEntry e;
    e.title = title;
    e.exercise = true;
    if (std::find(unadopted.begin(), unadopted.end(), title) == unadopted.end()) {
      while (quota[turn % 3] == 0)
        ++turn;
      e.owner = students[turn % 3];
      --quota[turn % 3];
      ++turn;
    }
    exercise_plan_index.push_back(plan.size());
    plan.push_back(e);
  }
  for (std::size_t i = 0; i < plan.size(); ++i)
    plan[i].seed = std::uint32_t(1000 + i * 7);

  // Score classes per student; negligible entries are always concepts.
  for (int s = 0; s < 3; ++s) {
    std::vector<std::size_t> mine;
    for (std::size_t i = 0; i < plan.size(); ++i)
      if (plan[i].owner == students[s])
        mine.push_back(i);
    rng.shuffle(mine);
    int zeros = class_counts[s][0];
    std::vector<int> rest;
    for (int k = 1; k < 4; ++k)
      rest.insert(rest.end(), std::size_t(class_counts[s][k]), k);
    rng.shuffle(rest);
    std::size_t r = 0;
    for (std::size_t i : mine) {
      if (zeros > 0 && !plan[i].exercise) {
        plan[i].score_class = 0;
        --zeros;
      } else {
        plan[i].score_class = rest.at(r++);
      }
    }
  }

  // Requests: 52 for titles students will write, 8 never written.
  std::vector<std::string> request_titles;
  std::map<std::string, std::size_t> request_slot;
  {
    std::vector<std::size_t> student_concepts;
    for (std::size_t i = 0; i < plan.size(); ++i)
      if (!plan[i].exercise && plan[i].owner != auditor)
        student_concepts.push_back(i);
    rng.shuffle(student_concepts);
    student_concepts.resize(52);
    std::sort(student_concepts.begin(), student_concepts.end());
    for (std::size_t i : student_concepts)
      request_titles.push_back(plan[i].title);
    request_titles.insert(request_titles.end(), unwritten_requests.begin(),
                          unwritten_requests.end());
    rng.shuffle(request_titles);
  }
  auto request_ids = std::make_shared<std::map<std::string, std::vector<ObjectId>>>();
  for (std::size_t r = 0; r < request_titles.size(); ++r) {
    const std::string title = request_titles[r];
    script.at(at_day(day0, 10h, minutes(long(r) * 7)), [&eng, request_ids, title, instructor] {
      auto req = requests::create_request(eng, instructor, title,
                                          "Please write an entry on " + title + ".");
      (*request_ids)[title].push_back(req.id);
    });
  }

  // Collections and exercises: created, orphaned and filed by the instructor.
  auto collection_ids = std::make_shared<std::vector<ObjectId>>(collection_specs.size());
  for (std::size_t c = 0; c < collection_specs.size(); ++c)
    script.at(at_day(collection_specs[c].released, 8h), [&eng, collection_ids, c, instructor] {
      (*collection_ids)[c] =
          collections::create_collection(eng, instructor, collection_specs[c].name).id;
    });

  std::map<std::size_t, int> released_in_collection;
  for (std::size_t k = 0; k < exercises.size(); ++k) {
    PlannedEntry& e = plan[exercise_plan_index[k]];
    std::size_t c = exercises[k].first;
    int n = released_in_collection[c]++;
    sys_seconds t = at_day(collection_specs[c].released, 9h, minutes(n * 5));
    e.statement = prose(e.seed + 17u, 180, "");
    e.statement.pop_back();
    PlannedEntry* ep = &e;
    script.at(t, [&eng, ep, collection_ids, c, instructor] {
      authority::NewEntry spec{ep->title, {}, EntryKind::exercise,
                               "\\textbf{Problem.} " + ep->statement + "\n"};
      ep->id = authority::create_entry(eng, instructor, spec).id;
      authority::orphan_entry(eng, instructor, ep->id);
      collections::add_entry(eng, instructor, (*collection_ids)[c], ep->id);
    });
    if (e.owner.str().empty())
      continue;
    sys_seconds adopt = t + days(1 + long(e.seed % 3)) + hours(long(e.seed % 7));
    e.ready = adopt + 3h;
    script.at(adopt, [&eng, ep] {
      authority::adopt_entry(eng, ep->owner, ep->id);
      notify::add_watch(eng, ep->owner, {ObjectKind::entry, ep->id}, {true, false});
    });
    script.at(e.ready, [&eng, ep] {
      ++ep->revisions;
      revise_entry(eng, ep->owner, ep->id, content_for(*ep, ep->revisions));
    });
  }

  // Concepts: spread over the term; requested titles are filled right away.
  {
    std::map<UserId, std::vector<std::size_t>> by_owner;
    for (std::size_t i = 0; i < plan.size(); ++i)
      if (!plan[i].exercise)
        by_owner[plan[i].owner].push_back(i);
    for (auto& [owner, list] : by_owner) {
      const long span_days = 84; // Jan 8 .. Apr 2
      for (std::size_t k = 0; k < list.size(); ++k) {
        PlannedEntry& e = plan[list[k]];
        long d = 2 + long(k) * span_days / long(list.size());
        e.ready = at_day(day0 + days(d), hours(13 + long(e.seed % 8)), minutes(long(e.seed % 50)));
        PlannedEntry* ep = &e;
        script.at(e.ready, [&eng, ep, request_ids] {
          authority::NewEntry spec{ep->title, {}, EntryKind::concept_, content_for(*ep, 1)};
          ep->id = authority::create_entry(eng, ep->owner, spec).id;
          auto it = request_ids->find(ep->title);
          if (it != request_ids->end() && !it->second.empty()) {
            requests::fulfill_request(eng, ep->owner, it->second.front(), ep->id);
            it->second.erase(it->second.begin());
          }
        });
      }
    }
  }

  // Resolved instructor corrections, bunched on deadline days.
  const std::vector<std::pair<sys_days, int>> closure_days = {
      {sys_days{2003y / January / 27}, 2}, {sys_days{2003y / February / 3}, 11},
      {sys_days{2003y / February / 4}, 5}, {sys_days{2003y / February / 17}, 1},
      {sys_days{2003y / March / 3}, 10},   {sys_days{2003y / March / 4}, 4},
      {sys_days{2003y / March / 20}, 1},   {sys_days{2003y / March / 31}, 7},
      {sys_days{2003y / April / 14}, 5},   {sys_days{2003y / April / 15}, 1},
  };
  std::map<std::size_t, int> resolved_on; // plan index -> count
  std::size_t cursor = 0;
  std::size_t bank = 0;
  int thread_count = 0;
  for (const auto& [day, count] : closure_days) {
    for (int k = 0; k < count; ++k) {
      sys_seconds resolve_at = at_day(day, hours(19 + k % 4), minutes(k * 11 % 60));
      // Next eligible student entry with content ready well before the slot.
      std::size_t pick = plan.size();
      for (std::size_t step = 0; step < plan.size(); ++step) {
        std::size_t i = (cursor + step) % plan.size();
        const auto& e = plan[i];
        if (e.owner.str().empty() || e.owner == auditor || e.score_class == 0)
          continue;
        if (e.ready + days(3) > resolve_at)
          continue;
        if (e.score_class == 1 && resolved_on[i] >= 2)
          continue;
        if (resolved_on[i] >= 3)
          continue;
        pick = i;
        cursor = i + 1;
        break;
      }
      if (pick == plan.size())
        throw std::logic_error("no entry for closure slot");
      ++resolved_on[pick];
      PlannedEntry* ep = &plan[pick];
      sys_seconds earliest = std::max(ep->ready + days(1), resolve_at - days(12));
      long window = duration_cast<minutes>(resolve_at - days(1) - earliest).count();
      sys_seconds filed_at = earliest + minutes(window / 2);
      std::size_t b = bank++;
      auto cid = std::make_shared<ObjectId>();
      script.at(filed_at, [&eng, ep, cid, b, instructor] {
        *cid = corrections::file_correction(eng, instructor, ep->id,
                                            correction_bank[b % correction_bank.size()])
                   .id;
      });
      if (thread_count < 6 && b % 7 == 3) {
        ++thread_count;
        auto question = std::make_shared<ObjectId>();
        script.at(filed_at + 2h, [&eng, ep, cid, question] {
          *question = discussion::post_message(eng, ep->owner, {ObjectKind::correction, *cid},
                                               "Question about this correction",
                                               "Does this apply to the second example too?")
                          .id;
        });
        script.at(filed_at + 5h, [&eng, question, instructor] {
          discussion::post_message(eng, instructor, {ObjectKind::message, *question}, "",
                                   "Yes, the same hypothesis is needed there.");
        });
      }
      script.at(resolve_at - 40min, [&eng, ep] {
        ++ep->revisions;
        revise_entry(eng, ep->owner, ep->id, content_for(*ep, ep->revisions));
      });
      script.at(resolve_at, [&eng, ep, cid, b] {
        const auto& [action, note] = resolution_bank[b % resolution_bank.size()];
        corrections::resolve_correction(eng, ep->owner, *cid, action, note);
      });
    }
  }

  // The one student-filed correction, on an auditor entry.
  {
    PlannedEntry* target = nullptr;
    for (auto& e : plan)
      if (e.owner == auditor && e.ready < sys_days{2003y / March / 20}) {
        target = &e;
        break;
      }
    auto cid = std::make_shared<ObjectId>();
    script.at(at_day(sys_days{2003y / March / 25}, 14h), [&eng, target, cid] {
      *cid = corrections::file_correction(eng, UserId("student2"), target->id,
                                          "The definition here disagrees with the one used in "
                                          "the flows assignment.",
                                          Severity::improvement)
                 .id;
    });
    script.at(at_day(sys_days{2003y / March / 31}, 23h, 30min), [&eng, target, cid] {
      ++target->revisions;
      revise_entry(eng, target->owner, target->id, content_for(*target, target->revisions));
      corrections::resolve_correction(eng, target->owner, *cid,
                                      "Aligned the definition with the assignment.",
                                      "Both uses should agree.");
    });
  }

  // Developed entries that never had a correction resolved still get written up.
  for (std::size_t i = 0; i < plan.size(); ++i) {
    PlannedEntry* ep = &plan[i];
    if (ep->owner.str().empty() || ep->score_class < 2 || resolved_on[i] > 0)
      continue;
    script.at(ep->ready + days(4), [&eng, ep] {
      ++ep->revisions;
      revise_entry(eng, ep->owner, ep->id, content_for(*ep, ep->revisions));
    });
  }

  // End of term: reviews, and one open correction on every score-2 entry.
  const sys_days review_day{2003y / April / 16};
  int open_k = 0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    PlannedEntry* ep = &plan[i];
    if (ep->owner.str().empty() || ep->owner == auditor)
      continue;
    if (ep->score_class >= 2) {
      script.at(at_day(review_day, 9h, minutes(long(i) % 60)), [&eng, ep, instructor] {
        review_entry(eng, instructor, ep->id, ReviewState::approved);
      });
    } else if (ep->score_class == 1) {
      script.at(at_day(review_day, 9h, minutes(long(i) % 60)), [&eng, ep, instructor] {
        review_entry(eng, instructor, ep->id, ReviewState::needs_work);
      });
    }
    if (ep->score_class == 2) {
      sys_seconds t = at_day(review_day + days(1), 10h, minutes(open_k++ * 7));
      std::size_t b = bank++;
      script.at(t, [&eng, ep, b, instructor] {
        corrections::file_correction(eng, instructor, ep->id,
                                     correction_bank[b % correction_bank.size()]);
      });
    }
  }

  script.run();
  return format_log(eng.log());
}

// ---------------------------------------------------------------------------
// The notes corpus: every title of the compiled notes, all developed,
// grouped into the four assignment collections.

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_notes_corpus(Script& script, const fs::path& entry_sources) {
  Engine& eng = script.engine();
  const UserId instructor("instructor");
  const std::vector<UserId> students = {UserId("student1"), UserId("student2"),
                                        UserId("student3")};
  const std::map<std::string, std::string> verbatim = {
      {"Proof of the Banach fixed point theorem", read_file(entry_sources / "banach_proof.tex")},
      {"Symmetry", read_file(entry_sources / "symmetry.tex")},
      {"Flows problem 9a", read_file(entry_sources / "flows_9a.tex")},
  };
  auto content = [&](const std::string& title, std::uint32_t seed) {
    auto it = verbatim.find(title);
    return it != verbatim.end() ? it->second : prose(seed, 320 + seed % 500);
  };

  sys_seconds t = sys_days{2003y / January / 6} + 9h;
  auto tick = [&] { return t += 1min; };
  script.at(t, [&] { create_users(eng, false); });

  Rng rng(2003);
  std::vector<std::size_t> order(concept_titles.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  rng.shuffle(order);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::string title = concept_titles[order[k]];
    UserId owner = students[k % 3];
    std::uint32_t seed = std::uint32_t(7000 + order[k]);
    script.at(tick(), [&eng, title, owner, seed, content] {
      authority::create_entry(eng, owner, {title, {}, EntryKind::concept_, content(title, seed)});
    });
  }

  std::size_t n = 0;
  for (const auto& spec : collection_specs) {
    auto cid = std::make_shared<ObjectId>();
    script.at(tick(), [&eng, cid, &spec, instructor] {
      *cid = collections::create_collection(eng, instructor, spec.name).id;
    });
    for (const auto& title : spec.problems) {
      UserId adopter = students[n % 3];
      std::uint32_t seed = std::uint32_t(9000 + n++);
      auto eid = std::make_shared<ObjectId>();
      script.at(tick(), [&eng, cid, eid, title, seed, instructor] {
        *eid = authority::create_entry(eng, instructor,
                                       {title, {}, EntryKind::exercise, prose(seed, 240)})
                   .id;
        authority::orphan_entry(eng, instructor, *eid);
        collections::add_entry(eng, instructor, *cid, *eid);
      });
      script.at(tick(), [&eng, eid, adopter, title, seed, content] {
        authority::adopt_entry(eng, adopter, *eid);
        revise_entry(eng, adopter, *eid, content(title, seed + 1));
      });
    }
  }

  script.run();
  return format_log(eng.log());
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the bundled event-log fixtures"};
  fs::path out_dir = "fixtures";
  fs::path entry_sources = "fixtures/entry_sources";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--entry-sources", entry_sources, "directory with the verbatim entry sources")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    {
      Script s;
      write_file(out_dir / "math5190.events.jsonl", write_course(s));
    }
    {
      Script s;
      write_file(out_dir / "notes_corpus.events.jsonl", write_notes_corpus(s, entry_sources));
    }
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
