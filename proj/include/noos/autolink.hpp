#pragma once

#include "noos/ids.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// LaTeX-aware concept linking.
//
// Entry content is split into segments (prose text, math, commands,
// verbatim, comments) that partition the source byte for byte. Titles and
// synonyms of other entries are then matched inside prose text only, by a
// leftmost-longest scan on word boundaries, and wrapped as
// \nooslink{<target-id>}{<matched text>}.
//
// A "letter" is an ASCII letter or any byte >= 0x80, so accented words are
// never split. Case folding is ASCII only.
namespace noos::autolink {

enum class SegmentKind { text, inline_math, display_math, command, verbatim, comment };

std::string_view to_string(SegmentKind kind) noexcept;

struct Segment {
  SegmentKind kind = SegmentKind::text;
  std::size_t begin = 0; // byte offsets into the source, half open
  std::size_t end = 0;
  std::string content;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Diagnostic {
  std::size_t offset = 0;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Tokenized {
  std::vector<Segment> segments;
  std::vector<Diagnostic> diagnostics;
};

// Total: never throws on malformed input. An unterminated math, \verb or
// environment turns everything from the last text boundary to the end of
// input into a single text segment and records a diagnostic.
Tokenized tokenize(std::string_view source);

bool is_letter(unsigned char c) noexcept;
bool is_space(unsigned char c) noexcept;

// Case-fold, collapse internal whitespace runs to one space, trim. No
// article stripping.
std::string normalize_term(std::string_view term);

// What the index needs to know about an entry.
struct TermSource {
  ObjectId id;
  std::string title;
  std::vector<std::string> synonyms;
  Seq created_seq = 0;
};

class TermIndex {
public:
  struct Target {
    ObjectId id;
    Seq created_seq = 0;

    friend bool operator==(const Target&, const Target&) = default;
  };

  // Every title and synonym, normalized. On a collision the oldest entry
  // (smallest created_seq) wins, whatever the input order.
  static TermIndex build(std::span<const TermSource> corpus);

  const Target* find(std::string_view normalized) const;
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<std::string, Target, std::less<>>& terms() const noexcept { return terms_; }

private:
  std::map<std::string, Target, std::less<>> terms_;
};

struct Link {
  std::size_t begin = 0; // source byte span of the matched text
  std::size_t end = 0;
  ObjectId target;

  friend bool operator==(const Link&, const Link&) = default;
};

struct LinkOptions {
  // Also accept a trailing "s" or "es" after a term. Off by default.
  bool plural_folding = false;
};

struct LinkResult {
  std::string content; // source with \nooslink wrappers inserted
  std::vector<Link> links;
  std::vector<Diagnostic> diagnostics;
};

// Link `entry`'s content against `index`. Only the first occurrence of each
// target is linked. Matches of the entry's own title or synonyms, or of
// terms that resolve to the entry itself, claim their span but are never
// linked.
LinkResult link(const TermSource& entry, std::string_view content, const TermIndex& index,
                const LinkOptions& options = {});

std::string link_markup(const ObjectId& target, std::string_view text);

// Inverse of link(): removes exactly the wrappers that link() inserted.
std::string strip_links(const LinkResult& linked);

} // namespace noos::autolink
