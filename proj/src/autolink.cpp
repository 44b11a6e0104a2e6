#include "noos/autolink.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

namespace noos::autolink {

std::string_view to_string(SegmentKind kind) noexcept {
  switch (kind) {
  case SegmentKind::text: return "text";
  case SegmentKind::inline_math: return "inline-math";
  case SegmentKind::display_math: return "display-math";
  case SegmentKind::command: return "command";
  case SegmentKind::verbatim: return "verbatim";
  case SegmentKind::comment: return "comment";
  }
  return "text";
}

bool is_letter(unsigned char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_space(unsigned char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

namespace {

unsigned char fold(unsigned char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<unsigned char>(c - 'A' + 'a') : c;
}

bool is_ascii_alpha(unsigned char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// ---------------------------------------------------------------------------
// Tokenizer

constexpr std::string_view math_environments[] = {
    "equation", "equation*", "align", "align*", "eqnarray", "eqnarray*",
};

constexpr std::string_view verbatim_environments[] = {"verbatim", "verbatim*"};

// Commands whose brace arguments are labels, keys, paths or ids rather
// than prose, with the number of {...} groups to absorb.
const std::unordered_map<std::string_view, int>& argument_commands() {
  static const std::unordered_map<std::string_view, int> table = {
      {"end", 1},       {"label", 1},          {"ref", 1},
      {"eqref", 1},     {"pageref", 1},        {"cite", 1},
      {"url", 1},       {"href", 1},           {"includegraphics", 1},
      {"input", 1},     {"include", 1},        {"nooslink", 1},
      {"usepackage", 1}, {"documentclass", 1}, {"bibliography", 1},
      {"bibliographystyle", 1}, {"setlength", 2}, {"newcommand", 2},
      {"renewcommand", 2}, {"hspace", 1},      {"vspace", 1},
  };
  return table;
}

class Tokenizer {
public:
  explicit Tokenizer(std::string_view src) : src_(src) {}

  Tokenized run() {
    while (pos_ < src_.size()) {
      if (!step())
        break;
    }
    flush_text(src_.size());
    return std::move(out_);
  }

private:
  // Returns false once the rest of the input has been given up on.
  bool step() {
    const char c = src_[pos_];
    if (c == '%')
      return comment();
    if (c == '$')
      return dollar();
    if (c == '\\')
      return backslash();
    ++pos_;
    return true;
  }

  bool comment() {
    auto nl = src_.find('\n', pos_);
    std::size_t end = nl == std::string_view::npos ? src_.size() : nl + 1;
    emit(SegmentKind::comment, pos_, end);
    return true;
  }

  bool dollar() {
    if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '$') {
      auto close = find_unescaped(pos_ + 2, "$$");
      if (close == std::string_view::npos)
        return unbalanced("unterminated $$ display math");
      emit(SegmentKind::display_math, pos_, close + 2);
      return true;
    }
    auto close = find_unescaped(pos_ + 1, "$");
    if (close == std::string_view::npos)
      return unbalanced("unterminated $ inline math");
    emit(SegmentKind::inline_math, pos_, close + 1);
    return true;
  }

  bool backslash() {
    if (pos_ + 1 >= src_.size()) {
      ++pos_; // a lone trailing backslash stays prose
      return true;
    }
    const unsigned char next = static_cast<unsigned char>(src_[pos_ + 1]);
    if (next == '(' || next == '[') {
      const char* closer = next == '(' ? "\\)" : "\\]";
      auto close = find_unescaped(pos_ + 2, closer);
      if (close == std::string_view::npos)
        return unbalanced(next == '(' ? "unterminated \\( inline math"
                                      : "unterminated \\[ display math");
      emit(next == '(' ? SegmentKind::inline_math : SegmentKind::display_math, pos_, close + 2);
      return true;
    }
    if (!is_ascii_alpha(next)) {
      // Control symbol: \\, \$, \%, \{ ... Keep multibyte characters whole.
      std::size_t len = 1;
      if (next >= 0xC0) {
        while (pos_ + 1 + len < src_.size() &&
               (static_cast<unsigned char>(src_[pos_ + 1 + len]) & 0xC0) == 0x80)
          ++len;
      }
      emit(SegmentKind::command, pos_, pos_ + 1 + len);
      return true;
    }

    std::size_t name_end = pos_ + 1;
    while (name_end < src_.size() && is_ascii_alpha(static_cast<unsigned char>(src_[name_end])))
      ++name_end;
    std::string_view name = src_.substr(pos_ + 1, name_end - pos_ - 1);
    std::size_t after = name_end;
    if (after < src_.size() && src_[after] == '*')
      ++after;

    if (name == "verb")
      return verb(after);
    if (name == "begin")
      return begin_env(name_end);

    auto it = argument_commands().find(name);
    if (it != argument_commands().end()) {
      std::size_t end = after;
      while (end < src_.size() && src_[end] == '[') {
        auto close = match_group(end, '[', ']');
        if (close == std::string_view::npos)
          break;
        end = close + 1;
      }
      for (int i = 0; i < it->second; ++i) {
        auto close = end < src_.size() && src_[end] == '{' ? match_group(end, '{', '}')
                                                            : std::string_view::npos;
        if (close == std::string_view::npos)
          break;
        end = close + 1;
      }
      emit(SegmentKind::command, pos_, end);
      return true;
    }
    emit(SegmentKind::command, pos_, after);
    return true;
  }

  bool verb(std::size_t delim_pos) {
    if (delim_pos >= src_.size())
      return unbalanced("\\verb without a delimiter");
    char delim = src_[delim_pos];
    auto close = src_.find(delim, delim_pos + 1);
    auto nl = src_.find('\n', delim_pos + 1);
    if (close == std::string_view::npos || (nl != std::string_view::npos && nl < close))
      return unbalanced("unterminated \\verb");
    emit(SegmentKind::verbatim, pos_, close + 1);
    return true;
  }

  bool begin_env(std::size_t name_end) {
    if (name_end >= src_.size() || src_[name_end] != '{') {
      emit(SegmentKind::command, pos_, name_end);
      return true;
    }
    auto close = match_group(name_end, '{', '}');
    if (close == std::string_view::npos) {
      emit(SegmentKind::command, pos_, name_end);
      return true;
    }
    std::string_view env = src_.substr(name_end + 1, close - name_end - 1);
    bool math = std::find(std::begin(math_environments), std::end(math_environments), env) !=
                std::end(math_environments);
    bool verbatim = std::find(std::begin(verbatim_environments), std::end(verbatim_environments),
                              env) != std::end(verbatim_environments);
    if (!math && !verbatim) {
      emit(SegmentKind::command, pos_, close + 1);
      return true;
    }
    std::string terminator = "\\end{" + std::string(env) + "}";
    auto end = src_.find(terminator, close + 1);
    if (end == std::string_view::npos)
      return unbalanced("unterminated " + std::string(env) + " environment");
    emit(math ? SegmentKind::display_math : SegmentKind::verbatim, pos_, end + terminator.size());
    return true;
  }

  // Position of `closer` at or after `from`, skipping backslash escapes.
  std::size_t find_unescaped(std::size_t from, std::string_view closer) const {
    std::size_t i = from;
    while (i < src_.size()) {
      if (src_.substr(i, closer.size()) == closer)
        return i;
      if (src_[i] == '\\')
        i += 2;
      else
        ++i;
    }
    return std::string_view::npos;
  }

  // Index of the bracket matching the one at `open_pos`, or npos.
  std::size_t match_group(std::size_t open_pos, char open, char close) const {
    int depth = 0;
    for (std::size_t i = open_pos; i < src_.size(); ++i) {
      char c = src_[i];
      if (c == '\\') {
        ++i;
        continue;
      }
      if (c == open)
        ++depth;
      else if (c == close && --depth == 0)
        return i;
    }
    return std::string_view::npos;
  }

  bool unbalanced(std::string message) {
    out_.diagnostics.push_back({pos_, std::move(message)});
    pos_ = src_.size();
    return false;
  }

  void flush_text(std::size_t upto) {
    if (upto > text_start_)
      out_.segments.push_back({SegmentKind::text, text_start_, upto,
                               std::string(src_.substr(text_start_, upto - text_start_))});
    text_start_ = upto;
  }

  void emit(SegmentKind kind, std::size_t begin, std::size_t end) {
    flush_text(begin);
    out_.segments.push_back({kind, begin, end, std::string(src_.substr(begin, end - begin))});
    pos_ = end;
    text_start_ = end;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t text_start_ = 0;
  Tokenized out_;
};

// ---------------------------------------------------------------------------
// Term trie. Edges are folded bytes; a single ' ' edge stands for any run
// of whitespace in the scanned text.

class Trie {
public:
  Trie() : nodes_(1) {}

  void insert(std::string_view normalized, const TermIndex::Target* target) {
    int node = 0;
    for (unsigned char c : normalized) {
      int child = find_child(node, c);
      if (child < 0) {
        child = int(nodes_.size());
        nodes_.emplace_back();
        nodes_[node].edges.emplace_back(c, child);
      }
      node = child;
    }
    nodes_[node].target = target;
  }

  // Longest term starting at `p` that ends on a word boundary.
  std::optional<std::pair<std::size_t, const TermIndex::Target*>>
  longest_at(std::string_view text, std::size_t p, bool plural) const {
    std::optional<std::pair<std::size_t, const TermIndex::Target*>> best;
    int node = 0;
    std::size_t i = p;
    while (true) {
      if (const auto* target = nodes_[node].target; target && i > p) {
        auto boundary = [&](std::size_t at) {
          return at >= text.size() || !is_letter(static_cast<unsigned char>(text[at]));
        };
        if (boundary(i)) {
          best = {i, target};
        } else if (plural) {
          if (fold(text[i]) == 's' && boundary(i + 1))
            best = {i + 1, target};
          else if (i + 1 < text.size() && fold(text[i]) == 'e' && fold(text[i + 1]) == 's' &&
                   boundary(i + 2))
            best = {i + 2, target};
        }
      }
      if (i >= text.size())
        break;
      unsigned char c = static_cast<unsigned char>(text[i]);
      if (is_space(c)) {
        int child = find_child(node, ' ');
        if (child < 0)
          break;
        while (i < text.size() && is_space(static_cast<unsigned char>(text[i])))
          ++i;
        node = child;
      } else {
        int child = find_child(node, fold(c));
        if (child < 0)
          break;
        ++i;
        node = child;
      }
    }
    return best;
  }

private:
  struct Node {
    std::vector<std::pair<unsigned char, int>> edges;
    const TermIndex::Target* target = nullptr;
  };

  int find_child(int node, unsigned char c) const {
    for (const auto& [edge, child] : nodes_[node].edges)
      if (edge == c)
        return child;
    return -1;
  }

  std::vector<Node> nodes_;
};

} // namespace

Tokenized tokenize(std::string_view source) { return Tokenizer(source).run(); }

std::string normalize_term(std::string_view term) {
  std::string out;
  out.reserve(term.size());
  bool pending_space = false;
  for (unsigned char c : term) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(fold(c)));
  }
  return out;
}

TermIndex TermIndex::build(std::span<const TermSource> corpus) {
  TermIndex index;
  for (const auto& src : corpus) {
    auto add = [&](std::string_view raw) {
      std::string term = normalize_term(raw);
      if (term.empty())
        return;
      auto it = index.terms_.find(term);
      if (it == index.terms_.end())
        index.terms_.emplace(std::move(term), Target{src.id, src.created_seq});
      else if (src.created_seq < it->second.created_seq)
        it->second = Target{src.id, src.created_seq};
    };
    add(src.title);
    for (const auto& s : src.synonyms)
      add(s);
  }
  return index;
}

const TermIndex::Target* TermIndex::find(std::string_view normalized) const {
  auto it = terms_.find(normalized);
  return it == terms_.end() ? nullptr : &it->second;
}

std::string link_markup(const ObjectId& target, std::string_view text) {
  std::string out = "\\nooslink{";
  out += target.str();
  out += "}{";
  out += text;
  out += "}";
  return out;
}

LinkResult link(const TermSource& entry, std::string_view content, const TermIndex& index,
                const LinkOptions& options) {
  Trie trie;
  for (const auto& [term, target] : index.terms())
    trie.insert(term, &target);

  std::set<std::string> own_terms;
  own_terms.insert(normalize_term(entry.title));
  for (const auto& s : entry.synonyms)
    own_terms.insert(normalize_term(s));
  std::set<const TermIndex::Target*> own_targets;
  for (const auto& t : own_terms)
    if (const auto* target = index.find(t))
      own_targets.insert(target);

  Tokenized tok = tokenize(content);
  LinkResult result;
  result.diagnostics = std::move(tok.diagnostics);
  result.content.reserve(content.size());
  std::set<ObjectId> linked;

  for (const auto& seg : tok.segments) {
    if (seg.kind != SegmentKind::text) {
      result.content += seg.content;
      continue;
    }
    std::string_view text = seg.content;
    std::size_t copied = 0;
    std::size_t p = 0;
    while (p < text.size()) {
      bool word_start = p == 0 || !is_letter(static_cast<unsigned char>(text[p - 1]));
      if (!word_start) {
        ++p;
        continue;
      }
      auto match = trie.longest_at(text, p, options.plural_folding);
      if (!match) {
        ++p;
        continue;
      }
      auto [end, target] = *match;
      bool self = target->id == entry.id || own_targets.count(target) != 0;
      if (!self && linked.insert(target->id).second) {
        result.content.append(text.substr(copied, p - copied));
        result.content += link_markup(target->id, text.substr(p, end - p));
        result.links.push_back({seg.begin + p, seg.begin + end, target->id});
        copied = end;
      }
      p = end;
    }
    result.content.append(text.substr(copied));
  }
  return result;
}

std::string strip_links(const LinkResult& linked) {
  std::string out;
  out.reserve(linked.content.size());
  std::string_view src = linked.content;
  std::size_t pos = 0;      // in the linked text
  std::size_t original = 0; // bytes of original emitted so far
  for (const auto& l : linked.links) {
    std::size_t plain = l.begin - original;
    out.append(src.substr(pos, plain));
    pos += plain;
    std::string prefix = "\\nooslink{" + l.target.str() + "}{";
    pos += prefix.size();
    out.append(src.substr(pos, l.end - l.begin));
    pos += l.end - l.begin + 1; // closing brace
    original = l.end;
  }
  out.append(src.substr(pos));
  return out;
}

} // namespace noos::autolink
