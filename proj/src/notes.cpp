#include "noos/notes.hpp"

#include "noos/error.hpp"

#include <algorithm>
#include <set>

namespace noos::notes {

namespace {

unsigned char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<unsigned char>(c - 'A' + 'a') : c;
}

// UTF-8 byte order is codepoint order, so folding ASCII and comparing
// bytes is enough.
int compare_folded(std::string_view a, std::string_view b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char x = fold(a[i]), y = fold(b[i]);
    if (x != y)
      return x < y ? -1 : 1;
  }
  return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

autolink::TermSource term_source(const Entry& e) {
  return {e.id, e.title, e.synonyms, e.created_seq};
}

} // namespace

bool title_less(const Entry& a, const Entry& b) {
  int c = compare_folded(a.title, b.title);
  return c != 0 ? c < 0 : a.created_seq < b.created_seq;
}

DocumentModel compile(const State& s, const CompileOptions& options) {
  std::map<ObjectId, std::size_t> open;
  for (const auto& [id, c] : s.corrections)
    if (c.open())
      ++open[c.entry];

  std::vector<const Entry*> included;
  for (const Entry* e : live_entries(s)) {
    auto it = open.find(e->id);
    if (assess::score(assess::content_chars(e->content), it == open.end() ? 0 : it->second,
                      e->review_state, options.rubric) > 0)
      included.push_back(e);
  }

  std::vector<autolink::TermSource> sources;
  sources.reserve(included.size());
  for (const Entry* e : included)
    sources.push_back(term_source(*e));
  const auto index = autolink::TermIndex::build(sources);
  auto body = [&](const Entry& e) {
    return autolink::link(term_source(e), e.content, index, options.linking).content;
  };

  DocumentModel doc;
  doc.front = options.front;

  std::set<ObjectId> included_ids;
  for (const Entry* e : included)
    included_ids.insert(e->id);

  std::vector<const Entry*> run;
  for (const Entry* e : included)
    if (!e->collection || !s.collections.count(*e->collection))
      run.push_back(e);
  std::sort(run.begin(), run.end(), [](const Entry* a, const Entry* b) { return title_less(*a, *b); });

  int number = 0;
  for (const Entry* e : run)
    doc.sections.push_back({++number, e->title, e->id, body(*e), {}});

  std::vector<const Collection*> colls;
  for (const auto& [id, c] : s.collections)
    colls.push_back(&c);
  std::sort(colls.begin(), colls.end(),
            [](const Collection* a, const Collection* b) { return a->created_seq < b->created_seq; });
  for (const Collection* c : colls) {
    Section sec{++number, c->name, std::nullopt, {}, {}};
    int sub = 0;
    for (const auto& member : c->members) {
      if (!included_ids.count(member))
        continue;
      const Entry& e = s.entries.at(member);
      sec.subsections.push_back({++sub, e.title, e.id, body(e)});
    }
    doc.sections.push_back(std::move(sec));
  }
  return doc;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "latex")
    return Format::latex;
  if (s == "toc-text")
    return Format::toc_text;
  return std::nullopt;
}

std::string escape_latex(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
    case '\\': out += "\\textbackslash{}"; break;
    case '~': out += "\\textasciitilde{}"; break;
    case '^': out += "\\textasciicircum{}"; break;
    case '&': case '%': case '$': case '#': case '_': case '{': case '}':
      out += '\\';
      out += c;
      break;
    default: out += c;
    }
  }
  return out;
}

namespace {

std::string toc_text(const DocumentModel& doc) {
  std::string out;
  for (const auto& sec : doc.sections) {
    out += std::to_string(sec.number) + "\t" + sec.title + "\n";
    for (const auto& sub : sec.subsections)
      out += std::to_string(sec.number) + "." + std::to_string(sub.number) + "\t" + sub.title +
             "\n";
  }
  return out;
}

std::string latex(const DocumentModel& doc) {
  std::string out;
  out += "\\documentclass{article}\n";
  out += "\\usepackage[utf8]{inputenc}\n";
  out += "\\usepackage{amsmath,amssymb}\n";
  out += "\\newcommand{\\nooslink}[2]{\\emph{#2}~(\\ref{noos:#1})}\n";
  out += "\\begin{document}\n\n";
  out += "\\begin{center}\n";
  out += "\\textbf{" + escape_latex(doc.front.title) + "}\\\\\n";
  for (const auto* line : {&doc.front.subtitle, &doc.front.institution, &doc.front.date})
    if (!line->empty())
      out += escape_latex(*line) + "\\\\\n";
  out += "\\end{center}\n\n";
  out += "\\tableofcontents\n";
  for (const auto& sec : doc.sections) {
    out += "\n\\section{" + escape_latex(sec.title) + "}";
    if (sec.entry)
      out += "\\label{noos:" + sec.entry->str() + "}";
    out += "\n";
    if (!sec.body.empty())
      out += sec.body + (sec.body.back() == '\n' ? "" : "\n");
    for (const auto& sub : sec.subsections) {
      out += "\n\\subsection{" + escape_latex(sub.title) + "}\\label{noos:" + sub.entry.str() +
             "}\n";
      if (!sub.body.empty())
        out += sub.body + (sub.body.back() == '\n' ? "" : "\n");
    }
  }
  out += "\n\\end{document}\n";
  return out;
}

} // namespace

std::string serialize(const DocumentModel& doc, Format format) {
  return format == Format::latex ? latex(doc) : toc_text(doc);
}

std::string serialize(const DocumentModel& doc, std::string_view format) {
  auto f = parse_format(format);
  if (!f)
    fail(Errc::unsupported_format, "unsupported export format: " + std::string(format));
  return serialize(doc, *f);
}

} // namespace noos::notes
