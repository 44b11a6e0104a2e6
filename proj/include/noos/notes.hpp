#pragma once

#include "noos/assess.hpp"
#include "noos/autolink.hpp"
#include "noos/state.hpp"

#include <optional>
#include <string>
#include <vector>

// Compiles the corpus into one course-notes document: front matter, a
// table of contents, the alphabetical run of ungrouped entries, then each
// collection as a section with its members as subsections.
namespace noos::notes {

struct FrontMatter {
  std::string title = "Collaborative course notes";
  std::string subtitle;
  std::string institution;
  std::string date;

  friend bool operator==(const FrontMatter&, const FrontMatter&) = default;
};

struct CompileOptions {
  FrontMatter front;
  assess::RubricConfig rubric;
  autolink::LinkOptions linking;
};

struct Subsection {
  int number = 0;
  std::string title;
  ObjectId entry;
  std::string body; // linked LaTeX

  friend bool operator==(const Subsection&, const Subsection&) = default;
};

struct Section {
  int number = 0;
  std::string title;
  std::optional<ObjectId> entry; // absent for collection sections
  std::string body;
  std::vector<Subsection> subsections;

  friend bool operator==(const Section&, const Section&) = default;
};

struct DocumentModel {
  FrontMatter front;
  std::vector<Section> sections;

  friend bool operator==(const DocumentModel&, const DocumentModel&) = default;
};

// Case-insensitive codepoint order on titles; ties go to the older entry.
bool title_less(const Entry& a, const Entry& b);

// Entries scoring 0 are left out. Links point only at included entries.
DocumentModel compile(const State& s, const CompileOptions& options = {});

enum class Format { latex, toc_text };

std::optional<Format> parse_format(std::string_view s);

std::string serialize(const DocumentModel& doc, Format format);

// Throws unsupported-format for names other than "latex" and "toc-text".
std::string serialize(const DocumentModel& doc, std::string_view format);

std::string escape_latex(std::string_view text);

} // namespace noos::notes
