#pragma once

#include "noos/assess.hpp"
#include "noos/autolink.hpp"
#include "noos/discussion.hpp"
#include "noos/state.hpp"

// Read-side JSON payloads shared by the API and the CLI.
namespace noos::service::views {

// Index over every live entry.
autolink::TermIndex live_index(const State& s);

// Listing row: no content, plus open-correction count and score.
json entry_summary(const State& s, const Entry& e, const assess::RubricConfig& rubric);

// Full display payload: raw content, linked content, link table,
// diagnostics, pinned open corrections, the discussion thread and score.
json entry_detail(const State& s, const ObjectId& id, const assess::RubricConfig& rubric);

json thread(const std::vector<discussion::ThreadNode>& forest);

} // namespace noos::service::views
