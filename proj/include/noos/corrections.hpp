#pragma once

#include "noos/engine.hpp"
#include "noos/model.hpp"

#include <string>
#include <vector>

// Open critique: anyone files, the entry owner resolves with an action and
// a rationale. Corrections cannot be retracted.
namespace noos::corrections {

Correction file_correction(Engine& engine, const UserId& filer, const ObjectId& entry,
                           std::string text, Severity severity = Severity::error);

Correction resolve_correction(Engine& engine, const UserId& actor, const ObjectId& correction,
                              std::string action, std::string note);

// Open corrections on `entry`, oldest first. Throws entry-missing.
std::vector<Correction> open_corrections(const State& s, const ObjectId& entry);

// Every correction ever filed against `entry`, oldest first.
std::vector<Correction> corrections_for(const State& s, const ObjectId& entry);

// Open corrections in display order: severity, then filing order.
std::vector<Correction> pinned_for_display(const State& s, const ObjectId& entry);

} // namespace noos::corrections
