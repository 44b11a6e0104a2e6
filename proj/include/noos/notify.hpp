#pragma once

#include "noos/apply.hpp"
#include "noos/engine.hpp"
#include "noos/mail.hpp"
#include "noos/model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace noos::notify {

// Set (or update the channels of) the caller's watch on `object`.
Watch add_watch(Engine& engine, const UserId& user, const ObjectRef& object, Channels channels);
void remove_watch(Engine& engine, const UserId& user, const ObjectRef& object);

enum class InboxFilter { unread, all };
std::optional<InboxFilter> parse_inbox_filter(std::string_view s) noexcept;

// Newest first. Throws unknown-user.
std::vector<Notice> inbox(const State& s, const UserId& user, InboxFilter filter);

// Idempotent.
Notice mark_read(Engine& engine, const UserId& user, const ObjectId& notice);

// Creates the notices for one applied event: implicit recipients first,
// then watchers of every subject. One notice per user per event, never to
// the actor. Called by apply(); exposed for tests.
std::vector<Notice> fan_out(State& s, const EventRecord& rec, const Effects& effects);

// Outbound mail for the email-channel notices of event `seq`.
std::vector<MailMessage> mail_for(const State& s, Seq seq);

// All notices produced by event `seq`.
std::vector<Notice> notices_for_event(const State& s, Seq seq);

} // namespace noos::notify
