#pragma once

#include <functional>

#include "emoplan/validator.hpp"

namespace emoplan::detail {

// Called with the post-event state after every start or end that applies at
// least one effect.
using EventCallback = std::function<void(const TimedState&)>;

ValidationReport replay(const Task& task, const Plan& plan, const ValidationOptions& opts,
                        const EventCallback& on_event);

}  // namespace emoplan::detail
