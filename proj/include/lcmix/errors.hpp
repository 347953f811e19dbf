#pragma once

#include <stdexcept>
#include <string>

namespace lcmix {

// Bad inputs: malformed JSON, out-of-range indices, violated preconditions.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Work-budget and size-guard violations. Never a wrong answer: callers either
// raise the budget or treat the computation as undecided.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lcmix
