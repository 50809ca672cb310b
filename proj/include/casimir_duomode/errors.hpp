#pragma once

#include <stdexcept>
#include <string>

namespace casimir_duomode {

/// Rejected input: out-of-range parameter, malformed config, bad CLI value.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A closed-form routine was called outside the parameter regime it was derived for.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical postcondition failed (e.g. a probability came out clearly negative).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir_duomode
