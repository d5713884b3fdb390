#pragma once

#include <stdexcept>
#include <string>

namespace etacert {

// Bad input: violated precondition on a value supplied by the caller.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A comparison or evaluation was asked for beyond the precision that
// the operands actually certify.
class precision_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Internal inconsistency detected while computing (e.g. a cusp order
// that should be an integer is not).
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace etacert
