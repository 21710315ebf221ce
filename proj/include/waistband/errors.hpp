#ifndef WAISTBAND_ERRORS_HPP
#define WAISTBAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace waistband {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (negative length, zero divisor, force above the fracture point, ...).
class domain_error : public error {
public:
    using error::error;
};

// The requested evaluation point is outside the region the operation
// covers; the message names the operation that does cover it.
class region_error : public error {
public:
    using error::error;
};

// A type invariant or required field is violated at construction time.
class config_error : public error {
public:
    using error::error;
};

// No plan or control setting can satisfy the stated constraints.
class infeasible_error : public error {
public:
    using error::error;
};

// A spec file failed to parse or did not match the schema.
class parse_error : public error {
public:
    using error::error;
};

// A cycle was rejected by pre-run validation.
class validation_error : public error {
public:
    using error::error;
};

}  // namespace waistband

#endif
