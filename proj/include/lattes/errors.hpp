#pragma once

#include <stdexcept>
#include <string>

namespace lattes {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input does not satisfy an operation's precondition (singular matrix,
// non-expanding map, malformed portrait, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A level scan reached its cap without deciding the answer.
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace lattes
