#pragma once

#include <stdexcept>

namespace bbng {

// Base type for everything the library throws on bad input or blown limits.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct InvalidBudget : Error { using Error::Error; };
struct BudgetMismatch : Error { using Error::Error; };
struct SelfLink : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct EnumerationCapExceeded : Error { using Error::Error; };
struct ConditionViolated : Error { using Error::Error; };
struct ResourceBound : Error { using Error::Error; };
struct NotAnEquilibrium : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct NonUnitBudget : Error { using Error::Error; };
struct NotATree : Error { using Error::Error; };
struct NotTreeBG : Error { using Error::Error; };
struct InvalidGraph : Error { using Error::Error; };

} // namespace bbng
