#pragma once

#include <stdexcept>
#include <string>

namespace awrep {

// Every library failure carries a stable kind name and the CLI exit code
// it maps to (2 precondition, 3 internal, 4 equivalence).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what, int exit_code)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), code_(exit_code) {}
    const std::string& kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return code_; }

private:
    std::string kind_;
    int code_;
};

#define AWREP_ERROR(Name, Code)                                               \
    struct Name : Error {                                                     \
        explicit Name(const std::string& what) : Error(#Name, what, Code) {}  \
    };

AWREP_ERROR(DegenerateBase, 2)
AWREP_ERROR(DenominatorPole, 2)
AWREP_ERROR(InvariantViolation, 2)
AWREP_ERROR(ShiftDenominatorZero, 2)
AWREP_ERROR(GDenominatorZero, 2)
AWREP_ERROR(RescaleSingular, 2)
AWREP_ERROR(DimensionMismatch, 2)
AWREP_ERROR(ZeroDenominator, 2)
AWREP_ERROR(DegeneratePrefactor, 2)
AWREP_ERROR(NonTermination, 3)
AWREP_ERROR(NotEquivalent, 4)

#undef AWREP_ERROR

}  // namespace awrep
