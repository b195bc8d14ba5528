#ifndef DRFLOW_ERRORS_HPP
#define DRFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drflow {

/* Base class for all library errors. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg) : Error(msg) {}
};

/* invert_unit on an element whose constant term is not a nonzero rational. */
struct NonInvertibleConstant : Error {
    explicit NonInvertibleConstant(const std::string& msg) : Error(msg) {}
};

/* eps-square rescaling applied to a polynomial with odd eps powers. */
struct OddEpsPower : Error {
    explicit OddEpsPower(const std::string& msg) : Error(msg) {}
};

struct NotATotalDerivative : Error {
    explicit NotATotalDerivative(const std::string& msg) : Error(msg) {}
};

struct NonzeroConstantTerm : Error {
    explicit NonzeroConstantTerm(const std::string& msg) : Error(msg) {}
};

struct NoSolution : Error {
    explicit NoSolution(const std::string& msg) : Error(msg) {}
};

struct NonUniqueSolution : Error {
    explicit NonUniqueSolution(const std::string& msg) : Error(msg) {}
};

struct NotAConservationLaw : Error {
    explicit NotAConservationLaw(const std::string& msg) : Error(msg) {}
};

struct DegenerateJacobian : Error {
    explicit DegenerateJacobian(const std::string& msg) : Error(msg) {}
};

struct ClosednessViolation : Error {
    explicit ClosednessViolation(const std::string& msg) : Error(msg) {}
};

struct BoundsTooSmall : Error {
    explicit BoundsTooSmall(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg), line(line_), column(col_) {}
};

} // namespace drflow

#endif
