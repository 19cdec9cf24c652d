#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgebraMismatch : Error {
    using Error::Error;
};
struct BodilessNotInvertible : Error {
    using Error::Error;
};
struct OddArgument : Error {
    using Error::Error;
};
struct SymbolicBodyRequired : Error {
    using Error::Error;
};
struct UndeclaredSymbol : Error {
    using Error::Error;
};
struct ParityError : Error {
    using Error::Error;
};
struct ParityMismatch : ParityError {
    using ParityError::ParityError;
};
struct MissingComponentExpansion : Error {
    using Error::Error;
};
struct SyntaxError : Error {
    int line = 0, col = 0;
    SyntaxError(const std::string& msg, int l, int c)
        : Error(msg + " (line " + std::to_string(l) + ", col " + std::to_string(c) + ")"),
          line(l),
          col(c) {}
};
struct CertificateMismatch : Error {
    std::string entry, leftover;
    CertificateMismatch(const std::string& e, const std::string& left)
        : Error("certificate mismatch at entry " + e + ", leftover: " + left),
          entry(e),
          leftover(left) {}
};
struct NonProjectable : Error {
    using Error::Error;
};
struct UnsupportedGeneratorShape : Error {
    using Error::Error;
};
struct NotInL4 : Error {
    using Error::Error;
};
struct UnknownScenario : Error {
    using Error::Error;
};

}  // namespace sgc
