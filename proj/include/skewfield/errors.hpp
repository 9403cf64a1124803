#ifndef SKEWFIELD_ERRORS_HPP
#define SKEWFIELD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewfield {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("operands belong to different fields") {}
    using Error::Error;
};

class FieldSpecError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t column, const std::string& what)
        : Error("syntax error at column " + std::to_string(column) + ": " + what), column_(column) {}

    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

class UnknownVariable : public Error {
public:
    UnknownVariable(std::size_t index, std::size_t nvars)
        : Error("unknown variable x" + std::to_string(index) + " (only " + std::to_string(nvars) +
                " variables)"),
          index_(index) {}

    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// An Inv node whose argument evaluated to a singular matrix.
class DomainError : public Error {
public:
    DomainError(const std::string& node, std::size_t size)
        : Error("tuple not in the domain: singular argument of inv(" + node + ") at size " +
                std::to_string(size)),
          node_(node) {}

    const std::string& node() const { return node_; }

private:
    std::string node_;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class SingularOverM : public Error {
public:
    using Error::Error;
};

class NoSolution : public Error {
public:
    NoSolution(std::size_t row, const std::string& detail)
        : Error("right-linear system has no solution: residual row " + std::to_string(row) +
                " is nonzero" + (detail.empty() ? "" : " (" + detail + ")")),
          row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class Inconclusive : public Error {
public:
    using Error::Error;
};

/// An identity asserted after elimination failed under re-verification; rerun with another seed.
class SeedRetry : public Error {
public:
    explicit SeedRetry(const std::string& what) : Error(what + "; rerun with a different --seed") {}
};

class ActionInvalid : public Error {
public:
    using Error::Error;
};

class GroupInvalid : public Error {
public:
    using Error::Error;
};

class CharDivides : public Error {
public:
    CharDivides(unsigned long long characteristic, std::size_t order)
        : Error("characteristic " + std::to_string(characteristic) + " divides the group order " +
                std::to_string(order)) {}
};

class NonlinearAction : public Error {
public:
    using Error::Error;
};

class SplittingFieldNeeded : public Error {
public:
    using Error::Error;
};

class DegreeCapExceeded : public Error {
public:
    DegreeCapExceeded(std::size_t degree, std::size_t basis_size)
        : Error("basis still growing at degree " + std::to_string(degree) + " (|B| = " +
                std::to_string(basis_size) + "); raise --max-degree") {}
};

class CoverageGap : public Error {
public:
    using Error::Error;
};

class ParamError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace skewfield

#endif
