#ifndef ZK_ERROR_HPP
#define ZK_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zk {

enum class ErrKind {
    NotPrime,
    BudgetExceeded,
    DivisionByZero,
    ParseError,
    DegenerateSystem,
    DegenerateFactor,
    ArityError,
    MixedArity,
    NegativeCount,
    Unstable,
    ZeroEigenvalue,
    NonUniformCount,
    NotPolynomialCount,
    ExcludedPrime,
    NotInM,
    PoleAt,
    MultipleGenerators,
    UnknownName,
};

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

  private:
    ErrKind kind_;
};

// Cross-prime disagreement of spectral count data; carries the witness pair.
class NonUniformCountError : public Error {
  public:
    NonUniformCountError(std::uint64_t p1, std::uint64_t p2, const std::string& msg)
        : Error(ErrKind::NonUniformCount, msg), p1_(p1), p2_(p2) {}
    std::uint64_t p1() const { return p1_; }
    std::uint64_t p2() const { return p2_; }

  private:
    std::uint64_t p1_, p2_;
};

class ParseError : public Error {
  public:
    ParseError(int line, int column, const std::string& msg)
        : Error(ErrKind::ParseError,
                "parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_, column_;
};

}  // namespace zk

#endif
