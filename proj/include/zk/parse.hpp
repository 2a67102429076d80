#ifndef ZK_PARSE_HPP
#define ZK_PARSE_HPP

#include <string>

#include "zk/geom.hpp"
#include "zk/localmap.hpp"
#include "zk/oracles.hpp"
#include "zk/ratfun.hpp"

namespace zk {

// Laurent polynomial in X, Y1..Ym: integer coefficients, + - * ^ and
// parentheses; negative exponents directly on variables (X^-1).
LaurentPoly parse_laurent(const std::string& text, int m, int base_line = 1, int base_col = 1);

// numerator '/' '(' (1 - X^a*Y1^b1*...)^e '*' ... ')'
// Errors: ParseError with position, DegenerateFactor.
CycloRational parse_cyclo(const std::string& text, int m, int base_line = 1, int base_col = 1);

// Builtin expression (point, affine(n), torus(n), product/union/difference)
// or an inline system "vars x,y ; eq <poly> ; ineq <poly> ; ...".
ConstructibleSet parse_constructible(const std::string& text, int base_line = 1, int base_col = 1);

LocalMapFormula parse_formula_text(const std::string& text);
LocalMapFormula parse_formula_file(const std::string& path);

AlgebraPresentation parse_algebra_text(const std::string& text);
AlgebraPresentation parse_algebra_file(const std::string& path);

}  // namespace zk

#endif
