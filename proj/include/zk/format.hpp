#ifndef ZK_FORMAT_HPP
#define ZK_FORMAT_HPP

#include <string>

#include "zk/geom.hpp"
#include "zk/localmap.hpp"
#include "zk/mring.hpp"
#include "zk/ratfun.hpp"
#include "zk/weil.hpp"

namespace zk {

// Deterministic, byte-stable renderings. Laurent polynomials print in
// ascending (total degree, then lexicographic) monomial order; polynomials
// in s print in descending order.
std::string format_rat(const Rat& r);
std::string format_laurent(const LaurentPoly& p);
std::string format_yrational(const YRational& w);
std::string format_cyclo(const CycloRational& w);
std::string format_polys(const PolyS& p);
std::string format_rats(const RatS& r);
std::string format_spectral(const std::vector<SpectralTerm>& spec);
std::string format_intpoly(const IntPoly& p);
std::string format_constructible(const ConstructibleSet& set);
std::string format_formula_file(const LocalMapFormula& formula);

}  // namespace zk

#endif
