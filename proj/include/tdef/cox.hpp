#pragma once

#include "tdef/fan.hpp"

#include <map>

namespace tdef {

// Laurent monomial: ray index (0-based) -> exponent. Zero exponents are never stored.
using Monomial = std::map<std::size_t, Int>;

Monomial make_monomial(const IntVec &exps);
IntVec exponent_vector(const Monomial &m, std::size_t nvars);
Monomial operator*(const Monomial &a, const Monomial &b);
bool is_nonnegative(const Monomial &m);
// "x_1^2*x_3"; "1" for the empty product
std::string render(const Monomial &m, const std::string &var = "x");

// x^u = prod x_rho^<u, v_rho>
Monomial x_pow(const std::vector<IntVec> &rays, const IntVec &u);

AbelianPresentation class_group(const Fan &F);
IntVec degree(const Monomial &m, const Fan &F);
IntVec degree(const Monomial &m, const AbelianPresentation &cl, std::size_t nvars);

std::vector<Monomial> irrelevant_generators(const Fan &F);

// Target variable xi -> prod_rho y_rho^{a_{rho,xi}}.
struct HomogeneousMap {
  std::size_t sourceVars = 0;
  std::vector<Monomial> images; // one per target ray
};
HomogeneousMap toric_morphism_homog(const Fan &F1, const Fan &F2, const IntMat &phi);
HomogeneousMap compose(const HomogeneousMap &first, const HomogeneousMap &second);
// "(y_1, y_2) -> (y_1^2, y_2^2, y_1*y_2^3)"
std::string render(const HomogeneousMap &h, const std::string &var = "y");

} // namespace tdef
