#pragma once

#include "tdef/cox.hpp"
#include "tdef/decomp.hpp"

namespace tdef {

// Where a ray of an extended cone came from.
struct RayOrigin {
  enum class Kind { BaseRay, Vertex, Recession } kind = Kind::BaseRay;
  std::size_t summand = 0; // for Vertex / Recession
  RatVec source;           // the generator in N before lifting
};
std::string to_string(const RayOrigin &o);

struct SigmaTilde {
  Cone cone;                     // in N + Z^k
  std::vector<RayOrigin> origin; // parallel to cone.rays
};
// sigma~ = <sigma, Q_0 - sum e_i, Q_1 + e_1, ..., Q_k + e_k>
SigmaTilde build_sigma_tilde(const Cone &sigma, const std::vector<Polyhedron> &summands);

struct ExtFan {
  Fan base;
  std::size_t k = 0;
  Fan fan;                       // maximal cones parallel to base.cones
  std::vector<RayOrigin> origin; // parallel to fan.rays
  IntMat pairing;                // k x |fan.rays|, entries <e_i*, v_xi>
};
// Checks every precondition (validity, compatibility, 0 not in |Q|, (*),
// separation) and throws ConditionError naming the first failure.
ExtFan build_ext_fan(const Fan &F, const Decomp &D);
// Put the rays in the given order (must be a permutation of the rays).
ExtFan relabel_rays(const ExtFan &E, const std::vector<IntVec> &order);
// Base fan -> extended fan under the inclusion N -> N + Z^k.
HomogeneousMap embedding_map(const ExtFan &E);

struct Binomial {
  std::size_t index = 0; // 1..k
  Monomial plus, minus;
};
std::vector<Binomial> ci_equations(const ExtFan &E);
std::string render(const Binomial &b);

struct CiCertificate {
  bool mixed_dominating = false, saturated = false;
  bool ok() const { return mixed_dominating && saturated; }
};
CiCertificate verify_ci_toric(const ExtFan &E);

// u~ = u - sum floor(min<u, Q_i>) e_i*
IntVec lift_u(const IntVec &u, const Decomp &D);

struct FamilyEquation {
  Binomial binomial;
  Monomial deformation;
  std::string parameter;
};
struct Family {
  std::vector<FamilyEquation> equations;
  IntVec utilde;
};
std::string render(const FamilyEquation &e);

// binomial - l_i * x^u~ * (minus side) per equation. Parameters are named
// l_1..l_k unless `names` is given.
Family deformation_family(const ExtFan &E, const IntVec &u, const Decomp &D,
                          const std::vector<std::string> &names = {});

// Connected components of |Sigma(u)^c| minus v_rho0, as ray-index sets of the
// vertices they contain. C_0 is the component holding the smallest ray index.
std::vector<IndexSet> slice_components(const Fan &F, const IntVec &u, std::size_t rho0);
// index of the component a cone meets, or -1
int cone_component(const Fan &F, const IntVec &u, std::size_t rho0, const std::vector<IndexSet> &comps,
                   const IndexSet &cone);

// Decomposition of Sigma(u) by the components C_0..C_k; k = 0 when removing
// v_rho0 does not disconnect.
Decomp canonical_decomposition(const Fan &F, const IntVec &u, std::size_t rho0);

struct SimplicialFamily {
  Decomp decomp;
  std::optional<ExtFan> ext; // absent when k = 0
  Family family;
};
// The family of the component decomposition; the rays are cross-checked
// against the closed-form generators.
SimplicialFamily simplicial_family(const Fan &F, const IntVec &u, std::size_t rho0);
// v_xi0, v_xi_i, v_xi_rho of the extended fan for (u, rho0)
std::vector<IntVec> simplicial_rays(const Fan &F, const IntVec &u, std::size_t rho0);

} // namespace tdef
