#pragma once

#include "tdef/deform.hpp"

namespace tdef {

// Altmann's graded piece T^1(-R) of the affine toric variety of sigma.
struct T1Piece {
  std::vector<IntVec> hilbert;          // S, the Hilbert basis of sigma^v
  std::vector<IntVec> edges;            // a_l
  std::vector<IndexSet> sets;           // S_l^R as indices into `hilbert`
  std::vector<RatVec> union_relations;  // basis of L(union S_l^R)
  std::size_t dimension = 0;
};
// L(A) = relations sum c_j s_j = 0 supported on A
std::vector<RatVec> relations(const std::vector<IntVec> &S, const IndexSet &support);
T1Piece t1_affine(const Cone &sigma, const IntVec &R);
std::size_t t1_affine_dim(const Cone &sigma, const IntVec &R);
// degrees R where T^1(-R) can be nonzero: 1 <= <R, a_l> <= max <S, a_l> (2-dimensional cones)
std::vector<IntVec> t1_support_box(const Cone &sigma);
std::size_t t1_total(const Cone &sigma);

struct KSFunctional {
  std::size_t summand = 0;
  std::vector<Int> coefficients; // c'_j = -floor(min <s_j, Q_i>)
  Rat evaluate(const RatVec &c) const;
};
// functionals 0..k for sigma(u) = Q_0 + ... + Q_k
std::vector<KSFunctional> ks_functional(const Cone &sigma, const IntVec &u, const std::vector<Polyhedron> &summands);

struct KSReport {
  bool trivial = false;      // functional criterion
  bool structural = false;   // the lattice-apex / homothety criterion
  std::vector<RatVec> basis; // of L(union S_l^{-u})
  std::vector<std::vector<Rat>> values; // values[i][b]
};
// Throws std::logic_error when the two criteria disagree.
KSReport ks_report(const Cone &sigma, const IntVec &u, const std::vector<Polyhedron> &summands);
bool ks_trivial(const Cone &sigma, const IntVec &u, const std::vector<Polyhedron> &summands);

struct H1Piece {
  IntVec u;
  std::size_t rho = 0;
  std::vector<IndexSet> components;  // ray indices, C_0 first
  std::vector<int> cone_component;   // per maximal cone, -1 when it meets none
  std::size_t dimension = 0;
};
H1Piece h1_components(const Fan &F, const IntVec &u, std::size_t rho);
// dim of the degree-u Cech H^1 of O(D_rho) on the cover by maximal cones
std::size_t h1_graded_cech_oracle(const Fan &F, std::size_t rho, const IntVec &u);
// sum over rho and u in `box` of h1_components
std::size_t h1_sweep(const Fan &F, const std::vector<IntVec> &box);

struct ReflexiveTerm {
  Polyhedron gamma, gamma_star;
  std::size_t interior_points = 0, interior_rays = 0;
};
struct ReflexiveH1 {
  Polyhedron delta, delta_star;
  std::vector<ReflexiveTerm> terms; // every codim-2 face of Delta
  std::size_t total = 0;
};
ReflexiveH1 h1_total_reflexive(const Fan &F);

struct CocycleReport {
  IntVec u;
  std::size_t rho = 0, component = 0;
  std::string tag;                  // "x^u * x_rho d/dx_rho" rendered
  std::map<std::pair<std::size_t, std::size_t>, int> delta; // nonzero entries over j0 < j1
  IndexSet cover0, cover1;          // rays whose product is nonzero on U_0, U_1
};
CocycleReport cocycle_report(const Fan &F, const IntVec &u, std::size_t rho, std::size_t component);
// the cover cocycle pulled back along X_sigma_j -> U_0 or U_1
std::map<std::pair<std::size_t, std::size_t>, int> refine_to_cones(const Fan &F, const CocycleReport &r);

} // namespace tdef
