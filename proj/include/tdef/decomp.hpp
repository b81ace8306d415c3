#pragma once

#include "tdef/fan.hpp"

namespace tdef {

// Ordered decomposition Q = Q_0 + ... + Q_k of every maximal cell.
struct Decomp {
  Complex base;
  std::size_t k = 0;
  std::vector<std::vector<Polyhedron>> summands; // per base cell, k+1 entries
};

Diagnostics validate_decomp(const Decomp &D);

// Sum of the inward facet normals of `cell` that are tight on `face`; its
// minimum over `cell` is attained exactly on `face`.
RatVec exposing_functional(const Polyhedron &cell, const Polyhedron &face);
std::vector<Polyhedron> induced_face_decomp(const Decomp &D, std::size_t cell, const Polyhedron &face);
std::vector<RatVec> induced_vertex_decomp(const Decomp &D, std::size_t cell, const RatVec &vertex);

struct StarReport {
  bool ok = true;
  std::vector<RatVec> offending; // vertices with two or more non-lattice summands
};
StarReport check_condition_star(const Decomp &D);

// Q^sigma with its induced decomposition; all entries empty when Q^sigma is.
struct ConeDecomp {
  IndexSet cone;
  Polyhedron part;
  std::vector<Polyhedron> summands;
};
ConeDecomp cone_decomposition(const Fan &F, const Decomp &D, const IndexSet &cone);

// Generators of <sigma, Q_0 - sum e_i, Q_1 + e_1, ..., Q_k + e_k> in N + Z^k,
// unbounded summands contributing their recession rays at height 0.
std::vector<RatVec> sigma_tilde_generators(const Cone &sigma, const std::vector<Polyhedron> &summands,
                                           std::size_t k);

struct SeparationWitness {
  IndexSet cone1, cone2;
  RatVec m;      // in M_Q
  RatVec mtilde; // m + sum a_i e_i*
};
struct SeparationReport {
  bool ok = true;
  std::string blocking; // description of the first failing pair
  std::vector<SeparationWitness> witnesses;
};
SeparationReport is_sigma_separated(const Fan &F, const Decomp &D);

struct CayleyPolytope {
  std::size_t d = 0, k = 0;
  Polyhedron hull;          // in dimension d + k
  std::vector<std::size_t> tags; // summand index of each hull vertex
};
// Shifts: r_0 = -(e_1 + ... + e_k), r_i = e_i.
CayleyPolytope cayley_polytope(const std::vector<Polyhedron> &summands);
std::optional<std::size_t> cayley_tag(const RatVec &point, std::size_t d, std::size_t k);
// Cells of a subdivision of a Cayley polytope -> mixed subdivision of the sum.
Decomp mixed_subdivision_from_cayley(const std::vector<Polyhedron> &cells, std::size_t d, std::size_t k);

} // namespace tdef
