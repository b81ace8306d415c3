#pragma once

#include "tdef/deform.hpp"

namespace tdef {

// {n : <m, n> >= -1 for all m in P}; 0 must be interior to P.
Polyhedron dual_polytope(const Polyhedron &P);
bool is_reflexive(const Polyhedron &P);

struct ReflexivePolytope {
  Polyhedron polytope, dual;
  std::vector<Polyhedron> faces;      // proper nonempty faces Gamma of the polytope
  std::vector<Polyhedron> dual_faces; // Gamma*, parallel to `faces`
};
ReflexivePolytope reflexive_polytope(const Polyhedron &P);
// Gamma* = {n in P* : <m, n> = -1 for all m in Gamma}
Polyhedron dual_face(const Polyhedron &dual, const Polyhedron &gamma);

// Cones over the proper faces of a reflexive polytope; rays are its vertices.
Fan face_fan(const Polyhedron &P);
// Same maximal cones, compared as sets of ray vectors.
bool same_fan(const Fan &A, const Fan &B);

struct FanoTerm {
  std::string parameter; // l_<i>_<j>
  std::size_t point = 0; // index into FanoFamily::points
  Monomial monomial;     // x^{u~} times the minus monomial
};
struct FanoEquation {
  Binomial binomial;
  std::vector<FanoTerm> terms;
};
std::string render(const FanoEquation &e);

struct FanoFamily {
  ReflexivePolytope delta;
  std::vector<Polyhedron> summands; // Delta*_0..Delta*_k
  Decomp decomp;
  ExtFan ext;
  std::vector<IntVec> points;     // the nonzero lattice points of Delta; u_j is points[j-1]
  std::vector<std::size_t> faces; // face of Delta holding each point in its relative interior
  std::vector<IntVec> lifts;      // u~ = u - sum min<u, Delta*_l> e_l*
  std::vector<FanoEquation> equations;
  std::size_t parameter_count = 0;
};
// One parameter per summand and nonzero lattice point of Delta, over the face
// fan of Delta* with the induced face decompositions.
FanoFamily fano_family(const Polyhedron &Delta, const std::vector<Polyhedron> &summands);
// The same equations over a refinement: `F` subdivides the face fan and `D`
// decomposes a subdivision of the boundary of Delta* with Q_l inside Delta*_l.
FanoFamily fano_family(const Polyhedron &Delta, const std::vector<Polyhedron> &summands, const Fan &F,
                       const Decomp &D);

struct CayleyReflexive {
  CayleyPolytope cayley;
  Polyhedron dual;
  Fan mixed_fan; // cones over the facets meeting every shifted summand
};
// Throws ConditionError("reflexive") when the Cayley hull is not reflexive.
CayleyReflexive cayley_reflexive(const std::vector<Polyhedron> &summands);

} // namespace tdef
