#pragma once

#include "tdef/lattice.hpp"

#include <set>
#include <tuple>

namespace tdef {

// Rational polyhedral cone. `rays` is a canonical generating set: the lex
// sorted extreme rays when pointed; with a lineality space L it holds the
// +/- Hermite basis of L together with one primitive generator (projected
// onto L^perp) per minimal face above L.
struct Cone {
  std::size_t dim = 0;
  std::vector<IntVec> rays;
  std::vector<IntVec> facets;    // a with <a,x> >= 0, primitive, in span(rays)
  std::vector<IntVec> equations; // basis of span(rays)^perp
  std::vector<IntVec> lineality; // Hermite basis of C n -C

  static Cone from_generators(std::size_t dim, const std::vector<IntVec> &gens);
  static Cone from_generators(std::size_t dim, const std::vector<RatVec> &gens);
  // {x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs}
  static Cone from_hrep(std::size_t dim, const std::vector<IntVec> &ineqs,
                        const std::vector<IntVec> &eqs = {});

  std::size_t cone_dim() const { return dim - equations.size(); }
  bool is_full_dim() const { return equations.empty(); }
  bool is_strongly_convex() const { return lineality.empty(); }
  bool contains(const IntVec &x) const;
  bool contains(const RatVec &x) const;
  bool in_relint(const RatVec &x) const;
  IntVec relint_point() const; // sum of rays
  // Faces as index sets into `rays`, including the cone itself.
  std::vector<std::vector<std::size_t>> face_index_sets() const;
  std::vector<Cone> faces() const;
  bool has_face(const Cone &F) const;

  bool operator==(const Cone &o) const { return dim == o.dim && rays == o.rays; }
  bool operator<(const Cone &o) const { return rays < o.rays; }
};

Cone dual_cone(const Cone &C);
Cone intersect(const Cone &A, const Cone &B);

struct HalfSpace {
  IntVec a;
  Int b; // <a,x> >= b, or = b for equations
};
struct HRep {
  std::vector<HalfSpace> ineqs, eqs;
};

// conv(vertices) + cone(rays). Empty iff no vertices. With lines present the
// vertices are the canonical minimal-face representatives (see Cone).
struct Polyhedron {
  std::size_t dim = 0;
  std::vector<RatVec> vertices;
  std::vector<IntVec> rays;

  static Polyhedron from_points(std::size_t dim, const std::vector<RatVec> &pts,
                                const std::vector<IntVec> &rays = {});
  static Polyhedron point(const RatVec &p) { return from_points(p.size(), {p}); }
  static Polyhedron empty(std::size_t dim) { return Polyhedron{dim, {}, {}}; }

  bool is_empty() const { return vertices.empty(); }
  bool is_bounded() const { return rays.empty(); }
  Cone homogenization() const; // cone over P x {1} in dim+1

  bool operator==(const Polyhedron &o) const {
    return dim == o.dim && vertices == o.vertices && rays == o.rays;
  }
  bool operator!=(const Polyhedron &o) const { return !(*this == o); }
  bool operator<(const Polyhedron &o) const {
    return std::tie(vertices, rays) < std::tie(o.vertices, o.rays);
  }
};

HRep hrep(const Polyhedron &P);
Polyhedron from_hrep(std::size_t dim, const HRep &H);

Polyhedron minkowski_sum(const Polyhedron &P, const Polyhedron &Q);
Polyhedron minkowski_sum(const std::vector<Polyhedron> &Ps, std::size_t dim);
Polyhedron intersect(const Polyhedron &P, const Polyhedron &Q);
Polyhedron cone_as_polyhedron(const Cone &C);
// sigma(u) = C cap {<u,x> = -1}
Polyhedron slice(const Cone &C, const IntVec &u);
Polyhedron compact_part(const Polyhedron &P);
Polyhedron translate(const Polyhedron &P, const RatVec &v);
Polyhedron scale(const Polyhedron &P, const Rat &s);
Cone recession_cone(const Polyhedron &P);

struct Extremum {
  Rat value;
  Int floor;
};
Extremum min_value(const IntVec &u, const Polyhedron &P);
Extremum max_value(const IntVec &u, const Polyhedron &P);
Extremum min_value(const RatVec &u, const Polyhedron &P);
Extremum max_value(const RatVec &u, const Polyhedron &P);
// Face on which u attains its minimum; requires u bounded below.
Polyhedron min_face(const Polyhedron &P, const RatVec &u);

// Nonempty faces including P itself, in canonical order.
std::vector<Polyhedron> faces(const Polyhedron &P);
std::vector<Polyhedron> facets(const Polyhedron &P);
bool is_face(const Polyhedron &F, const Polyhedron &P);
bool contains(const Polyhedron &P, const RatVec &x);
bool contains(const Polyhedron &P, const Polyhedron &Q);
bool in_relint(const Polyhedron &P, const RatVec &x);
RatVec relint_point(const Polyhedron &P);
int affine_dim(const Polyhedron &P); // -1 for empty
bool is_lattice(const Polyhedron &P);
bool has_lattice_apex(const Polyhedron &P);

struct Homothety {
  Rat delta;
  RatVec shift;
};
// Q = delta * P + shift with delta > 0; none for cones or mismatches.
std::optional<Homothety> is_homothetic(const Polyhedron &P, const Polyhedron &Q);

std::vector<IntVec> lattice_points(const Polyhedron &P);
std::vector<IntVec> relative_interior_lattice_points(const Polyhedron &P);

std::vector<IntVec> hilbert_basis(const Cone &C);

std::string to_string(const Polyhedron &P);
std::string to_string(const Cone &C);

} // namespace tdef
