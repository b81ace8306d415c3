#pragma once

#include "tdef/polyhedra.hpp"

namespace tdef {

struct Diagnostic {
  std::string label; // condition name, e.g. "fan" or "face-compatibility"
  std::string message;
};
using Diagnostics = std::vector<Diagnostic>;
std::string to_string(const Diagnostics &d);

using IndexSet = std::vector<std::size_t>; // sorted

// Rays keep their input order: ray i is Cox variable x_{i+1}.
struct Fan {
  std::size_t dim = 0;
  std::vector<IntVec> rays;
  std::vector<IndexSet> cones; // maximal cones

  Cone cone(const IndexSet &s) const;
  Cone cone(std::size_t i) const { return cone(cones.at(i)); }
  std::optional<std::size_t> ray_index(const IntVec &r) const;
  // every cone of the fan as a ray-index set, the zero cone included
  std::vector<IndexSet> face_closure() const;
};

Diagnostics validate_fan(const Fan &F);

struct FanProperties {
  bool complete = false, simplicial = false;
};
FanProperties fan_properties(const Fan &F);

// Polyhedral complex stored by maximal cells.
struct Complex {
  std::size_t dim = 0;
  std::vector<Polyhedron> cells;
  std::vector<Polyhedron> all_cells() const; // face closure, canonical order
};

Diagnostics validate_complex(const Complex &K);

// {sigma(u) : sigma in F}, maximal cells only
Complex fan_slice(const Fan &F, const IntVec &u);

bool cone_contains(const Cone &C, const Polyhedron &P);
// Q^sigma = sigma cap |K| when it is a cell of K (possibly empty); none otherwise.
std::optional<Polyhedron> sigma_part(const Complex &K, const Cone &sigma);
bool is_sigma_compatible(const Complex &K, const Fan &F);

} // namespace tdef
