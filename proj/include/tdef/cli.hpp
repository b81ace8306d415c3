#pragma once

#include "tdef/deform.hpp"

#include <iosfwd>

namespace tdef {

// Malformed workspace: bad JSON, missing schema tag, bad index or rational.
struct WorkspaceError : std::runtime_error {
  std::string label;
  WorkspaceError(std::string l, const std::string &what)
    : std::runtime_error(l + ": " + what), label(std::move(l)) {}
};

inline constexpr const char *kWorkspaceSchema = "toric-deform-workspace/1";

struct Workspace {
  std::string name;
  std::size_t dim = 0;
  std::optional<Fan> fan;
  std::optional<Complex> complex; // cells of the decomposition when one is given
  std::optional<Decomp> decomp;
  std::vector<IntVec> ext_ray_order;

  struct Morphism {
    Fan source;
    IntMat matrix;
    std::string variable = "y";
  };
  std::optional<Morphism> morphism;

  std::optional<IntVec> u, R;
  std::optional<std::size_t> rho0;

  struct Cayley {
    std::vector<Polyhedron> summands, subdivision;
  };
  std::optional<Cayley> cayley;

  struct Reflexive {
    Polyhedron polytope;
    std::vector<Polyhedron> summands;
  };
  std::optional<Reflexive> reflexive;
};

Workspace parse_workspace(const std::string &text);
Workspace load_workspace(const std::string &path);

// Exit codes: 0 success, 1 validation failure, 2 parse failure.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace tdef
