#include "tdef/fano.hpp"

#include <algorithm>
#include <set>

namespace tdef {

namespace {

void require_polytope(const Polyhedron &P, const std::string &who) {
  if (P.is_empty() || !P.is_bounded()) throw std::invalid_argument(who + ": expected a nonempty polytope");
}

// facet normals a with <a, x> >= b, b < 0 when 0 is interior
HRep interior_hrep(const Polyhedron &P) {
  require_polytope(P, "dual_polytope");
  HRep H = hrep(P);
  if (!H.eqs.empty()) throw ConditionError("0-interior", "polytope " + to_string(P) + " is not full-dimensional");
  for (const auto &h : H.ineqs)
    if (h.b >= 0) throw ConditionError("0-interior", "0 is not interior to " + to_string(P));
  return H;
}

std::set<std::vector<IntVec>> cone_sets(const Fan &F) {
  std::set<std::vector<IntVec>> out;
  for (const auto &s : F.cones) {
    std::vector<IntVec> rs;
    for (auto r : s) rs.push_back(F.rays[r]);
    std::sort(rs.begin(), rs.end());
    out.insert(rs);
  }
  return out;
}

IndexSet vertices_on(const Polyhedron &P, const Polyhedron &F) {
  IndexSet out;
  for (std::size_t i = 0; i < P.vertices.size(); ++i)
    if (contains(F, P.vertices[i])) out.push_back(i);
  return out;
}

void check_summands(const Polyhedron &dual, const std::vector<Polyhedron> &summands) {
  if (summands.size() < 2) throw std::invalid_argument("fano_family: need at least two summands");
  for (std::size_t l = 0; l < summands.size(); ++l) {
    if (summands[l].dim != dual.dim) throw std::invalid_argument("fano_family: summand dimension mismatch");
    require_polytope(summands[l], "fano_family");
    if (!is_lattice(summands[l]))
      throw ConditionError("lattice", "summand " + std::to_string(l) + " = " + to_string(summands[l]) +
                                          " is not a lattice polytope");
  }
  Polyhedron sum = minkowski_sum(summands, dual.dim);
  if (sum != dual)
    throw ConditionError("sum", "the summands add up to " + to_string(sum) + ", not " + to_string(dual));
}

void fill_points(FanoFamily &fam) {
  const auto &R = fam.delta;
  for (const auto &p : lattice_points(R.polytope))
    if (!is_zero(p)) fam.points.push_back(p);
  for (const auto &u : fam.points) {
    RatVec ur = to_rat(u);
    std::size_t f = 0;
    while (f < R.faces.size() && !in_relint(R.faces[f], ur)) ++f;
    // reflexive: 0 is the only interior point
    if (f == R.faces.size()) throw std::logic_error("fano_family: nonzero lattice point " + to_string(u) + " is interior");
    fam.faces.push_back(f);
    IntVec ut = u;
    for (std::size_t l = 1; l < fam.summands.size(); ++l) ut.push_back(-min_value(u, fam.summands[l]).floor);
    fam.lifts.push_back(ut);
  }
}

void fill_equations(FanoFamily &fam) {
  const ExtFan &E = fam.ext;
  for (const auto &b : ci_equations(E)) {
    FanoEquation eq{b, {}};
    for (std::size_t j = 0; j < fam.points.size(); ++j) {
      FanoTerm t{"l_" + std::to_string(b.index) + "_" + std::to_string(j + 1), j,
                 x_pow(E.fan.rays, fam.lifts[j]) * b.minus};
      if (!is_nonnegative(t.monomial))
        throw std::logic_error("fano_family: negative exponent in " + render(t.monomial));
      eq.terms.push_back(t);
    }
    fam.equations.push_back(eq);
  }
  fam.parameter_count = E.k * fam.points.size();
}

} // namespace

Polyhedron dual_polytope(const Polyhedron &P) {
  HRep H = interior_hrep(P);
  std::vector<RatVec> pts;
  for (const auto &h : H.ineqs) pts.push_back(Rat(1, 1) / Rat(-h.b) * to_rat(h.a));
  return Polyhedron::from_points(P.dim, pts);
}

bool is_reflexive(const Polyhedron &P) { return is_lattice(P) && is_lattice(dual_polytope(P)); }

Polyhedron dual_face(const Polyhedron &dual, const Polyhedron &gamma) {
  HRep H = hrep(dual);
  for (const auto &m : gamma.vertices) H.eqs.push_back({to_int(m), Int(-1)});
  return from_hrep(dual.dim, H);
}

ReflexivePolytope reflexive_polytope(const Polyhedron &P) {
  ReflexivePolytope R;
  R.polytope = P;
  R.dual = dual_polytope(P);
  if (!is_lattice(P) || !is_lattice(R.dual))
    throw ConditionError("reflexive", to_string(P) + " is not reflexive (dual " + to_string(R.dual) + ")");
  for (auto &G : faces(P)) {
    if (G == P) continue;
    R.dual_faces.push_back(dual_face(R.dual, G));
    R.faces.push_back(std::move(G));
  }
  return R;
}

Fan face_fan(const Polyhedron &P) {
  require_polytope(P, "face_fan");
  if (!is_reflexive(P)) throw ConditionError("reflexive", to_string(P) + " is not reflexive");
  Fan F{P.dim, {}, {}};
  for (const auto &v : P.vertices) F.rays.push_back(to_int(v));
  for (const auto &f : facets(P)) F.cones.push_back(vertices_on(P, f));
  std::sort(F.cones.begin(), F.cones.end());
  return F;
}

bool same_fan(const Fan &A, const Fan &B) {
  if (A.dim != B.dim) return false;
  std::vector<IntVec> ra = A.rays, rb = B.rays;
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  return ra == rb && cone_sets(A) == cone_sets(B);
}

std::string render(const FanoEquation &e) {
  std::string s = render(e.binomial.plus) + " - " + render(e.binomial.minus);
  for (const auto &t : e.terms) {
    s += " + " + t.parameter;
    if (!t.monomial.empty()) s += "*" + render(t.monomial);
  }
  return s + " = 0";
}

FanoFamily fano_family(const Polyhedron &Delta, const std::vector<Polyhedron> &summands) {
  FanoFamily fam;
  fam.delta = reflexive_polytope(Delta);
  const Polyhedron &dual = fam.delta.dual;
  check_summands(dual, summands);
  fam.summands = summands;
  std::size_t k = summands.size() - 1;
  Fan F = face_fan(dual);
  fam.decomp = Decomp{Complex{dual.dim, {}}, k, {}};
  HRep H = hrep(dual);
  for (const auto &c : F.cones) {
    // the facet of Delta* over cone c and the vertex of Delta exposing it
    std::vector<RatVec> pts;
    for (auto r : c) pts.push_back(to_rat(F.rays[r]));
    Polyhedron facet = Polyhedron::from_points(dual.dim, pts);
    RatVec m = exposing_functional(dual, facet);
    std::vector<Polyhedron> parts;
    for (const auto &S : summands) parts.push_back(min_face(S, m));
    if (minkowski_sum(parts, dual.dim) != facet)
      throw std::logic_error("fano_family: induced decomposition does not add up on " + to_string(facet));
    fam.decomp.base.cells.push_back(facet);
    fam.decomp.summands.push_back(parts);
  }
  fam.ext = build_ext_fan(F, fam.decomp);
  fill_points(fam);
  fill_equations(fam);
  return fam;
}

FanoFamily fano_family(const Polyhedron &Delta, const std::vector<Polyhedron> &summands, const Fan &F,
                       const Decomp &D) {
  FanoFamily fam;
  fam.delta = reflexive_polytope(Delta);
  const Polyhedron &dual = fam.delta.dual;
  check_summands(dual, summands);
  fam.summands = summands;
  if (D.k + 1 != summands.size()) throw std::invalid_argument("fano_family: decomposition has the wrong k");
  std::vector<Polyhedron> bd = facets(dual);
  for (std::size_t c = 0; c < D.base.cells.size(); ++c) {
    const Polyhedron &cell = D.base.cells[c];
    if (std::none_of(bd.begin(), bd.end(), [&](const Polyhedron &f) { return contains(f, cell); }))
      throw ConditionError("boundary", "cell " + to_string(cell) + " is not on the boundary of " + to_string(dual));
    for (std::size_t l = 0; l < summands.size(); ++l)
      if (!contains(summands[l], D.summands[c][l]))
        throw ConditionError("summand", "piece " + to_string(D.summands[c][l]) + " of cell " + to_string(cell) +
                                            " is not inside summand " + std::to_string(l));
  }
  Fan coarse = face_fan(dual);
  for (const auto &s : F.cones) {
    Cone C = F.cone(s);
    bool inside = std::any_of(coarse.cones.begin(), coarse.cones.end(), [&](const IndexSet &t) {
      Cone T = coarse.cone(t);
      return std::all_of(C.rays.begin(), C.rays.end(), [&](const IntVec &r) { return T.contains(r); });
    });
    if (!inside) throw ConditionError("refinement", "cone " + to_string(C) + " does not refine the face fan");
  }
  fam.decomp = D;
  fam.ext = build_ext_fan(F, D);
  fill_points(fam);
  fill_equations(fam);
  return fam;
}

CayleyReflexive cayley_reflexive(const std::vector<Polyhedron> &summands) {
  CayleyReflexive out;
  out.cayley = cayley_polytope(summands);
  const Polyhedron &P = out.cayley.hull;
  out.dual = dual_polytope(P);
  if (!is_lattice(P) || !is_lattice(out.dual))
    throw ConditionError("reflexive", "Cayley hull " + to_string(P) + " is not reflexive");
  std::size_t k = out.cayley.k;
  out.mixed_fan = Fan{P.dim, {}, {}};
  for (const auto &v : P.vertices) out.mixed_fan.rays.push_back(to_int(v));
  for (const auto &f : facets(P)) {
    IndexSet s = vertices_on(P, f);
    std::vector<bool> seen(k + 1, false);
    for (auto i : s) seen[out.cayley.tags[i]] = true;
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) out.mixed_fan.cones.push_back(s);
  }
  std::sort(out.mixed_fan.cones.begin(), out.mixed_fan.cones.end());
  return out;
}

} // namespace tdef
