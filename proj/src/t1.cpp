#include "tdef/t1.hpp"

#include <algorithm>
#include <array>

namespace tdef {

namespace {

std::vector<IntVec> edge_generators(const Cone &sigma) {
  if (!sigma.is_strongly_convex()) throw std::invalid_argument("T^1: cone is not strongly convex");
  if (sigma.dim > 3) throw std::invalid_argument("T^1: ambient dimension above 3");
  return sigma.rays;
}

IndexSet below(const std::vector<IntVec> &S, const IntVec &a, const Int &bound) {
  IndexSet out;
  for (std::size_t j = 0; j < S.size(); ++j)
    if (dot(S[j], a) < bound) out.push_back(j);
  return out;
}

IndexSet set_union(const std::vector<IndexSet> &sets) {
  IndexSet out;
  for (const auto &s : sets) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t rank_of(const std::vector<RatVec> &rows, std::size_t cols) {
  if (rows.empty()) return 0;
  RatMat M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
  return rank(M);
}

// a polyhedron with exactly one vertex, and that vertex a lattice point
bool lattice_apex_cone(const Polyhedron &P) { return P.vertices.size() == 1 && is_integral(P.vertices[0]); }

FanProperties require_complete(const Fan &F) {
  FanProperties fp;
  try {
    fp = fan_properties(F);
  } catch (const std::invalid_argument &) {
    throw ConditionError("fan", to_string(validate_fan(F)));
  }
  if (!fp.complete) throw ConditionError("fan", "the fan is not complete");
  return fp;
}

H1Piece components_of(const Fan &F, const IntVec &u, std::size_t rho) {
  H1Piece p{u, rho, {}, std::vector<int>(F.cones.size(), -1), 0};
  if (dot(u, F.rays[rho]) != -1) return p;
  p.components = slice_components(F, u, rho);
  for (std::size_t j = 0; j < F.cones.size(); ++j)
    p.cone_component[j] = cone_component(F, u, rho, p.components, F.cones[j]);
  p.dimension = p.components.empty() ? 0 : p.components.size() - 1;
  return p;
}

} // namespace

std::vector<RatVec> relations(const std::vector<IntVec> &S, const IndexSet &support) {
  if (support.empty() || S.empty()) return {};
  std::size_t d = S[0].size();
  RatMat A(d, support.size());
  for (std::size_t c = 0; c < support.size(); ++c)
    for (std::size_t r = 0; r < d; ++r) A(r, c) = S[support[c]][r];
  std::vector<RatVec> out;
  for (const auto &k : nullspace(A)) {
    RatVec full(S.size(), Rat(0));
    for (std::size_t c = 0; c < support.size(); ++c) full[support[c]] = k[c];
    out.push_back(full);
  }
  return out;
}

T1Piece t1_affine(const Cone &sigma, const IntVec &R) {
  T1Piece t;
  t.edges = edge_generators(sigma);
  t.hilbert = hilbert_basis(dual_cone(sigma));
  for (const auto &a : t.edges) t.sets.push_back(below(t.hilbert, a, dot(R, a)));
  t.union_relations = relations(t.hilbert, set_union(t.sets));
  std::vector<RatVec> sum;
  for (const auto &s : t.sets)
    for (auto &r : relations(t.hilbert, s)) sum.push_back(r);
  t.dimension = t.union_relations.size() - rank_of(sum, t.hilbert.size());
  return t;
}

std::size_t t1_affine_dim(const Cone &sigma, const IntVec &R) { return t1_affine(sigma, R).dimension; }

std::vector<IntVec> t1_support_box(const Cone &sigma) {
  if (sigma.dim != 2 || !sigma.is_full_dim()) throw std::invalid_argument("t1_support_box: needs a 2-dimensional cone");
  auto S = hilbert_basis(dual_cone(sigma));
  HRep H;
  for (const auto &a : edge_generators(sigma)) {
    Int top = 0;
    for (const auto &s : S) top = std::max(top, dot(s, a));
    // with <R, a> <= 0 the set S^R is empty; above the maximum it is all of S
    H.ineqs.push_back({a, Int(1)});
    H.ineqs.push_back({negate(a), -top});
  }
  return lattice_points(from_hrep(2, H));
}

std::size_t t1_total(const Cone &sigma) {
  std::size_t n = 0;
  for (const auto &R : t1_support_box(sigma)) n += t1_affine_dim(sigma, R);
  return n;
}

Rat KSFunctional::evaluate(const RatVec &c) const {
  if (c.size() != coefficients.size()) throw std::invalid_argument("KSFunctional: length mismatch");
  Rat v = 0;
  for (std::size_t j = 0; j < c.size(); ++j) v += Rat(coefficients[j]) * c[j];
  return v;
}

std::vector<KSFunctional> ks_functional(const Cone &sigma, const IntVec &u, const std::vector<Polyhedron> &summands) {
  if (summands.empty()) throw std::invalid_argument("ks_functional: no summands");
  std::size_t d = sigma.dim;
  Polyhedron P = slice(sigma, u);
  if (P.is_empty()) throw ConditionError("decomposition", "sigma(u) is empty");
  if (minkowski_sum(summands, d) != P) throw ConditionError("decomposition", "the summands do not add up to sigma(u)");
  Decomp one{Complex{d, {P}}, summands.size() - 1, {summands}};
  auto star = check_condition_star(one);
  if (!star.ok) throw ConditionError("(*)", "vertex " + to_string(star.offending[0]) + " has two non-lattice summands");
  auto S = hilbert_basis(dual_cone(sigma));
  std::vector<KSFunctional> out;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    KSFunctional f{i, {}};
    for (const auto &s : S) f.coefficients.push_back(-floor_rat(min_value(s, summands[i]).value));
    out.push_back(f);
  }
  return out;
}

KSReport ks_report(const Cone &sigma, const IntVec &u, const std::vector<Polyhedron> &summands) {
  auto fs = ks_functional(sigma, u, summands);
  KSReport r;
  T1Piece t = t1_affine(sigma, negate(u));
  r.basis = t.union_relations;
  r.trivial = true;
  for (const auto &f : fs) {
    std::vector<Rat> vals;
    for (const auto &b : r.basis) {
      vals.push_back(f.evaluate(b));
      if (vals.back() != 0) r.trivial = false;
    }
    r.values.push_back(vals);
  }
  std::size_t k = summands.size() - 1;
  std::size_t apex = std::count_if(summands.begin(), summands.end(), lattice_apex_cone);
  Polyhedron P = slice(sigma, u);
  bool homothetic = is_lattice(P) && std::all_of(summands.begin(), summands.end(), [&](const Polyhedron &q) {
                      return lattice_apex_cone(q) || is_homothetic(P, q).has_value();
                    });
  r.structural = apex >= k || homothetic;
  if (r.trivial != r.structural)
    throw std::logic_error(std::string("ks_trivial: the functional criterion says ") +
                           (r.trivial ? "trivial" : "nontrivial") + " but the structural criterion disagrees");
  return r;
}

bool ks_trivial(const Cone &sigma, const IntVec &u, const std::vector<Polyhedron> &summands) {
  return ks_report(sigma, u, summands).trivial;
}

H1Piece h1_components(const Fan &F, const IntVec &u, std::size_t rho) {
  require_complete(F);
  if (rho >= F.rays.size()) throw std::invalid_argument("h1_components: ray index out of range");
  return components_of(F, u, rho);
}

std::size_t h1_graded_cech_oracle(const Fan &F, std::size_t rho, const IntVec &u) {
  std::size_t J = F.cones.size();
  // x^u is a section of O(D_rho) over the cone with these rays
  auto section = [&](const IndexSet &rays) {
    for (auto r : rays) {
      Int a = dot(u, F.rays[r]);
      if (a < (r == rho ? Int(-1) : Int(0))) return false;
    }
    return true;
  };
  auto meet = [&](const IndexSet &a, const IndexSet &b) {
    IndexSet c;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
    return c;
  };
  std::vector<std::size_t> c0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> c1;
  std::vector<std::array<std::size_t, 3>> c2;
  for (std::size_t j = 0; j < J; ++j)
    if (section(F.cones[j])) c0.push_back(j);
  for (std::size_t a = 0; a < J; ++a)
    for (std::size_t b = a + 1; b < J; ++b) {
      IndexSet ab = meet(F.cones[a], F.cones[b]);
      if (section(ab)) {
        std::size_t n = c1.size();
        c1[{a, b}] = n;
      }
      for (std::size_t c = b + 1; c < J; ++c)
        if (section(meet(ab, F.cones[c]))) c2.push_back({a, b, c});
    }
  if (c1.empty()) return 0;
  RatMat d0(c1.size(), c0.size());
  for (std::size_t i = 0; i < c0.size(); ++i)
    for (const auto &[pr, row] : c1) {
      if (pr.second == c0[i]) d0(row, i) += 1;
      if (pr.first == c0[i]) d0(row, i) -= 1;
    }
  std::size_t r1 = 0;
  if (!c2.empty()) {
    RatMat d1(c2.size(), c1.size());
    for (std::size_t t = 0; t < c2.size(); ++t) {
      auto [a, b, c] = c2[t];
      // pairs without the section contribute a zero group
      auto put = [&](std::size_t x, std::size_t y, int sign) {
        auto it = c1.find({x, y});
        if (it != c1.end()) d1(t, it->second) += sign;
      };
      put(b, c, 1);
      put(a, c, -1);
      put(a, b, 1);
    }
    r1 = rank(d1);
  }
  std::size_t r0 = c0.empty() ? 0 : rank(d0);
  return c1.size() - r1 - r0;
}

std::size_t h1_sweep(const Fan &F, const std::vector<IntVec> &box) {
  require_complete(F);
  std::size_t n = 0;
  for (const auto &u : box)
    for (std::size_t r = 0; r < F.rays.size(); ++r) n += components_of(F, u, r).dimension;
  return n;
}

ReflexiveH1 h1_total_reflexive(const Fan &F) {
  if (!require_complete(F).simplicial) throw ConditionError("fan", "the fan is not simplicial");
  std::size_t d = F.dim;
  HRep H;
  for (const auto &v : F.rays) H.ineqs.push_back({v, Int(-1)});
  ReflexiveH1 out;
  out.delta = from_hrep(d, H);
  if (!is_lattice(out.delta)) throw ConditionError("reflexive", "Delta = {m : <m, v_rho> >= -1} is not a lattice polytope");
  std::vector<RatVec> pts;
  for (const auto &v : F.rays) pts.push_back(to_rat(v));
  out.delta_star = Polyhedron::from_points(d, pts);
  for (const auto &v : F.rays)
    if (in_relint(out.delta_star, to_rat(v)))
      throw ConditionError("reflexive", "the ray " + to_string(v) + " is interior to Delta*");
  for (const auto &G : faces(out.delta)) {
    if (affine_dim(G) != int(d) - 2) continue;
    HRep dualH = hrep(out.delta_star);
    // Gamma* = {n in Delta* : <m, n> = -1 for m in Gamma}
    for (const auto &m : G.vertices) dualH.eqs.push_back({to_int(m), Int(-1)});
    ReflexiveTerm t{G, from_hrep(d, dualH), relative_interior_lattice_points(G).size(), 0};
    for (const auto &v : F.rays)
      if (in_relint(t.gamma_star, to_rat(v))) ++t.interior_rays;
    out.total += t.interior_points * t.interior_rays;
    out.terms.push_back(t);
  }
  return out;
}

CocycleReport cocycle_report(const Fan &F, const IntVec &u, std::size_t rho, std::size_t component) {
  H1Piece p = h1_components(F, u, rho);
  if (p.dimension == 0) throw ConditionError("H^1", "H^1(O(D_rho)) vanishes in this degree");
  if (component >= p.components.size()) throw std::invalid_argument("cocycle_report: no such component");
  CocycleReport r{u, rho, component, "", {}, {}, {}};
  Monomial m = x_pow(F.rays, u);
  m = m * Monomial{{rho, Int(1)}};
  r.tag = render(m) + "*d/dx_" + std::to_string(rho + 1);
  // charts missing every component carry the section x^u; they are lifted with C_0
  // so that the tables of all components add up to zero
  auto in_component = [&](std::size_t j) {
    int c = p.cone_component[j];
    return int(c == int(component) || (c < 0 && component == 0));
  };
  for (std::size_t a = 0; a < F.cones.size(); ++a)
    for (std::size_t b = a + 1; b < F.cones.size(); ++b) {
      int da = in_component(a), db = in_component(b);
      if (db != da) r.delta[{a, b}] = db - da;
    }
  for (std::size_t c = 0; c < p.components.size(); ++c)
    for (auto x : p.components[c]) (c == component ? r.cover0 : r.cover1).push_back(x);
  std::sort(r.cover1.begin(), r.cover1.end());
  return r;
}

std::map<std::pair<std::size_t, std::size_t>, int> refine_to_cones(const Fan &F, const CocycleReport &r) {
  // X_sigma lies in U_0 when sigma has no ray of cover0, in U_1 when it has none of cover1
  auto hits = [](const IndexSet &cone, const IndexSet &rays) {
    return std::any_of(cone.begin(), cone.end(), [&](std::size_t x) { return std::binary_search(rays.begin(), rays.end(), x); });
  };
  std::vector<int> side;
  for (const auto &s : F.cones) {
    bool in0 = !hits(s, r.cover0), in1 = !hits(s, r.cover1);
    if (!in0 && !in1) throw std::logic_error("refine_to_cones: a chart lies in neither open set");
    // a chart inside both goes with C_0, as in cocycle_report
    side.push_back(in0 && in1 ? int(r.component == 0) : in0 ? 0 : 1);
  }
  std::map<std::pair<std::size_t, std::size_t>, int> out;
  for (std::size_t a = 0; a < F.cones.size(); ++a)
    for (std::size_t b = a + 1; b < F.cones.size(); ++b)
      if (side[a] != side[b]) out[{a, b}] = side[b] - side[a];
  return out;
}

} // namespace tdef
