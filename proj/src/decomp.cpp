#include "tdef/decomp.hpp"

#include <algorithm>

namespace tdef {

namespace {

std::string set_str(const IndexSet &s) {
  std::string r = "{";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i] + 1);
  return r + "}";
}

Polyhedron max_face(const Polyhedron &P, const RatVec &u) {
  RatVec neg;
  for (const auto &x : u) neg.push_back(-x);
  return min_face(P, neg);
}

std::vector<RatVec> to_rat_all(const std::vector<IntVec> &vs) {
  std::vector<RatVec> r;
  for (const auto &v : vs) r.push_back(to_rat(v));
  return r;
}

RatVec pad(const RatVec &v, std::size_t k) {
  RatVec r = v;
  r.resize(v.size() + k, Rat(0));
  return r;
}

} // namespace

RatVec exposing_functional(const Polyhedron &cell, const Polyhedron &face) {
  if (face.is_empty() || cell.is_empty()) throw std::invalid_argument("exposing_functional: empty input");
  RatVec w(cell.dim, Rat(0));
  for (const auto &h : hrep(cell).ineqs) {
    bool tight = std::all_of(face.vertices.begin(), face.vertices.end(),
                             [&](const RatVec &v) { return dot(h.a, v) == h.b; }) &&
                 std::all_of(face.rays.begin(), face.rays.end(), [&](const IntVec &r) { return dot(h.a, r) == 0; });
    if (tight)
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += h.a[i];
  }
  if (min_face(cell, w) != face) throw std::invalid_argument("exposing_functional: not a face of the cell");
  return w;
}

std::vector<Polyhedron> induced_face_decomp(const Decomp &D, std::size_t cell, const Polyhedron &face) {
  const auto &parts = D.summands.at(cell);
  if (face.is_empty()) return std::vector<Polyhedron>(parts.size(), Polyhedron::empty(D.base.dim));
  RatVec w = exposing_functional(D.base.cells.at(cell), face);
  std::vector<Polyhedron> out;
  for (const auto &q : parts) out.push_back(min_face(q, w));
  return out;
}

std::vector<RatVec> induced_vertex_decomp(const Decomp &D, std::size_t cell, const RatVec &vertex) {
  const Polyhedron &Q = D.base.cells.at(cell);
  if (std::find(Q.vertices.begin(), Q.vertices.end(), vertex) == Q.vertices.end())
    throw std::invalid_argument("induced_vertex_decomp: " + to_string(vertex) + " is not a vertex of the cell");
  std::vector<RatVec> out;
  for (const auto &f : induced_face_decomp(D, cell, Polyhedron::point(vertex))) {
    if (f.vertices.size() != 1 || !f.rays.empty())
      throw std::invalid_argument("induced_vertex_decomp: summand face is not a point");
    out.push_back(f.vertices[0]);
  }
  return out;
}

Diagnostics validate_decomp(const Decomp &D) {
  Diagnostics d = validate_complex(D.base);
  if (!d.empty()) return d;
  if (D.k < 1) d.push_back({"decomposition", "k must be at least 1"});
  if (D.summands.size() != D.base.cells.size()) {
    d.push_back({"decomposition", "summand list count differs from the number of cells"});
    return d;
  }
  bool shapes = true;
  for (std::size_t c = 0; c < D.base.cells.size(); ++c) {
    const auto &parts = D.summands[c];
    const Polyhedron &Q = D.base.cells[c];
    std::string where = "cell " + std::to_string(c + 1);
    if (parts.size() != D.k + 1) {
      d.push_back({"decomposition", where + " has " + std::to_string(parts.size()) + " summands, expected " +
                                        std::to_string(D.k + 1)});
      shapes = false;
      continue;
    }
    if (std::any_of(parts.begin(), parts.end(), [&](const Polyhedron &p) { return p.dim != Q.dim || p.is_empty(); })) {
      d.push_back({"decomposition", where + " has an empty or mis-dimensioned summand"});
      shapes = false;
      continue;
    }
    if (minkowski_sum(parts, Q.dim) != Q) d.push_back({"decomposition", where + ": summands do not add up to the cell"});
    Cone rc = recession_cone(Q);
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (recession_cone(parts[i]) != rc)
        d.push_back({"recession", where + ": summand " + std::to_string(i) + " has a different recession cone"});
  }
  if (!shapes || !d.empty()) return d;
  for (std::size_t a = 0; a < D.base.cells.size(); ++a)
    for (std::size_t b = a + 1; b < D.base.cells.size(); ++b) {
      Polyhedron F = intersect(D.base.cells[a], D.base.cells[b]);
      if (F.is_empty()) continue;
      if (induced_face_decomp(D, a, F) != induced_face_decomp(D, b, F)) {
        std::string at = F.vertices.size() == 1 && F.rays.empty() ? "vertex " + to_string(F.vertices[0])
                                                                  : "face " + to_string(F);
        d.push_back({"face-compatibility", "cells " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                               " induce different decompositions on the common " + at});
      }
    }
  return d;
}

StarReport check_condition_star(const Decomp &D) {
  StarReport r;
  std::set<RatVec> bad;
  for (std::size_t c = 0; c < D.base.cells.size(); ++c)
    for (const auto &v : D.base.cells[c].vertices) {
      auto parts = induced_vertex_decomp(D, c, v);
      auto nonlattice = std::count_if(parts.begin(), parts.end(), [](const RatVec &p) { return !is_integral(p); });
      if (nonlattice > 1) bad.insert(v);
    }
  r.offending.assign(bad.begin(), bad.end());
  r.ok = r.offending.empty();
  return r;
}

ConeDecomp cone_decomposition(const Fan &F, const Decomp &D, const IndexSet &cone) {
  ConeDecomp cd{cone, Polyhedron::empty(F.dim), {}};
  auto part = sigma_part(D.base, F.cone(cone));
  if (!part) throw std::invalid_argument("cone " + set_str(cone) + " does not cut out a cell of the complex");
  cd.part = *part;
  if (part->is_empty()) {
    cd.summands.assign(D.k + 1, Polyhedron::empty(F.dim));
    return cd;
  }
  for (std::size_t c = 0; c < D.base.cells.size(); ++c)
    if (is_face(*part, D.base.cells[c])) {
      cd.summands = induced_face_decomp(D, c, *part);
      return cd;
    }
  throw std::invalid_argument("cone " + set_str(cone) + ": its cell is not a face of a maximal cell");
}

std::vector<RatVec> sigma_tilde_generators(const Cone &sigma, const std::vector<Polyhedron> &summands,
                                           std::size_t k) {
  std::vector<RatVec> g;
  for (const auto &r : sigma.rays) g.push_back(pad(to_rat(r), k));
  for (std::size_t i = 0; i < summands.size(); ++i) {
    for (const auto &v : summands[i].vertices) {
      RatVec x = pad(v, k);
      if (i == 0)
        for (std::size_t j = 0; j < k; ++j) x[sigma.dim + j] = -1;
      else
        x[sigma.dim + i - 1] = 1;
      g.push_back(x);
    }
    for (const auto &r : summands[i].rays) g.push_back(pad(to_rat(r), k));
  }
  return g;
}

namespace {

struct ConeData {
  IndexSet idx;
  Cone sigma;
  ConeDecomp cd;
  std::vector<RatVec> tgens;
};

Cone tight_cone(std::size_t dim, const std::vector<RatVec> &gens, const RatVec &m) {
  std::vector<RatVec> t;
  for (const auto &g : gens)
    if (dot(m, g) == 0) t.push_back(g);
  return Cone::from_generators(dim, t);
}

bool summands_separated(const RatVec &m, const ConeData &a, const ConeData &b) {
  for (std::size_t i = 0; i < a.cd.summands.size(); ++i) {
    const Polyhedron &A = a.cd.summands[i], &B = b.cd.summands[i];
    if (A.is_empty() || B.is_empty()) continue;
    Rat mn = min_value(m, A).value, mx = max_value(m, B).value;
    if (mn > mx) continue;
    if (mn == mx && min_face(A, m) == max_face(B, m)) continue;
    return false;
  }
  return true;
}

// separating coefficients a_i; nullopt if the lift fails the exact check.
std::optional<RatVec> lift(const RatVec &m, const ConeData &a, const ConeData &b, std::size_t k) {
  std::size_t d = m.size();
  RatVec coef(k, Rat(0));
  bool ea = a.cd.part.is_empty(), eb = b.cd.part.is_empty();
  if (ea && !eb) {
    Rat g = -max_value(m, b.cd.part).value;
    for (std::size_t i = 1; i <= k; ++i) coef[i - 1] = -max_value(m, b.cd.summands[i]).value - g / Rat(k + 1);
  } else if (!ea && eb) {
    Rat g = min_value(m, a.cd.part).value;
    for (std::size_t i = 1; i <= k; ++i) coef[i - 1] = -min_value(m, a.cd.summands[i]).value + g / Rat(k + 1);
  } else if (!ea && !eb) {
    Rat g1 = min_value(m, a.cd.part).value, g2 = max_value(m, b.cd.part).value;
    for (std::size_t i = 1; i <= k; ++i) {
      Rat mn = min_value(m, a.cd.summands[i]).value, mx = max_value(m, b.cd.summands[i]).value;
      coef[i - 1] = g1 == g2 ? Rat(-mn) : Rat((g2 * mn - g1 * mx) / (g1 - g2));
    }
  }
  RatVec mt = concat(m, coef);
  for (const auto &g : a.tgens)
    if (dot(mt, g) < 0) return std::nullopt;
  for (const auto &g : b.tgens)
    if (dot(mt, g) > 0) return std::nullopt;
  if (!(tight_cone(d + k, a.tgens, mt) == tight_cone(d + k, b.tgens, mt))) return std::nullopt;
  return mt;
}

Polyhedron negated(const Polyhedron &P) {
  std::vector<RatVec> vs;
  std::vector<IntVec> rs;
  for (const auto &v : P.vertices) vs.push_back(Rat(-1) * v);
  for (const auto &r : P.rays) rs.push_back(negate(r));
  return Polyhedron::from_points(P.dim, vs, rs);
}

// Inside one cell of the common refinement of the summands' normal fans the
// extremal faces are fixed and min - max is linear, so it suffices to test one
// relative interior point per (normal cone, face of K) pair after imposing
// min - max >= 0 on the summands whose extremal faces differ.
template <class Try> void exhaustive_search(const Cone &K, const ConeData &a, const ConeData &b, Try &&attempt) {
  std::size_t d = K.dim;
  std::vector<Polyhedron> terms;
  for (std::size_t i = 0; i < a.cd.summands.size(); ++i) {
    if (a.cd.summands[i].is_empty() || b.cd.summands[i].is_empty()) continue;
    terms.push_back(a.cd.summands[i]);
    terms.push_back(negated(b.cd.summands[i]));
  }
  if (terms.empty()) return;
  Polyhedron P = minkowski_sum(terms, d);
  HRep H = hrep(P);
  std::vector<Cone> kfaces = K.faces();
  for (const auto &G : faces(P)) {
    std::vector<IntVec> gens;
    for (const auto &h : H.ineqs) {
      bool tight = std::all_of(G.vertices.begin(), G.vertices.end(), [&](const RatVec &v) { return dot(h.a, v) == h.b; }) &&
                   std::all_of(G.rays.begin(), G.rays.end(), [&](const IntVec &r) { return dot(h.a, r) == 0; });
      if (tight) gens.push_back(h.a);
    }
    for (const auto &e : H.eqs) {
      gens.push_back(e.a);
      gens.push_back(negate(e.a));
    }
    Cone N = Cone::from_generators(d, gens);
    for (const auto &FK : kfaces) {
      Cone C = intersect(N, FK);
      RatVec p0 = to_rat(C.relint_point());
      std::vector<IntVec> ls;
      bool dead = false;
      for (std::size_t i = 0; i < a.cd.summands.size() && !dead; ++i) {
        const Polyhedron &A = a.cd.summands[i], &B = b.cd.summands[i];
        if (A.is_empty() || B.is_empty()) continue;
        Polyhedron fa = min_face(A, p0), fb = max_face(B, p0);
        if (fa == fb) continue;
        RatVec diff = fa.vertices[0] - fb.vertices[0];
        if (is_zero(diff)) dead = true; // min = max on the whole cell with different faces
        else ls.push_back(primitive(diff));
      }
      if (dead) continue;
      if (!ls.empty()) C = intersect(C, Cone::from_hrep(d, ls));
      if (attempt(to_rat(C.relint_point()))) return;
    }
  }
}

} // namespace

SeparationReport is_sigma_separated(const Fan &F, const Decomp &D) {
  SeparationReport rep;
  std::vector<ConeData> cones;
  for (const auto &s : F.face_closure()) {
    ConeData c{s, F.cone(s), cone_decomposition(F, D, s), {}};
    c.tgens = sigma_tilde_generators(c.sigma, c.cd.summands, D.k);
    cones.push_back(std::move(c));
  }
  for (std::size_t x = 0; x < cones.size(); ++x)
    for (std::size_t y = x + 1; y < cones.size(); ++y) {
      const ConeData &a = cones[x], &b = cones[y];
      Cone tau = intersect(a.sigma, b.sigma);
      std::vector<IntVec> ineqs = a.sigma.rays;
      for (const auto &r : b.sigma.rays) ineqs.push_back(negate(r));
      Cone K = Cone::from_hrep(F.dim, ineqs, tau.rays);
      std::vector<IntVec> cand{K.relint_point()};
      for (const auto &r : K.rays) cand.push_back(r);
      std::optional<SeparationWitness> found;
      auto attempt = [&](const RatVec &m) {
        if (!(tight_cone(F.dim, to_rat_all(a.sigma.rays), m) == tight_cone(F.dim, to_rat_all(b.sigma.rays), m)))
          return false;
        if (!summands_separated(m, a, b)) return false;
        auto mt = lift(m, a, b, D.k);
        if (!mt) return false;
        found = SeparationWitness{a.idx, b.idx, m, *mt};
        return true;
      };
      for (const auto &mi : cand)
        if (attempt(to_rat(mi))) break;
      if (!found) exhaustive_search(K, a, b, attempt);
      if (!found) {
        rep.ok = false;
        rep.blocking = "cones " + set_str(a.idx) + " and " + set_str(b.idx) + " admit no separating functional";
        rep.witnesses.clear();
        return rep;
      }
      rep.witnesses.push_back(*found);
    }
  return rep;
}

std::optional<std::size_t> cayley_tag(const RatVec &p, std::size_t d, std::size_t k) {
  if (p.size() != d + k) return std::nullopt;
  if (std::all_of(p.begin() + d, p.end(), [](const Rat &x) { return x == -1; })) return 0;
  std::optional<std::size_t> one;
  for (std::size_t j = 0; j < k; ++j) {
    if (p[d + j] == 1 && !one) one = j + 1;
    else if (p[d + j] != 0) return std::nullopt;
  }
  return one;
}

CayleyPolytope cayley_polytope(const std::vector<Polyhedron> &summands) {
  if (summands.size() < 2) throw std::invalid_argument("cayley_polytope: need at least two polytopes");
  std::size_t d = summands[0].dim, k = summands.size() - 1;
  std::vector<RatVec> pts;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto &P = summands[i];
    if (P.dim != d) throw std::invalid_argument("cayley_polytope: dimension mismatch");
    if (!P.is_bounded() || P.is_empty()) throw std::invalid_argument("cayley_polytope: summands must be nonempty polytopes");
    for (const auto &v : P.vertices) {
      RatVec x = pad(v, k);
      for (std::size_t j = 0; j < k; ++j) x[d + j] = i == 0 ? Rat(-1) : Rat(j + 1 == i ? 1 : 0);
      pts.push_back(x);
    }
  }
  CayleyPolytope C{d, k, Polyhedron::from_points(d + k, pts), {}};
  for (const auto &v : C.hull.vertices) C.tags.push_back(*cayley_tag(v, d, k));
  return C;
}

Decomp mixed_subdivision_from_cayley(const std::vector<Polyhedron> &cells, std::size_t d, std::size_t k) {
  std::vector<std::pair<Polyhedron, std::vector<Polyhedron>>> found;
  for (const auto &B : cells) {
    if (B.dim != d + k || !B.is_bounded()) throw std::invalid_argument("mixed_subdivision_from_cayley: bad cell");
    std::vector<std::vector<RatVec>> byTag(k + 1);
    for (const auto &v : B.vertices) {
      auto t = cayley_tag(v, d, k);
      if (!t) throw std::invalid_argument("mixed_subdivision_from_cayley: untagged 0-cell " + to_string(v));
      byTag[*t].push_back(RatVec(v.begin(), v.begin() + d));
    }
    // cells missing a tag do not meet the slicing affine space
    if (std::any_of(byTag.begin(), byTag.end(), [](const auto &g) { return g.empty(); })) continue;
    std::vector<Polyhedron> parts;
    for (const auto &g : byTag) parts.push_back(Polyhedron::from_points(d, g));
    Polyhedron sum = minkowski_sum(parts, d);
    if (std::none_of(found.begin(), found.end(), [&](const auto &f) { return f.first == sum; }))
      found.emplace_back(sum, parts);
  }
  Decomp D{Complex{d, {}}, k, {}};
  for (const auto &[sum, parts] : found) {
    bool dominated = std::any_of(found.begin(), found.end(),
                                 [&](const auto &o) { return o.first != sum && is_face(sum, o.first); });
    if (dominated) continue;
    D.base.cells.push_back(sum);
    D.summands.push_back(parts);
  }
  Diagnostics diag = validate_decomp(D);
  if (!diag.empty()) throw std::invalid_argument("mixed_subdivision_from_cayley: invalid result\n" + to_string(diag));
  return D;
}

} // namespace tdef
