#include "tdef/polyhedra.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace tdef {

namespace {

std::vector<IntVec> dedupe_primitive(const std::vector<IntVec> &gens) {
  std::set<IntVec> s;
  for (const auto &g : gens)
    if (!is_zero(g)) s.insert(primitive(g));
  return {s.begin(), s.end()};
}

std::vector<std::size_t> tight_set(const IntVec &a, const std::vector<IntVec> &gens) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (dot(a, gens[i]) == 0) t.push_back(i);
  return t;
}

// Orthogonal projection of g onto the complement of span(B).
RatVec project_away(const IntVec &g, const std::vector<IntVec> &B) {
  if (B.empty()) return to_rat(g);
  std::size_t l = B.size();
  RatMat G(l, l);
  RatVec rhs(l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) G(i, j) = dot(B[i], B[j]);
    rhs[i] = dot(B[i], g);
  }
  RatVec c = *solve(G, rhs);
  RatVec p = to_rat(g);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < g.size(); ++j) p[j] -= c[i] * B[i][j];
  return p;
}

} // namespace

Cone Cone::from_generators(std::size_t d, const std::vector<IntVec> &raw) {
  Cone C;
  C.dim = d;
  for (const auto &g : raw)
    if (g.size() != d) throw std::invalid_argument("cone generator dimension mismatch");
  std::vector<IntVec> gens = dedupe_primitive(raw);
  std::size_t n = gens.size();

  IntMat G = IntMat::from_rows(gens, d);
  C.equations = kernel_basis(G).to_rows();
  std::size_t r = d - C.equations.size();

  // facet normals: vanish on r-1 independent generators, lie in span(gens)
  std::set<IntVec> facetSet;
  if (r > 0) {
    std::vector<bool> pick(n, false);
    if (r - 1 <= n) {
      std::fill(pick.begin(), pick.begin() + (r - 1), true);
      do {
        std::vector<IntVec> rows;
        for (std::size_t i = 0; i < n; ++i)
          if (pick[i]) rows.push_back(gens[i]);
        for (const auto &e : C.equations) rows.push_back(e);
        auto ns = nullspace(to_rat(IntMat::from_rows(rows, d)));
        if (ns.size() != 1) continue;
        IntVec a = primitive(ns[0]);
        bool pos = false, neg = false;
        for (const auto &g : gens) {
          Int v = dot(a, g);
          pos = pos || v > 0;
          neg = neg || v < 0;
        }
        if (pos && neg) continue;
        if (neg) a = negate(a);
        facetSet.insert(a);
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  C.facets.assign(facetSet.begin(), facetSet.end());

  std::vector<IntVec> linRows = C.facets;
  for (const auto &e : C.equations) linRows.push_back(e);
  C.lineality = kernel_basis(IntMat::from_rows(linRows, d)).to_rows();
  std::size_t l = C.lineality.size();

  std::set<IntVec> raySet;
  for (const auto &b : C.lineality) {
    raySet.insert(b);
    raySet.insert(negate(b));
  }
  for (const auto &g : gens) {
    std::vector<IntVec> rows = C.equations;
    bool inLin = true;
    for (const auto &a : C.facets)
      if (dot(a, g) == 0) rows.push_back(a);
      else inLin = false;
    if (inLin) continue;
    if (rank_rows(rows, d) != d - l - 1) continue;
    raySet.insert(primitive(project_away(g, C.lineality)));
  }
  C.rays.assign(raySet.begin(), raySet.end());
  return C;
}

Cone Cone::from_generators(std::size_t d, const std::vector<RatVec> &gens) {
  std::vector<IntVec> g;
  for (const auto &v : gens)
    if (!is_zero(v)) g.push_back(primitive(v));
  return from_generators(d, g);
}

Cone Cone::from_hrep(std::size_t d, const std::vector<IntVec> &ineqs,
                     const std::vector<IntVec> &eqs) {
  std::vector<IntVec> g = ineqs;
  for (const auto &e : eqs) {
    g.push_back(e);
    g.push_back(negate(e));
  }
  return dual_cone(from_generators(d, g));
}

bool Cone::contains(const IntVec &x) const {
  for (const auto &a : facets)
    if (dot(a, x) < 0) return false;
  for (const auto &e : equations)
    if (dot(e, x) != 0) return false;
  return true;
}
bool Cone::contains(const RatVec &x) const {
  for (const auto &a : facets)
    if (dot(a, x) < 0) return false;
  for (const auto &e : equations)
    if (dot(e, x) != 0) return false;
  return true;
}
bool Cone::in_relint(const RatVec &x) const {
  for (const auto &a : facets)
    if (dot(a, x) <= 0) return false;
  for (const auto &e : equations)
    if (dot(e, x) != 0) return false;
  return true;
}
IntVec Cone::relint_point() const {
  IntVec s(dim, Int(0));
  for (const auto &r : rays) s = s + r;
  return s;
}

std::vector<std::vector<std::size_t>> Cone::face_index_sets() const {
  std::vector<std::vector<std::size_t>> tight;
  for (const auto &a : facets) tight.push_back(tight_set(a, rays));
  std::vector<std::size_t> all(rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> queue{all};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto &t : tight) {
      std::vector<std::size_t> s;
      std::set_intersection(queue[q].begin(), queue[q].end(), t.begin(), t.end(),
                            std::back_inserter(s));
      if (seen.insert(s).second) queue.push_back(s);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Cone> Cone::faces() const {
  std::vector<Cone> out;
  for (const auto &s : face_index_sets()) {
    std::vector<IntVec> g;
    for (auto i : s) g.push_back(rays[i]);
    out.push_back(from_generators(dim, g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Cone::has_face(const Cone &F) const {
  // F is a face iff F = C cap a^perp for a in relint of C^vee restricted to F
  for (const auto &r : F.rays)
    if (!contains(r)) return false;
  std::vector<IntVec> g;
  for (const auto &r : rays) {
    bool tightAll = true;
    // r belongs to the minimal face containing F iff every facet tight on F is tight on r
    for (const auto &a : facets) {
      bool tightF = std::all_of(F.rays.begin(), F.rays.end(),
                                [&](const IntVec &x) { return dot(a, x) == 0; });
      if (tightF && dot(a, r) != 0) {
        tightAll = false;
        break;
      }
    }
    if (tightAll) g.push_back(r);
  }
  return from_generators(dim, g) == F;
}

Cone dual_cone(const Cone &C) {
  std::vector<IntVec> g = C.facets;
  for (const auto &e : C.equations) {
    g.push_back(e);
    g.push_back(negate(e));
  }
  return Cone::from_generators(C.dim, g);
}

Cone intersect(const Cone &A, const Cone &B) {
  std::vector<IntVec> in = A.facets, eq = A.equations;
  in.insert(in.end(), B.facets.begin(), B.facets.end());
  eq.insert(eq.end(), B.equations.begin(), B.equations.end());
  return Cone::from_hrep(A.dim, in, eq);
}

// ---- polyhedra ----------------------------------------------------------------

namespace {

IntVec homogenize(const RatVec &p) {
  Int l = 1;
  for (const auto &q : p) l = lcm(l, q.get_den());
  IntVec h;
  for (const auto &q : p) h.push_back(Rat(q * l).get_num());
  h.push_back(l);
  return h;
}

Polyhedron dehomogenize(std::size_t d, const std::vector<IntVec> &gens) {
  Polyhedron P;
  P.dim = d;
  for (const auto &g : gens) {
    if (g[d] > 0) {
      RatVec v(d);
      for (std::size_t j = 0; j < d; ++j) v[j] = Rat(g[j], g[d]);
      for (auto &q : v) q.canonicalize();
      P.vertices.push_back(v);
    } else if (g[d] == 0) {
      P.rays.push_back(primitive(IntVec(g.begin(), g.begin() + d)));
    } else {
      throw std::logic_error("homogenized generator below t = 0");
    }
  }
  if (P.vertices.empty()) return Polyhedron::empty(d);
  std::sort(P.vertices.begin(), P.vertices.end());
  std::sort(P.rays.begin(), P.rays.end());
  return P;
}

} // namespace

Polyhedron Polyhedron::from_points(std::size_t d, const std::vector<RatVec> &pts,
                                   const std::vector<IntVec> &rs) {
  if (pts.empty()) return empty(d);
  std::vector<IntVec> g;
  for (const auto &p : pts) {
    if (p.size() != d) throw std::invalid_argument("point dimension mismatch");
    g.push_back(homogenize(p));
  }
  for (const auto &r : rs) {
    if (r.size() != d) throw std::invalid_argument("ray dimension mismatch");
    if (!is_zero(r)) g.push_back(concat(r, IntVec{0}));
  }
  return dehomogenize(d, Cone::from_generators(d + 1, g).rays);
}

Cone Polyhedron::homogenization() const {
  std::vector<IntVec> g;
  for (const auto &v : vertices) g.push_back(homogenize(v));
  for (const auto &r : rays) g.push_back(concat(r, IntVec{0}));
  return Cone::from_generators(dim + 1, g);
}

HRep hrep(const Polyhedron &P) {
  HRep H;
  std::size_t d = P.dim;
  if (P.is_empty()) {
    H.ineqs.push_back({IntVec(d, Int(0)), 1});
    return H;
  }
  Cone C = P.homogenization();
  for (const auto &f : C.facets) {
    IntVec a(f.begin(), f.begin() + d);
    if (is_zero(a)) continue;
    H.ineqs.push_back({a, -f[d]});
  }
  for (const auto &e : C.equations) H.eqs.push_back({IntVec(e.begin(), e.begin() + d), -e[d]});
  return H;
}

Polyhedron from_hrep(std::size_t d, const HRep &H) {
  std::vector<IntVec> in, eq;
  for (const auto &h : H.ineqs) in.push_back(concat(h.a, IntVec{-h.b}));
  in.push_back(unit(d + 1, d));
  for (const auto &h : H.eqs) eq.push_back(concat(h.a, IntVec{-h.b}));
  return dehomogenize(d, Cone::from_hrep(d + 1, in, eq).rays);
}

Polyhedron minkowski_sum(const Polyhedron &P, const Polyhedron &Q) {
  if (P.dim != Q.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (P.is_empty() || Q.is_empty()) return Polyhedron::empty(P.dim);
  std::vector<RatVec> pts;
  for (const auto &p : P.vertices)
    for (const auto &q : Q.vertices) pts.push_back(p + q);
  std::vector<IntVec> rs = P.rays;
  rs.insert(rs.end(), Q.rays.begin(), Q.rays.end());
  return Polyhedron::from_points(P.dim, pts, rs);
}

Polyhedron minkowski_sum(const std::vector<Polyhedron> &Ps, std::size_t d) {
  Polyhedron S = Polyhedron::point(RatVec(d, Rat(0)));
  for (const auto &P : Ps) S = minkowski_sum(S, P);
  return S;
}

Polyhedron intersect(const Polyhedron &P, const Polyhedron &Q) {
  if (P.dim != Q.dim) throw std::invalid_argument("intersect: dimension mismatch");
  if (P.is_empty() || Q.is_empty()) return Polyhedron::empty(P.dim);
  HRep a = hrep(P), b = hrep(Q);
  a.ineqs.insert(a.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  a.eqs.insert(a.eqs.end(), b.eqs.begin(), b.eqs.end());
  return from_hrep(P.dim, a);
}

Polyhedron cone_as_polyhedron(const Cone &C) {
  return Polyhedron::from_points(C.dim, {RatVec(C.dim, Rat(0))}, C.rays);
}

Polyhedron slice(const Cone &C, const IntVec &u) {
  if (u.size() != C.dim) throw std::invalid_argument("slice: dimension mismatch");
  HRep H;
  for (const auto &a : C.facets) H.ineqs.push_back({a, 0});
  for (const auto &e : C.equations) H.eqs.push_back({e, 0});
  H.eqs.push_back({u, -1});
  return from_hrep(C.dim, H);
}

Polyhedron compact_part(const Polyhedron &P) {
  return Polyhedron::from_points(P.dim, P.vertices);
}

Polyhedron translate(const Polyhedron &P, const RatVec &v) {
  if (P.is_empty()) return P;
  Polyhedron Q = P;
  for (auto &x : Q.vertices) x = x + v;
  return Q; // translation preserves lex order
}

Polyhedron scale(const Polyhedron &P, const Rat &s) {
  if (s <= 0) throw std::invalid_argument("scale: factor must be positive");
  Polyhedron Q = P;
  for (auto &x : Q.vertices) x = s * x;
  return Q;
}

Cone recession_cone(const Polyhedron &P) { return Cone::from_generators(P.dim, P.rays); }

Extremum min_value(const RatVec &u, const Polyhedron &P) {
  if (P.is_empty()) throw std::invalid_argument("min_value: empty polyhedron");
  for (const auto &r : P.rays)
    if (dot(r, u) < 0) throw std::invalid_argument("min_value: unbounded below");
  Rat m = dot(u, P.vertices[0]);
  for (const auto &v : P.vertices) m = std::min(m, dot(u, v));
  return {m, floor_rat(m)};
}
Extremum max_value(const RatVec &u, const Polyhedron &P) {
  RatVec n(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) n[i] = -u[i];
  Extremum e = min_value(n, P);
  e.value = -e.value;
  e.floor = floor_rat(e.value);
  return e;
}
Extremum min_value(const IntVec &u, const Polyhedron &P) { return min_value(to_rat(u), P); }
Extremum max_value(const IntVec &u, const Polyhedron &P) { return max_value(to_rat(u), P); }

Polyhedron min_face(const Polyhedron &P, const RatVec &u) {
  Rat m = min_value(u, P).value;
  std::vector<RatVec> pts;
  std::vector<IntVec> rs;
  for (const auto &v : P.vertices)
    if (dot(u, v) == m) pts.push_back(v);
  for (const auto &r : P.rays)
    if (dot(r, u) == 0) rs.push_back(r);
  return Polyhedron::from_points(P.dim, pts, rs);
}

std::vector<Polyhedron> faces(const Polyhedron &P) {
  if (P.is_empty()) return {};
  Cone C = P.homogenization();
  std::size_t d = P.dim;
  std::vector<Polyhedron> out;
  for (const auto &s : C.face_index_sets()) {
    std::vector<IntVec> g;
    bool bounded = false;
    for (auto i : s) {
      g.push_back(C.rays[i]);
      bounded = bounded || C.rays[i][d] > 0;
    }
    if (bounded) out.push_back(dehomogenize(d, g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Polyhedron> facets(const Polyhedron &P) {
  std::vector<Polyhedron> out;
  int dp = affine_dim(P);
  for (auto &F : faces(P))
    if (affine_dim(F) == dp - 1) out.push_back(F);
  return out;
}

bool is_face(const Polyhedron &F, const Polyhedron &P) {
  if (F.is_empty()) return true;
  auto fs = faces(P);
  return std::find(fs.begin(), fs.end(), F) != fs.end();
}

bool contains(const Polyhedron &P, const RatVec &x) {
  if (P.is_empty()) return false;
  return P.homogenization().contains(concat(x, RatVec{1}));
}

bool contains(const Polyhedron &P, const Polyhedron &Q) {
  if (Q.is_empty()) return true;
  if (P.is_empty()) return false;
  Cone C = P.homogenization();
  for (const auto &v : Q.vertices)
    if (!C.contains(concat(v, RatVec{1}))) return false;
  for (const auto &r : Q.rays)
    if (!C.contains(concat(r, IntVec{0}))) return false;
  return true;
}

bool in_relint(const Polyhedron &P, const RatVec &x) {
  if (P.is_empty()) return false;
  return P.homogenization().in_relint(concat(x, RatVec{1}));
}

RatVec relint_point(const Polyhedron &P) {
  if (P.is_empty()) throw std::invalid_argument("relint_point: empty polyhedron");
  RatVec s(P.dim, Rat(0));
  for (const auto &v : P.vertices) s = s + v;
  s = Rat(1, P.vertices.size()) * s;
  for (const auto &r : P.rays) s = s + to_rat(r);
  return s;
}

int affine_dim(const Polyhedron &P) {
  if (P.is_empty()) return -1;
  return static_cast<int>(P.homogenization().cone_dim()) - 1;
}

bool is_lattice(const Polyhedron &P) {
  return std::all_of(P.vertices.begin(), P.vertices.end(),
                     [](const RatVec &v) { return is_integral(v); });
}

bool has_lattice_apex(const Polyhedron &P) {
  return P.vertices.size() == 1 && is_integral(P.vertices[0]) &&
         recession_cone(P).is_strongly_convex();
}

std::optional<Homothety> is_homothetic(const Polyhedron &P, const Polyhedron &Q) {
  if (P.dim != Q.dim || P.is_empty() || Q.is_empty()) return std::nullopt;
  if (P.rays != Q.rays || P.vertices.size() != Q.vertices.size()) return std::nullopt;
  if (P.vertices.size() == 1) {
    if (!P.rays.empty()) return std::nullopt; // cones: delta not unique
    return Homothety{1, Q.vertices[0] - P.vertices[0]};
  }
  RatVec dp = P.vertices[1] - P.vertices[0], dq = Q.vertices[1] - Q.vertices[0];
  Rat delta = 0;
  for (std::size_t j = 0; j < dp.size(); ++j)
    if (dp[j] != 0) {
      delta = dq[j] / dp[j];
      break;
    }
  if (delta <= 0) return std::nullopt;
  RatVec shift = Q.vertices[0] - delta * P.vertices[0];
  for (std::size_t i = 0; i < P.vertices.size(); ++i)
    if (delta * P.vertices[i] + shift != Q.vertices[i]) return std::nullopt;
  return Homothety{delta, shift};
}

namespace {

template <class Pred>
std::vector<IntVec> box_points(const Polyhedron &P, Pred keep) {
  if (!P.is_bounded()) throw std::invalid_argument("lattice_points: unbounded polyhedron");
  if (P.is_empty()) return {};
  std::size_t d = P.dim;
  IntVec lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rat mn = P.vertices[0][j], mx = mn;
    for (const auto &v : P.vertices) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_rat(mn);
    hi[j] = floor_rat(mx);
    if (lo[j] > hi[j]) return {};
  }
  std::vector<IntVec> out;
  IntVec x = lo;
  while (true) {
    if (keep(x)) out.push_back(x);
    std::size_t j = 0;
    while (j < d && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == d) break;
    ++x[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::vector<IntVec> lattice_points(const Polyhedron &P) {
  if (P.is_empty()) return {};
  Cone C = P.homogenization();
  return box_points(P, [&](const IntVec &x) { return C.contains(concat(x, IntVec{1})); });
}

std::vector<IntVec> relative_interior_lattice_points(const Polyhedron &P) {
  if (P.is_empty()) return {};
  Cone C = P.homogenization();
  return box_points(P, [&](const IntVec &x) {
    return C.in_relint(to_rat(concat(x, IntVec{1})));
  });
}

std::vector<IntVec> hilbert_basis(const Cone &C) {
  if (C.dim > 3) throw std::invalid_argument("hilbert_basis: ambient dimension above 3");
  if (!C.is_strongly_convex())
    throw std::invalid_argument("hilbert_basis: cone is not strongly convex");
  if (C.rays.empty()) return {};
  std::size_t d = C.dim;
  // the zonotope of the rays contains every irreducible element
  std::vector<long> lo(d, 0), hi(d, 0);
  for (const auto &r : C.rays)
    for (std::size_t j = 0; j < d; ++j) {
      if (!r[j].fits_sint_p()) throw std::invalid_argument("hilbert_basis: entries too large");
      long v = r[j].get_si();
      (v < 0 ? lo[j] : hi[j]) += v;
    }
  std::vector<std::vector<long>> fac;
  for (const auto &a : C.facets) {
    std::vector<long> f;
    for (const auto &x : a) f.push_back(x.get_si());
    fac.push_back(f);
  }
  std::vector<std::vector<long>> eqs;
  for (const auto &e : C.equations) {
    std::vector<long> f;
    for (const auto &x : e) f.push_back(x.get_si());
    eqs.push_back(f);
  }
  struct Pt {
    std::vector<long> x, vals;
  };
  std::vector<Pt> cand;
  std::vector<long> x = lo;
  while (true) {
    bool nonzero = false, inside = true;
    for (auto c : x) nonzero = nonzero || c != 0;
    Pt p{x, {}};
    for (const auto &f : fac) {
      long s = 0;
      for (std::size_t j = 0; j < d; ++j) s += f[j] * x[j];
      if (s < 0) inside = false;
      p.vals.push_back(s);
    }
    for (const auto &e : eqs) {
      long s = 0;
      for (std::size_t j = 0; j < d; ++j) s += e[j] * x[j];
      if (s != 0) inside = false;
    }
    if (nonzero && inside) cand.push_back(p);
    std::size_t j = 0;
    while (j < d && x[j] == hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == d) break;
    ++x[j];
  }
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool reducible = false;
    for (std::size_t k = 0; k < cand.size() && !reducible; ++k) {
      if (k == i) continue;
      bool le = true;
      for (std::size_t f = 0; f < fac.size() && le; ++f) le = cand[k].vals[f] <= cand[i].vals[f];
      // x_i - x_k lies in the cone and is nonzero
      reducible = le;
    }
    if (!reducible) {
      IntVec v;
      for (auto c : cand[i].x) v.push_back(Int(c));
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Polyhedron &P) {
  if (P.is_empty()) return "empty";
  std::string s = "conv(";
  for (std::size_t i = 0; i < P.vertices.size(); ++i)
    s += (i ? ", " : "") + to_string(P.vertices[i]);
  s += ")";
  if (!P.rays.empty()) {
    s += " + cone(";
    for (std::size_t i = 0; i < P.rays.size(); ++i) s += (i ? ", " : "") + to_string(P.rays[i]);
    s += ")";
  }
  return s;
}

std::string to_string(const Cone &C) {
  std::string s = "cone(";
  for (std::size_t i = 0; i < C.rays.size(); ++i) s += (i ? ", " : "") + to_string(C.rays[i]);
  return s + ")";
}

} // namespace tdef
