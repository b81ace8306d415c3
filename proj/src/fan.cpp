#include "tdef/fan.hpp"

#include <algorithm>
#include <map>

namespace tdef {

std::string to_string(const Diagnostics &d) {
  std::string s;
  for (const auto &x : d) s += x.label + ": " + x.message + "\n";
  return s;
}

Cone Fan::cone(const IndexSet &s) const {
  std::vector<IntVec> g;
  for (auto i : s) g.push_back(rays.at(i));
  return Cone::from_generators(dim, g);
}

std::optional<std::size_t> Fan::ray_index(const IntVec &r) const {
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i] == r) return i;
  return std::nullopt;
}

std::vector<IndexSet> Fan::face_closure() const {
  std::set<IndexSet> out;
  out.insert(IndexSet{});
  for (const auto &s : cones) {
    Cone c = cone(s);
    for (const auto &f : c.face_index_sets()) {
      IndexSet idx;
      for (auto i : f) {
        auto j = ray_index(c.rays[i]);
        if (!j) throw std::invalid_argument("fan cone has a ray outside the ray list");
        idx.push_back(*j);
      }
      std::sort(idx.begin(), idx.end());
      out.insert(idx);
    }
  }
  return {out.begin(), out.end()};
}

namespace {
std::string set_str(const IndexSet &s) {
  std::string r = "{";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i] + 1);
  return r + "}";
}
} // namespace

Diagnostics validate_fan(const Fan &F) {
  Diagnostics d;
  auto bad = [&](std::string m) { d.push_back({"fan", std::move(m)}); };
  std::set<IntVec> seen;
  for (std::size_t i = 0; i < F.rays.size(); ++i) {
    const auto &r = F.rays[i];
    if (r.size() != F.dim) {
      bad("ray " + std::to_string(i + 1) + " has wrong dimension");
      return d;
    }
    if (is_zero(r)) {
      bad("ray " + std::to_string(i + 1) + " is zero");
      return d;
    }
    if (primitive(r) != r) bad("ray " + std::to_string(i + 1) + " is not primitive");
    if (!seen.insert(r).second) bad("ray " + std::to_string(i + 1) + " is repeated");
  }
  if (F.rays.empty() || rank_rows(F.rays, F.dim) != F.dim)
    bad("rays do not span the ambient space (torus factors are not supported)");
  std::vector<bool> used(F.rays.size(), false);
  for (const auto &s : F.cones) {
    for (auto i : s) {
      if (i >= F.rays.size()) {
        bad("cone " + set_str(s) + " references an unknown ray");
        return d;
      }
      used[i] = true;
    }
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      bad("cone " + set_str(s) + " is not a sorted set of distinct indices");
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) bad("ray " + std::to_string(i + 1) + " lies in no cone");
  if (!d.empty()) return d;

  std::vector<Cone> cs;
  for (const auto &s : F.cones) {
    Cone c = F.cone(s);
    if (!c.is_strongly_convex()) bad("cone " + set_str(s) + " is not strongly convex");
    std::set<IntVec> listed;
    for (auto i : s) listed.insert(F.rays[i]);
    if (listed != std::set<IntVec>(c.rays.begin(), c.rays.end()))
      bad("cone " + set_str(s) + " lists a ray that is not extreme");
    cs.push_back(c);
  }
  if (!d.empty()) return d;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      Cone inter = intersect(cs[i], cs[j]);
      IndexSet common;
      std::set_intersection(F.cones[i].begin(), F.cones[i].end(), F.cones[j].begin(),
                            F.cones[j].end(), std::back_inserter(common));
      if (inter != F.cone(common) || !cs[i].has_face(inter) || !cs[j].has_face(inter))
        bad("cones " + set_str(F.cones[i]) + " and " + set_str(F.cones[j]) +
            " do not meet in a common face");
    }
  return d;
}

FanProperties fan_properties(const Fan &F) {
  if (!validate_fan(F).empty()) throw std::invalid_argument("fan_properties: invalid fan");
  FanProperties p;
  p.simplicial = true;
  std::vector<Cone> cs;
  for (const auto &s : F.cones) {
    Cone c = F.cone(s);
    if (c.cone_dim() != s.size()) p.simplicial = false;
    cs.push_back(c);
  }
  p.complete = !cs.empty();
  for (const auto &c : cs)
    if (!c.is_full_dim()) p.complete = false;
  if (!p.complete) return p;
  // witnesses just outside each facet of each maximal cone, at two scales
  for (const auto &c : cs) {
    for (const auto &a : c.facets) {
      IntVec centre(F.dim, Int(0));
      for (const auto &r : c.rays)
        if (dot(a, r) == 0) centre = centre + r;
      Int cn = 0, an = 0;
      for (const auto &x : centre) cn = std::max(cn, Int(abs(x)));
      for (const auto &x : a) an = std::max(an, Int(abs(x)));
      for (Rat eps : {Rat(1, 1000), Rat(1, 1000000)}) {
        Rat step = eps * cn / an;
        RatVec w = to_rat(centre) - step * to_rat(a);
        bool covered = std::any_of(cs.begin(), cs.end(), [&](const Cone &o) { return o.contains(w); });
        if (!covered) {
          p.complete = false;
          return p;
        }
      }
    }
  }
  return p;
}

std::vector<Polyhedron> Complex::all_cells() const {
  std::set<Polyhedron> s;
  for (const auto &c : cells)
    for (auto &f : faces(c)) s.insert(f);
  return {s.begin(), s.end()};
}

Diagnostics validate_complex(const Complex &K) {
  Diagnostics d;
  for (std::size_t i = 0; i < K.cells.size(); ++i) {
    if (K.cells[i].dim != K.dim) {
      d.push_back({"complex", "cell " + std::to_string(i + 1) + " has wrong dimension"});
      return d;
    }
    if (K.cells[i].is_empty())
      d.push_back({"complex", "cell " + std::to_string(i + 1) + " is empty"});
  }
  if (!d.empty()) return d;
  for (std::size_t i = 0; i < K.cells.size(); ++i)
    for (std::size_t j = 0; j < K.cells.size(); ++j) {
      if (i == j) continue;
      if (j > i && K.cells[i] == K.cells[j]) {
        d.push_back({"complex", "cells " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                    " coincide"});
        continue;
      }
      if (is_face(K.cells[i], K.cells[j]))
        d.push_back({"complex", "cell " + std::to_string(i + 1) + " is a face of cell " +
                                    std::to_string(j + 1) + "; list maximal cells only"});
      if (j > i) {
        Polyhedron x = intersect(K.cells[i], K.cells[j]);
        if (!is_face(x, K.cells[i]) || !is_face(x, K.cells[j]))
          d.push_back({"complex", "cells " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " do not meet in a common face"});
      }
    }
  return d;
}

Complex fan_slice(const Fan &F, const IntVec &u) {
  std::set<Polyhedron> cells;
  for (const auto &s : F.cones) {
    Polyhedron p = slice(F.cone(s), u);
    if (!p.is_empty()) cells.insert(p);
  }
  Complex K{F.dim, {}};
  for (const auto &c : cells) {
    bool dominated = false;
    for (const auto &o : cells)
      if (o != c && is_face(c, o)) dominated = true;
    if (!dominated) K.cells.push_back(c);
  }
  Diagnostics d = validate_complex(K);
  if (!d.empty()) throw std::invalid_argument("fan_slice: malformed fan\n" + to_string(d));
  return K;
}

bool cone_contains(const Cone &C, const Polyhedron &P) {
  for (const auto &v : P.vertices)
    if (!C.contains(v)) return false;
  for (const auto &r : P.rays)
    if (!C.contains(r)) return false;
  return true;
}

std::optional<Polyhedron> sigma_part(const Complex &K, const Cone &sigma) {
  std::vector<Polyhedron> inside;
  for (auto &c : K.all_cells())
    if (cone_contains(sigma, c)) inside.push_back(c);
  Polyhedron best = Polyhedron::empty(K.dim);
  for (const auto &c : inside)
    if (best.is_empty() || contains(c, best)) best = c;
  for (const auto &c : inside)
    if (!contains(best, c)) return std::nullopt;
  Polyhedron sp = cone_as_polyhedron(sigma);
  for (const auto &c : K.cells)
    if (!contains(best, intersect(sp, c))) return std::nullopt;
  return best;
}

bool is_sigma_compatible(const Complex &K, const Fan &F) {
  std::vector<Polyhedron> parts;
  for (const auto &s : F.face_closure()) {
    auto q = sigma_part(K, F.cone(s));
    if (!q) return false;
    parts.push_back(*q);
  }
  for (const auto &c : K.cells)
    if (std::find(parts.begin(), parts.end(), c) == parts.end()) return false;
  return true;
}

} // namespace tdef
