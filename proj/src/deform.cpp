#include "tdef/deform.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tdef {

namespace {

std::string set_str(const IndexSet &s) {
  std::string r = "{";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i] + 1);
  return r + "}";
}

RatVec lifted(const RatVec &v, std::size_t k, std::size_t summand) {
  RatVec x = v;
  x.resize(v.size() + k, Rat(0));
  if (summand == 0)
    for (std::size_t j = 0; j < k; ++j) x[v.size() + j] = -1;
  else
    x[v.size() + summand - 1] = 1;
  return x;
}

RatVec padded(const RatVec &v, std::size_t k) {
  RatVec x = v;
  x.resize(v.size() + k, Rat(0));
  return x;
}

bool contains_origin(const Polyhedron &P) { return !P.is_empty() && contains(P, RatVec(P.dim, Rat(0))); }

} // namespace

std::string to_string(const RayOrigin &o) {
  switch (o.kind) {
  case RayOrigin::Kind::BaseRay:
    return "ray " + to_string(o.source);
  case RayOrigin::Kind::Vertex:
    return "summand " + std::to_string(o.summand) + " vertex " + to_string(o.source);
  case RayOrigin::Kind::Recession:
    return "summand " + std::to_string(o.summand) + " recession " + to_string(o.source);
  }
  return "";
}

SigmaTilde build_sigma_tilde(const Cone &sigma, const std::vector<Polyhedron> &summands) {
  if (summands.size() < 2) throw std::invalid_argument("build_sigma_tilde: need k >= 1 (at least two summands)");
  std::size_t d = sigma.dim, k = summands.size() - 1;
  bool empty = std::all_of(summands.begin(), summands.end(), [](const Polyhedron &p) { return p.is_empty(); });
  if (!empty) {
    if (std::any_of(summands.begin(), summands.end(), [](const Polyhedron &p) { return p.is_empty(); }))
      throw std::invalid_argument("build_sigma_tilde: some summands are empty");
    Polyhedron Q = minkowski_sum(summands, d);
    if (contains_origin(Q)) throw ConditionError("0 not in Q", "the cell " + to_string(Q) + " contains the origin");
    if (!cone_contains(sigma, Q)) throw ConditionError("Q in sigma", "the cell " + to_string(Q) + " is not inside the cone");
    Decomp one{Complex{d, {Q}}, k, {summands}};
    auto star = check_condition_star(one);
    if (!star.ok) throw ConditionError("(*)", "vertex " + to_string(star.offending[0]) + " has two non-lattice summands");
  }
  std::vector<std::pair<RatVec, RayOrigin>> gens;
  for (const auto &r : sigma.rays)
    gens.push_back({padded(to_rat(r), k), RayOrigin{RayOrigin::Kind::BaseRay, 0, to_rat(r)}});
  for (std::size_t i = 0; i < summands.size(); ++i) {
    for (const auto &v : summands[i].vertices) gens.push_back({lifted(v, k, i), RayOrigin{RayOrigin::Kind::Vertex, i, v}});
    for (const auto &r : summands[i].rays)
      gens.push_back({padded(to_rat(r), k), RayOrigin{RayOrigin::Kind::Recession, i, to_rat(r)}});
  }
  std::vector<RatVec> g;
  for (const auto &p : gens) g.push_back(p.first);
  SigmaTilde st{Cone::from_generators(d + k, g), {}};
  if (!st.cone.is_strongly_convex()) throw std::logic_error("build_sigma_tilde: extended cone is not strongly convex");
  std::vector<IntVec> eqs;
  for (std::size_t j = 0; j < k; ++j) eqs.push_back(unit(d + k, d + j));
  std::vector<IntVec> base;
  for (const auto &r : sigma.rays) base.push_back(to_int(padded(to_rat(r), k)));
  if (!(intersect(st.cone, Cone::from_hrep(d + k, {}, eqs)) == Cone::from_generators(d + k, base)))
    throw std::logic_error("build_sigma_tilde: extended cone does not restrict to sigma");
  for (const auto &r : st.cone.rays) {
    auto it = std::find_if(gens.begin(), gens.end(),
                           [&](const auto &p) { return !is_zero(p.first) && primitive(p.first) == r; });
    if (it == gens.end()) throw std::logic_error("build_sigma_tilde: ray without a generator");
    st.origin.push_back(it->second);
  }
  return st;
}

ExtFan build_ext_fan(const Fan &F, const Decomp &D) {
  Diagnostics fd = validate_fan(F);
  if (!fd.empty()) throw ConditionError("fan", to_string(fd));
  Diagnostics dd = validate_decomp(D);
  if (!dd.empty()) throw ConditionError(dd[0].label, to_string(dd));
  if (D.base.dim != F.dim) throw ConditionError("decomposition", "complex and fan have different dimensions");
  if (!is_sigma_compatible(D.base, F))
    throw ConditionError("Sigma-compatible", "the complex is not compatible with the fan");
  for (const auto &c : D.base.cells)
    if (contains_origin(c)) throw ConditionError("0 not in Q", "the cell " + to_string(c) + " contains the origin");
  auto star = check_condition_star(D);
  if (!star.ok)
    throw ConditionError("(*)", "vertex " + to_string(star.offending[0]) + " has two non-lattice summands");
  auto sep = is_sigma_separated(F, D);
  if (!sep.ok) throw ConditionError("Sigma-separated", sep.blocking);

  std::vector<SigmaTilde> tildes;
  std::map<IntVec, RayOrigin> rays; // emplace keeps the first provenance in cone order
  for (const auto &s : F.cones) {
    auto cd = cone_decomposition(F, D, s);
    tildes.push_back(build_sigma_tilde(F.cone(s), cd.summands));
    for (std::size_t i = 0; i < tildes.back().cone.rays.size(); ++i)
      rays.emplace(tildes.back().cone.rays[i], tildes.back().origin[i]);
  }
  ExtFan E;
  E.base = F;
  E.k = D.k;
  E.fan.dim = F.dim + D.k;
  for (const auto &[r, o] : rays) {
    E.fan.rays.push_back(r);
    E.origin.push_back(o);
  }
  for (const auto &t : tildes) {
    IndexSet s;
    for (const auto &r : t.cone.rays) s.push_back(*E.fan.ray_index(r));
    std::sort(s.begin(), s.end());
    E.fan.cones.push_back(s);
  }
  Diagnostics ed = validate_fan(E.fan);
  // rays need not span when some cone misses the complex; only overlap matters here
  for (const auto &x : ed)
    if (x.message.find("span") == std::string::npos)
      throw std::logic_error("build_ext_fan: extended cones do not form a fan: " + x.message);
  E.pairing = IntMat(D.k, E.fan.rays.size());
  for (std::size_t i = 0; i < D.k; ++i)
    for (std::size_t j = 0; j < E.fan.rays.size(); ++j) E.pairing(i, j) = E.fan.rays[j][F.dim + i];
  return E;
}

ExtFan relabel_rays(const ExtFan &E, const std::vector<IntVec> &order) {
  if (order.size() != E.fan.rays.size()) throw std::invalid_argument("ray labels: wrong number of rays");
  std::vector<std::size_t> newIndex(E.fan.rays.size());
  std::vector<bool> seen(E.fan.rays.size(), false);
  for (std::size_t j = 0; j < order.size(); ++j) {
    auto i = E.fan.ray_index(order[j]);
    if (!i || seen[*i]) throw std::invalid_argument("ray labels: " + to_string(order[j]) + " is not a ray of the extended fan");
    seen[*i] = true;
    newIndex[*i] = j;
  }
  ExtFan R = E;
  R.fan.rays = order;
  for (std::size_t i = 0; i < E.fan.rays.size(); ++i) {
    R.origin[newIndex[i]] = E.origin[i];
    for (std::size_t r = 0; r < E.k; ++r) R.pairing(r, newIndex[i]) = E.pairing(r, i);
  }
  for (auto &s : R.fan.cones) {
    for (auto &x : s) x = newIndex[x];
    std::sort(s.begin(), s.end());
  }
  return R;
}

HomogeneousMap embedding_map(const ExtFan &E) {
  IntMat phi(E.fan.dim, E.base.dim);
  for (std::size_t i = 0; i < E.base.dim; ++i) phi(i, i) = 1;
  return toric_morphism_homog(E.base, E.fan, phi);
}

std::vector<Binomial> ci_equations(const ExtFan &E) {
  std::vector<Binomial> out;
  for (std::size_t i = 0; i < E.k; ++i) {
    Binomial b{i + 1, {}, {}};
    for (std::size_t j = 0; j < E.fan.rays.size(); ++j) {
      const Int &p = E.pairing(i, j);
      if (p > 0) b.plus[j] = p;
      else if (p < 0) b.minus[j] = -p;
    }
    out.push_back(b);
  }
  return out;
}

std::string render(const Binomial &b) { return render(b.plus) + " - " + render(b.minus) + " = 0"; }

CiCertificate verify_ci_toric(const ExtFan &E) {
  CiCertificate c;
  c.mixed_dominating = is_mixed_dominating(E.pairing);
  try {
    c.saturated = is_saturated(E.pairing);
  } catch (const std::invalid_argument &) {
    c.saturated = false;
  }
  return c;
}

IntVec lift_u(const IntVec &u, const Decomp &D) {
  std::size_t cells = D.base.cells.size();
  if (cells == 0) throw std::invalid_argument("lift_u: empty complex");
  std::vector<std::vector<Rat>> mins(cells, std::vector<Rat>(D.k + 1));
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t i = 0; i <= D.k; ++i) {
      try {
        mins[c][i] = min_value(u, D.summands[c][i]).value;
      } catch (const std::invalid_argument &) {
        throw ConditionError("attainment", "u is unbounded below on summand " + std::to_string(i));
      }
    }
  std::vector<Rat> best(D.k + 1);
  for (std::size_t i = 0; i <= D.k; ++i) {
    best[i] = mins[0][i];
    for (std::size_t c = 1; c < cells; ++c) best[i] = std::min(best[i], mins[c][i]);
  }
  // one cell must realise every summand minimum at once
  std::size_t bestCell = 0, bestCount = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t n = 0;
    for (std::size_t i = 0; i <= D.k; ++i) n += mins[c][i] == best[i];
    if (n > bestCount) bestCount = n, bestCell = c;
  }
  if (bestCount != D.k + 1) {
    std::size_t i = 0;
    while (mins[bestCell][i] == best[i]) ++i;
    throw ConditionError("attainment", "no single cell attains all summand minima (summand " + std::to_string(i) + ")");
  }
  IntVec ut = u;
  for (std::size_t i = 1; i <= D.k; ++i) ut.push_back(-floor_rat(best[i]));
  return ut;
}

std::string render(const FamilyEquation &e) {
  std::string s = render(e.binomial.plus) + " - " + render(e.binomial.minus) + " - " + e.parameter;
  if (!e.deformation.empty()) s += "*" + render(e.deformation);
  return s + " = 0";
}

Family deformation_family(const ExtFan &E, const IntVec &u, const Decomp &D, const std::vector<std::string> &names) {
  std::size_t d = D.base.dim;
  if (u.size() != d) throw std::invalid_argument("deformation_family: u has the wrong dimension");
  if (!names.empty() && names.size() != E.k) throw std::invalid_argument("deformation_family: wrong number of names");
  for (const auto &c : D.base.cells) {
    Rat m;
    try {
      m = min_value(u, c).value;
    } catch (const std::invalid_argument &) {
      throw ConditionError("min>=-1", "u is unbounded below on the cell " + to_string(c));
    }
    if (m < -1) throw ConditionError("min>=-1", "min <u, Q> = " + to_string(m) + " on the cell " + to_string(c));
  }
  Family fam;
  fam.utilde = lift_u(u, D);
  for (const auto &s : E.base.cones) {
    Polyhedron P = slice(E.base.cone(s), u);
    for (const auto &v : P.vertices) {
      Polyhedron ray = Polyhedron::from_points(d, {RatVec(d, Rat(0))}, {primitive(v)});
      bool hit = std::any_of(D.base.cells.begin(), D.base.cells.end(),
                             [&](const Polyhedron &c) { return !intersect(c, ray).is_empty(); });
      if (!hit)
        throw ConditionError("R_{>0}-inclusion", "vertex " + to_string(v) + " of the slice of cone " + set_str(s) +
                                                     " is not a positive multiple of a point of |Q|");
    }
  }
  Monomial xu = x_pow(E.fan.rays, fam.utilde);
  for (const auto &b : ci_equations(E)) {
    FamilyEquation eq{b, xu * b.minus, names.empty() ? "l_" + std::to_string(b.index) : names[b.index - 1]};
    if (!is_nonnegative(eq.deformation))
      throw std::logic_error("deformation_family: negative exponent in " + render(eq.deformation));
    fam.equations.push_back(eq);
  }
  return fam;
}

std::vector<IndexSet> slice_components(const Fan &F, const IntVec &u, std::size_t rho0) {
  if (rho0 >= F.rays.size() || dot(u, F.rays[rho0]) != -1)
    throw std::invalid_argument("slice_components: <u, v_rho0> must be -1");
  std::vector<std::size_t> parent(F.rays.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> present(F.rays.size(), false);
  for (const auto &s : F.cones) {
    std::vector<std::size_t> neg;
    for (auto r : s)
      if (r != rho0 && dot(u, F.rays[r]) < 0) neg.push_back(r);
    for (auto r : neg) present[r] = true;
    for (std::size_t i = 1; i < neg.size(); ++i) parent[find(neg[i])] = find(neg[0]);
  }
  std::map<std::size_t, IndexSet> groups;
  for (std::size_t r = 0; r < F.rays.size(); ++r)
    if (present[r]) groups[find(r)].push_back(r);
  std::vector<IndexSet> out;
  for (auto &[root, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

int cone_component(const Fan &F, const IntVec &u, std::size_t rho0, const std::vector<IndexSet> &comps,
                   const IndexSet &cone) {
  for (auto r : cone) {
    if (r == rho0 || dot(u, F.rays[r]) >= 0) continue;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (std::binary_search(comps[c].begin(), comps[c].end(), r)) return int(c);
  }
  return -1;
}

Decomp canonical_decomposition(const Fan &F, const IntVec &u, std::size_t rho0) {
  FanProperties fp = fan_properties(F);
  if (!fp.complete || !fp.simplicial)
    throw ConditionError("fan", "the component decomposition needs a complete simplicial fan");
  auto comps = slice_components(F, u, rho0);
  std::size_t d = F.dim, k = comps.empty() ? 0 : comps.size() - 1;
  Complex K = fan_slice(F, u);
  Decomp D{K, k, {}};
  if (k == 0) {
    for (const auto &c : K.cells) D.summands.push_back({c});
    return D;
  }
  RatVec vr = to_rat(F.rays[rho0]), zero(d, Rat(0));
  for (const auto &P : K.cells) {
    IndexSet rs;
    for (const auto &v : P.vertices) rs.push_back(*F.ray_index(primitive(v)));
    std::sort(rs.begin(), rs.end());
    int c = cone_component(F, u, rho0, comps, rs);
    Polyhedron Pc = compact_part(P);
    auto withRec = [&](const std::vector<RatVec> &vs) { return Polyhedron::from_points(d, vs, P.rays); };
    std::vector<RatVec> shifted;
    for (const auto &v : Pc.vertices) shifted.push_back(v - vr);
    std::vector<Polyhedron> parts;
    parts.push_back(c == 0 ? withRec(Pc.vertices) : withRec({vr}));
    for (std::size_t i = 1; i <= k; ++i) parts.push_back(c == int(i) ? withRec(shifted) : withRec({zero}));
    D.summands.push_back(parts);
  }
  Diagnostics dd = validate_decomp(D);
  if (!dd.empty()) throw std::logic_error("canonical_decomposition: invalid result\n" + to_string(dd));
  if (!check_condition_star(D).ok) throw std::logic_error("canonical_decomposition: condition (*) fails");
  return D;
}

std::vector<IntVec> simplicial_rays(const Fan &F, const IntVec &u, std::size_t rho0) {
  auto comps = slice_components(F, u, rho0);
  std::size_t d = F.dim, k = comps.empty() ? 0 : comps.size() - 1;
  std::vector<IntVec> out;
  IntVec x0 = F.rays[rho0];
  for (std::size_t i = 0; i < k; ++i) x0.push_back(-1);
  out.push_back(x0);
  for (std::size_t i = 0; i < k; ++i) out.push_back(unit(d + k, d + i));
  for (std::size_t r = 0; r < F.rays.size(); ++r) {
    if (r == rho0) continue;
    Int a = dot(u, F.rays[r]);
    IntVec v = F.rays[r];
    v.resize(d + k, Int(0));
    if (a < 0) {
      int c = cone_component(F, u, rho0, comps, {r});
      if (c == 0)
        for (std::size_t i = 0; i < k; ++i) v[d + i] = a;
      else {
        for (std::size_t j = 0; j < d; ++j) v[j] += a * F.rays[rho0][j];
        v[d + c - 1] = -a;
      }
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimplicialFamily simplicial_family(const Fan &F, const IntVec &u, std::size_t rho0) {
  SimplicialFamily sf{canonical_decomposition(F, u, rho0), std::nullopt, {}};
  if (sf.decomp.k == 0) {
    sf.family.utilde = u;
    return sf;
  }
  sf.ext = build_ext_fan(F, sf.decomp);
  if (sf.ext->fan.rays != simplicial_rays(F, u, rho0))
    throw std::logic_error("simplicial_family: rays differ from the closed-form generators");
  sf.family = deformation_family(*sf.ext, u, sf.decomp);
  IntVec expect = u;
  expect.resize(u.size() + sf.decomp.k, Int(0));
  if (sf.family.utilde != expect) throw std::logic_error("simplicial_family: lifted degree differs from u");
  return sf;
}

} // namespace tdef
