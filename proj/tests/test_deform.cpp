#include "tdef/deform.hpp"
#include "instances.hpp"

#include <gtest/gtest.h>

using namespace tdef;
using gen::iv;

namespace {
RatVec Q(std::vector<Rat> v) { return v; }
Polyhedron seg(RatVec a, RatVec b) { return Polyhedron::from_points(a.size(), {a, b}); }
Polyhedron pt(RatVec a) { return Polyhedron::point(a); }
Rat h(long n) { return Rat(n, 2); }

using fans::p112;
Fan blowup() { return fans::p112_blowup(); }

Decomp weighted_segment() {
  Decomp D{Complex{2, {seg(Q({h(1), 0}), Q({h(-1), -1}))}}, 1, {}};
  D.summands = {{pt(Q({h(1), 0})), seg(Q({0, 0}), Q({-1, -1}))}};
  return D;
}

Decomp two_segments() {
  Decomp D{Complex{2, {seg(Q({h(-1), -1}), Q({0, -1})), seg(Q({0, -1}), Q({h(1), 0}))}}, 1, {}};
  D.summands = {{seg(Q({h(-1), -1}), Q({0, -1})), pt(Q({0, 0}))},
                {pt(Q({0, -1})), seg(Q({0, 0}), Q({h(1), 1}))}};
  return D;
}

ExtFan ex52() {
  return relabel_rays(build_ext_fan(p112(), weighted_segment()),
                      {iv({1, 0, -2}), iv({0, 0, 1}), iv({-1, -1, 1}), iv({0, 1, 0})});
}
ExtFan ex53() {
  return relabel_rays(build_ext_fan(blowup(), two_segments()),
                      {iv({0, -1, -1}), iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 2, 2}), iv({-1, -2, -2})});
}

Fan triangle_fan() { return fans::mirror_p2_resolved(); }

// chain decomposition of [n1,n2],[n2,n3],[n3,n4]
Decomp chain(const std::vector<RatVec> &n) {
  std::size_t cells = n.size() - 1, k = cells - 1;
  Decomp D{Complex{2, {}}, k, {}};
  RatVec zero(2, Rat(0));
  for (std::size_t c = 0; c < cells; ++c) {
    D.base.cells.push_back(seg(n[c], n[c + 1]));
    std::vector<Polyhedron> parts;
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == 0) parts.push_back(c == 0 ? seg(n[0], n[1]) : pt(n[1]));
      else if (i < c) parts.push_back(pt(n[i + 1] - n[i]));
      else if (i == c) parts.push_back(seg(zero, n[i + 1] - n[i]));
      else parts.push_back(pt(zero));
    }
    D.summands.push_back(parts);
  }
  return D;
}

using fans::three_component_fan;

// s~ for a Hilbert basis element of sigma^v, using the summands of Q^sigma
IntVec lift_dual(const IntVec &s, const ConeDecomp &cd, std::size_t k) {
  if (cd.part.is_empty()) {
    IntVec x = s;
    x.resize(s.size() + k, Int(0));
    return x;
  }
  return lift_u(s, Decomp{Complex{s.size(), {cd.part}}, k, {cd.summands}});
}

void expect_lifts_in_dual(const ExtFan &E, const Decomp &D) {
  for (std::size_t c = 0; c < E.base.cones.size(); ++c) {
    auto cd = cone_decomposition(E.base, D, E.base.cones[c]);
    Cone st = E.fan.cone(E.fan.cones[c]);
    for (const auto &s : hilbert_basis(dual_cone(E.base.cone(E.base.cones[c])))) {
      IntVec st_ = lift_dual(s, cd, E.k);
      for (const auto &r : st.rays) EXPECT_GE(dot(st_, r), 0) << to_string(s) << " against " << to_string(r);
    }
  }
}

// sigma~ cut by N x 0 equals sigma
void expect_restricts(const ExtFan &E) {
  std::size_t d = E.base.dim;
  for (std::size_t c = 0; c < E.base.cones.size(); ++c) {
    Cone st = E.fan.cone(E.fan.cones[c]);
    std::vector<IntVec> eqs;
    for (std::size_t i = 0; i < E.k; ++i) eqs.push_back(unit(d + E.k, d + i));
    Cone cut = intersect(st, Cone::from_hrep(d + E.k, {}, eqs));
    std::vector<IntVec> rs;
    for (const auto &r : cut.rays) rs.push_back(IntVec(r.begin(), r.begin() + d));
    Cone base = E.base.cone(E.base.cones[c]);
    EXPECT_TRUE(Cone::from_generators(d, rs) == base) << to_string(base);
  }
}

void expect_homogeneous(const ExtFan &E, const Family &fam) {
  auto cl = class_group(E.fan);
  std::size_t n = E.fan.rays.size();
  for (const auto &eq : fam.equations) {
    IntVec dp = degree(eq.binomial.plus, cl, n);
    EXPECT_EQ(dp, degree(eq.binomial.minus, cl, n));
    EXPECT_EQ(dp, degree(eq.deformation, cl, n));
  }
}
} // namespace

TEST(ExtFan, WeightedProjectivePlane) {
  ExtFan E = ex52();
  EXPECT_EQ(E.fan.cones, (std::vector<IndexSet>{{0, 1, 2}, {0, 2, 3}, {0, 1, 3}}));
  EXPECT_EQ(E.pairing.row(0), iv({-2, 1, 1, 0}));
  auto eqs = ci_equations(E);
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_EQ(render(eqs[0]), "x_2*x_3 - x_1^2 = 0");
  EXPECT_EQ(render(embedding_map(E)), "(y_1, y_2, y_3) -> (y_1*y_2, y_1^2, y_2^2, y_3)");
  EXPECT_TRUE(verify_ci_toric(E).ok());
}

TEST(ExtFan, BlowupOfWeightedPlane) {
  ExtFan E = ex53();
  EXPECT_EQ(E.fan.cones.size(), 4u);
  EXPECT_EQ(E.pairing.row(0), iv({-1, 1, 0, 2, -2}));
  EXPECT_EQ(render(ci_equations(E)[0]), "x_2*x_4^2 - x_1*x_5^2 = 0");
  EXPECT_EQ(render(embedding_map(E)), "(y_1, y_2, y_3, y_4) -> (y_1^2*y_4, y_2^2*y_4, y_3, y_1, y_2)");
  EXPECT_TRUE(verify_ci_toric(E).ok());
}

TEST(ExtFan, Provenance) {
  ExtFan E = ex52();
  EXPECT_EQ(E.origin[0].kind, RayOrigin::Kind::Vertex);
  EXPECT_EQ(E.origin[0].summand, 0u);
  EXPECT_EQ(E.origin[3].kind, RayOrigin::Kind::BaseRay);
  EXPECT_EQ(to_string(E.origin[2]), "summand 1 vertex (-1,-1)");
}

TEST(ExtFan, RestrictionAndLifts) {
  for (auto [F, D] : {std::pair{p112(), weighted_segment()}, std::pair{blowup(), two_segments()}}) {
    ExtFan E = build_ext_fan(F, D);
    expect_restricts(E);
    expect_lifts_in_dual(E, D);
  }
}

TEST(ExtFan, PreconditionsNamed) {
  Decomp D = two_segments();
  std::swap(D.summands[1][0], D.summands[1][1]);
  try {
    build_ext_fan(blowup(), D);
    FAIL();
  } catch (const ConditionError &e) {
    EXPECT_EQ(e.condition, "face-compatibility");
  }
  // [0,1] x {1} + [0,1] x {0}: the vertex (1,1) has no lattice summand issue but the
  // sum (1/2,1/2)+(1/2,1/2) breaks (*)
  Fan quad{2, {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  Decomp bad{Complex{2, {seg(Q({1, 0}), Q({0, 1}))}}, 1, {}};
  bad.summands = {{seg(Q({h(1), 0}), Q({0, h(1)})), seg(Q({h(1), 0}), Q({0, h(1)}))}};
  try {
    build_ext_fan(quad, bad);
    FAIL();
  } catch (const ConditionError &e) {
    EXPECT_EQ(e.condition, "(*)");
  }
}

TEST(CiCertificate, AdversarialMatrix) {
  IntMat A(2, 2);
  A(0, 0) = 1, A(0, 1) = -1, A(1, 0) = -1, A(1, 1) = 1;
  EXPECT_FALSE(is_mixed_dominating(A));
  ExtFan E = ex52();
  E.pairing = A;
  EXPECT_FALSE(verify_ci_toric(E).ok());
}

TEST(LiftU, Examples) {
  EXPECT_EQ(lift_u(iv({-2, 2}), weighted_segment()), iv({-2, 2, 0}));
  EXPECT_EQ(lift_u(iv({-1, 1}), two_segments()), iv({-1, 1, 0}));
  EXPECT_EQ(lift_u(iv({0, 0}), two_segments()), iv({0, 0, 0}));
  EXPECT_EQ(lift_u(iv({1, 0}), two_segments()), iv({1, 0, 0}));
  // Q_0 is lowest on the first cell, Q_1 on the second
  try {
    lift_u(iv({1, -1}), two_segments());
    FAIL();
  } catch (const ConditionError &e) {
    EXPECT_EQ(e.condition, "attainment");
  }
}

TEST(Family, Examples) {
  ExtFan E = ex52();
  Family f = deformation_family(E, iv({-2, 2}), weighted_segment());
  ASSERT_EQ(f.equations.size(), 1u);
  EXPECT_EQ(render(f.equations[0]), "x_2*x_3 - x_1^2 - l_1*x_4^2 = 0");
  EXPECT_EQ(f.utilde, iv({-2, 2, 0}));
  expect_homogeneous(E, f);

  ExtFan E3 = ex53();
  Family f3 = deformation_family(E3, iv({-1, 1}), two_segments());
  EXPECT_EQ(render(f3.equations[0]), "x_2*x_4^2 - x_1*x_5^2 - l_1*x_3*x_4*x_5 = 0");
  expect_homogeneous(E3, f3);
  EXPECT_EQ(render(deformation_family(E3, iv({-1, 1}), two_segments(), {"t"}).equations[0]),
            "x_2*x_4^2 - x_1*x_5^2 - t*x_3*x_4*x_5 = 0");
}

TEST(Family, BelowMinusOneRejected) {
  try {
    deformation_family(ex52(), iv({-4, 4}), weighted_segment());
    FAIL();
  } catch (const ConditionError &e) {
    EXPECT_EQ(e.condition, "min>=-1");
  }
}

TEST(ExtFan, EdgeChain) {
  Fan F = triangle_fan();
  Decomp D = chain({Q({-1, -1}), Q({0, -1}), Q({1, -1}), Q({2, -1})});
  ASSERT_TRUE(validate_decomp(D).empty()) << to_string(validate_decomp(D));
  ExtFan E = build_ext_fan(F, D);
  std::set<IntVec> got(E.fan.rays.begin(), E.fan.rays.end());
  // n1 - e1 - e2, n2 - e1 - e2, e_j, n2 - n1 + e_j
  for (auto v : {iv({-1, -1, -1, -1}), iv({0, -1, -1, -1}), iv({0, 0, 1, 0}), iv({0, 0, 0, 1}), iv({1, 0, 1, 0}),
                 iv({1, 0, 0, 1})})
    EXPECT_TRUE(got.count(v)) << to_string(v);
  for (auto v : {iv({1, 0, 0, 0}), iv({0, 1, 0, 0}), iv({-1, 2, 0, 0}), iv({-1, 1, 0, 0}), iv({-1, 0, 0, 0})})
    EXPECT_TRUE(got.count(v)) << to_string(v);
  EXPECT_EQ(got.size(), 11u);
  EXPECT_TRUE(verify_ci_toric(E).ok());
  expect_restricts(E);
  expect_lifts_in_dual(E, D);
  Family f = deformation_family(E, iv({0, 1}), D);
  EXPECT_EQ(f.equations.size(), 2u);
  expect_homogeneous(E, f);
}

TEST(Canonical, EdgeChainComponents) {
  // u = (0,1) with rho0 = n2: C_0 = {n1}, C_1 = {n3, n4}
  Fan F = triangle_fan();
  std::size_t n2 = *F.ray_index(iv({0, -1}));
  auto comps = slice_components(F, iv({0, 1}), n2);
  ASSERT_EQ(comps.size(), 2u);
  std::vector<IntVec> c0, c1;
  for (auto r : comps[0]) c0.push_back(F.rays[r]);
  for (auto r : comps[1]) c1.push_back(F.rays[r]);
  EXPECT_EQ(c0, (std::vector<IntVec>{iv({-1, -1})}));
  EXPECT_EQ(c1, (std::vector<IntVec>{iv({1, -1}), iv({2, -1})}));
  auto sf = simplicial_family(F, iv({0, 1}), n2);
  ASSERT_TRUE(sf.ext.has_value());
  EXPECT_EQ(sf.decomp.k, 1u);
  EXPECT_TRUE(verify_ci_toric(*sf.ext).ok());
  expect_restricts(*sf.ext);
  expect_homogeneous(*sf.ext, sf.family);
  // the chain and the component decomposition agree on which vertices leave rho0 on each side
  std::size_t n1 = *F.ray_index(iv({-1, -1}));
  EXPECT_EQ(slice_components(F, iv({0, 1}), n1).size(), 1u);
  EXPECT_EQ(simplicial_family(F, iv({0, 1}), n1).decomp.k, 0u);
}

TEST(Canonical, NoFamiliesOnWeightedPlane) {
  Fan F = p112();
  int families = 0;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (std::size_t r = 0; r < F.rays.size(); ++r) {
        IntVec u = iv({a, b});
        if (dot(u, F.rays[r]) != -1) continue;
        auto sf = simplicial_family(F, u, r);
        if (sf.decomp.k > 0) ++families;
        else EXPECT_TRUE(sf.family.equations.empty());
      }
  EXPECT_EQ(families, 0);
}

TEST(Canonical, ThreeComponents) {
  Fan F = three_component_fan();
  ASSERT_TRUE(validate_fan(F).empty()) << to_string(validate_fan(F));
  ASSERT_TRUE(fan_properties(F).complete);
  IntVec u = iv({0, 0, -1});
  auto comps = slice_components(F, u, 0);
  ASSERT_EQ(comps.size(), 3u);
  std::vector<std::size_t> sizes;
  for (const auto &c : comps) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 2}));
  auto sf = simplicial_family(F, u, 0);
  EXPECT_EQ(sf.decomp.k, 2u);
  ASSERT_TRUE(sf.ext.has_value());
  EXPECT_EQ(sf.family.utilde, iv({0, 0, -1, 0, 0}));
  ASSERT_EQ(sf.family.equations.size(), 2u);
  EXPECT_TRUE(verify_ci_toric(*sf.ext).ok());
  expect_restricts(*sf.ext);
  expect_lifts_in_dual(*sf.ext, sf.decomp);
  expect_homogeneous(*sf.ext, sf.family);
  // x_{xi_i} times component i against x_{xi_0} times C_0; the deformation term
  // only uses rays off the slice
  for (const auto &eq : sf.family.equations) {
    EXPECT_EQ(eq.binomial.plus.count(*sf.ext->fan.ray_index(unit(5, 2 + eq.binomial.index))), 1u);
    for (auto [r, e] : eq.deformation) EXPECT_GE(dot(iv({0, 0, -1, 0, 0}), sf.ext->fan.rays[r]), 0);
  }
}

TEST(Canonical, RandomPlanarFansProperties) {
  std::mt19937 rng(7);
  int built = 0;
  for (int t = 0; t < 20; ++t) {
    Fan F = gen::random_complete_fan2(rng, 3, 4, 7);
    if (!fan_properties(F).simplicial) continue;
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b)
        for (std::size_t r = 0; r < F.rays.size(); ++r) {
          IntVec u = iv({a, b});
          if (dot(u, F.rays[r]) != -1) continue;
          auto sf = simplicial_family(F, u, r);
          if (!sf.ext) continue;
          ++built;
          EXPECT_TRUE(verify_ci_toric(*sf.ext).ok());
          expect_restricts(*sf.ext);
          expect_homogeneous(*sf.ext, sf.family);
        }
  }
  EXPECT_GT(built, 0);
}

TEST(ExtFan, RandomInstancesCertified) {
  std::mt19937 rng(3);
  auto inst = gen::random_instances(rng, 7);
  std::set<std::string> kinds;
  for (const auto &I : inst) {
    kinds.insert(I.kind);
    EXPECT_LE(I.fan.dim, 3u);
    EXPECT_EQ(gen::certificate_failure(I.ext, I.decomp), "") << I.kind << " k = " << I.decomp.k;
  }
  EXPECT_EQ(kinds.size(), 4u);
}
