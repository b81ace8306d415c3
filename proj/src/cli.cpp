#include "tdef/cli.hpp"
#include "tdef/fano.hpp"
#include "tdef/t1.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tdef {

namespace {

using json = nlohmann::json;

// ---- workspace parsing

Rat rat_of(const json &j, const std::string &ctx) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (j.is_string()) {
    if (auto q = parse_rat(j.get<std::string>())) return *q;
    throw WorkspaceError("rational", ctx + ": cannot parse \"" + j.get<std::string>() + "\"");
  }
  throw WorkspaceError("rational", ctx + ": expected an integer or a \"p/q\" string, got " + j.dump());
}

Int int_of(const json &j, const std::string &ctx) {
  Rat q = rat_of(j, ctx);
  if (q.get_den() != 1) throw WorkspaceError("integer", ctx + ": " + to_string(q) + " is not an integer");
  return q.get_num();
}

const json &field(const json &j, const char *key, const std::string &ctx) {
  if (!j.is_object() || !j.contains(key)) throw WorkspaceError("schema", ctx + ": missing \"" + key + "\"");
  return j.at(key);
}

const json &array_of(const json &j, const std::string &ctx) {
  if (!j.is_array()) throw WorkspaceError("schema", ctx + ": expected an array");
  return j;
}

IntVec intvec_of(const json &j, std::size_t dim, const std::string &ctx) {
  array_of(j, ctx);
  if (j.size() != dim)
    throw WorkspaceError("dimension", ctx + ": expected " + std::to_string(dim) + " entries, got " +
                                          std::to_string(j.size()));
  IntVec v;
  for (const auto &x : j) v.push_back(int_of(x, ctx));
  return v;
}

RatVec ratvec_of(const json &j, std::size_t dim, const std::string &ctx) {
  array_of(j, ctx);
  if (j.size() != dim)
    throw WorkspaceError("dimension", ctx + ": expected " + std::to_string(dim) + " entries, got " +
                                          std::to_string(j.size()));
  RatVec v;
  for (const auto &x : j) v.push_back(rat_of(x, ctx));
  return v;
}

std::size_t size_of(const json &j, const std::string &ctx) {
  if (!j.is_number_unsigned()) throw WorkspaceError("schema", ctx + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

// {"vertices": [...], "rays": [...]} or a bare list of points
Polyhedron poly_of(const json &j, std::size_t dim, const std::string &ctx) {
  const json &vs = j.is_array() ? j : field(j, "vertices", ctx);
  std::vector<RatVec> pts;
  for (const auto &p : array_of(vs, ctx)) pts.push_back(ratvec_of(p, dim, ctx + " vertex"));
  if (pts.empty()) throw WorkspaceError("schema", ctx + ": a polyhedron needs at least one vertex");
  std::vector<IntVec> rays;
  if (j.is_object() && j.contains("rays"))
    for (const auto &r : array_of(j.at("rays"), ctx)) rays.push_back(intvec_of(r, dim, ctx + " ray"));
  return Polyhedron::from_points(dim, pts, rays);
}

std::vector<Polyhedron> polys_of(const json &j, std::size_t dim, const std::string &ctx) {
  std::vector<Polyhedron> out;
  for (const auto &p : array_of(j, ctx)) out.push_back(poly_of(p, dim, ctx + "[" + std::to_string(out.size()) + "]"));
  return out;
}

Fan fan_of(const json &j, std::size_t dim, const std::string &ctx) {
  Fan F{dim, {}, {}};
  for (const auto &r : array_of(field(j, "rays", ctx), ctx + ".rays"))
    F.rays.push_back(intvec_of(r, dim, ctx + ".rays"));
  for (const auto &c : array_of(field(j, "cones", ctx), ctx + ".cones")) {
    IndexSet s;
    for (const auto &i : array_of(c, ctx + ".cones")) {
      std::size_t r = size_of(i, ctx + ".cones");
      if (r >= F.rays.size())
        throw WorkspaceError("index", ctx + ".cones: ray index " + std::to_string(r) + " out of range");
      s.push_back(r);
    }
    std::sort(s.begin(), s.end());
    F.cones.push_back(s);
  }
  return F;
}

Workspace parse_document(const json &doc) {
  if (!doc.is_object()) throw WorkspaceError("schema", "top level must be an object");
  if (!doc.contains("schema")) throw WorkspaceError("schema", "missing schema tag");
  if (doc.at("schema") != kWorkspaceSchema)
    throw WorkspaceError("schema", "unsupported schema " + doc.at("schema").dump());
  Workspace ws;
  ws.name = doc.value("name", "");
  ws.dim = size_of(field(doc, "dim", "workspace"), "dim");
  std::size_t d = ws.dim;
  if (doc.contains("fan")) ws.fan = fan_of(doc.at("fan"), d, "fan");
  if (doc.contains("decomposition")) {
    const json &dj = doc.at("decomposition");
    Decomp D{Complex{d, {}}, size_of(field(dj, "k", "decomposition"), "decomposition.k"), {}};
    std::size_t c = 0;
    for (const auto &cell : array_of(field(dj, "cells", "decomposition"), "decomposition.cells")) {
      std::string ctx = "decomposition.cells[" + std::to_string(c++) + "]";
      D.base.cells.push_back(poly_of(field(cell, "cell", ctx), d, ctx + ".cell"));
      auto parts = polys_of(field(cell, "summands", ctx), d, ctx + ".summands");
      if (parts.size() != D.k + 1)
        throw WorkspaceError("schema", ctx + ": expected " + std::to_string(D.k + 1) + " summands");
      D.summands.push_back(parts);
    }
    ws.complex = D.base;
    ws.decomp = D;
  } else if (doc.contains("complex")) {
    ws.complex = Complex{d, polys_of(field(doc.at("complex"), "cells", "complex"), d, "complex.cells")};
  }
  if (doc.contains("ext_ray_order")) {
    std::size_t k = ws.decomp ? ws.decomp->k : 0;
    for (const auto &r : array_of(doc.at("ext_ray_order"), "ext_ray_order"))
      ws.ext_ray_order.push_back(intvec_of(r, d + k, "ext_ray_order"));
  }
  if (doc.contains("morphism")) {
    const json &mj = doc.at("morphism");
    std::size_t sd = size_of(field(mj, "source_dim", "morphism"), "morphism.source_dim");
    Workspace::Morphism m{fan_of(field(mj, "source", "morphism"), sd, "morphism.source"), IntMat(d, sd), "y"};
    const json &rows = array_of(field(mj, "matrix", "morphism"), "morphism.matrix");
    if (rows.size() != d) throw WorkspaceError("dimension", "morphism.matrix: expected " + std::to_string(d) + " rows");
    for (std::size_t i = 0; i < d; ++i) {
      IntVec row = intvec_of(rows[i], sd, "morphism.matrix");
      for (std::size_t c = 0; c < sd; ++c) m.matrix(i, c) = row[c];
    }
    m.variable = mj.value("variable", "y");
    ws.morphism = m;
  }
  if (doc.contains("query")) {
    const json &q = doc.at("query");
    if (q.contains("u")) ws.u = intvec_of(q.at("u"), d, "query.u");
    if (q.contains("R")) ws.R = intvec_of(q.at("R"), d, "query.R");
    if (q.contains("rho0")) {
      ws.rho0 = size_of(q.at("rho0"), "query.rho0");
      if (!ws.fan || *ws.rho0 >= ws.fan->rays.size()) throw WorkspaceError("index", "query.rho0 out of range");
    }
  }
  if (doc.contains("cayley")) {
    const json &cj = doc.at("cayley");
    Workspace::Cayley c;
    c.summands = polys_of(field(cj, "summands", "cayley"), d, "cayley.summands");
    if (c.summands.size() < 2) throw WorkspaceError("schema", "cayley.summands: need at least two polytopes");
    if (cj.contains("subdivision"))
      c.subdivision = polys_of(cj.at("subdivision"), d + c.summands.size() - 1, "cayley.subdivision");
    ws.cayley = c;
  }
  if (doc.contains("reflexive")) {
    const json &rj = doc.at("reflexive");
    ws.reflexive = Workspace::Reflexive{poly_of(field(rj, "polytope", "reflexive"), d, "reflexive.polytope"),
                                        polys_of(field(rj, "summands", "reflexive"), d, "reflexive.summands")};
  }
  return ws;
}

// ---- output helpers

std::string var(std::size_t i) { return "x_" + std::to_string(i + 1); }

std::string vars(const IndexSet &s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + var(s[i]);
  return out + "}";
}

json jvec(const IntVec &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  return a;
}

json jpoly(const Polyhedron &P) { return to_string(P); }

struct Context {
  Workspace ws;
  bool structured = false, oracle = false;
  long sweep = 2;
  std::optional<IntVec> u;
  std::ostringstream text;
  json doc = json::object();
};

const Fan &need_fan(const Context &c) {
  if (!c.ws.fan) throw WorkspaceError("schema", "this command needs a \"fan\" section");
  return *c.ws.fan;
}
const Decomp &need_decomp(const Context &c) {
  if (!c.ws.decomp) throw WorkspaceError("schema", "this command needs a \"decomposition\" section");
  return *c.ws.decomp;
}

ExtFan ext_fan(const Context &c) {
  ExtFan E = build_ext_fan(need_fan(c), need_decomp(c));
  if (!c.ws.ext_ray_order.empty()) E = relabel_rays(E, c.ws.ext_ray_order);
  return E;
}

void print_ext(Context &c, const ExtFan &E) {
  auto &t = c.text;
  t << "extended fan: dimension " << E.fan.dim << ", k = " << E.k << ", " << E.fan.rays.size() << " rays\n";
  json rays = json::array();
  for (std::size_t i = 0; i < E.fan.rays.size(); ++i) {
    t << "  " << var(i) << " = " << to_string(E.fan.rays[i]) << "  from " << to_string(E.origin[i]) << "\n";
    rays.push_back({{"label", var(i)}, {"ray", jvec(E.fan.rays[i])}, {"origin", to_string(E.origin[i])}});
  }
  t << "cones:\n";
  json cones = json::array();
  for (const auto &s : E.fan.cones) {
    t << "  " << vars(s) << "\n";
    cones.push_back(vars(s));
  }
  c.doc["extended_fan"] = {{"dim", E.fan.dim}, {"k", E.k}, {"rays", rays}, {"cones", cones}};
}

// ---- commands

int cmd_validate(Context &c) {
  const Workspace &ws = c.ws;
  json checks = json::array();
  bool all = true, blocked = false;
  auto report = [&](const std::string &name, const Diagnostics &d) {
    json msgs = json::array();
    for (const auto &x : d) msgs.push_back({{"label", x.label}, {"message", x.message}});
    std::string status = blocked ? "skipped" : d.empty() ? "ok" : "FAIL";
    c.text << name << ": " << status << "\n";
    for (const auto &x : d) c.text << "  " << x.label << ": " << x.message << "\n";
    checks.push_back({{"check", name}, {"status", status}, {"messages", msgs}});
    if (!d.empty()) all = false, blocked = true;
  };
  if (ws.fan) report("fan", validate_fan(*ws.fan));
  if (ws.complex) report("complex", validate_complex(*ws.complex));
  if (ws.decomp) {
    report("decomposition", blocked ? Diagnostics{} : validate_decomp(*ws.decomp));
    Diagnostics star;
    if (!blocked)
      for (const auto &v : check_condition_star(*ws.decomp).offending)
        star.push_back({"(*)", "vertex " + to_string(v) + " has two or more non-lattice summands"});
    report("condition (*)", star);
  }
  if (ws.fan && ws.complex) {
    Diagnostics comp;
    if (!blocked && !is_sigma_compatible(*ws.complex, *ws.fan))
      comp.push_back({"Sigma-compatible", "some cone meets |Q| in a set that is not a cell"});
    report("Sigma-compatibility", comp);
  }
  if (ws.fan && ws.decomp) {
    Diagnostics sep;
    if (!blocked) {
      auto r = is_sigma_separated(*ws.fan, *ws.decomp);
      if (!r.ok) sep.push_back({"Sigma-separated", r.blocking});
    }
    report("Sigma-separation", sep);
  }
  if (checks.empty()) throw WorkspaceError("schema", "nothing to validate");
  c.text << "result: " << (all ? "valid" : "invalid") << "\n";
  c.doc["checks"] = checks;
  c.doc["valid"] = all;
  return all ? 0 : 1;
}

int cmd_embed(Context &c) {
  bool ok = true;
  if (c.ws.decomp) {
    ExtFan E = ext_fan(c);
    print_ext(c, E);
    json eqs = json::array();
    c.text << "equations:\n";
    for (const auto &b : ci_equations(E)) {
      c.text << "  " << render(b) << "\n";
      eqs.push_back(render(b));
    }
    CiCertificate cert = verify_ci_toric(E);
    ok = cert.ok();
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    c.text << "certificate: mixed dominating " << yn(cert.mixed_dominating) << ", saturated " << yn(cert.saturated)
           << "\n";
    std::string emb = render(embedding_map(E));
    c.text << "embedding: " << emb << "\n";
    c.doc["equations"] = eqs;
    c.doc["certificate"] = {{"mixed_dominating", cert.mixed_dominating}, {"saturated", cert.saturated}};
    c.doc["embedding"] = emb;
  }
  if (c.ws.morphism) {
    const auto &m = *c.ws.morphism;
    std::string s = render(toric_morphism_homog(m.source, need_fan(c), m.matrix), m.variable);
    c.text << "morphism: " << s << "\n";
    c.doc["morphism"] = s;
  }
  if (!c.ws.decomp && !c.ws.morphism)
    throw WorkspaceError("schema", "embed needs a \"decomposition\" or a \"morphism\" section");
  return ok ? 0 : 1;
}

int cmd_deform(Context &c) {
  if (!c.u) throw WorkspaceError("query", "deform needs u (query.u or --u)");
  const IntVec &u = *c.u;
  c.doc["u"] = jvec(u);
  c.text << "u = " << to_string(u) << "\n";
  json eqs = json::array();
  auto emit = [&](const Family &fam) {
    c.text << "u~ = " << to_string(fam.utilde) << "\nequations:\n";
    for (const auto &e : fam.equations) {
      c.text << "  " << render(e) << "\n";
      eqs.push_back(render(e));
    }
    c.doc["utilde"] = jvec(fam.utilde);
    c.doc["equations"] = eqs;
  };
  if (c.ws.decomp) {
    ExtFan E = ext_fan(c);
    print_ext(c, E);
    emit(deformation_family(E, u, need_decomp(c)));
    return 0;
  }
  if (!c.ws.rho0) throw WorkspaceError("query", "deform needs a decomposition or query.rho0");
  std::size_t rho0 = *c.ws.rho0;
  c.text << "rho0 = " << var(rho0) << "\n";
  c.doc["rho0"] = var(rho0);
  SimplicialFamily sf = simplicial_family(need_fan(c), u, rho0);
  c.doc["k"] = sf.decomp.k;
  if (!sf.ext) {
    c.text << "k = 0: removing v_rho0 does not disconnect the slice; no family\n";
    c.doc["equations"] = eqs;
    return 0;
  }
  c.text << "components: " << sf.decomp.k + 1 << "\n";
  print_ext(c, *sf.ext);
  emit(sf.family);
  return 0;
}

std::vector<IntVec> sweep_box(const Fan &F, long scale) {
  HRep H;
  for (const auto &v : F.rays) H.ineqs.push_back({v, Int(-scale)});
  return lattice_points(from_hrep(F.dim, H));
}

int cmd_t1(Context &c) {
  const Fan &F = need_fan(c);
  if (c.sweep < 0) throw WorkspaceError("option", "--sweep-box must be nonnegative");
  std::vector<IntVec> box = sweep_box(F, c.sweep);
  c.text << "sweep box: " << c.sweep << "*Delta, " << box.size() << " degrees, " << F.rays.size() << " rays\n";
  c.text << "nonzero H^1 pieces:\n";
  json pieces = json::array(), mismatches = json::array();
  std::size_t total = 0, checked = 0;
  for (const auto &u : box)
    for (std::size_t r = 0; r < F.rays.size(); ++r) {
      H1Piece p = h1_components(F, u, r);
      total += p.dimension;
      if (p.dimension > 0) {
        std::string comps;
        json cj = json::array();
        for (const auto &s : p.components) {
          comps += (comps.empty() ? "" : " ") + vars(s);
          cj.push_back(vars(s));
        }
        c.text << "  u = " << to_string(u) << "  rho = " << var(r) << "  dim " << p.dimension << "  components "
               << comps << "\n";
        pieces.push_back({{"u", jvec(u)}, {"rho", var(r)}, {"dim", p.dimension}, {"components", cj}});
      }
      if (c.oracle) {
        ++checked;
        std::size_t o = h1_graded_cech_oracle(F, r, u);
        if (o != p.dimension) {
          c.text << "  MISMATCH u = " << to_string(u) << " rho = " << var(r) << ": components " << p.dimension
                 << ", Cech " << o << "\n";
          mismatches.push_back({{"u", jvec(u)}, {"rho", var(r)}, {"components", p.dimension}, {"cech", o}});
        }
      }
    }
  c.text << "sweep total: " << total << "\n";
  c.doc["sweep"] = {{"scale", c.sweep}, {"degrees", box.size()}, {"pieces", pieces}, {"total", total}};
  try {
    ReflexiveH1 R = h1_total_reflexive(F);
    c.text << "face table:\n";
    json terms = json::array();
    for (const auto &t : R.terms) {
      std::size_t contrib = t.interior_points * t.interior_rays;
      c.text << "  Gamma = " << to_string(t.gamma) << "  Gamma* = " << to_string(t.gamma_star) << "  points "
             << t.interior_points << " x rays " << t.interior_rays << " = " << contrib << "\n";
      terms.push_back({{"gamma", jpoly(t.gamma)},
                       {"gamma_star", jpoly(t.gamma_star)},
                       {"interior_points", t.interior_points},
                       {"interior_rays", t.interior_rays},
                       {"contribution", contrib}});
    }
    c.text << "reflexive total: " << R.total << "\n";
    c.doc["reflexive"] = {{"applicable", true}, {"terms", terms}, {"total", R.total}};
  } catch (const ConditionError &e) {
    c.text << "reflexive total: not applicable (" << e.what() << ")\n";
    c.doc["reflexive"] = {{"applicable", false}, {"reason", e.what()}};
  }
  if (c.oracle) {
    c.text << "oracle: " << checked << " pairs checked, " << mismatches.size() << " mismatches\n";
    c.doc["oracle"] = {{"checked", checked}, {"mismatches", mismatches}};
  }
  return mismatches.empty() ? 0 : 1;
}

int cmd_fano(Context &c) {
  if (!c.ws.reflexive) throw WorkspaceError("schema", "fano needs a \"reflexive\" section");
  const auto &r = *c.ws.reflexive;
  FanoFamily fam = c.ws.decomp ? fano_family(r.polytope, r.summands, need_fan(c), *c.ws.decomp)
                               : fano_family(r.polytope, r.summands);
  auto &t = c.text;
  std::size_t k = fam.ext.k;
  t << "Delta = " << to_string(fam.delta.polytope) << "\n";
  t << "Delta* = " << to_string(fam.delta.dual) << "\n";
  t << "k = " << k << ", l(Delta) = " << fam.points.size() + 1 << ", parameters = " << fam.parameter_count << "\n";
  t << "points:\n";
  json pts = json::array();
  for (std::size_t j = 0; j < fam.points.size(); ++j) {
    const Polyhedron &G = fam.delta.faces[fam.faces[j]];
    t << "  u_" << j + 1 << " = " << to_string(fam.points[j]) << "  face " << to_string(G) << "  u~ = "
      << to_string(fam.lifts[j]) << "\n";
    pts.push_back({{"label", "u_" + std::to_string(j + 1)},
                   {"u", jvec(fam.points[j])},
                   {"face", jpoly(G)},
                   {"lift", jvec(fam.lifts[j])}});
  }
  print_ext(c, fam.ext);
  t << "equations:\n";
  json eqs = json::array();
  for (const auto &e : fam.equations) {
    t << "  " << render(e) << "\n";
    eqs.push_back(render(e));
  }
  c.doc["delta"] = jpoly(fam.delta.polytope);
  c.doc["delta_star"] = jpoly(fam.delta.dual);
  c.doc["k"] = k;
  c.doc["parameters"] = fam.parameter_count;
  c.doc["points"] = pts;
  c.doc["equations"] = eqs;
  return 0;
}

int cmd_cayley(Context &c) {
  auto &t = c.text;
  auto print_hull = [&](const CayleyPolytope &cp) {
    t << "Cayley polytope: dimension " << cp.hull.dim << ", " << cp.hull.vertices.size() << " vertices\n";
    json vs = json::array();
    for (std::size_t i = 0; i < cp.hull.vertices.size(); ++i) {
      t << "  " << to_string(cp.hull.vertices[i]) << "  summand " << cp.tags[i] << "\n";
      vs.push_back({{"vertex", to_string(cp.hull.vertices[i])}, {"summand", cp.tags[i]}});
    }
    c.doc["hull"] = {{"polytope", jpoly(cp.hull)}, {"vertices", vs}};
  };
  if (c.ws.cayley) {
    const auto &cy = *c.ws.cayley;
    CayleyPolytope cp = cayley_polytope(cy.summands);
    print_hull(cp);
    if (!cy.subdivision.empty()) {
      Decomp D = mixed_subdivision_from_cayley(cy.subdivision, cp.d, cp.k);
      t << "mixed subdivision: " << D.base.cells.size() << " cells\n";
      json cells = json::array();
      for (std::size_t i = 0; i < D.base.cells.size(); ++i) {
        std::string parts;
        json pj = json::array();
        for (const auto &p : D.summands[i]) {
          parts += (parts.empty() ? "" : " + ") + to_string(p);
          pj.push_back(jpoly(p));
        }
        t << "  " << to_string(D.base.cells[i]) << " = " << parts << "\n";
        cells.push_back({{"cell", jpoly(D.base.cells[i])}, {"summands", pj}});
      }
      c.doc["mixed_subdivision"] = cells;
    }
    return 0;
  }
  if (!c.ws.reflexive) throw WorkspaceError("schema", "cayley needs a \"cayley\" or \"reflexive\" section");
  const auto &r = *c.ws.reflexive;
  CayleyReflexive cr = cayley_reflexive(r.summands);
  print_hull(cr.cayley);
  t << "reflexive: yes, dual " << to_string(cr.dual) << "\n";
  FanoFamily fam = fano_family(r.polytope, r.summands);
  bool match = same_fan(cr.mixed_fan, fam.ext.fan);
  t << "cones over facets meeting every summand: " << cr.mixed_fan.cones.size() << " of "
    << facets(cr.cayley.hull).size() << "\n";
  t << "matches the extended fan: " << (match ? "yes" : "no") << "\n";
  c.doc["reflexive"] = {{"dual", jpoly(cr.dual)},
                        {"mixed_cones", cr.mixed_fan.cones.size()},
                        {"facets", facets(cr.cayley.hull).size()},
                        {"matches_extended_fan", match}};
  return match ? 0 : 1;
}

// what() without the leading "label: "
std::string detail(const std::string &what, const std::string &label) {
  return what.rfind(label + ": ", 0) == 0 ? what.substr(label.size() + 2) : what;
}

IntVec parse_u_option(const std::string &s, std::size_t dim) {
  json a = json::array();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) a.push_back(tok);
  return intvec_of(a, dim, "--u");
}

} // namespace

Workspace parse_workspace(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw WorkspaceError("json", e.what());
  }
  try {
    return parse_document(doc);
  } catch (const json::exception &e) {
    throw WorkspaceError("schema", e.what());
  }
}

Workspace load_workspace(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw WorkspaceError("io", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Toric deformations via Minkowski sum decompositions", "tdef"};
  app.require_subcommand(1);
  std::string file, format = "text", u;
  bool oracle = false;
  long sweep = 2;
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--oracle", oracle, "t1: re-run the Cech oracle and diff");
  app.add_option("--sweep-box", sweep, "t1: sweep the lattice points of scale*Delta");
  app.add_option("--u", u, "deform: degree u as comma-separated integers");
  std::map<std::string, int (*)(Context &)> commands = {{"validate", cmd_validate}, {"embed", cmd_embed},
                                                        {"deform", cmd_deform},     {"t1", cmd_t1},
                                                        {"fano", cmd_fano},         {"cayley", cmd_cayley}};
  const std::map<std::string, std::string> help = {
      {"validate", "check the fan, complex and decomposition"},
      {"embed", "extended fan, CI equations and the embedding"},
      {"deform", "deformation family for query.u"},
      {"t1", "graded H^1 table and the reflexive total"},
      {"fano", "family over a reflexive polytope"},
      {"cayley", "Cayley polytope, mixed subdivision, reflexive hull"}};
  for (const auto &[name, fn] : commands) {
    auto *sub = app.add_subcommand(name, help.at(name))->fallthrough();
    sub->add_option("workspace", file, "workspace file")->required();
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "parse error [arguments]: " << e.what() << "\n";
    return 2;
  }
  std::string name = app.get_subcommands().front()->get_name();
  Context c;
  c.structured = format == "structured";
  c.oracle = oracle;
  c.sweep = sweep;
  int code = 0;
  try {
    c.ws = load_workspace(file);
    c.u = c.ws.u;
    if (!u.empty()) c.u = parse_u_option(u, c.ws.dim);
  } catch (const WorkspaceError &e) {
    err << "parse error [" << e.label << "]: " << detail(e.what(), e.label) << "\n";
    return 2;
  }
  try {
    code = commands.at(name)(c);
  } catch (const WorkspaceError &e) {
    err << "parse error [" << e.label << "]: " << detail(e.what(), e.label) << "\n";
    return 2;
  } catch (const ConditionError &e) {
    err << "error [" << e.condition << "]: " << detail(e.what(), e.condition) << "\n";
    return 1;
  } catch (const std::invalid_argument &e) {
    err << "error [input]: " << e.what() << "\n";
    return 1;
  }
  if (c.structured) {
    json doc = {{"command", name}, {"workspace", c.ws.name}, {"exit", code}, {"report", c.doc}};
    out << doc.dump(2) << "\n";
  } else {
    if (!c.ws.name.empty()) out << "workspace: " << c.ws.name << "\n";
    out << c.text.str();
  }
  return code;
}

} // namespace tdef
