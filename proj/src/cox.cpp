#include "tdef/cox.hpp"

#include <algorithm>

namespace tdef {

Monomial make_monomial(const IntVec &exps) {
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) m[i] = exps[i];
  return m;
}

IntVec exponent_vector(const Monomial &m, std::size_t nvars) {
  IntVec e(nvars, Int(0));
  for (const auto &[i, x] : m) {
    if (i >= nvars) throw std::invalid_argument("monomial uses an unknown variable");
    e[i] = x;
  }
  return e;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
  Monomial m = a;
  for (const auto &[i, x] : b) {
    Int s = m[i] + x;
    if (s == 0) m.erase(i);
    else m[i] = s;
  }
  return m;
}

bool is_nonnegative(const Monomial &m) {
  return std::all_of(m.begin(), m.end(), [](const auto &p) { return p.second >= 0; });
}

std::string render(const Monomial &m, const std::string &var) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto &[i, x] : m) {
    if (!s.empty()) s += "*";
    s += var + "_" + std::to_string(i + 1);
    if (x != 1) s += "^" + x.get_str();
  }
  return s;
}

Monomial x_pow(const std::vector<IntVec> &rays, const IntVec &u) {
  IntVec e;
  for (const auto &v : rays) e.push_back(dot(u, v));
  return make_monomial(e);
}

AbelianPresentation class_group(const Fan &F) {
  if (F.rays.empty() || rank_rows(F.rays, F.dim) != F.dim)
    throw std::invalid_argument("class_group: rays must span the ambient space");
  return cokernel(IntMat::from_rows(F.rays, F.dim));
}

IntVec degree(const Monomial &m, const AbelianPresentation &cl, std::size_t nvars) {
  return cl.apply(exponent_vector(m, nvars));
}

IntVec degree(const Monomial &m, const Fan &F) {
  return degree(m, class_group(F), F.rays.size());
}

std::vector<Monomial> irrelevant_generators(const Fan &F) {
  std::vector<Monomial> out;
  for (const auto &s : F.cones) {
    Monomial m;
    for (std::size_t i = 0; i < F.rays.size(); ++i)
      if (!std::binary_search(s.begin(), s.end(), i)) m[i] = 1;
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

HomogeneousMap toric_morphism_homog(const Fan &F1, const Fan &F2, const IntMat &phi) {
  if (phi.rows != F2.dim || phi.cols != F1.dim)
    throw std::invalid_argument("toric morphism matrix has the wrong shape");
  auto image = [&](const IntVec &v) {
    IntVec w(F2.dim, Int(0));
    for (std::size_t i = 0; i < F2.dim; ++i)
      for (std::size_t j = 0; j < F1.dim; ++j) w[i] += phi(i, j) * v[j];
    return w;
  };
  std::vector<Cone> targets;
  for (const auto &s : F2.cones) targets.push_back(F2.cone(s));
  for (const auto &s : F1.cones) {
    bool ok = std::any_of(targets.begin(), targets.end(), [&](const Cone &t) {
      return std::all_of(s.begin(), s.end(), [&](std::size_t i) { return t.contains(image(F1.rays[i])); });
    });
    if (!ok)
      throw ConditionError("cone-compatibility", "a cone of the source fan is not mapped into a cone of the target fan");
  }
  auto closure = F2.face_closure();
  std::vector<std::vector<Int>> a(F1.rays.size(), std::vector<Int>(F2.rays.size(), Int(0)));
  for (std::size_t rho = 0; rho < F1.rays.size(); ++rho) {
    IntVec w = image(F1.rays[rho]);
    if (is_zero(w)) continue;
    const IndexSet *minimal = nullptr;
    for (const auto &c : closure)
      if (F2.cone(c).in_relint(to_rat(w))) {
        minimal = &c;
        break;
      }
    if (!minimal) throw ConditionError("cone-compatibility", "image of a ray lies in no cone");
    RatMat A(F2.dim, minimal->size());
    for (std::size_t j = 0; j < minimal->size(); ++j)
      for (std::size_t i = 0; i < F2.dim; ++i) A(i, j) = F2.rays[(*minimal)[j]][i];
    if (!nullspace(A).empty())
      throw ConditionError("morphism-coordinates",
                           "ambiguous coordinates in a non-simplicial cone for ray " + std::to_string(rho + 1));
    RatVec c = *solve(A, to_rat(w));
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].get_den() != 1 || c[j] < 0)
        throw ConditionError("morphism-coordinates",
                             "ray " + std::to_string(rho + 1) + " has non-integral coordinates (multi-valued map)");
      a[rho][(*minimal)[j]] = c[j].get_num();
    }
  }
  HomogeneousMap h;
  h.sourceVars = F1.rays.size();
  for (std::size_t xi = 0; xi < F2.rays.size(); ++xi) {
    Monomial m;
    for (std::size_t rho = 0; rho < F1.rays.size(); ++rho)
      if (a[rho][xi] != 0) m[rho] = a[rho][xi];
    h.images.push_back(m);
  }
  return h;
}

HomogeneousMap compose(const HomogeneousMap &first, const HomogeneousMap &second) {
  // second's source variables are first's target variables
  HomogeneousMap h;
  h.sourceVars = first.sourceVars;
  for (const auto &m : second.images) {
    Monomial r;
    for (const auto &[xi, e] : m) {
      Monomial p = first.images.at(xi);
      for (auto &[k, x] : p) x *= e;
      r = r * p;
    }
    h.images.push_back(r);
  }
  return h;
}

std::string render(const HomogeneousMap &h, const std::string &var) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.sourceVars; ++i)
    s += (i ? ", " : "") + var + "_" + std::to_string(i + 1);
  s += ") -> (";
  for (std::size_t i = 0; i < h.images.size(); ++i) s += (i ? ", " : "") + render(h.images[i], var);
  return s + ")";
}

} // namespace tdef
