#include "nkc/io.hpp"

#include "nkc/errors.hpp"

#include <fstream>
#include <sstream>

namespace nkc {

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec json_vec(const Json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json background_descriptor(const NKBackground& bg) {
  Json j;
  j["name"] = bg.name();
  j["params"] = Json::object();
  for (const auto& [k, v] : bg.params()) j["params"][k] = v;
  j["field"] = bg.field();
  j["conventions"] = {{"omega", "omega(x,y) = g(Jx,y)"},
                      {"wedge", "determinant convention, no 1/k! factor"},
                      {"structure_equations", "d omega = 3 lambda Re Omega, d Im Omega = -2 lambda omega^2"}};
  if (bg.lambda_golden()) j["lambda"] = *bg.lambda_golden();
  else j["lambda"] = nullptr;
  return j;
}

NKBackground background_from_descriptor(const Json& j) {
  const std::string name = field(j, "name").get<std::string>();
  std::map<std::string, double> params;
  if (j.contains("params")) params = j.at("params").get<std::map<std::string, double>>();
  auto param = [&](const char* k, double d) { return params.count(k) ? params.at(k) : d; };
  std::optional<NKBackground> bg;
  if (name == "s6") {
    bg = s6_background();
  } else if (name == "s3s3") {
    bg = s3s3_background({param("a", 1.0), param("b", 0.0), param("swap_factors", 0.0) != 0.0});
  } else if (name == "torus") {
    const std::string f = j.contains("field") ? j.at("field").get<std::string>() : "0";
    bg = torus_testbed(TrigPolynomial::parse(f));
  } else {
    throw PreconditionError("unknown background '" + name + "'");
  }
  if (param("conjugate", 0.0) != 0.0) return bg->conjugate();
  return *bg;
}

Json curve_to_json(const CurveMesh& c) {
  Json j;
  j["background"] = background_descriptor(c.background());
  j["genus"] = c.genus();
  j["domain"] = Json::array();
  for (const Vec& v : c.domain()) j["domain"].push_back(vec_json(v));
  j["vertices"] = Json::array();
  for (const Vec& v : c.image()) j["vertices"].push_back(vec_json(v));
  j["faces"] = Json::array();
  for (const Face& f : c.faces()) j["faces"].push_back({f[0], f[1], f[2]});
  j["weights"] = c.weights();
  return j;
}

CurveMesh curve_from_json(const Json& j) {
  NKBackground bg = background_from_descriptor(field(j, "background"));
  std::vector<Vec> domain, image;
  for (const Json& v : field(j, "domain")) domain.push_back(json_vec(v));
  for (const Json& v : field(j, "vertices")) image.push_back(json_vec(v));
  std::vector<Face> faces;
  for (const Json& f : field(j, "faces")) {
    if (f.size() != 3) throw PreconditionError("faces must have three vertices");
    faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
  }
  for (const Face& f : faces) {
    for (int v : f) {
      if (v < 0 || static_cast<std::size_t>(v) >= image.size()) throw PreconditionError("face index out of range");
    }
  }
  return CurveMesh(std::move(bg), field(j, "genus").get<int>(), std::move(domain), std::move(image),
                   std::move(faces), field(j, "weights").get<std::vector<double>>());
}

Json type_spectrum_json(const TypeSpectrum& s) {
  Json j;
  j["degree"] = s.degree();
  Json norms = Json::object();
  for (int p = 0; p <= s.degree(); ++p) norms[std::to_string(p) + "," + std::to_string(s.degree() - p)] = s.norm(p);
  j["norms"] = norms;
  j["point"] = vec_json(s.point());
  return j;
}

Json family_to_json(const FamilyPath& path) {
  Json j;
  j["provenance"] = path.provenance;
  j["times"] = path.times;
  j["curves"] = Json::array();
  for (const CurveMesh& c : path.curves) j["curves"].push_back(curve_to_json(c));
  return j;
}

FamilyPath family_from_json(const Json& j) {
  FamilyPath p;
  p.provenance = field(j, "provenance").get<std::string>();
  p.times = field(j, "times").get<std::vector<double>>();
  for (const Json& c : field(j, "curves")) p.curves.push_back(curve_from_json(c));
  validate_family(p);
  return p;
}

Json stokes_to_json(const StokesReport& r) {
  Json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["steps"] = Json::array();
  for (const StokesStep& s : r.steps) {
    j["steps"].push_back({{"t0", s.t0}, {"t1", s.t1}, {"volume_change", s.volume_change},
                          {"chain_integral", s.chain_integral}});
  }
  return j;
}

Json s3s3_structure_constants_json() {
  const StructureEquations eq = StructureEquations::su2_su2();
  const auto table = eq.coefficient_table();
  Json j;
  j["coframe"] = {"xi1", "xi2", "xi3", "xi'1", "xi'2", "xi'3"};
  j["pairs"] = Json::array();
  for (const auto& s : increasing_subsets(6, 2)) j["pairs"].push_back({s[0], s[1]});
  j["d_coframe"] = Json::array();
  for (int i = 0; i < 6; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 15; ++k) row.push_back(table(i, k) + 0.0);  // no negative zeros
    j["d_coframe"].push_back(row);
  }
  j["brackets"] = Json::array();
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      const Vec v = eq.bracket(a, b).array() + 0.0;
      j["brackets"].push_back({{"j", a}, {"k", b}, {"value", vec_json(v)}});
    }
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
  if (!out) throw PreconditionError("write failed for " + path);
}

}  // namespace nkc
