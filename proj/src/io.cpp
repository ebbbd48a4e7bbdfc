#include "paramphase/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

namespace paramphase::io {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("malformed ") + what + ": missing \"" + key + "\"");
  return j.at(key);
}

int require_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string("malformed ") + what + ": expected an integer");
  return j.get<int>();
}

// A nested value that may be given inline or as a path to another file.
Json resolve(const Json& j) { return j.is_string() ? read_file(j.get<std::string>()) : j; }

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  if (path == "-") {
    const std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return parse(text);
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

// ---------------------------------------------------------------------------
// Scalars and matrices

Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("malformed integer");
}

Json int_vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("malformed integer list");
  IntVector out;
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

Json complex_number_to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::complex<double> complex_number_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("malformed complex number: expected [re, im]");
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_number_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError("malformed matrix");
  const std::size_t rows = j.size(), cols = j[0].size();
  Eigen::MatrixXcd m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ValidationError("malformed matrix: ragged rows");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Index>(i), static_cast<Index>(k)) = complex_number_from_json(j[i][k]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Tensors

Json tensor_to_json(const Tensor& t) {
  Json kraus = Json::array();
  for (const auto& k : t.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"phys_dim", t.phys_dim()}, {"bond_dim", t.bond_dim()}, {"kraus", std::move(kraus)}};
}

Tensor tensor_from_json(const Json& raw) {
  return guarded("tensor", [&] {
    const Json j = resolve(raw);
    const int d = require_int(require(j, "phys_dim", "tensor"), "tensor");
    const int bond = require_int(require(j, "bond_dim", "tensor"), "tensor");
    const Json& kraus = require(j, "kraus", "tensor");
    if (!kraus.is_array() || static_cast<int>(kraus.size()) != d)
      throw ValidationError("malformed tensor: kraus list does not match phys_dim");
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto& k : kraus) {
      auto m = matrix_from_json(k);
      if (m.rows() != bond || m.cols() != bond)
        throw ValidationError("malformed tensor: Kraus matrix does not match bond_dim");
      mats.push_back(std::move(m));
    }
    return Tensor(std::move(mats));
  });
}

Json fixed_point_to_json(const FixedPointData<std::complex<double>>& f) {
  Json spectrum = Json::array();
  for (Index i = 0; i < f.rho.spectrum().size(); ++i) spectrum.push_back(f.rho.spectrum()(i));
  return Json{{"rho", matrix_to_json(f.rho.matrix())},
              {"rho_spectrum", std::move(spectrum)},
              {"phys_dim", f.phys_dim},
              {"iterations", f.iterations},
              {"residual", f.residual},
              {"residual_history", f.residual_history},
              {"tensor", tensor_to_json(f.tensor)}};
}

// ---------------------------------------------------------------------------
// Complexes and cochains

std::string simplex_key(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

Simplex simplex_from_key(const std::string& key) {
  Simplex s;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      s.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ValidationError("");
    } catch (const std::exception&) {
      throw ValidationError("malformed simplex key '" + key + "'");
    }
  }
  if (s.empty()) throw ValidationError("empty simplex key");
  std::sort(s.begin(), s.end());
  return s;
}

Json complex_to_json(const SimplicialComplex& k) {
  Json by_dim = Json::object();
  for (int d = 1; d <= k.dimension(); ++d) by_dim[std::to_string(d)] = k.simplices(d);
  return Json{{"vertices", k.vertex_count()}, {"simplices", std::move(by_dim)}};
}

SimplicialComplex complex_from_json(const Json& raw) {
  return guarded("complex", [&] {
    if (raw.is_string()) {
      const auto name = raw.get<std::string>();
      if (name.find('/') == std::string::npos && name.find('.') == std::string::npos) return builtin_complex(name);
    }
    const Json j = resolve(raw);
    if (j.is_object() && j.contains("builtin")) return builtin_complex(j.at("builtin").get<std::string>());
    const int n = require_int(require(j, "vertices", "complex"), "complex");
    if (j.contains("facets")) return SimplicialComplex::from_facets(n, j.at("facets").get<std::vector<Simplex>>());
    const Json& simplices = require(j, "simplices", "complex");
    if (!simplices.is_object()) throw ValidationError("malformed complex: simplices must be keyed by dimension");
    std::map<int, std::vector<Simplex>> by_dim;
    for (const auto& [key, list] : simplices.items()) {
      int d = 0;
      try {
        d = std::stoi(key);
      } catch (const std::exception&) {
        throw ValidationError("malformed complex: bad dimension key '" + key + "'");
      }
      by_dim[d] = list.get<std::vector<Simplex>>();
    }
    return SimplicialComplex::from_simplices(n, by_dim);
  });
}

Ring ring_from_string(const std::string& name) {
  if (name == "Z") return Ring::integers();
  if (name == "R") return Ring::reals();
  if (name.size() > 1 && name[0] == 'Z') {
    try {
      std::size_t used = 0;
      const int p = std::stoi(name.substr(1), &used);
      if (used == name.size() - 1) return Ring::mod(p);
    } catch (const std::logic_error&) {
    }
  }
  throw ValidationError("unknown coefficient ring '" + name + "'");
}

Json cochain_to_json(const SimplicialComplex& k, const Cochain& c) {
  Json values = Json::object();
  const auto& simplices = k.simplices(c.degree);
  for (std::size_t i = 0; i < simplices.size(); ++i)
    if (c.values.at(i) != 0) values[simplex_key(simplices[i])] = integer_to_json(c.values[i]);
  return Json{{"complex", complex_to_json(k)},
              {"degree", c.degree},
              {"ring", c.ring.name()},
              {"values", std::move(values)}};
}

std::pair<SimplicialComplex, Cochain> cochain_from_json(const Json& raw) {
  return guarded("cochain", [&] {
    const Json j = resolve(raw);
    SimplicialComplex k = complex_from_json(require(j, "complex", "cochain"));
    Cochain c;
    c.degree = require_int(require(j, "degree", "cochain"), "cochain");
    if (c.degree < 0 || c.degree > k.dimension()) throw ValidationError("cochain degree out of range");
    c.ring = j.contains("ring") ? ring_from_string(j.at("ring").get<std::string>()) : Ring::integers();
    if (c.ring.kind == Ring::Kind::Reals) throw ValidationError("cochain files carry integer or mod-p values");
    c.values.assign(k.count(c.degree), 0);
    const Json& values = require(j, "values", "cochain");
    if (!values.is_object()) throw ValidationError("malformed cochain: values must be keyed by simplex");
    for (const auto& [key, v] : values.items()) {
      const auto idx = k.index_of(simplex_from_key(key));
      if (!idx || static_cast<int>(simplex_from_key(key).size()) != c.degree + 1)
        throw ValidationError("cochain value on unknown simplex '" + key + "'");
      c.values[*idx] = integer_from_json(v);
      if (c.ring.kind == Ring::Kind::ModP) c.values[*idx] = mod_floor(c.values[*idx], c.ring.p);
    }
    return std::pair{std::move(k), std::move(c)};
  });
}

// ---------------------------------------------------------------------------
// Families and phase data

Json family_to_json(const TensorFamily& f) {
  Json tensors = Json::object();
  for (std::size_t v = 0; v < f.tensors().size(); ++v) tensors[std::to_string(v)] = tensor_to_json(f.tensors()[v]);
  return Json{{"complex", complex_to_json(f.complex())}, {"tensors", std::move(tensors)}};
}

TensorFamily family_from_json(const Json& raw, const BerryConfig& cfg) {
  return guarded("family", [&] {
    const Json j = resolve(raw);
    SimplicialComplex k = complex_from_json(require(j, "complex", "family"));
    const Json& tensors = require(j, "tensors", "family");
    if (!tensors.is_object()) throw ValidationError("malformed family: tensors must be keyed by vertex");
    std::vector<std::optional<Tensor>> slots(static_cast<std::size_t>(k.vertex_count()));
    for (const auto& [key, t] : tensors.items()) {
      const Simplex v = simplex_from_key(key);
      if (v.size() != 1 || v[0] < 0 || v[0] >= k.vertex_count())
        throw ValidationError("malformed family: bad vertex key '" + key + "'");
      slots[static_cast<std::size_t>(v[0])] = tensor_from_json(t);
    }
    std::vector<Tensor> list;
    for (auto& s : slots) {
      if (!s) throw ValidationError("malformed family: every vertex needs a tensor");
      list.push_back(std::move(*s));
    }
    return TensorFamily(std::move(k), std::move(list), cfg);
  });
}

Json phases_to_json(const SimplicialComplex& k, const PhaseData& p) {
  Json phases = Json::object();
  const auto& triangles = k.simplices(2);
  for (std::size_t t = 0; t < triangles.size(); ++t) phases[simplex_key(triangles[t])] = complex_number_to_json(p.lambda.at(t));
  return Json{{"complex", complex_to_json(k)}, {"phases", std::move(phases)}};
}

std::pair<SimplicialComplex, PhaseData> phases_from_json(const Json& raw) {
  return guarded("phase data", [&] {
    const Json j = resolve(raw);
    SimplicialComplex k = complex_from_json(require(j, "complex", "phase data"));
    const Json& phases = require(j, "phases", "phase data");
    if (!phases.is_object()) throw ValidationError("malformed phase data: phases must be keyed by triangle");
    PhaseData p;
    p.lambda.assign(k.count(2), std::complex<double>(0.0, 0.0));
    std::vector<bool> seen(k.count(2), false);
    for (const auto& [key, z] : phases.items()) {
      const Simplex t = simplex_from_key(key);
      const auto idx = k.index_of(t);
      if (t.size() != 3 || !idx) throw ValidationError("phase on unknown triangle '" + key + "'");
      p.lambda[*idx] = complex_number_from_json(z);
      seen[*idx] = true;
    }
    for (std::size_t t = 0; t < seen.size(); ++t)
      if (!seen[t]) throw ValidationError("phase data misses triangle " + simplex_key(k.simplices(2)[t]));
    return std::pair{std::move(k), std::move(p)};
  });
}

// ---------------------------------------------------------------------------
// Reports

Json group_to_json(const AbelianGroup& g) {
  Json torsion = Json::array();
  for (const auto& d : g.torsion) torsion.push_back(integer_to_json(d));
  return Json{{"name", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", std::move(torsion)}};
}

Json coordinates_to_json(const ClassCoordinates& c) {
  return Json{{"torsion", int_vector_to_json(c.torsion)}, {"free", int_vector_to_json(c.free)}};
}

Json berry_output_to_json(const BerryOutput& b) {
  Json out{{"group", group_to_json(b.group)},
           {"coordinates", coordinates_to_json(b.coordinates)},
           {"flux", b.flux},
           {"cocycle", int_vector_to_json(b.cocycle)}};
  if (b.number) {
    out["number"] = b.number->value;
    out["residual"] = b.number->residual;
  }
  return out;
}

// ---------------------------------------------------------------------------
// T-duality pairs

namespace {

Json group_fg_to_json(const FinitelyGenerated& g) {
  Json torsion = Json::array();
  for (const auto& d : g.torsion) torsion.push_back(integer_to_json(d));
  return Json{{"free", g.free_rank}, {"torsion", std::move(torsion)}};
}

FinitelyGenerated group_fg_from_json(const Json& j) {
  FinitelyGenerated g;
  const int free = require_int(require(j, "free", "group"), "group");
  if (free < 0) throw ValidationError("malformed group: negative rank");
  g.free_rank = static_cast<std::size_t>(free);
  if (j.contains("torsion")) g.torsion = int_vector_from_json(j.at("torsion"));
  return g;
}

Json int_matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(int_vector_to_json(m.row(i)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

IntMatrix int_matrix_from_json(const Json& j) {
  const int rows = require_int(require(j, "rows", "matrix"), "matrix");
  const int cols = require_int(require(j, "cols", "matrix"), "matrix");
  if (rows < 0 || cols < 0) throw ValidationError("malformed matrix: negative shape");
  IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  const Json& data = require(j, "data", "matrix");
  if (!data.is_array() || static_cast<int>(data.size()) != rows) throw ValidationError("malformed matrix: row count");
  for (int i = 0; i < rows; ++i) {
    const IntVector r = int_vector_from_json(data[static_cast<std::size_t>(i)]);
    if (static_cast<int>(r.size()) != cols) throw ValidationError("malformed matrix: ragged rows");
    for (int k = 0; k < cols; ++k) m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = r[static_cast<std::size_t>(k)];
  }
  return m;
}

}  // namespace

Json base_to_json(const BasePresentation& b) {
  Json groups = Json::array(), cup1 = Json::array(), cup2 = Json::array();
  for (const auto& g : b.groups) groups.push_back(group_fg_to_json(g));
  for (const auto& m : b.cup1) cup1.push_back(int_matrix_to_json(m));
  for (const auto& m : b.cup2) cup2.push_back(int_matrix_to_json(m));
  return Json{{"name", b.name}, {"groups", std::move(groups)}, {"cup1", std::move(cup1)}, {"cup2", std::move(cup2)}};
}

BasePresentation base_from_json(const Json& j) {
  return guarded("base", [&] {
    if (j.is_string()) return builtin_base(j.get<std::string>());
    BasePresentation b;
    b.name = require(j, "name", "base").get<std::string>();
    const Json& groups = require(j, "groups", "base");
    if (!groups.is_array()) throw ValidationError("malformed base: groups must be a list");
    for (const auto& g : groups) b.groups.push_back(group_fg_from_json(g));
    if (j.contains("cup1"))
      for (const auto& m : j.at("cup1")) b.cup1.push_back(int_matrix_from_json(m));
    if (j.contains("cup2"))
      for (const auto& m : j.at("cup2")) b.cup2.push_back(int_matrix_from_json(m));
    b.validate();
    return b;
  });
}

Json pair_to_json(const TDualPair& p) {
  const bool builtin = [&] {
    try {
      return builtin_base(p.base.name) == p.base;
    } catch (const ValidationError&) {
      return false;
    }
  }();
  return Json{{"base", builtin ? Json(p.base.name) : base_to_json(p.base)},
              {"c1", int_vector_to_json(p.c1)},
              {"H", {{"ker", int_vector_to_json(p.h.ker)}, {"coker", int_vector_to_json(p.h.coker)}}},
              {"total_space", name_total_space(p.base, p.c1)},
              {"ambiguous_lift", p.ambiguous_lift}};
}

TDualPair pair_from_json(const Json& raw) {
  return guarded("pair", [&] {
    const Json j = resolve(raw);
    TDualPair p;
    p.base = base_from_json(require(j, "base", "pair"));
    p.c1 = int_vector_from_json(require(j, "c1", "pair"));
    const Json& h = require(j, "H", "pair");
    p.h.ker = h.contains("ker") ? int_vector_from_json(h.at("ker")) : IntVector(p.base.h(2).generator_count());
    p.h.coker = h.contains("coker") ? int_vector_from_json(h.at("coker")) : IntVector(p.base.h(3).generator_count());
    if (j.contains("ambiguous_lift")) p.ambiguous_lift = j.at("ambiguous_lift").get<bool>();
    p.validate();
    return p;
  });
}

}  // namespace paramphase::io
