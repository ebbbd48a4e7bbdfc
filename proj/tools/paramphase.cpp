// Command-line front end. Every command builds a JSON report; --format text
// prints the same report as "key: value" lines.
//
// Exit codes: 0 success, 1 computational failure, 2 invalid input.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "paramphase/berry.hpp"
#include "paramphase/channel.hpp"
#include "paramphase/cohomology.hpp"
#include "paramphase/io.hpp"
#include "paramphase/models.hpp"
#include "paramphase/rg.hpp"
#include "paramphase/tduality.hpp"

namespace {

using namespace paramphase;
using io::Json;

struct RunConfig {
  double tol_alg = 1e-10;
  double tol_spec = 1e-8;
  double dev_max = 0.3;
  double eta_min = 0.5;
  int max_iter = 16;
  std::uint64_t seed = 0;
  std::string format = "text";

  Tolerances tolerances() const { return {tol_alg, tol_spec}; }

  BerryConfig berry() const {
    BerryConfig c;
    c.dev_max = dev_max;
    c.eta_min = eta_min;
    c.tol = tolerances();
    return c;
  }

  RgOptions rg() const {
    RgOptions o;
    o.tol = tol_spec;
    o.max_iter = max_iter;
    o.tolerances = tolerances();
    return o;
  }

  void validate() const {
    if (!(tol_alg > 0) || !(tol_spec > 0) || !(dev_max > 0) || !(eta_min > 0))
      throw ValidationError("tolerances must be positive");
    if (max_iter < 1) throw ValidationError("--max-iter must be at least 1");
  }
};

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (value.is_object() && value.contains("kraus"))
        os << name << ": " << value["phys_dim"] << " Kraus operators of size " << value["bond_dim"]
           << " (use --format json for entries)\n";
      else if (value.is_object() && !value.empty() && !value.contains("simplices"))
        print_text(value, name, os);
      else
        os << name << ": " << scalar_text(value) << '\n';
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      print_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    }
  } else {
    os << prefix << ": " << scalar_text(j) << '\n';
  }
}

void emit(const Json& report, const RunConfig& cfg) {
  std::ostringstream os;
  if (cfg.format == "json")
    os << report.dump(2) << '\n';
  else
    print_text(report, "", os);
  std::cout << os.str() << std::flush;
}

Json spectrum_json(const std::vector<std::complex<double>>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(io::complex_number_to_json(v));
  return out;
}

// ---------------------------------------------------------------------------

Json channel_info(const std::string& path, const RunConfig& cfg) {
  const Tensor t = io::tensor_from_json(io::read_file(path));
  const auto tol = cfg.tolerances();
  Json out;
  out["phys_dim"] = t.phys_dim();
  out["bond_dim"] = t.bond_dim();
  out["unitality_residual"] = t.unitality_residual();
  if (!t.is_unital(tol.algebraic)) throw ValidationError("tensor is not unital");
  const auto channel = channel_from_tensor(t);
  const auto spec = transfer_spectrum(channel, tol);
  out["transfer_spectrum"] = spectrum_json(spec.eigenvalues);
  out["gap"] = spec.gap;
  const auto len = injectivity_length(t, static_cast<int>(2 * t.bond_dim() * t.bond_dim()), tol.algebraic);
  out["injectivity_length"] = len ? Json(*len) : Json(nullptr);
  const auto rho = stationary_state(channel, tol);
  Json rs = Json::array();
  for (Index i = 0; i < rho.spectrum().size(); ++i) rs.push_back(rho.spectrum()(i));
  out["rho_spectrum"] = std::move(rs);
  return out;
}

Json rg_run(const std::string& path, const RunConfig& cfg) {
  const Tensor t = io::tensor_from_json(io::read_file(path));
  return io::fixed_point_to_json(rg_flow(t, cfg.rg()));
}

// Family file or phase-data file, told apart by their keys.
std::pair<SimplicialComplex, PhaseData> berry_input(const std::string& path, const BerryConfig& bc) {
  const Json j = io::read_file(path);
  if (j.is_object() && j.contains("phases")) return io::phases_from_json(j);
  if (j.is_object() && j.contains("tensors")) {
    const TensorFamily f = io::family_from_json(j, bc);
    return {f.complex(), phase_data(gauge_data(f, bc), f.complex(), bc)};
  }
  throw ValidationError("expected a family file or a phase-data file");
}

Json berry_number_cmd(const std::string& path, const RunConfig& cfg) {
  const auto bc = cfg.berry();
  const auto [k, p] = berry_input(path, bc);
  const BerryNumber n = berry_number(p, k, bc);
  return Json{{"number", n.value}, {"residual", n.residual}};
}

Json berry_class_cmd(const std::string& path, const RunConfig& cfg) {
  const auto bc = cfg.berry();
  const auto [k, p] = berry_input(path, bc);
  return io::berry_output_to_json(berry_class(p, k, bc));
}

Json coh_groups(const std::string& path, const std::string& ring_name) {
  const SimplicialComplex k = io::complex_from_json(path.find_first_of("./") == std::string::npos && path != "-"
                                                        ? Json(path)
                                                        : io::read_file(path));
  const Ring ring = io::ring_from_string(ring_name);
  Json groups = Json::array();
  for (int d = 0; d <= k.dimension(); ++d) groups.push_back(io::group_to_json(cohomology_group(k, d, ring)));
  return Json{{"ring", ring.name()},
              {"dimension", k.dimension()},
              {"euler_characteristic", k.euler_characteristic()},
              {"groups", std::move(groups)}};
}

Json coh_bockstein(const std::string& path) {
  const auto [k, z] = io::cochain_from_json(io::read_file(path));
  const ClassCoordinates c = bockstein_z2(k, z);
  return Json{{"group", io::group_to_json(cohomology_group(k, z.degree + 1))},
              {"coordinates", io::coordinates_to_json(c)},
              {"zero", c.is_zero()}};
}

Json dual_report(const TDualPair& p) {
  const TDualPair d = tdualize(p);
  const DualityReport r = verify_duality(p, d);
  return Json{{"pair", io::pair_to_json(p)}, {"dual", io::pair_to_json(d)}, {"verified", r.ok()}};
}

Json tdual_run(const std::string& path) {
  const Json j = io::read_file(path);
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& item : j) out.push_back(dual_report(io::pair_from_json(item)));
    return out;
  }
  return dual_report(io::pair_from_json(j));
}

Json tdual_verify(const std::string& a_path, const std::string& b_path) {
  const DualityReport r = verify_duality(io::pair_from_json(io::read_file(a_path)),
                                         io::pair_from_json(io::read_file(b_path)));
  Json out{{"same_base", r.same_base}, {"forward", r.forward}, {"backward", r.backward}};
  out["coker_agreement"] = r.coker_agreement ? Json(*r.coker_agreement) : Json(nullptr);
  out["verified"] = r.ok();
  return out;
}

struct ExampleArgs {
  std::string name;
  long long target = 1;
  int dim = 3;
  std::string complex = "s3";
};

Json example(const ExampleArgs& a, const RunConfig& cfg) {
  if (a.name == "aklt") return io::tensor_to_json(aklt_tensor());
  if (a.name == "fixed-point") {
    if (a.dim < 1) throw ValidationError("--dim must be positive");
    std::mt19937_64 rng(cfg.seed);
    return io::tensor_to_json(fixed_tensor(random_density(a.dim, rng)));
  }
  if (a.name == "constant-family") {
    const auto k = builtin_complex(a.complex);
    return io::family_to_json(constant_family(k, aklt_tensor(), cfg.berry()));
  }
  if (a.name == "synthetic-s3") {
    const auto k = builtin_complex("s3");
    return io::phases_to_json(k, synthetic_family(k, a.target));
  }
  if (a.name == "bockstein-rp2xs1") {
    const auto k = builtin_complex("rp2xs1");
    const auto z = bockstein_witness(k, 2);
    if (!z) throw ComputationError("no mod-2 class with non-zero Bockstein");
    return io::phases_to_json(k, phases_from_z2(k, z->values));
  }
  if (a.name == "tdual-table") {
    Json out = Json::array();
    for (const auto& [n, m] : {std::pair{1, 1}, std::pair{1, 0}, std::pair{0, 0}})
      out.push_back(io::pair_to_json(sphere_pair(n, m)));
    return out;
  }
  throw ValidationError("unknown example '" + a.name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renormalization fixed points, higher Berry classes and T-duality of 1d states"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--tol-alg", cfg.tol_alg, "Algebraic tolerance");
  app.add_option("--tol-spec", cfg.tol_spec, "Spectral tolerance and RG stopping distance");
  app.add_option("--dev-max", cfg.dev_max, "Largest accepted non-scalar part of a triangle product");
  app.add_option("--eta-min", cfg.eta_min, "Smallest accepted edge overlap");
  app.add_option("--max-iter", cfg.max_iter, "RG iteration budget");
  app.add_option("--seed", cfg.seed, "Seed for random examples");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::function<Json()> run;
  std::string path, path_b, ring = "Z";
  ExampleArgs ex;

  auto* channel = app.add_subcommand("channel", "Transfer channel diagnostics")->require_subcommand(1)->fallthrough();
  auto* channel_info_cmd = channel->add_subcommand("info", "Spectrum, gap, injectivity and stationary state")->fallthrough();
  channel_info_cmd->add_option("tensor", path, "Tensor file ('-' for stdin)")->required();
  channel_info_cmd->callback([&] { run = [&] { return channel_info(path, cfg); }; });

  auto* rg = app.add_subcommand("rg", "Renormalization flow")->require_subcommand(1)->fallthrough();
  auto* rg_run_cmd = rg->add_subcommand("run", "Flow a tensor to its fixed point")->fallthrough();
  rg_run_cmd->add_option("tensor", path, "Tensor file ('-' for stdin)")->required();
  rg_run_cmd->callback([&] { run = [&] { return rg_run(path, cfg); }; });

  auto* berry = app.add_subcommand("berry", "Higher Berry invariants")->require_subcommand(1)->fallthrough();
  auto* berry_num = berry->add_subcommand("number", "Higher Berry number")->fallthrough();
  berry_num->add_option("input", path, "Family or phase-data file ('-' for stdin)")->required();
  berry_num->callback([&] { run = [&] { return berry_number_cmd(path, cfg); }; });
  auto* berry_cls = berry->add_subcommand("class", "Class in H^3 with flux and cocycle")->fallthrough();
  berry_cls->add_option("input", path, "Family or phase-data file ('-' for stdin)")->required();
  berry_cls->callback([&] { run = [&] { return berry_class_cmd(path, cfg); }; });

  auto* coh = app.add_subcommand("coh", "Simplicial cohomology")->require_subcommand(1)->fallthrough();
  auto* coh_g = coh->add_subcommand("groups", "Cohomology groups in every degree")->fallthrough();
  coh_g->add_option("complex", path, "Complex file or built-in name (s1, s2, s3, rp2, torus, rp2xs1, s2xs1)")
      ->required();
  coh_g->add_option("--ring", ring, "Z, Z<p> or R");
  coh_g->callback([&] { run = [&] { return coh_groups(path, ring); }; });
  auto* coh_b = coh->add_subcommand("bockstein", "Bockstein of a mod-2 cocycle")->fallthrough();
  coh_b->add_option("cochain", path, "Cochain file ('-' for stdin)")->required();
  coh_b->callback([&] { run = [&] { return coh_bockstein(path); }; });

  auto* tdual = app.add_subcommand("tdual", "Topological T-duality")->require_subcommand(1)->fallthrough();
  auto* tdual_r = tdual->add_subcommand("run", "Dual pair with names and verification")->fallthrough();
  tdual_r->add_option("pair", path, "Pair file or list of pairs ('-' for stdin)")->required();
  tdual_r->callback([&] { run = [&] { return tdual_run(path); }; });
  auto* tdual_v = tdual->add_subcommand("verify", "Check that two pairs are T-dual")->fallthrough();
  tdual_v->add_option("a", path, "First pair file")->required();
  tdual_v->add_option("b", path_b, "Second pair file")->required();
  tdual_v->callback([&] { run = [&] { return tdual_verify(path, path_b); }; });

  auto* examples = app.add_subcommand("examples", "Write a fixture to stdout")->fallthrough();
  examples
      ->add_option("name", ex.name,
                   "aklt, fixed-point, constant-family, synthetic-s3, bockstein-rp2xs1 or tdual-table")
      ->required();
  examples->add_option("--target", ex.target, "Berry number of synthetic-s3");
  examples->add_option("--dim", ex.dim, "Bond dimension of fixed-point");
  examples->add_option("--complex", ex.complex, "Built-in complex of constant-family");
  // Fixtures are files, so they are always written as JSON.
  examples->callback([&] {
    run = [&] {
      cfg.format = "json";
      return example(ex, cfg);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.validate();
    emit(run(), cfg);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
