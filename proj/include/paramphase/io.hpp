#pragma once

// JSON forms of the library types. Every reader throws ValidationError on
// malformed input.
//
//   tensor   {"phys_dim": d, "bond_dim": D, "kraus": [[[ [re, im], ... ]]]}
//   complex  {"builtin": "s3"} | {"vertices": n, "facets": [[...]]}
//            | {"vertices": n, "simplices": {"1": [[0, 1], ...], "2": ...}}
//   cochain  {"complex": ..., "degree": k, "ring": "Z" | "Z2" | "R", "values": {"0,1,2": v}}
//   family   {"complex": ..., "tensors": {"<vertex>": tensor}}
//   phases   {"complex": ..., "phases": {"u,v,w": [re, im]}}
//   pair     {"base": "S2" | {...}, "c1": [..], "H": {"ker": [..], "coker": [..]}}

#include <json.hpp>

#include <complex>
#include <string>

#include "paramphase/berry.hpp"
#include "paramphase/channel.hpp"
#include "paramphase/cohomology.hpp"
#include "paramphase/rg.hpp"
#include "paramphase/tduality.hpp"

namespace paramphase::io {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text);
// "-" reads standard input.
Json read_file(const std::string& path);

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);
Json int_vector_to_json(const IntVector& v);
IntVector int_vector_from_json(const Json& j);

Json complex_number_to_json(std::complex<double> z);
std::complex<double> complex_number_from_json(const Json& j);
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

Json fixed_point_to_json(const FixedPointData<std::complex<double>>& f);

Json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);

std::string simplex_key(const Simplex& s);
Simplex simplex_from_key(const std::string& key);

Ring ring_from_string(const std::string& name);
Json cochain_to_json(const SimplicialComplex& k, const Cochain& c);
// The complex is returned alongside the cochain.
std::pair<SimplicialComplex, Cochain> cochain_from_json(const Json& j);

Json family_to_json(const TensorFamily& f);
TensorFamily family_from_json(const Json& j, const BerryConfig& cfg = {});

Json phases_to_json(const SimplicialComplex& k, const PhaseData& p);
std::pair<SimplicialComplex, PhaseData> phases_from_json(const Json& j);

Json group_to_json(const AbelianGroup& g);
Json coordinates_to_json(const ClassCoordinates& c);
Json berry_output_to_json(const BerryOutput& b);

Json base_to_json(const BasePresentation& b);
BasePresentation base_from_json(const Json& j);
Json pair_to_json(const TDualPair& p);
TDualPair pair_from_json(const Json& j);

}  // namespace paramphase::io
