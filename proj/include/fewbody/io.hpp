#pragma once

#include <string>

// vendor single-header nlohmann/json
#include "json.hpp"

#include "fewbody/bounds.hpp"

namespace fewbody {

using json = nlohmann::ordered_json;

/// Operator file:
/// {"n_sites": N, "local_dim": d, "geometry": {"dims": [...]} | null,
///  "terms": [{"support": [...], "pauli": "ZZ" | null,
///             "matrix": [[[re, im], ...], ...] | null, "coeff": c}]}
/// Exactly one of "pauli"/"matrix" per term; "pauli" requires d = 2.
FewBodyOperator operator_from_json(const json& j);
json operator_to_json(const FewBodyOperator& op);

/// State file: {"kind": "product", "factors": [{"pure": [[re,im], ...]} |
/// {"density": [[[re,im], ...], ...]} | {"named": "zero"|"plus"|"mixed"}]}
ProductState state_from_json(const json& j, const Lattice& lat);
json state_to_json(const ProductState& st);

json certificate_to_json(const BoundCertificate& cert);
json layering_to_json(const Layering& lay);

json load_json_file(const std::string& path);

/// Write via temp file + rename so consumers never see partial output.
void atomic_write(const std::string& path, const std::string& content);

/// Two-column CSV with 17-significant-digit values.
std::string curve_csv(const std::vector<double>& xs, const std::vector<double>& ys);
/// Three-column CSV (x, bound, exact); exact may be NaN for "unavailable".
std::string curve_csv3(const std::vector<double>& xs, const std::vector<double>& bound,
                       const std::vector<double>& exact);

std::string format_g17(double v);

}  // namespace fewbody
