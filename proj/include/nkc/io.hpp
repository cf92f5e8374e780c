#pragma once
// JSON interchange: curve meshes, background descriptors, type spectra,
// families and Stokes reports.  Schemas are described in README.md.

#include "nkc/moduli.hpp"
#include "nkc/structure_checks.hpp"

#include "json.hpp"

#include <string>

namespace nkc {

using Json = nlohmann::json;

/// {name, params, field, conventions, lambda}
Json background_descriptor(const NKBackground& bg);
/// Rebuilds a background from its descriptor; PreconditionError for unknown names.
NKBackground background_from_descriptor(const Json& j);

/// {background, genus, domain, vertices, faces, weights}
Json curve_to_json(const CurveMesh& curve);
CurveMesh curve_from_json(const Json& j);

/// Flat record {degree, norms: {"p,q": value}, point}; one per line in .jsonl files.
Json type_spectrum_json(const TypeSpectrum& s);

/// {provenance, times, curves}
Json family_to_json(const FamilyPath& path);
FamilyPath family_from_json(const Json& j);

Json stokes_to_json(const StokesReport& r);

/// dξ_i coefficients (6 × 15 over increasing pairs) and the brackets [E_j, E_k].
Json s3s3_structure_constants_json();

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace nkc
