#pragma once

#include <string>

#include "hopfcorr/coreps.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace hopfcorr {

using json = nlohmann::json;

/// Scalar-or-expression evaluation for preset coefficient strings:
/// products of rational literals and named parameters with integer
/// exponents, e.g. "-q^2", "q1*q2^-1", "1/2".
Scalar eval_coefficient(const std::string& text, Backend b,
                        const std::map<std::string, std::string>& params);

json presentation_to_json(const Presentation& P);
/// backend_override: "exact", "float" or "" (use the file/auto rule).
PresentationPtr presentation_from_json(const json& j,
                                       const std::map<std::string, std::string>& extra_params,
                                       const std::string& backend_override);

json cocycle_to_json(const Cocycle& c);
Cocycle cocycle_from_json(const json& j, PresentationPtr P);

json functional_to_json(const GeneratingFunctional& L);
GeneratingFunctional functional_from_json(const json& j, PresentationPtr P);

json coreps_to_json(const CorepFamily& F);
CorepFamily coreps_from_json(const json& j, PresentationPtr P);

json report_to_json(const Report& r);

std::string word_to_string(const Presentation& P, const Word& w);
Word word_from_string(const Presentation& P, const std::string& s);

/// Canonical emission: sorted keys, scalar strings, 2-space indent,
/// trailing newline. save(load(x)) is byte-identical for canonical files.
std::string canonical_dump(const json& j);
void save_file(const std::string& path, const json& j);
json load_file(const std::string& path);

/// FNV-1a 64-bit hash of a byte string, hex-encoded (provenance records).
std::string fnv1a_hex(const std::string& bytes);
std::string file_hash(const std::string& path);

} // namespace hopfcorr
