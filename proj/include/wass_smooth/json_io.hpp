#pragma once

// JSON encodings of measures, spectra and reports.
//
// Measure file: {"space": "torus"|"sphere", "dim": d, "points": [[...], ...], "weights": [...]}
// with "weights" optional (uniform), or {"space": ..., "dim": d, "uniform": true} for Vol.
// Spectrum file: {"eigenvalues": [...], "diffs": [...]}.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "wass_smooth/bounds.hpp"
#include "wass_smooth/designs.hpp"
#include "wass_smooth/measures.hpp"
#include "wass_smooth/oracle.hpp"

namespace wass_smooth {

using nlohmann::json;

Measure measure_from_json(const json& j);
json to_json(const Measure& m);

GenericSpectrumDiff spectrum_from_json(const json& j);

json to_json(const BoundReport& r);
json to_json(const OtResult& r, bool with_plan);
json to_json(const DesignReport& r, bool with_plan = false);

/// Reads and parses a JSON file; failures raise ErrorKind::io.
json read_json_file(const std::filesystem::path& path);

}  // namespace wass_smooth
