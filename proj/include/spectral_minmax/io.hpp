#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "spectral_minmax/matrix_spectra.hpp"
#include "spectral_minmax/measures.hpp"
#include "spectral_minmax/projection_lattice.hpp"

namespace spectral_minmax::io {

// {"atoms": [[loc, weight], ...], "segments": [[t_lo, t_hi, d_lo, d_hi], ...]}
// with an optional "support": [alpha, beta]. Malformed entries and measure
// invariant violations throw ValidationError naming the first bad index.
measures::CompactMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const measures::CompactMeasure& m);

// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real
// matrices.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
Hermitian hermitian_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

// Array of matrix documents, one per projection.
nlohmann::json family_to_json(const lattice::Family& family);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace spectral_minmax::io
