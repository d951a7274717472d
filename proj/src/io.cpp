#include "spectral_minmax/io.hpp"

#include <fstream>

#include "spectral_minmax/errors.hpp"

namespace spectral_minmax::io {

namespace {

double number_at(const nlohmann::json& arr, std::size_t k, const std::string& where) {
  if (!arr[k].is_number()) throw ValidationError(where + ": entry " + std::to_string(k) + " is not a number");
  return arr[k].get<double>();
}

const nlohmann::json& rows_of(const nlohmann::json& j, const char* key, std::size_t n) {
  const auto& rows = j.at(key);
  if (!rows.is_array() || rows.size() != n) {
    throw ValidationError(std::string("matrix \"") + key + "\" must have " + std::to_string(n) +
                          " rows");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw ValidationError(std::string("matrix \"") + key + "\" row " + std::to_string(i) +
                            " must have " + std::to_string(n) + " entries");
    }
  }
  return rows;
}

}  // namespace

measures::CompactMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("measure document must be a JSON object");
  std::vector<measures::Atom> atoms;
  std::vector<measures::DensitySegment> segments;
  if (j.contains("atoms")) {
    const auto& arr = j["atoms"];
    if (!arr.is_array()) throw ValidationError("\"atoms\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "atoms[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 2) {
        throw ValidationError(where + " must be [location, weight]");
      }
      atoms.push_back({number_at(arr[i], 0, where), number_at(arr[i], 1, where)});
    }
  }
  if (j.contains("segments")) {
    const auto& arr = j["segments"];
    if (!arr.is_array()) throw ValidationError("\"segments\" must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "segments[" + std::to_string(i) + "]";
      if (!arr[i].is_array() || arr[i].size() != 4) {
        throw ValidationError(where + " must be [t_lo, t_hi, d_lo, d_hi]");
      }
      segments.push_back({number_at(arr[i], 0, where), number_at(arr[i], 1, where),
                          number_at(arr[i], 2, where), number_at(arr[i], 3, where)});
    }
  }
  if (j.contains("support")) {
    const auto& s = j["support"];
    if (!s.is_array() || s.size() != 2) throw ValidationError("\"support\" must be [alpha, beta]");
    return measures::CompactMeasure(std::move(atoms), std::move(segments),
                                    number_at(s, 0, "support"), number_at(s, 1, "support"));
  }
  return measures::CompactMeasure(std::move(atoms), std::move(segments));
}

nlohmann::json measure_to_json(const measures::CompactMeasure& m) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : m.atoms()) atoms.push_back({a.location, a.weight});
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& s : m.segments()) segments.push_back({s.lo, s.hi, s.density_lo, s.density_hi});
  return {{"atoms", atoms}, {"segments", segments}, {"support", {m.alpha(), m.beta()}}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw ValidationError("matrix document needs \"dim\" and \"re\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() <= 0) {
    throw ValidationError("\"dim\" must be a positive integer");
  }
  const auto n = j["dim"].get<std::size_t>();
  const auto& re = rows_of(j, "re", n);
  const nlohmann::json* im = j.contains("im") ? &rows_of(j, "im", n) : nullptr;
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::string where = "row " + std::to_string(r);
      const double x = number_at(re[r], c, "re " + where);
      const double y = im ? number_at((*im)[r], c, "im " + where) : 0.0;
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(x, y);
    }
  }
  return m;
}

Hermitian hermitian_from_json(const nlohmann::json& j) { return Hermitian(matrix_from_json(j)); }

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ir = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

nlohmann::json family_to_json(const lattice::Family& family) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : family) {
    auto doc = matrix_to_json(p.matrix());
    doc["rank"] = p.rank();
    out.push_back(std::move(doc));
  }
  return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace spectral_minmax::io
