#include "gowers/measure_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gowers {

using nlohmann::json;

std::string measure_to_json(const FourierMeasure& mu) {
  json coeffs = json::array();
  for (const auto& [c, v] : mu.coeffs()) {
    json row = json::array();
    for (auto x : c) row.push_back(x);
    row.push_back(v.real());
    row.push_back(v.imag());
    coeffs.push_back(std::move(row));
  }
  json doc;
  doc["dim"] = mu.dim();
  doc["is_real"] = mu.is_real();
  doc["coeffs"] = std::move(coeffs);
  return doc.dump() + "\n";
}

FourierMeasure measure_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("measure file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("coeffs"))
    throw std::invalid_argument("measure file needs \"dim\" and \"coeffs\"");
  const int dim = doc.at("dim").get<int>();
  const bool is_real = doc.value("is_real", false);
  if (dim < 1) throw std::invalid_argument("measure dimension must be positive");
  CoefficientMap coeffs;
  for (const auto& row : doc.at("coeffs")) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim) + 2)
      throw std::invalid_argument("coefficient rows must hold d integers then re, im");
    Frequency c(dim);
    for (int i = 0; i < dim; ++i) {
      if (!row[i].is_number_integer())
        throw std::invalid_argument("frequency coordinates must be integers");
      c[i] = row[i].get<std::int64_t>();
    }
    const Complex v(row[dim].get<double>(), row[dim + 1].get<double>());
    if (!coeffs.emplace(c, v).second)
      throw std::invalid_argument("duplicate frequency " + to_string(c));
  }
  return FourierMeasure::create(dim, std::move(coeffs), is_real);
}

void save_measure(const FourierMeasure& mu, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << measure_to_json(mu);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

FourierMeasure load_measure(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return measure_from_json(ss.str());
}

}  // namespace gowers
