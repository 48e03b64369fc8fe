#include "gowers/slice_io.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace gowers {

using nlohmann::json;

namespace {

/// Shortest round-trip decimal form.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string joined(std::span<const std::int64_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::int64_t> split_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  return out;
}

std::string header_value(const std::string& line, const std::string& key) {
  const auto pos = line.find(key + "=");
  if (pos == std::string::npos) throw std::invalid_argument("slice CSV header lacks " + key);
  const auto start = pos + key.size() + 1;
  return line.substr(start, line.find(' ', start) - start);
}

}  // namespace

std::string slice_to_csv(const DeltaSlice& s) {
  std::ostringstream out;
  out << "# k=" << s.k << "\n# xi=" << joined(s.xi) << "\n# lo=" << joined(s.box.lo)
      << " extent=" << joined(s.box.extent) << " modulus=" << s.modulus << "\n";
  const std::size_t d = static_cast<std::size_t>(s.dim);
  for (int i = 1; i <= s.k; ++i)
    for (std::size_t a = 0; a < d; ++a)
      out << "eta" << i << (d > 1 ? "_" + std::to_string(a + 1) : "") << ",";
  out << "re,im\n";
  for (std::size_t o = 0; o < s.size(); ++o) {
    for (auto e : s.eta(o)) out << e << ",";
    out << format_double(s.values[o].real()) << "," << format_double(s.values[o].imag()) << "\n";
  }
  return out.str();
}

std::string slice_to_json(const DeltaSlice& s) {
  json values = json::array();
  for (std::size_t o = 0; o < s.size(); ++o) {
    json row(s.eta(o));
    row.push_back(s.values[o].real());
    row.push_back(s.values[o].imag());
    values.push_back(std::move(row));
  }
  json doc{{"k", s.k},          {"dim", s.dim},         {"xi", s.xi},
           {"lo", s.box.lo},    {"extent", s.box.extent}, {"modulus", s.modulus},
           {"values", std::move(values)}};
  return doc.dump() + "\n";
}

DeltaSlice slice_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string k_line, xi_line, box_line, columns;
  if (!std::getline(in, k_line) || !std::getline(in, xi_line) || !std::getline(in, box_line) ||
      !std::getline(in, columns))
    throw std::invalid_argument("slice CSV is truncated");
  DeltaSlice s;
  s.k = std::stoi(header_value(k_line, "k"));
  s.xi = split_ints(header_value(xi_line, "xi"));
  s.dim = static_cast<int>(s.xi.size());
  s.box = Box(split_ints(header_value(box_line, "lo")), split_ints(header_value(box_line, "extent")));
  s.modulus = std::stoll(header_value(box_line, "modulus"));
  const std::size_t rank = s.box.rank();
  s.values.assign(s.box.empty() ? 0 : s.box.size(), Complex{});
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Frequency eta;
    std::vector<double> nums;
    while (std::getline(ss, cell, ',')) {
      if (eta.size() < rank) eta.push_back(std::stoll(cell));
      else nums.push_back(std::stod(cell));
    }
    if (eta.size() != rank || nums.size() != 2 || !s.box.contains(eta))
      throw std::invalid_argument("malformed slice CSV row: " + line);
    s.values[s.box.offset(eta)] = {nums[0], nums[1]};
  }
  return s;
}

DeltaSlice slice_from_json(const std::string& text) {
  const json doc = json::parse(text);
  DeltaSlice s;
  s.k = doc.at("k").get<int>();
  s.dim = doc.at("dim").get<int>();
  s.xi = doc.at("xi").get<Frequency>();
  s.box = Box(doc.at("lo").get<std::vector<std::int64_t>>(), doc.at("extent").get<std::vector<std::int64_t>>());
  s.modulus = doc.value("modulus", std::int64_t{0});
  s.values.assign(s.box.empty() ? 0 : s.box.size(), Complex{});
  for (const auto& row : doc.at("values")) {
    Frequency eta(s.box.rank());
    for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = row.at(i).get<std::int64_t>();
    if (!s.box.contains(eta)) throw std::invalid_argument("slice JSON row outside its box");
    s.values[s.box.offset(eta)] = {row.at(eta.size()).get<double>(), row.at(eta.size() + 1).get<double>()};
  }
  return s;
}

}  // namespace gowers
