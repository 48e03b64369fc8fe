#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "gowers/lab.hpp"
#include "gowers/measure_io.hpp"

namespace gowers {

using nlohmann::json;

FourierMeasure measure_from_spec(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "lebesgue") return gen_lebesgue(spec.value("dim", 1));
  if (kind == "cantor")
    return gen_cantor(spec.value("ratio", 3), spec.value("depth", 8), spec.at("bandwidth").get<std::int64_t>());
  if (kind == "salem")
    return gen_salem_surrogate(spec.at("beta").get<double>(), spec.at("bandwidth").get<std::int64_t>(),
                               spec.value("seed", std::uint64_t{0}));
  if (kind == "flat") return gen_flat(spec.at("bandwidth").get<std::int64_t>());
  if (kind == "random")
    return gen_random(spec.at("bandwidth").get<std::int64_t>(), spec.value("seed", std::uint64_t{0}),
                      spec.value("real", true), spec.value("amplitude", 0.5));
  if (kind == "coeffs") return measure_from_json(spec.dump());
  if (kind == "file") return load_measure(spec.at("path").get<std::string>());
  throw std::invalid_argument("unknown measure kind '" + kind + "'");
}

namespace {

template <class T>
std::vector<T> as_list(const json& entry, const char* key, std::vector<T> fallback) {
  if (!entry.contains(key)) return fallback;
  const json& v = entry.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::vector<std::uint64_t> seeds_of(const json& entry, std::size_t default_count) {
  if (entry.contains("seeds")) return entry.at("seeds").get<std::vector<std::uint64_t>>();
  const auto count = entry.value("count", default_count);
  const auto base = entry.value("seed", std::uint64_t{1});
  std::vector<std::uint64_t> s(count);
  std::iota(s.begin(), s.end(), base);
  return s;
}

struct Zoo {
  std::vector<std::string> order;
  std::map<std::string, FourierMeasure> measures;

  const FourierMeasure& at(const std::string& id) const {
    auto it = measures.find(id);
    if (it == measures.end()) throw std::invalid_argument("suite refers to unknown measure '" + id + "'");
    return it->second;
  }

  /// "all", "real", or an explicit list of ids.
  std::vector<std::string> select(const json& entry) const {
    const json sel = entry.value("measures", json("all"));
    if (sel.is_array()) return sel.get<std::vector<std::string>>();
    const std::string s = sel.get<std::string>();
    if (s == "all") return order;
    if (s == "real") {
      std::vector<std::string> out;
      for (const auto& id : order)
        if (measures.at(id).is_real()) out.push_back(id);
      return out;
    }
    return {s};
  }
};

struct NamedTuple {
  std::string id;
  MeasureTuple tuple;
};

/// Tuple families:
///   {"source": "random", "k": 2, "bandwidth": 4, "count": 50, "seed": 1, "real": false}
///     independent gen_random entries;
///   {"source": "mixed", ...} two gen_random measures placed by a seeded vertex mask;
///   {"source": "zoo", "k": 2, "measures": ["a", "b"], "masks": [5, 6]} patterns of two zoo measures.
std::vector<NamedTuple> make_tuples(const json& spec, const Zoo& zoo) {
  std::vector<NamedTuple> out;
  const std::string source = spec.value("source", std::string("random"));
  for (int k : as_list<int>(spec, "k", {2})) {
    const std::size_t n = std::size_t{1} << k;
    if (source == "zoo") {
      const auto ids = spec.at("measures").get<std::vector<std::string>>();
      if (ids.size() != 2) throw std::invalid_argument("zoo tuples need exactly two measures");
      for (auto mask : as_list<std::uint64_t>(spec, "masks", {0}))
        out.push_back({ids[0] + "/" + ids[1] + "#" + std::to_string(mask),
                       MeasureTuple::from_pattern(zoo.at(ids[0]), zoo.at(ids[1]), k, mask)});
      continue;
    }
    const auto bandwidth = spec.value("bandwidth", std::int64_t{4});
    const bool real = spec.value("real", false);
    for (auto seed : seeds_of(spec, 10)) {
      if (source == "random") {
        std::vector<FourierMeasure> e;
        for (std::size_t w = 0; w < n; ++w) e.push_back(gen_random(bandwidth, seed * 64 + w, real));
        out.push_back({"random:" + std::to_string(seed), MeasureTuple::create(k, std::move(e))});
      } else if (source == "mixed") {
        const FourierMeasure a = gen_random(bandwidth, seed * 64, real);
        const FourierMeasure b = gen_random(bandwidth, seed * 64 + 1, real);
        std::mt19937_64 rng(seed);
        const std::uint64_t mask = rng() & ((n >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
        out.push_back({"mixed:" + std::to_string(seed), MeasureTuple::from_pattern(a, b, k, mask)});
      } else {
        throw std::invalid_argument("unknown tuple source '" + source + "'");
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

VerificationReport tagged(VerificationReport r, const std::string& key, const std::string& id) {
  r.params[key] = id;
  return r;
}

}  // namespace

std::vector<VerificationReport> run_suite(const json& config) {
  std::vector<VerificationReport> reports;
  if (!config.is_object() || !config.contains("checks")) return reports;
  const double default_tol = config.value("tolerance", kDefaultTolerance);

  Zoo zoo;
  if (config.contains("zoo"))
    for (const auto& [id, spec] : config.at("zoo").items()) {
      zoo.order.push_back(id);
      zoo.measures.emplace(id, measure_from_spec(spec));
    }

  for (const auto& entry : config.at("checks")) {
    const std::string check = entry.at("check").get<std::string>();
    const double tol = entry.value("tolerance", default_tol);
    const auto window = parse_window_kind(entry.value("window", std::string("sharp")));

    if (check == "oracle") {
      for (auto q : as_list<std::int64_t>(entry, "q", {8}))
        for (int k : as_list<int>(entry, "k", {1, 2, 3}))
          for (auto seed : seeds_of(entry, 1)) reports.push_back(check_oracle(q, k, seed, tol));
    } else if (check == "u2") {
      for (const auto& id : zoo.select(entry)) reports.push_back(tagged(check_u2(zoo.at(id), tol), "measure", id));
    } else if (check == "ipad") {
      for (const auto& id : zoo.select(entry))
        for (int k : as_list<int>(entry, "k", {1, 2}))
          reports.push_back(tagged(check_ipad(zoo.at(id), k, tol), "measure", id));
    } else if (check == "start") {
      for (const auto& id : zoo.select(entry))
        for (int k : as_list<int>(entry, "k", {2, 3}))
          reports.push_back(tagged(check_start(zoo.at(id), k, tol), "measure", id));
    } else if (check == "split") {
      for (const auto& id : zoo.select(entry))
        for (int k : as_list<int>(entry, "k", {2, 3}))
          for (int N : as_list<int>(entry, "N", {0, 1, 2, 3, 4, 5, 6}))
            reports.push_back(tagged(check_split(zoo.at(id), k, N, tol), "measure", id));
    } else if (check == "smalltri") {
      for (const auto& id : zoo.select(entry))
        for (int k : as_list<int>(entry, "k", {2}))
          for (int n : as_list<int>(entry, "n", {1, 2, 3, 4, 5}))
            for (int m : as_list<int>(entry, "m", {1, 2, 3, 4, 5}))
              reports.push_back(tagged(check_smalltri(zoo.at(id), k, n, m, window, tol), "measure", id));
    } else if (check == "permute" || check == "reflection" || check == "gcs" || check == "cs11" ||
               check == "cs12" || check == "overgrowth") {
      const int probes = entry.value("probes", 200);
      for (const auto& nt : make_tuples(entry.value("tuples", json::object()), zoo)) {
        const MeasureTuple& t = nt.tuple;
        const auto push = [&](VerificationReport r) { reports.push_back(tagged(std::move(r), "tuple", nt.id)); };
        if (check == "permute") {
          std::uint64_t s = entry.value("seed", std::uint64_t{7});
          for (const auto& perm : all_permutations(t.k())) push(check_permute(t, perm, probes, s++, tol));
        } else if (check == "reflection") {
          for (auto x : as_list<std::int64_t>(entry, "xi", {0, 1}))
            push(check_reflection(t, Frequency(static_cast<std::size_t>(t.dim()), x), probes,
                                  entry.value("seed", std::uint64_t{11}), tol));
        } else if (check == "gcs") {
          push(check_gcs(t, tol));
        } else {
          for (int j : as_list<int>(entry, "j", {1, 2}))
            for (int N : as_list<int>(entry, "N", {0, 1, 2})) {
              if (j > t.k()) continue;
              if (check == "cs11") push(check_cs11(t, j, N, window, tol));
              if (check == "cs12") push(check_cs12(t, j, N, window, tol));
              if (check == "overgrowth") {
                push(check_overgrowth(t, j, N, OvergrowthBound::Both, window, tol));
                push(check_overgrowth(t, j, N, OvergrowthBound::Shifted, window, tol));
              }
            }
        }
      }
    } else if (check == "cs11_cyclic" || check == "cs12_cyclic") {
      for (auto q : as_list<std::int64_t>(entry, "q", {8}))
        for (int k : as_list<int>(entry, "k", {2}))
          for (int j = 1; j <= k; ++j)
            for (int N : as_list<int>(entry, "N", {-1, 0, 1, 2}))
              for (auto seed : seeds_of(entry, 1))
                reports.push_back(check == "cs11_cyclic" ? check_cs11_cyclic(q, k, j, N, seed, tol)
                                                         : check_cs12_cyclic(q, k, j, N, seed, tol));
    } else if (check == "highcross" || check == "reltri") {
      const double max_slope = entry.value("max_slope", 0.1);
      const auto Ns = as_list<int>(entry, "N", {1, 2, 3, 4, 5});
      for (const auto& pair : entry.at("pairs")) {
        const auto ids = pair.get<std::vector<std::string>>();
        const FourierMeasure& a = zoo.at(ids.at(0));
        const FourierMeasure& b = zoo.at(ids.at(1));
        const std::string tag = ids[0] + "/" + ids[1];
        for (int k : as_list<int>(entry, "k", {2})) {
          if (check == "reltri") {
            reports.push_back(tagged(check_reltri(a, b, k, Ns, max_slope), "pair", tag));
            continue;
          }
          for (auto mask : as_list<std::uint64_t>(entry, "masks", {0b0110}))
            reports.push_back(tagged(check_highcross(a, b, k, mask, Ns, max_slope), "pair", tag));
        }
      }
    } else if (check == "convergence") {
      // Either a zoo id or an inline spec, so large measures stay out of the "all" selections.
      const bool inline_spec = entry.at("measure").is_object();
      const std::string id = inline_spec ? entry.value("id", std::string("inline")) : entry.at("measure").get<std::string>();
      const FourierMeasure mu = inline_spec ? measure_from_spec(entry.at("measure")) : zoo.at(id);
      reports.push_back(check_convergence(mu, entry.value("k", 2), entry.value("n_min", 1),
                                          entry.value("n_max", 6), entry.value("slack", 0.05), window, id,
                                          entry.value("tail_tolerance", 1e-12)));
    } else if (check == "rk") {
      reports.push_back(check_rk(entry.value("tolerance", 1e-12)));
    } else {
      throw std::invalid_argument("unknown check '" + check + "'");
    }
  }
  return reports;
}

}  // namespace gowers
