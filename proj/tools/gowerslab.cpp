// gowerslab: generate measures, compute U^k norms, splits, decay fits and
// convergence tables, export slices, and run verification suites.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or I/O error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gowers/lab.hpp"
#include "gowers/measure_io.hpp"
#include "gowers/norms.hpp"
#include "gowers/slice_io.hpp"
#include "json.hpp"

namespace {

using namespace gowers;
using nlohmann::json;

constexpr const char* kVersionLine = "# gowerslab 1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest bandwidth allowed for a computation at U^k scale (slices of D^(k-1)).
std::int64_t bandwidth_ceiling(int uk_order) {
  switch (uk_order) {
    case 1:
    case 2: return 256;
    case 3: return 64;
    case 4: return 16;
    default: return 0;
  }
}

/// Rejects work beyond the desk-scale ceilings before any allocation.
void enforce_ceiling(int uk_order, std::int64_t bandwidth) {
  if (uk_order > 4)
    throw UsageError("U^" + std::to_string(uk_order) +
                     " is beyond the supported range (k <= 4): slices of D^(k-1) live in dimension k-1 and "
                     "each recursion level doubles the box radius");
  const std::int64_t cap = bandwidth_ceiling(uk_order);
  if (bandwidth > cap) {
    // Top slice of D^(k-1) at xi = 0 spans about (2^(k-1) * 2M + 1)^(k-1) entries.
    const int j = uk_order - 1;
    const double side = std::ldexp(2.0 * static_cast<double>(bandwidth), j - 1) + 1.0;
    std::ostringstream msg;
    msg << "bandwidth " << bandwidth << " exceeds the ceiling " << cap << " for U^" << uk_order
        << ": the slice of D^" << j << " would hold about " << side << "^" << j << " = "
        << std::pow(side, j) << " complex entries";
    throw UsageError(msg.str());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + out_path);
}

std::string id_for(const std::string& id, const std::string& path) {
  return id.empty() ? std::filesystem::path(path).stem().string() : id;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(std::isnan(v) ? "nan" : "inf"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gowers uniformity norms of band-limited measures on the torus"};
  app.require_subcommand(1);

  std::string in_path, out_path, measure_id, window_name = "sharp", config_path;
  int k = 2;
  bool as_json = false;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a measure file");
  std::string kind;
  double beta = 0.9;
  std::int64_t bandwidth = 16;
  std::uint64_t seed = 0;
  int depth = 8, ratio = 3, dim = 1;
  bool real = true;
  gen->add_option("kind", kind, "lebesgue | cantor | salem | flat | random")->required()
      ->check(CLI::IsMember({"lebesgue", "cantor", "salem", "flat", "random"}));
  gen->add_option("--beta", beta, "Decay exponent of the Salem surrogate");
  gen->add_option("--bandwidth", bandwidth, "Largest |c|_inf kept")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Seed for pseudorandom phases and values");
  gen->add_option("--depth", depth, "Cantor construction depth")->check(CLI::NonNegativeNumber);
  gen->add_option("--ratio", ratio, "Cantor contraction ratio (>= 3)");
  gen->add_option("--dim", dim, "Torus dimension (lebesgue only)")->check(CLI::PositiveNumber);
  gen->add_flag("--real,!--complex", real, "Hermitian random measure (random only)");
  gen->add_option("--out", out_path, "Output file (default: standard output)");

  // norm
  auto* norm = app.add_subcommand("norm", "U^k norm, optionally split at level N");
  std::optional<int> split_N;
  norm->add_option("input", in_path, "Measure file")->required();
  norm->add_option("--k", k, "Order of the norm (2..4)")->check(CLI::Range(2, 4));
  norm->add_option("--N,--split", split_N, "Cutoff level for the low/high split");
  norm->add_option("--window", window_name, "sharp | fejer")->check(CLI::IsMember({"sharp", "fejer"}));
  norm->add_option("--id", measure_id, "Measure id column (default: file stem)");
  norm->add_flag("--json", as_json, "JSON instead of CSV");
  norm->add_option("--out", out_path, "Output file");

  // dim
  auto* dimc = app.add_subcommand("dim", "Decay envelopes and order-k Fourier dimension");
  std::vector<std::int64_t> radii;
  dimc->add_option("input", in_path, "Measure file")->required();
  dimc->add_option("--k", k, "Highest order i of D^i (1..3)")->check(CLI::Range(1, 3));
  dimc->add_option("--radii", radii, "Shell radii, strictly increasing (default dyadic)");
  dimc->add_flag("--json", as_json, "JSON instead of CSV");
  dimc->add_option("--out", out_path, "Output file");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::optional<double> tolerance;
  verify->add_option("--config", config_path, "Suite configuration (JSON)")->required();
  verify->add_option("--tolerance", tolerance, "Override the suite-wide tolerance");
  verify->add_option("--out", out_path, "Write the report array here instead of standard output");
  bool csv_summary = false;
  verify->add_flag("--csv", csv_summary, "CSV summary instead of the JSON report array");

  // converge
  auto* conv = app.add_subcommand("converge", "Mollification convergence table");
  int n_min = 1, n_max = 6;
  conv->add_option("input", in_path, "Measure file")->required();
  conv->add_option("--k", k, "Order of the norm (2..4)")->check(CLI::Range(2, 4));
  conv->add_option("--n-min", n_min, "Smallest mollification level");
  conv->add_option("--n-max", n_max, "Largest mollification level");
  conv->add_option("--window", window_name, "sharp | fejer")->check(CLI::IsMember({"sharp", "fejer"}));
  conv->add_option("--id", measure_id, "Measure id column (default: file stem)");
  conv->add_flag("--json", as_json, "JSON instead of CSV");
  conv->add_option("--out", out_path, "Output file");

  // slice
  auto* slice = app.add_subcommand("slice", "Export D^k mu(xi; .) over its certified box");
  std::vector<std::int64_t> xi;
  slice->add_option("input", in_path, "Measure file")->required();
  slice->add_option("--k", k, "Order of D^k (1..3)")->check(CLI::Range(1, 3));
  slice->add_option("--xi", xi, "First-argument frequency (default 0)");
  slice->add_flag("--json", as_json, "JSON instead of CSV");
  slice->add_option("--out", out_path, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      FourierMeasure mu = gen_lebesgue(1);
      if (kind == "lebesgue") mu = gen_lebesgue(dim);
      else if (kind == "cantor") mu = gen_cantor(ratio, depth, bandwidth);
      else if (kind == "salem") mu = gen_salem_surrogate(beta, bandwidth, seed);
      else if (kind == "flat") mu = gen_flat(bandwidth);
      else mu = gen_random(bandwidth, seed, real);
      emit(measure_to_json(mu), out_path);
      return 0;
    }

    if (verify->parsed()) {
      json config;
      try {
        config = json::parse(read_file(config_path));
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("configuration is not valid JSON: ") + e.what());
      }
      if (tolerance) config["tolerance"] = *tolerance;
      const auto reports = run_suite(config);
      bool all = true;
      std::ostringstream out;
      if (csv_summary) {
        out << kVersionLine << "\nname,lhs,rhs,margin,pass\n";
        for (const auto& r : reports)
          out << r.name << "," << num(r.lhs) << "," << num(r.rhs) << "," << num(r.margin) << ","
              << (r.pass ? "pass" : "fail") << "\n";
      }
      json arr = json::array();
      for (const auto& r : reports) {
        all = all && r.pass;
        arr.push_back(to_json(r));
      }
      emit(csv_summary ? out.str() : arr.dump(2) + "\n", out_path);
      std::size_t failed = 0;
      for (const auto& r : reports) failed += r.pass ? 0 : 1;
      std::cerr << reports.size() - failed << "/" << reports.size() << " checks passed\n";
      return all ? 0 : 1;
    }

    const FourierMeasure mu = load_measure(in_path);
    const WindowKind window = parse_window_kind(window_name);
    std::ostringstream out;

    if (norm->parsed()) {
      enforce_ceiling(k, mu.bandwidth());
      const std::string id = id_for(measure_id, in_path);
      if (split_N) {
        const NormSplit s = norm_split(mu, k, *split_N, window);
        const double n = std::pow(s.total_pow, 1.0 / std::ldexp(1.0, k));
        if (as_json) {
          out << json{{"measure_id", id}, {"k", k},           {"N", *split_N},      {"norm", n},
                      {"total", s.total_pow}, {"low", s.low_pow}, {"high", s.high_pow}, {"window", window_name}}
                     .dump(2)
              << "\n";
        } else {
          out << kVersionLine << "\nmeasure_id,k,N,norm,total,low,high\n"
              << id << "," << k << "," << *split_N << "," << num(n) << "," << num(s.total_pow) << ","
              << num(s.low_pow) << "," << num(s.high_pow) << "\n";
        }
      } else {
        const double p = uk_pow(mu, k);
        const double n = std::pow(p, 1.0 / std::ldexp(1.0, k));
        if (as_json)
          out << json{{"measure_id", id}, {"k", k}, {"norm", n}, {"total", p}}.dump(2) << "\n";
        else
          out << kVersionLine << "\nmeasure_id,k,norm,total\n" << id << "," << k << "," << num(n) << "," << num(p) << "\n";
      }
    } else if (dimc->parsed()) {
      enforce_ceiling(k + 1, mu.bandwidth());
      const DimensionEstimate est = fourier_dim_order_k(mu, k, radii);
      if (as_json) {
        json fits = json::array();
        for (const auto& f : est.fits) {
          json shells = json::array();
          for (const auto& s : f.shells) shells.push_back({{"R", s.radius}, {"D", s.envelope}});
          fits.push_back({{"i", f.order},
                          {"shells", shells},
                          {"slope", jnum(f.slope)},
                          {"beta_i", jnum(f.beta)},
                          {"r2", jnum(f.r2)},
                          {"warnings", f.warnings}});
        }
        out << json{{"dimension", est.value}, {"k", k}, {"fits", fits}}.dump(2) << "\n";
      } else {
        out << kVersionLine << "\n# fourier_dim_order_" << k << "=" << num(est.value) << "\n";
        out << "i,R,D,slope,beta_i,r2\n";
        for (const auto& f : est.fits)
          for (const auto& s : f.shells)
            out << f.order << "," << s.radius << "," << num(s.envelope) << "," << num(f.slope) << ","
                << num(f.beta) << "," << num(f.r2) << "\n";
        for (const auto& f : est.fits)
          for (const auto& w : f.warnings) std::cerr << "warning (i=" << f.order << "): " << w << "\n";
      }
    } else if (conv->parsed()) {
      enforce_ceiling(k, mu.bandwidth());
      const ConvergenceTable t = converge_experiment(mu, k, n_min, n_max, window, id_for(measure_id, in_path));
      if (as_json) {
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back({{"n", r.n}, {"error", r.error}});
        out << json{{"measure_id", t.measure_id},
                    {"k", t.k},
                    {"rows", rows},
                    {"slope", t.slope_defined ? json(t.slope) : json(nullptr)},
                    {"predicted", jnum(t.predicted)},
                    {"vacuous", t.vacuous},
                    {"beta_used", t.beta_used},
                    {"nonincreasing", t.nonincreasing}}
                   .dump(2)
            << "\n";
      } else {
        out << kVersionLine << "\nmeasure_id,k,n,error,slope,predicted,beta_used\n";
        for (const auto& r : t.rows)
          out << t.measure_id << "," << t.k << "," << r.n << "," << num(r.error) << ","
              << (t.slope_defined ? num(t.slope) : "nan") << "," << num(t.predicted) << "," << num(t.beta_used)
              << "\n";
        if (!t.slope_defined) std::cerr << "warning: fewer than 3 nonzero errors, slope undefined\n";
      }
    } else if (slice->parsed()) {
      enforce_ceiling(k + 1, mu.bandwidth());
      if (xi.empty()) xi.assign(static_cast<std::size_t>(mu.dim()), 0);
      const DeltaSlice s = delta_slice(MeasureTuple::uniform(mu, k), xi);
      out << (as_json ? slice_to_json(s) : slice_to_csv(s));
    }
    emit(out.str(), out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
