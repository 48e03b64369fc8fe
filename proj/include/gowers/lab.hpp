#pragma once

// Executable checks of the identities and inequalities satisfied by the
// cube-difference coefficients, and the mollification convergence experiment.

#include <string>
#include <vector>

#include "gowers/delta.hpp"
#include "gowers/measure.hpp"
#include "gowers/norms.hpp"
#include "json.hpp"

namespace gowers {

/// For identities margin is -|lhs - rhs| / max(1, |lhs|) and pass means the
/// residual is within tolerance; for inequalities margin is rhs - lhs and
/// pass means margin >= -tolerance. The tolerance is kept in params.
struct VerificationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  nlohmann::json params = nlohmann::json::object();
};

nlohmann::json to_json(const VerificationReport& r);

inline constexpr double kDefaultTolerance = 1e-9;

/// max_eta |D^k mu(0; eta)| <= D^k mu(0; 0) over the certified box.
VerificationReport check_start(const FourierMeasure& mu, int k, double tol = kDefaultTolerance);

/// With eps = ||mu||_{U^(k+1),<=m}^P - ||mu_n||_{U^(k+1),<=m}^P (P = 2^(k+1)) and
/// mu_n = mu mollified with k+1 copies of the level-n window, checks
/// ||mu||_{U^(k+1),>m}^P >= ||mu_n||_{U^(k+1),>m}^P - eps.
VerificationReport check_smalltri(const FourierMeasure& mu, int k, int n, int m,
                                  WindowKind window = WindowKind::SharpCutoff,
                                  double tol = kDefaultTolerance);

/// |<F>| <= prod ||F_w||_{U^k}.
VerificationReport check_gcs(const MeasureTuple& t, double tol = kDefaultTolerance);

/// sum_{eta: s_j > N} |D^k(F)(0; eta)|^2
///   = sum_eta D^k_{s_k>N}(G_0, G_0)(0; eta) conj(D^k(G_1, G_1)(0; eta)),
/// where G is F with cube coordinates j and k exchanged (G = F when j = k).
VerificationReport check_cs11(const MeasureTuple& t, int j, int N,
                              WindowKind window = WindowKind::SharpCutoff,
                              double tol = kDefaultTolerance);

/// sum_eta |D^k_{s_j>N}(F)(0; eta)|^2
///   = sum_eta D^k(F_1, F_1)(0; eta) conj(D^k_{s_j, s_j-eta_j>N}(F_0, F_0)(0; eta)).
VerificationReport check_cs12(const MeasureTuple& t, int j, int N,
                              WindowKind window = WindowKind::SharpCutoff,
                              double tol = kDefaultTolerance);

/// The same two identities over Z_q for seeded random complex functions,
/// exhausting every eta of (Z_q)^k; cut-offs use centered representatives.
/// The untruncated factors come from the brute-force oracle.
VerificationReport check_cs11_cyclic(std::int64_t q, int k, int j, int N, std::uint64_t seed,
                                     double tol = kDefaultTolerance);
VerificationReport check_cs12_cyclic(std::int64_t q, int k, int j, int N, std::uint64_t seed,
                                     double tol = kDefaultTolerance);

enum class OvergrowthBound {
  Both,    // both truncations, constant 16
  Shifted  // s_j - eta_j > N only, constant 2
};

/// sum_eta |D^k_trunc(F)(0; eta)|^2 <= C prod_w ||F_w||_{U^k}.
VerificationReport check_overgrowth(const MeasureTuple& t, int j, int N, OvergrowthBound bound,
                                    WindowKind window = WindowKind::SharpCutoff,
                                    double tol = kDefaultTolerance);

/// D(pi F)(xi; eta) = D(F)(xi; pi eta) at seeded probe points of the certified box.
VerificationReport check_permute(const MeasureTuple& t, std::span<const int> perm, int probes,
                                 std::uint64_t seed, double tol = kDefaultTolerance);

/// D(F)(xi; eta', a) = D(F^r)(xi; eta', -xi - a) with F^r = (conj F_1, conj F_0),
/// at seeded probe points.
VerificationReport check_reflection(const MeasureTuple& t, const Frequency& xi, int probes,
                                    std::uint64_t seed, double tol = kDefaultTolerance);

/// ||mu||_{U^(k+1)}^(2^(k+1)) from the FFT slice against the sum of |D^k mu(0; eta)|^2
/// over the certified box, evaluated point by point by direct recursion.
VerificationReport check_ipad(const FourierMeasure& mu, int k, double tol = kDefaultTolerance);

/// Engine over Z_q against the brute-force cube oracle for a seeded random
/// complex function: every (xi; eta) of D^k and the U^(k+1) norm.
VerificationReport check_oracle(std::int64_t q, int k, std::uint64_t seed, double tol = kDefaultTolerance);

/// ||mu||_{U^2}^4 = sum_c |mu^(c)|^4.
VerificationReport check_u2(const FourierMeasure& mu, double tol = 1e-12);

/// low_pow + high_pow = total_pow for the sharp window.
VerificationReport check_split(const FourierMeasure& mu, int k, int N, double tol = 1e-12);

/// r_2 = 2 beta - d, r_3(1, 1) = 386/385, and r_k increasing in beta on a grid of (d/2, d].
VerificationReport check_rk(double tol = 1e-12);

/// Fitted-constant protocol shared by highcross and reltri.
struct RatioSweep {
  std::vector<int> N;
  std::vector<double> lhs, eps, ratio;
  double slope = 0.0;  // of log2 ratio against N over finite, positive ratios
  bool slope_defined = false;
};

/// Tuple of order k with entry w = mu2 if bit w of mask is set, else mu1.
/// lhs(N) = sum_{|eta|_inf > 2^N} |D^k(F)(0; eta)|^2,
/// eps(N) = max_i ||mu_i||_{U^(k+1), >N}, ratio = lhs / eps^(2^(-2(k-1))).
/// Passes when the ratio shows no growth: log2-slope <= 0.1.
VerificationReport check_highcross(const FourierMeasure& mu1, const FourierMeasure& mu2, int k,
                                   std::uint64_t mask, const std::vector<int>& Ns,
                                   double max_slope = 0.1);

/// lhs(N) = ||mu1 + mu2||_{U^(k+1), >kN} under both readings of the cutoff:
/// "box" keeps |eta|_inf > k 2^N, "coord" keeps |eta|_inf > 2^N.
/// ratio = lhs / eps^(1 / 2^(3k-2)); passes when both readings show no growth.
VerificationReport check_reltri(const FourierMeasure& mu1, const FourierMeasure& mu2, int k,
                                const std::vector<int>& Ns, double max_slope = 0.1);

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;  // ||mu - mu_n||_{U^k}
};

struct ConvergenceTable {
  int k = 0;
  std::string measure_id;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  // of -log2 e_n against n over nonzero rows
  bool slope_defined = false;
  double predicted = 0.0;  // r_k(beta_used, d) / 2^k
  bool vacuous = false;
  double beta_used = 0.0;  // order k-1 dimension estimate
  bool nonincreasing = true;
};

/// mu_n = mu mollified by k copies of the level-n window.
ConvergenceTable converge_experiment(const FourierMeasure& mu, int k, int n_min, int n_max,
                                     WindowKind window = WindowKind::SharpCutoff,
                                     const std::string& measure_id = "mu");

/// sum_{|c|_inf > 2^n} |mu^(c)|^4.
double tail_sum_l4(const FourierMeasure& mu, int n);

/// Passes when the fitted slope is at least predicted - slack and, for k = 2
/// with the sharp window, every e_n^4 matches tail_sum_l4 within tail_tol.
VerificationReport check_convergence(const FourierMeasure& mu, int k, int n_min, int n_max,
                                     double slack, WindowKind window = WindowKind::SharpCutoff,
                                     const std::string& measure_id = "mu", double tail_tol = 1e-12);

/// Runs the checks listed in a suite configuration; see README for the format.
std::vector<VerificationReport> run_suite(const nlohmann::json& config);

/// Builds a measure from a zoo entry such as
/// {"kind": "salem", "beta": 0.9, "bandwidth": 64, "seed": 42}.
FourierMeasure measure_from_spec(const nlohmann::json& spec);

}  // namespace gowers
