#pragma once

// The lattice function G_n(k) through its cutoff decomposition: the finite
// part Gamma_n(k) over the shell 0 < |h| < rho, the tail bound delta G_n,
// the large-|k| asymptotic bounds, and the certified bracket for sup G_n.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kato/fields.hpp"
#include "kato/kernel.hpp"
#include "kato/optimize.hpp"
#include "kato/sphere_polynomial.hpp"

namespace kato::gfunction {

struct CutoffConfig {
  int d = 3;
  double n = 3.0;
  double rho = 20.0;
  /// Even expansion order of the large-|k| bounds.
  int t = 8;

  /// Throws std::invalid_argument unless n > d/2 + 1, rho > 2 sqrt(d),
  /// 2n - 3 - (d-1) > 0 and t is even and >= 2.
  void validate() const;

  /// rho = 20, t = 8 for n = 3 and rho = 10, t = 6 otherwise.
  static CutoffConfig defaults_for(double n, int d = 3);
};

/// The enumerated region does not dominate the large-|k| bound; raise rho
/// or t.
class TailDominatesError : public std::runtime_error {
 public:
  TailDominatesError(double tail_sup, double interior_max);
  double tail_sup;
  double interior_max;
};

struct ShellPoint {
  WaveVector h;
  std::int64_t norm2 = 0;
  double norm = 0.0;
};

/// {h in Z^d : 0 < |h| < rho}, in lexicographic order.
class LatticeShell {
 public:
  LatticeShell(int d, double rho);

  [[nodiscard]] int dim() const noexcept { return d_; }
  [[nodiscard]] double rho() const noexcept { return rho_; }
  [[nodiscard]] const std::vector<ShellPoint>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

  /// Distinct values of |h|^2 with their multiplicities, ascending.
  [[nodiscard]] std::vector<std::pair<std::int64_t, std::size_t>> norm2_counts() const;

 private:
  int d_;
  double rho_;
  std::vector<ShellPoint> points_;
};

/// r^{n/2} for an integer r = |x|^2, i.e. |x|^n, evaluated as exp(n/2 log r)
/// so that non-integer n takes the same path as integer n.
double lattice_power(std::int64_t norm2, double n);

/// Evaluates Gamma_n(k) for one configuration, reusing the shell and the
/// power tables across calls. Thread-safe after construction.
class GammaEvaluator {
 public:
  explicit GammaEvaluator(const CutoffConfig& config);

  [[nodiscard]] const CutoffConfig& config() const noexcept { return config_; }
  [[nodiscard]] const LatticeShell& shell() const noexcept { return shell_; }

  /// Throws std::invalid_argument for k = 0 or a dimension mismatch.
  [[nodiscard]] double operator()(const WaveVector& k) const;

 private:
  struct Powers {
    double pn;      // r^{n/2}
    double inv2n;   // r^{-n}
    double inv2n2;  // r^{-n-1}
  };
  [[nodiscard]] Powers powers(std::int64_t r2) const;

  CutoffConfig config_;
  LatticeShell shell_;
  double rho2_;
  std::vector<double> h_pn_;
  std::vector<double> h_inv2n_;
  std::vector<double> h_inv2n2_;
  std::vector<Powers> table_;
};

double gamma(const CutoffConfig& config, const WaveVector& k);

/// Absolute values sorted in non-increasing order.
WaveVector canonicalize(const WaveVector& k);

/// All canonical k (k_1 >= ... >= k_d >= 0) with 0 < |k| < radius,
/// lexicographically ordered.
std::vector<WaveVector> canonical_points(int d, double radius);

/// Closed-form upper bound for sum_{|h| >= rho} |h|^{-nu}; requires nu > d
/// and rho > 2 sqrt(d).
double tail_sum_bound(int d, double nu, double rho);

/// C_n times tail_sum_bound(d, 2n-2, rho).
double delta_g(const CutoffConfig& config, double c_n);

/// The three polynomials attached to one even order l, with their sphere
/// extrema. The scalar bounds are outward-rounded.
struct AsymptoticTerm {
  int ell = 0;
  SpherePolynomial P{3};
  SpherePolynomial P1{3};
  SpherePolynomial P2{3};
  optimize::ExtremaReport P_range;
  optimize::ExtremaReport P1_range;
  optimize::ExtremaReport P2_range;
  double p_lo = 0.0, p_hi = 0.0;
  double p1_lo = 0.0, p1_hi = 0.0;
  double p2_lo = 0.0, p2_hi = 0.0;
};

struct AsymptoticData {
  CutoffConfig config;
  std::vector<AsymptoticTerm> terms;  ///< l = 0, 2, ..., t-2
  /// Remainder extrema after outward rounding.
  double lambda = 0.0, Lambda = 0.0, mu = 0.0, M = 0.0;
  double w = 0.0, w1 = 0.0, w2 = 0.0;
  double W = 0.0, W1 = 0.0, W2 = 0.0;
};

/// Relative widening applied to numerically found extrema before they
/// enter a certified bound.
inline constexpr double kOutwardRounding = 1e-6;
double round_outward_up(double x);
double round_outward_down(double x);

/// Builds the asymptotic polynomials and scalars from raw remainder extrema.
AsymptoticData asymptotic_data(const CutoffConfig& config, const kernel::RemainderExtrema& rem);
/// Same, computing the remainder extrema first.
AsymptoticData asymptotic_data(const CutoffConfig& config, unsigned threads = 0);

/// Upper bound for Gamma_n(k) valid for every |k| = kmag >= 2 rho.
double tail_upper(const AsymptoticData& data, double kmag);
/// Lower bound for Gamma_n(k) valid for every |k| = kmag >= 2 rho.
double tail_lower(const AsymptoticData& data, double kmag);
/// The upper bound at a specific k, using the polynomial values at k/|k|
/// instead of their maxima.
double tail_upper_at(const AsymptoticData& data, const WaveVector& k);

/// sup of tail_upper over [2 rho, inf), returned as (argsup |k|, sup); an
/// infinite argsup means the supremum is the limit |k| -> inf.
std::pair<double, double> sup_tail(const AsymptoticData& data);

struct GBracket {
  double sup_gamma = 0.0;
  WaveVector argmax;
  double delta = 0.0;
  /// The upper end comes from the large-|k| bound rather than sup_gamma.
  bool tail_limited = false;
  double lower = 0.0;
  double upper = 0.0;
};

struct SupSearchOptions {
  unsigned threads = 0;
  /// Keep every (k, Gamma(k)) of the enumerated region.
  bool keep_values = false;
  /// Enumerate all of {0 < |k| < 2 rho} instead of the canonical cone.
  bool full_enumeration = false;
  /// Instead of failing when the large-|k| bound reaches the enumerated
  /// maximum, bound sup G by max(sup_gamma, tail sup) + delta.
  bool accept_tail_sup = false;
};

struct SupSearch {
  GBracket bracket;
  double c_n = 0.0;
  double tail_sup = 0.0;
  double tail_argsup = 0.0;
  std::size_t shell_size = 0;
  std::size_t enumerated = 0;
  kernel::RemainderExtrema remainder;
  AsymptoticData asymptotics;
  std::vector<std::pair<WaveVector, double>> values;
};

/// Full upper-bound pipeline. Throws TailDominatesError when the tail bound
/// reaches the enumerated maximum, unless accept_tail_sup is set.
SupSearch sup_search(const CutoffConfig& config, const SupSearchOptions& options = {});
GBracket sup_bracket(const CutoffConfig& config, unsigned threads = 0);

/// (2 pi)^{-d/2} sqrt(upper).
double g_plus_from_bracket(int d, double upper);
/// Unrounded G^+ for the configuration.
double upper_bound_g(const CutoffConfig& config, unsigned threads = 0);

}  // namespace kato::gfunction
