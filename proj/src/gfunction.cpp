#include "kato/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "kato/parallel.hpp"
#include "kato/summation.hpp"

namespace kato::gfunction {

// ---------------------------------------------------------------------------
// Configuration

void CutoffConfig::validate() const {
  std::ostringstream err;
  if (d < 2) err << "d must be >= 2; ";
  if (!(n > 0.5 * d + 1.0)) err << "n must exceed d/2 + 1; ";
  if (!(rho > 2.0 * std::sqrt(static_cast<double>(d)))) err << "rho must exceed 2 sqrt(d); ";
  if (!(2.0 * n - 3.0 - (d - 1) > 0.0)) err << "2n - 3 - (d-1) must be positive; ";
  if (t < 2 || t % 2 != 0) err << "t must be an even integer >= 2; ";
  const auto msg = err.str();
  if (!msg.empty()) throw std::invalid_argument("invalid cutoff configuration: " + msg);
}

CutoffConfig CutoffConfig::defaults_for(double n, int d) {
  CutoffConfig c;
  c.d = d;
  c.n = n;
  if (n == 3.0) {
    c.rho = 20.0;
    c.t = 8;
  } else {
    c.rho = 10.0;
    c.t = 6;
  }
  return c;
}

namespace {

std::string tail_message(double tail_sup, double interior_max) {
  std::ostringstream os;
  os.precision(10);
  os << "the large-|k| bound " << tail_sup << " is not below the enumerated maximum "
     << interior_max << "; increase rho or t";
  return os.str();
}

}  // namespace

TailDominatesError::TailDominatesError(double tail, double interior)
    : std::runtime_error(tail_message(tail, interior)), tail_sup(tail), interior_max(interior) {}

// ---------------------------------------------------------------------------
// Shell

LatticeShell::LatticeShell(int d, double rho) : d_(d), rho_(rho) {
  if (d < 1) throw std::invalid_argument("shell dimension must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("shell radius must be positive");
  const int r = static_cast<int>(std::ceil(rho));
  const double rho2 = rho * rho;
  std::vector<int> h(d, -r);
  for (;;) {
    std::int64_t h2 = 0;
    for (int x : h) h2 += static_cast<std::int64_t>(x) * x;
    if (h2 > 0 && static_cast<double>(h2) < rho2) {
      points_.push_back({WaveVector(h), h2, std::sqrt(static_cast<double>(h2))});
    }
    int i = d - 1;
    while (i >= 0 && h[i] == r) h[i--] = -r;
    if (i < 0) break;
    ++h[i];
  }
}

std::vector<std::pair<std::int64_t, std::size_t>> LatticeShell::norm2_counts() const {
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& p : points_) ++counts[p.norm2];
  return {counts.begin(), counts.end()};
}

double lattice_power(std::int64_t norm2, double n) {
  return std::exp(0.5 * n * std::log(static_cast<double>(norm2)));
}

// ---------------------------------------------------------------------------
// Gamma

GammaEvaluator::GammaEvaluator(const CutoffConfig& config)
    : config_(config), shell_(config.d, config.rho), rho2_(config.rho * config.rho) {
  config_.validate();
  const double n = config_.n;
  h_pn_.reserve(shell_.size());
  for (const auto& p : shell_.points()) {
    h_pn_.push_back(lattice_power(p.norm2, n));
    h_inv2n_.push_back(1.0 / lattice_power(p.norm2, 2 * n));
    h_inv2n2_.push_back(1.0 / lattice_power(p.norm2, 2 * n + 2));
  }
  // |k - h|^2 for |k| < 2 rho stays below (3 rho)^2.
  const auto limit = static_cast<std::int64_t>(std::ceil(9.0 * rho2_)) + 1;
  table_.resize(static_cast<std::size_t>(limit));
  for (std::int64_t r2 = 1; r2 < limit; ++r2) {
    table_[r2] = {lattice_power(r2, n), 1.0 / lattice_power(r2, 2 * n),
                  1.0 / lattice_power(r2, 2 * n + 2)};
  }
}

GammaEvaluator::Powers GammaEvaluator::powers(std::int64_t r2) const {
  if (r2 < static_cast<std::int64_t>(table_.size())) return table_[r2];
  const double n = config_.n;
  return {lattice_power(r2, n), 1.0 / lattice_power(r2, 2 * n),
          1.0 / lattice_power(r2, 2 * n + 2)};
}

double GammaEvaluator::operator()(const WaveVector& k) const {
  if (k.dim() != config_.d) throw std::invalid_argument("wave vector has the wrong dimension");
  if (k.is_zero()) throw std::invalid_argument("Gamma_n is defined for k != 0 only");
  const int d = config_.d;
  const std::int64_t k2 = k.norm2();
  const double kn = lattice_power(k2, config_.n);
  const auto& pts = shell_.points();
  const bool far = static_cast<double>(k2) >= 4.0 * rho2_;
  CompensatedSum sum;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto hc = pts[i].h.components();
    std::int64_t hk = 0;
    std::int64_t r2 = 0;
    for (int a = 0; a < d; ++a) {
      hk += static_cast<std::int64_t>(hc[a]) * k[a];
      const std::int64_t diff = k[a] - hc[a];
      r2 += diff * diff;
    }
    const std::int64_t wedge2 = pts[i].norm2 * k2 - hk * hk;
    if (wedge2 == 0) continue;  // includes h = k
    const double w = static_cast<double>(wedge2);
    const Powers p = powers(r2);
    const double a = kn - p.pn;
    double term = w * a * a * h_inv2n2_[i] * p.inv2n;
    if (far || static_cast<double>(r2) >= rho2_) {
      const double b = kn - h_pn_[i];
      term += w * b * b * h_inv2n_[i] * p.inv2n2;
    }
    sum += term;
  }
  return sum.value();
}

double gamma(const CutoffConfig& config, const WaveVector& k) {
  return GammaEvaluator(config)(k);
}

WaveVector canonicalize(const WaveVector& k) {
  std::vector<int> c(k.components().begin(), k.components().end());
  for (auto& x : c) x = std::abs(x);
  std::sort(c.begin(), c.end(), std::greater<>());
  return WaveVector(std::move(c));
}

std::vector<WaveVector> canonical_points(int d, double radius) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  std::vector<WaveVector> out;
  const double r2max = radius * radius;
  const int kmax = static_cast<int>(std::ceil(radius));
  std::vector<int> k(d, 0);
  std::function<void(int, int, std::int64_t)> rec = [&](int pos, int bound, std::int64_t acc) {
    if (pos == d) {
      if (acc > 0 && static_cast<double>(acc) < r2max) out.emplace_back(k);
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      const std::int64_t next = acc + static_cast<std::int64_t>(v) * v;
      if (static_cast<double>(next) >= r2max) break;
      k[pos] = v;
      rec(pos + 1, v, next);
    }
    k[pos] = 0;
  };
  rec(0, kmax, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Tail bounds

double tail_sum_bound(int d, double nu, double rho) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  if (!(nu > d)) throw std::invalid_argument("tail_sum_bound requires nu > d");
  const double root_d = std::sqrt(static_cast<double>(d));
  if (!(rho > 2.0 * root_d)) throw std::invalid_argument("tail_sum_bound requires rho > 2 sqrt(d)");
  const double lam = rho - 2.0 * root_d;
  const double pref = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
  double acc = 0.0;
  double binom = 1.0;
  for (int i = 0; i < d; ++i) {
    const double e = nu - i - 1.0;
    acc += binom * std::pow(static_cast<double>(d), 0.5 * (d - 1 - i)) / (e * std::pow(lam, e));
    binom = binom * (d - 1 - i) / (i + 1);
  }
  return pref * acc;
}

double delta_g(const CutoffConfig& config, double c_n) {
  config.validate();
  return c_n * tail_sum_bound(config.d, 2.0 * config.n - 2.0, config.rho);
}

double round_outward_up(double x) { return x + kOutwardRounding * std::fabs(x); }
double round_outward_down(double x) { return x - kOutwardRounding * std::fabs(x); }

// ---------------------------------------------------------------------------
// Asymptotic polynomials

namespace {

void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

double multinomial(const std::vector<int>& alpha) {
  double r = std::tgamma(std::accumulate(alpha.begin(), alpha.end(), 0) + 1.0);
  for (int a : alpha) r /= std::tgamma(a + 1.0);
  return r;
}

// Integer moments sum_{|h|^2 = r2} h^alpha for every alpha of a fixed even
// total degree, per distinct shell radius.
class ShellMoments {
 public:
  ShellMoments(const LatticeShell& shell, int max_degree) : d_(shell.dim()) {
    const auto counts = shell.norm2_counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      radius_index_[counts[i].first] = i;
      norm2_.push_back(counts[i].first);
    }
    for (int j = 0; j <= max_degree; j += 2) {
      std::vector<std::vector<int>> alphas;
      std::vector<int> cur;
      compositions(j, d_, cur, alphas);
      for (auto& alpha : alphas) {
        if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a % 2 != 0; })) continue;
        moments_[alpha] = std::vector<std::int64_t>(norm2_.size(), 0);
      }
    }
    for (const auto& p : shell.points()) {
      const std::size_t r = radius_index_.at(p.norm2);
      for (auto& [alpha, sums] : moments_) {
        std::int64_t m = 1;
        for (int a = 0; a < d_; ++a) {
          for (int e = 0; e < alpha[a]; ++e) m *= p.h[a];
        }
        sums[r] += m;
      }
    }
  }

  [[nodiscard]] const std::vector<std::int64_t>& norm2() const noexcept { return norm2_; }
  [[nodiscard]] const std::map<std::vector<int>, std::vector<std::int64_t>>& moments() const {
    return moments_;
  }

  /// sum_{|h|^2=r2} (h.u)^2 = r2 N(r2) / d for every unit u, i.e. the
  /// second moments are isotropic: h_a^2 sums to r2 N / d, mixed ones vanish.
  void check_quadratic_average() const {
    const auto& zero = moments_.at(std::vector<int>(d_, 0));
    for (int a = 0; a < d_; ++a) {
      std::vector<int> alpha(d_, 0);
      alpha[a] = 2;
      const auto& sums = moments_.at(alpha);
      for (std::size_t r = 0; r < norm2_.size(); ++r) {
        if (sums[r] * d_ != norm2_[r] * zero[r]) {
          throw std::logic_error("shell second moments are not isotropic");
        }
      }
    }
  }

 private:
  int d_;
  std::vector<std::int64_t> norm2_;
  std::map<std::int64_t, std::size_t> radius_index_;
  std::map<std::vector<int>, std::vector<std::int64_t>> moments_;
};

// sum_h q(h^ . u) phi(|h|^2) as a polynomial in u.
SpherePolynomial lattice_average(const ShellMoments& sm, int d, const kernel::Poly& q,
                                 const std::function<double(std::int64_t)>& phi) {
  SpherePolynomial out(d);
  const auto& norm2 = sm.norm2();
  std::vector<double> weights(norm2.size());
  for (std::size_t r = 0; r < norm2.size(); ++r) weights[r] = phi(norm2[r]);
  for (const auto& [alpha, sums] : sm.moments()) {
    const int j = std::accumulate(alpha.begin(), alpha.end(), 0);
    const double qj = q.coefficient(static_cast<std::size_t>(j));
    if (qj == 0.0) continue;
    CompensatedSum acc;
    for (std::size_t r = 0; r < norm2.size(); ++r) {
      if (sums[r] == 0) continue;
      acc += weights[r] * static_cast<double>(sums[r]) / lattice_power(norm2[r], j);
    }
    const double value = qj * multinomial(alpha) * acc.value();
    if (value != 0.0) out.add_term(alpha, value);
  }
  return out;
}

}  // namespace

AsymptoticData asymptotic_data(const CutoffConfig& config, const kernel::RemainderExtrema& rem) {
  config.validate();
  AsymptoticData data;
  data.config = config;
  const int d = config.d;
  const double n = config.n;
  const int t = config.t;
  const LatticeShell shell(d, config.rho);
  const ShellMoments sm(shell, t + 2);
  sm.check_quadratic_average();

  const auto dpolys = kernel::taylor_coeffs(kernel::Kind::D, n, t);
  const auto epolys = kernel::taylor_coeffs(kernel::Kind::E, n, t);
  optimize::SphereSearchOptions sphere;
  for (int ell = 0; ell <= t - 2; ell += 2) {
    const auto dh = kernel::hatted(dpolys[ell], d);
    const auto eh = kernel::hatted(epolys[ell], d);
    AsymptoticTerm term;
    term.ell = ell;
    term.P = lattice_average(sm, d, dh + eh,
                             [&](std::int64_t r2) { return 1.0 / lattice_power(r2, 2 * n - 2 - ell); });
    term.P1 = lattice_average(sm, d, eh * -2.0,
                              [&](std::int64_t r2) { return 1.0 / lattice_power(r2, n - 2 - ell); });
    term.P2 = lattice_average(sm, d, eh, [&](std::int64_t r2) { return lattice_power(r2, 2 + ell); });
    term.P_range = optimize::extrema_sphere(term.P, sphere);
    term.P1_range = optimize::extrema_sphere(term.P1, sphere);
    term.P2_range = optimize::extrema_sphere(term.P2, sphere);
    term.p_lo = round_outward_down(term.P_range.min_value);
    term.p_hi = round_outward_up(term.P_range.max_value);
    term.p1_lo = round_outward_down(term.P1_range.min_value);
    term.p1_hi = round_outward_up(term.P1_range.max_value);
    term.p2_lo = round_outward_down(term.P2_range.min_value);
    term.p2_hi = round_outward_up(term.P2_range.max_value);
    data.terms.push_back(std::move(term));
  }

  data.lambda = round_outward_down(rem.lambda);
  data.Lambda = round_outward_up(rem.Lambda);
  data.mu = round_outward_down(rem.mu);
  data.M = round_outward_up(rem.M);
  CompensatedSum s1, s2, s3;
  for (const auto& [r2, count] : shell.norm2_counts()) {
    const auto c = static_cast<double>(count);
    s1 += c / lattice_power(r2, 2 * n - 2 - t);
    s2 += c / lattice_power(r2, n - 2 - t);
    s3 += c * lattice_power(r2, 2 + t);
  }
  data.w = (data.lambda + data.mu) * s1.value();
  data.w1 = -2.0 * data.mu * s2.value();
  data.w2 = data.mu * s3.value();
  data.W = (data.Lambda + data.M) * s1.value();
  data.W1 = -2.0 * data.M * s2.value();
  data.W2 = data.M * s3.value();
  return data;
}

AsymptoticData asymptotic_data(const CutoffConfig& config, unsigned threads) {
  config.validate();
  return asymptotic_data(config, kernel::remainder_extrema(config.n, config.t, threads));
}

namespace {

// The bound as a function of x = 1/|k|, with per-order coefficients.
double tail_series(const AsymptoticData& data, double x, bool upper) {
  const double n = data.config.n;
  const double xn = std::pow(x, n);
  const double x2n = xn * xn;
  double acc = 0.0;
  for (const auto& term : data.terms) {
    const double a = upper ? term.p_hi : term.p_lo;
    const double b = upper ? term.p1_hi : term.p1_lo;
    const double c = upper ? term.p2_hi : term.p2_lo;
    acc += std::pow(x, term.ell) * (a + b * xn + c * x2n);
  }
  const double r0 = upper ? data.W : data.w;
  const double r1 = upper ? data.W1 : data.w1;
  const double r2 = upper ? data.W2 : data.w2;
  acc += std::pow(x, data.config.t) * (r0 + r1 * xn + r2 * x2n);
  return acc;
}

void check_kmag(const AsymptoticData& data, double kmag) {
  if (!(kmag >= 2.0 * data.config.rho)) {
    throw std::domain_error("the large-|k| bounds hold only for |k| >= 2 rho");
  }
}

}  // namespace

double tail_upper(const AsymptoticData& data, double kmag) {
  check_kmag(data, kmag);
  return tail_series(data, 1.0 / kmag, true);
}

double tail_lower(const AsymptoticData& data, double kmag) {
  check_kmag(data, kmag);
  return tail_series(data, 1.0 / kmag, false);
}

double tail_upper_at(const AsymptoticData& data, const WaveVector& k) {
  const double kmag = k.norm();
  check_kmag(data, kmag);
  std::vector<double> u(k.dim());
  for (int a = 0; a < k.dim(); ++a) u[a] = k[a] / kmag;
  const double n = data.config.n;
  const double x = 1.0 / kmag;
  const double xn = std::pow(x, n);
  double acc = 0.0;
  for (const auto& term : data.terms) {
    acc += std::pow(x, term.ell) * (term.P(u) + term.P1(u) * xn + term.P2(u) * xn * xn);
  }
  acc += std::pow(x, data.config.t) * (data.W + data.W1 * xn + data.W2 * xn * xn);
  return acc;
}

std::pair<double, double> sup_tail(const AsymptoticData& data) {
  const double xmax = 1.0 / (2.0 * data.config.rho);
  const auto [x, v] = optimize::maximize_interval(
      [&](double x) { return tail_series(data, x, true); }, 0.0, xmax, 4001);
  return {x > 0.0 ? 1.0 / x : std::numeric_limits<double>::infinity(), v};
}

// ---------------------------------------------------------------------------
// Bracket

SupSearch sup_search(const CutoffConfig& config, const SupSearchOptions& options) {
  config.validate();
  SupSearch out;
  out.c_n = kernel::c_max(config.n, options.threads).max_value;
  out.remainder = kernel::remainder_extrema(config.n, config.t, options.threads);
  out.asymptotics = asymptotic_data(config, out.remainder);
  std::tie(out.tail_argsup, out.tail_sup) = sup_tail(out.asymptotics);

  const GammaEvaluator gamma_k(config);
  out.shell_size = gamma_k.shell().size();
  std::vector<WaveVector> ks;
  if (options.full_enumeration) {
    const LatticeShell ball(config.d, 2.0 * config.rho);
    for (const auto& p : ball.points()) ks.push_back(p.h);
  } else {
    ks = canonical_points(config.d, 2.0 * config.rho);
  }
  out.enumerated = ks.size();
  std::vector<double> values(ks.size());
  parallel_for(ks.size(), options.threads, [&](std::size_t i) { values[i] = gamma_k(ks[i]); });

  // ks is ascending, so keeping the first strict maximum breaks ties toward
  // the lexicographically smallest point.
  std::size_t best = 0;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  const bool tail_limited = out.tail_sup >= values[best];
  if (tail_limited && !options.accept_tail_sup) {
    throw TailDominatesError(out.tail_sup, values[best]);
  }

  auto& b = out.bracket;
  b.sup_gamma = values[best];
  b.argmax = ks[best];
  b.delta = delta_g(config, round_outward_up(out.c_n));
  b.tail_limited = tail_limited;
  b.lower = b.sup_gamma;
  b.upper = std::max(b.sup_gamma, out.tail_sup) + b.delta;
  if (options.keep_values) {
    out.values.reserve(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) out.values.emplace_back(ks[i], values[i]);
  }
  return out;
}

GBracket sup_bracket(const CutoffConfig& config, unsigned threads) {
  SupSearchOptions options;
  options.threads = threads;
  return sup_search(config, options).bracket;
}

double g_plus_from_bracket(int d, double upper) {
  return std::pow(2.0 * std::numbers::pi, -0.5 * d) * std::sqrt(upper);
}

double upper_bound_g(const CutoffConfig& config, unsigned threads) {
  return g_plus_from_bracket(config.d, sup_bracket(config, threads).upper);
}

}  // namespace kato::gfunction
