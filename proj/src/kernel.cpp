#include "kato/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kato::kernel {

char to_char(Kind k) { return k == Kind::D ? 'D' : 'E'; }
char to_char(RemainderKind k) { return k == RemainderKind::Q ? 'Q' : 'R'; }

// ---------------------------------------------------------------------------
// c_n

double c_fun(double n, double z, double u) {
  if (!(n > 1.0)) throw std::domain_error("c_fun requires n > 1");
  if (!(z >= 0.0 && z <= 4.0) || !(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("c_fun requires z in [0,4] and u in [0,1]");
  }
  const double zz = z * (4.0 - z);
  if (u == 0.0) return n * n * zz * (2.0 - z) * (2.0 - z) / 8.0;

  // a = (1 - z u (1-u))^{n/2}, b = (1-u)^n; a - b through expm1 keeps the
  // small-u regime accurate.
  const double base = 1.0 - z * u * (1.0 - u);
  const double log_a = base > 0.0 ? 0.5 * n * std::log1p(-z * u * (1.0 - u))
                                  : -std::numeric_limits<double>::infinity();
  double diff;
  if (u == 1.0) {
    diff = std::exp(log_a);
  } else {
    const double log_b = n * std::log1p(-u);
    diff = std::exp(log_b) * std::expm1(log_a - log_b);
  }
  const double den = 2.0 * u * u * (std::pow(u, 2 * n - 2) + std::pow(1.0 - u, 2 * n - 2));
  return zz * diff * diff / den;
}

optimize::ExtremaReport c_max(double n, unsigned threads) {
  const optimize::BoxDomain box({{0.0, 4.0}, {0.0, 1.0}});
  auto f = [n](std::span<const double> x) { return c_fun(n, x[0], x[1]); };
  return optimize::maximize_box(f, box, 201, threads);
}

// ---------------------------------------------------------------------------
// D_n, E_n

namespace {

void check_domain(double c, double eps) {
  if (!(c >= -1.0 && c <= 1.0) || !(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::domain_error("(c, eps) outside [-1,1] x [0, inf)");
  }
  if (c == 1.0 && eps == 1.0) throw std::domain_error("(c, eps) = (1, 1) is excluded");
}

long double d_value(long double n, long double c, long double eps) {
  const long double one_minus_c2 = (1.0L - c) * (1.0L + c);
  if (eps == 0.0L) return n * n * c * c * one_minus_c2;
  // s^{-n/2} - 1 with log s = log1p(eps (eps - 2c)).
  const long double g = std::expm1(-0.5L * n * std::log1p(eps * (eps - 2.0L * c)));
  return one_minus_c2 * (g / eps) * (g / eps);
}

long double e_value(long double n, long double c, long double eps) {
  const long double one_minus_c2 = (1.0L - c) * (1.0L + c);
  return one_minus_c2 * std::exp(-(n + 1.0L) * std::log1p(eps * (eps - 2.0L * c)));
}

}  // namespace

double d_fun(double n, double c, double eps) {
  check_domain(c, eps);
  return static_cast<double>(d_value(n, c, eps));
}

double e_fun(double n, double c, double eps) {
  check_domain(c, eps);
  return static_cast<double>(e_value(n, c, eps));
}

// ---------------------------------------------------------------------------
// Taylor coefficients

namespace {

// Shared construction on any coefficient ring R with scalar type S.
// s = 1 - 2c eps + eps^2 is given by its three coefficients.
template <class R, class S>
SeriesInEps<R> kernel_series(Kind kind, const S& n, const R& s1, const R& one_minus_c2,
                             int count) {
  using Series = SeriesInEps<R>;
  const R one = detail::ring_traits<R>::one();
  if (kind == Kind::E) {
    Series s(count - 1, {one, s1, one});
    return s.pow(-(n + S(1))).times(one_minus_c2);
  }
  // D = (1-c^2) (s^{-n/2} - 1)^2 / eps^2; the square starts at eps^2.
  Series s(count + 1, {one, s1, one});
  Series g = s.pow(-n / S(2));
  g[0] = detail::ring_traits<R>::zero();
  return (g * g).divide_by_eps_power(2).times(one_minus_c2);
}

}  // namespace

std::vector<Poly> taylor_coeffs(Kind kind, double n, int count) {
  if (count < 1) throw std::invalid_argument("taylor_coeffs needs count >= 1");
  const Poly s1 = Poly::monomial(-2.0, 1);
  const Poly w({1.0, 0.0, -1.0});
  return kernel_series<Poly, double>(kind, n, s1, w, count).coefficients();
}

std::vector<RationalPoly> taylor_coeffs_exact(Kind kind, const Rational& n, int count) {
  if (count < 1) throw std::invalid_argument("taylor_coeffs needs count >= 1");
  const RationalPoly s1 = RationalPoly::monomial(Rational(-2), 1);
  const RationalPoly w({Rational(1), Rational(0), Rational(-1)});
  return kernel_series<RationalPoly, Rational>(kind, n, s1, w, count).coefficients();
}

std::vector<long double> taylor_values(Kind kind, double n, long double c, int count) {
  if (count < 1) throw std::invalid_argument("taylor_values needs count >= 1");
  const long double w = (1.0L - c) * (1.0L + c);
  return kernel_series<long double, long double>(kind, n, -2.0L * c, w, count).coefficients();
}

// ---------------------------------------------------------------------------
// Remainders

namespace {

void check_remainder_args(int t, double c, double eps) {
  if (t < 1) throw std::invalid_argument("remainder order t must be >= 1");
  if (!(c >= -1.0 && c <= 1.0) || !(eps >= 0.0 && eps <= 0.5)) {
    throw std::domain_error("remainder requires c in [-1,1] and eps in [0,1/2]");
  }
}

Kind base_kind(RemainderKind k) { return k == RemainderKind::Q ? Kind::D : Kind::E; }

}  // namespace

double remainder_direct(RemainderKind kind, double n, int t, double c, double eps) {
  check_remainder_args(t, c, eps);
  if (eps == 0.0) throw std::domain_error("the direct remainder formula needs eps > 0");
  const auto a = taylor_values(base_kind(kind), n, c, t);
  const long double e = eps;
  long double partial = 0.0L;
  for (int l = t; l-- > 0;) partial = partial * e + a[l];
  const long double full = kind == RemainderKind::Q ? d_value(n, c, e) : e_value(n, c, e);
  return static_cast<double>((full - partial) / std::pow(e, t));
}

double remainder_series(RemainderKind kind, double n, int t, double c, double eps,
                        int extra_orders) {
  check_remainder_args(t, c, eps);
  const auto a = taylor_values(base_kind(kind), n, c, t + extra_orders + 1);
  const long double e = eps;
  long double acc = 0.0L;
  for (int l = t + extra_orders + 1; l-- > t;) acc = acc * e + a[l];
  return static_cast<double>(acc);
}

double remainder(RemainderKind kind, double n, int t, double c, double eps,
                 const RemainderSettings& settings) {
  if (eps < settings.eps_switch) {
    return remainder_series(kind, n, t, c, eps, settings.extra_orders);
  }
  return remainder_direct(kind, n, t, c, eps);
}

RemainderExtrema remainder_extrema(double n, int t, unsigned threads) {
  const optimize::BoxDomain box({{-1.0, 1.0}, {0.0, 0.5}});
  RemainderExtrema out;
  optimize::BoxSearchOptions options;
  options.threads = threads;
  options.grid_shape = {201, 101};
  for (auto kind : {RemainderKind::Q, RemainderKind::R}) {
    auto f = [&](std::span<const double> x) { return remainder(kind, n, t, x[0], x[1]); };
    auto report = optimize::extrema_box(f, box, options);
    if (kind == RemainderKind::Q) {
      out.lambda = report.min_value;
      out.Lambda = report.max_value;
      out.q = std::move(report);
    } else {
      out.mu = report.min_value;
      out.M = report.max_value;
      out.r = std::move(report);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

std::string taylor_csv(double n, int count) {
  std::ostringstream os;
  os << "kind,n,l,j,coefficient\n";
  char buf[64];
  for (auto kind : {Kind::D, Kind::E}) {
    const auto polys = taylor_coeffs(kind, n, count);
    for (std::size_t l = 0; l < polys.size(); ++l) {
      const auto& cs = polys[l].coefficients();
      for (std::size_t j = 0; j < cs.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", n);
        os << to_char(kind) << ',' << buf << ',' << l << ',' << j << ',';
        std::snprintf(buf, sizeof buf, "%.17g", cs[j]);
        os << buf << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace kato::kernel
