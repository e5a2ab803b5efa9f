#pragma once

// Scalar kernel functions behind the lattice sums: c_n and its maximum C_n,
// the functions D_n, E_n on E = [-1,1] x [0, inf) \ {(1,1)}, their Taylor
// coefficients in eps, and the extrema of the Taylor remainders.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kato/optimize.hpp"
#include "kato/series.hpp"

namespace kato::kernel {

using Rational = boost::multiprecision::cpp_rational;
using Poly = PolyInC<double>;
using RationalPoly = PolyInC<Rational>;

enum class Kind { D, E };
enum class RemainderKind { Q, R };

[[nodiscard]] char to_char(Kind k);
[[nodiscard]] char to_char(RemainderKind k);

/// z(4-z)[(1-zu+zu^2)^{n/2} - (1-u)^n]^2 / (2u^2[u^{2n-2} + (1-u)^{2n-2}]),
/// continued to u = 0 by n^2 z (4-z)(2-z)^2 / 8.
/// Requires n > 1, z in [0,4], u in [0,1].
double c_fun(double n, double z, double u);

/// C_n = max of c_fun over [0,4] x [0,1].
optimize::ExtremaReport c_max(double n, unsigned threads = 0);

/// D_n(c,eps) = (1-c^2)[1 - s^{n/2}]^2 / (eps^2 s^n), s = 1 - 2c eps + eps^2,
/// with D_n(c,0) = n^2 (c^2 - c^4). Throws std::domain_error outside E.
double d_fun(double n, double c, double eps);

/// E_n(c,eps) = (1-c^2) / s^{n+1}.
double e_fun(double n, double c, double eps);

/// Polynomials D_{n,l}(c) (or E_{n,l}(c)) for l = 0..count-1.
std::vector<Poly> taylor_coeffs(Kind kind, double n, int count);

/// Same computation in exact rational arithmetic; n may be any rational.
std::vector<RationalPoly> taylor_coeffs_exact(Kind kind, const Rational& n, int count);

/// D_{n,l}(c) or E_{n,l}(c) at a fixed c, l = 0..count-1. The recurrences
/// run on scalars, which keeps high orders accurate where the expanded
/// polynomials would cancel catastrophically.
std::vector<long double> taylor_values(Kind kind, double n, long double c, int count);

struct RemainderSettings {
  /// Below this eps the remainder is summed from its Taylor series.
  double eps_switch = 0.25;
  /// Orders of the series kept beyond t.
  int extra_orders = 80;
};

/// Q_{n,t}(c,eps) (for D) or R_{n,t}(c,eps) (for E): the order-t Taylor
/// remainder divided by eps^t. Requires c in [-1,1], eps in [0,1/2].
double remainder(RemainderKind kind, double n, int t, double c, double eps,
                 const RemainderSettings& settings = {});

/// The two evaluation strategies of `remainder`, exposed for cross-checks.
double remainder_direct(RemainderKind kind, double n, int t, double c, double eps);
double remainder_series(RemainderKind kind, double n, int t, double c, double eps,
                        int extra_orders);

struct RemainderExtrema {
  double lambda = 0.0;  ///< min Q
  double Lambda = 0.0;  ///< max Q
  double mu = 0.0;      ///< min R
  double M = 0.0;       ///< max R
  optimize::ExtremaReport q;
  optimize::ExtremaReport r;
};

/// Extrema of Q_{n,t} and R_{n,t} over [-1,1] x [0,1/2].
RemainderExtrema remainder_extrema(double n, int t, unsigned threads = 0);

/// Replaces the c^2 monomial by the constant 1/d.
template <class T>
PolyInC<T> hatted(const PolyInC<T>& p, int d) {
  std::vector<T> c = p.coefficients();
  if (c.size() > 2) {
    c[0] += c[2] / T(d);
    c[2] = T(0);
  }
  return PolyInC<T>(std::move(c));
}

/// CSV rows "kind,n,l,j,coefficient" for D and E up to order count-1.
std::string taylor_csv(double n, int count);

}  // namespace kato::kernel
