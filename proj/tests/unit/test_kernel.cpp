#include <doctest.h>

#include <cmath>
#include <vector>

#include "kato/kernel.hpp"

using namespace kato;
using namespace kato::kernel;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// D_n(c, eps) written out directly, valid for small negative eps as well.
long double d_direct(long double n, long double c, long double e) {
  const long double s = 1 - 2 * c * e + e * e;
  const long double g = std::pow(s, -n / 2) - 1;
  return (1 - c * c) * g * g / (e * e);
}

// l-th eps-derivative at eps = 0 by central differences with one Richardson
// step.
long double fd_derivative(long double n, long double c, int l, long double h) {
  auto diff = [&](long double step) {
    long double acc = 0;
    long double binom = 1;
    for (int j = 0; j <= l; ++j) {
      const long double x = (static_cast<long double>(l) / 2 - j) * step;
      const long double f = std::fabs(x) < 1e-30L ? n * n * (c * c - c * c * c * c)
                                                  : d_direct(n, c, x);
      acc += ((j % 2) ? -1 : 1) * binom * f;
      binom = binom * (l - j) / (j + 1);
    }
    return acc / std::pow(step, static_cast<long double>(l));
  };
  return (4 * diff(h / 2) - diff(h)) / 3;
}

RationalPoly rpoly(std::vector<Rational> c) { return RationalPoly(std::move(c)); }

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("c_n examples") {
    for (double u : {0.0, 0.3, 1.0}) CHECK(c_fun(3.0, 0.0, u) == 0.0);
    CHECK(c_fun(3.0, 0.69603, 0.46453) == doctest::Approx(14.814).epsilon(1e-2 / 14.814));
    CHECK_THROWS(c_fun(3.0, 4.5, 0.5));
    CHECK_THROWS(c_fun(3.0, 1.0, -0.1));
  }

  TEST_CASE("c_n is continuous at u = 0") {
    for (double n : {3.0, 4.0, 10.0}) {
      for (double z : {0.3, 1.0, 2.5, 3.7}) {
        const double at0 = c_fun(n, z, 0.0);
        double prev = INFINITY;
        for (double u : {1e-3, 1e-6, 1e-9}) {
          const double gap = std::fabs(c_fun(n, z, u) - at0);
          CHECK(gap <= prev);
          prev = gap;
        }
        CHECK(prev < 1e-6 * std::max(1.0, at0));
      }
    }
  }

  TEST_CASE("C_n maxima") {
    const std::vector<std::pair<double, double>> expect{
        {3.0, 14.814}, {4.0, 58.460}, {5.0, 215.97}, {10.0, 1.3467e5}};
    for (const auto& [n, v] : expect) {
      const auto r = c_max(n);
      CHECK(rel(r.max_value, v) < 1e-3);
      CHECK(c_fun(n, r.argmax[0], r.argmax[1]) == doctest::Approx(r.max_value));
    }
    const auto r3 = c_max(3.0);
    CHECK(r3.argmax[0] == doctest::Approx(0.69603).epsilon(1e-4));
    CHECK(r3.argmax[1] == doctest::Approx(0.46453).epsilon(1e-4));
  }

  TEST_CASE("D_n and E_n") {
    for (double n : {3.0, 4.5}) {
      for (double e : {0.0, 0.2, 0.5, 2.0}) {
        CHECK(d_fun(n, 1.0, e) == 0.0);
        CHECK(d_fun(n, -1.0, e) == 0.0);
        CHECK(e_fun(n, -1.0, e) == 0.0);
      }
      for (double c : {-0.7, 0.0, 0.4, 0.9}) {
        CHECK(d_fun(n, c, 0.0) == doctest::Approx(n * n * (c * c - std::pow(c, 4))));
        CHECK(d_fun(n, c, 0.3) >= 0.0);
        CHECK(e_fun(n, c, 0.3) ==
              doctest::Approx((1 - c * c) / std::pow(1 - 2 * c * 0.3 + 0.09, n + 1)));
      }
    }
    const auto d = taylor_coeffs(Kind::D, 3.0, 2);
    CHECK(std::fabs(d_fun(3.0, 0.5, 1e-8) - (d[0](0.5) + 1e-8 * d[1](0.5))) < 1e-7);
    CHECK_THROWS_AS(d_fun(3.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(e_fun(3.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(d_fun(3.0, 1.5, 0.1), std::domain_error);
    CHECK_THROWS_AS(d_fun(3.0, 0.5, -0.1), std::domain_error);
  }

  TEST_CASE("first Taylor coefficients in exact arithmetic") {
    for (const Rational n : {Rational(3), Rational(4), Rational(5, 2), Rational(7, 3)}) {
      const auto d = taylor_coeffs_exact(Kind::D, n, 3);
      const Rational n2 = n * n, n3 = n2 * n, n4 = n3 * n;
      CHECK(d[0] == rpoly({0, 0, n2, 0, -n2}));
      CHECK(d[1] == rpoly({0, -n2, 0, 3 * n2 + n3, 0, -(2 * n2 + n3)}));
      CHECK(d[2] == rpoly({n2 / 4, 0, -(Rational(13, 4) * n2 + Rational(3, 2) * n3), 0,
                           Rational(20, 3) * n2 + Rational(9, 2) * n3 + Rational(7, 12) * n4, 0,
                           -(Rational(11, 3) * n2 + 3 * n3 + Rational(7, 12) * n4)}));
      const auto e = taylor_coeffs_exact(Kind::E, n, 2);
      CHECK(e[0] == rpoly({1, 0, -1}));
      CHECK(e[1] == rpoly({0, 2 * (n + 1), 0, -2 * (n + 1)}));
    }
    const auto d3 = taylor_coeffs_exact(Kind::D, Rational(3), 3)[2];
    CHECK(d3.coefficient(0) == Rational(9, 4));
    CHECK(d3.coefficient(2) == Rational(-279, 4));
    CHECK(d3.coefficient(4) == Rational(915, 4));
    CHECK(d3.coefficient(6) == Rational(-645, 4));
  }

  TEST_CASE("double coefficients agree with the exact ones") {
    const auto a = taylor_coeffs(Kind::D, 4.0, 10);
    const auto b = taylor_coeffs_exact(Kind::D, Rational(4), 10);
    for (std::size_t l = 0; l < a.size(); ++l) {
      for (int j = 0; j <= b[l].degree(); ++j) {
        const double x = b[l].coefficient(j).convert_to<double>();
        CHECK(a[l].coefficient(j) == doctest::Approx(x).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("degrees and parity") {
    for (double n : {3.0, 3.7, 10.0}) {
      const auto d = taylor_coeffs(Kind::D, n, 12);
      const auto e = taylor_coeffs(Kind::E, n, 12);
      for (int l = 0; l < 12; ++l) {
        CHECK(d[l].degree() == l + 4);
        CHECK(e[l].degree() == l + 2);
        CHECK(d[l].has_parity(l % 2));
        CHECK(e[l].has_parity(l % 2));
      }
    }
  }

  TEST_CASE("Taylor coefficients against finite differences") {
    for (double n : {3.0, 4.0, 5.5}) {
      const auto d = taylor_coeffs(Kind::D, n, 5);
      long double fact = 1;
      for (int l = 0; l <= 4; ++l) {
        if (l > 0) fact *= l;
        for (double c : {-0.8, -0.3, 0.35, 0.9}) {
          const long double exact = fact * d[l](static_cast<long double>(c));
          const long double fd = fd_derivative(n, c, l, 0.02L);
          CHECK(std::fabs(static_cast<double>(fd - exact)) <=
                1e-4 * std::max(1.0, std::fabs(static_cast<double>(exact))));
        }
      }
    }
  }

  TEST_CASE("scalar coefficients agree with the polynomial ones") {
    const auto p = taylor_coeffs(Kind::E, 3.0, 8);
    const auto v = taylor_values(Kind::E, 3.0, 0.37L, 8);
    for (int l = 0; l < 8; ++l) CHECK(static_cast<double>(v[l]) == doctest::Approx(p[l](0.37)));
  }

  TEST_CASE("series engine power identity") {
    const int order = 12;
    const double n = 3.3;
    SeriesInEps<PolyInC<double>> s(order);
    s[0] = PolyInC<double>::constant(1.0);
    s[1] = PolyInC<double>::monomial(-2.0, 1);
    s[2] = PolyInC<double>::constant(1.0);
    const auto prod = s.pow(n / 2) * s.pow(n / 2) * s.pow(-n);
    CHECK(prod[0] == PolyInC<double>::constant(1.0));
    for (int l = 1; l <= order; ++l) {
      for (double x : prod[l].coefficients()) CHECK(std::fabs(x) < 1e-9);
    }
  }

  TEST_CASE("hatted polynomials") {
    for (double n : {3.0, 4.0}) {
      const auto d = taylor_coeffs(Kind::D, n, 3);
      const auto h0 = hatted(d[0], 3);
      CHECK(h0.coefficient(0) == doctest::Approx(n * n / 3));
      CHECK(h0.coefficient(2) == 0.0);
      CHECK(h0.coefficient(4) == doctest::Approx(-n * n));
    }
    const auto d2 = taylor_coeffs_exact(Kind::D, Rational(3), 3)[2];
    const auto h2 = hatted(d2, 3);
    CHECK(h2.coefficient(0) == Rational(9, 4) + Rational(-279, 4) / 3);
    CHECK(h2.coefficient(2) == 0);
    CHECK(h2.coefficient(4) == Rational(915, 4));
    CHECK(h2.coefficient(6) == Rational(-645, 4));
    const Poly flat(std::vector<double>{1.0, 2.0, 0.0, 4.0});
    CHECK(hatted(flat, 3) == flat);
  }

  TEST_CASE("remainders") {
    for (int t : {2, 6, 8}) {
      const auto d = taylor_coeffs(Kind::D, 3.0, t + 1);
      const auto e = taylor_coeffs(Kind::E, 3.0, t + 1);
      for (double c : {-1.0, -0.4, 0.0, 0.6, 1.0}) {
        CHECK(remainder(RemainderKind::Q, 3.0, t, c, 0.0) == doctest::Approx(d[t](c)));
        CHECK(remainder(RemainderKind::R, 3.0, t, c, 0.0) == doctest::Approx(e[t](c)));
      }
    }
  }

  TEST_CASE("remainder defining identity on a grid") {
    const double n = 3.0;
    const int t = 8;
    const auto d = taylor_coeffs(Kind::D, n, t);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double c = -1.0 + 2.0 * i / 100;
      for (int j = 0; j <= 50; ++j) {
        const double e = 0.5 * j / 50;
        long double partial = 0;
        for (int l = 0; l < t; ++l) partial += d[l](static_cast<long double>(c)) * std::pow(e, l);
        const long double q = remainder(RemainderKind::Q, n, t, c, e);
        const double gap =
            static_cast<double>(d_fun(n, c, e) - (partial + q * std::pow(static_cast<long double>(e), t)));
        worst = std::max(worst, std::fabs(gap));
      }
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("remainder branches agree around the switch") {
    const RemainderSettings s;
    for (double n : {3.0, 4.0, 10.0}) {
      const int t = n == 3.0 ? 8 : 6;
      for (auto kind : {RemainderKind::Q, RemainderKind::R}) {
        for (double c : {-1.0, -0.5, 0.0, 0.3, 0.8, 1.0}) {
          for (double e = s.eps_switch / 2; e <= std::min(2 * s.eps_switch, 0.5) + 1e-12; e += 0.025) {
            const double ec = std::min(e, 0.5);
            const double a = remainder_direct(kind, n, t, c, ec);
            const double b = remainder_series(kind, n, t, c, ec, s.extra_orders);
            CHECK(std::fabs(a - b) < 1e-8 * std::max(1.0, std::fabs(a)));
          }
        }
      }
    }
  }

  TEST_CASE("remainder extrema") {
    const auto r38 = remainder_extrema(3.0, 8);
    CHECK(rel(r38.lambda, -72.563) < 1e-3);
    CHECK(rel(r38.Lambda, 202.91) < 1e-3);
    CHECK(rel(r38.mu, -159.61) < 1e-3);
    CHECK(rel(r38.M, 930.73) < 1e-3);
    const auto r56 = remainder_extrema(5.0, 6);
    CHECK(rel(r56.lambda, -432.09) < 1e-3);
    CHECK(rel(r56.Lambda, 4970.4) < 1e-3);
    const auto r106 = remainder_extrema(10.0, 6);
    CHECK(rel(r106.lambda, -1.3678e4) < 1e-3);
    CHECK(rel(r106.Lambda, 5.0076e6) < 1e-3);
    // Independent 50-digit evaluation of the definition with a separate
    // optimizer.
    const auto r46 = remainder_extrema(4.0, 6);
    CHECK(rel(r46.lambda, -149.8951) < 1e-5);
    CHECK(rel(r46.Lambda, 909.6955) < 1e-5);
  }

  TEST_CASE("remainder extrema sandwich D_n and E_n") {
    const double n = 4.0;
    const int t = 6;
    const auto r = remainder_extrema(n, t);
    const auto d = taylor_coeffs(Kind::D, n, t);
    const auto e = taylor_coeffs(Kind::E, n, t);
    for (int i = 0; i <= 40; ++i) {
      const double c = -1.0 + 2.0 * i / 40;
      for (int j = 0; j <= 20; ++j) {
        const double x = 0.5 * j / 20;
        double pd = 0.0, pe = 0.0;
        for (int l = 0; l < t; ++l) {
          pd += d[l](c) * std::pow(x, l);
          pe += e[l](c) * std::pow(x, l);
        }
        const double xt = std::pow(x, t);
        const double slack = 1e-9 * (1 + std::fabs(pd) + std::fabs(pe));
        CHECK(pd + r.lambda * xt <= d_fun(n, c, x) + slack);
        CHECK(d_fun(n, c, x) <= pd + r.Lambda * xt + slack);
        CHECK(pe + r.mu * xt <= e_fun(n, c, x) + slack);
        CHECK(e_fun(n, c, x) <= pe + r.M * xt + slack);
        const double q = remainder(RemainderKind::Q, n, t, c, x);
        CHECK(r.lambda <= q);
        CHECK(q <= r.Lambda);
      }
    }
  }

  TEST_CASE("taylor csv") {
    const auto csv = taylor_csv(3.0, 2);
    CHECK(csv.rfind("kind,n,l,j,coefficient\n", 0) == 0);
    CHECK(csv.find("D,3,1,3,54") != std::string::npos);
    CHECK(csv.find("E,3,1,1,8") != std::string::npos);
  }
}
