#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <numbers>
#include <vector>

#include "kato/gfunction.hpp"
#include "kato/reference.hpp"

using namespace kato;
using namespace kato::gfunction;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

const AsymptoticData& data_for(double n) {
  static std::map<double, AsymptoticData> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, asymptotic_data(CutoffConfig::defaults_for(n))).first;
  return it->second;
}

}  // namespace

TEST_SUITE("gfunction") {
  TEST_CASE("configuration checks") {
    CHECK_NOTHROW(CutoffConfig{}.validate());
    CHECK_THROWS_AS((CutoffConfig{3, 2.5, 10.0, 6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CutoffConfig{3, 3.0, 3.0, 6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CutoffConfig{3, 3.0, 10.0, 5}.validate()), std::invalid_argument);
    const auto c3 = CutoffConfig::defaults_for(3.0);
    CHECK(c3.rho == 20.0);
    CHECK(c3.t == 8);
    const auto c4 = CutoffConfig::defaults_for(4.0);
    CHECK(c4.rho == 10.0);
    CHECK(c4.t == 6);
  }

  TEST_CASE("lattice shell") {
    const LatticeShell s(3, 2.5);
    std::size_t count = 0;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c) {
          const int r2 = a * a + b * b + c * c;
          if (r2 > 0 && r2 < 6.25) ++count;
        }
    CHECK(s.size() == count);
    CHECK(std::is_sorted(s.points().begin(), s.points().end(),
                         [](const ShellPoint& x, const ShellPoint& y) { return x.h < y.h; }));
    const auto oracle = reference::lattice_norm2_counts(3, 6);
    const auto counts = s.norm2_counts();
    REQUIRE(counts.size() == oracle.size());
    for (const auto& [r2, m] : counts) CHECK(oracle.at(r2) == m);
    CHECK(lattice_power(5, 3.0) == doctest::Approx(std::pow(5.0, 1.5)).epsilon(1e-15));
  }

  TEST_CASE("Gamma values") {
    CHECK(rel(gamma({3, 3.0, 20.0, 8}, {9, 9, 9}), 34.901) < 2e-4);
    CHECK(rel(gamma({3, 4.0, 10.0, 6}, {2, 1, 0}), 56.628) < 2e-4);
    CHECK(rel(gamma({3, 5.0, 10.0, 6}, {2, 1, 0}), 138.96) < 2e-4);
    CHECK(rel(gamma({3, 10.0, 10.0, 6}, {2, 1, 0}), 1.4143e4) < 2e-4);
    CHECK_THROWS_AS(gamma({3, 3.0, 20.0, 8}, WaveVector::zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(gamma({3, 3.0, 20.0, 8}, {1, 1}), std::invalid_argument);
  }

  TEST_CASE("resummation against the restricted double sum") {
    for (const CutoffConfig c : {CutoffConfig{3, 3.0, 6.0, 4}, CutoffConfig{3, 4.5, 5.0, 4},
                                 CutoffConfig{2, 3.0, 4.0, 4}}) {
      const GammaEvaluator g(c);
      std::mt19937_64 rng(11);
      std::uniform_int_distribution<int> coord(-14, 14);
      for (int i = 0; i < 50; ++i) {
        std::vector<int> k(c.d);
        do {
          for (auto& x : k) x = coord(rng);
        } while (WaveVector(k).is_zero());
        const double a = g(WaveVector(k));
        const double b = reference::gamma_restricted_sum(c, WaveVector(k));
        CHECK(a > 0.0);
        CHECK(rel(a, b) < 1e-12);
      }
    }
  }

  TEST_CASE("canonicalization and symmetry") {
    CHECK(canonicalize({-2, 1, 0}) == WaveVector{2, 1, 0});
    CHECK(canonicalize({0, 0, 3}) == WaveVector{3, 0, 0});
    const CutoffConfig c{3, 4.0, 10.0, 6};
    const GammaEvaluator g(c);
    for (const WaveVector k : {WaveVector{3, -1, 7}, WaveVector{0, 5, -2}, WaveVector{11, 11, -4}}) {
      const double base = g(k);
      CHECK(rel(g(canonicalize(k)), base) < 1e-12);
      std::array<int, 3> perm{0, 1, 2};
      do {
        for (int signs = 0; signs < 8; ++signs) {
          std::vector<int> s(3);
          for (int a = 0; a < 3; ++a) s[a] = ((signs >> a) & 1 ? -1 : 1) * k[perm[a]];
          CHECK(rel(g(WaveVector(s)), base) < 1e-12);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    const auto pts = canonical_points(3, 4.0);
    for (const auto& k : pts) {
      CHECK(canonicalize(k) == k);
      CHECK(k.norm() < 4.0);
    }
    CHECK(std::is_sorted(pts.begin(), pts.end()));
  }

  TEST_CASE("tail sum bound") {
    const double bound = tail_sum_bound(3, 4.0, 10.0);
    double partial = 0.0;
    for (const auto& [r2, m] : reference::lattice_norm2_counts(3, 3600)) {
      if (r2 >= 100) partial += static_cast<double>(m) * std::pow(static_cast<double>(r2), -2.0);
    }
    CHECK(partial <= bound);
    CHECK(tail_sum_bound(3, 4.0, 1e3) < tail_sum_bound(3, 4.0, 1e2));
    CHECK(tail_sum_bound(3, 4.0, 1e6) < 2e-5);
    // d = 3: binomial weights 1, 2, 1.
    const double nu = 5.5, rho = 9.0, l = rho - 2 * std::sqrt(3.0);
    const double expect = 4 * std::numbers::pi *
                          (1 * std::pow(3.0, 1.0) / ((nu - 1) * std::pow(l, nu - 1)) +
                           2 * std::pow(3.0, 0.5) / ((nu - 2) * std::pow(l, nu - 2)) +
                           1 * std::pow(3.0, 0.0) / ((nu - 3) * std::pow(l, nu - 3)));
    CHECK(rel(tail_sum_bound(3, nu, rho), expect) < 1e-14);
    CHECK_THROWS_AS(tail_sum_bound(3, 3.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(tail_sum_bound(3, 4.0, 3.0), std::invalid_argument);
  }

  TEST_CASE("delta G") {
    const std::vector<std::pair<double, double>> expect{
        {3.0, 12.478}, {4.0, 1.2626}, {5.0, 0.067895}, {10.0, 1.0366e-7}};
    for (const auto& [n, v] : expect) {
      const auto c = CutoffConfig::defaults_for(n);
      const double cn = kernel::c_max(n).max_value;
      CHECK(rel(delta_g(c, cn), v) < 2e-3);
      auto far = c;
      far.rho = 1.5 * c.rho;
      CHECK(delta_g(far, cn) < delta_g(c, cn));
      CHECK(delta_g(c, cn) > 0.0);
    }
  }

  TEST_CASE("truncated G lies between Gamma and Gamma + delta") {
    const CutoffConfig c{3, 4.0, 6.0, 4};
    const double delta = delta_g(c, kernel::c_max(4.0).max_value);
    const GammaEvaluator g(c);
    for (const WaveVector k : {WaveVector{1, 0, 0}, WaveVector{2, 1, 0}, WaveVector{5, 3, 1},
                               WaveVector{8, 0, 0}, WaveVector{6, 6, 5}}) {
      const double gk = g(k);
      const double trunc = reference::g_truncated(3, 4.0, k, 3 * c.rho);
      CHECK(gk <= trunc * (1 + 1e-12));
      CHECK(trunc <= gk + delta);
    }
  }

  TEST_CASE("leading asymptotic polynomial for n = 3") {
    const auto& a = data_for(3.0);
    REQUIRE(a.terms.size() == 4);
    const auto& p = a.terms[0].P;
    const std::vector<int> e0{0, 0, 0}, e4{4, 0, 0}, e22{2, 2, 0};
    CHECK(rel(p.coefficient(e0), 58.311) < 2e-4);
    CHECK(rel(p.coefficient(e22), -39.076) < 2e-4);
    CHECK(rel(p.coefficient(e4), -34.683) < 2e-4);
    CHECK(rel(a.terms[0].P_range.min_value, 23.627) < 2e-4);
    CHECK(rel(a.terms[0].P_range.max_value, 33.724) < 2e-4);
    CHECK(std::fabs(std::fabs(a.terms[0].P_range.argmin[0]) - 1.0) < 1e-6);
    for (const auto& t : a.terms) {
      CHECK(t.ell % 2 == 0);
      CHECK(t.p_lo <= t.p_hi);
      CHECK(t.p1_lo <= t.p1_hi);
      CHECK(t.p2_lo <= t.p2_hi);
      CHECK(t.P.is_hyperoctahedral());
    }
  }

  TEST_CASE("limits of Gamma for n = 4, 5, 10") {
    const std::vector<std::array<double, 3>> expect{
        {4.0, 11.716, 31.378}, {5.0, 8.5405, 40.611}, {10.0, 4.4157, 137.61}};
    for (const auto& [n, lo, hi] : expect) {
      const auto& a = data_for(n);
      CHECK(rel(a.terms[0].P_range.min_value, lo) < 1e-3);
      CHECK(rel(a.terms[0].P_range.max_value, hi) < 1e-3);
    }
  }

  TEST_CASE("sup of the large-|k| bound") {
    const auto [x3, s3] = sup_tail(data_for(3.0));
    CHECK(s3 <= 34.85);
    CHECK(std::fabs(s3 - 34.792) < 0.06);
    const auto [x4, s4] = sup_tail(data_for(4.0));
    CHECK(std::fabs(s4 - 32.056) < 0.06);
    CHECK_THROWS_AS(tail_upper(data_for(4.0), 19.0), std::domain_error);
  }

  TEST_CASE("Gamma approaches the leading polynomial along rays") {
    const auto& a = data_for(4.0);
    const GammaEvaluator g(a.config);
    const double r3 = 1 / std::sqrt(3.0);
    for (const std::vector<double> u : {std::vector<double>{1, 0, 0}, std::vector<double>{r3, r3, r3}}) {
      double prev = INFINITY;
      for (int i : {50, 100, 200}) {
        std::vector<int> k(3);
        for (int r = 0; r < 3; ++r) k[r] = static_cast<int>(std::lround(i * u[r]));
        const WaveVector kv(k);
        std::vector<double> dir(3);
        for (int r = 0; r < 3; ++r) dir[r] = k[r] / kv.norm();
        const double err = std::fabs(g(kv) - a.terms[0].P(dir));
        CHECK(err < prev);
        prev = err;
      }
    }
  }

  TEST_CASE("sandwich for sampled large k") {
    const auto& a = data_for(4.0);
    const GammaEvaluator g(a.config);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> mag(20.0, 60.0);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> u{gauss(rng), gauss(rng), gauss(rng)};
      const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
      const double m = mag(rng);
      std::vector<int> k(3);
      for (int r = 0; r < 3; ++r) k[r] = static_cast<int>(std::lround(u[r] / un * m));
      const WaveVector kv(k);
      if (kv.norm() < 20.0) continue;
      const double gk = g(kv);
      CHECK(tail_lower(a, kv.norm()) <= gk);
      CHECK(gk <= tail_upper_at(a, kv));
      CHECK(tail_upper_at(a, kv) <= tail_upper(a, kv.norm()));
    }
  }

  TEST_CASE("bracket for n = 4") {
    SupSearchOptions o;
    o.keep_values = true;
    const auto s = sup_search(CutoffConfig::defaults_for(4.0), o);
    const auto& b = s.bracket;
    CHECK(rel(b.sup_gamma, 56.628) < 2e-4);
    CHECK(b.argmax == WaveVector{2, 1, 0});
    CHECK(b.lower == b.sup_gamma);
    CHECK(b.upper == doctest::Approx(b.sup_gamma + b.delta));
    CHECK(b.upper < 57.90);
    CHECK(!b.tail_limited);
    CHECK(s.values.size() == s.enumerated);
    const double gp = upper_bound_g(CutoffConfig::defaults_for(4.0));
    CHECK(rel(gp, std::pow(2 * std::numbers::pi, -1.5) * std::sqrt(57.892)) < 2e-4);
    CHECK(g_plus_from_bracket(3, 2.0) > g_plus_from_bracket(3, 1.0));
  }

  TEST_CASE("symmetry reduction does not change the supremum") {
    const CutoffConfig c{3, 4.0, 6.0, 4};
    SupSearchOptions full;
    full.full_enumeration = true;
    const auto a = sup_search(c);
    const auto b = sup_search(c, full);
    CHECK(a.bracket.sup_gamma == doctest::Approx(b.bracket.sup_gamma).epsilon(1e-13));
    CHECK(canonicalize(b.bracket.argmax) == a.bracket.argmax);
    CHECK(b.enumerated > a.enumerated);
  }

  TEST_CASE("insufficient cutoff is reported") {
    const CutoffConfig c{3, 3.0, 6.0, 4};
    CHECK_THROWS_AS(sup_search(c), TailDominatesError);
    SupSearchOptions o;
    o.accept_tail_sup = true;
    const auto s = sup_search(c, o);
    CHECK(s.bracket.tail_limited);
    CHECK(s.bracket.upper == doctest::Approx(s.tail_sup + s.bracket.delta));
  }
}
