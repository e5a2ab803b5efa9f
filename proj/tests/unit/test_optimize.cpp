#include <doctest.h>

#include <cmath>
#include <vector>

#include "kato/kernel.hpp"
#include "kato/optimize.hpp"
#include "kato/sphere_polynomial.hpp"

using namespace kato;
using namespace kato::optimize;

TEST_SUITE("optimize") {
  TEST_CASE("nelder mead on the Rosenbrock function") {
    const Objective f = [](std::span<const double> x) {
      return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    const std::vector<double> steps{0.5, 0.5};
    NelderMeadOptions o;
    o.max_iterations = 10000;
    o.tolerance = 1e-12;
    const auto r = nelder_mead_minimize(f, {-1.2, 1.0}, steps, o);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("box maximum of a concave quadratic") {
    const Objective f = [](std::span<const double> x) {
      return -std::pow(x[0] - 0.3, 2) - std::pow(x[1] - 0.7, 2);
    };
    const BoxDomain box({{0.0, 1.0}, {0.0, 1.0}});
    const auto r = maximize_box(f, box, 21);
    CHECK(std::fabs(r.max_value) < 1e-15);
    CHECK(std::fabs(r.argmax[0] - 0.3) < 1e-8);
    CHECK(std::fabs(r.argmax[1] - 0.7) < 1e-8);
    CHECK(box.contains(r.argmax));
  }

  TEST_CASE("extrema never worse than the grid") {
    const Objective f = [](std::span<const double> x) {
      return std::sin(5 * x[0]) * std::cos(3 * x[1]) + 0.1 * x[0];
    };
    const BoxDomain box({{-1.0, 2.0}, {0.0, 1.5}});
    BoxSearchOptions o;
    o.grid_per_dim = 31;
    const auto r = extrema_box(f, box, o);
    for (int i = 0; i < 31; ++i) {
      for (int j = 0; j < 31; ++j) {
        const std::vector<double> x{-1.0 + 3.0 * i / 30, 1.5 * j / 30};
        CHECK(f(x) <= r.max_value);
        CHECK(f(x) >= r.min_value);
      }
    }
    CHECK(box.contains(r.argmin));
    CHECK(box.contains(r.argmax));
  }

  TEST_CASE("box search rejects non-finite values") {
    const Objective f = [](std::span<const double> x) { return 1.0 / x[0]; };
    CHECK_THROWS_AS(maximize_box(f, BoxDomain({{0.0, 1.0}}), 11), std::domain_error);
  }

  TEST_CASE("kernel targets") {
    const Objective c3 = [](std::span<const double> x) { return kernel::c_fun(3.0, x[0], x[1]); };
    const BoxDomain cbox({{0.0, 4.0}, {0.0, 1.0}});
    const auto a = maximize_box(c3, cbox, 201);
    CHECK(a.max_value == doctest::Approx(14.814).epsilon(1e-3));
    const auto b = maximize_box(c3, cbox, 401);
    CHECK(std::fabs(a.max_value - b.max_value) < 1e-6 * a.max_value);

    const Objective q38 = [](std::span<const double> x) {
      return kernel::remainder(kernel::RemainderKind::Q, 3.0, 8, x[0], x[1]);
    };
    BoxSearchOptions o;
    o.grid_shape = {101, 51};
    const auto q = extrema_box(q38, BoxDomain({{-1.0, 1.0}, {0.0, 0.5}}), o);
    CHECK(q.min_value == doctest::Approx(-72.563).epsilon(1e-3));
    o.grid_shape = {201, 101};
    const auto q2 = extrema_box(q38, BoxDomain({{-1.0, 1.0}, {0.0, 0.5}}), o);
    CHECK(std::fabs(q.min_value - q2.min_value) < 1e-6 * std::fabs(q.min_value));
  }

  TEST_CASE("sphere extrema") {
    SpherePolynomial constant(3);
    constant.add_term({0, 0, 0}, 2.5);
    const auto c = extrema_sphere(constant);
    CHECK(c.min_value == doctest::Approx(2.5));
    CHECK(c.max_value == doctest::Approx(2.5));

    SpherePolynomial quartic(3);
    quartic.add_term({4, 0, 0}, 1.0);
    quartic.add_term({0, 4, 0}, 1.0);
    quartic.add_term({0, 0, 4}, 1.0);
    const auto q = extrema_sphere(quartic);
    CHECK(q.min_value == doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(q.max_value == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : q.argmin) CHECK(std::fabs(x) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-5));

    SpherePolynomial odd(3);
    odd.add_term({1, 0, 0}, 1.0);
    CHECK_THROWS_AS(extrema_sphere(odd), std::invalid_argument);
  }

  TEST_CASE("sphere extrema without symmetry and in other dimensions") {
    SpherePolynomial p(3);
    p.add_term({2, 0, 0}, 1.0);
    p.add_term({0, 2, 0}, 3.0);
    p.add_term({0, 0, 2}, -2.0);
    p.add_term({1, 1, 0}, 1.0);
    const auto r = extrema_sphere(p);
    // Eigenvalues of [[1, 1/2, 0], [1/2, 3, 0], [0, 0, -2]].
    CHECK(r.min_value == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(r.max_value == doctest::Approx(2.0 + std::sqrt(1.25)).epsilon(1e-10));

    SpherePolynomial circle(2);
    circle.add_term({2, 0}, 1.0);
    circle.add_term({1, 1}, 1.0);
    const auto s = extrema_sphere(circle);
    CHECK(s.min_value == doctest::Approx(0.5 - std::sqrt(0.5)).epsilon(1e-10));
    CHECK(s.max_value == doctest::Approx(0.5 + std::sqrt(0.5)).epsilon(1e-10));

    SpherePolynomial four(4);
    for (int a = 0; a < 4; ++a) {
      std::vector<int> e(4, 0);
      e[a] = 4;
      four.add_term(e, 1.0);
    }
    const auto f = extrema_sphere(four);
    CHECK(f.min_value == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(f.max_value == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("interval maximum") {
    const auto [x, v] = maximize_interval([](double t) { return -std::pow(t - 0.123, 2) + 4; }, 0, 1);
    CHECK(x == doctest::Approx(0.123).epsilon(1e-7));
    CHECK(v == doctest::Approx(4.0));
    const auto [xe, ve] = maximize_interval([](double t) { return t; }, 0, 2);
    CHECK(xe == 2.0);
    CHECK(ve == 2.0);
  }
}
