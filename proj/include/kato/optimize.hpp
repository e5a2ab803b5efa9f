#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kato {
class SpherePolynomial;
}

namespace kato::optimize {

using Objective = std::function<double(std::span<const double>)>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Axis-aligned closed box.
class BoxDomain {
 public:
  explicit BoxDomain(std::vector<Interval> bounds);

  [[nodiscard]] std::size_t dim() const noexcept { return bounds_.size(); }
  [[nodiscard]] const Interval& operator[](std::size_t i) const { return bounds_[i]; }
  [[nodiscard]] bool contains(std::span<const double> x) const;
  [[nodiscard]] std::vector<double> clamp(std::span<const double> x) const;
  [[nodiscard]] std::string describe() const;

 private:
  std::vector<Interval> bounds_;
};

/// Minimum and maximum of a function over a domain, with the points where
/// they were found.
struct ExtremaReport {
  double min_value = 0.0;
  double max_value = 0.0;
  std::vector<double> argmin;
  std::vector<double> argmax;
  std::string domain;
};

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  int max_iterations = 2000;
  /// Stop once every vertex lies within this distance of the best one.
  double tolerance = 1e-10;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Called after every iteration with (iteration, best value, best point).
using NelderMeadTrace = std::function<void(int, double, std::span<const double>)>;

/// Minimizes f starting from the simplex {x0, x0 + step_i e_i}.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      std::span<const double> steps,
                                      const NelderMeadOptions& options = {},
                                      const NelderMeadTrace& trace = {});

struct BoxSearchOptions {
  int grid_per_dim = 101;
  /// Points per coordinate; overrides grid_per_dim when non-empty.
  std::vector<int> grid_shape;
  int refine_starts = 5;
  NelderMeadOptions nelder_mead{};
  unsigned threads = 0;
};

/// Grid scan followed by Nelder-Mead refinement (on the clamped function)
/// from the best grid cells, for both the minimum and the maximum.
/// Throws std::domain_error if f is not finite at a probed point.
ExtremaReport extrema_box(const Objective& f, const BoxDomain& domain,
                          const BoxSearchOptions& options = {});

/// Same search; only the maximum half of the report is meaningful.
ExtremaReport maximize_box(const Objective& f, const BoxDomain& domain, int grid_per_dim,
                           unsigned threads = 0);

struct SphereSearchOptions {
  /// Angular resolution of the initial grid (d = 3) or the number of
  /// sample directions per dimension (other d).
  int grid = 64;
  int refine_starts = 5;
  NelderMeadOptions nelder_mead{};
};

/// Extrema of an even polynomial over the unit sphere of R^d.
ExtremaReport extrema_sphere(const SpherePolynomial& p, const SphereSearchOptions& options = {});

/// Supremum of a scalar function on [lo, hi] by grid scan plus golden
/// section refinement around the best grid point. Returns (argsup, sup).
std::pair<double, double> maximize_interval(const std::function<double(double)>& f, double lo,
                                            double hi, int grid = 2001);

}  // namespace kato::optimize
