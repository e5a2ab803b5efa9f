#include "kato/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kato/parallel.hpp"
#include "kato/sphere_polynomial.hpp"

namespace kato::optimize {

// ---------------------------------------------------------------------------
// BoxDomain

BoxDomain::BoxDomain(std::vector<Interval> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw std::invalid_argument("box needs at least one coordinate");
  for (const auto& b : bounds_) {
    if (!(b.lo <= b.hi)) throw std::invalid_argument("box interval with lo > hi");
  }
}

bool BoxDomain::contains(std::span<const double> x) const {
  if (x.size() != bounds_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < bounds_[i].lo || x[i] > bounds_[i].hi) return false;
  }
  return true;
}

std::vector<double> BoxDomain::clamp(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], bounds_[i].lo, bounds_[i].hi);
  }
  return out;
}

std::string BoxDomain::describe() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (i) os << " x ";
    os << '[' << bounds_[i].lo << ", " << bounds_[i].hi << ']';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Nelder-Mead

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      std::span<const double> steps,
                                      const NelderMeadOptions& options,
                                      const NelderMeadTrace& trace) {
  const std::size_t n = x0.size();
  if (steps.size() != n) throw std::invalid_argument("one initial step per coordinate");
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += steps[i];
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  std::vector<double> xr(n);
  std::vector<double> xe(n);
  std::vector<double> xc(n);
  NelderMeadResult result;

  for (int iter = 0;; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<std::vector<double>> s2(n + 1);
      std::vector<double> v2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        s2[i] = std::move(simplex[order[i]]);
        v2[i] = values[order[i]];
      }
      simplex = std::move(s2);
      values = std::move(v2);
    }
    if (trace) trace(iter, values[0], simplex[0]);

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      double dist2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = simplex[i][j] - simplex[0][j];
        dist2 += dx * dx;
      }
      diameter = std::max(diameter, std::sqrt(dist2));
    }
    result.iterations = iter;
    if (diameter < options.tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);
    const auto& worst = simplex[n];

    for (std::size_t j = 0; j < n; ++j) {
      xr[j] = centroid[j] + options.reflection * (centroid[j] - worst[j]);
    }
    const double fr = eval(xr);
    if (fr < values[0]) {
      for (std::size_t j = 0; j < n; ++j) {
        xe[j] = centroid[j] + options.expansion * (xr[j] - centroid[j]);
      }
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        values[n] = fe;
      } else {
        simplex[n] = xr;
        values[n] = fr;
      }
      continue;
    }
    if (fr < values[n - 1]) {
      simplex[n] = xr;
      values[n] = fr;
      continue;
    }
    bool accepted = false;
    if (fr < values[n]) {
      for (std::size_t j = 0; j < n; ++j) {
        xc[j] = centroid[j] + options.contraction * (xr[j] - centroid[j]);
      }
      const double fc = eval(xc);
      if (fc <= fr) {
        simplex[n] = xc;
        values[n] = fc;
        accepted = true;
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        xc[j] = centroid[j] + options.contraction * (worst[j] - centroid[j]);
      }
      const double fc = eval(xc);
      if (fc < values[n]) {
        simplex[n] = xc;
        values[n] = fc;
        accepted = true;
      }
    }
    if (!accepted) {
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          simplex[i][j] = simplex[0][j] + options.shrink * (simplex[i][j] - simplex[0][j]);
        }
        values[i] = eval(simplex[i]);
      }
    }
  }
  result.x = simplex[0];
  result.value = values[0];
  return result;
}

// ---------------------------------------------------------------------------
// Box extrema

namespace {

std::vector<double> grid_point(const BoxDomain& domain, const std::vector<int>& shape,
                               std::size_t flat) {
  std::vector<double> x(domain.dim());
  for (std::size_t i = domain.dim(); i-- > 0;) {
    const int per_dim = shape[i];
    const auto idx = static_cast<int>(flat % per_dim);
    flat /= per_dim;
    const auto& b = domain[i];
    x[i] = per_dim == 1 ? b.lo : b.lo + (b.hi - b.lo) * idx / (per_dim - 1);
    if (idx == per_dim - 1) x[i] = b.hi;
  }
  return x;
}

}  // namespace

ExtremaReport extrema_box(const Objective& f, const BoxDomain& domain,
                          const BoxSearchOptions& options) {
  std::vector<int> g = options.grid_shape;
  if (g.empty()) g.assign(domain.dim(), options.grid_per_dim);
  if (g.size() != domain.dim()) throw std::invalid_argument("grid shape does not match the box");
  std::size_t total = 1;
  for (auto& gi : g) {
    gi = std::max(gi, 2);
    total *= static_cast<std::size_t>(gi);
  }

  std::vector<double> values(total);
  parallel_for(total, options.threads, [&](std::size_t i) {
    const auto x = grid_point(domain, g, i);
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "objective is not finite at (";
      for (std::size_t j = 0; j < x.size(); ++j) os << (j ? ", " : "") << x[j];
      os << ')';
      throw std::domain_error(os.str());
    }
    values[i] = v;
  });

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> steps(domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    const double w = domain[i].hi - domain[i].lo;
    steps[i] = w > 0.0 ? w / (g[i] - 1) : 0.0;
  }

  ExtremaReport report;
  report.domain = domain.describe();
  report.min_value = values[order.front()];
  report.argmin = grid_point(domain, g, order.front());
  report.max_value = values[order.back()];
  report.argmax = grid_point(domain, g, order.back());

  const int starts = std::min<int>(options.refine_starts, static_cast<int>(total));
  for (int sign : {+1, -1}) {
    // sign = +1 minimizes f, sign = -1 maximizes it.
    auto objective = [&](std::span<const double> x) {
      return sign * f(domain.clamp(x));
    };
    for (int s = 0; s < starts; ++s) {
      const std::size_t idx = sign > 0 ? order[s] : order[total - 1 - s];
      const auto start = grid_point(domain, g, idx);
      const auto r = nelder_mead_minimize(objective, start, steps, options.nelder_mead);
      const auto x = domain.clamp(r.x);
      const double v = f(x);
      if (sign > 0 && v < report.min_value) {
        report.min_value = v;
        report.argmin = x;
      } else if (sign < 0 && v > report.max_value) {
        report.max_value = v;
        report.argmax = x;
      }
    }
  }
  return report;
}

ExtremaReport maximize_box(const Objective& f, const BoxDomain& domain, int grid_per_dim,
                           unsigned threads) {
  BoxSearchOptions options;
  options.grid_per_dim = grid_per_dim;
  options.threads = threads;
  return extrema_box(f, domain, options);
}

// ---------------------------------------------------------------------------
// Sphere extrema

namespace {

struct Candidate {
  std::vector<double> u;
  double value;
};

std::vector<double> normalized(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r += v * v;
  r = std::sqrt(r);
  std::vector<double> u(x.begin(), x.end());
  if (r == 0.0) {
    u.assign(x.size(), 0.0);
    u[0] = 1.0;
    return u;
  }
  for (auto& v : u) v /= r;
  return u;
}

std::vector<double> from_angles3(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<std::vector<double>> probe_directions(int d) {
  std::vector<std::vector<double>> out;
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    out.push_back(e);
  }
  // (1,...,1,0,...,0)/sqrt(m): the vertices of the fundamental simplex.
  for (int m = 2; m <= d; ++m) {
    std::vector<double> e(d, 0.0);
    for (int i = 0; i < m; ++i) e[i] = 1.0 / std::sqrt(static_cast<double>(m));
    out.push_back(e);
  }
  return out;
}

}  // namespace

ExtremaReport extrema_sphere(const SpherePolynomial& p, const SphereSearchOptions& options) {
  if (!p.is_even()) throw std::invalid_argument("sphere extrema require an even polynomial");
  const int d = p.dim();
  if (d < 2) throw std::invalid_argument("sphere extrema need d >= 2");
  const int g = std::max(options.grid, 4);

  std::vector<Candidate> cands;
  auto push = [&](std::vector<double> u) {
    const double v = p(u);
    cands.push_back({std::move(u), v});
  };
  for (auto& u : probe_directions(d)) push(std::move(u));

  if (d == 2) {
    for (int i = 0; i < g; ++i) {
      const double phi = std::numbers::pi * i / g;
      push({std::cos(phi), std::sin(phi)});
    }
  } else if (d == 3) {
    const bool symmetric = p.is_hyperoctahedral();
    const double theta_max = symmetric ? std::numbers::pi / 2 : std::numbers::pi;
    const double phi_max = symmetric ? std::numbers::pi / 2 : 2 * std::numbers::pi;
    for (int i = 0; i <= g; ++i) {
      for (int j = 0; j <= g; ++j) {
        auto u = from_angles3(theta_max * i / g, phi_max * j / g);
        if (symmetric && !(u[0] >= u[1] - 1e-12 && u[1] >= u[2] - 1e-12)) continue;
        push(std::move(u));
      }
    }
  } else {
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(d));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int samples = g * g * d;
    std::vector<double> x(d);
    for (int s = 0; s < samples; ++s) {
      for (auto& v : x) v = gauss(rng);
      push(normalized(x));
    }
  }

  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].value < cands[b].value;
  });

  ExtremaReport report;
  report.domain = "unit sphere in R^" + std::to_string(d);
  report.min_value = cands[order.front()].value;
  report.argmin = cands[order.front()].u;
  report.max_value = cands[order.back()].value;
  report.argmax = cands[order.back()].u;

  const int starts = std::min<int>(options.refine_starts, static_cast<int>(cands.size()));
  for (int sign : {+1, -1}) {
    for (int s = 0; s < starts; ++s) {
      const auto& start = cands[sign > 0 ? order[s] : order[order.size() - 1 - s]].u;
      std::vector<double> u;
      if (d == 2) {
        auto obj = [&](std::span<const double> a) {
          return sign * p(std::vector<double>{std::cos(a[0]), std::sin(a[0])});
        };
        const double step = std::numbers::pi / g;
        const auto r = nelder_mead_minimize(obj, {std::atan2(start[1], start[0])},
                                            std::span<const double>(&step, 1),
                                            options.nelder_mead);
        u = {std::cos(r.x[0]), std::sin(r.x[0])};
      } else if (d == 3) {
        auto obj = [&](std::span<const double> a) { return sign * p(from_angles3(a[0], a[1])); };
        const double step = std::numbers::pi / (2 * g);
        const std::vector<double> steps{step, step};
        const double theta = std::acos(std::clamp(start[2], -1.0, 1.0));
        const double phi = std::atan2(start[1], start[0]);
        const auto r = nelder_mead_minimize(obj, {theta, phi}, steps, options.nelder_mead);
        u = from_angles3(r.x[0], r.x[1]);
      } else {
        auto obj = [&](std::span<const double> x) { return sign * p(normalized(x)); };
        const std::vector<double> steps(d, 0.05);
        const auto r = nelder_mead_minimize(obj, start, steps, options.nelder_mead);
        u = normalized(r.x);
      }
      const double v = p(u);
      if (sign > 0 && v < report.min_value) {
        report.min_value = v;
        report.argmin = u;
      } else if (sign < 0 && v > report.max_value) {
        report.max_value = v;
        report.argmax = u;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Scalar supremum

std::pair<double, double> maximize_interval(const std::function<double(double)>& f, double lo,
                                            double hi, int grid) {
  if (!(lo <= hi)) throw std::invalid_argument("interval with lo > hi");
  grid = std::max(grid, 2);
  double best_x = lo;
  double best = f(lo);
  int best_i = 0;
  for (int i = 1; i < grid; ++i) {
    const double x = i == grid - 1 ? hi : lo + (hi - lo) * i / (grid - 1);
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
      best_i = i;
    }
  }
  const double h = (hi - lo) / (grid - 1);
  double a = std::max(lo, lo + (best_i - 1) * h);
  double b = std::min(hi, lo + (best_i + 1) * h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::fabs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  for (const auto& [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

}  // namespace kato::optimize
