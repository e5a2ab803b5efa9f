#include "kato/sphere_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kato {

SpherePolynomial::SpherePolynomial(int d) : d_(d) {
  if (d < 1) throw std::invalid_argument("sphere polynomial needs d >= 1");
}

void SpherePolynomial::add_term(std::vector<int> exponents, double a) {
  if (static_cast<int>(exponents.size()) != d_) {
    throw std::invalid_argument("monomial has the wrong number of exponents");
  }
  for (auto& t : terms_) {
    if (t.exponents == exponents) {
      t.coefficient += a;
      return;
    }
  }
  const int degree = std::accumulate(exponents.begin(), exponents.end(), 0);
  max_degree_ = std::max(max_degree_, degree);
  terms_.push_back({std::move(exponents), a});
}

double SpherePolynomial::coefficient(std::span<const int> exponents) const {
  for (const auto& t : terms_) {
    if (std::equal(t.exponents.begin(), t.exponents.end(), exponents.begin(), exponents.end())) {
      return t.coefficient;
    }
  }
  return 0.0;
}

double SpherePolynomial::operator()(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != d_) throw std::invalid_argument("point has the wrong dimension");
  const int stride = max_degree_ + 1;
  std::vector<double> powers(static_cast<std::size_t>(d_) * stride);
  for (int i = 0; i < d_; ++i) {
    double p = 1.0;
    for (int e = 0; e < stride; ++e) {
      powers[i * stride + e] = p;
      p *= u[i];
    }
  }
  double acc = 0.0;
  for (const auto& t : terms_) {
    double m = t.coefficient;
    for (int i = 0; i < d_; ++i) m *= powers[i * stride + t.exponents[i]];
    acc += m;
  }
  return acc;
}

bool SpherePolynomial::is_even() const {
  for (const auto& t : terms_) {
    const int degree = std::accumulate(t.exponents.begin(), t.exponents.end(), 0);
    if (degree % 2 != 0 && t.coefficient != 0.0) return false;
  }
  return true;
}

bool SpherePolynomial::is_hyperoctahedral(double rel_tol) const {
  double scale = 0.0;
  for (const auto& t : terms_) scale = std::max(scale, std::fabs(t.coefficient));
  const double tol = rel_tol * scale;
  std::map<std::vector<int>, std::vector<double>> orbits;
  for (const auto& t : terms_) {
    const bool odd = std::any_of(t.exponents.begin(), t.exponents.end(),
                                 [](int e) { return e % 2 != 0; });
    if (odd) {
      if (std::fabs(t.coefficient) > tol) return false;
      continue;
    }
    auto key = t.exponents;
    std::sort(key.begin(), key.end(), std::greater<>());
    orbits[key].push_back(t.coefficient);
  }
  for (const auto& [key, coeffs] : orbits) {
    // Every distinct permutation of the exponents must carry the same
    // coefficient; missing permutations count as zero.
    auto perm = key;
    std::sort(perm.begin(), perm.end());
    std::size_t count = 0;
    do {
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto [lo, hi] = std::minmax_element(coeffs.begin(), coeffs.end());
    if (*hi - *lo > tol) return false;
    if (coeffs.size() != count && std::max(std::fabs(*lo), std::fabs(*hi)) > tol) return false;
  }
  return true;
}

}  // namespace kato
