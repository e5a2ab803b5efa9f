#pragma once

#include <span>
#include <vector>

namespace kato {

/// Polynomial in the components of u in R^d, stored as a list of monomials.
/// Used for the lattice-averaged asymptotic polynomials, which are only
/// ever evaluated on the unit sphere.
class SpherePolynomial {
 public:
  struct Term {
    std::vector<int> exponents;
    double coefficient = 0.0;
  };

  explicit SpherePolynomial(int d);

  [[nodiscard]] int dim() const noexcept { return d_; }
  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] int max_degree() const noexcept { return max_degree_; }

  /// Adds a to the coefficient of u^exponents.
  void add_term(std::vector<int> exponents, double a);

  /// Coefficient of u^exponents (0 if absent).
  [[nodiscard]] double coefficient(std::span<const int> exponents) const;

  [[nodiscard]] double operator()(std::span<const double> u) const;

  /// Every monomial has even total degree, i.e. p(-u) = p(u).
  [[nodiscard]] bool is_even() const;

  /// Invariant under coordinate permutations and sign flips, up to rel_tol
  /// relative to the largest coefficient.
  [[nodiscard]] bool is_hyperoctahedral(double rel_tol = 1e-9) const;

 private:
  int d_;
  int max_degree_ = 0;
  std::vector<Term> terms_;
};

}  // namespace kato
