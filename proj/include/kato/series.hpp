#pragma once

// Truncated power series in eps whose coefficients live in a commutative
// ring: plain scalars (double, long double, exact rationals) or
// polynomials in c with scalar coefficients. This is the engine behind the
// Taylor coefficients D_{n,l}(c), E_{n,l}(c).

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace kato {

/// Dense polynomial in one variable c; index j holds the coefficient of c^j.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
template <class T>
class PolyInC {
 public:
  using scalar_type = T;

  PolyInC() = default;
  explicit PolyInC(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static PolyInC constant(T value) { return PolyInC(std::vector<T>{std::move(value)}); }
  /// a * c^j
  static PolyInC monomial(T a, std::size_t j) {
    std::vector<T> c(j + 1, T(0));
    c[j] = std::move(a);
    return PolyInC(std::move(c));
  }

  [[nodiscard]] const std::vector<T>& coefficients() const noexcept { return c_; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] T coefficient(std::size_t j) const { return j < c_.size() ? c_[j] : T(0); }

  template <class X>
  [[nodiscard]] X operator()(X x) const {
    X acc = X(0);
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * x + static_cast<X>(c_[j]);
    return acc;
  }

  /// True when every coefficient of the wrong parity vanishes.
  [[nodiscard]] bool has_parity(int parity) const {
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (static_cast<int>(j % 2) != parity && c_[j] != T(0)) return false;
    }
    return true;
  }

  PolyInC& operator+=(const PolyInC& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
    trim();
    return *this;
  }
  PolyInC& operator-=(const PolyInC& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
    trim();
    return *this;
  }
  PolyInC& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend PolyInC operator+(PolyInC a, const PolyInC& b) { return a += b; }
  friend PolyInC operator-(PolyInC a, const PolyInC& b) { return a -= b; }
  friend PolyInC operator*(PolyInC a, const T& s) { return a *= s; }
  friend PolyInC operator*(const T& s, PolyInC a) { return a *= s; }
  friend PolyInC operator*(const PolyInC& a, const PolyInC& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return PolyInC(std::move(out));
  }
  friend bool operator==(const PolyInC&, const PolyInC&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

namespace detail {

template <class R>
struct ring_traits {
  using scalar = R;
  static bool is_zero(const R& x) { return x == R(0); }
  static bool is_one(const R& x) { return x == R(1); }
  static R zero() { return R(0); }
  static R one() { return R(1); }
};

template <class T>
struct ring_traits<PolyInC<T>> {
  using scalar = T;
  static bool is_zero(const PolyInC<T>& x) { return x.is_zero(); }
  static bool is_one(const PolyInC<T>& x) { return x == PolyInC<T>::constant(T(1)); }
  static PolyInC<T> zero() { return {}; }
  static PolyInC<T> one() { return PolyInC<T>::constant(T(1)); }
};

}  // namespace detail

/// sum_{l=0}^{order} a_l eps^l, with every operation exact up to the
/// truncation order.
template <class R>
class SeriesInEps {
 public:
  using traits = detail::ring_traits<R>;
  using scalar_type = typename traits::scalar;

  explicit SeriesInEps(int order) : a_(static_cast<std::size_t>(order) + 1, traits::zero()) {
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
  }
  SeriesInEps(int order, std::vector<R> coeffs) : SeriesInEps(order) {
    for (std::size_t l = 0; l < coeffs.size() && l < a_.size(); ++l) a_[l] = std::move(coeffs[l]);
  }
  static SeriesInEps constant(int order, R value) {
    SeriesInEps s(order);
    s.a_[0] = std::move(value);
    return s;
  }

  [[nodiscard]] int order() const noexcept { return static_cast<int>(a_.size()) - 1; }
  [[nodiscard]] const R& operator[](std::size_t l) const { return a_[l]; }
  R& operator[](std::size_t l) { return a_[l]; }
  [[nodiscard]] const std::vector<R>& coefficients() const noexcept { return a_; }

  SeriesInEps& operator+=(const SeriesInEps& o) {
    check_order(o);
    for (std::size_t l = 0; l < a_.size(); ++l) a_[l] += o.a_[l];
    return *this;
  }
  SeriesInEps& operator-=(const SeriesInEps& o) {
    check_order(o);
    for (std::size_t l = 0; l < a_.size(); ++l) a_[l] -= o.a_[l];
    return *this;
  }
  SeriesInEps& operator*=(const scalar_type& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend SeriesInEps operator+(SeriesInEps a, const SeriesInEps& b) { return a += b; }
  friend SeriesInEps operator-(SeriesInEps a, const SeriesInEps& b) { return a -= b; }
  friend SeriesInEps operator*(SeriesInEps a, const scalar_type& s) { return a *= s; }

  friend SeriesInEps operator*(const SeriesInEps& a, const SeriesInEps& b) {
    a.check_order(b);
    const std::size_t m = a.a_.size();
    const std::size_t ea = a.last_nonzero();
    const std::size_t eb = b.last_nonzero();
    SeriesInEps out(a.order());
    for (std::size_t i = 0; i <= ea && i < m; ++i) {
      if (traits::is_zero(a.a_[i])) continue;
      for (std::size_t j = 0; j <= eb && i + j < m; ++j) {
        if (traits::is_zero(b.a_[j])) continue;
        out.a_[i + j] += a.a_[i] * b.a_[j];
      }
    }
    return out;
  }

  /// Multiplies every coefficient (in the ring) by r.
  [[nodiscard]] SeriesInEps times(const R& r) const {
    SeriesInEps out(order());
    for (std::size_t l = 0; l < a_.size(); ++l) out.a_[l] = a_[l] * r;
    return out;
  }

  /// Exact division by eps^k. The first k coefficients must vanish; the
  /// top k orders of the result are unknown and the order drops by k.
  [[nodiscard]] SeriesInEps divide_by_eps_power(int k) const {
    if (k < 0 || k > order()) throw std::invalid_argument("invalid eps shift");
    for (int l = 0; l < k; ++l) {
      if (!traits::is_zero(a_[l])) {
        throw std::domain_error("series is not divisible by the requested power of eps");
      }
    }
    SeriesInEps out(order() - k);
    for (std::size_t l = 0; l < out.a_.size(); ++l) out.a_[l] = a_[l + k];
    return out;
  }

  /// (this)^alpha for a series with unit constant term, via the standard
  /// power-series recurrence g_k = (1/k) sum_j ((alpha+1) j - k) f_j g_{k-j}.
  [[nodiscard]] SeriesInEps pow(const scalar_type& alpha) const {
    if (!traits::is_one(a_[0])) {
      throw std::domain_error("fractional power requires a unit constant term");
    }
    const std::size_t m = a_.size();
    const std::size_t ef = last_nonzero();
    SeriesInEps g(order());
    g.a_[0] = traits::one();
    const scalar_type alpha1 = alpha + scalar_type(1);
    for (std::size_t k = 1; k < m; ++k) {
      R acc = traits::zero();
      for (std::size_t j = 1; j <= std::min(k, ef); ++j) {
        if (traits::is_zero(a_[j])) continue;
        const scalar_type w =
            alpha1 * scalar_type(static_cast<long>(j)) - scalar_type(static_cast<long>(k));
        acc += (a_[j] * g.a_[k - j]) * w;
      }
      g.a_[k] = acc * (scalar_type(1) / scalar_type(static_cast<long>(k)));
    }
    return g;
  }

  [[nodiscard]] SeriesInEps reciprocal() const { return pow(scalar_type(-1)); }

  /// a / b with b having a unit constant term.
  friend SeriesInEps operator/(const SeriesInEps& a, const SeriesInEps& b) {
    return a * b.reciprocal();
  }

 private:
  void check_order(const SeriesInEps& o) const {
    if (o.a_.size() != a_.size()) throw std::invalid_argument("series orders differ");
  }
  std::size_t last_nonzero() const {
    for (std::size_t l = a_.size(); l-- > 0;) {
      if (!traits::is_zero(a_[l])) return l;
    }
    return 0;
  }

  std::vector<R> a_;
};

}  // namespace kato
