#pragma once

// Spectral representation of real, zero-mean vector fields on the d-torus.
//
// A field is a finite Hermitian family of Fourier coefficients
// v_k in C^d, k in Z^d \ {0}, with v_{-k} = conj(v_k). Only one member of
// every pair {k, -k} is stored (the one whose first nonzero component is
// positive); the partner is implied by conjugation, so the reality
// condition cannot drift.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace kato {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Integer lattice point of Z^d, used as a Fourier index.
class WaveVector {
 public:
  WaveVector() = default;
  explicit WaveVector(std::vector<int> components);
  WaveVector(std::initializer_list<int> components);

  static WaveVector zero(int d);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(c_.size()); }
  [[nodiscard]] int operator[](std::size_t i) const { return c_[i]; }
  [[nodiscard]] std::span<const int> components() const noexcept { return c_; }

  [[nodiscard]] std::int64_t norm2() const noexcept;
  [[nodiscard]] double norm() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;

  /// True when the first nonzero component is positive. Exactly one of
  /// {k, -k} is canonical for k != 0.
  [[nodiscard]] bool is_positive() const noexcept;

  WaveVector operator-() const;
  friend WaveVector operator+(const WaveVector& a, const WaveVector& b);
  friend WaveVector operator-(const WaveVector& a, const WaveVector& b);

  friend auto operator<=>(const WaveVector&, const WaveVector&) = default;
  friend bool operator==(const WaveVector&, const WaveVector&) = default;

 private:
  std::vector<int> c_;
};

[[nodiscard]] std::int64_t dot(const WaveVector& a, const WaveVector& b);

class SpectralField {
 public:
  explicit SpectralField(int d);

  [[nodiscard]] int dim() const noexcept { return d_; }

  /// Sets the coefficient at k (and, implicitly, conj at -k). A zero
  /// coefficient erases the mode. Throws for k = 0 or a size mismatch.
  void set(const WaveVector& k, CVector coefficient);

  /// Coefficient at any k; zero vector outside the support.
  [[nodiscard]] CVector at(const WaveVector& k) const;
  [[nodiscard]] bool contains(const WaveVector& k) const;

  /// Number of stored (canonical) modes; the support has twice as many.
  [[nodiscard]] std::size_t canonical_size() const noexcept { return modes_.size(); }
  [[nodiscard]] std::size_t support_size() const noexcept { return 2 * modes_.size(); }
  [[nodiscard]] bool empty() const noexcept { return modes_.empty(); }

  [[nodiscard]] const std::map<WaveVector, CVector>& canonical_modes() const noexcept {
    return modes_;
  }

  /// Every support point with its coefficient, in lexicographic order.
  [[nodiscard]] std::vector<std::pair<WaveVector, CVector>> full_support() const;

  /// k . v_k = 0 on every mode, up to rel_tol * |k| |v_k|.
  [[nodiscard]] bool is_divergence_free(double rel_tol = 1e-12) const;

  [[nodiscard]] SpectralField scaled(double factor) const;

 private:
  int d_;
  std::map<WaveVector, CVector> modes_;
};

/// <v|w>_n = sum_k |k|^{2n} conj(v_k) . w_k.
double sobolev_inner(const SpectralField& v, const SpectralField& w, double n);
double sobolev_norm(const SpectralField& v, double n);

/// Mode-wise projection onto the orthogonal complement of k.
SpectralField leray_project(const SpectralField& v);

/// Fourier coefficients of v . grad w (the k = 0 coefficient is dropped).
SpectralField advect(const SpectralField& v, const SpectralField& w);

/// <v . grad w | w>_n evaluated as a direct double sum over support pairs.
/// Requires v divergence-free.
double trilinear(const SpectralField& v, const SpectralField& w, double n);

/// |p ^ q| = sqrt(|p|^2 |q|^2 - (p.q)^2), clamped at zero.
double wedge_norm(std::span<const double> p, std::span<const double> q);

/// Deterministic random divergence-free field with every mode 0 < |k| <= radius.
SpectralField random_divfree_field(std::uint64_t seed, int d, int radius, double amplitude);

/// JSON array of {"k":[...], "re":[...], "im":[...]} records, one per
/// stored mode.
nlohmann::json field_to_json(const SpectralField& v);
SpectralField field_from_json(const nlohmann::json& j);

}  // namespace kato
