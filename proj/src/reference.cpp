#include "kato/reference.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace kato::reference {

namespace {

// Calls f(h) for every h in the box |h_a| <= r_a around the origin.
template <class F>
void for_box(const std::vector<int>& r, F&& f) {
  const int d = static_cast<int>(r.size());
  std::vector<int> h(d);
  for (int a = 0; a < d; ++a) h[a] = -r[a];
  for (;;) {
    f(WaveVector(h));
    int i = d - 1;
    while (i >= 0 && h[i] == r[i]) {
      h[i] = -r[i];
      --i;
    }
    if (i < 0) return;
    ++h[i];
  }
}

double summand(double n, const WaveVector& h, const WaveVector& k) {
  const double h2 = static_cast<double>(h.norm2());
  const double k2 = static_cast<double>(k.norm2());
  const double hk = static_cast<double>(dot(h, k));
  const double wedge2 = h2 * k2 - hk * hk;
  const WaveVector kmh = k - h;
  const double r = kmh.norm();
  const double diff = std::pow(std::sqrt(k2), n) - std::pow(r, n);
  return wedge2 * diff * diff / (std::pow(h2, n + 1.0) * std::pow(r, 2.0 * n));
}

}  // namespace

double gamma_restricted_sum(const gfunction::CutoffConfig& config, const WaveVector& k) {
  const int d = config.d;
  std::vector<int> r(d);
  const int reach = static_cast<int>(std::ceil(config.rho));
  for (int a = 0; a < d; ++a) r[a] = reach + std::abs(k[a]);
  const double rho = config.rho;
  double acc = 0.0;
  for_box(r, [&](const WaveVector& h) {
    if (h.is_zero() || h == k) return;
    if (!(h.norm() < rho || (k - h).norm() < rho)) return;
    acc += summand(config.n, h, k);
  });
  return acc;
}

double g_truncated(int d, double n, const WaveVector& k, double radius) {
  std::vector<int> r(d, static_cast<int>(std::ceil(radius)));
  double acc = 0.0;
  for_box(r, [&](const WaveVector& h) {
    if (h.is_zero() || h == k || h.norm() > radius) return;
    acc += summand(n, h, k);
  });
  return acc;
}

std::map<std::int64_t, std::size_t> lattice_norm2_counts(int d, std::int64_t r2max) {
  const int reach = static_cast<int>(std::floor(std::sqrt(static_cast<double>(r2max)))) + 1;
  std::map<std::int64_t, std::size_t> out;
  for_box(std::vector<int>(d, reach), [&](const WaveVector& h) {
    const std::int64_t r2 = h.norm2();
    if (r2 > 0 && r2 <= r2max) ++out[r2];
  });
  return out;
}

double sobolev_inner_naive(const SpectralField& v, const SpectralField& w, double n) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [k, vk] : v.full_support()) {
    const CVector wk = w.at(k);
    std::complex<double> s{0.0, 0.0};
    for (std::size_t a = 0; a < vk.size(); ++a) s += std::conj(vk[a]) * wk[a];
    acc += std::pow(k.norm(), 2.0 * n) * s;
  }
  return acc.real();
}

SpectralField advect_naive(const SpectralField& v, const SpectralField& w) {
  const int d = v.dim();
  int reach = 0;
  for (const auto& [k, c] : v.canonical_modes()) {
    for (int a = 0; a < d; ++a) reach = std::max(reach, std::abs(k[a]));
  }
  int reach_w = 0;
  for (const auto& [k, c] : w.canonical_modes()) {
    for (int a = 0; a < d; ++a) reach_w = std::max(reach_w, std::abs(k[a]));
  }
  const double pref = std::pow(2.0 * std::numbers::pi, -0.5 * d);
  SpectralField out(d);
  const auto vs = v.full_support();
  for_box(std::vector<int>(d, reach + reach_w), [&](const WaveVector& k) {
    if (k.is_zero() || !k.is_positive()) return;
    CVector acc(d, Complex{0.0, 0.0});
    for (const auto& [h, vh] : vs) {
      const WaveVector l = k - h;
      if (!w.contains(l)) continue;
      const CVector wl = w.at(l);
      Complex vl{0.0, 0.0};
      for (int a = 0; a < d; ++a) vl += vh[a] * static_cast<double>(l[a]);
      for (int a = 0; a < d; ++a) acc[a] += Complex{0.0, pref} * vl * wl[a];
    }
    out.set(k, acc);
  });
  return out;
}

SpectralField random_field(std::uint64_t seed, int d, int radius, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, amplitude);
  SpectralField out(d);
  for_box(std::vector<int>(d, radius), [&](const WaveVector& k) {
    if (k.is_zero() || !k.is_positive() || k.norm2() > static_cast<std::int64_t>(radius) * radius) {
      return;
    }
    CVector c(d);
    for (auto& x : c) x = Complex(g(rng), g(rng));
    out.set(k, c);
  });
  return out;
}

}  // namespace kato::reference
