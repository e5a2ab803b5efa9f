#include "kato/fields.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "kato/summation.hpp"

namespace kato {

namespace {

void require_same_dim(const SpectralField& a, const SpectralField& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

// |k|^{2n}, evaluated through the logarithm for every n.
double sobolev_weight(std::int64_t k2, double n) {
  return std::exp(n * std::log(static_cast<double>(k2)));
}

double inv_torus_volume_sqrt(int d) {
  return std::pow(2.0 * std::numbers::pi, -0.5 * d);
}

CVector conj_vector(const CVector& c) {
  CVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::conj(c[i]);
  return out;
}

// Bilinear (unconjugated) product with an integer vector.
Complex dot_int(const CVector& c, const WaveVector& k) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * static_cast<double>(k[i]);
  return s;
}

bool is_zero_vector(const CVector& c) {
  for (const auto& x : c) {
    if (x != Complex{0.0, 0.0}) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// WaveVector

WaveVector::WaveVector(std::vector<int> components) : c_(std::move(components)) {}

WaveVector::WaveVector(std::initializer_list<int> components) : c_(components) {}

WaveVector WaveVector::zero(int d) { return WaveVector(std::vector<int>(d, 0)); }

std::int64_t WaveVector::norm2() const noexcept {
  std::int64_t s = 0;
  for (int x : c_) s += static_cast<std::int64_t>(x) * x;
  return s;
}

double WaveVector::norm() const noexcept { return std::sqrt(static_cast<double>(norm2())); }

bool WaveVector::is_zero() const noexcept {
  for (int x : c_) {
    if (x != 0) return false;
  }
  return true;
}

bool WaveVector::is_positive() const noexcept {
  for (int x : c_) {
    if (x != 0) return x > 0;
  }
  return false;
}

WaveVector WaveVector::operator-() const {
  std::vector<int> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = -c_[i];
  return WaveVector(std::move(out));
}

WaveVector operator+(const WaveVector& a, const WaveVector& b) {
  std::vector<int> out(a.c_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] + b.c_[i];
  return WaveVector(std::move(out));
}

WaveVector operator-(const WaveVector& a, const WaveVector& b) {
  std::vector<int> out(a.c_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.c_[i] - b.c_[i];
  return WaveVector(std::move(out));
}

std::int64_t dot(const WaveVector& a, const WaveVector& b) {
  std::int64_t s = 0;
  for (int i = 0; i < a.dim(); ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(int d) : d_(d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
}

void SpectralField::set(const WaveVector& k, CVector coefficient) {
  if (k.dim() != d_ || static_cast<int>(coefficient.size()) != d_) {
    throw std::invalid_argument("wave vector or coefficient has the wrong dimension");
  }
  if (k.is_zero()) throw std::invalid_argument("zero-mean fields have no k = 0 mode");
  WaveVector key = k;
  if (!k.is_positive()) {
    key = -k;
    coefficient = conj_vector(coefficient);
  }
  if (is_zero_vector(coefficient)) {
    modes_.erase(key);
  } else {
    modes_[std::move(key)] = std::move(coefficient);
  }
}

CVector SpectralField::at(const WaveVector& k) const {
  if (k.is_zero()) return CVector(d_);
  if (k.is_positive()) {
    auto it = modes_.find(k);
    return it == modes_.end() ? CVector(d_) : it->second;
  }
  auto it = modes_.find(-k);
  return it == modes_.end() ? CVector(d_) : conj_vector(it->second);
}

bool SpectralField::contains(const WaveVector& k) const {
  if (k.is_zero()) return false;
  return modes_.count(k.is_positive() ? k : -k) != 0;
}

std::vector<std::pair<WaveVector, CVector>> SpectralField::full_support() const {
  std::map<WaveVector, CVector> all;
  for (const auto& [k, c] : modes_) {
    all.emplace(k, c);
    all.emplace(-k, conj_vector(c));
  }
  return {all.begin(), all.end()};
}

bool SpectralField::is_divergence_free(double rel_tol) const {
  for (const auto& [k, c] : modes_) {
    double cn = 0.0;
    for (const auto& x : c) cn += std::norm(x);
    const double bound = rel_tol * k.norm() * std::sqrt(cn);
    if (std::abs(dot_int(c, k)) > bound) return false;
  }
  return true;
}

SpectralField SpectralField::scaled(double factor) const {
  SpectralField out(d_);
  if (factor == 0.0) return out;
  for (const auto& [k, c] : modes_) {
    CVector s(c);
    for (auto& x : s) x *= factor;
    out.modes_.emplace(k, std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

double sobolev_inner(const SpectralField& v, const SpectralField& w, double n) {
  require_same_dim(v, w);
  // The pair {k, -k} contributes conj(v_k).w_k + its complex conjugate, so
  // the sum is 2 Re over the stored half and has no imaginary part.
  CompensatedSum sum;
  for (const auto& [k, vk] : v.canonical_modes()) {
    const auto it = w.canonical_modes().find(k);
    if (it == w.canonical_modes().end()) continue;
    double re = 0.0;
    for (int r = 0; r < v.dim(); ++r) re += (std::conj(vk[r]) * it->second[r]).real();
    sum.add(2.0 * sobolev_weight(k.norm2(), n) * re);
  }
  return sum.value();
}

double sobolev_norm(const SpectralField& v, double n) {
  return std::sqrt(std::max(0.0, sobolev_inner(v, v, n)));
}

SpectralField leray_project(const SpectralField& v) {
  SpectralField out(v.dim());
  const int d = v.dim();
  for (const auto& [k, c] : v.canonical_modes()) {
    const Complex kc = dot_int(c, k);
    const double k2 = static_cast<double>(k.norm2());
    CVector p(c);
    for (int r = 0; r < d; ++r) p[r] -= kc / k2 * static_cast<double>(k[r]);
    out.set(k, std::move(p));
  }
  return out;
}

SpectralField advect(const SpectralField& v, const SpectralField& w) {
  require_same_dim(v, w);
  const int d = v.dim();
  const auto vs = v.full_support();
  const auto ws = w.full_support();
  std::map<WaveVector, CVector> acc;
  for (const auto& [h, vh] : vs) {
    for (const auto& [l, wl] : ws) {
      WaveVector k = h + l;
      if (k.is_zero() || !k.is_positive()) continue;
      const Complex a = dot_int(vh, l);
      if (a == Complex{0.0, 0.0}) continue;
      auto [it, inserted] = acc.try_emplace(std::move(k), CVector(d));
      for (int r = 0; r < d; ++r) it->second[r] += a * wl[r];
    }
  }
  const Complex factor{0.0, inv_torus_volume_sqrt(d)};
  SpectralField out(d);
  for (auto& [k, c] : acc) {
    for (auto& x : c) x *= factor;
    out.set(k, std::move(c));
  }
  return out;
}

double trilinear(const SpectralField& v, const SpectralField& w, double n) {
  require_same_dim(v, w);
  if (!v.is_divergence_free(1e-10)) {
    throw std::invalid_argument("trilinear form requires a divergence-free advecting field");
  }
  const int d = v.dim();
  const auto vs = v.full_support();
  const auto ws = w.full_support();
  // -i sum |h+l|^{2n} (conj(v_h).l)(conj(w_l).w_{h+l})
  CompensatedSum re;
  CompensatedSum im;
  double scale = 0.0;
  for (const auto& [h, vh] : vs) {
    for (const auto& [l, wl] : ws) {
      const WaveVector k = h + l;
      if (k.is_zero() || !w.contains(k)) continue;
      const CVector wk = w.at(k);
      Complex vl{0.0, 0.0};
      Complex ww{0.0, 0.0};
      for (int r = 0; r < d; ++r) {
        vl += std::conj(vh[r]) * static_cast<double>(l[r]);
        ww += std::conj(wl[r]) * wk[r];
      }
      const Complex term = Complex{0.0, -1.0} * sobolev_weight(k.norm2(), n) * vl * ww;
      re.add(term.real());
      im.add(term.imag());
      scale += std::abs(term);
    }
  }
  if (std::fabs(im.value()) > 1e-10 * std::max(scale, 1e-300)) {
    throw std::logic_error("trilinear form has a non-negligible imaginary part");
  }
  return inv_torus_volume_sqrt(d) * re.value();
}

double wedge_norm(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("vectors differ in dimension");
  double pp = 0.0;
  double qq = 0.0;
  double pq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pp += p[i] * p[i];
    qq += q[i] * q[i];
    pq += p[i] * q[i];
  }
  return std::sqrt(std::max(0.0, pp * qq - pq * pq));
}

SpectralField random_divfree_field(std::uint64_t seed, int d, int radius, double amplitude) {
  if (radius < 1) throw std::invalid_argument("radius must be at least 1");
  SpectralField out(d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::int64_t r2max = static_cast<std::int64_t>(radius) * radius;
  std::vector<int> k(d, -radius);
  for (;;) {
    const WaveVector kv(k);
    if (kv.is_positive() && kv.norm2() <= r2max) {
      CVector c(d);
      for (auto& x : c) x = amplitude * Complex{gauss(rng), gauss(rng)};
      const Complex kc = dot_int(c, kv);
      const double k2 = static_cast<double>(kv.norm2());
      for (int r = 0; r < d; ++r) c[r] -= kc / k2 * static_cast<double>(kv[r]);
      out.set(kv, std::move(c));
    }
    int i = d - 1;
    while (i >= 0 && k[i] == radius) {
      k[i] = -radius;
      --i;
    }
    if (i < 0) break;
    ++k[i];
  }
  return out;
}

nlohmann::json field_to_json(const SpectralField& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, c] : v.canonical_modes()) {
    nlohmann::json rec;
    rec["k"] = std::vector<int>(k.components().begin(), k.components().end());
    std::vector<double> re;
    std::vector<double> im;
    for (const auto& x : c) {
      re.push_back(x.real());
      im.push_back(x.imag());
    }
    rec["re"] = re;
    rec["im"] = im;
    arr.push_back(std::move(rec));
  }
  return arr;
}

SpectralField field_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("field JSON must be an array of modes");
  if (j.empty()) throw std::invalid_argument("cannot infer the dimension of an empty field");
  const int d = static_cast<int>(j.front().at("k").size());
  SpectralField out(d);
  for (const auto& rec : j) {
    const auto kc = rec.at("k").get<std::vector<int>>();
    const auto re = rec.at("re").get<std::vector<double>>();
    const auto im = rec.at("im").get<std::vector<double>>();
    if (static_cast<int>(kc.size()) != d || static_cast<int>(re.size()) != d ||
        static_cast<int>(im.size()) != d) {
      throw std::invalid_argument("inconsistent record dimension in field JSON");
    }
    const WaveVector k(kc);
    if (out.contains(k)) {
      throw std::invalid_argument("mode listed twice (directly or via its conjugate)");
    }
    CVector c(d);
    for (int r = 0; r < d; ++r) c[r] = Complex{re[r], im[r]};
    out.set(k, std::move(c));
  }
  return out;
}

}  // namespace kato
