#include "kato/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kato/optimize.hpp"
#include "kato/parallel.hpp"
#include "kato/summation.hpp"

namespace kato::lowerbound {

TrialFamily::TrialFamily(SpectralField field) : field_(std::move(field)) {
  if (!field_.is_divergence_free(1e-12)) {
    throw std::invalid_argument("trial family coefficients must satisfy k . u_k = 0");
  }
}

double n_norm(const TrialFamily& family, double n) { return sobolev_norm(family.field(), n); }

Complex p_form(const TrialFamily& v, const TrialFamily& w, double n) {
  if (v.dim() != w.dim()) throw std::invalid_argument("trial families differ in dimension");
  const int d = v.dim();
  const auto ws = w.field().full_support();
  // Pairs (l, k) in W x W with h = k - l in V.
  CompensatedSum re;
  CompensatedSum im;
  double scale = 0.0;
  for (const auto& [l, wl] : ws) {
    for (const auto& [k, wk] : ws) {
      const WaveVector h = k - l;
      if (h.is_zero() || !v.field().contains(h)) continue;
      const CVector vh = v.field().at(h);
      Complex a{0.0, 0.0};
      Complex b{0.0, 0.0};
      for (int r = 0; r < d; ++r) {
        a += std::conj(vh[r]) * static_cast<double>(l[r]);
        b += std::conj(wl[r]) * wk[r];
      }
      const double weight = std::exp(n * std::log(static_cast<double>(k.norm2())));
      const Complex term = Complex{0.0, -1.0} * weight * a * b;
      re += term.real();
      im += term.imag();
      scale += std::abs(term);
    }
  }
  if (std::fabs(im.value()) > 1e-10 * std::max(scale, 1e-300)) {
    throw std::logic_error("P_n has a non-negligible imaginary part");
  }
  return {re.value(), im.value()};
}

double g_lower(const TrialFamily& v, const TrialFamily& w, double n) {
  const double nv = n_norm(v, n);
  const double nw = n_norm(w, n);
  if (v.empty() || w.empty() || nv == 0.0 || nw == 0.0) {
    throw std::invalid_argument("g_lower needs two nonzero trial families");
  }
  const double pref = std::pow(2.0 * std::numbers::pi, -0.5 * v.dim());
  return pref * std::abs(p_form(v, w, n)) / (nv * nw * nw);
}

// ---------------------------------------------------------------------------
// Planar family

namespace {

constexpr std::array<const char*, 5> kKeys = {"0,1,0", "1,1,0", "1,-1,0", "2,1,0", "2,-1,0"};
enum : std::size_t { k010 = 0, k110 = 1, k1m10 = 2, k210 = 3, k2m10 = 4 };

}  // namespace

const std::array<WaveVector, 5>& planar_wave_vectors() {
  static const std::array<WaveVector, 5> kappas = {
      WaveVector{0, 1, 0}, WaveVector{1, 1, 0}, WaveVector{1, -1, 0}, WaveVector{2, 1, 0},
      WaveVector{2, -1, 0}};
  return kappas;
}

nlohmann::json params_to_json(const TrialParams& p) {
  nlohmann::ordered_json j;
  j["P"] = p.P;
  j["Q"] = p.Q;
  nlohmann::ordered_json x;
  nlohmann::ordered_json y;
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    x[kKeys[i]] = p.X[i];
    y[kKeys[i]] = p.Y[i];
  }
  j["X"] = x;
  j["Y"] = y;
  return nlohmann::json::parse(j.dump());
}

TrialParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("trial parameters must be a JSON object");
  TrialParams p;
  p.P = j.value("P", 0.0);
  p.Q = j.value("Q", 0.0);
  auto read = [&](const char* name, std::array<double, 5>& out) {
    if (!j.contains(name)) return;
    const auto& obj = j.at(name);
    if (!obj.is_object()) throw std::invalid_argument(std::string(name) + " must be an object");
    for (const auto& [key, value] : obj.items()) {
      const auto it = std::find(kKeys.begin(), kKeys.end(), key);
      if (it == kKeys.end()) throw std::invalid_argument("unknown wave vector key " + key);
      out[static_cast<std::size_t>(it - kKeys.begin())] = value.get<double>();
    }
  };
  for (const auto& [key, value] : j.items()) {
    if (key != "P" && key != "Q" && key != "X" && key != "Y") {
      throw std::invalid_argument("unknown trial parameter " + key);
    }
  }
  read("X", p.X);
  read("Y", p.Y);
  return p;
}

TrialParams known_optimum_params(double n) {
  TrialParams p;
  p.P = 1.0;
  p.X[k010] = 1.0;
  auto fill = [&](double q, double y010, double x1m10, double y1m10, double x110, double y110,
                  double x2m10, double y2m10, double x210, double y210) {
    p.Q = q;
    p.Y[k010] = y010;
    p.X[k1m10] = x1m10;
    p.Y[k1m10] = y1m10;
    p.X[k110] = x110;
    p.Y[k110] = y110;
    p.X[k2m10] = x2m10;
    p.Y[k2m10] = y2m10;
    p.X[k210] = x210;
    p.Y[k210] = y210;
  };
  if (n == 3.0) {
    fill(-7.0796, -5.8246, -0.063853, -2.1489, 0.65657, -2.0472, -0.043617, 0.39270, 0.17210,
         -0.35566);
  } else if (n == 4.0) {
    fill(-7.0768, -2.7437, -0.16319, -0.76896, 0.36987, -0.69363, 0.0065160, 0.094627, 0.055900,
         -0.076628);
  } else if (n == 5.0) {
    fill(-7.0768, -2.7618, -0.12151, -0.57858, 0.27707, -0.52225, 0.0031227, 0.046786, 0.027554,
         -0.037939);
  } else if (n == 10.0) {
    fill(-7.0769, -2.8038, -0.031443, -0.15337, 0.072707, -0.13865, 8.9903e-5, 0.0014520,
         8.4924e-4, -0.0011812);
  } else {
    throw std::out_of_range("no reference parameters for this n");
  }
  return p;
}

std::pair<TrialFamily, TrialFamily> planar_family(const TrialParams& params) {
  if (params.P == 0.0 && params.Q == 0.0) throw std::invalid_argument("(P, Q) must be nonzero");
  bool any = false;
  for (std::size_t i = 0; i < 5; ++i) any = any || params.X[i] != 0.0 || params.Y[i] != 0.0;
  if (!any) throw std::invalid_argument("the (X, Y) parameters must not all vanish");
  SpectralField v(3);
  v.set({1, 0, 0}, {0.0, Complex(params.P, params.Q), 0.0});
  SpectralField w(3);
  const auto& kappas = planar_wave_vectors();
  for (std::size_t i = 0; i < 5; ++i) {
    w.set(kappas[i], {0.0, 0.0, Complex(params.X[i], params.Y[i])});
  }
  return {TrialFamily(std::move(v)), TrialFamily(std::move(w))};
}

double planar_norm2_v(const TrialParams& p) { return 2.0 * (p.P * p.P + p.Q * p.Q); }

double planar_norm2_w(const TrialParams& p, double n) {
  auto sq = [&](std::size_t i) { return p.X[i] * p.X[i] + p.Y[i] * p.Y[i]; };
  return 2.0 * sq(k010) + std::pow(2.0, n + 1.0) * (sq(k110) + sq(k1m10)) +
         2.0 * std::pow(5.0, n) * (sq(k210) + sq(k2m10));
}

double planar_p_form(const TrialParams& p, double n) {
  const double P = p.P;
  const double Q = p.Q;
  const double X0 = p.X[k010], Y0 = p.Y[k010];
  const double Xp = p.X[k110], Yp = p.Y[k110];
  const double Xm = p.X[k1m10], Ym = p.Y[k1m10];
  const double Xpp = p.X[k210], Ypp = p.Y[k210];
  const double Xmm = p.X[k2m10], Ymm = p.Y[k2m10];
  const double g1 = -Q * X0 * Xm + Q * X0 * Xp + P * Xm * Y0 + P * Xp * Y0 + P * X0 * Ym +
                    Q * Y0 * Ym - P * X0 * Yp + Q * Y0 * Yp;
  const double g2 = Q * X0 * Xm - Q * X0 * Xp - Q * Xm * Xmm + Q * Xp * Xpp - P * Xm * Y0 -
                    P * Xp * Y0 - P * X0 * Ym - P * Xmm * Ym - Q * Y0 * Ym + P * X0 * Yp +
                    P * Xpp * Yp - Q * Y0 * Yp + P * Xm * Ymm - Q * Ym * Ymm - P * Xp * Ypp +
                    Q * Yp * Ypp;
  const double g3 = Q * Xm * Xmm - Q * Xp * Xpp + P * Xmm * Ym - P * Xpp * Yp - P * Xm * Ymm +
                    Q * Ym * Ymm + P * Xp * Ypp - Q * Yp * Ypp;
  return 2.0 * g1 + std::pow(2.0, n + 1.0) * g2 + 2.0 * std::pow(5.0, n) * g3;
}

double planar_g_lower(const TrialParams& p, double n) {
  const double nv2 = planar_norm2_v(p);
  const double nw2 = planar_norm2_w(p, n);
  if (nv2 == 0.0 || nw2 == 0.0) return 0.0;
  return std::pow(2.0 * std::numbers::pi, -1.5) * std::fabs(planar_p_form(p, n)) /
         (std::sqrt(nv2) * nw2);
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

// Free coordinates: Q, Y_(0,1,0), then (X, Y) for the other four kappas.
constexpr std::size_t kFree = 10;

std::vector<double> to_free(const TrialParams& p) {
  std::vector<double> x{p.Q, p.Y[k010]};
  for (std::size_t i = 1; i < 5; ++i) {
    x.push_back(p.X[i]);
    x.push_back(p.Y[i]);
  }
  return x;
}

TrialParams from_free(std::span<const double> x) {
  TrialParams p;
  p.P = 1.0;
  p.Q = x[0];
  p.X[k010] = 1.0;
  p.Y[k010] = x[1];
  for (std::size_t i = 1; i < 5; ++i) {
    p.X[i] = x[2 * i];
    p.Y[i] = x[2 * i + 1];
  }
  return p;
}

// Rescales v and w so that P = X_(0,1,0) = 1 where possible; the ratio is
// invariant under both scalings.
TrialParams normalized(TrialParams p) {
  if (p.P != 0.0) {
    p.Q /= p.P;
    p.P = 1.0;
  } else {
    p.P = 1.0;
  }
  const double x0 = p.X[k010];
  if (x0 != 0.0) {
    for (std::size_t i = 0; i < 5; ++i) {
      p.X[i] /= x0;
      p.Y[i] /= x0;
    }
  }
  p.X[k010] = 1.0;
  return p;
}

double evaluate_generic(const TrialParams& p, double n) {
  try {
    const auto [v, w] = planar_family(p);
    return g_lower(v, w, n);
  } catch (const std::invalid_argument&) {
    return 0.0;
  }
}

struct Candidate {
  double value = 0.0;
  std::vector<double> x;
};

Candidate ascend(double n, std::vector<double> start, const LowerOptions& options,
                 const std::string& phase) {
  optimize::NelderMeadOptions nm;
  nm.tolerance = options.tolerance;
  nm.max_iterations = options.max_iterations;
  const std::vector<double> steps(kFree, options.initial_step);
  auto f = [n](std::span<const double> x) { return -planar_g_lower(from_free(x), n); };
  optimize::NelderMeadTrace trace;
  if (options.trace) {
    trace = [&](int iter, double value, std::span<const double>) {
      options.trace(phase, iter, -value);
    };
  }
  const auto r = optimize::nelder_mead_minimize(f, std::move(start), steps, nm, trace);
  return {-r.value, r.x};
}

}  // namespace

LowerResult optimize_lower(double n, const std::vector<TrialParams>& seeds,
                           const LowerOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("optimize_lower needs at least one seed");
  LowerResult result;

  // Seeds as given.
  result.params = seeds.front();
  result.value = evaluate_generic(seeds.front(), n);
  for (std::size_t i = 1; i < seeds.size(); ++i) {
    const double v = evaluate_generic(seeds[i], n);
    if (v > result.value) {
      result.value = v;
      result.params = seeds[i];
    }
  }

  if (options.restarts > 0) {
    Candidate best{-1.0, {}};
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      auto c = ascend(n, to_free(normalized(seeds[i])), options, "seed" + std::to_string(i));
      if (c.value > best.value) best = std::move(c);
    }
    const std::vector<double> centre = best.x;
    std::vector<Candidate> restarts(static_cast<std::size_t>(options.restarts));
    // Each restart draws from its own stream, so the outcome does not depend
    // on the thread count; a trace forces sequential execution for a
    // readable log.
    const unsigned threads = options.trace ? 1U : options.threads;
    parallel_for(restarts.size(), threads, [&](std::size_t r) {
      std::mt19937_64 rng(options.seed * 1000003ULL + r);
      std::normal_distribution<double> gauss(0.0, options.perturbation);
      std::vector<double> x = centre;
      for (auto& xi : x) xi += gauss(rng);
      restarts[r] = ascend(n, std::move(x), options, "restart" + std::to_string(r));
    });
    for (auto& c : restarts) {
      if (c.value > best.value) best = std::move(c);
    }
    best = ascend(n, best.x, options, "polish");
    const TrialParams p = from_free(best.x);
    const double value = evaluate_generic(p, n);
    if (value > result.value) {
      result.value = value;
      result.params = p;
    }
  }
  if (result.value == 0.0) {
    result.warnings.push_back(
        "every evaluated trial family gives P_n = 0; the lower bound is trivial");
  }
  return result;
}

}  // namespace kato::lowerbound
