#include "kato/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kato/fields.hpp"
#include "kato/kernel.hpp"
#include "kato/lowerbound.hpp"
#include "kato/parallel.hpp"
#include "kato/reference.hpp"

namespace kato::verify {

namespace {

// Sample counts for the properties whose oracle is a full box scan.
constexpr std::size_t kOracleSampleCap = 2000;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t property, std::size_t i) {
  return splitmix(splitmix(splitmix(seed) ^ property) ^ static_cast<std::uint64_t>(i));
}

struct Outcome {
  double measure = 0.0;
  bool ok = true;
  Json detail;
};

struct Property {
  const char* suite;
  const char* name;
  const char* measure;
  double tolerance;
};

PropertyResult check(const Property& prop, std::size_t samples, unsigned threads,
                     const std::function<Outcome(std::size_t)>& f) {
  std::vector<Outcome> out(samples);
  parallel_for(samples, threads, [&](std::size_t i) { out[i] = f(i); });
  PropertyResult r;
  r.suite = prop.suite;
  r.name = prop.name;
  r.measure = prop.measure;
  r.tolerance = prop.tolerance;
  r.samples = samples;
  r.worst = samples == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& o = out[i];
    if (!(o.measure <= r.worst)) r.worst = o.measure;
    if (!o.ok || !std::isfinite(o.measure)) {
      if (r.violations == 0) {
        r.counterexample = o.detail;
        r.counterexample["sample"] = i;
        r.counterexample["measure"] = o.measure;
      }
      ++r.violations;
    }
  }
  r.passed = r.violations == 0;
  return r;
}

Outcome outcome(double measure, double tolerance, const std::function<Json()>& detail) {
  Outcome o;
  o.measure = measure;
  o.ok = std::isfinite(measure) && measure <= tolerance;
  if (!o.ok) o.detail = detail();
  return o;
}

Json wave_json(const WaveVector& k) {
  Json j = Json::array();
  for (int x : k.components()) j.push_back(x);
  return j;
}

Json vec_json(const std::vector<double>& v) {
  Json j = Json::array();
  for (double x : v) j.push_back(x);
  return j;
}

Json field_json(const SpectralField& v) { return Json::parse(field_to_json(v).dump()); }

std::vector<double> gaussian_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(d);
  for (auto& x : v) x = g(rng);
  return v;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// max |a_k - b_k| over the union of supports, over max |a_k|.
double field_distance(const SpectralField& a, const SpectralField& b) {
  double diff = 0.0;
  double scale = 0.0;
  auto visit = [&](const SpectralField& x) {
    for (const auto& [k, c] : x.canonical_modes()) {
      const CVector ak = a.at(k);
      const CVector bk = b.at(k);
      for (std::size_t r = 0; r < ak.size(); ++r) {
        diff = std::max(diff, std::abs(ak[r] - bk[r]));
        scale = std::max(scale, std::abs(ak[r]));
      }
    }
  };
  visit(a);
  visit(b);
  return diff / std::max(scale, 1e-300);
}

// Multiplies every mode by exp(sigma g) for a standard normal g, keeping
// orthogonality to k.
SpectralField reweight(const SpectralField& v, std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  SpectralField out(v.dim());
  for (const auto& [k, c] : v.canonical_modes()) {
    const double f = std::exp(g(rng));
    CVector s(c);
    for (auto& x : s) x *= f;
    out.set(k, std::move(s));
  }
  return out;
}

lowerbound::TrialParams random_params(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution drop(0.2);
  lowerbound::TrialParams p;
  p.P = g(rng);
  p.Q = drop(rng) ? 0.0 : g(rng);
  for (int i = 0; i < 5; ++i) {
    p.X[i] = drop(rng) ? 0.0 : g(rng);
    p.Y[i] = drop(rng) ? 0.0 : g(rng);
  }
  if (p.P == 0.0 && p.Q == 0.0) p.P = 1.0;
  p.X[0] += 1e-3;
  return p;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

// ---------------------------------------------------------------------------

bool VerifyReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

const PropertyResult* VerifyReport::first_failure() const {
  for (const auto& p : properties) {
    if (!p.passed) return &p;
  }
  return nullptr;
}

Json to_json(const PropertyResult& r) {
  Json j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["measure"] = r.measure;
  j["worst"] = r.worst;
  j["tolerance"] = r.tolerance;
  j["counterexample"] = r.counterexample;
  return j;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["passed"] = r.passed();
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  j["properties"] = props;
  if (const auto* f = r.first_failure()) {
    j["first_failure"] = Json{{"name", f->name}, {"counterexample", f->counterexample}};
  }
  return j;
}

const gfunction::SupSearch& UpperCache::get(double n) {
  auto it = cache_.find(n);
  if (it == cache_.end()) {
    gfunction::SupSearchOptions so;
    so.threads = threads_;
    it = cache_.emplace(n, gfunction::sup_search(gfunction::CutoffConfig::defaults_for(n), so))
             .first;
  }
  return it->second;
}

double UpperCache::g_plus(double n) {
  const auto& s = get(n);
  return gfunction::g_plus_from_bracket(s.asymptotics.config.d, s.bracket.upper);
}

// ---------------------------------------------------------------------------
// Identities

std::vector<PropertyResult> identities(const VerifyOptions& o) {
  const std::size_t N = o.samples;
  const std::size_t capped = std::min(N, kOracleSampleCap);
  std::vector<PropertyResult> out;
  const char* S = "identities";

  {
    const std::vector<gfunction::CutoffConfig> configs{
        {3, 3.0, 6.0, 4}, {3, 4.0, 5.0, 4}, {3, 2.6, 5.0, 4}, {2, 3.0, 4.0, 4}};
    std::vector<gfunction::GammaEvaluator> evals;
    for (const auto& c : configs) evals.emplace_back(c);
    out.push_back(check({S, "resummation", "relative error of Gamma vs the restricted double sum",
                         1e-12},
                        capped, o.threads, [&](std::size_t i) {
                          std::mt19937_64 rng(sample_seed(o.seed, 1, i));
                          const auto& c = configs[i % configs.size()];
                          const int reach = static_cast<int>(2.0 * c.rho) + 2;
                          std::vector<int> kc(c.d);
                          do {
                            for (auto& x : kc) x = uniform_int(rng, -reach, reach);
                          } while (WaveVector(kc).is_zero());
                          const WaveVector k(kc);
                          const double a = evals[i % configs.size()](k);
                          const double b = reference::gamma_restricted_sum(c, k);
                          return outcome(std::fabs(a - b) / std::max(std::fabs(b), 1e-300), 1e-12,
                                         [&] {
                                           return Json{{"d", c.d}, {"n", c.n}, {"rho", c.rho},
                                                       {"k", wave_json(k)}, {"gamma", a},
                                                       {"restricted_sum", b}};
                                         });
                        }));
  }

  out.push_back(check(
      {S, "quadratic_average", "relative error of the lattice quadratic average", 1e-12}, capped,
      o.threads, [&](std::size_t i) {
        std::mt19937_64 rng(sample_seed(o.seed, 2, i));
        const int d = 2 + static_cast<int>(i % 3);
        const double rho = uniform(rng, 1.5, d == 2 ? 30.0 : d == 3 ? 15.0 : 7.0);
        const double a = uniform(rng, 0.0, 6.0);
        const auto k = gaussian_vector(rng, d);
        const int reach = static_cast<int>(std::ceil(rho));
        std::vector<int> h(d, -reach);
        double lhs = 0.0;
        double rhs = 0.0;
        for (;;) {
          double h2 = 0.0;
          double hk = 0.0;
          for (int r = 0; r < d; ++r) {
            h2 += static_cast<double>(h[r]) * h[r];
            hk += h[r] * k[r];
          }
          if (h2 > 0.0 && std::sqrt(h2) < rho) {
            const double phi = std::pow(std::sqrt(h2), -a);
            lhs += hk * hk * phi;
            rhs += h2 * phi;
          }
          int r = d - 1;
          while (r >= 0 && h[r] == reach) h[r--] = -reach;
          if (r < 0) break;
          ++h[r];
        }
        const double k2 = norm(k) * norm(k);
        rhs *= k2 / d;
        return outcome(std::fabs(lhs - rhs) / std::max(rhs, 1e-300), 1e-12, [&] {
          return Json{{"d", d}, {"rho", rho}, {"phi_exponent", a}, {"k", vec_json(k)},
                      {"lhs", lhs}, {"rhs", rhs}};
        });
      }));

  out.push_back(check({S, "leray_idempotence", "max |PPv - Pv| over max |Pv|", 1e-12}, N,
                      o.threads, [&](std::size_t i) {
                        const std::uint64_t s = sample_seed(o.seed, 3, i);
                        const int d = 2 + static_cast<int>(i % 3);
                        const int radius = 1 + static_cast<int>(s % 3);
                        const auto v = reference::random_field(s, d, radius, 1.0);
                        const auto p = leray_project(v);
                        const auto pp = leray_project(p);
                        return outcome(field_distance(pp, p), 1e-12,
                                       [&] { return Json{{"v", field_json(v)}}; });
                      }));

  out.push_back(check(
      {S, "leray_orthogonality",
       "max of |k.(Pv)_k|/(|k||v_k|) and |conj(Pv)_k.(v-Pv)_k|/|v_k|^2", 1e-12},
      N, o.threads, [&](std::size_t i) {
        const std::uint64_t s = sample_seed(o.seed, 4, i);
        const int d = 2 + static_cast<int>(i % 3);
        const int radius = 1 + static_cast<int>(s % 3);
        const auto v = reference::random_field(s, d, radius, 1.0);
        const auto p = leray_project(v);
        double worst = 0.0;
        for (const auto& [k, c] : v.canonical_modes()) {
          const CVector pk = p.at(k);
          Complex kp{0.0, 0.0};
          Complex cross{0.0, 0.0};
          double v2 = 0.0;
          for (int r = 0; r < d; ++r) {
            kp += static_cast<double>(k[r]) * pk[r];
            cross += std::conj(pk[r]) * (c[r] - pk[r]);
            v2 += std::norm(c[r]);
          }
          worst = std::max(worst, std::abs(kp) / (k.norm() * std::sqrt(v2)));
          worst = std::max(worst, std::abs(cross) / v2);
        }
        return outcome(worst, 1e-12, [&] { return Json{{"v", field_json(v)}}; });
      }));

  out.push_back(check(
      {S, "leray_self_adjoint", "|<Pa|b>_n - <a|Pb>_n| over |a|_n |b|_n", 1e-12}, N, o.threads,
      [&](std::size_t i) {
        const std::uint64_t s = sample_seed(o.seed, 5, i);
        std::mt19937_64 rng(s);
        const int d = 2 + static_cast<int>(i % 2);
        const double n = uniform(rng, 0.0, 5.0);
        const auto a = reference::random_field(s, d, 1 + static_cast<int>(s % 3), 1.0);
        const auto b = reference::random_field(s ^ 0x5555, d, 1 + static_cast<int>((s >> 8) % 3), 1.0);
        const double x = sobolev_inner(leray_project(a), b, n);
        const double y = sobolev_inner(a, leray_project(b), n);
        const double scale = sobolev_norm(a, n) * sobolev_norm(b, n);
        return outcome(std::fabs(x - y) / scale, 1e-12, [&] {
          return Json{{"n", n}, {"a", field_json(a)}, {"b", field_json(b)}};
        });
      }));

  out.push_back(check(
      {S, "sobolev_inner", "|<v|w>_n - naive| over |v|_n |w|_n", 1e-12}, N, o.threads,
      [&](std::size_t i) {
        const std::uint64_t s = sample_seed(o.seed, 6, i);
        std::mt19937_64 rng(s);
        const int d = 2 + static_cast<int>(i % 3);
        const double n = uniform(rng, 0.0, 10.0);
        const auto v = reference::random_field(s, d, 1 + static_cast<int>(s % 3), 1.0);
        const auto w = reference::random_field(s ^ 0xabcd, d, 1 + static_cast<int>((s >> 8) % 3), 1.0);
        const double a = sobolev_inner(v, w, n);
        const double b = reference::sobolev_inner_naive(v, w, n);
        const double scale = sobolev_norm(v, n) * sobolev_norm(w, n);
        return outcome(std::fabs(a - b) / scale, 1e-12, [&] {
          return Json{{"n", n}, {"v", field_json(v)}, {"w", field_json(w)}};
        });
      }));

  out.push_back(check(
      {S, "advection_convolution", "max coefficient difference vs the naive convolution, relative",
       1e-12},
      capped, o.threads, [&](std::size_t i) {
        const std::uint64_t s = sample_seed(o.seed, 7, i);
        const int d = 2 + static_cast<int>(i % 2);
        const int rmax = d == 2 ? 3 : 2;
        const auto v = reference::random_field(s, d, 1 + static_cast<int>(s % rmax), 1.0);
        const auto w = reference::random_field(s ^ 0x1234, d, 1 + static_cast<int>((s >> 8) % rmax), 1.0);
        const auto a = advect(v, w);
        const auto b = reference::advect_naive(v, w);
        return outcome(field_distance(a, b), 1e-12,
                       [&] { return Json{{"v", field_json(v)}, {"w", field_json(w)}}; });
      }));

  out.push_back(check(
      {S, "trilinear_form", "|pair sum - <v.grad w|w>_n| over |v.grad w|_n |w|_n", 1e-12}, N,
      o.threads, [&](std::size_t i) {
        const std::uint64_t s = sample_seed(o.seed, 8, i);
        std::mt19937_64 rng(s);
        const double n = uniform(rng, 0.0, 10.0);
        const auto v = random_divfree_field(s, 3, 1 + static_cast<int>(s % 2), 1.0);
        const auto w = reference::random_field(s ^ 0x77, 3, 1 + static_cast<int>((s >> 8) % 2), 1.0);
        const double a = trilinear(v, w, n);
        const auto vw = advect(v, w);
        const double b = sobolev_inner(vw, w, n);
        const double scale = sobolev_norm(vw, n) * sobolev_norm(w, n);
        return outcome(std::fabs(a - b) / std::max(scale, 1e-300), 1e-12, [&] {
          return Json{{"n", n}, {"v", field_json(v)}, {"w", field_json(w)}, {"pair_sum", a},
                      {"inner", b}};
        });
      }));

  out.push_back(check(
      {S, "planar_closed_form",
       "max relative difference of closed-form norms and |P| (over N_v N_w^2) vs the generic sums",
       1e-12},
      N, o.threads, [&](std::size_t i) {
        std::mt19937_64 rng(sample_seed(o.seed, 9, i));
        const auto p = random_params(rng);
        const double n = (i % 2 == 0) ? kSuiteOrders[(i / 2) % kSuiteOrders.size()]
                                      : uniform(rng, 2.6, 10.0);
        const auto [v, w] = lowerbound::planar_family(p);
        const double nv = lowerbound::n_norm(v, n);
        const double nw = lowerbound::n_norm(w, n);
        const double cv = lowerbound::planar_norm2_v(p);
        const double cw = lowerbound::planar_norm2_w(p, n);
        const double gp = lowerbound::p_form(v, w, n).real();
        const double cp = lowerbound::planar_p_form(p, n);
        double worst = std::fabs(cv - nv * nv) / (nv * nv);
        worst = std::max(worst, std::fabs(cw - nw * nw) / (nw * nw));
        worst = std::max(worst, std::fabs(cp - gp) / (nv * nw * nw));
        return outcome(worst, 1e-12, [&] {
          return Json{{"n", n},
                      {"params", Json::parse(lowerbound::params_to_json(p).dump())},
                      {"closed_p", cp},
                      {"generic_p", gp}};
        });
      }));

  {
    const gfunction::CutoffConfig c{3, 4.0, 10.0, 6};
    const gfunction::GammaEvaluator eval(c);
    out.push_back(check(
        {S, "gamma_symmetry", "relative change of Gamma under signed permutations", 1e-12}, capped,
        o.threads, [&](std::size_t i) {
          std::mt19937_64 rng(sample_seed(o.seed, 10, i));
          std::vector<int> kc(3);
          do {
            for (auto& x : kc) x = uniform_int(rng, -25, 25);
          } while (WaveVector(kc).is_zero());
          std::array<int, 3> perm{0, 1, 2};
          std::shuffle(perm.begin(), perm.end(), rng);
          std::vector<int> sc(3);
          for (int r = 0; r < 3; ++r) sc[r] = (uniform_int(rng, 0, 1) ? 1 : -1) * kc[perm[r]];
          const WaveVector k(kc);
          const WaveVector sk(sc);
          const double a = eval(k);
          const double b = eval(sk);
          const double cval = eval(gfunction::canonicalize(k));
          const double m = std::max(std::fabs(a - b), std::fabs(a - cval)) / a;
          return outcome(m, 1e-12, [&] {
            return Json{{"k", wave_json(k)}, {"image", wave_json(sk)}, {"gamma_k", a},
                        {"gamma_image", b}, {"gamma_canonical", cval}};
          });
        }));
  }

  out.push_back(check({S, "l2_orthogonality", "|<v.grad w|w>_0| (absolute)", 1e-10}, N,
                      o.threads, [&](std::size_t i) {
                        const std::uint64_t s = sample_seed(o.seed, 11, i);
                        const auto v = random_divfree_field(s, 3, 1 + static_cast<int>(s % 3), 1.0);
                        const auto w = reference::random_field(s ^ 0x99, 3,
                                                               1 + static_cast<int>((s >> 8) % 3), 1.0);
                        const double t = trilinear(v, w, 0.0);
                        return outcome(std::fabs(t), 1e-10, [&] {
                          return Json{{"v", field_json(v)}, {"w", field_json(w)}, {"value", t}};
                        });
                      }));
  return out;
}

// ---------------------------------------------------------------------------
// Inequalities

std::vector<PropertyResult> inequalities(const VerifyOptions& o, UpperCache& cache) {
  const std::size_t N = o.samples;
  std::vector<PropertyResult> out;
  const char* S = "inequalities";

  out.push_back(check(
      {S, "angle_bound", "(|q.z| - |p^q||z|/|p|) over |q||z|", 1e-12}, N, o.threads,
      [&](std::size_t i) {
        std::mt19937_64 rng(sample_seed(o.seed, 21, i));
        const int d = 2 + static_cast<int>(i % 3);
        auto p = gaussian_vector(rng, d);
        auto q = gaussian_vector(rng, d);
        const double sp = std::pow(10.0, uniform(rng, -3.0, 3.0));
        const double sq = std::pow(10.0, uniform(rng, -3.0, 3.0));
        for (auto& x : p) x *= sp;
        for (auto& x : q) x *= sq;
        auto zr = gaussian_vector(rng, d);
        auto zi = gaussian_vector(rng, d);
        double pp = 0.0, pr = 0.0, pi = 0.0;
        for (int r = 0; r < d; ++r) {
          pp += p[r] * p[r];
          pr += p[r] * zr[r];
          pi += p[r] * zi[r];
        }
        for (int r = 0; r < d; ++r) {
          zr[r] -= pr / pp * p[r];
          zi[r] -= pi / pp * p[r];
        }
        Complex qz{0.0, 0.0};
        double z2 = 0.0;
        for (int r = 0; r < d; ++r) {
          qz += q[r] * Complex{zr[r], zi[r]};
          z2 += zr[r] * zr[r] + zi[r] * zi[r];
        }
        const double lhs = std::abs(qz);
        const double rhs = wedge_norm(p, q) / norm(p) * std::sqrt(z2);
        return outcome((lhs - rhs) / (norm(q) * std::sqrt(z2)), 1e-12, [&] {
          return Json{{"p", vec_json(p)}, {"q", vec_json(q)}, {"z_re", vec_json(zr)},
                      {"z_im", vec_json(zi)}, {"lhs", lhs}, {"rhs", rhs}};
        });
      }));

  {
    std::vector<double> cn;
    for (double n : kSuiteOrders) {
      cn.push_back(gfunction::round_outward_up(kernel::c_max(n, o.threads).max_value));
    }
    out.push_back(check(
        {S, "difference_kernel_bound",
         "|p^q|^2 (|p+q|^n - |q|^n)^2 over (C_n/2)|p|^4|q|^2(|p|^{2n-2}+|q|^{2n-2})", 1.0},
        N, o.threads, [&](std::size_t i) {
          std::mt19937_64 rng(sample_seed(o.seed, 22, i));
          const std::size_t which = i % kSuiteOrders.size();
          const double n = kSuiteOrders[which];
          const int d = 2 + static_cast<int>((i / kSuiteOrders.size()) % 3);
          auto p = gaussian_vector(rng, d);
          const auto q = gaussian_vector(rng, d);
          const double sp = std::pow(10.0, uniform(rng, -2.0, 2.0));
          for (auto& x : p) x *= sp;
          std::vector<double> pq(d);
          for (int r = 0; r < d; ++r) pq[r] = p[r] + q[r];
          const double a = norm(p), b = norm(q), c = norm(pq);
          const double w = wedge_norm(p, q);
          const double diff = std::pow(c, n) - std::pow(b, n);
          const double lhs = w * w * diff * diff;
          const double rhs = 0.5 * cn[which] * std::pow(a, 4) * b * b *
                             (std::pow(a, 2 * n - 2) + std::pow(b, 2 * n - 2));
          return outcome(lhs / rhs, 1.0, [&] {
            return Json{{"n", n}, {"C_n", cn[which]}, {"p", vec_json(p)}, {"q", vec_json(q)},
                        {"lhs", lhs}, {"rhs", rhs}};
          });
        }));
  }

  {
    constexpr std::int64_t r2max2 = 60 * 60;
    constexpr std::int64_t r2max3 = 40 * 40;
    const auto counts2 = reference::lattice_norm2_counts(2, r2max2);
    const auto counts3 = reference::lattice_norm2_counts(3, r2max3);
    out.push_back(check(
        {S, "tail_sum_dominance", "partial lattice sum over the closed-form tail bound", 1.0}, N,
        o.threads, [&](std::size_t i) {
          std::mt19937_64 rng(sample_seed(o.seed, 23, i));
          const int d = 2 + static_cast<int>(i % 2);
          const auto& counts = d == 2 ? counts2 : counts3;
          const double nu = uniform(rng, d + 0.05, d + 6.0);
          const double rho = uniform(rng, 2.0 * std::sqrt(d) + 0.1, 2.0 * std::sqrt(d) + 10.0);
          const double rho2 = rho * rho;
          double partial = 0.0;
          for (const auto& [r2, m] : counts) {
            if (static_cast<double>(r2) >= rho2) {
              partial += static_cast<double>(m) * std::pow(static_cast<double>(r2), -0.5 * nu);
            }
          }
          const double bound = gfunction::tail_sum_bound(d, nu, rho);
          return outcome(partial / bound, 1.0, [&] {
            return Json{{"d", d}, {"nu", nu}, {"rho", rho}, {"partial", partial},
                        {"bound", bound}};
          });
        }));
  }

  {
    std::vector<const gfunction::SupSearch*> searches;
    std::vector<gfunction::GammaEvaluator> evals;
    for (double n : kSuiteOrders) {
      searches.push_back(&cache.get(n));
      evals.emplace_back(searches.back()->asymptotics.config);
    }
    out.push_back(check(
        {S, "tail_sandwich",
         "largest relative violation of lower <= Gamma(k) <= bound at k <= bound at |k|", 1e-12},
        N, o.threads, [&](std::size_t i) {
          std::mt19937_64 rng(sample_seed(o.seed, 24, i));
          const std::size_t which = i % kSuiteOrders.size();
          const auto& data = searches[which]->asymptotics;
          const double rho = data.config.rho;
          std::vector<int> kc(3);
          WaveVector k;
          do {
            const auto u = gaussian_vector(rng, 3);
            const double mag = uniform(rng, 2.0 * rho, 6.0 * rho);
            const double un = norm(u);
            for (int r = 0; r < 3; ++r) kc[r] = static_cast<int>(std::lround(u[r] / un * mag));
            k = WaveVector(kc);
          } while (k.norm() < 2.0 * rho);
          const double g = evals[which](k);
          const double lo = gfunction::tail_lower(data, k.norm());
          const double hi = gfunction::tail_upper_at(data, k);
          const double hi2 = gfunction::tail_upper(data, k.norm());
          const double m = std::max({(lo - g) / g, (g - hi) / g, (hi - hi2) / g});
          return outcome(m, 1e-12, [&] {
            return Json{{"n", data.config.n}, {"k", wave_json(k)}, {"gamma", g}, {"lower", lo},
                        {"upper_at_k", hi}, {"upper", hi2}};
          });
        }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kato inequality and lower/upper consistency

std::vector<PropertyResult> kato(const VerifyOptions& o, UpperCache& cache) {
  const std::size_t N = o.samples;
  std::vector<PropertyResult> out;
  const char* S = "kato";
  std::vector<double> gp;
  for (double n : kSuiteOrders) gp.push_back(cache.g_plus(n));
  const std::size_t orders = kSuiteOrders.size();

  out.push_back(check(
      {S, "kato_inequality", "|<v.grad w|w>_n| over G+_n |v|_n |w|_n^2", 1.0}, N * orders,
      o.threads, [&](std::size_t i) {
        const std::uint64_t s = sample_seed(o.seed, 31, i);
        std::mt19937_64 rng(s);
        const std::size_t which = i % orders;
        const double n = kSuiteOrders[which];
        const auto v = reweight(random_divfree_field(s, 3, uniform_int(rng, 1, 3), 1.0), rng, 1.5);
        const auto w =
            reweight(random_divfree_field(s ^ 0xfeed, 3, uniform_int(rng, 1, 3), 1.0), rng, 1.5);
        const double t = trilinear(v, w, n);
        const double nv = sobolev_norm(v, n);
        const double nw = sobolev_norm(w, n);
        return outcome(std::fabs(t) / (gp[which] * nv * nw * nw), 1.0, [&] {
          return Json{{"n", n}, {"g_plus", gp[which]}, {"v", field_json(v)},
                      {"w", field_json(w)}, {"trilinear", t}};
        });
      }));

  out.push_back(check(
      {S, "lower_below_upper", "g_lower of a planar trial family over G+_n", 1.0}, N * orders,
      o.threads, [&](std::size_t i) {
        std::mt19937_64 rng(sample_seed(o.seed, 32, i));
        const std::size_t which = i % orders;
        const double n = kSuiteOrders[which];
        const auto p = i < orders ? lowerbound::known_optimum_params(n) : random_params(rng);
        const auto [v, w] = lowerbound::planar_family(p);
        const double g = std::max(lowerbound::g_lower(v, w, n), lowerbound::planar_g_lower(p, n));
        return outcome(g / gp[which], 1.0, [&] {
          return Json{{"n", n}, {"g_plus", gp[which]}, {"g_lower", g},
                      {"params", Json::parse(lowerbound::params_to_json(p).dump())}};
        });
      }));
  return out;
}

VerifyReport run(const VerifyOptions& options) {
  const auto& s = options.suite;
  if (s != "identities" && s != "inequalities" && s != "kato" && s != "all") {
    throw std::invalid_argument("unknown suite '" + s + "'");
  }
  VerifyReport report;
  UpperCache cache(options.threads);
  auto append = [&](std::vector<PropertyResult> v) {
    for (auto& p : v) report.properties.push_back(std::move(p));
  };
  if (s == "identities" || s == "all") append(identities(options));
  if (s == "inequalities" || s == "all") append(inequalities(options, cache));
  if (s == "kato" || s == "all") append(kato(options, cache));
  return report;
}

}  // namespace kato::verify
