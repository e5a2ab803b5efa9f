#pragma once

// Lower bounds for the sharp constant from trial families: the ratio
// (2 pi)^{-d/2} |P_n(v, w)| / (N_n(v) N_n(w)^2) for finite Hermitian,
// divergence-free coefficient families v, w.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kato/fields.hpp"

namespace kato::lowerbound {

/// Finite symmetric support with Hermitian, divergence-free coefficients.
class TrialFamily {
 public:
  /// Throws std::invalid_argument if some coefficient is not orthogonal to
  /// its wave vector.
  explicit TrialFamily(SpectralField field);

  [[nodiscard]] int dim() const noexcept { return field_.dim(); }
  [[nodiscard]] const SpectralField& field() const noexcept { return field_; }
  [[nodiscard]] bool empty() const noexcept { return field_.empty(); }
  [[nodiscard]] std::size_t support_size() const noexcept { return field_.support_size(); }

 private:
  SpectralField field_;
};

/// N_n = (sum_k |k|^{2n} |u_k|^2)^{1/2}.
double n_norm(const TrialFamily& family, double n);

/// -i sum_{h in V, l in W, h+l in W} |h+l|^{2n} (conj(v_h) . l)(conj(w_l) . w_{h+l}).
/// Throws std::logic_error if the imaginary part is not negligible.
Complex p_form(const TrialFamily& v, const TrialFamily& w, double n);

/// (2 pi)^{-d/2} |P_n| / (N_n(v) N_n(w)^2). Throws std::invalid_argument for
/// an empty or zero family.
double g_lower(const TrialFamily& v, const TrialFamily& w, double n);

/// The in-plane wave vectors kappa of the planar family, in storage order:
/// (0,1,0), (1,1,0), (1,-1,0), (2,1,0), (2,-1,0).
const std::array<WaveVector, 5>& planar_wave_vectors();

/// v_{+-(1,0,0)} = (0, P +- iQ, 0); w_{+-kappa} = (0, 0, X_kappa +- i Y_kappa).
struct TrialParams {
  double P = 1.0;
  double Q = 0.0;
  std::array<double, 5> X{};
  std::array<double, 5> Y{};

  friend bool operator==(const TrialParams&, const TrialParams&) = default;
};

nlohmann::json params_to_json(const TrialParams& p);
/// Missing X/Y entries default to 0. Throws on unknown keys.
TrialParams params_from_json(const nlohmann::json& j);

/// The near-optimal parameters reported for n = 3, 4, 5, 10 in d = 3.
/// Throws std::out_of_range for other n.
TrialParams known_optimum_params(double n);

/// Assembles the d = 3 planar family (v with 2 support points, w with up
/// to 10). Throws std::invalid_argument if (P,Q) = 0 or all (X,Y) = 0.
std::pair<TrialFamily, TrialFamily> planar_family(const TrialParams& params);

/// Closed forms for the planar family.
double planar_norm2_v(const TrialParams& p);
double planar_norm2_w(const TrialParams& p, double n);
double planar_p_form(const TrialParams& p, double n);
/// g_lower of the planar family through the closed forms; 0 for a zero family.
double planar_g_lower(const TrialParams& p, double n);

struct LowerOptions {
  /// Perturbed restarts after the seeds have been refined; 0 evaluates the
  /// seeds only.
  int restarts = 20;
  std::uint64_t seed = 1;
  double perturbation = 0.5;
  double initial_step = 0.1;
  double tolerance = 1e-9;
  int max_iterations = 20000;
  unsigned threads = 0;
  /// Called as (phase, iteration, value); phase is "seed<i>", "restart<i>"
  /// or "polish".
  std::function<void(const std::string&, int, double)> trace;
};

struct LowerResult {
  double value = 0.0;
  TrialParams params;
  std::vector<std::string> warnings;
};

/// Maximizes g_lower over the planar family with P and X_(0,1,0) pinned to 1.
/// The returned value is evaluated on the assembled families and is a valid
/// lower bound whatever the optimizer did.
LowerResult optimize_lower(double n, const std::vector<TrialParams>& seeds,
                           const LowerOptions& options = {});

}  // namespace kato::lowerbound
