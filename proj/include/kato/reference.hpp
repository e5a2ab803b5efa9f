#pragma once

// Deliberately naive evaluations used as oracles by the test suites and by
// `kato_bounds verify`. None of these share loops with the production code.

#include <cstdint>
#include <map>

#include "kato/fields.hpp"
#include "kato/gfunction.hpp"

namespace kato::reference {

/// Gamma_n(k) as the restricted double sum over h != 0, k with |h| < rho or
/// |k-h| < rho, each summand evaluated with std::pow.
double gamma_restricted_sum(const gfunction::CutoffConfig& config, const WaveVector& k);

/// The full lattice function G_n(k) truncated to 0 < |h| <= radius, h != k.
double g_truncated(int d, double n, const WaveVector& k, double radius);

/// Multiplicity of every value of |h|^2 over 0 < |h|^2 <= r2max, by scanning
/// the enclosing box.
std::map<std::int64_t, std::size_t> lattice_norm2_counts(int d, std::int64_t r2max);

/// <v|w>_n summed over the full support with complex arithmetic.
double sobolev_inner_naive(const SpectralField& v, const SpectralField& w, double n);

/// (v . grad w)_k for every k in a bounding box, by looking up w_{k-h} for
/// each h in the support of v.
SpectralField advect_naive(const SpectralField& v, const SpectralField& w);

/// Random Hermitian field on 0 < |k| <= radius, not projected.
SpectralField random_field(std::uint64_t seed, int d, int radius, double amplitude);

}  // namespace kato::reference
