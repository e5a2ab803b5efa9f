#include "kato/rounding.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kato {

namespace {

double scale_for(double x, int digits) {
  const double e = std::floor(std::log10(std::fabs(x)));
  return std::pow(10.0, digits - 1 - e);
}

}  // namespace

double round_up_sig(double x, int digits) {
  if (digits < 1) throw std::invalid_argument("need at least one significant digit");
  if (x == 0.0 || !std::isfinite(x)) return x;
  if (x < 0.0) return -round_down_sig(-x, digits);
  const double s = scale_for(x, digits);
  double r = std::ceil(x * s) / s;
  if (r < x) r = (std::ceil(x * s) + 1.0) / s;
  return r;
}

double round_down_sig(double x, int digits) {
  if (digits < 1) throw std::invalid_argument("need at least one significant digit");
  if (x == 0.0 || !std::isfinite(x)) return x;
  if (x < 0.0) return -round_up_sig(-x, digits);
  const double s = scale_for(x, digits);
  double r = std::floor(x * s) / s;
  if (r > x) r = (std::floor(x * s) - 1.0) / s;
  return r;
}

std::string format_sig(double x, int digits) {
  if (x == 0.0) return "0";
  const int e = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  const int decimals = digits - 1 - e > 0 ? digits - 1 - e : 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

}  // namespace kato
