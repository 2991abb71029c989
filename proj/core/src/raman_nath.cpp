#include "latdiff/raman_nath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "latdiff/error.hpp"

namespace latdiff {

namespace {

constexpr double kRescaleThreshold = 1e250;

RamanNathValidity validity_from_ratio(double ratio) {
  return {ratio <= kRamanNathValidityFraction, ratio};
}

}  // namespace

double RamanNathPrediction::at(int n) const {
  if (n < -n_max || n > n_max) return 0.0;
  return populations[static_cast<std::size_t>(n + n_max)];
}

std::vector<double> bessel_j_sequence(int n_max, double x) {
  if (n_max < 0) throw Error("bessel_j_sequence: n_max must be >= 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw Error("bessel_j_sequence: argument must be >= 0");

  std::vector<double> j(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (x < 1e-8) {
    // Leading series terms; the recurrence ratio 2k/x would overflow.
    double term = 1.0;
    for (int n = 0; n <= n_max; ++n) {
      j[static_cast<std::size_t>(n)] = term;
      term *= 0.5 * x / (n + 1);
    }
    j[0] = 1.0 - 0.25 * x * x;
    return j;
  }

  // Start well above both n_max and x so the recurrence settles onto the
  // minimal (decaying) solution before reaching the requested orders.
  const int top = static_cast<int>(std::max<double>(n_max, x)) + 30 +
                  static_cast<int>(std::sqrt(40.0 * std::max<double>(n_max, x)));
  const int start = top + (top % 2);  // even, so the normalization sum is aligned

  double next = 0.0;     // J_{k+1}
  double current = 1e-300;  // J_k
  double norm_sum = 0.0;
  for (int k = start; k > 0; --k) {
    const double previous = 2.0 * k / x * current - next;  // J_{k-1}
    next = current;
    current = previous;
    if (k - 1 <= n_max) j[static_cast<std::size_t>(k - 1)] = current;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm_sum += 2.0 * current;
    if (std::abs(current) > kRescaleThreshold) {
      const double scale = 1.0 / kRescaleThreshold;
      current *= scale;
      next *= scale;
      norm_sum *= scale;
      for (int m = k - 1; m <= n_max; ++m) j[static_cast<std::size_t>(m)] *= scale;
    }
  }
  norm_sum += current;  // J_0
  for (auto& v : j) v /= norm_sum;
  return j;
}

int rn_min_orders(double pulse_area) {
  const double margin = std::max(20.0, std::ceil(6.0 * std::cbrt(std::max(pulse_area, 1.0))));
  return static_cast<int>(std::ceil(pulse_area) + margin);
}

RamanNathPrediction rn_populations(double u0, double t_pulse, int n_max) {
  if (!(u0 >= 0.0)) throw Error("Raman-Nath: depth must be >= 0");
  if (!(t_pulse >= 0.0)) throw Error("Raman-Nath: pulse duration must be >= 0");

  RamanNathPrediction out;
  out.pulse_area = 0.5 * u0 * t_pulse;
  if (n_max < out.pulse_area + 20.0) {
    throw Error("Raman-Nath: n_max = " + std::to_string(n_max) +
                " too small for pulse area " + std::to_string(out.pulse_area) +
                " (need >= beta + 20)");
  }
  out.n_max = n_max;
  const auto j = bessel_j_sequence(n_max, out.pulse_area);
  out.populations.resize(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    const double p = j[static_cast<std::size_t>(n)] * j[static_cast<std::size_t>(n)];
    out.populations[static_cast<std::size_t>(n_max + n)] = p;
    out.populations[static_cast<std::size_t>(n_max - n)] = p;
  }
  return out;
}

RamanNathValidity rn_is_valid(double t_pulse, const DerivedScales& scales) {
  if (!(t_pulse >= 0.0)) throw Error("Raman-Nath: pulse duration must be >= 0");
  return validity_from_ratio(t_pulse / scales.raman_nath_time);
}

RamanNathValidity rn_is_valid_internal(double t_pulse, double u0) {
  if (!(t_pulse >= 0.0)) throw Error("Raman-Nath: pulse duration must be >= 0");
  return validity_from_ratio(t_pulse / raman_nath_time_internal(u0));
}

}  // namespace latdiff
