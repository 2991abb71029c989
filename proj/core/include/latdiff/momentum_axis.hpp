#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

namespace latdiff {

/// Symmetric momentum bins (hbar kappa_L units) aligned with the diffraction
/// orders: bin width 2 / bins_per_order, order n centred on bin
/// half_bins + n * bins_per_order.
struct MomentumAxis {
  int bins_per_order = 1;
  int half_orders = 0;

  static MomentumAxis for_depth(double u0, int bins_per_order, int margin_orders);

  int half_bins() const { return half_orders * bins_per_order; }
  std::size_t size() const { return static_cast<std::size_t>(2 * half_bins() + 1); }
  double width() const { return 2.0 / bins_per_order; }
  double center(std::size_t i) const { return (static_cast<double>(i) - half_bins()) * width(); }

  /// Bin holding momentum p; symmetric in the sign of p.
  std::optional<std::size_t> index_of(double p) const {
    const double steps = std::floor(std::abs(p) / width() + 0.5);
    if (steps > half_bins()) return std::nullopt;
    const long offset = static_cast<long>(steps) * (p < 0.0 ? -1 : 1);
    return static_cast<std::size_t>(half_bins() + offset);
  }

  std::optional<std::size_t> index_of_order(int n) const {
    if (n < -half_orders || n > half_orders) return std::nullopt;
    return static_cast<std::size_t>(half_bins() + n * bins_per_order);
  }

  bool operator==(const MomentumAxis&) const = default;
};

inline MomentumAxis MomentumAxis::for_depth(double u0, int bins_per_order, int margin_orders) {
  const int edge = static_cast<int>(std::ceil(0.5 * std::sqrt(u0 > 0.0 ? u0 : 0.0)));
  return MomentumAxis{bins_per_order, edge + margin_orders};
}

}  // namespace latdiff
