#include "latdiff/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "latdiff/error.hpp"

namespace latdiff {

namespace {

constexpr int kBasisMargin = 10;
constexpr int kDefaultExtraMargin = 22;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Eigenpairs of a real symmetric tridiagonal matrix, ascending.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_tridiagonal(const Eigen::VectorXd& diag,
                                                                 const Eigen::VectorXd& sub) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("band diagonalization did not converge");
  return solver;
}

// Largest-magnitude component made positive, so states are reproducible.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
}

std::vector<double> zone_edge_spectrum(double u0, int m_max) {
  // cos((2m+1)x) and sin((2m+1)x), m in [0, m_max]: the k = +-1 coupling
  // shifts the first diagonal element by -+u0/4.
  const int size = m_max + 1;
  const Eigen::VectorXd sub = Eigen::VectorXd::Constant(size - 1, -0.25 * u0);
  std::vector<double> levels;
  for (double shift : {-0.25 * u0, 0.25 * u0}) {
    Eigen::VectorXd diag(size);
    for (int m = 0; m < size; ++m) {
      const double k = 2.0 * m + 1.0;
      diag[m] = k * k + 0.5 * u0;
    }
    diag[0] += shift;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("zone-edge diagonalization did not converge");
    const auto& ev = solver.eigenvalues();
    levels.insert(levels.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

}  // namespace

int PlaneWaveBasis::minimum_for(double u0) {
  return static_cast<int>(std::ceil(std::sqrt(std::max(u0, 0.0)))) + kBasisMargin;
}

PlaneWaveBasis PlaneWaveBasis::for_depth(double u0) {
  return PlaneWaveBasis{minimum_for(u0) + kDefaultExtraMargin};
}

const char* to_string(Parity parity) {
  return parity == Parity::kEven ? "even" : "odd";
}

Complex BlochState::coefficient(int m) const {
  const int m_max = static_cast<int>(coefficients.size() / 2);
  if (m < -m_max || m > m_max) return {0.0, 0.0};
  return coefficients[static_cast<std::size_t>(m + m_max)];
}

BandSpectrum band_spectrum_q0(double u0, const PlaneWaveBasis& basis) {
  if (!(u0 >= 0.0) || !std::isfinite(u0)) throw Error("band spectrum: depth must be >= 0");
  if (basis.m_max < PlaneWaveBasis::minimum_for(u0)) {
    throw Error("plane-wave basis m_max = " + std::to_string(basis.m_max) +
                " is inadequate for u0 = " + std::to_string(u0) + " (need >= " +
                std::to_string(PlaneWaveBasis::minimum_for(u0)) + ")");
  }
  const int m_max = basis.m_max;

  // Even block in {1, sqrt2 cos 2mx}, odd block in {sqrt2 sin 2mx}.
  Eigen::VectorXd even_diag(m_max + 1), even_sub(m_max);
  for (int m = 0; m <= m_max; ++m) even_diag[m] = 4.0 * m * m + 0.5 * u0;
  for (int m = 0; m < m_max; ++m) even_sub[m] = -0.25 * u0;
  even_sub[0] *= std::sqrt(2.0);

  Eigen::VectorXd odd_diag(m_max), odd_sub(m_max - 1);
  for (int m = 1; m <= m_max; ++m) odd_diag[m - 1] = 4.0 * m * m + 0.5 * u0;
  odd_sub.setConstant(-0.25 * u0);

  auto even = solve_tridiagonal(even_diag, even_sub);
  auto odd = solve_tridiagonal(odd_diag, odd_sub);

  BandSpectrum spectrum;
  spectrum.u0 = u0;
  spectrum.basis = basis;
  spectrum.states.reserve(basis.size());

  const auto full_size = basis.size();
  for (Eigen::Index i = 0; i < even.eigenvalues().size(); ++i) {
    Eigen::VectorXd v = even.eigenvectors().col(i);
    fix_sign(v);
    BlochState s;
    s.energy = even.eigenvalues()[i];
    s.parity = Parity::kEven;
    s.coefficients.assign(full_size, Complex{});
    s.coefficients[static_cast<std::size_t>(m_max)] = v[0];
    for (int m = 1; m <= m_max; ++m) {
      const double c = v[m] * kInvSqrt2;
      s.coefficients[static_cast<std::size_t>(m_max + m)] = c;
      s.coefficients[static_cast<std::size_t>(m_max - m)] = c;
    }
    spectrum.states.push_back(std::move(s));
  }
  for (Eigen::Index i = 0; i < odd.eigenvalues().size(); ++i) {
    Eigen::VectorXd v = odd.eigenvectors().col(i);
    fix_sign(v);
    BlochState s;
    s.energy = odd.eigenvalues()[i];
    s.parity = Parity::kOdd;
    s.coefficients.assign(full_size, Complex{});
    // sqrt2 sin(2mx) = (e^{2imx} - e^{-2imx}) / (i sqrt2)
    for (int m = 1; m <= m_max; ++m) {
      const Complex c{0.0, -v[m - 1] * kInvSqrt2};
      s.coefficients[static_cast<std::size_t>(m_max + m)] = c;
      s.coefficients[static_cast<std::size_t>(m_max - m)] = -c;
    }
    spectrum.states.push_back(std::move(s));
  }

  // Degenerate free-particle pairs keep even before odd.
  std::stable_sort(spectrum.states.begin(), spectrum.states.end(),
                   [](const BlochState& a, const BlochState& b) {
                     if (a.energy != b.energy) return a.energy < b.energy;
                     return a.parity == Parity::kEven && b.parity == Parity::kOdd;
                   });
  for (std::size_t i = 0; i < spectrum.states.size(); ++i) {
    spectrum.states[i].band_index = static_cast<int>(i);
  }
  spectrum.zone_edge_energies = zone_edge_spectrum(u0, m_max);
  return spectrum;
}

bool is_bound_band(const BandSpectrum& spectrum, std::size_t band) {
  double lowest = spectrum.states.at(band).energy;
  if (band < spectrum.zone_edge_energies.size()) {
    lowest = std::min(lowest, spectrum.zone_edge_energies[band]);
  }
  return lowest < spectrum.u0;
}

std::size_t count_bound_states(const BandSpectrum& spectrum) {
  std::size_t count = 0;
  while (count < spectrum.states.size() && is_bound_band(spectrum, count)) ++count;
  return count;
}

ProjectionTable project_uniform(const BandSpectrum& spectrum) {
  ProjectionTable table;
  table.u0 = spectrum.u0;
  table.entries.reserve(spectrum.states.size());
  const std::size_t n_bound = count_bound_states(spectrum);

  bool passed_first_unbound_even = false;
  for (std::size_t i = 0; i < spectrum.states.size(); ++i) {
    const auto& s = spectrum.states[i];
    ProjectionEntry e;
    e.band_index = s.band_index;
    e.energy = s.energy;
    e.parity = s.parity;
    // The uniform function is the m = 0 plane wave.
    e.amplitude = std::conj(s.coefficient(0));
    e.occupation = s.parity == Parity::kOdd ? 0.0 : std::norm(e.amplitude);
    e.bound = i < n_bound;

    table.total += e.occupation;
    if (e.bound) table.bound_fraction += e.occupation;
    if (!passed_first_unbound_even) {
      table.captured_fraction += e.occupation;
      if (!e.bound && e.parity == Parity::kEven) passed_first_unbound_even = true;
    }
    table.entries.push_back(e);
  }
  return table;
}

DiffractionSpectrum evolve_spectral(const ProjectionTable& table, const BandSpectrum& spectrum, double t) {
  if (table.u0 != spectrum.u0 || table.entries.size() != spectrum.states.size()) {
    throw Error("projection table and band spectrum come from different lattices");
  }
  const int m_max = spectrum.basis.m_max;
  std::vector<Complex> psi(spectrum.basis.size(), Complex{});
  for (std::size_t n = 0; n < spectrum.states.size(); ++n) {
    const auto& entry = table.entries[n];
    if (entry.amplitude == Complex{}) continue;
    const Complex weight = entry.amplitude * std::polar(1.0, -spectrum.states[n].energy * t);
    const auto& c = spectrum.states[n].coefficients;
    for (std::size_t m = 0; m < psi.size(); ++m) psi[m] += weight * c[m];
  }

  DiffractionSpectrum out;
  out.time = t;
  out.n_max = m_max;
  out.populations.resize(psi.size());
  std::transform(psi.begin(), psi.end(), out.populations.begin(),
                 [](const Complex& b) { return std::norm(b); });
  return out;
}

GapSeries even_gap_series(const ProjectionTable& table) {
  std::vector<const ProjectionEntry*> even;
  for (const auto& e : table.entries) {
    if (e.parity == Parity::kEven) even.push_back(&e);
  }

  GapSeries series;
  std::size_t bound_even = 0;
  for (const auto* e : even) bound_even += e->bound ? 1 : 0;
  series.normalized = bound_even >= 2;

  const double reference = even.size() >= 2 ? even[1]->energy - even[0]->energy : 1.0;
  for (std::size_t i = 0; i + 1 < even.size(); ++i) {
    GapPoint p;
    p.band_index = even[i]->band_index;
    p.energy = even[i]->energy;
    p.gap = even[i + 1]->energy - even[i]->energy;
    p.normalized_gap = series.normalized ? p.gap / reference : p.gap;
    p.occupation = even[i]->occupation;
    p.bound = even[i]->bound;
    series.points.push_back(p);
    if (!p.bound) break;
  }
  return series;
}

}  // namespace latdiff
