#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "slowlight/constants.hpp"

namespace slowlight {

/// Dense Fock space for N three-level atoms (ground doublet g-, g+) and a
/// single signal mode: basis |n_photons> (x) |spin bitmask>, bit j set when
/// atom j sits in g+. Small by construction so expectation values stay
/// auditable by direct summation.
struct FockSpace {
  int n_atoms = 1;
  int max_photons = 1;

  FockSpace(int atoms, int photons) : n_atoms(atoms), max_photons(photons) {
    if (n_atoms < 1 || n_atoms > 12)
      throw std::invalid_argument("n_atoms must be in [1, 12]");
    if (max_photons < 1 || max_photons > 3)
      throw std::invalid_argument("max_photons must be in [1, 3]");
  }

  std::size_t spin_states() const { return std::size_t{1} << n_atoms; }
  std::size_t dimension() const {
    return (std::size_t(max_photons) + 1) * spin_states();
  }
  std::size_t index(int photons, std::uint32_t spins) const {
    return std::size_t(photons) * spin_states() + spins;
  }
};

/// One-polariton state: cos(theta) |1, all g-> - sin(theta) / sqrt(N)
/// sum_j |0, atom j flipped>.
inline Eigen::VectorXcd fock_build_polariton(const FockSpace& fs, double theta) {
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(fs.dimension());
  state[fs.index(1, 0)] = std::cos(theta);
  const double w = -std::sin(theta) / std::sqrt(double(fs.n_atoms));
  for (int j = 0; j < fs.n_atoms; ++j)
    state[fs.index(0, std::uint32_t{1} << j)] = w;
  return state;
}

inline Eigen::VectorXcd fock_vacuum(const FockSpace& fs) {
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(fs.dimension());
  state[fs.index(0, 0)] = 1.0;
  return state;
}

/// <S_z> taken as the expected number of atoms in g+.
inline double fock_spin_z(const FockSpace& fs, const Eigen::VectorXcd& state) {
  if (std::size_t(state.size()) != fs.dimension())
    throw std::invalid_argument("state does not match the Fock space");
  double total = 0.0;
  for (int n = 0; n <= fs.max_photons; ++n)
    for (std::uint32_t s = 0; s < fs.spin_states(); ++s)
      total += std::norm(state[fs.index(n, s)]) * std::popcount(s);
  return total;
}

inline double fock_photon_number(const FockSpace& fs,
                                 const Eigen::VectorXcd& state) {
  if (std::size_t(state.size()) != fs.dimension())
    throw std::invalid_argument("state does not match the Fock space");
  double total = 0.0;
  for (int n = 0; n <= fs.max_photons; ++n)
    for (std::uint32_t s = 0; s < fs.spin_states(); ++s)
      total += std::norm(state[fs.index(n, s)]) * n;
  return total;
}

/// Polariton magnetic moment from the spin expectation difference between a
/// one-polariton state and the polariton vacuum:
/// 2 g_F mu_B (<1|S_z|1> - <0|S_z|0>).
inline double fock_moment(const FockSpace& fs, double theta, double g_factor) {
  const double sz_one = fock_spin_z(fs, fock_build_polariton(fs, theta));
  const double sz_vac = fock_spin_z(fs, fock_vacuum(fs));
  return 2.0 * g_factor * constants::mu_bohr * (sz_one - sz_vac);
}

} // namespace slowlight
