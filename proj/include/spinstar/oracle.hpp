#pragma once

// Brute-force reference: dense Hamiltonian on every (j, r) sector, exponentiated through
// its eigendecomposition. Shares nothing with the closed-form path beyond sector weights.

#include <map>
#include <utility>

#include <Eigen/Dense>

#include "spinstar/density_matrix.hpp"
#include "spinstar/spin_algebra.hpp"

namespace spinstar {

/// Largest bath accepted by the dense reference.
inline constexpr int kOracleMaxBath = 8;

/// H restricted to the invariant block of total bath spins (j, r).
///
/// Basis index = qubit_index * (2j+1)(2r+1) + (m + j) * (2r+1) + (s + r), with qubit_index
/// over {|-->, |-+>, |+->, |++>}.
struct SectorHamiltonian {
  HalfInt j;
  HalfInt r;
  int dim = 0;
  Eigen::MatrixXcd matrix;

  int bath_dim() const { return dim / 4; }
  int index(int qubit, HalfInt m, HalfInt s) const;
};

SectorHamiltonian sector_hamiltonian(const CouplingParams& params, HalfInt j, HalfInt r);

/// Holds one eigendecomposition per sector so time sweeps diagonalise only once.
class Oracle {
 public:
  explicit Oracle(const CouplingParams& params);

  const CouplingParams& params() const { return params_; }

  /// exp(-iHt) on sector (j, r).
  Eigen::MatrixXcd sector_propagator(HalfInt j, HalfInt r, double t) const;

  DensityMatrix4 evolve(const DensityMatrix4& rho0, double t) const;

  /// Largest |HV - VE| over all sectors, relative to max |H|.
  double eigen_residual() const;

 private:
  struct Decomposition {
    SectorHamiltonian hamiltonian;
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;
    double weight = 0.0;  // nu_j nu_r / 4^N
  };

  const Decomposition& sector(HalfInt j, HalfInt r) const;

  CouplingParams params_;
  std::map<std::pair<int, int>, Decomposition> sectors_;
};

/// One-shot convenience wrapper around Oracle.
DensityMatrix4 oracle_evolve(const DensityMatrix4& rho0, const CouplingParams& params, double t);

}  // namespace spinstar
