#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace entsim {

using Complex = std::complex<double>;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

// Two-qubit basis order used everywhere: HH, HV, VH, VV.
enum Basis : int { kHH = 0, kHV = 1, kVH = 2, kVV = 3 };

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Normalized 4-component state vector in the (HH, HV, VH, VV) basis.
class PureState {
  public:
    explicit PureState(const Vec4& amplitudes);

    const Vec4& amplitudes() const { return amps_; }
    Complex operator[](int i) const { return amps_(i); }

  private:
    Vec4 amps_;
};

/// 4x4 Hermitian, unit-trace, PSD matrix in the (HH, HV, VH, VV) basis.
/// The stored matrix is symmetrized on construction; inputs that violate
/// Hermiticity (1e-12 max-norm), unit trace (1e-12) or positivity
/// (min eigenvalue >= -1e-10) are rejected.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Mat4& entries);

    const Mat4& matrix() const { return rho_; }
    Complex operator()(int r, int c) const { return rho_(r, c); }

  private:
    Mat4 rho_;
};

/// Eigenvalues of a Hermitian 4x4 matrix, sorted descending.
/// Deterministic for identical inputs.
Eigen::Vector4d eigenvalues_descending(const Mat4& hermitian);

DensityMatrix from_pure(const PureState& psi);

/// Convex combination of density matrices. Weights must be nonnegative
/// and sum to 1 within 1e-9.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms);

/// Uhlmann fidelity, squared-overlap convention:
/// F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Equals <psi|rho|psi> when
/// sigma = |psi><psi|.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double purity(const DensityMatrix& rho);

const DensityMatrix& maximally_mixed();

}  // namespace entsim
