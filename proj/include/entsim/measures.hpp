#pragma once

#include "entsim/core.hpp"

namespace entsim {

/// Bundle of entanglement and mixedness measures for one state.
struct StateReport {
    double tangle;
    double concurrence;
    double linear_entropy;
    double purity;
    double ppt_min_eigenvalue;
    double chsh_max;
    double singlet_fraction_estimate;  // p_sp
};

/// Pauli matrices in the (H, V) single-qubit basis.
/// sigma_y = (0, -i; i, 0).
const Mat2& pauli(int i);  // i in {1,2,3} = x,y,z

/// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with li the descending
/// square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const DensityMatrix& rho);

/// Square of the concurrence.
double tangle(const DensityMatrix& rho);

/// S_L = (4/3)(1 - Tr rho^2), clamped to [0,1].
double linear_entropy(const DensityMatrix& rho);

/// Closed-form tangle of the Werner family at a given linear entropy:
/// (1 - 3 sqrt(1 - S_L))^2 / 4 for S_L <= 8/9, zero above.
double werner_tangle_of_entropy(double s_l);

/// Partial transpose over the second qubit.
Mat4 partial_transpose_b(const Mat4& m);

/// Minimum eigenvalue of the partial transpose; negative iff entangled.
double ppt_min_eigenvalue(const DensityMatrix& rho);

/// 3x3 correlation matrix T_ij = Tr[rho (sigma_i x sigma_j)].
Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho);

/// Horodecki bound 2 sqrt(u1 + u2) on the CHSH parameter, u1 >= u2 the
/// two largest eigenvalues of T^t T.
double chsh_max(const DensityMatrix& rho);

/// Werner-fit singlet probability p_sp = (4 <Psi-|rho|Psi-> - 1) / 3.
double singlet_fraction_estimate(const DensityMatrix& rho);

StateReport report(const DensityMatrix& rho);

}  // namespace entsim
