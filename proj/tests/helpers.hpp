#pragma once

#include <random>

#include "entsim/core.hpp"

namespace entsim::test {

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

inline PureState random_pure_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vec4 a;
    for (int i = 0; i < 4; ++i) a(i) = Complex(gauss(rng), gauss(rng));
    a /= a.norm();
    return PureState(a);
}

inline DensityMatrix random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Mat4 a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    Mat4 rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

inline Mat2 random_qubit_density(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Mat2 a;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    Mat2 rho = a * a.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline Mat2 random_unitary_2x2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Mat2 a;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    const Eigen::HouseholderQR<Mat2> qr(a);
    Mat2 q = qr.householderQ();
    const Mat2 r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) {
        const Complex d = r_mat(i, i);
        if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

}  // namespace entsim::test
