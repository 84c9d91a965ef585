#include "entsim/measures.hpp"

#include "entsim/states.hpp"

#include <algorithm>
#include <cmath>

namespace entsim {

const Mat2& pauli(int i) {
    static const Mat2 sx = (Mat2() << 0, 1, 1, 0).finished();
    static const Mat2 sy = (Mat2() << Complex(0, 0), Complex(0, -1),
                                      Complex(0, 1), Complex(0, 0)).finished();
    static const Mat2 sz = (Mat2() << 1, 0, 0, -1).finished();
    switch (i) {
        case 1: return sx;
        case 2: return sy;
        case 3: return sz;
        default: throw std::out_of_range("pauli: index must be 1, 2 or 3");
    }
}

namespace {

Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

const Mat4& spin_flip() {
    static const Mat4 yy = kron2(pauli(2), pauli(2));
    return yy;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    const Mat4& r = rho.matrix();
    const Mat4 rtilde = spin_flip() * r.conjugate() * spin_flip();
    // r * rtilde is non-Hermitian but has real nonnegative spectrum
    Eigen::ComplexEigenSolver<Mat4> es(r * rtilde, false);
    Eigen::Vector4d ev = es.eigenvalues().real();
    for (int i = 0; i < 4; ++i) ev(i) = ev(i) < 1e-12 ? 0.0 : ev(i);
    Eigen::Vector4d lam = ev.cwiseSqrt();
    std::sort(lam.data(), lam.data() + 4, std::greater<double>());
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double tangle(const DensityMatrix& rho) {
    const double c = concurrence(rho);
    return c * c;
}

double linear_entropy(const DensityMatrix& rho) {
    return std::clamp((4.0 / 3.0) * (1.0 - purity(rho)), 0.0, 1.0);
}

double werner_tangle_of_entropy(double s_l) {
    if (!(s_l >= 0.0 && s_l <= 1.0)) {
        throw ValidationError("werner_tangle_of_entropy: S_L outside [0,1]");
    }
    if (s_l > 8.0 / 9.0) return 0.0;
    const double t = 1.0 - 3.0 * std::sqrt(1.0 - s_l);
    return 0.25 * t * t;
}

Mat4 partial_transpose_b(const Mat4& m) {
    Mat4 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.block<2, 2>(2 * r, 2 * c) = m.block<2, 2>(2 * r, 2 * c).transpose();
    return out;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
    return eigenvalues_descending(partial_transpose_b(rho.matrix()))(3);
}

Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho) {
    Eigen::Matrix3d t;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            t(i - 1, j - 1) = (rho.matrix() * kron2(pauli(i), pauli(j))).trace().real();
    return t;
}

double chsh_max(const DensityMatrix& rho) {
    const Eigen::Matrix3d t = correlation_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t,
                                                      Eigen::EigenvaluesOnly);
    const auto& u = es.eigenvalues();  // ascending
    return 2.0 * std::sqrt(std::max(0.0, u(2) + u(1)));
}

double singlet_fraction_estimate(const DensityMatrix& rho) {
    const Vec4& psi = singlet().amplitudes();
    const double overlap = (psi.adjoint() * rho.matrix() * psi).value().real();
    return (4.0 * overlap - 1.0) / 3.0;
}

StateReport report(const DensityMatrix& rho) {
    StateReport rep;
    rep.concurrence = concurrence(rho);
    rep.tangle = rep.concurrence * rep.concurrence;
    rep.purity = purity(rho);
    rep.linear_entropy = linear_entropy(rho);
    rep.ppt_min_eigenvalue = ppt_min_eigenvalue(rho);
    rep.chsh_max = chsh_max(rho);
    rep.singlet_fraction_estimate = singlet_fraction_estimate(rho);
    return rep;
}

}  // namespace entsim
