#include "entsim/core.hpp"

#include <algorithm>
#include <cmath>

namespace entsim {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;
}  // namespace

PureState::PureState(const Vec4& amplitudes) : amps_(amplitudes) {
    if (!amps_.allFinite()) throw ValidationError("PureState: non-finite amplitude");
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
        throw ValidationError("PureState: amplitudes not normalized");
    }
}

DensityMatrix::DensityMatrix(const Mat4& entries) {
    if (!entries.allFinite()) throw ValidationError("DensityMatrix: non-finite entry");
    const double herm_err = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > kHermTol) throw ValidationError("DensityMatrix: not Hermitian");
    if (std::abs(entries.trace().real() - 1.0) > kTraceTol ||
        std::abs(entries.trace().imag()) > kTraceTol) {
        throw ValidationError("DensityMatrix: trace != 1");
    }
    rho_ = 0.5 * (entries + entries.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol) {
        throw ValidationError("DensityMatrix: not positive semidefinite");
    }
}

Eigen::Vector4d eigenvalues_descending(const Mat4& hermitian) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(hermitian, Eigen::EigenvaluesOnly);
    Eigen::Vector4d ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + 4, std::greater<double>());
    return ev;
}

DensityMatrix from_pure(const PureState& psi) {
    const Vec4& a = psi.amplitudes();
    Mat4 rho = a * a.adjoint();
    // renormalize the trace exactly so downstream checks stay within 1e-12
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& terms) {
    if (terms.empty()) throw ValidationError("mix: empty term list");
    double wsum = 0.0;
    for (const auto& [w, rho] : terms) {
        if (!(w >= 0.0)) throw ValidationError("mix: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw ValidationError("mix: weights do not sum to 1");
    Mat4 acc = Mat4::Zero();
    for (const auto& [w, rho] : terms) acc += w * rho.matrix();
    acc /= acc.trace().real();
    return DensityMatrix(acc);
}

namespace {

Mat4 hermitian_sqrt(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const Mat4 sr = hermitian_sqrt(rho.matrix());
    const Mat4 inner = sr * sigma.matrix() * sr;
    Eigen::SelfAdjointEigenSolver<Mat4> es(inner, Eigen::EigenvaluesOnly);
    const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

const DensityMatrix& maximally_mixed() {
    static const DensityMatrix rho{Mat4(0.25 * Mat4::Identity())};
    return rho;
}

}  // namespace entsim
