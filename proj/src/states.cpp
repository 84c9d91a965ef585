#include "entsim/states.hpp"

#include <cmath>

namespace entsim {

void SectorWeights::validate() const {
    for (double w : {singlet_frac, mixed_hv_frac, mixed_hhvv_frac}) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw ValidationError("SectorWeights: weight outside [0,1]");
        }
    }
    if (std::abs(singlet_frac + mixed_hv_frac + mixed_hhvv_frac - 1.0) > 1e-9) {
        throw ValidationError("SectorWeights: weights do not sum to 1");
    }
}

PureState bell_phi(double phi) {
    if (!std::isfinite(phi)) throw ValidationError("bell_phi: non-finite phase");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Vec4 a = Vec4::Zero();
    a(kHH) = inv_sqrt2;
    a(kVV) = std::polar(inv_sqrt2, phi);
    return PureState(a);
}

const PureState& singlet() {
    static const PureState psi = [] {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        Vec4 a = Vec4::Zero();
        a(kHV) = inv_sqrt2;
        a(kVH) = -inv_sqrt2;
        return PureState(a);
    }();
    return psi;
}

const DensityMatrix& singlet_density() {
    static const DensityMatrix rho = from_pure(singlet());
    return rho;
}

namespace {

// Basis index permutation for an H<->V swap on one arm.
int flipped_index(int i, Arm arm) {
    const int a = i >> 1, b = i & 1;
    return arm == Arm::A ? ((1 - a) << 1 | b) : (a << 1 | (1 - b));
}

}  // namespace

PureState apply_halfwave_flip(const PureState& psi, Arm arm) {
    Vec4 out;
    for (int i = 0; i < 4; ++i) out(flipped_index(i, arm)) = psi[i];
    return PureState(out);
}

DensityMatrix apply_halfwave_flip(const DensityMatrix& rho, Arm arm) {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out(flipped_index(r, arm), flipped_index(c, arm)) = rho(r, c);
    return DensityMatrix(out);
}

DensityMatrix werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner: p outside [0,1]");
    Mat4 rho = Mat4::Zero();
    const double a = 0.25 * (1.0 - p);
    const double b = 0.25 * (1.0 + p);
    rho(kHH, kHH) = a;
    rho(kVV, kVV) = a;
    rho(kHV, kHV) = b;
    rho(kVH, kVH) = b;
    rho(kHV, kVH) = -0.5 * p;
    rho(kVH, kHV) = -0.5 * p;
    return DensityMatrix(rho);
}

double mems_g(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("mems: p outside [0,1]");
    return p >= 2.0 / 3.0 ? 0.5 * p : 1.0 / 3.0;
}

DensityMatrix mems(double p) {
    const double g = mems_g(p);
    Mat4 rho = Mat4::Zero();
    rho(kHH, kHH) = 1.0 - 2.0 * g;
    rho(kHV, kHV) = g;
    rho(kVH, kVH) = g;
    rho(kHV, kVH) = -0.5 * p;
    rho(kVH, kHV) = -0.5 * p;
    return DensityMatrix(rho);
}

DensityMatrix sector_mixture(const SectorWeights& w) {
    w.validate();
    Mat4 rho = w.singlet_frac * singlet_density().matrix();
    rho(kHV, kHV) += 0.5 * w.mixed_hv_frac;
    rho(kVH, kVH) += 0.5 * w.mixed_hv_frac;
    rho(kHH, kHH) += 0.5 * w.mixed_hhvv_frac;
    rho(kVV, kVV) += 0.5 * w.mixed_hhvv_frac;
    return DensityMatrix(rho);
}

DensityMatrix mems_sector_mixture(double p) {
    const double g = mems_g(p);
    Mat4 rho = p * singlet_density().matrix();
    rho(kHV, kHV) += g - 0.5 * p;
    rho(kVH, kVH) += g - 0.5 * p;
    rho(kHH, kHH) += 1.0 - 2.0 * g;
    return DensityMatrix(rho);
}

double p_from_displacement(double dx, double x0) {
    if (!(dx >= 0.0)) throw ValidationError("p_from_displacement: negative displacement");
    if (!(x0 > 0.0)) throw ValidationError("p_from_displacement: nonpositive scale");
    return -std::expm1(-dx / x0);
}

DensityMatrix with_visibility(const DensityMatrix& rho, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("with_visibility: v outside [0,1]");
    return DensityMatrix(v * rho.matrix() + (1.0 - v) * 0.25 * Mat4::Identity());
}

}  // namespace entsim
