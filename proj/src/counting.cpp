#include "entsim/counting.hpp"

#include <cmath>
#include <sstream>

namespace entsim {

Mat2 linear_polarizer(double theta) {
    if (!std::isfinite(theta)) throw ValidationError("linear_polarizer: non-finite angle");
    Eigen::Vector2cd ket;
    ket << std::cos(theta), std::sin(theta);
    return ket * ket.adjoint();
}

MeasurementSetting MeasurementSetting::analyzers(double theta_a, double theta_b) {
    MeasurementSetting s;
    std::ostringstream id;
    id << "a" << theta_a << ":b" << theta_b;
    s.id = id.str();
    s.proj_a = linear_polarizer(theta_a);
    s.proj_b = linear_polarizer(theta_b);
    s.theta_a = theta_a;
    s.theta_b = theta_b;
    return s;
}

bool MeasurementSetting::has_angles() const {
    return std::isfinite(theta_a) && std::isfinite(theta_b);
}

namespace {

Mat4 joint_projector(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

}  // namespace

double born_probability(const DensityMatrix& rho, const MeasurementSetting& s) {
    const double p = (rho.matrix() * joint_projector(s.proj_a, s.proj_b)).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

std::pair<double, double> marginal_probabilities(const DensityMatrix& rho,
                                                 const MeasurementSetting& s) {
    const double pa =
        (rho.matrix() * joint_projector(s.proj_a, Mat2::Identity())).trace().real();
    const double pb =
        (rho.matrix() * joint_projector(Mat2::Identity(), s.proj_b)).trace().real();
    return {std::clamp(pa, 0.0, 1.0), std::clamp(pb, 0.0, 1.0)};
}

}  // namespace entsim
