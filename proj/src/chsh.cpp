#include "entsim/chsh.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace entsim {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

ChshAngles ChshAngles::optimal() {
    return {0.0, std::numbers::pi / 4.0, std::numbers::pi / 8.0,
            3.0 * std::numbers::pi / 8.0};
}

ChshAngles ChshAngles::printed() {
    return {0.0, std::numbers::pi / 2.0, std::numbers::pi / 4.0,
            3.0 * std::numbers::pi / 4.0};
}

void ChshAngles::validate() const {
    for (double t : {theta1, theta1p, theta2, theta2p}) {
        if (!std::isfinite(t)) throw ValidationError("ChshAngles: non-finite angle");
    }
}

double coincidence_probability(const DensityMatrix& rho, double theta1, double theta2) {
    return born_probability(rho, MeasurementSetting::analyzers(theta1, theta2));
}

double correlation(const DensityMatrix& rho, double theta1, double theta2) {
    const double c_pp = coincidence_probability(rho, theta1, theta2);
    const double c_oo = coincidence_probability(rho, theta1 + kHalfPi, theta2 + kHalfPi);
    const double c_po = coincidence_probability(rho, theta1, theta2 + kHalfPi);
    const double c_op = coincidence_probability(rho, theta1 + kHalfPi, theta2);
    const double total = c_pp + c_oo + c_po + c_op;
    if (total <= 0.0) throw ValidationError("correlation: vanishing total coincidence rate");
    return (c_pp + c_oo - c_po - c_op) / total;
}

double chsh_S(const DensityMatrix& rho, const ChshAngles& a) {
    a.validate();
    return std::abs(correlation(rho, a.theta1, a.theta2) -
                    correlation(rho, a.theta1, a.theta2p) +
                    correlation(rho, a.theta1p, a.theta2) +
                    correlation(rho, a.theta1p, a.theta2p));
}

namespace {

// The four (a, b) analyzer pairs of the CHSH combination, in the order
// their correlations enter S: (t1,t2), (t1,t2'), (t1',t2), (t1',t2').
std::array<std::pair<double, double>, 4> chsh_pairs(const ChshAngles& a) {
    return {{{a.theta1, a.theta2},
             {a.theta1, a.theta2p},
             {a.theta1p, a.theta2},
             {a.theta1p, a.theta2p}}};
}

}  // namespace

std::vector<MeasurementSetting> chsh_settings(const ChshAngles& angles) {
    angles.validate();
    std::vector<MeasurementSetting> out;
    out.reserve(16);
    for (const auto& [ta, tb] : chsh_pairs(angles)) {
        out.push_back(MeasurementSetting::analyzers(ta, tb));
        out.push_back(MeasurementSetting::analyzers(ta + kHalfPi, tb + kHalfPi));
        out.push_back(MeasurementSetting::analyzers(ta, tb + kHalfPi));
        out.push_back(MeasurementSetting::analyzers(ta + kHalfPi, tb));
    }
    return out;
}

ChshEstimate estimate_S_from_counts(const std::vector<CountRecord>& records,
                                    const ChshAngles& angles) {
    const auto settings = chsh_settings(angles);
    std::array<double, 16> counts{};
    std::array<bool, 16> seen{};
    for (const auto& rec : records) {
        bool matched = false;
        for (size_t i = 0; i < settings.size(); ++i) {
            if (std::abs(rec.theta_a - settings[i].theta_a) < 1e-9 &&
                std::abs(rec.theta_b - settings[i].theta_b) < 1e-9) {
                if (seen[i]) {
                    throw ValidationError("estimate_S_from_counts: duplicated setting");
                }
                if (rec.coincidences < 0.0) {
                    throw ValidationError("estimate_S_from_counts: negative count");
                }
                seen[i] = true;
                counts[i] = rec.coincidences;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ValidationError("estimate_S_from_counts: record matches no setting");
        }
    }
    for (bool s : seen) {
        if (!s) throw ValidationError("estimate_S_from_counts: missing setting");
    }

    double s_signed = 0.0;
    double var_s = 0.0;
    for (int pair = 0; pair < 4; ++pair) {
        const double* c = counts.data() + 4 * pair;  // (pp, oo, po, op)
        const double total = c[0] + c[1] + c[2] + c[3];
        if (total <= 0.0) {
            throw ValidationError("estimate_S_from_counts: all four counts zero for a pair");
        }
        const double num = c[0] + c[1] - c[2] - c[3];
        const double p = num / total;
        // delta method with Var(N) = N per Poisson count
        double var_p = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double sign = k < 2 ? 1.0 : -1.0;
            const double dpdc = (sign * total - num) / (total * total);
            var_p += dpdc * dpdc * c[k];
        }
        const double coeff = pair == 1 ? -1.0 : 1.0;
        s_signed += coeff * p;
        var_s += var_p;
    }
    ChshEstimate est;
    est.S = std::abs(s_signed);
    est.sigma_S = std::sqrt(var_s);
    est.significance = est.sigma_S > 0.0
                           ? (est.S - 2.0) / est.sigma_S
                           : std::numeric_limits<double>::infinity();
    return est;
}

std::vector<std::pair<double, double>> fringe(const DensityMatrix& rho,
                                              double theta2_fixed,
                                              const std::vector<double>& theta1_range) {
    std::vector<std::pair<double, double>> out;
    out.reserve(theta1_range.size());
    for (double t1 : theta1_range) {
        out.emplace_back(t1, coincidence_probability(rho, t1, theta2_fixed));
    }
    return out;
}

double fringe_visibility(const std::vector<std::pair<double, double>>& points) {
    // a + b sin^2(t - t0) is linear in {1, cos 2t, sin 2t}
    if (points.size() < 3) throw ValidationError("fringe_visibility: need >= 3 points");
    Eigen::MatrixXd design(points.size(), 3);
    Eigen::VectorXd y(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(2.0 * points[i].first);
        design(i, 2) = std::sin(2.0 * points[i].first);
        y(i) = points[i].second;
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
    const double mean = coef(0);
    const double amp = std::hypot(coef(1), coef(2));
    if (mean <= 0.0) throw ValidationError("fringe_visibility: degenerate fringe");
    return amp / mean;
}

}  // namespace entsim
