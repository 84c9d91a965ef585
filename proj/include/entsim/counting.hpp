#pragma once

#include <limits>
#include <string>
#include <vector>

#include "entsim/core.hpp"

namespace entsim {

/// Rank-1 projector onto cos(theta)|H> + sin(theta)|V>.
Mat2 linear_polarizer(double theta);

/// One joint measurement setting: a rank-1 projector per arm. Analyzer
/// settings additionally carry their polarizer angles; tomographic
/// settings carry a two-letter label like "HV" or "DR" instead.
struct MeasurementSetting {
    std::string id;
    Mat2 proj_a;
    Mat2 proj_b;
    double theta_a = std::numeric_limits<double>::quiet_NaN();
    double theta_b = std::numeric_limits<double>::quiet_NaN();

    static MeasurementSetting analyzers(double theta_a, double theta_b);

    bool has_angles() const;
};

/// Tr[rho (P_a x P_b)], clamped to [0,1].
double born_probability(const DensityMatrix& rho, const MeasurementSetting& s);

/// Marginal click probabilities Tr[rho (P_a x I)] and Tr[rho (I x P_b)].
std::pair<double, double> marginal_probabilities(const DensityMatrix& rho,
                                                 const MeasurementSetting& s);

/// Measured coincidences for one setting.
struct CountRecord {
    std::string setting_id;
    double theta_a = std::numeric_limits<double>::quiet_NaN();
    double theta_b = std::numeric_limits<double>::quiet_NaN();
    double duration_s = 0.0;
    double coincidences = 0.0;
    double accidental_estimate = 0.0;
};

}  // namespace entsim
