#pragma once

#include <utility>
#include <vector>

#include "entsim/counting.hpp"

namespace entsim {

/// The four analyzer orientations of a CHSH run.
struct ChshAngles {
    double theta1;
    double theta1p;
    double theta2;
    double theta2p;

    /// (0, pi/4, pi/8, 3pi/8): maximizes |S| for the singlet under the
    /// linear-polarizer correlation model.
    static ChshAngles optimal();

    /// (0, pi/2, pi/4, 3pi/4): the set quoted in the source literature.
    /// Gives S = 0 for a singlet under the same model; kept selectable.
    static ChshAngles printed();

    void validate() const;
};

struct ChshEstimate {
    double S;
    double sigma_S;
    double significance;  // (S - 2) / sigma_S
};

/// Tr[rho P(theta1) x P(theta2)] for linear polarizers.
double coincidence_probability(const DensityMatrix& rho, double theta1, double theta2);

/// Polarization correlation E(theta1, theta2), the normalized combination
/// [C(t1,t2) + C(t1+,t2+) - C(t1,t2+) - C(t1+,t2)] / [sum of all four],
/// with t+ = t + pi/2.
double correlation(const DensityMatrix& rho, double theta1, double theta2);

/// |P(t1,t2) - P(t1,t2') + P(t1',t2) + P(t1',t2')|.
double chsh_S(const DensityMatrix& rho, const ChshAngles& angles);

/// The 16 analyzer settings of a full CHSH run: for each of the four
/// (a, b) CHSH pairs, the combinations (a,b), (a+,b+), (a,b+), (a+,b).
std::vector<MeasurementSetting> chsh_settings(const ChshAngles& angles);

/// S and its Poisson (delta-method) standard error from 16 measured
/// coincidence counts. Records are matched to the required settings by
/// analyzer angle; missing or duplicated settings are errors, as is an
/// all-zero count quadruple.
ChshEstimate estimate_S_from_counts(const std::vector<CountRecord>& records,
                                    const ChshAngles& angles);

/// Coincidence-probability fringe vs theta1 at fixed theta2.
std::vector<std::pair<double, double>> fringe(const DensityMatrix& rho,
                                              double theta2_fixed,
                                              const std::vector<double>& theta1_range);

/// Fringe contrast from a least-squares fit of a + b sin^2(theta - theta0)
/// to (theta, value) points. Needs at least 3 distinct angles.
double fringe_visibility(const std::vector<std::pair<double, double>>& points);

}  // namespace entsim
