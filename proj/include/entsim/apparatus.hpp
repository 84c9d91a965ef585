#pragma once

#include <cstdint>

#include "entsim/chsh.hpp"
#include "entsim/counting.hpp"

namespace entsim {

/// Detector and source parameters of the coincidence-counting setup.
/// pair_rate is the rate of detected pairs before polarizer projection at
/// the nominal operating point; dark counts and stray light enter the
/// accidental-coincidence term through the singles rates.
struct DetectorModel {
    double dqe = 0.65;                    // per detector
    double dark_rate = 50.0;              // counts/s per detector
    double pair_rate = 4000.0;            // pairs/s reaching the detectors
    double coincidence_window = 3e-9;     // s
    double singles_rate_background = 0.0; // counts/s per detector

    static DetectorModel ideal();  // dqe 1, no darks, no accidentals

    void validate() const;
};

/// Expected coincidence rate (counts/s) for one setting:
/// pair_rate * dqe^2 * Tr[rho P_a x P_b] plus accidentals
/// singles_a * singles_b * window.
double expected_rate(const DensityMatrix& rho, const MeasurementSetting& setting,
                     const DetectorModel& model);

/// Accidental-coincidence rate alone (counts/s).
double accidental_rate(const DensityMatrix& rho, const MeasurementSetting& setting,
                       const DetectorModel& model);

/// Poisson-sampled coincidence counts for each setting over the given
/// duration. Per-setting sub-seeds derive deterministically from
/// (seed, setting index): identical seed, identical output.
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                         const std::vector<MeasurementSetting>& settings,
                                         double duration_s, const DetectorModel& model,
                                         std::uint64_t seed);

/// Full CHSH run: simulate the 16 settings, then estimate S and its
/// Poisson standard error from the counts.
ChshEstimate run_bell_experiment(const DensityMatrix& rho, const ChshAngles& angles,
                                 double duration_s, const DetectorModel& model,
                                 std::uint64_t seed);

}  // namespace entsim
