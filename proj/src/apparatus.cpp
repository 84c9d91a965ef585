#include "entsim/apparatus.hpp"

#include <cmath>

#include "entsim/random.hpp"

namespace entsim {

DetectorModel DetectorModel::ideal() {
    DetectorModel m;
    m.dqe = 1.0;
    m.dark_rate = 0.0;
    m.coincidence_window = 0.0;
    m.singles_rate_background = 0.0;
    return m;
}

void DetectorModel::validate() const {
    if (!(dqe >= 0.0 && dqe <= 1.0)) throw ValidationError("DetectorModel: dqe outside [0,1]");
    for (double v : {dark_rate, pair_rate, coincidence_window, singles_rate_background}) {
        if (!(v >= 0.0)) throw ValidationError("DetectorModel: negative parameter");
    }
}

double accidental_rate(const DensityMatrix& rho, const MeasurementSetting& setting,
                       const DetectorModel& model) {
    model.validate();
    const auto [pa, pb] = marginal_probabilities(rho, setting);
    const double singles_a =
        model.pair_rate * model.dqe * pa + model.dark_rate + model.singles_rate_background;
    const double singles_b =
        model.pair_rate * model.dqe * pb + model.dark_rate + model.singles_rate_background;
    return singles_a * singles_b * model.coincidence_window;
}

double expected_rate(const DensityMatrix& rho, const MeasurementSetting& setting,
                     const DetectorModel& model) {
    model.validate();
    const double p = born_probability(rho, setting);
    return model.pair_rate * model.dqe * model.dqe * p +
           accidental_rate(rho, setting, model);
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                         const std::vector<MeasurementSetting>& settings,
                                         double duration_s, const DetectorModel& model,
                                         std::uint64_t seed) {
    if (settings.empty()) throw ValidationError("simulate_counts: empty setting list");
    if (!(duration_s > 0.0)) throw ValidationError("simulate_counts: nonpositive duration");
    std::vector<CountRecord> records;
    records.reserve(settings.size());
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const MeasurementSetting& s = settings[i];
        std::mt19937_64 rng(split_seed(seed, i));
        CountRecord rec;
        rec.setting_id = s.id;
        rec.theta_a = s.theta_a;
        rec.theta_b = s.theta_b;
        rec.duration_s = duration_s;
        rec.coincidences = sample_poisson(expected_rate(rho, s, model) * duration_s, rng);
        rec.accidental_estimate = accidental_rate(rho, s, model) * duration_s;
        records.push_back(rec);
    }
    return records;
}

ChshEstimate run_bell_experiment(const DensityMatrix& rho, const ChshAngles& angles,
                                 double duration_s, const DetectorModel& model,
                                 std::uint64_t seed) {
    const auto records = simulate_counts(rho, chsh_settings(angles), duration_s, model, seed);
    return estimate_S_from_counts(records, angles);
}

}  // namespace entsim
