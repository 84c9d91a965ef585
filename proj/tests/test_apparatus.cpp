#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entsim/apparatus.hpp"
#include "entsim/random.hpp"
#include "entsim/states.hpp"
#include "helpers.hpp"

using namespace entsim;

namespace {
constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2.0 * std::sqrt(2.0);
}  // namespace

TEST_CASE("expected rate for the flat state with ideal detectors") {
    DetectorModel m = DetectorModel::ideal();
    m.pair_rate = 4000.0;
    const auto setting = MeasurementSetting::analyzers(0.3, 1.2);
    CHECK(expected_rate(maximally_mixed(), setting, m) ==
          doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("singlet at the parallel-analyzer minimum with ideal detectors") {
    DetectorModel m = DetectorModel::ideal();
    const auto setting = MeasurementSetting::analyzers(0.9, 0.9);
    CHECK(expected_rate(singlet_density(), setting, m) == doctest::Approx(0.0));
}

TEST_CASE("default model rate at the fringe maximum") {
    const DetectorModel m;  // defaults: dqe 0.65, 50/s darks, 4000 pairs/s
    const auto setting = MeasurementSetting::analyzers(0.0, kPi / 2.0);
    const double projection = 0.65 * 0.65 * 4000.0 * 0.5;
    const double rate = expected_rate(singlet_density(), setting, m);
    CHECK(rate > projection);
    CHECK(rate < projection + 1.0);  // accidentals are a tiny additive term
    CHECK(accidental_rate(singlet_density(), setting, m) ==
          doctest::Approx(rate - projection).epsilon(1e-9));
}

TEST_CASE("simulate_counts is deterministic in the seed") {
    const auto settings = chsh_settings(ChshAngles::optimal());
    const DetectorModel m;
    const auto a = simulate_counts(werner(0.7), settings, 30.0, m, 12345);
    const auto b = simulate_counts(werner(0.7), settings, 30.0, m, 12345);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].coincidences == b[i].coincidences);
        CHECK(a[i].setting_id == b[i].setting_id);
    }
    const auto c = simulate_counts(werner(0.7), settings, 30.0, m, 54321);
    bool any_different = false;
    for (size_t i = 0; i < a.size(); ++i) {
        any_different |= a[i].coincidences != c[i].coincidences;
    }
    CHECK(any_different);
}

TEST_CASE("zero expected rate always yields zero counts") {
    DetectorModel m = DetectorModel::ideal();
    const std::vector<MeasurementSetting> settings = {
        MeasurementSetting::analyzers(0.4, 0.4)};
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        const auto records = simulate_counts(singlet_density(), settings, 100.0, m, seed);
        CHECK(records[0].coincidences == 0.0);
    }
}

TEST_CASE("empty settings and bad durations are rejected") {
    CHECK_THROWS_AS(simulate_counts(werner(0.5), {}, 1.0, DetectorModel{}, 1),
                    ValidationError);
    const std::vector<MeasurementSetting> settings = {MeasurementSetting::analyzers(0, 0)};
    CHECK_THROWS_AS(simulate_counts(werner(0.5), settings, 0.0, DetectorModel{}, 1),
                    ValidationError);
}

TEST_CASE("Poisson sample mean matches the expected count") {
    std::mt19937_64 pick(3);
    const auto settings = chsh_settings(ChshAngles::optimal());
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int pair = 0; pair < 10; ++pair) {
        const DensityMatrix rho = test::random_density(pick);
        const MeasurementSetting setting = settings[static_cast<size_t>(uni(pick) * 16)];
        const DetectorModel m;
        const double duration = 0.05 + 2.0 * uni(pick);
        const double mean = expected_rate(rho, setting, m) * duration;
        double sum = 0.0;
        const int n_seeds = 1000;
        for (int s = 0; s < n_seeds; ++s) {
            const auto rec =
                simulate_counts(rho, {setting}, duration, m, 1000 + s);
            sum += rec[0].coincidences;
        }
        const double sample_mean = sum / n_seeds;
        const double stderr_mean = std::sqrt(mean / n_seeds);
        CHECK(std::abs(sample_mean - mean) <= 4.0 * stderr_mean + 1e-9);
    }
}

TEST_CASE("large-mean aggregate matches Poisson statistics") {
    // mean 720000 per setting: 4000 cps over 180 s
    DetectorModel m = DetectorModel::ideal();
    m.pair_rate = 16000.0;
    const std::vector<MeasurementSetting> settings = {
        MeasurementSetting::analyzers(0.0, kPi / 2.0)};  // singlet maximum, p = 1/2
    const double mean = expected_rate(singlet_density(), settings[0], m) * 90.0;
    CHECK(mean == doctest::Approx(720000.0).epsilon(1e-9));
    double sum = 0.0;
    const int n_seeds = 100;
    for (int s = 0; s < n_seeds; ++s) {
        sum += simulate_counts(singlet_density(), settings, 90.0, m, 7000 + s)[0]
                   .coincidences;
    }
    const double sample_mean = sum / n_seeds;
    CHECK(std::abs(sample_mean - mean) <= 3.0 * std::sqrt(mean / n_seeds));
}

TEST_CASE("bell run on the singlet lands near the quantum maximum") {
    const ChshEstimate est = run_bell_experiment(
        singlet_density(), ChshAngles::optimal(), 180.0, DetectorModel{}, 42);
    CHECK(std::abs(est.S - kTsirelson) < 3.0 * est.sigma_S);
    CHECK(est.significance > 100.0);
}

TEST_CASE("bell run on werner(0.42) shows no violation") {
    int below = 0;
    for (int s = 0; s < 20; ++s) {
        const ChshEstimate est = run_bell_experiment(
            werner(0.42), ChshAngles::optimal(), 180.0, DetectorModel{}, 100 + s);
        if (est.S < 2.0) ++below;
        CHECK(std::abs(est.S - 0.42 * kTsirelson) < 0.05);
    }
    CHECK(below == 20);
}

TEST_CASE("sigma_S follows the inverse square root of duration") {
    const auto run = [](double duration) {
        return run_bell_experiment(singlet_density(), ChshAngles::optimal(), duration,
                                   DetectorModel{}, 7)
            .sigma_S;
    };
    const double ratio = run(18.0) / run(180.0);
    CHECK(ratio == doctest::Approx(std::sqrt(10.0)).epsilon(0.10));
}

TEST_CASE("count estimate converges to the ideal S at huge statistics") {
    // ~1e7 expected counts per setting
    DetectorModel m = DetectorModel::ideal();
    m.pair_rate = 4000.0;
    const ChshEstimate est = run_bell_experiment(singlet_density(), ChshAngles::optimal(),
                                                 10000.0, m, 11);
    CHECK(std::abs(est.S - kTsirelson) < 0.01);
}

TEST_CASE("split_seed decorrelates consecutive indices") {
    const std::uint64_t a = split_seed(1, 0);
    const std::uint64_t b = split_seed(1, 1);
    const std::uint64_t c = split_seed(2, 0);
    CHECK(a != b);
    CHECK(a != c);
}
