#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "entsim/core.hpp"
#include "entsim/io.hpp"
#include "entsim/states.hpp"
#include "helpers.hpp"

using namespace entsim;

TEST_CASE("from_pure basis projector") {
    Vec4 a = Vec4::Zero();
    a(kHH) = 1.0;
    const DensityMatrix rho = from_pure(PureState(a));
    Mat4 expected = Mat4::Zero();
    expected(kHH, kHH) = 1.0;
    CHECK((rho.matrix() - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("from_pure of the phi=0 and phi=pi Bell states") {
    const DensityMatrix plus = from_pure(bell_phi(0.0));
    CHECK(plus(kHH, kHH).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(plus(kVV, kVV).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(plus(kHH, kVV).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(plus(kHV, kHV).real() == doctest::Approx(0.0));

    const DensityMatrix minus = from_pure(bell_phi(std::numbers::pi));
    CHECK(minus(kHH, kVV).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(minus(kHH, kVV).imag()) < 1e-12);
}

TEST_CASE("from_pure rejects non-normalized input") {
    Vec4 a = Vec4::Zero();
    a(kHH) = 0.9;
    CHECK_THROWS_AS(PureState{a}, ValidationError);
}

TEST_CASE("mix identity and two-projector cases") {
    const DensityMatrix w = werner(0.7);
    const DensityMatrix same = mix({{1.0, w}});
    CHECK((same.matrix() - w.matrix()).cwiseAbs().maxCoeff() < 1e-15);

    Vec4 hh = Vec4::Zero(), vv = Vec4::Zero();
    hh(kHH) = 1.0;
    vv(kVV) = 1.0;
    const DensityMatrix half =
        mix({{0.5, from_pure(PureState(hh))}, {0.5, from_pure(PureState(vv))}});
    CHECK(half(kHH, kHH).real() == doctest::Approx(0.5));
    CHECK(half(kVV, kVV).real() == doctest::Approx(0.5));
    CHECK(std::abs(half(kHV, kHV)) < 1e-15);
}

TEST_CASE("mix reproduces the Werner matrix at p=0.42") {
    const DensityMatrix rho =
        mix({{0.42, singlet_density()}, {0.58, maximally_mixed()}});
    CHECK(rho(kHH, kHH).real() == doctest::Approx(0.145).epsilon(1e-12));
    CHECK(rho(kVV, kVV).real() == doctest::Approx(0.145).epsilon(1e-12));
    CHECK(rho(kHV, kHV).real() == doctest::Approx(0.355).epsilon(1e-12));
    CHECK(rho(kHV, kVH).real() == doctest::Approx(-0.21).epsilon(1e-12));
}

TEST_CASE("mix input validation") {
    CHECK_THROWS_AS(mix({{-0.1, werner(0.5)}, {1.1, werner(0.5)}}), ValidationError);
    CHECK_THROWS_AS(mix({{0.5, werner(0.5)}, {0.4, werner(0.5)}}), ValidationError);
    CHECK_THROWS_AS(mix({}), ValidationError);
}

TEST_CASE("mix preserves density-matrix invariants on random terms") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<double, DensityMatrix>> terms;
        double wsum = 0.0;
        std::vector<double> raw;
        const int n = 2 + static_cast<int>(uni(rng) * 3);
        for (int i = 0; i < n; ++i) {
            raw.push_back(uni(rng) + 1e-3);
            wsum += raw.back();
        }
        for (int i = 0; i < n; ++i) {
            terms.emplace_back(raw[i] / wsum, test::random_density(rng));
        }
        // constructor re-validates Hermiticity, trace and positivity
        CHECK_NOTHROW(mix(terms));
    }
}

TEST_CASE("from_pure purity equals 1 on random states") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = from_pure(test::random_pure_state(rng));
        CHECK(std::abs(purity(rho) - 1.0) < 1e-12);
    }
}

TEST_CASE("fidelity examples") {
    const DensityMatrix w = werner(0.42);
    CHECK(fidelity(w, w) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity(singlet_density(), maximally_mixed()) ==
          doctest::Approx(0.25).epsilon(1e-10));
    // <Psi-|rho_W|Psi-> = (1 + 3p)/4
    CHECK(fidelity(w, singlet_density()) == doctest::Approx(0.565).epsilon(1e-10));
}

TEST_CASE("fidelity is symmetric on random pairs") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix a = test::random_density(rng);
        const DensityMatrix b = test::random_density(rng);
        CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) < 1e-10);
    }
}

TEST_CASE("eigenvalues are sorted descending") {
    const Eigen::Vector4d ev = eigenvalues_descending(werner(0.8).matrix());
    for (int i = 0; i < 3; ++i) CHECK(ev(i) >= ev(i + 1));
    CHECK(ev.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("density matrix JSON round-trip is bit-faithful") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = test::random_density(rng);
        const DensityMatrix back = density_from_json(density_to_json(rho));
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                CHECK(rho(r, c).real() == back(r, c).real());
                CHECK(rho(r, c).imag() == back(r, c).imag());
            }
        }
        // serialized text is also stable
        CHECK(density_to_json(rho).dump() == density_to_json(back).dump());
    }
}

TEST_CASE("density matrix validation rejects bad inputs") {
    Mat4 m = Mat4::Identity();  // trace 4
    CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);
    m = 0.25 * Mat4::Identity();
    m(0, 1) = 0.3;  // not Hermitian
    CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);
    Mat4 neg = Mat4::Zero();
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;  // negative eigenvalue
    CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
}
