#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "unit/test_support.hpp"
#include "zeta_osc/phase_map.hpp"

using namespace zeta_osc;

namespace {

using LD = long double;

// arg(conj(s) / s) for s = 1/2 + ib, by two-argument arctangent in long double.
LD theta_oracle(LD b) {
    const std::complex<LD> s(0.5L, b);
    const auto q = std::conj(s) / s;
    return std::atan2(q.imag(), q.real());
}

}  // namespace

TEST_CASE("theta of the first zeros") {
    const double b1 = 14.134725141734693, b2 = 21.022039638771555;
    CHECK(theta_of(b1) == doctest::Approx(-3.0708742).epsilon(1e-7));
    CHECK(theta_of(b2) == doctest::Approx(-3.0940324).epsilon(1e-7));
    CHECK(std::abs(theta_of(b1) - static_cast<double>(theta_oracle(b1))) < 1e-15);
    CHECK(std::abs(theta_of(b2) - static_cast<double>(theta_oracle(b2))) < 1e-15);
    for (double b : {b1, b2}) {
        const std::complex<double> s(0.5, b);
        CHECK(std::abs(std::polar(1.0, theta_of(b)) - std::conj(s) / s) < 1e-14);
    }
}

TEST_CASE("theta domain") {
    CHECK_THROWS_AS(theta_of(14.0), std::domain_error);
    CHECK_THROWS_AS(theta_of(0.5), std::domain_error);
    CHECK_THROWS_AS(omega_of(-3.0), std::domain_error);
}

TEST_CASE("phase table of the first three zeros") {
    auto one = build_phase_table(std::vector<double>{14.134725141734693});
    REQUIRE(one.count() == 1);
    // mpmath, 40 digits: 2 atan(1/(2b))
    CHECK(one.omega[0] == doctest::Approx(0.07071826294293219).epsilon(1e-15));

    auto three = build_phase_table(std::vector<double>{14.134725141734693, 21.022039638771555, 25.010857580145688});
    REQUIRE(three.count() == 3);
    CHECK(three.omega[0] == doctest::Approx(0.07071826294293219).epsilon(1e-15));
    CHECK(three.omega[1] == doctest::Approx(0.04756015651665851).epsilon(1e-15));
    CHECK(three.omega[2] == doctest::Approx(0.03997731029960868).epsilon(1e-15));
    CHECK(three.omega[0] > three.omega[1]);
    CHECK(three.omega[1] > three.omega[2]);
}

TEST_CASE("empty zero table gives an empty phase table") {
    auto t = build_phase_table(ZeroTable{});
    CHECK(t.count() == 0);
    CHECK(t.theta.empty());
}

TEST_CASE("domain errors name the offending index") {
    try {
        build_phase_table(std::vector<double>{14.5, 15.0, 3.0});
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("index 2") != std::string::npos);
    }
}

TEST_CASE("literal single-argument form agrees with the quadrant-safe form") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> log_b(std::log(14.5), std::log(1e6));
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double b = std::exp(log_b(rng));
        worst = std::max(worst, std::abs(theta_of(b) - theta_literal_form(b)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("unit-circle identity, quadrant and omega = pi + theta on reference zeros") {
    const auto& ref = test::reference_zeros();
    const auto phases = build_phase_table(ref);
    REQUIRE(phases.count() == ref.count());
    for (std::size_t j = 0; j < ref.count(); ++j) {
        const std::complex<double> s(0.5, ref.values[j]);
        CHECK(std::abs(std::polar(1.0, phases.theta[j]) * s - std::conj(s)) < 1e-12 * std::abs(s));
        CHECK(phases.theta[j] > -std::numbers::pi);
        CHECK(phases.theta[j] < -std::numbers::pi / 2);
        CHECK(phases.omega[j] > 0.0);
        CHECK(phases.omega[j] < std::numbers::pi / 2);
        CHECK(std::abs(phases.omega[j] - (std::numbers::pi + phases.theta[j])) <= 1e-15);
        if (j > 0) CHECK(phases.omega[j] < phases.omega[j - 1]);
    }
}

TEST_CASE("omega * b tends to 1") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(100.0, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double b = dist(rng);
        CHECK(std::abs(omega_of(b) * b - 1.0) < 2.0 / (4.0 * b * b));
    }
}

TEST_CASE("omega strictly decreasing for increasing inputs (property)") {
    std::mt19937_64 rng(9);
    std::exponential_distribution<double> gap(1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> b;
        double v = 14.5;
        for (int i = 0; i < 200; ++i) {
            v += gap(rng) * std::pow(10.0, trial % 5) + 1e-9 * v;
            b.push_back(v);
        }
        const auto p = build_phase_table(b);
        for (std::size_t j = 1; j < p.count(); ++j) CHECK(p.omega[j] < p.omega[j - 1]);
    }
}

TEST_CASE("phase CSV export") {
    ZeroTable z{{14.134725141734693, 21.022039638771555}, ""};
    std::ostringstream out;
    write_phase_csv(z, build_phase_table(z), out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "j,b,theta,omega");
    std::getline(in, line);
    CHECK(line.rfind("1,14.134725141734693,", 0) == 0);
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
}
