#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles/zeta_oracle.hpp"
#include "unit/test_support.hpp"
#include "zeta_osc/error.hpp"
#include "zeta_osc/zeros_compute.hpp"

using namespace zeta_osc;
namespace orc = zeta_osc::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<std::size_t, double>> spot_zeros() {
    std::ifstream in(test::data_path("zeros_spot.txt"));
    std::vector<std::pair<std::size_t, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t n;
        double v;
        ls >> n >> v;
        out.emplace_back(n, v);
    }
    return out;
}

// Zeros of the oracle Z in (lo, hi), by a fine scan plus long double bisection.
std::vector<double> oracle_zeros(double lo, double hi, double step) {
    std::vector<double> out;
    orc::LD t0 = lo;
    orc::LD z0 = orc::hardy_z(t0);
    for (orc::LD t = lo + step; t <= hi; t += step) {
        const orc::LD z = orc::hardy_z(t);
        if ((z < 0) != (z0 < 0))
            out.push_back(static_cast<double>(orc::bisect([](orc::LD u) { return orc::hardy_z(u); }, t0, t)));
        t0 = t;
        z0 = z;
    }
    return out;
}

}  // namespace

TEST_CASE("rs_theta closed form at t = 2 pi") {
    // ln(t / 2pi) = 0 there.
    const orc::LD pi = std::numbers::pi_v<orc::LD>;
    const orc::LD expected = -pi - pi / 8 + 1 / (96 * pi) + 7 / (5760 * (2 * pi) * (2 * pi) * (2 * pi));
    CHECK(rs_theta(2 * kPi) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
    CHECK(rs_theta(2 * kPi) == doctest::Approx(-3.5309711).epsilon(1e-7));
}

TEST_CASE("rs_theta domain") {
    CHECK_THROWS_AS(rs_theta(0.0), std::domain_error);
    CHECK_THROWS_AS(rs_theta(-1.0), std::domain_error);
    CHECK_THROWS_AS(rs_theta(std::nan("")), std::domain_error);
}

TEST_CASE("rs_theta vanishes at g0 and equals pi at g1 (bisection oracle)") {
    const double g0 = static_cast<double>(orc::bisect([](orc::LD t) { return orc::rs_theta_ld(t); }, 15.0L, 20.0L));
    const double g1 = static_cast<double>(
        orc::bisect([](orc::LD t) { return orc::rs_theta_ld(t) - std::numbers::pi_v<orc::LD>; }, 20.0L, 25.0L));
    CHECK(g0 == doctest::Approx(17.8455995).epsilon(1e-8));
    CHECK(g1 == doctest::Approx(23.1702827).epsilon(1e-8));
    CHECK(std::abs(rs_theta(g0)) < 1e-12);
    CHECK(std::abs(rs_theta(g1) - kPi) < 1e-12);

    CHECK(std::abs(gram_point(0) - g0) < 1e-12);
    CHECK(std::abs(gram_point(1) - g1) < 1e-12);
    CHECK(gram_point(-1) == doctest::Approx(9.6669080774685).epsilon(1e-12));
}

TEST_CASE("gram_point residual") {
    for (std::int64_t n : {0, 1, 2, 5, 17, 100, 126, 1000, 10000, 100000}) {
        const double g = gram_point(n);
        CHECK(std::abs(rs_theta(g) - static_cast<double>(n) * kPi) < 1e-10);
        if (n > 0) CHECK(g > gram_point(n - 1));
    }
    CHECK_THROWS_AS(gram_point(-2), std::domain_error);
}

TEST_CASE("rs_z brackets the first zero and matches the Euler-Maclaurin oracle") {
    CHECK(std::signbit(rs_z(14.0)) != std::signbit(rs_z(14.2)));
    CHECK(std::abs(rs_z(14.134725141734693)) < 1e-3);
    const double oracle20 = static_cast<double>(orc::hardy_z(20.0L));
    CHECK(oracle20 == doctest::Approx(1.1478424121851973).epsilon(1e-12));
    CHECK(std::signbit(rs_z(20.0)) == std::signbit(oracle20));
    CHECK(std::abs(rs_z(20.0) - oracle20) < 1e-4);
    // first-order form alone
    CHECK(std::abs(rs_z(20.0, 0) - oracle20) < 1e-2);
    CHECK(std::abs(rs_z(14.134725141734693, 0)) < 3e-3);
}

TEST_CASE("rs_z accuracy improves with height and correction terms") {
    for (double t : {14.0, 20.0, 30.0, 49.0}) {
        const double err = std::abs(rs_z(t) - static_cast<double>(orc::hardy_z(t)));
        CHECK(err < 5e-6);
        CHECK(err < std::abs(rs_z(t, 0) - static_cast<double>(orc::hardy_z(t))));
    }
    for (double t : {100.0, 236.5, 500.0, 1000.0}) CHECK(std::abs(rs_z(t) - static_cast<double>(orc::hardy_z(t))) < 1e-7);
}

TEST_CASE("rs_z domain") {
    CHECK_THROWS_AS(rs_z(2 * kPi), std::domain_error);
    CHECK_THROWS_AS(rs_z(1.0), std::domain_error);
    CHECK_THROWS_AS(rs_z(20.0, 5), std::invalid_argument);
}

TEST_CASE("rs_psi through its removable singularities") {
    CHECK(rs_psi(0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rs_psi(0.75) == doctest::Approx(0.5).epsilon(1e-15));
    // Psi(1/4 + e) = 1/2 - e + O(e^2), Psi(3/4 + e) = 1/2 + e + O(e^2)
    for (double e : {1e-12, -1e-12, 1e-10, -3e-10, 1e-9}) {
        CHECK(std::abs(rs_psi(0.25 + e) - (0.5 - e)) < 1e-15);
        CHECK(std::abs(rs_psi(0.75 + e) - (0.5 + e)) < 1e-15);
    }
    // Continuity across the branch threshold against a long double closed form.
    auto psi_ld = [](orc::LD p) {
        const orc::LD tp = 2 * std::numbers::pi_v<orc::LD>;
        return std::cos(tp * (p * p - p - 1.0L / 16)) / std::cos(tp * p);
    };
    for (double p : {0.25 + 1e-6, 0.25 - 1e-6, 0.75 + 2e-6, 0.1, 0.5, 0.9}) {
        CHECK(rs_psi(p) == doctest::Approx(static_cast<double>(psi_ld(p))).epsilon(1e-9));
    }
}

TEST_CASE("hardy_z agrees with the oracle across the crossover") {
    for (double t : {10.0, 14.134725141734693, 50.0, 123.4, 399.0, 401.0, 777.7}) {
        const double oracle = static_cast<double>(orc::hardy_z(t));
        CHECK(std::abs(hardy_z(t) - oracle) < (t < kEulerMaclaurinCrossover ? 1e-11 : 1e-8));
    }
}

TEST_CASE("bisection output stays inside its sign-change bracket") {
    const auto& ref = test::reference_zeros();
    for (std::size_t j = 0; j < 30; ++j) {
        const double lo = ref.values[j] - 0.05;
        const double hi = ref.values[j] + 0.05;
        const double flo = rs_z(lo), fhi = rs_z(hi);
        REQUIRE(std::signbit(flo) != std::signbit(fhi));
        const double tol = 1e-10;
        const double root = bisect_sign_change([](double t) { return rs_z(t); }, lo, hi, tol);
        CHECK(root >= lo);
        CHECK(root <= hi);
        CHECK(std::signbit(rs_z(root - tol)) != std::signbit(rs_z(root + tol)));
    }
    CHECK_THROWS_AS(bisect_sign_change([](double t) { return t * t + 1; }, -1.0, 1.0, 1e-9),
                    std::invalid_argument);
}

TEST_CASE("first zero and first ten zeros") {
    const auto& ref = test::reference_zeros();
    auto one = compute_first_n_zeros(1);
    REQUIRE(one.count() == 1);
    CHECK(std::abs(one.values[0] - 14.134725141734693) < 1e-6);

    auto ten = compute_first_n_zeros(10);
    REQUIRE(ten.count() == 10);
    for (std::size_t j = 0; j < 10; ++j) CHECK(std::abs(ten.values[j] - ref.values[j]) < 1e-6);
    CHECK(ten.back() == doctest::Approx(49.773832).epsilon(1e-7));
}

TEST_CASE("first 100 zeros validate and agree with the reference table") {
    const auto& ref = test::reference_zeros();
    auto t = compute_first_n_zeros(100);
    CHECK_NOTHROW(validate_zeros(t.values));
    REQUIRE(t.count() == 100);
    double worst = 0.0;
    for (std::size_t j = 0; j < 100; ++j) worst = std::max(worst, std::abs(t.values[j] - ref.values[j]));
    CHECK(worst < 1e-6);
}

TEST_CASE("Gram interleaving of the first 100 zeros matches an oracle scan") {
    auto computed = compute_first_n_zeros(100);
    auto oracle = oracle_zeros(10.0, 237.0, 0.02);
    REQUIRE(oracle.size() == 100);

    auto gram_oracle = [](std::int64_t n) {
        const orc::LD target = static_cast<orc::LD>(n) * std::numbers::pi_v<orc::LD>;
        return static_cast<double>(orc::bisect([&](orc::LD t) { return orc::rs_theta_ld(t) - target; }, 7.0L, 400.0L));
    };
    auto violations = [&](const std::vector<double>& zeros) {
        std::size_t bad = 0;
        for (std::size_t j = 1; j <= zeros.size(); ++j) {
            const auto jj = static_cast<std::int64_t>(j);
            const double b = zeros[j - 1];
            if (!(b > gram_oracle(jj - 2) && b < gram_oracle(jj))) ++bad;
        }
        return bad;
    };
    CHECK(violations(computed.values) == violations(oracle));
    for (std::size_t j = 0; j < 100; ++j) CHECK(std::abs(computed.values[j] - oracle[j]) < 1e-8);
}

TEST_CASE("zeros past the first Gram-law failure match published spot values") {
    auto t = compute_first_n_zeros(10000);
    REQUIRE(t.count() == 10000);
    for (auto [n, value] : spot_zeros()) {
        if (n > t.count()) continue;
        CAPTURE(n);
        CHECK(std::abs(t.values[n - 1] - value) < 1e-6);
    }
}

TEST_CASE("coarser tolerance still brackets the zeros") {
    RSConfig cfg;
    cfg.refine_tolerance = 1e-4;
    cfg.scan_points_per_gram_interval = 4;
    auto t = compute_first_n_zeros(50, cfg);
    const auto& ref = test::reference_zeros();
    for (std::size_t j = 0; j < 50; ++j) CHECK(std::abs(t.values[j] - ref.values[j]) < 1e-4);
}

TEST_CASE("compute configuration errors") {
    CHECK_THROWS_AS(compute_first_n_zeros(0), std::invalid_argument);
    RSConfig cfg;
    cfg.refine_tolerance = 0.0;
    CHECK_THROWS_AS(compute_first_n_zeros(5, cfg), std::invalid_argument);
    cfg = RSConfig{};
    cfg.scan_points_per_gram_interval = 3;
    CHECK_THROWS_AS(compute_first_n_zeros(5, cfg), std::invalid_argument);
}
