#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <graphsel/stats.hpp>

using namespace graphsel;

// Expected values frozen from an independent statistics package.

TEST_CASE("regularized incomplete beta") {
  REQUIRE(incomplete_beta(0.5, 0.5, 0.3) ==
          Catch::Approx(0.3690101195655454).margin(1e-10));
  REQUIRE(incomplete_beta(2.0, 3.0, 0.4) ==
          Catch::Approx(0.5247999999999999).margin(1e-10));
  REQUIRE(incomplete_beta(5.0, 0.5, 0.9) ==
          Catch::Approx(0.3166429150200122).margin(1e-10));
  REQUIRE(incomplete_beta(10.0, 10.0, 0.5) == Catch::Approx(0.5).margin(1e-10));
  REQUIRE(incomplete_beta(3.5, 0.5, 0.99) ==
          Catch::Approx(0.7979716952348509).margin(1e-10));
  REQUIRE(incomplete_beta(2.0, 2.0, 0.0) == 0.0);
  REQUIRE(incomplete_beta(2.0, 2.0, 1.0) == 1.0);
}

TEST_CASE("student t cdf") {
  REQUIRE(student_t_cdf(1.0, 5.0) ==
          Catch::Approx(0.8183912661754387).margin(1e-10));
  REQUIRE(student_t_cdf(-2.3, 7.0) ==
          Catch::Approx(0.02749554760218577).margin(1e-10));
  REQUIRE(student_t_cdf(0.0, 3.0) == Catch::Approx(0.5).margin(1e-12));
  REQUIRE(student_t_cdf(2.776, 4.0) ==
          Catch::Approx(0.9749886108400118).margin(1e-10));
  REQUIRE(student_t_cdf(10.0, 2.0) ==
          Catch::Approx(0.9950737714883371).margin(1e-10));
  REQUIRE(student_t_cdf(-0.5, 29.37) ==
          Catch::Approx(0.3104004089259548).margin(1e-10));
}

TEST_CASE("mean and sample std") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  REQUIRE(mean(xs) == Catch::Approx(2.5));
  REQUIRE(sample_std(xs) == Catch::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
  REQUIRE_THROWS_AS(sample_std(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("welch test matches the direct formula") {
  const std::vector<double> a{0.82, 0.85, 0.81, 0.84, 0.83};
  const std::vector<double> b{0.78, 0.80, 0.79, 0.77};
  const WelchResult r = welch_t_test(a, b);

  const double se2 = sample_variance(a) / 5.0 + sample_variance(b) / 4.0;
  const double direct_t = (mean(a) - mean(b)) / std::sqrt(se2);
  REQUIRE(r.t == Catch::Approx(direct_t).margin(1e-12));

  REQUIRE(r.t == Catch::Approx(4.700096710803824).margin(1e-10));
  REQUIRE(r.dof == Catch::Approx(6.980769230769228).margin(1e-10));
  REQUIRE(r.p_two_sided == Catch::Approx(0.002224603348899686).margin(1e-10));
  REQUIRE(r.p_greater == Catch::Approx(0.001112301674449843).margin(1e-10));
}

TEST_CASE("welch test on the jittered constant samples") {
  const std::vector<double> a{0.9, 0.900001, 0.899999, 0.9};
  const std::vector<double> b{0.5, 0.500001, 0.499999, 0.5};
  const WelchResult r = welch_t_test(a, b);
  REQUIRE(r.t == Catch::Approx(692820.3230172433).epsilon(1e-9));
  REQUIRE(r.dof == Catch::Approx(6.0).margin(1e-9));
  REQUIRE(r.p_two_sided < 1e-20);  // overwhelmingly significant
}

TEST_CASE("degenerate zero-variance samples") {
  // exactly representable values so the variances are exactly zero
  const std::vector<double> same{0.75, 0.75, 0.75};
  const WelchResult equal = welch_t_test(same, same);
  REQUIRE(equal.t == 0.0);
  REQUIRE(equal.p_two_sided == 1.0);

  const std::vector<double> other{0.5, 0.5, 0.5};
  const WelchResult diff = welch_t_test(same, other);
  REQUIRE(std::isinf(diff.t));
  REQUIRE(diff.p_two_sided == 0.0);
  REQUIRE(diff.p_greater == 0.0);
}

TEST_CASE("welch test requires two values per sample") {
  REQUIRE_THROWS_AS(
      welch_t_test(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
      std::invalid_argument);
}
