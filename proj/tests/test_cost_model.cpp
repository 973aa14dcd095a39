#include <cmath>

#include "doctest.h"
#include "qnet/cost_model.hpp"

using namespace qnet;

namespace {

const CostParams kFig{.X = 100, .Y = 10, .Z = 1};
const CostParams kLargeX{.X = 1000, .Y = 10, .Z = 1};

ScanConfig ideal_scan(int n_to) {
  ScanConfig c;
  c.epsilon = 0.01;
  c.n_from = 2;
  c.n_to = n_to;
  return c;
}

}  // namespace

TEST_CASE("total costs") {
  const CostParams p{.X = 100, .Y = 10, .Z = 1};
  CHECK(cost_disentangled(1, 10, p) == 10.0);
  CHECK(cost_disentangled(3, 1, p) == 23.0);
  CHECK(cost_disentangled(5, 0, p) == 0.0);
  CHECK(cost_entangled(2, 1, 100, p) == 112.0);
  CHECK(cost_entangled(3, 2, 210, p) == 466.0);
  CHECK(cost_entangled(6, 3.5, 0, p) == cost_disentangled(6, 3.5, p));
  CHECK_THROWS_AS(cost_entangled(1, 1, 0, p), std::invalid_argument);
}

TEST_CASE("ideal ratio") {
  CHECK(ratio_ideal(2, kFig) == doctest::Approx(112.0 / 24.0).epsilon(1e-14));
  CHECK(ratio_ideal(11, kFig) == doctest::Approx(1201.0 / 1221.0).epsilon(1e-14));
  CHECK(ratio_ideal(10, kFig) == doctest::Approx(1.08).epsilon(1e-14));
  CHECK(n_min_approx(kFig) == 11.0);
  CHECK(n_min_approx(kLargeX) == doctest::Approx(1021.0 / 11.0).epsilon(1e-14));
  CHECK(n_min_approx(CostParams{.X = 4, .Y = 4, .Z = 0}) == 3.0);
  CHECK_THROWS_AS(ratio_ideal(3, CostParams{.X = 1, .Y = 0, .Z = 0}), std::invalid_argument);
}

TEST_CASE("ideal ratio decreases to zero") {
  for (const auto& p : {kFig, kLargeX, CostParams{.X = 3, .Y = 1, .Z = 2}}) {
    double prev = ratio_ideal(2, p);
    for (int n = 3; n <= 10000; ++n) {
      const double r = ratio_ideal(n, p);
      CHECK(r < prev);
      prev = r;
    }
    CHECK(prev < 0.01);
  }
}

TEST_CASE("ideal windows") {
  const auto a = scan_window(kFig, ideal_scan(200));
  CHECK(a.window.n_min == 11);
  CHECK_FALSE(a.window.n_max.has_value());
  CHECK(a.window.open_at_bound);
  const auto b = scan_window(kLargeX, ideal_scan(400));
  CHECK(b.window.n_min == 93);
  CHECK(b.window.open_at_bound);
}

TEST_CASE("scanned threshold tracks the approximation") {
  for (double x : {30.0, 60.0, 100.0, 250.0, 1000.0, 3000.0}) {
    for (double y : {1.0, 5.0, 10.0}) {
      for (double z : {0.0, 1.0, 4.0}) {
        const CostParams p{.X = x, .Y = y, .Z = z};
        const double approx = n_min_approx(p);
        if (approx < 5.0) continue;
        const auto r = scan_window(p, ideal_scan(static_cast<int>(approx) * 3 + 10));
        REQUIRE(r.window.n_min.has_value());
        CHECK(std::abs(*r.window.n_min - std::lround(approx)) <= 2);
      }
    }
  }
}

TEST_CASE("scan rows satisfy the cost identities") {
  ScanConfig c = ideal_scan(300);
  c.g = 0.004;
  c.t_c = 1.0;
  for (const auto& row : scan_window(kFig, c).rows) {
    const int n = row.n;
    CHECK(row.C1 == row.R1 * (n * kFig.Z + (n - 1) * kFig.Y));
    CHECK(row.C2 == row.R2 * (row.P2 + n * kFig.Z + (n - 1) * kFig.Y));
    CHECK(row.ratio == row.C2 / row.C1);
    CHECK(row.P2 == (n - 1) * kFig.X + (n - 2) * kFig.Y);
    CHECK(row.ratio == doctest::Approx(ratio_dephased(n, kFig, c.g, c.t_c)).epsilon(1e-12));
  }
}

TEST_CASE("noisy ratio golden value") {
  const CostParams p{.X = 100, .Y = 10, .Z = 1, .b = 100};
  const SchemeParams s{.scheme_id = 2, .F0 = 0.95, .a = 0.5, .b = 100};
  CHECK(scheme_fidelity(s, 3) == doctest::Approx(0.99375).epsilon(1e-15));
  CHECK(compose_fidelity(0.99375, 3) == doctest::Approx(0.9875390625).epsilon(1e-15));
  CHECK(ratio_noisy(3, p, s, 3) == doctest::Approx(9.406889718730666).epsilon(1e-13));
}

TEST_CASE("noisy ratio with perfect pairs reduces to the ideal shape") {
  const SchemeParams perfect{.scheme_id = 2, .F0 = 1.0, .a = 0.5, .b = 25};
  for (int n = 2; n < 60; ++n) {
    const CostParams with_p0{.X = pair_cost(perfect, 4), .Y = 10, .Z = 1};
    CHECK(ratio_noisy(n, kFig, perfect, 4) == doctest::Approx(ratio_ideal(n, with_p0)).epsilon(1e-13));
  }
}

TEST_CASE("noisy ratio eventually exceeds 1") {
  const SchemeParams s{.scheme_id = 2, .F0 = 0.95, .a = 0.5, .b = 100};
  CHECK(scheme_fidelity(s, 3) < 1.0);
  const SchemeParams s99{.scheme_id = 2, .F0 = 0.92, .a = 0.5, .b = 100};
  CHECK(scheme_fidelity(s99, 3) == doctest::Approx(0.99));
  CHECK(ratio_noisy(64, kFig, s99, 3) > 1.0);
  bool crossed = false;
  double prev = 0.0;
  bool increasing_tail = true;
  for (int n = 2; n <= 5000; ++n) {
    const double r = ratio_noisy(n, kFig, s, 3);
    if (n > 1000) increasing_tail &= r > prev;
    if (n > 100 && r > 1.0) crossed = true;
    prev = r;
  }
  CHECK(crossed);
  CHECK(increasing_tail);
}

TEST_CASE("purified scans") {
  const CostParams p{.X = 100, .Y = 10, .Z = 1, .U = 100, .b = 100};
  ScanConfig c = ideal_scan(1000);
  c.scheme = SchemeParams{.scheme_id = 2, .F0 = 0.95, .a = 0.5, .b = 100};
  c.target_fidelity = 0.995;
  const auto two = scan_window(p, c);
  CHECK(two.steps == 4);
  CHECK(two.steps_auto);
  CHECK(two.window.n_min == 53);
  CHECK(two.window.n_max == 358);
  CHECK_FALSE(two.window.open_at_bound);
  for (const auto& row : two.rows) {
    const bool inside = row.n >= 53 && row.n <= 358;
    CHECK((row.ratio < 1.0) == inside);
  }

  c.scheme = SchemeParams{.scheme_id = 1, .F0 = 0.95, .U = 100};
  c.n_to = 64;
  const auto one = scan_window(p, c);
  CHECK(one.steps == 6);
  CHECK(one.window.empty());
  CHECK_FALSE(one.window.n_max.has_value());

  c.steps = 2;
  const auto fixed = scan_window(p, c);
  CHECK(fixed.steps == 2);
  CHECK_FALSE(fixed.steps_auto);
}

TEST_CASE("dephasing factor") {
  for (double gt : {0.001, 0.01, 0.1}) {
    for (int n = 2; n <= 100; ++n) {
      const double q = ratio_dephased(n, kFig, gt, 1.0) / ratio_ideal(n, kFig);
      CHECK(std::abs(q - std::exp(2 * gt * (n - 1))) <= 1e-12 * q);
    }
  }
  CHECK(ratio_dephased(5, kFig, 0.01, 1.0) / ratio_ideal(5, kFig) == doctest::Approx(std::exp(0.08)));
  CHECK(ratio_dephased(7, kFig, 0.0, 0.0) == ratio_ideal(7, kFig));
}

TEST_CASE("dephasing closes the window") {
  ScanConfig c = ideal_scan(400);
  c.g = 0.01;
  c.t_c = 1.0;
  const auto r = scan_window(kFig, c);
  CHECK(r.window.n_min == 15);
  CHECK(r.window.n_max == 120);
  c.g = 0.005;
  const auto s = scan_window(kFig, c);
  CHECK(s.window.n_min == 13);
  CHECK(s.window.n_max == 345);
  c.g = 0.02;
  CHECK(scan_window(kFig, c).window.empty());
}

TEST_CASE("window detection") {
  auto rows = [](std::initializer_list<double> ratios) {
    std::vector<ScanRow> out;
    int n = 2;
    for (double r : ratios) out.push_back(ScanRow{.n = n++, .ratio = r});
    return out;
  };
  const auto none = detect_window(rows({2.0, 1.5, 1.0}), 4);
  CHECK(none.empty());
  CHECK_FALSE(none.open_at_bound);
  const auto tie = detect_window(rows({1.0, 0.9, 1.0}), 4);
  CHECK(tie.n_min == 3);
  CHECK(tie.n_max == 3);
  const auto open = detect_window(rows({1.2, 0.9, 0.8}), 4);
  CHECK(open.n_min == 3);
  CHECK(open.open_at_bound);
}

TEST_CASE("scan argument errors") {
  ScanConfig c = ideal_scan(10);
  c.n_from = 11;
  CHECK_THROWS_AS(scan_window(kFig, c), std::invalid_argument);
  c = ideal_scan(10);
  c.n_from = 1;
  CHECK_THROWS_AS(scan_window(kFig, c), std::invalid_argument);
  c = ideal_scan(1'000'001);
  CHECK_THROWS_AS(scan_window(kFig, c), std::invalid_argument);
  c = ideal_scan(10);
  c.scheme = SchemeParams{};
  CHECK_THROWS_AS(scan_window(kFig, c), std::invalid_argument);
  c.steps = 1;
  c.g = 0.1;
  c.t_c = 1;
  CHECK_THROWS_AS(scan_window(kFig, c), std::invalid_argument);
}
