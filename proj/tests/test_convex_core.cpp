#include <cmath>
#include <random>

#include "doctest.h"

#include "conelip/convex_checks.hpp"
#include "conelip/convex_map.hpp"
#include "conelip/errors.hpp"

using namespace conelip;

namespace {

ConvexMap sup_norm_map(Eigen::Index n, Domain d) {
  std::vector<AffinePiece> pieces;
  for (Eigen::Index i = 0; i < n; ++i)
    for (double s : {1.0, -1.0}) {
      Vector w = Vector::Zero(n);
      w[i] = s;
      pieces.push_back({w, 0.0});
    }
  return ConvexMap::max_affine({pieces}, std::move(d));
}

ConvexMap squares(Eigen::Index n, Domain d) {
  return ConvexMap::quadratic({{Matrix::Identity(n, n), Vector::Zero(n), 0.0}}, std::move(d));
}

ConvexMap random_max_affine(std::mt19937_64& rng, Eigen::Index n, int pieces) {
  std::normal_distribution<double> g;
  std::vector<AffinePiece> ps;
  for (int j = 0; j < pieces; ++j) {
    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = g(rng);
    ps.push_back({w, g(rng)});
  }
  return ConvexMap::max_affine({ps}, Domain::whole(n));
}

ConvexMap random_quadratic(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = g(rng);
  Vector c(n);
  for (Eigen::Index i = 0; i < n; ++i) c[i] = g(rng);
  return ConvexMap::quadratic({{A.transpose() * A, c, g(rng)}}, Domain::whole(n));
}

}  // namespace

TEST_CASE("evaluation of each body") {
  CHECK(sup_norm_map(1, Domain::whole(1)).scalar(make_vector({-2})) == 2.0);
  CHECK(squares(2, Domain::whole(2)).scalar(make_vector({1, 1})) == 2.0);
  auto path = ConvexMap::path({0.0, 1.0}, {make_vector({0}), make_vector({1})}, Domain::whole(1));
  CHECK(path.scalar(make_vector({0.5})) == doctest::Approx(0.5));
  auto boxed = squares(2, Domain::box(make_vector({-1, -1}), make_vector({1, 1})));
  CHECK_THROWS_AS(boxed(make_vector({2, 0})), InputError);
  CHECK_THROWS_AS(boxed(make_vector({0})), InputError);
}

TEST_CASE("non-PSD quadratic is rejected") {
  Matrix Q(2, 2);
  Q << 1, 0, 0, -1;
  CHECK_THROWS_AS(ConvexMap::quadratic({{Q, Vector::Zero(2), 0.0}}, Domain::whole(2)), InputError);
}

TEST_CASE("path convexity is reported, not enforced") {
  auto concave = ConvexMap::path({0.0, 1.0, 2.0}, {make_vector({0}), make_vector({1}), make_vector({1})},
                                 Domain::whole(1));
  CHECK_FALSE(concave.convexity_verified());
  auto convex = ConvexMap::path({0.0, 1.0, 2.0}, {make_vector({1}), make_vector({0}), make_vector({1})},
                                Domain::whole(1));
  CHECK(convex.convexity_verified());
}

TEST_CASE("chord inequalities for t squared") {
  auto phi = Section::scalar([](double t) { return t * t; });
  auto rep = chord_slope_check(phi, 0, 1, 2);
  CHECK(rep.identity_ok);
  CHECK(rep.all_hold);
  // (a): phi(1) = 1 <= 0.5 phi(0) + 0.5 phi(2) = 2
  CHECK(rep.inequalities[0].residual == doctest::Approx(1.0));
  CHECK_THROWS_AS(chord_slope_check(phi, 1, 1, 2), InputError);
  CHECK_THROWS_AS(chord_slope_check(phi, 2, 1, 0), InputError);
}

TEST_CASE("chord inequalities are equalities for affine sections") {
  auto phi = Section::scalar([](double t) { return 3 * t - 1; });
  auto rep = chord_slope_check(phi, -1, 0.25, 4);
  CHECK(rep.all_hold);
  for (const auto& c : rep.inequalities) CHECK(std::abs(c.residual) < 1e-12);
}

TEST_CASE("vector section in the coordinate order") {
  Section phi([](double t) { return make_vector({t * t, std::abs(t)}); }, PolyCone::orthant(2), -10, 10);
  auto rep = chord_slope_check(phi, 0, 1, 2);
  CHECK(rep.all_hold);
  // (d): s12 = (1,1) <= s23 = (3,1)
  CHECK(rep.inequalities[3].holds);
  CHECK(rep.inequalities[3].residual == doctest::Approx(0.0));
}

TEST_CASE("chord inequalities fail for a concave section") {
  auto phi = Section::scalar([](double t) { return -t * t; });
  CHECK_FALSE(chord_slope_check(phi, 0, 1, 2).all_hold);
}

TEST_CASE("random sections satisfy all chord inequalities") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 300; ++i) {
    ConvexMap f = (i % 2) ? random_max_affine(rng, 3, 5) : random_quadratic(rng, 3);
    Vector x(3), y(3);
    for (int k = 0; k < 3; ++k) {
      x[k] = u(rng);
      y[k] = u(rng);
    }
    auto phi = Section::through(f, x, y, Eigen::Index{0});
    double t[3] = {u(rng), u(rng), u(rng)};
    std::sort(t, t + 3);
    if (t[1] - t[0] < 1e-6 || t[2] - t[1] < 1e-6) continue;
    auto rep = chord_slope_check(phi, t[0], t[1], t[2]);
    for (const auto& c : rep.inequalities) CHECK(c.residual >= -1e-9);
  }
}

TEST_CASE("p-slope values and monotonicity") {
  auto f = squares(1, Domain::whole(1));
  auto p = SeminormSpec::abs();
  Vector x = make_vector({0}), y = make_vector({1});
  for (double t : {0.5, 1.0, 2.0}) CHECK(p_slope(f, p, x, y, 0, t)[0] == doctest::Approx(t));
  // the denominator is p(z_t - x0) >= 0, so slope(-1) = (1 - 0) / 1
  CHECK(p_slope(f, p, x, y, 0, -1)[0] == doctest::Approx(1.0));
  // t = -1 < 0 < 1: -slope(-1) = -1 <= slope(1) = 1
  CHECK(slope_monotonicity(f, p, x, y, 0, -1, 1).holds);
  // left of t0: slope(-2) = 2, slope(-1) = 1, decreasing toward t0
  CHECK(p_slope(f, p, x, y, 0, -2)[0] == doctest::Approx(2.0));
  CHECK(slope_monotonicity(f, p, x, y, 0, -2, -1).holds);

  auto g = sup_norm_map(2, Domain::whole(2));
  auto p2 = SeminormSpec::sup_norm(2);
  Vector o = make_vector({0, 0}), e = make_vector({1, 0});
  CHECK(p_slope(g, p2, o, e, 0, 1)[0] == doctest::Approx(1.0));
  CHECK(p_slope(g, p2, o, e, 0, 2)[0] == doctest::Approx(1.0));
  CHECK(slope_monotonicity(g, p2, o, e, 0, 1, 2).holds);

  CHECK_THROWS_AS(p_slope(f, p, x, x, 0, 1), InputError);
  CHECK_THROWS_AS(p_slope(f, p, x, y, 0.5, 0.5), InputError);
  auto kernel = SeminormSpec::weighted_sup(make_vector({0, 1}));
  CHECK_THROWS_AS(p_slope(g, kernel, o, e, 0, 1), InputError);
}

TEST_CASE("slope monotonicity on random lines") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2, 2);
  auto p = SeminormSpec::l1_norm(2);
  for (int i = 0; i < 200; ++i) {
    ConvexMap f = (i % 2) ? random_max_affine(rng, 2, 4) : random_quadratic(rng, 2);
    Vector x(2), y(2);
    x << u(rng), u(rng);
    y << u(rng), u(rng);
    double t0 = u(rng), t = u(rng), tp = u(rng);
    if (std::abs(t - t0) < 1e-3 || std::abs(tp - t0) < 1e-3 || std::abs(tp - t) < 1e-3) continue;
    if (t > tp) std::swap(t, tp);
    CHECK(slope_monotonicity(f, p, x, y, t0, t, tp).holds);
  }
}

TEST_CASE("affinity detection") {
  auto absval = Section::scalar([](double t) { return std::abs(t); });
  auto r1 = affine_detect(absval, 0, 1, 0.5);
  CHECK(r1.affine);
  CHECK(r1.grid_checked);
  CHECK(r1.grid_agrees);
  auto sq = Section::scalar([](double t) { return t * t; });
  auto r2 = affine_detect(sq, 0, 1, 0.5);
  CHECK_FALSE(r2.affine);
  CHECK(r2.gap == doctest::Approx(0.25));
  CHECK(affine_detect(Section::scalar([](double) { return 7.0; }), -3, 2, 0.3).affine);
}

TEST_CASE("one interior agreement forces agreement on the grid") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    auto f = random_max_affine(rng, 1, 3);
    auto phi = Section::along(f, make_vector({0}), make_vector({1}), Eigen::Index{0});
    double a = u(rng), b = a + 0.5 + std::abs(u(rng));
    auto rep = affine_detect(phi, a, b, 0.37);
    if (rep.affine) {
      CHECK(rep.grid_agrees);
      CHECK(rep.grid_max_gap <= 1e-9);
    }
  }
}

TEST_CASE("tail behaviour") {
  auto sq = Section::scalar([](double t) { return t * t; });
  auto r = tail_behavior(sq, 0, 1, 100);
  CHECK(r.direction == TailDirection::increasing_right);
  REQUIRE(r.witness_t);
  CHECK(*r.witness_t == doctest::Approx(100.0));
  CHECK(*r.witness_value >= 100.0);
  CHECK(r.witness_verified);
  CHECK(tail_behavior(sq, 1, 2, 10).grid_verified);
  auto neg = tail_behavior(Section::scalar([](double t) { return -t; }), 0, 1, 5);
  CHECK(neg.direction == TailDirection::decreasing_left);
  CHECK(neg.grid_verified);
  CHECK(*neg.witness_value >= 5.0);
  CHECK_THROWS_AS(tail_behavior(sq, -1, 1, 5), InputError);
}

TEST_CASE("superadditivity") {
  auto sq = Section::scalar([](double t) { return t * t; }, 0.0);
  auto r = superadditive_check(sq, 1, 2, AdditivityMode::convex);
  CHECK(r.holds);
  CHECK(r.lhs == 9.0);
  CHECK(r.rhs == 5.0);
  REQUIRE(r.intermediate_holds);
  CHECK(*r.intermediate_holds);

  auto root = Section::scalar([](double t) { return std::sqrt(t); }, 0.0);
  auto c = superadditive_check(root, 1, 4, AdditivityMode::concave);
  CHECK(c.holds);
  CHECK(c.lhs == doctest::Approx(std::sqrt(5.0)));
  CHECK(c.rhs == 3.0);

  auto id = Section::scalar([](double t) { return t; }, 0.0);
  CHECK(superadditive_check(id, 0.5, 1.5, AdditivityMode::convex).holds);
  CHECK(superadditive_check(id, 0.5, 1.5, AdditivityMode::concave).holds);

  auto shifted = Section::scalar([](double t) { return t * t + 1; }, 0.0);
  CHECK_THROWS_AS(superadditive_check(shifted, 1, 2, AdditivityMode::convex), InputError);
}

TEST_CASE("hypercube bound") {
  auto lin = ConvexMap::max_affine({{{make_vector({1, 1}), 0.0}}}, Domain::whole(2));
  CHECK(hypercube_bound_scalar(lin, make_vector({0, 0}), 1) == 2.0);
  std::vector<AffinePiece> l1;
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) l1.push_back({make_vector({s1, s2}), 0.0});
  auto l1map = ConvexMap::max_affine({l1}, Domain::whole(2));
  CHECK(hypercube_bound_scalar(l1map, make_vector({0.5, 0.5}), 0.5) == 2.0);
  auto cst = ConvexMap::max_affine({{{make_vector({0, 0}), 4.5}}}, Domain::whole(2));
  CHECK(hypercube_bound_scalar(cst, make_vector({0, 0}), 3) == 4.5);
  auto big = ConvexMap::max_affine({{{Vector::Zero(21), 0.0}}}, Domain::whole(21));
  CHECK_THROWS_AS(hypercube_bound_scalar(big, Vector::Zero(21), 1), ResourceError);
}

TEST_CASE("hypercube bound dominates interior values") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1, 1);
  auto f = random_quadratic(rng, 3);
  Vector c = make_vector({0.2, -0.1, 0.4});
  double h = 0.7;
  double beta = hypercube_bound_scalar(f, c, h);
  for (int i = 0; i < 1000; ++i) {
    Vector x(3);
    for (int k = 0; k < 3; ++k) x[k] = c[k] + h * u(rng);
    CHECK(f.scalar(x) <= beta + 1e-12);
  }
}

TEST_CASE("epigraph predicates") {
  auto f = sup_norm_map(2, Domain::whole(2));
  auto a = epigraph_predicates(f, make_vector({1, 0}), 2);
  CHECK(a.in_epi);
  CHECK(a.in_strict_epi);
  auto b = epigraph_predicates(f, make_vector({1, 0}), 1);
  CHECK(b.in_epi);
  CHECK_FALSE(b.in_strict_epi);
  auto g = ConvexMap::quadratic({{(Matrix(2, 2) << 1, 0, 0, 0).finished(), Vector::Zero(2), 0.0}}, Domain::whole(2));
  CHECK(epigraph_predicates(g, make_vector({1, 0}), 2).in_epi);
}

TEST_CASE("convexity and epigraph checks agree in both directions") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 6; ++i) {
    ConvexMap f = (i % 2) ? random_max_affine(rng, 3, 4) : random_quadratic(rng, 3);
    CHECK(convexity_check(f, 2000, i + 1).holds());
    CHECK(epigraph_midpoint_check(f, 2000, i + 1).holds());
    CHECK(chord_suite(f, 500, i + 1).holds());
  }
  auto control = ConvexMap::nonconvex_control({{Matrix::Identity(2, 2), Vector::Zero(2), 0.0}}, Domain::whole(2));
  auto cc = convexity_check(control, 2000, 1);
  CHECK_FALSE(cc.holds());
  CHECK(cc.witness.has_value());
  CHECK_FALSE(epigraph_midpoint_check(control, 2000, 1).holds());
  CHECK_FALSE(chord_suite(control, 500, 1).holds());
}

TEST_CASE("vector quadratic is convex in the coordinate cone") {
  Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  auto f = ConvexMap::quadratic({{e1, Vector::Zero(2), 0.0}, {e2, Vector::Zero(2), 0.0}}, Domain::whole(2));
  CHECK(convexity_check(f, 3000, 2).holds());
  CHECK(chord_suite(f, 500, 2).holds());
}
