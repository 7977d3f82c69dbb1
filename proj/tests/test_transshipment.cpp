#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tempoflow/oracle.hpp"
#include "tempoflow/transshipment.hpp"

using namespace tempoflow;
using testsupport::load_network;

namespace {

SupplyVector supplies(const Network& net, std::vector<std::pair<std::string, Rational>> xs) {
  std::map<std::string, Rational> m(xs.begin(), xs.end());
  return SupplyVector::from_map(net, m);
}

unsigned mask_of(const Network& net, const std::vector<std::string>& names) {
  unsigned mask = 0;
  for (auto& n : names) mask |= 1u << net.terminal_index(net.node_index(n));
  return mask;
}

// Random positive rationals summing to one.
std::vector<Rational> random_coefficients(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> w(1, 5);
  std::vector<Rational> weights;
  Rational total(0);
  for (int i = 0; i < n; ++i) {
    weights.emplace_back(w(rng));
    total += weights.back();
  }
  for (Rational& x : weights) x /= total;
  return weights;
}

}  // namespace

TEST_CASE("o-values for the pinned subsets") {
  auto unit = load_network("unit_cross.json");
  OValueOracle oracle(unit, Rational(4));
  CHECK(oracle.value(mask_of(*unit, {"s1"})) == Rational(2));
  CHECK(oracle.value(0) == Rational(0));
  CHECK(oracle.value(mask_of(*unit, {"s1", "t1", "s2", "t2"})) == Rational(0));
  CHECK(oracle.value(mask_of(*unit, {"s1", "t1"})) == Rational(1));
  CHECK(oracle.value(mask_of(*unit, {"s1", "s2"})) == Rational(4));

  auto cross = load_network("crossover.json");
  OValueOracle cross_oracle(cross, Rational(4));
  CHECK(cross_oracle.value(mask_of(*cross, {"s1", "s2"})) == Rational(1));
}

TEST_CASE("o is monotone in the horizon") {
  std::mt19937 rng(testsupport::test_seed(37));
  for (int trial = 0; trial < 15; ++trial) {
    auto net = testsupport::random_network(rng, 6);
    OValueOracle small(net, Rational(3)), large(net, Rational(5));
    for (unsigned mask = 0; mask < (1u << net->terminal_count()); ++mask)
      CHECK(small.value(mask) <= large.value(mask));
  }
}

TEST_CASE("submodularity inequalities hold exactly") {
  std::mt19937 rng(testsupport::test_seed(41));
  std::uniform_int_distribution<int> horizon_dist(1, 8);
  for (int trial = 0; trial < 25; ++trial) {
    auto net = testsupport::random_network(rng, 7, 5);
    OValueOracle oracle(net, Rational(horizon_dist(rng)));
    int k = net->terminal_count();
    for (unsigned x = 0; x < (1u << k); ++x) {
      for (int r1 = 0; r1 < k; ++r1) {
        if (x & (1u << r1)) continue;
        for (int r2 = r1 + 1; r2 < k; ++r2) {
          if (x & (1u << r2)) continue;
          Rational left = oracle.value(x | (1u << r1) | (1u << r2)) -
                          oracle.value(x | (1u << r1));
          Rational right = oracle.value(x | (1u << r2)) - oracle.value(x);
          CHECK(left <= right);
        }
      }
    }
  }
}

TEST_CASE("greedy vertex golden values") {
  auto net = load_network("unit_cross.json");
  OValueOracle oracle(net, Rational(4));
  LexOrder order = LexOrder::from_names(*net, {"s1", "t1", "s2", "t2"});
  std::vector<Rational> z = greedy_vertex(oracle, order);
  auto at = [&](const std::string& name) {
    return z[net->terminal_index(net->node_index(name))];
  };
  CHECK(at("s1") == Rational(2));
  CHECK(at("t1") == Rational(-1));
  CHECK(at("s2") == Rational(1));
  CHECK(at("t2") == Rational(-2));

  OValueOracle zero_horizon(net, Rational(0));
  for (const Rational& v : greedy_vertex(zero_horizon, order)) CHECK(v.is_zero());

  // Reversed order: its prefix sums hit the o-values of its own prefixes.
  LexOrder reversed = LexOrder::from_names(*net, {"t2", "s2", "t1", "s1"});
  std::vector<Rational> zr = greedy_vertex(oracle, reversed);
  unsigned prefix = 0;
  Rational sum(0);
  for (int r : reversed.terminals) {
    prefix |= 1u << net->terminal_index(r);
    sum += zr[net->terminal_index(r)];
    CHECK(sum == oracle.value(prefix));
  }
}

TEST_CASE("greedy vertices equal lexicographic nets") {
  std::mt19937 rng(testsupport::test_seed(43));
  std::uniform_int_distribution<int> horizon_dist(1, 6);
  for (int trial = 0; trial < 12; ++trial) {
    auto net = testsupport::random_network(rng, 6);
    Rational horizon(horizon_dist(rng));
    LexOrder order;
    order.terminals = net->terminals();
    std::shuffle(order.terminals.begin(), order.terminals.end(), rng);
    OValueOracle oracle(net, horizon);
    std::vector<Rational> vertex = greedy_vertex(oracle, order);
    LexMaxResult lex = lex_max(net, horizon, order);
    CHECK(vertex == lex.net_outflow);
  }
}

TEST_CASE("min-norm point on pinned instances") {
  auto net = load_network("unit_cross.json");
  OValueOracle oracle(net, Rational(4));

  SUBCASE("a vertex itself needs a single term") {
    SupplyVector b = supplies(*net, {{"s1", Rational(2)},
                                     {"t1", Rational(-1)},
                                     {"s2", Rational(1)},
                                     {"t2", Rational(-2)}});
    auto g = [&](unsigned mask) { return oracle.value(mask) - b.of_mask(mask); };
    SfmResult sfm = sfm_min_norm(g, oracle.k());
    CHECK(sfm.min_value == Rational(0));
    for (const Rational& v : sfm.min_norm_point) CHECK(v.is_zero());
    REQUIRE(sfm.terms.size() == 1);
    CHECK(sfm.terms[0].coefficient == Rational(1));
    std::vector<std::string> names;
    for (int e : sfm.terms[0].order)
      names.push_back(net->node_name(net->terminals()[e]));
    CHECK(names == std::vector<std::string>{"s1", "t1", "s2", "t2"});
  }

  SUBCASE("oversupplying one source is caught with its worst witness") {
    SupplyVector b = supplies(*net, {{"s1", Rational(3)},
                                     {"t1", Rational(0)},
                                     {"s2", Rational(0)},
                                     {"t2", Rational(-3)}});
    auto g = [&](unsigned mask) { return oracle.value(mask) - b.of_mask(mask); };
    SfmResult sfm = sfm_min_norm(g, oracle.k());
    // Exhaustive check: the minimum sits at {s1, t1} where only the long
    // route to t2 remains.
    Rational best(0);
    unsigned best_mask = 0;
    for (unsigned mask = 0; mask < 16; ++mask)
      if (g(mask) < best) {
        best = g(mask);
        best_mask = mask;
      }
    CHECK(best == Rational(-2));
    CHECK(best_mask == mask_of(*net, {"s1", "t1"}));
    CHECK(sfm.min_value == best);
    CHECK(sfm.minimizer == best_mask);
  }

  SUBCASE("the zero oracle stays at zero") {
    SfmResult sfm = sfm_min_norm([](unsigned) { return Rational(0); }, 4);
    CHECK(sfm.min_value == Rational(0));
    CHECK(sfm.minimizer == 0);
  }
}

TEST_CASE("min-norm minimization agrees with enumeration on random submodular g") {
  std::mt19937 rng(testsupport::test_seed(47));
  std::uniform_int_distribution<int> horizon_dist(1, 6);
  std::uniform_int_distribution<int> b_num(0, 6);
  for (int trial = 0; trial < 25; ++trial) {
    auto net = testsupport::random_network(rng, 6);
    OValueOracle oracle(net, Rational(horizon_dist(rng)));
    int k = net->terminal_count();
    // A modular shift keeps g submodular whatever the signs.
    std::vector<Rational> shift;
    for (int i = 0; i < k; ++i) shift.emplace_back(b_num(rng) - 3, 2);
    auto g = [&](unsigned mask) {
      Rational s(0);
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) s += shift[i];
      return oracle.value(mask) - s;
    };
    SfmResult sfm = sfm_min_norm(g, k);
    Rational best(0);
    for (unsigned mask = 0; mask < (1u << k); ++mask) best = min(best, g(mask));
    CHECK(sfm.min_value == best);
    CHECK(g(sfm.minimizer) == best);
  }
}

TEST_CASE("feasibility certificates on the pinned instance") {
  auto net = load_network("unit_cross.json");
  OValueOracle oracle(net, Rational(4));

  SUBCASE("feasible vertex supply") {
    SupplyVector b = supplies(*net, {{"s1", Rational(2)},
                                     {"t1", Rational(-1)},
                                     {"s2", Rational(1)},
                                     {"t2", Rational(-2)}});
    FeasibilityCertificate cert = feasible(oracle, b);
    CHECK(cert.feasible);
    REQUIRE(cert.combination.terms.size() == 1);
    CHECK(cert.combination.terms[0].second == Rational(1));
  }

  SUBCASE("infeasible oversupply") {
    SupplyVector b = supplies(*net, {{"s1", Rational(3)},
                                     {"t1", Rational(0)},
                                     {"s2", Rational(0)},
                                     {"t2", Rational(-3)}});
    FeasibilityCertificate cert = feasible(oracle, b);
    CHECK(!cert.feasible);
    REQUIRE(cert.violating_set.has_value());
    // The certificate names a subset that provably asks for too much.
    CHECK(b.of_mask(*cert.violating_set) - oracle.value(*cert.violating_set) == *cert.gap);
    CHECK(cert.gap > Rational(0));
    CHECK(*cert.violating_set == mask_of(*net, {"s1", "t1"}));
    CHECK(*cert.gap == Rational(2));
  }

  SUBCASE("zero supply is feasible with the empty combination") {
    SupplyVector b = supplies(*net, {});
    FeasibilityCertificate cert = feasible(oracle, b);
    CHECK(cert.feasible);
    CHECK(cert.combination.terms.empty());
  }
}

TEST_CASE("feasibility agrees with exhaustive enumeration on random pairs") {
  std::mt19937 rng(testsupport::test_seed(53));
  std::uniform_int_distribution<int> horizon_dist(1, 6);
  std::uniform_int_distribution<int> jitter(0, 3);
  int infeasible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto net = testsupport::random_network(rng, 6);
    Rational horizon(horizon_dist(rng));
    OValueOracle oracle(net, horizon);
    int k = net->terminal_count();

    // Half the trials perturb a feasible combination out of the polytope.
    SupplyVector b;
    LexOrder order;
    order.terminals = net->terminals();
    std::shuffle(order.terminals.begin(), order.terminals.end(), rng);
    b.b = greedy_vertex(oracle, order);
    if (trial % 2 == 1) {
      int i = std::uniform_int_distribution<int>(0, k - 1)(rng);
      int j = std::uniform_int_distribution<int>(0, k - 1)(rng);
      Rational bump(jitter(rng));
      int ri = net->terminals()[i], rj = net->terminals()[j];
      if (net->is_source(ri) && net->is_sink(rj)) {
        b.b[i] += bump;
        b.b[j] -= bump;
      }
    }
    b.validate(*net);

    FeasibilityCertificate cert = feasible(oracle, b);
    auto brute = exhaustive_violating_subset(
        [&oracle](unsigned mask) { return oracle.value(mask); },
        [&b](unsigned mask) { return b.of_mask(mask); }, k);
    CHECK(cert.feasible == !brute.has_value());
    if (!cert.feasible) {
      ++infeasible_seen;
      CHECK(b.of_mask(*cert.violating_set) > oracle.value(*cert.violating_set));
    } else {
      // The combination reconstructs b exactly.
      std::vector<Rational> sum(k, Rational(0));
      Rational coeff_total(0);
      for (auto& [ord, coeff] : cert.combination.terms) {
        coeff_total += coeff;
        std::vector<Rational> vertex = greedy_vertex(oracle, ord);
        for (int i = 0; i < k; ++i) sum[i] += coeff * vertex[i];
      }
      if (!cert.combination.terms.empty()) CHECK(coeff_total == Rational(1));
      if (!b.is_zero()) CHECK(sum == b.b);
      CHECK(cert.combination.terms.size() <= static_cast<std::size_t>(k));
    }
  }
  CHECK(infeasible_seen > 0);
}

TEST_CASE("transshipment reconstructs the supply vector") {
  auto net = load_network("unit_cross.json");
  Rational horizon(4);
  OValueOracle oracle(net, horizon);

  SUBCASE("single-vertex supply reproduces the lexicographic flow") {
    SupplyVector b = supplies(*net, {{"s1", Rational(2)},
                                     {"t1", Rational(-1)},
                                     {"s2", Rational(1)},
                                     {"t2", Rational(-2)}});
    TransshipmentResult result = transshipment(net, horizon, b);
    CHECK(verify(result.flow).ok());
    LexOrder order = LexOrder::from_names(*net, {"s1", "t1", "s2", "t2"});
    LexMaxResult lex = lex_max(net, horizon, order);
    for (int a = 0; a < net->arc_count(); ++a)
      CHECK(result.flow.rate[a] == lex.flow.rate[a]);
  }

  SUBCASE("midpoint of two vertices") {
    LexOrder o1 = LexOrder::from_names(*net, {"s1", "t1", "s2", "t2"});
    LexOrder o2 = LexOrder::from_names(*net, {"s2", "t2", "s1", "t1"});
    std::vector<Rational> v1 = greedy_vertex(oracle, o1);
    std::vector<Rational> v2 = greedy_vertex(oracle, o2);
    SupplyVector b;
    for (std::size_t i = 0; i < v1.size(); ++i)
      b.b.push_back((v1[i] + v2[i]) / Rational(2));
    b.validate(*net);
    TransshipmentResult result = transshipment(net, horizon, b);
    CHECK(verify(result.flow).ok());
    for (int i = 0; i < net->terminal_count(); ++i)
      CHECK(result.flow.net_outflow(net->terminals()[i]) == b.b[i]);
  }

  SUBCASE("zero supply moves nothing") {
    TransshipmentResult result = transshipment(net, horizon, supplies(*net, {}));
    for (const StepFunction& r : result.flow.rate) CHECK(r.is_zero());
  }

  SUBCASE("infeasible instances throw with their certificate") {
    SupplyVector b = supplies(*net, {{"s1", Rational(3)}, {"t2", Rational(-3)}});
    CHECK_THROWS_AS(transshipment(net, horizon, b), InfeasibleError);
    try {
      transshipment(net, horizon, b);
    } catch (const InfeasibleError& e) {
      REQUIRE(e.certificate.violating_set.has_value());
      CHECK(b.of_mask(*e.certificate.violating_set) >
            OValueOracle(net, horizon).value(*e.certificate.violating_set));
    }
  }
}

TEST_CASE("random convex combinations are satisfied exactly") {
  std::mt19937 rng(testsupport::test_seed(59));
  std::uniform_int_distribution<int> horizon_dist(2, 6);
  std::uniform_int_distribution<int> terms_dist(2, 3);
  for (int trial = 0; trial < 10; ++trial) {
    auto net = testsupport::random_network(rng, 6);
    Rational horizon(horizon_dist(rng));
    OValueOracle oracle(net, horizon);
    int k = net->terminal_count();

    int terms = terms_dist(rng);
    std::vector<Rational> coeffs = random_coefficients(rng, terms);
    SupplyVector b;
    b.b.assign(k, Rational(0));
    for (int j = 0; j < terms; ++j) {
      LexOrder order;
      order.terminals = net->terminals();
      std::shuffle(order.terminals.begin(), order.terminals.end(), rng);
      std::vector<Rational> vertex = greedy_vertex(oracle, order);
      for (int i = 0; i < k; ++i) b.b[i] += coeffs[j] * vertex[i];
    }
    b.validate(*net);

    TransshipmentResult result = transshipment(net, horizon, b);
    CHECK(verify(result.flow).ok());
    for (int i = 0; i < k; ++i)
      CHECK(result.flow.net_outflow(net->terminals()[i]) == b.b[i]);
    CHECK(result.certificate.combination.terms.size() <= static_cast<std::size_t>(k));
  }
}

TEST_CASE("quickest horizon bisects to the threshold") {
  auto net = load_network("unit_cross.json");
  Rational precision(1, 64);

  SUBCASE("unit route with detour threshold") {
    SupplyVector b = supplies(*net, {{"s1", Rational(1)}, {"t2", Rational(-1)}});
    Rational t = quickest_horizon(net, b, precision);
    CHECK(t >= Rational(4));
    CHECK(t - Rational(4) <= precision);
    OValueOracle at(net, t);
    CHECK(feasible(at, b).feasible);
    OValueOracle below(net, t - precision);
    CHECK(!feasible(below, b).feasible);
  }

  SUBCASE("doubling the demand shifts the threshold by the fill time") {
    Network built = NetworkBuilder()
                        .source("s")
                        .sink("t")
                        .arc("s", "t", Capacity(Rational(1)), Rational(1))
                        .build();
    auto single = std::make_shared<Network>(std::move(built));
    SupplyVector b = supplies(*single, {{"s", Rational(2)}, {"t", Rational(-2)}});
    Rational t = quickest_horizon(single, b, precision);
    CHECK(t >= Rational(3));
    CHECK(t - Rational(3) <= precision);
  }

  SUBCASE("zero supply needs no time") {
    CHECK(quickest_horizon(net, supplies(*net, {}), precision) == Rational(0));
  }

  SUBCASE("disconnected demand never becomes feasible") {
    Network built = NetworkBuilder().source("s").sink("t").build();
    auto island = std::make_shared<Network>(std::move(built));
    SupplyVector b = supplies(*island, {{"s", Rational(1)}, {"t", Rational(-1)}});
    CHECK_THROWS_AS(quickest_horizon(island, b, precision), InfeasibleError);
  }
}

TEST_CASE("supply vector validation") {
  auto net = load_network("unit_cross.json");
  CHECK_THROWS_AS(supplies(*net, {{"s1", Rational(-1)}, {"t1", Rational(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(supplies(*net, {{"s1", Rational(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(SupplyVector::from_map(*net, {{"v", Rational(1)}}), ParseError);
}
