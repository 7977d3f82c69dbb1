#include "tempoflow/transshipment.hpp"

#include <algorithm>
#include <numeric>

namespace tempoflow {

SupplyVector SupplyVector::from_network_file(const Network& net) {
  SupplyVector s;
  s.b.assign(net.terminal_count(), Rational(0));
  for (auto& [node, value] : net.file_supplies())
    s.b[net.terminal_index(node)] = value;
  s.validate(net);
  return s;
}

SupplyVector SupplyVector::from_map(const Network& net,
                                    const std::map<std::string, Rational>& m) {
  SupplyVector s;
  s.b.assign(net.terminal_count(), Rational(0));
  for (auto& [name, value] : m) {
    int v = net.node_index(name);
    int i = net.terminal_index(v);
    if (i < 0) throw ParseError("supply for non-terminal '" + name + "'");
    s.b[i] = value;
  }
  s.validate(net);
  return s;
}

void SupplyVector::validate(const Network& net) const {
  if (static_cast<int>(b.size()) != net.terminal_count())
    throw std::invalid_argument("supply vector size mismatch");
  Rational total(0);
  for (int i = 0; i < net.terminal_count(); ++i) {
    int r = net.terminals()[i];
    if (net.is_source(r) && b[i].sign() < 0)
      throw std::invalid_argument("negative supply at source " + net.node_name(r));
    if (net.is_sink(r) && b[i].sign() > 0)
      throw std::invalid_argument("positive supply at sink " + net.node_name(r));
    total += b[i];
  }
  if (!total.is_zero())
    throw std::invalid_argument("supplies and demands do not balance");
}

Rational SupplyVector::of_mask(unsigned mask) const {
  Rational total(0);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (mask & (1u << i)) total += b[i];
  return total;
}

bool SupplyVector::is_zero() const {
  return std::all_of(b.begin(), b.end(), [](const Rational& v) { return v.is_zero(); });
}

OValueOracle::OValueOracle(std::shared_ptr<const Network> net, Rational horizon)
    : net_(std::move(net)), horizon_(std::move(horizon)) {
  if (horizon_.sign() < 0) throw std::invalid_argument("negative horizon");
}

Rational OValueOracle::value(unsigned x_mask) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(x_mask);
    if (it != cache_.end()) return it->second;
  }
  auto host = extend_mask(net_, x_mask, horizon_);
  Rational v = -min_cost_circulation(host).flow.cost();
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(x_mask, std::move(v)).first->second;
}

std::vector<Rational> greedy_vertex(const OValueOracle& oracle, const LexOrder& order) {
  order.validate(oracle.network());
  std::vector<Rational> z(oracle.k(), Rational(0));
  unsigned prefix = 0;
  Rational prev = oracle.value(0);
  for (int r : order.terminals) {
    int i = oracle.network().terminal_index(r);
    prefix |= 1u << i;
    Rational cur = oracle.value(prefix);
    z[i] = cur - prev;
    prev = std::move(cur);
  }
  return z;
}

namespace {

// ---- exact min-norm point (Wolfe) over the base polytope of g ----

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec greedy_for_direction(const std::function<Rational(unsigned)>& g, int k, const Vec& w,
                         std::vector<int>& order_out) {
  order_out.resize(k);
  std::iota(order_out.begin(), order_out.end(), 0);
  std::stable_sort(order_out.begin(), order_out.end(),
                   [&w](int a, int b) { return w[a] < w[b]; });
  Vec v(k, Rational(0));
  unsigned prefix = 0;
  Rational prev = g(0);
  for (int e : order_out) {
    prefix |= 1u << e;
    Rational cur = g(prefix);
    v[e] = cur - prev;
    prev = std::move(cur);
  }
  return v;
}

// Solves M y = rhs by exact Gaussian elimination; returns false when M is
// singular.
bool solve_linear(std::vector<Vec> m, Vec rhs, Vec& out) {
  int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!m[row][col].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Rational factor = m[row][col] / m[col][col];
      for (int j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
      rhs[row] -= factor * rhs[col];
    }
  }
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
  return true;
}

// Nonzero delta with sum(delta) = 0 and sum(delta_j v_j) = 0, if the points
// are affinely dependent.
std::optional<Vec> affine_dependence(const std::vector<Vec>& points) {
  int p = static_cast<int>(points.size());
  if (p < 2) return std::nullopt;
  int k = static_cast<int>(points[0].size());
  // Null vector of the (k+1) x p matrix [points^T; 1].
  std::vector<Vec> m(k + 1, Vec(p, Rational(0)));
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < k; ++i) m[i][j] = points[j][i];
    m[k][j] = Rational(1);
  }
  std::vector<int> pivot_of_col(p, -1);
  int rank = 0;
  for (int col = 0; col < p && rank <= k; ++col) {
    int pivot = -1;
    for (int row = rank; row <= k; ++row)
      if (!m[row][col].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int row = 0; row <= k; ++row) {
      if (row == rank || m[row][col].is_zero()) continue;
      Rational factor = m[row][col] / m[rank][col];
      for (int j = col; j < p; ++j) m[row][j] -= factor * m[rank][j];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  int free_col = -1;
  for (int col = 0; col < p; ++col)
    if (pivot_of_col[col] < 0) {
      free_col = col;
      break;
    }
  if (free_col < 0) return std::nullopt;
  Vec delta(p, Rational(0));
  delta[free_col] = Rational(1);
  for (int col = 0; col < p; ++col) {
    int r = pivot_of_col[col];
    if (r >= 0) delta[col] = -m[r][free_col] / m[r][col];
  }
  return delta;
}

struct Corral {
  std::vector<Vec> points;
  std::vector<std::vector<int>> orders;
  Vec lambda;

  Vec combination_point(int k) const {
    Vec z(k, Rational(0));
    for (std::size_t j = 0; j < points.size(); ++j)
      for (int i = 0; i < k; ++i) z[i] += lambda[j] * points[j][i];
    return z;
  }

  void erase(std::size_t j) {
    points.erase(points.begin() + static_cast<long>(j));
    orders.erase(orders.begin() + static_cast<long>(j));
    lambda.erase(lambda.begin() + static_cast<long>(j));
  }

  // Removes affine dependences without moving the represented point.
  void make_affinely_independent() {
    while (auto delta = affine_dependence(points)) {
      bool positive = std::any_of(delta->begin(), delta->end(),
                                  [](const Rational& d) { return d.sign() > 0; });
      if (!positive)
        for (auto& d : *delta) d = -d;
      std::optional<Rational> step;
      std::size_t drop = 0;
      for (std::size_t j = 0; j < delta->size(); ++j) {
        if ((*delta)[j].sign() <= 0) continue;
        Rational candidate = lambda[j] / (*delta)[j];
        if (!step || candidate < *step) {
          step = candidate;
          drop = j;
        }
      }
      for (std::size_t j = 0; j < delta->size(); ++j) lambda[j] -= *step * (*delta)[j];
      erase(drop);
      for (std::size_t j = lambda.size(); j-- > 0;)
        if (lambda[j].is_zero() && lambda.size() > 1) erase(j);
    }
  }

  // Affine minimizer of the norm over the affine hull; requires affine
  // independence. Returns the barycentric coordinates.
  Vec affine_minimizer() const {
    int p = static_cast<int>(points.size());
    std::vector<Vec> m(p + 1, Vec(p + 1, Rational(0)));
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) m[a][b] = dot(points[a], points[b]);
    for (int a = 0; a < p; ++a) {
      m[a][p] = Rational(1);
      m[p][a] = Rational(1);
    }
    Vec rhs(p + 1, Rational(0));
    rhs[p] = Rational(1);
    Vec sol;
    if (!solve_linear(std::move(m), std::move(rhs), sol))
      throw std::logic_error("affine minimization on dependent points");
    sol.resize(p);
    return sol;
  }
};

int bits(const Rational& r) {
  auto nbits = [](const BigInt& v) {
    return static_cast<int>(boost::multiprecision::msb(v < 0 ? BigInt(-v) : v) + 1);
  };
  int total = 0;
  if (!r.numerator().is_zero()) total = nbits(r.numerator());
  return std::max(total, nbits(r.denominator()));
}

}  // namespace

SfmResult sfm_min_norm(const std::function<Rational(unsigned)>& g, int k,
                       int max_major_cycles) {
  if (k <= 0 || k > 30) throw std::invalid_argument("ground set size out of range");
  if (!g(0).is_zero()) throw std::invalid_argument("g(empty set) must be 0");

  SfmResult result;
  Corral corral;
  {
    std::vector<int> order;
    Vec v0 = greedy_for_direction(g, k, Vec(static_cast<std::size_t>(k), Rational(0)), order);
    corral.points.push_back(std::move(v0));
    corral.orders.push_back(std::move(order));
    corral.lambda.push_back(Rational(1));
  }
  Vec z = corral.combination_point(k);

  for (result.major_cycles = 0;; ++result.major_cycles) {
    if (result.major_cycles >= max_major_cycles)
      throw IterationLimitError("min-norm point iteration cap exceeded");
    for (const Rational& c : z) result.max_coordinate_bits = std::max(result.max_coordinate_bits, bits(c));

    std::vector<int> order;
    Vec q = greedy_for_direction(g, k, z, order);
    if (dot(z, q) >= dot(z, z)) break;  // z already minimizes the norm
    corral.points.push_back(std::move(q));
    corral.orders.push_back(std::move(order));
    corral.lambda.push_back(Rational(0));

    while (true) {  // minor cycles
      corral.make_affinely_independent();
      Vec alpha = corral.affine_minimizer();
      bool interior = std::all_of(alpha.begin(), alpha.end(),
                                  [](const Rational& a) { return a.sign() > 0; });
      if (interior) {
        corral.lambda = std::move(alpha);
        z = corral.combination_point(k);
        break;
      }
      // Step from lambda toward alpha until the first coefficient hits zero.
      std::optional<Rational> theta;
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j].sign() > 0) continue;
        Rational candidate = corral.lambda[j] / (corral.lambda[j] - alpha[j]);
        if (!theta || candidate < *theta) theta = candidate;
      }
      for (std::size_t j = 0; j < alpha.size(); ++j)
        corral.lambda[j] = corral.lambda[j] + *theta * (alpha[j] - corral.lambda[j]);
      for (std::size_t j = corral.lambda.size(); j-- > 0;)
        if (corral.lambda[j].sign() <= 0 && corral.lambda.size() > 1) corral.erase(j);
      z = corral.combination_point(k);
    }
  }

  result.min_norm_point = z;
  Rational min_value(0);
  unsigned minimizer = 0;
  for (int i = 0; i < k; ++i)
    if (z[i].sign() < 0) {
      min_value += z[i];
      minimizer |= 1u << i;
    }
  result.min_value = std::move(min_value);
  result.minimizer = minimizer;
  if (g(minimizer) != result.min_value)
    throw std::logic_error("min-norm duality mismatch (is g submodular?)");
  for (std::size_t j = 0; j < corral.points.size(); ++j)
    if (corral.lambda[j].sign() > 0)
      result.terms.push_back({corral.orders[j], corral.lambda[j]});
  return result;
}

FeasibilityCertificate feasible(const OValueOracle& oracle, const SupplyVector& b) {
  b.validate(oracle.network());
  FeasibilityCertificate cert;
  if (b.is_zero()) {
    cert.feasible = true;  // satisfied by the zero flow; empty combination
    return cert;
  }
  auto g = [&oracle, &b](unsigned mask) { return oracle.value(mask) - b.of_mask(mask); };
  SfmResult sfm = sfm_min_norm(g, oracle.k());
  cert.sfm_major_cycles = sfm.major_cycles;
  cert.sfm_max_bits = sfm.max_coordinate_bits;
  if (sfm.min_value.is_zero()) {
    cert.feasible = true;
    for (const SfmTerm& term : sfm.terms) {
      LexOrder order;
      for (int e : term.order) order.terminals.push_back(oracle.network().terminals()[e]);
      // Highest priority first: the greedy procedure consumes the list front
      // to back, matching the vertex construction directly.
      cert.combination.terms.emplace_back(std::move(order), term.coefficient);
    }
  } else {
    cert.feasible = false;
    cert.violating_set = sfm.minimizer;
    cert.gap = b.of_mask(sfm.minimizer) - oracle.value(sfm.minimizer);
  }
  return cert;
}

TransshipmentResult transshipment(std::shared_ptr<const Network> net, const Rational& horizon,
                                  const SupplyVector& b) {
  OValueOracle oracle(net, horizon);
  FeasibilityCertificate cert = feasible(oracle, b);
  if (!cert.feasible)
    throw InfeasibleError("transshipment is infeasible within the horizon", std::move(cert));

  TransshipmentResult result;
  result.decomposition.host = full_extension(net, horizon);
  std::vector<Rational> reconstructed(net->terminal_count(), Rational(0));
  Rational coefficient_sum(0);
  for (auto& [order, coefficient] : cert.combination.terms) {
    coefficient_sum += coefficient;
    std::vector<Rational> vertex = greedy_vertex(oracle, order);
    for (int i = 0; i < net->terminal_count(); ++i)
      reconstructed[i] += coefficient * vertex[i];
    LexMaxResult lex = lex_max(net, horizon, order);
    for (ChainFlow chain : lex.decomposition.chains) {
      chain.value *= coefficient;
      result.decomposition.chains.push_back(std::move(chain));
    }
  }
  if (!cert.combination.terms.empty() && coefficient_sum != Rational(1))
    throw std::logic_error("combination coefficients do not sum to one");
  if (reconstructed != b.b)
    throw std::logic_error("combination does not reconstruct the supply vector");

  result.flow = induce_infinite(result.decomposition, horizon);
  VerificationReport report = verify(result.flow);
  if (!report.ok())
    throw std::logic_error("transshipment flow failed verification");
  for (int i = 0; i < net->terminal_count(); ++i)
    if (result.flow.net_outflow(net->terminals()[i]) != b.b[i])
      throw std::logic_error("transshipment does not meet the supplies exactly");
  result.certificate = std::move(cert);
  return result;
}

Rational quickest_horizon(std::shared_ptr<const Network> net, const SupplyVector& b,
                          const Rational& precision) {
  b.validate(*net);
  if (precision.sign() <= 0) throw std::invalid_argument("precision must be positive");
  if (b.is_zero()) return Rational(0);

  auto is_feasible = [&net, &b](const Rational& t) {
    OValueOracle oracle(net, t);
    return feasible(oracle, b).feasible;
  };
  auto violating = [&net, &b](const Rational& t) -> unsigned {
    OValueOracle oracle(net, t);
    return feasible(oracle, b).violating_set.value();
  };

  Rational hi(1);
  for (const Arc& a : net->arcs()) hi += a.transit;
  for (int doubling = 0; !is_feasible(hi); ++doubling) {
    if (doubling >= 64) {
      FeasibilityCertificate cert;
      cert.feasible = false;
      cert.violating_set = violating(hi);
      throw InfeasibleError("no finite horizon is feasible", std::move(cert));
    }
    // A violating set whose o-value stopped growing can never catch up.
    unsigned x = violating(hi);
    OValueOracle at(net, hi), at2(net, hi + hi);
    if (at.value(x) == at2.value(x)) {
      FeasibilityCertificate cert;
      cert.feasible = false;
      cert.violating_set = x;
      cert.gap = b.of_mask(x) - at.value(x);
      throw InfeasibleError("no finite horizon is feasible", std::move(cert));
    }
    hi += hi;
  }
  Rational lo(0);
  while (hi - lo > precision) {
    Rational mid = (hi + lo) / Rational(2);
    if (is_feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace tempoflow
