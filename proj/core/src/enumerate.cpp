#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fitpa/errors.hpp"
#include "fitpa/urn.hpp"

namespace fitpa {

Rat tv_distance(const ExactDistribution& a, const ExactDistribution& b) {
  Rat sum = 0;
  auto ia = a.prob.begin();
  auto ib = b.prob.begin();
  while (ia != a.prob.end() || ib != b.prob.end()) {
    if (ib == b.prob.end() || (ia != a.prob.end() && ia->first < ib->first)) {
      sum += abs(ia->second);
      ++ia;
    } else if (ia == a.prob.end() || ib->first < ia->first) {
      sum += abs(ib->second);
      ++ib;
    } else {
      sum += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

namespace {

void check_enumeration_inputs(const TypeAssignment& ta, const FitnessModel& fm, int n_steps) {
  if (!urn_eligible(fm))
    throw WrongModel("exact enumeration covers only the urn-comparable models "
                     "(multiplicative or plain with alpha = 0)");
  if (ta.m > 2 || n_steps > 6)
    throw StateSpaceTooLarge("exact enumeration supports m <= 2 and n_steps <= 6 (m = " +
                             std::to_string(ta.m) + ", n_steps = " + std::to_string(n_steps) +
                             ")");
}

// Vertex as (degree, colour); a graph state is the sorted multiset of them.
// Degrees beyond the multiset do not matter for the process law.
using Vertex = std::pair<std::uint32_t, std::uint8_t>;
using GraphKey = std::vector<Vertex>;

GraphKey canonical(GraphKey v) {
  std::sort(v.begin(), v.end());
  return v;
}

Rat vertex_weight_rat(const Vertex& v, const Rat& phi) {
  Rat w(v.first);
  if (v.second == 1) w *= phi;  // blue
  return w;
}

}  // namespace

ExactDistribution enumerate_graph_exact(const InitialGraph& g0, const TypeAssignment& ta,
                                        const FitnessModel& fm, int n_steps) {
  check_enumeration_inputs(ta, fm, n_steps);
  validate_initial_graph(ta, fm, g0);
  const Rat phi = effective_phi(fm);
  const int m = ta.m;

  GraphKey init;
  for (std::size_t v = 0; v < g0.degree.size(); ++v)
    init.emplace_back(g0.degree[v], static_cast<std::uint8_t>(g0.type[v] == Color::Blue));

  std::map<GraphKey, Rat> states;
  states[canonical(init)] = 1;

  for (int step = 0; step < n_steps; ++step) {
    std::map<GraphKey, Rat> next;
    for (const auto& [key, mass] : states) {
      Rat total = 0;
      for (const auto& v : key) total += vertex_weight_rat(v, phi);

      // Ordered pick tuples over vertices, built recursively; all picks use
      // the pre-step weights.
      std::vector<std::size_t> picks(static_cast<std::size_t>(m));
      const auto recurse = [&](auto&& self, int depth, const Rat& prob) -> void {
        if (depth == m) {
          int red_hits = 0;
          GraphKey updated = key;
          for (int j = 0; j < m; ++j) {
            auto& v = updated[picks[static_cast<std::size_t>(j)]];
            ++v.first;
            if (key[picks[static_cast<std::size_t>(j)]].second == 0) ++red_hits;
          }
          const Rat p_red = ta.p[static_cast<std::size_t>(red_hits)];
          for (int is_blue = 0; is_blue <= 1; ++is_blue) {
            const Rat branch = is_blue ? (1 - p_red) : p_red;
            if (branch == 0) continue;
            GraphKey with_new = updated;
            with_new.emplace_back(static_cast<std::uint32_t>(m),
                                  static_cast<std::uint8_t>(is_blue));
            next[canonical(std::move(with_new))] += prob * branch;
          }
          return;
        }
        for (std::size_t v = 0; v < key.size(); ++v) {
          picks[static_cast<std::size_t>(depth)] = v;
          self(self, depth + 1, prob * vertex_weight_rat(key[v], phi) / total);
        }
      };
      recurse(recurse, 0, mass);
      if (next.size() > 100000)
        throw StateSpaceTooLarge("graph enumeration exceeded 100000 states");
    }
    states = std::move(next);
  }

  ExactDistribution dist;
  for (const auto& [key, mass] : states) {
    std::uint64_t X = 0, A = 0;
    for (const auto& v : key)
      if (v.second == 0) {
        X += v.first;
        ++A;
      }
    dist.prob[{X, A}] += mass;
  }
  return dist;
}

ExactDistribution enumerate_urn_exact(const InitialGraph& g0, const TypeAssignment& ta,
                                      const FitnessModel& fm, int n_steps) {
  check_enumeration_inputs(ta, fm, n_steps);
  validate_initial_graph(ta, fm, g0);
  const Rat phi = effective_phi(fm);
  const int m = ta.m;

  std::uint64_t X0 = 0, Y0 = 0, A0 = 0, B0 = 0;
  for (std::size_t v = 0; v < g0.degree.size(); ++v) {
    if (g0.type[v] == Color::Red) {
      X0 += g0.degree[v];
      ++A0;
    } else {
      Y0 += g0.degree[v];
      ++B0;
    }
  }

  ExactDistribution cur;
  cur.prob[{X0, A0}] = 1;
  for (int step = 0; step < n_steps; ++step) {
    const std::uint64_t total_deg =
        X0 + Y0 + 2 * static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(step);
    ExactDistribution next;
    for (const auto& [state, mass] : cur.prob) {
      const auto [X, A] = state;
      const Rat Xr(X), Yr(total_deg - X);
      const Rat rho = Xr / (Xr + phi * Yr);
      for (int k = 0; k <= m; ++k) {
        Rat pk = Rat(binomial(m, k));
        for (int j = 0; j < k; ++j) pk *= rho;
        for (int j = 0; j < m - k; ++j) pk *= (1 - rho);
        if (pk == 0) continue;
        const Rat p_red = ta.p[static_cast<std::size_t>(k)];
        const std::uint64_t k64 = static_cast<std::uint64_t>(k);
        const std::uint64_t m64 = static_cast<std::uint64_t>(m);
        if (p_red != 0) next.prob[{X + k64 + m64, A + 1}] += mass * pk * p_red;
        if (p_red != 1) next.prob[{X + k64, A}] += mass * pk * (1 - p_red);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace fitpa
