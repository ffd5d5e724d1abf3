#include "bem/wcs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "bem/io/rng.hpp"

namespace bem::wcs {

Matrix adjacency(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("adjacency: H not square");
  const std::size_t n = h.rows();
  Vector inv_degree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += std::abs(h(i, j));
    inv_degree[i] = d > 0.0 ? 1.0 / d : 0.0;
  }
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // 0.5 * (A_ij / d_i + A_ji / d_j): symmetric by construction.
      w(i, j) = 0.5 * (std::abs(h(i, j)) * inv_degree[i] +
                       std::abs(h(j, i)) * inv_degree[j]);
    }
  return w;
}

std::vector<std::vector<std::size_t>> Partition::clusters() const {
  std::vector<std::vector<std::size_t>> out(cluster_count);
  for (std::size_t i = 0; i < assignment.size(); ++i)
    out[assignment[i]].push_back(i);
  return out;
}

double modularity(const Matrix& w, const std::vector<std::size_t>& assignment) {
  const std::size_t n = w.rows();
  if (assignment.size() != n)
    throw std::invalid_argument("modularity: assignment size mismatch");
  Vector k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += w(i, j);
    two_m += k[i];
  }
  if (two_m <= 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (assignment[i] == assignment[j])
        q += w(i, j) - k[i] * k[j] / two_m;
  return q / two_m;
}

void normalize_ids(Partition& p) {
  std::vector<std::size_t> remap(p.assignment.size(), SIZE_MAX);
  std::size_t next = 0;
  for (auto& c : p.assignment) {
    if (remap[c] == SIZE_MAX) remap[c] = next++;
    c = remap[c];
  }
  p.cluster_count = next;
}

namespace {

struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // i<->j, w once per direction
  Vector self;    // self-loop weights A_ii
  Vector degree;  // k_i = self + sum of incident edge weights
  double two_m = 0.0;
};

Graph from_matrix(const Matrix& w) {
  Graph g;
  g.n = w.rows();
  g.adj.resize(g.n);
  g.self.assign(g.n, 0.0);
  g.degree.assign(g.n, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      const double v = w(i, j);
      if (v == 0.0) continue;
      if (i == j) g.self[i] = v;
      else g.adj[i].emplace_back(j, v);
      g.degree[i] += v;
    }
    g.two_m += g.degree[i];
  }
  return g;
}

// One Louvain level: local moves until stable. Returns true if anything moved.
bool local_moves(const Graph& g, std::vector<std::size_t>& comm, io::Rng& rng) {
  const double two_m = g.two_m;
  Vector sigma_tot(g.n, 0.0);
  std::vector<std::size_t> count(g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i) {
    sigma_tot[comm[i]] += g.degree[i];
    ++count[comm[i]];
  }
  std::set<std::size_t> empties;
  for (std::size_t c = 0; c < g.n; ++c)
    if (count[c] == 0) empties.insert(c);

  std::vector<std::size_t> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  bool any_move = false;
  bool improved = true;
  std::vector<double> k_ic(g.n, 0.0);
  std::vector<std::size_t> touched;
  while (improved) {
    improved = false;
    for (std::size_t idx : order) {
      const std::size_t old_c = comm[idx];
      // Weights from idx into each adjacent community (excluding self-loop).
      touched.clear();
      for (const auto& [j, wij] : g.adj[idx]) {
        const std::size_t c = comm[j];
        if (k_ic[c] == 0.0) touched.push_back(c);
        k_ic[c] += wij;
      }
      sigma_tot[old_c] -= g.degree[idx];

      // Gain of joining community c relative to staying isolated:
      //   k_ic / m - k_i * sigma_tot(c) / (2 m^2)
      auto gain = [&](std::size_t c) {
        return 2.0 * k_ic[c] / two_m -
               2.0 * g.degree[idx] * sigma_tot[c] / (two_m * two_m);
      };
      std::size_t best_c = old_c;
      double best_gain = gain(old_c);
      auto consider = [&](std::size_t c, double gc) {
        if (gc > best_gain + 1e-14 ||
            (std::abs(gc - best_gain) <= 1e-14 && c < best_c)) {
          best_gain = gc;
          best_c = c;
        }
      };
      for (std::size_t c : touched) consider(c, gain(c));
      // Splitting off into an empty community has gain exactly 0; it is the
      // escape hatch when staying put has negative gain.
      if (count[old_c] >= 2 && !empties.empty()) consider(*empties.begin(), 0.0);

      sigma_tot[best_c] += g.degree[idx];
      if (best_c != old_c) {
        comm[idx] = best_c;
        if (--count[old_c] == 0) empties.insert(old_c);
        if (count[best_c]++ == 0) empties.erase(best_c);
        improved = true;
        any_move = true;
      }
      for (std::size_t c : touched) k_ic[c] = 0.0;
      k_ic[old_c] = 0.0;
    }
  }
  return any_move;
}

Graph aggregate(const Graph& g, const std::vector<std::size_t>& comm,
                std::vector<std::size_t>& renumber) {
  renumber.assign(g.n, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t i = 0; i < g.n; ++i)
    if (renumber[comm[i]] == SIZE_MAX) renumber[comm[i]] = next++;

  Graph a;
  a.n = next;
  a.adj.resize(next);
  a.self.assign(next, 0.0);
  a.degree.assign(next, 0.0);
  a.two_m = g.two_m;

  std::vector<std::unordered_map<std::size_t, double>> acc(next);
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::size_t ci = renumber[comm[i]];
    a.self[ci] += g.self[i];
    for (const auto& [j, wij] : g.adj[i]) {
      const std::size_t cj = renumber[comm[j]];
      if (ci == cj) a.self[ci] += wij;  // both directions land here once each
      else acc[ci][cj] += wij;
    }
  }
  for (std::size_t c = 0; c < next; ++c) {
    a.degree[c] = a.self[c];
    a.adj[c].assign(acc[c].begin(), acc[c].end());
    std::sort(a.adj[c].begin(), a.adj[c].end());
    for (const auto& [j, wij] : a.adj[c]) a.degree[c] += wij;
  }
  return a;
}

std::vector<std::size_t> louvain_once(const Matrix& w, std::uint64_t seed,
                                      bool random_init) {
  const Graph g0 = from_matrix(w);
  const std::size_t n0 = g0.n;
  std::vector<std::size_t> node_to_cluster(n0);
  std::iota(node_to_cluster.begin(), node_to_cluster.end(), 0);

  if (g0.two_m <= 0.0) return node_to_cluster;

  io::Rng rng(seed);
  if (random_init) {
    // Diversify restarts: start from a random coarse partition instead of
    // singletons so different restarts explore different basins.
    const std::size_t groups = 2 + static_cast<std::size_t>(
        rng.uniform() * static_cast<double>(std::max<std::size_t>(n0 - 1, 1)));
    for (auto& c : node_to_cluster)
      c = static_cast<std::size_t>(rng.uniform() * static_cast<double>(groups)) % n0;
  }
  double q_best = modularity(w, node_to_cluster);
  while (true) {
    // Leaf-level refinement: local moves on the original graph seeded with
    // the current partition. Starting from the previous solution (rather
    // than singletons) lets nodes escape communities the aggregation of an
    // earlier pass froze them into.
    std::vector<std::size_t> comm = node_to_cluster;
    local_moves(g0, comm, rng);

    // Multilevel phase: aggregate and move supernodes until stable.
    std::vector<std::size_t> renumber;
    Graph g = aggregate(g0, comm, renumber);
    std::vector<std::size_t> assignment(n0);
    for (std::size_t i = 0; i < n0; ++i) assignment[i] = renumber[comm[i]];
    while (true) {
      std::vector<std::size_t> super(g.n);
      std::iota(super.begin(), super.end(), 0);
      if (!local_moves(g, super, rng)) break;
      Graph next = aggregate(g, super, renumber);
      for (auto& c : assignment) c = renumber[super[c]];
      if (next.n == g.n) break;
      g = std::move(next);
    }

    const double q = modularity(w, assignment);
    if (q <= q_best + 1e-14) break;
    q_best = q;
    node_to_cluster = std::move(assignment);
  }
  return node_to_cluster;
}

}  // namespace

Partition louvain(const Matrix& w, std::uint64_t seed, const LouvainOptions& opt) {
  Partition best;
  best.modularity = -2.0;
  for (int r = 0; r <= opt.restarts; ++r) {
    Partition p;
    p.assignment = louvain_once(
        w, seed + static_cast<std::uint64_t>(r) * 0x9e3779b97f4a7c15ull, r > 0);
    p.modularity = modularity(w, p.assignment);
    if (p.modularity > best.modularity + 1e-15) best = std::move(p);
  }
  normalize_ids(best);
  return best;
}

}  // namespace bem::wcs
