#pragma once
// Weakly-connected-subsystem identification: the normalized symmetrized
// adjacency matrix of the dynamics, weighted modularity, and Louvain
// community detection.

#include <cstdint>
#include <vector>

#include "bem/linalg/matrix.hpp"

namespace bem::wcs {

// W = 0.5 (D^-1 A + A^T D^-1) with A = |h_ij| and D the row-sum degree
// matrix. Zero-degree rows contribute zero (their D^-1 entry is taken as 0),
// which keeps W exactly symmetric.
Matrix adjacency(const Matrix& h);

struct Partition {
  std::vector<std::size_t> assignment;  // state index -> cluster id, 0..m-1
  std::size_t cluster_count = 0;
  double modularity = 0.0;

  std::vector<std::vector<std::size_t>> clusters() const;
};

// Q = 1/(2m) sum_ij [W_ij - k_i k_j / (2m)] delta(c_i, c_j), with
// m = 0.5 * sum_ij W_ij and k_i the row sums. Returns 0 on an edgeless graph.
double modularity(const Matrix& w, const std::vector<std::size_t>& assignment);

struct LouvainOptions {
  // Extra seeded restarts; the best-Q result wins. Deterministic for a
  // fixed seed.
  int restarts = 16;
};

// Greedy modularity optimization: local moves (ties broken toward the
// lowest community id, sweep order a seeded shuffle) followed by graph
// aggregation, repeated until no improvement.
Partition louvain(const Matrix& w, std::uint64_t seed, const LouvainOptions& opt = {});

// Renumbers cluster ids to 0..m-1 in order of first appearance.
void normalize_ids(Partition& p);

}  // namespace bem::wcs
