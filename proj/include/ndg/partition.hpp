// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_PARTITION_HPP
#define NDG_PARTITION_HPP

#include <array>
#include <vector>

#include "ndg/grid.hpp"
#include "ndg/solver.hpp"
#include "ndg/transport.hpp"

namespace ndg {

/// One worker's cuboid of cells plus its periodic neighbors.
struct Block {
  std::array<int, 3> coord{0, 0, 0};  // position in the block grid
  std::array<int, 3> lo{0, 0, 0};     // owned global cell range, [lo, hi)
  std::array<int, 3> hi{1, 1, 1};
  std::array<std::array<int, 2>, 3> neighbor{};  // [axis][0 low, 1 high] -> worker id

  std::array<int, 3> cells() const {
    return {hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
  }
};

/// Tiling of the global cell grid onto workers: per-axis block counts whose
/// product is the worker count, blocks balanced to within one cell per axis.
struct BlockDecomposition {
  int worker_count = 1;
  std::array<int, 3> grid{1, 1, 1};  // blocks per axis
  std::vector<Block> blocks;         // indexed by worker id
};

/// Choose the per-axis block counts minimizing the total periodic interface
/// area sum_d P_d * prod_{e != d} cells_e (ties broken by lexicographically
/// smallest grid), then split each axis into near-equal ranges. Throws
/// DecompositionError when no factorization gives every block at least one
/// cell per axis.
BlockDecomposition decompose(const Mesh& mesh, int worker_count);

/// Fill one block's halos from the current stage state: post all face
/// sends, then receive all faces. Traces are states, not fluxes; each side
/// of a face recomputes the identical Lax-Friedrichs value from them.
void exchange_halos(const Block& block, const FieldShape& local_shape,
                    const std::vector<double>& u, Transport& transport, HaloSet& halos);

struct WorkerTiming {
  double compute_seconds = 0.0;
  double exchange_seconds = 0.0;
};

struct PartitionedResult {
  StateField state;
  StepStats stats;
  std::vector<WorkerTiming> worker_timings;
  BlockDecomposition decomposition;
};

/// Block-parallel run over an in-process worker pool (one thread per
/// block). Workers march in lockstep: per step one wavespeed reduction,
/// per stage one halo exchange followed by one barrier. Results are
/// identical to the serial path for any worker count; a failing worker
/// aborts the exchange and surfaces as RunError naming it.
PartitionedResult run_partitioned(const SolverConfig& config, const StateField& initial,
                                  int worker_count, StepPlan plan = {});

}  // namespace ndg

#endif
