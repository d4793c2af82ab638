// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/partition.hpp"

#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "ndg/errors.hpp"

namespace ndg {

namespace {

std::int64_t interface_cost(const Mesh& mesh, const std::array<int, 3>& grid) {
  // Periodic interface area in cells; a wrap onto the block itself still
  // counts, which favors splitting along more axes on square grids.
  std::int64_t cost = 0;
  for (int d = 0; d < mesh.dim; ++d) {
    std::int64_t cross = 1;
    for (int e = 0; e < mesh.dim; ++e) {
      if (e != d) cross *= mesh.cells[e];
    }
    cost += static_cast<std::int64_t>(grid[d]) * cross;
  }
  return cost;
}

int range_start(int cells, int parts, int index) {
  const int base = cells / parts;
  const int rem = cells % parts;
  return index * base + std::min(index, rem);
}

}  // namespace

BlockDecomposition decompose(const Mesh& mesh, int worker_count) {
  if (worker_count < 1) {
    throw DecompositionError("worker count must be >= 1, got " +
                             std::to_string(worker_count));
  }
  bool found = false;
  std::array<int, 3> best{1, 1, 1};
  std::int64_t best_cost = 0;
  for (int px = 1; px <= worker_count; ++px) {
    if (worker_count % px != 0) continue;
    const int rest = worker_count / px;
    for (int py = 1; py <= rest; ++py) {
      if (rest % py != 0) continue;
      const int pz = rest / py;
      const std::array<int, 3> grid{px, py, pz};
      bool ok = true;
      for (int d = 0; d < 3; ++d) {
        if (d >= mesh.dim && grid[d] != 1) ok = false;
        if (grid[d] > mesh.cells[d]) ok = false;
      }
      if (!ok) continue;
      const std::int64_t cost = interface_cost(mesh, grid);
      if (!found || cost < best_cost || (cost == best_cost && grid < best)) {
        found = true;
        best = grid;
        best_cost = cost;
      }
    }
  }
  if (!found) {
    throw DecompositionError(
        "no factorization of " + std::to_string(worker_count) + " workers fits a " +
        std::to_string(mesh.cells[0]) + "x" + std::to_string(mesh.cells[1]) + "x" +
        std::to_string(mesh.cells[2]) +
        " cell grid with at least one cell per block per axis");
  }

  BlockDecomposition dec;
  dec.worker_count = worker_count;
  dec.grid = best;
  dec.blocks.resize(worker_count);
  auto worker_id = [&](int gx, int gy, int gz) {
    return (gx * best[1] + gy) * best[2] + gz;
  };
  for (int gx = 0; gx < best[0]; ++gx)
    for (int gy = 0; gy < best[1]; ++gy)
      for (int gz = 0; gz < best[2]; ++gz) {
        Block& b = dec.blocks[worker_id(gx, gy, gz)];
        b.coord = {gx, gy, gz};
        for (int d = 0; d < 3; ++d) {
          b.lo[d] = range_start(mesh.cells[d], best[d], b.coord[d]);
          b.hi[d] = range_start(mesh.cells[d], best[d], b.coord[d] + 1);
        }
        for (int d = 0; d < 3; ++d) {
          std::array<int, 3> c = b.coord;
          c[d] = (b.coord[d] + best[d] - 1) % best[d];
          b.neighbor[d][0] = worker_id(c[0], c[1], c[2]);
          c[d] = (b.coord[d] + 1) % best[d];
          b.neighbor[d][1] = worker_id(c[0], c[1], c[2]);
        }
      }
  return dec;
}

void exchange_halos(const Block& block, const FieldShape& local_shape,
                    const std::vector<double>& u, Transport& transport,
                    HaloSet& halos) {
  const int dim = local_shape.dim;
  // Scratch for outgoing traces; sends copy the payload.
  thread_local std::vector<double> trace;
  for (int d = 0; d < dim; ++d) {
    pack_face_trace(local_shape, u, d, 0, 0, trace);
    transport.send(block.neighbor[d][0], face_id(d, false), trace.data(), trace.size());
    pack_face_trace(local_shape, u, d, local_shape.cells[d] - 1, local_shape.order - 1,
                    trace);
    transport.send(block.neighbor[d][1], face_id(d, true), trace.data(), trace.size());
  }
  for (int d = 0; d < dim; ++d) {
    halos.low[d].resize(face_trace_size(local_shape, d));
    halos.high[d].resize(face_trace_size(local_shape, d));
    transport.recv(block.neighbor[d][0], face_id(d, true), halos.low[d].data(),
                   halos.low[d].size());
    transport.recv(block.neighbor[d][1], face_id(d, false), halos.high[d].data(),
                   halos.high[d].size());
  }
}

namespace {

FieldShape block_shape(const FieldShape& global, const Block& block) {
  FieldShape s = global;
  s.cells = block.cells();
  return s;
}

// Block cells are contiguous chunks of nodes*vars in both layouts; copy
// chunkwise between the global field and a worker-local one.
void copy_block(const FieldShape& global_shape, std::vector<double>& global,
                const FieldShape& local_shape, std::vector<double>& local,
                const Block& block, bool to_local) {
  const std::size_t chunk = local_shape.size() /
                            (static_cast<std::size_t>(local_shape.cells[0]) *
                             local_shape.cells[1] * local_shape.cells[2]);
  const auto cells = block.cells();
  std::array<int, 3> c{0, 0, 0};
  for (c[0] = 0; c[0] < cells[0]; ++c[0])
    for (c[1] = 0; c[1] < cells[1]; ++c[1])
      for (c[2] = 0; c[2] < cells[2]; ++c[2]) {
        const std::array<int, 3> g{block.lo[0] + c[0], block.lo[1] + c[1],
                                   block.lo[2] + c[2]};
        const std::array<int, 3> zero{0, 0, 0};
        const std::size_t goff = global_shape.index(g, zero, 0);
        const std::size_t loff = local_shape.index(c, zero, 0);
        if (to_local) {
          std::memcpy(&local[loff], &global[goff], chunk * sizeof(double));
        } else {
          std::memcpy(&global[goff], &local[loff], chunk * sizeof(double));
        }
      }
}

struct WorkerFailure {
  std::mutex mutex;
  std::atomic<bool> failed{false};
  int worker = -1;
  std::string message;

  void record(int w, const std::string& msg, InProcessHub& hub) {
    {
      std::lock_guard lock(mutex);
      if (!failed.load(std::memory_order_relaxed)) {
        worker = w;
        message = msg;
        failed.store(true, std::memory_order_release);
      }
    }
    hub.abort(msg);
  }
};

}  // namespace

PartitionedResult run_partitioned(const SolverConfig& config, const StateField& initial,
                                  int worker_count, StepPlan plan) {
  validate(config);
  const Mesh& mesh = config.mesh;
  const FieldShape& gshape = initial.shape();

  PartitionedResult result;
  result.decomposition = decompose(mesh, worker_count);
  result.state = initial;  // gathered over in place after the run
  result.worker_timings.assign(worker_count, WorkerTiming{});

  const NodalBasis basis = differentiation_matrix(gauss_lobatto(mesh.order));
  const DGOperator op(mesh, basis, config.model);

  InProcessHub hub(worker_count);
  WorkerFailure failure;

  // Per-step wavespeed reduction: workers deposit their local bound, the
  // barrier completion publishes the max. The same barrier also separates
  // the RK stages, where slots are simply left untouched.
  std::vector<double> alpha_slots(worker_count, 0.0);
  std::atomic<double> shared_alpha{0.0};
  std::atomic<bool> stop{false};
  auto on_phase = [&]() noexcept {
    double a = 0.0;
    for (double s : alpha_slots) a = std::max(a, s);
    shared_alpha.store(a, std::memory_order_relaxed);
    if (failure.failed.load(std::memory_order_acquire)) {
      stop.store(true, std::memory_order_relaxed);
    }
  };
  std::barrier barrier(worker_count, on_phase);

  std::vector<StepStats> stats(worker_count);
  std::vector<std::thread> threads;
  threads.reserve(worker_count);

  auto worker_main = [&](int w) {
    try {
      const Block& block = result.decomposition.blocks[w];
      const FieldShape lshape = block_shape(gshape, block);
      std::vector<double> u(lshape.size());
      copy_block(gshape, result.state.values(), lshape, u, block, true);

      HaloSet halos;
      halos.allocate(lshape);
      Transport& tr = hub.endpoint(w);
      std::uint32_t stage_counter = 0;
      WorkerTiming& timing = result.worker_timings[w];

      auto rhs = [&](const std::vector<double>& state, std::vector<double>& dudt) {
        const auto tx0 = std::chrono::steady_clock::now();
        tr.set_stage(stage_counter++);
        exchange_halos(block, lshape, state, tr, halos);
        const auto tx1 = std::chrono::steady_clock::now();
        op.apply(lshape, state, halos, dudt);
        const auto tx2 = std::chrono::steady_clock::now();
        timing.exchange_seconds += std::chrono::duration<double>(tx1 - tx0).count();
        timing.compute_seconds += std::chrono::duration<double>(tx2 - tx1).count();
        barrier.arrive_and_wait();
        if (stop.load(std::memory_order_relaxed)) {
          throw TransportError("stopped by failure elsewhere");
        }
      };

      RKIntegrator integrator(config.rk, u.size());

      auto reduce_dt = [&]() {
        alpha_slots[w] = max_wavespeed_bound(lshape, config.model, u);
        barrier.arrive_and_wait();
        if (stop.load(std::memory_order_relaxed)) {
          throw TransportError("stopped by failure elsewhere");
        }
        return dt_from_alpha(mesh, shared_alpha.load(std::memory_order_relaxed),
                             config.cfl);
      };

      auto check_local_finite = [&](long step) {
        for (double v : u) {
          if (!std::isfinite(v)) {
            throw InstabilityError("non-finite state after step " + std::to_string(step),
                                   step);
          }
        }
      };

      if (plan.warmup) {
        std::vector<double> scratch = u;
        double dt = reduce_dt();
        if (!std::isfinite(dt)) dt = config.t_end;
        integrator.step(scratch, dt, rhs);
        barrier.arrive_and_wait();
      }

      StepStats& st = stats[w];
      const auto t0 = std::chrono::steady_clock::now();
      if (plan.fixed_steps >= 0) {
        for (long s = 0; s < plan.fixed_steps; ++s) {
          const double dt = reduce_dt();
          if (!std::isfinite(dt)) {
            throw ConfigError("fixed-step run requires a positive wavespeed");
          }
          integrator.step(u, dt, rhs);
          check_local_finite(s + 1);
          ++st.steps;
          st.dt_min = std::min(st.dt_min, dt);
          st.dt_max = std::max(st.dt_max, dt);
        }
      } else {
        double t = 0.0;
        while (t < config.t_end) {
          const double stable = reduce_dt();
          const double remaining = config.t_end - t;
          const bool last = remaining <= stable;
          const double dt = last ? remaining : stable;
          integrator.step(u, dt, rhs);
          check_local_finite(st.steps + 1);
          ++st.steps;
          st.dt_min = std::min(st.dt_min, dt);
          st.dt_max = std::max(st.dt_max, dt);
          if (last) break;
          t += dt;
        }
      }
      st.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      copy_block(gshape, result.state.values(), lshape, u, block, false);
      barrier.arrive_and_drop();
    } catch (const std::exception& e) {
      failure.record(w, "worker " + std::to_string(w) + ": " + e.what(), hub);
      barrier.arrive_and_drop();
    }
  };

  for (int w = 0; w < worker_count; ++w) threads.emplace_back(worker_main, w);
  for (auto& th : threads) th.join();

  if (failure.failed) {
    throw RunError(failure.message, failure.worker);
  }

  result.stats = stats[0];
  for (const auto& st : stats) {
    result.stats.wall_seconds = std::max(result.stats.wall_seconds, st.wall_seconds);
  }
  return result;
}

}  // namespace ndg
