// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_ERRORS_HPP
#define NDG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ndg {

/// Invalid construction parameters (bad order, cell counts, cfl, ...).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Physically inadmissible state, e.g. nonpositive density in an Euler flux.
class PhysicsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A time step produced NaN/Inf entries.
class InstabilityError : public std::runtime_error {
public:
  InstabilityError(const std::string& what, long step)
      : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

private:
  long step_;
};

/// Grid/worker decomposition that cannot satisfy the constraints.
class DecompositionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Failure inside the halo exchange layer (bad frame, closed peer, abort).
class TransportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A partitioned run failed; carries the id of the worker that failed first.
class RunError : public std::runtime_error {
public:
  RunError(const std::string& what, int worker)
      : std::runtime_error(what), worker_(worker) {}
  int worker() const { return worker_; }

private:
  int worker_;
};

}  // namespace ndg

#endif
