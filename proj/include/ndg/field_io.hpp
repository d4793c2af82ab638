// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_FIELD_IO_HPP
#define NDG_FIELD_IO_HPP

#include <string>

#include "ndg/grid.hpp"

namespace ndg {

/// Field dump: a short text header (one "key values" line each for dim,
/// cells, order, nvar, length) terminated by a "data" line, followed by the
/// raw 64-bit little-endian floats in field index order.
void dump_field(const std::string& path, const Mesh& mesh, const StateField& field);

struct LoadedField {
  FieldShape shape;
  std::array<double, 3> length{1.0, 1.0, 1.0};
  StateField field;
};

LoadedField load_field(const std::string& path);

}  // namespace ndg

#endif
