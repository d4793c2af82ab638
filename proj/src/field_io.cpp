// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ndg/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "field dumps are little-endian; big-endian hosts need byte swaps");

namespace ndg {

void dump_field(const std::string& path, const Mesh& mesh, const StateField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const auto& s = field.shape();
  out << "ndgfield 1\n";
  out << "dim " << s.dim << "\n";
  out << "cells";
  for (int a = 0; a < s.dim; ++a) out << " " << s.cells[a];
  out << "\norder " << s.order << "\n";
  out << "nvar " << s.n_var << "\n";
  out << "length";
  for (int a = 0; a < s.dim; ++a) out << " " << mesh.length[a];
  out << "\ndata\n";
  out.write(reinterpret_cast<const char*>(field.data()),
            static_cast<std::streamsize>(field.size() * sizeof(double)));
  if (!out) throw std::runtime_error("short write to " + path);
}

LoadedField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "ndgfield 1") {
    throw std::runtime_error(path + ": not an ndgfield dump");
  }
  LoadedField result;
  while (std::getline(in, line)) {
    if (line == "data") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") {
      ls >> result.shape.dim;
    } else if (key == "cells") {
      for (int a = 0; a < result.shape.dim; ++a) ls >> result.shape.cells[a];
    } else if (key == "order") {
      ls >> result.shape.order;
    } else if (key == "nvar") {
      ls >> result.shape.n_var;
    } else if (key == "length") {
      for (int a = 0; a < result.shape.dim; ++a) ls >> result.length[a];
    } else {
      throw std::runtime_error(path + ": unknown header key '" + key + "'");
    }
    if (!ls) throw std::runtime_error(path + ": malformed header line '" + line + "'");
  }
  if (line != "data") throw std::runtime_error(path + ": missing data section");
  result.field = StateField(result.shape);
  in.read(reinterpret_cast<char*>(result.field.data()),
          static_cast<std::streamsize>(result.field.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(result.field.size() * sizeof(double))) {
    throw std::runtime_error(path + ": truncated payload");
  }
  return result;
}

}  // namespace ndg
