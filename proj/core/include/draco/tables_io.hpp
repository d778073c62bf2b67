#pragma once

#include <string>

#include "draco/codes.hpp"

namespace draco {

// Binary cache for cyclic tables so repeated experiments skip the O(P^4)
// construction. Layout (little-endian): magic "DRCO1", u64 P, u64 s, then
// P*P row-major complex doubles (re, im) of the weight matrix.
void save_cyclic_tables(const CyclicTables& tables, const std::string& path);

// Rebuilds the cheap derived pieces (IDFT blocks, assignment, coefficients)
// from the cached parameters and weight matrix. Throws ConfigError on a
// malformed file.
CyclicTables load_cyclic_tables(const std::string& path);

}  // namespace draco
