#pragma once

#include <string>

#include "core/lattice.hpp"

namespace gridohm {

/// Parses a lattice-spec document and returns the canonical spec.
/// Document format (version 1):
///   {"format": 1, "dimension": 2, "sites": ["A","B"],
///    "bonds": [{"from":"A","to":"B","offset":[0,0],"resistance":1.0}, ...]}
/// `resistance` defaults to 1.0; unknown keys are ignored.
LatticeSpec lattice_from_json(const std::string& text);

LatticeSpec lattice_from_file(const std::string& path);

/// Canonical serialization: fixed key order and shortest round-trip number
/// formatting, so equal specs produce byte-identical documents.
std::string lattice_to_json(const LatticeSpec& spec);

/// Rounds to 12 significant digits (non-finite values pass through) so that
/// emitted JSON numbers are reproducible across runs.
double round12(double v);

}  // namespace gridohm
