#pragma once

#include <string>

#include "tvdiam/bif.hpp"

namespace tvdiam {

// Canonical JSON network schema ("schema": "tvdiam/1"): variables with level
// lists and ordinal flags, edges as name pairs, CPTs as row-major arrays.
// This is the bit-stable format golden tests anchor on.
NetworkDocument parse_network_json(const std::string& text,
                                   double row_tolerance = 1e-6);

std::string to_network_json(const NetworkDocument& doc);

// Reads a network from a file, dispatching on extension (.json vs anything
// else) with a content sniff as fallback.
NetworkDocument load_network_file(const std::string& path,
                                  double row_tolerance = 1e-6);

}  // namespace tvdiam
