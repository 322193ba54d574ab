#pragma once

#include <map>
#include <string>
#include <vector>

#include "tvdiam/model.hpp"

namespace tvdiam {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

class MissingRow : public Error {
 public:
  MissingRow(const std::string& node, const std::string& assignment)
      : Error("probability block for " + node + " is missing the row (" +
              assignment + ")") {}
};

enum class NetworkFormat { Bif, Json };

// A parsed network plus everything needed to write it back out faithfully:
// load warnings and the opaque `property` lines of each block.
struct NetworkDocument {
  NetworkFormat format = NetworkFormat::Bif;
  std::string name = "unknown";
  BayesNet net;
  std::vector<LoadWarning> warnings;

  std::vector<std::string> network_properties;
  std::map<std::string, std::vector<std::string>> variable_properties;
  std::map<std::string, std::vector<std::string>> probability_properties;
};

// Parses the BIF dialect:
//
//   network <name> { <property ...;>* }
//   variable X { type discrete [ k ] { l1, ..., lk }; }
//   probability ( child | p1, ..., pm ) { (c1, ..., cm) v1, ..., vn; ... }
//   probability ( root ) { table v1, ..., vn; }
//
// Explicit per-assignment rows may appear in any order; storage is reordered
// to the canonical mixed-radix convention (first declared parent most
// significant). `property ordinal true ;` inside a variable block marks the
// variable ordinal; all other property lines pass through untouched.
NetworkDocument parse_bif(const std::string& text, double row_tolerance = 1e-6);

// Canonical serialization; values are written with 12 significant digits.
std::string to_bif(const NetworkDocument& doc);

}  // namespace tvdiam
