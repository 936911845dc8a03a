#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "obsel/digraph.hpp"

namespace obsel {

// Syntax error in an instance document, anchored at a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parses the JSON instance format:
//   {"n": int, "edges": [[from,to],...], "m": int,
//    "costs": [[number|null, ...], ...], "labels": [string,...]?}
// Indices are 1-based; null marks a non-realizable sensor/state pair.
Instance load_system(std::string_view text);
Instance load_system_file(const std::filesystem::path& path);

// Canonical serialization (edges sorted, one cost row per line). Parsing the
// result with load_system gives back an identical instance.
std::string dump_system(const Instance& instance);

// FNV-1a over the canonical serialization.
std::uint64_t instance_digest(const Instance& instance);

void check_dimensions(const StructuredSystem& system, const CostMatrix& costs);

}  // namespace obsel
