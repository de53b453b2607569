#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <vector>

namespace pathfree::detail {

struct Records {
  std::optional<std::uint64_t> declared_vertex_count;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> line_numbers;
};

/// Reads whitespace-separated rows of exactly `fields` nonnegative integers.
/// '#' starts a comment; a comment of the form "# n=<count>" declares the
/// vertex count. Throws ParseError.
Records read_records(std::istream& in, std::size_t fields);

}  // namespace pathfree::detail
