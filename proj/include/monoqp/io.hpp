#pragma once

// File formats.
//
// Map file: line 1 holds n in decimal, line 2 holds n space-separated
// decimals, the 1-based images of elements 1..n. A trailing newline is
// optional; lines starting with '#' are comments.
//
// Schema JSON:
//   {"components":[
//     {"cycle": m, "attachments": [{"offset": k, "tree": T}, ...]}
//   | {"chain": {"backward_infinite": b, "decorations": [{"index": k, "tree": T}, ...]}}
//   ]}
// with T = {"children": [T, ...], "infinite_tail": b}.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "monoqp/algebra.hpp"
#include "monoqp/schema.hpp"

namespace monoqp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Throws ParseError with the offending position on malformed input.
MonounaryAlgebra read_map(std::istream& in);
MonounaryAlgebra read_map_file(const std::string& path);
std::string write_map(const MonounaryAlgebra& a);

Schema read_schema(std::istream& in);
Schema read_schema_file(const std::string& path);
std::string write_schema(const Schema& s);

/// DOT digraph: one edge x -> step(x) per element, 1-based labels, cyclic
/// elements drawn as double circles.
std::string to_dot(const MonounaryAlgebra& a);

}  // namespace monoqp
