#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arbo {

// Nodes are 1-based; 0 means "none".
using node_id = std::int32_t;
// Graph-local edge slot. In a parsed graph slot k holds original edge k.
using edge_id = std::int32_t;
// Payload id: 1..m are original (leaf) edges, larger ids are merged edges.
using payload_id = std::int32_t;

inline constexpr node_id no_node = 0;
inline constexpr edge_id no_edge = 0;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No arborescence exists: some node is unreachable from the root.
struct unreachable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed. Always a bug, never an input condition.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool ok, const char* what)
{
    if (!ok) throw invariant_error(what);
}

} // namespace arbo
