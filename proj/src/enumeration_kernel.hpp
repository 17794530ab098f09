#pragma once
// Per-cone kernel shared by the parallel engine and the serial reference.

#include <cstdint>
#include <optional>

#include "billiards/enumeration.hpp"

namespace billiards::detail {

struct Beam {
    Vec2L lo;  // cone boundary directions, relative to the source
    Vec2L hi;
    TrianglePose pose;  // triangle the cone is inside
    VertexId u_label = VertexId::A;  // exit edge, u on the lo side
    VertexId w_label = VertexId::B;
    Vec2L u;
    Vec2L w;
    std::int64_t parent = -1;
    bool has_step = false;  // kite step taken on entering `pose`
    UnfoldStep step;
};

struct Hit {
    Vec2L point;
    VertexId label;
    TrianglePose pose;
    bool has_step;
    UnfoldStep step;
};

struct Expansion {
    std::optional<Hit> hit;
    Beam children[2];
    int count = 0;
};

Beam root_beam(const TriangleShape& tri, const VertexInterval& iv);
Expansion expand(const Beam& beam, const TriangleShape& tri, const VertexInterval& iv);
GeneralizedDiagonal make_diagonal(const Hit& hit, Combinatorics comb, int length, const VertexInterval& iv);
void sort_by_direction(std::vector<GeneralizedDiagonal>& diags);
void check_depth(int n_max);

}  // namespace billiards::detail
