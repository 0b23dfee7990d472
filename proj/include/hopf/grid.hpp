#pragma once

#include <cstdint>
#include <vector>

#include "hopf/profiles.hpp"

namespace hopf {

// Axis-aligned lattice sampling of a scalar field.  boundary marks fixed
// nodes (Dirichlet data for the minimizer and masked nodes in residual
// fields).
struct GridField {
    int N = 2;
    std::vector<double> lo, hi;   // box corners
    std::vector<int> shape;       // nodes per axis (>= 2)
    std::vector<double> h;        // spacing per axis
    std::vector<double> value;
    std::vector<std::uint8_t> boundary;

    static GridField uniform(std::vector<double> lo, std::vector<double> hi,
                             std::vector<int> shape);

    std::size_t size() const { return value.size(); }
    std::size_t flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(std::size_t f) const;
    std::vector<double> coords(const std::vector<int>& idx) const;
    std::vector<double> coords(std::size_t f) const { return coords(unflat(f)); }
    bool on_edge(const std::vector<int>& idx) const;   // touches the box edge
    std::size_t stride(int axis) const;

    // marks every box-edge node as boundary
    void mark_edges_boundary();
};

}  // namespace hopf
