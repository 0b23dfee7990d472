#include "hopf/grid.hpp"

#include <stdexcept>

namespace hopf {

GridField GridField::uniform(std::vector<double> lo, std::vector<double> hi,
                             std::vector<int> shape) {
    GridField g;
    g.N = static_cast<int>(shape.size());
    if (lo.size() != shape.size() || hi.size() != shape.size() || g.N < 1)
        throw std::invalid_argument("GridField: inconsistent dimensions");
    g.lo = std::move(lo);
    g.hi = std::move(hi);
    g.shape = std::move(shape);
    g.h.resize(static_cast<std::size_t>(g.N));
    std::size_t total = 1;
    for (int i = 0; i < g.N; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        if (g.shape[ii] < 2 || !(g.hi[ii] > g.lo[ii]))
            throw std::invalid_argument("GridField: bad axis");
        g.h[ii] = (g.hi[ii] - g.lo[ii]) / (g.shape[ii] - 1);
        total *= static_cast<std::size_t>(g.shape[ii]);
    }
    g.value.assign(total, 0.0);
    g.boundary.assign(total, 0);
    return g;
}

std::size_t GridField::stride(int axis) const {
    std::size_t s = 1;
    for (int i = axis + 1; i < N; ++i) s *= static_cast<std::size_t>(shape[static_cast<std::size_t>(i)]);
    return s;
}

std::size_t GridField::flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int i = 0; i < N; ++i)
        f = f * static_cast<std::size_t>(shape[static_cast<std::size_t>(i)]) +
            static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
    return f;
}

std::vector<int> GridField::unflat(std::size_t f) const {
    std::vector<int> idx(static_cast<std::size_t>(N));
    for (int i = N - 1; i >= 0; --i) {
        const auto ii = static_cast<std::size_t>(i);
        idx[ii] = static_cast<int>(f % static_cast<std::size_t>(shape[ii]));
        f /= static_cast<std::size_t>(shape[ii]);
    }
    return idx;
}

std::vector<double> GridField::coords(const std::vector<int>& idx) const {
    std::vector<double> x(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        x[ii] = lo[ii] + h[ii] * idx[ii];
    }
    return x;
}

bool GridField::on_edge(const std::vector<int>& idx) const {
    for (int i = 0; i < N; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        if (idx[ii] == 0 || idx[ii] == shape[ii] - 1) return true;
    }
    return false;
}

void GridField::mark_edges_boundary() {
    for (std::size_t f = 0; f < size(); ++f)
        if (on_edge(unflat(f))) boundary[f] = 1;
}

}  // namespace hopf
