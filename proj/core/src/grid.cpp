#include "layersolve/grid.hpp"

#include <algorithm>
#include <cmath>

#include "layersolve/errors.hpp"

namespace layersolve {

std::size_t HalfLineGrid::locate(double s) const {
    if (s < nodes.front() || s > nodes.back()) throw OutOfDomain("s outside half-line grid");
    auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    if (i == 0) return 0;
    if (i >= nodes.size()) return nodes.size() - 2;
    return i - 1;
}

HalfLineGrid HalfLineGrid::graded(double s_max, double ds_fine, double s_fine, double growth,
                                  double ds_max) {
    HalfLineGrid g;
    g.nodes.push_back(0.0);
    double s = 0.0, ds = ds_fine;
    while (s < s_max) {
        if (s >= s_fine) ds = std::min(ds * growth, ds_max);
        s += ds;
        if (s > s_max - 0.5 * ds) s = s_max;
        g.nodes.push_back(s);
    }
    return g;
}

HalfLineGrid HalfLineGrid::uniform(double s_max, std::size_t n_cells) {
    HalfLineGrid g;
    g.nodes.resize(n_cells + 1);
    for (std::size_t i = 0; i <= n_cells; ++i)
        g.nodes[i] = s_max * static_cast<double>(i) / static_cast<double>(n_cells);
    g.nodes[0] = 0.0;
    g.nodes[n_cells] = s_max;
    return g;
}

Mesh Mesh::boundary_refined(double A, std::size_t n_layer, double h_interior) {
    const double ell = std::pow(2.0 * A, -0.2);
    const double s_half = std::pow(2.0 * A, 0.2);
    const double sb = std::min(s_half, 14.0);
    const double ds = sb / static_cast<double>(n_layer);

    // left half: stretched-uniform through the layer, then x-uniform to 0
    std::vector<double> left;
    left.reserve(n_layer + 2048);
    for (std::size_t i = 0; i <= n_layer; ++i)
        left.push_back(-1.0 + ell * ds * static_cast<double>(i));
    double xb = left.back();
    if (xb < -1e-12) {
        const std::size_t m = static_cast<std::size_t>(std::ceil(-xb / h_interior));
        for (std::size_t i = 1; i <= m; ++i)
            left.push_back(xb + (-xb) * static_cast<double>(i) / static_cast<double>(m));
    }
    left.back() = 0.0;

    Mesh mesh;
    mesh.nodes.reserve(2 * left.size());
    for (std::size_t i = 0; i + 1 < left.size(); ++i) mesh.nodes.push_back(left[i]);
    mesh.nodes.push_back(0.0);
    for (std::size_t i = left.size() - 1; i-- > 0;) mesh.nodes.push_back(-left[i]);
    mesh.nodes.front() = -1.0;
    mesh.nodes.back() = 1.0;
    return mesh;
}

Mesh Mesh::halved(const Mesh& m) {
    Mesh out;
    out.nodes.reserve(2 * m.nodes.size());
    for (std::size_t i = 0; i + 1 < m.nodes.size(); ++i) {
        out.nodes.push_back(m.nodes[i]);
        out.nodes.push_back(0.5 * (m.nodes[i] + m.nodes[i + 1]));
    }
    out.nodes.push_back(m.nodes.back());
    return out;
}

}  // namespace layersolve
