#pragma once

#include <cstddef>
#include <vector>

namespace layersolve {

/// Strictly increasing nodes on [0, s_max] with nodes[0] == 0. Carries the
/// stretched coordinate s of the boundary-layer problems.
struct HalfLineGrid {
    std::vector<double> nodes;

    double s_max() const { return nodes.back(); }
    std::size_t size() const { return nodes.size(); }

    /// Index of the cell containing s (binary search).
    std::size_t locate(double s) const;

    /// Graded grid: spacing ds_fine where the solution still bends, growing
    /// geometrically once curvature has decayed.
    static HalfLineGrid graded(double s_max, double ds_fine = 3.2e-4, double s_fine = 8.0,
                               double growth = 1.02, double ds_max = 0.02);

    /// Uniform grid with n cells.
    static HalfLineGrid uniform(double s_max, std::size_t n_cells);
};

/// Symmetric boundary-refined mesh on [-1, 1]; endpoints exact, x = 0 is a
/// node, and nodes mirror exactly under negation.
struct Mesh {
    std::vector<double> nodes;

    std::size_t size() const { return nodes.size(); }

    /// Layer-resolving mesh for heat-addition parameter A: stretched-uniform
    /// spacing inside the boundary layers, x-uniform spacing in the interior.
    static Mesh boundary_refined(double A, std::size_t n_layer = 900, double h_interior = 1.0 / 1024);

    /// Same construction with every spacing halved (mesh-independence checks).
    static Mesh halved(const Mesh& m);
};

}  // namespace layersolve
