#pragma once

#include "qmi/geometry.hpp"

#include <Eigen/Dense>

#include <memory>

namespace qmi {

/// Galerkin matrix of the static kernel 1/(4*pi*|x-y|) in the panel
/// indicator basis: entries(m,n) = integral over panel m x panel n.
struct KernelMatrix {
    Eigen::MatrixXd entries;
    std::shared_ptr<const TriangleMesh> row_mesh;
    std::shared_ptr<const TriangleMesh> col_mesh; // == row_mesh for self blocks
    bool self_block = false;
    /// Cross blocks only: some panel pair touched or intersected.  Entries
    /// are still finite; downstream consumers decide whether to reject.
    bool overlap_contact = false;
    int quad_order = 6;
};

/// Potential at p of a unit source density on t, kernel 1/(4*pi*r), p in the
/// panel plane.  Closed form, valid for any p including points on t.
double triangle_potential(const Triangle& t, Vec2 p);

/// One pair integral.  quad_order is the polynomial degree the regular
/// tensor rule must integrate exactly (4, 6, 8, ...); touching or close
/// pairs are routed to escalated rules or the analytic-inner path
/// automatically, chosen by distance-to-size ratios only.
double coulomb_entry(const Triangle& m, const Triangle& n, int quad_order);

/// Self-interaction block.  Symmetric by construction (upper triangle is
/// computed, then mirrored).  Throws AssemblyError on non-finite entries.
KernelMatrix assemble_self(const TriangleMesh& mesh, int quad_order,
                           int threads = 1);

/// Cross block between two bodies.  Sets overlap_contact when panels of the
/// two meshes touch or intersect.
KernelMatrix assemble_cross(const TriangleMesh& row, const TriangleMesh& col,
                            int quad_order, int threads = 1);

} // namespace qmi
