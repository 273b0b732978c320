#pragma once

#include "qmi/geometry.hpp"
#include "qmi/kernel.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace qmi {

/// Which formula evaluates a free-energy difference.  Both are exactly equal
/// in exact arithmetic (block-determinant identity); computing both and
/// comparing is the pipeline's strongest self-test.
enum class Route { scattering, direct };

const char* route_name(Route route);

struct SolverConfig {
    int refinement = 2;        // mesh refinement level
    int quad_order = 6;        // panel quadrature order for assembly
    double lambda_rel_tol = 1e-4; // relative tolerance of the lambda integral
    int lambda_max_depth = 8;  // adaptive bisection depth of the integrator
    int threads = 1;           // assembly threads
    bool graded = false;       // grade rectangle meshes toward the facing edge
    double graded_ratio = 1.35; // geometric ratio of graded column widths
};

/// A body shape placed in the plane by its center.
struct PlacedBody {
    BodyShape shape;
    Vec2 center{0.0, 0.0};
};

/// Mesh a placed body.  When cfg.graded is set and the shape is a rectangle,
/// columns are graded geometrically toward the side facing x = facing_x,
/// which resolves the charge accumulation at small gaps.
TriangleMesh build_body_mesh(const PlacedBody& body, const SolverConfig& cfg,
                             double facing_x);

/// Free-energy difference of two disjoint bodies at coupling lambda,
/// scattering route: (norm) * 1/2 * sum_i log(1 - mu_i), with mu_i the
/// eigenvalues of K_A^{-1} G_AB K_B^{-1} G_BA.  Throws
/// PhysicalInconsistencyError if any mu_i >= 1 (impossible for disjoint
/// bodies; indicates overlapping geometry or a broken kernel block).
double delta_F_scattering(const KernelMatrix& g_aa, const KernelMatrix& g_bb,
                          const KernelMatrix& g_ab, double lambda);

/// Same quantity via log-determinants of the joint and single-body system
/// matrices.  Valid at lambda = 0 as well (the area terms cancel exactly in
/// the difference).  Throws AssemblyError if a factorization fails.
double delta_F_direct(const KernelMatrix& g_aa, const KernelMatrix& g_bb,
                      const KernelMatrix& g_ab, double lambda);

/// Sampled Delta F(lambda) along a grid.  Values are <= 0 and tend to 0 as
/// lambda grows (the coupling turns off).
struct FreeEnergyCurve {
    std::vector<double> lambda_grid;
    std::vector<double> values;
    Route route = Route::scattering;
    std::string bodies;
};

/// Integrated information quantity in units of omega_c (length units).
struct QmiResult {
    double value = 0.0;       // QMI / omega_c
    double error = 0.0;       // absolute quadrature error estimate
    double d = 0.0;           // center-to-center separation
    std::vector<std::size_t> panels; // per body
    int lambda_evals = 0;
    bool converged = false;
    Route route = Route::scattering;
    std::string bodies;
};

/// Two placed bodies with their kernel blocks assembled once; evaluating
/// Delta F at a given lambda then costs only factorizations.
class TwoBodySystem {
public:
    TwoBodySystem(const PlacedBody& a, const PlacedBody& b,
                  const SolverConfig& cfg);

    double delta_F(double lambda, Route route = Route::scattering) const;

    /// QMI/omega_c = -2 * integral of Delta F over lambda in [0, inf).
    QmiResult integrate(Route route = Route::scattering) const;

    FreeEnergyCurve curve(const std::vector<double>& lambda_grid,
                          Route route = Route::scattering) const;

    const TriangleMesh& mesh_a() const { return mesh_a_; }
    const TriangleMesh& mesh_b() const { return mesh_b_; }
    double center_distance() const { return d_; }

private:
    SolverConfig cfg_;
    TriangleMesh mesh_a_, mesh_b_;
    Eigen::MatrixXd ghat_aa_, ghat_bb_, ghat_ab_;
    double d_ = 0.0;
    std::string bodies_;
};

/// Convenience wrapper: build the system and integrate.
QmiResult mutual_information(const PlacedBody& a, const PlacedBody& b,
                             const SolverConfig& cfg);

/// One lambda sample of the strong-subadditivity comparison.  delta3_s is
/// the weight of configurations coupled to all three bodies (equal to the
/// inclusion-exclusion free energy combination, and non-negative);
/// delta_s_ac is the corresponding two-body weight for the outer pair.
struct SsaPoint {
    double lambda = 0.0;
    double delta3_s = 0.0;   // three-body coupling entropy, >= 0
    double delta_s_ac = 0.0; // outer-pair coupling entropy, >= 0
    bool holds = false;      // delta3_s <= delta_s_ac (with roundoff slack)
};

/// Three or more placed bodies with all kernel blocks assembled once;
/// free energies of arbitrary subsets come from log-determinants.
class MultiBodySystem {
public:
    MultiBodySystem(const std::vector<PlacedBody>& bodies,
                    const SolverConfig& cfg);

    std::size_t body_count() const { return meshes_.size(); }
    const TriangleMesh& mesh(std::size_t i) const { return meshes_[i]; }

    /// Delta F of the pair (i, j), direct route.
    double pair_delta_F(std::size_t i, std::size_t j, double lambda) const;

    /// Inclusion-exclusion free energy over bodies {0,1,2}:
    /// F_ABC - F_AB - F_AC - F_BC + F_A + F_B + F_C.  Non-negative: it is
    /// the weight of fluctuations coupled to all three bodies at once.
    /// Requires exactly 3 bodies.
    double triple_delta_F(double lambda) const;

    /// Evaluates delta3_s = triple_delta_F and delta_s_ac = -pair(0,2).
    SsaPoint ssa_point(double lambda) const;

private:
    double half_logdet(unsigned mask, double lambda) const;

    SolverConfig cfg_;
    std::vector<TriangleMesh> meshes_;
    std::vector<std::vector<Eigen::MatrixXd>> ghat_; // upper blocks [i][j-i]
};

/// I(A,B,C)/omega_c = 2 * integral of triple Delta F over lambda.
/// Non-negative, and <= I(A,C) always (strong subadditivity).
QmiResult tripartite_information(const PlacedBody& a, const PlacedBody& b,
                                 const PlacedBody& c, const SolverConfig& cfg);

std::vector<SsaPoint> ssa_pointwise_check(const PlacedBody& a,
                                          const PlacedBody& b,
                                          const PlacedBody& c,
                                          const std::vector<double>& lambda_grid,
                                          const SolverConfig& cfg);

} // namespace qmi
