#pragma once

#include "qmi/kernel.hpp"

#include <Eigen/Dense>

#include <memory>

namespace qmi {

/// Material parameters of the dispersive bodies.  The coupling frequency
/// omega_c is the single scale multiplying all reported information
/// quantities; everything upstream is computed per unit omega_c.
struct PhysicalParams {
    double omega_0 = 1.0; // resonant frequency
    double omega_p = 1.0; // plasma frequency

    double omega_c() const;

    /// Weak-coupling validity for a body of linear size L (c = 1 units).
    /// The lambda integral is extended to infinity under this condition.
    bool weak_coupling(double length_scale) const;
};

/// Throws InvalidArgumentError unless both frequencies are positive.
void validate(const PhysicalParams& params);

/// K(lambda) = lambda * diag(areas) + G_self.  Symmetric positive definite
/// for every lambda >= 0.
struct SystemMatrix {
    Eigen::MatrixXd K;
    double lambda = 0.0;
    std::shared_ptr<const TriangleMesh> mesh;
};

SystemMatrix system_matrix(const KernelMatrix& g_self, double lambda);

/// Total induced charge under a unit constant external potential, expressed
/// in the reduced (Gaussian) convention: a^T K(lambda)^{-1} a / (4 pi).
/// The 1/(4 pi) undoes the Coulomb constant baked into G, so the Dirichlet
/// limit for a disc of radius R is 2R/pi and the transparent limit is
/// R^2/(4 lambda), matching the closed-form disc expression below in both
/// regimes.  Throws IllConditionedError when the factorization reports a
/// reciprocal condition number below 1e-14.
double monopole_capacitance(const KernelMatrix& g_self, double lambda);

/// Closed-form monopole capacitance of a disc: R / (4 lambda / R + pi / 2).
/// Exact in the limits R/lambda >> 1 and R/lambda << 1; at intermediate
/// lambda it carries the residual of truncating the response at the
/// monopole, which the capacitance tests measure and report.
double disc_capacitance_analytic(double radius, double lambda);

} // namespace qmi
