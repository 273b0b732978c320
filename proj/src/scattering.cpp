#include "qmi/scattering.hpp"
#include "qmi/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <string>

namespace qmi {

double PhysicalParams::omega_c() const {
    return 2.0 * std::numbers::pi * omega_p * omega_p / omega_0;
}

bool PhysicalParams::weak_coupling(double length_scale) const {
    return omega_c() * length_scale < 0.1;
}

void validate(const PhysicalParams& params) {
    if (!(params.omega_0 > 0.0) || !(params.omega_p > 0.0)) {
        throw InvalidArgumentError("physical frequencies must be positive");
    }
}

SystemMatrix system_matrix(const KernelMatrix& g_self, double lambda) {
    if (!g_self.self_block) {
        throw InvalidArgumentError("system matrix requires a self block");
    }
    if (lambda < 0.0) {
        throw InvalidArgumentError("lambda must be non-negative");
    }
    SystemMatrix out;
    out.K = g_self.entries;
    const std::vector<double>& areas = g_self.row_mesh->areas;
    for (Eigen::Index i = 0; i < out.K.rows(); ++i) {
        out.K(i, i) += lambda * areas[static_cast<std::size_t>(i)];
    }
    out.lambda = lambda;
    out.mesh = g_self.row_mesh;
    return out;
}

double monopole_capacitance(const KernelMatrix& g_self, double lambda) {
    if (!g_self.self_block) {
        throw InvalidArgumentError("monopole capacitance requires a self block");
    }
    if (lambda < 0.0) {
        throw InvalidArgumentError("lambda must be non-negative");
    }
    // Work with the area-scaled form Khat = lambda I + D^{-1/2} G D^{-1/2},
    // which keeps the factorization well conditioned uniformly in lambda;
    // a^T K^{-1} a = ahat^T Khat^{-1} ahat with ahat_i = sqrt(area_i).
    const Eigen::Index n = g_self.entries.rows();
    const std::vector<double>& areas = g_self.row_mesh->areas;
    Eigen::VectorXd sqrt_a(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sqrt_a(i) = std::sqrt(areas[static_cast<std::size_t>(i)]);
    }
    Eigen::MatrixXd khat = g_self.entries;
    khat.array().colwise() /= sqrt_a.array();
    khat.array().rowwise() /= sqrt_a.transpose().array();
    khat.diagonal().array() += lambda;

    Eigen::LLT<Eigen::MatrixXd> llt(khat);
    if (llt.info() != Eigen::Success) {
        throw IllConditionedError("system matrix factorization failed", 0.0);
    }
    const double rcond = llt.rcond();
    if (rcond < 1e-14) {
        throw IllConditionedError(
            "system matrix numerically singular, rcond " + std::to_string(rcond),
            rcond);
    }
    const double bare = sqrt_a.dot(llt.solve(sqrt_a));
    return bare / (4.0 * std::numbers::pi);
}

double disc_capacitance_analytic(double radius, double lambda) {
    if (!(radius > 0.0)) {
        throw InvalidArgumentError("radius must be positive");
    }
    if (lambda < 0.0) {
        throw InvalidArgumentError("lambda must be non-negative");
    }
    return radius / (4.0 * lambda / radius + std::numbers::pi / 2.0);
}

} // namespace qmi
