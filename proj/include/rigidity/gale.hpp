#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "rigidity/certificate.hpp"
#include "rigidity/connectivity.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/numeric.hpp"
#include "rigidity/ortho.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

// Gale matrix Z = Diag(xi) X together with the scaling vector. Every entry
// of xi is nonzero (relative to max |xi_k|), xi spans the e-direction of the
// null space of X^T, and Z inherits the submatrix regularity of X.
struct GaleData {
    Vector xi;
    Matrix Z;
};

// n x r configuration matrix; row i is the point for node i.
struct Configuration {
    Matrix P;

    int node_count() const { return static_cast<int>(P.rows()); }
    int dim() const { return static_cast<int>(P.cols()); }
};

// A vector xi with X^T xi = 0 and no (near-)zero entries, scaled so that
// max |xi_i| = 1. Random combinations of a null-space basis avoid the
// measure-zero zero-entry hyperplanes; entries below xi_min_rel trigger a
// redraw.
inline Vector nonzero_null_vector(const Matrix& X, std::uint64_t seed, const ToleranceProfile& tol = {}) {
    tol.validate();
    const int n = static_cast<int>(X.rows());
    const int d = static_cast<int>(X.cols());
    if (n < 2 || d < 1 || d >= n) throw InputError("nonzero_null_vector: X must be n x d with 1 <= d < n");
    ensure_finite(X, "X");
    const Matrix basis = null_space_basis(X.transpose(), tol);
    if (basis.cols() != n - d)
        throw NumericalError("null space of X^T has dimension " + std::to_string(basis.cols()) +
                             ", expected " + std::to_string(n - d) + "; X is not a valid representation");
    SeededRng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Vector xi = basis * rng.gaussian_vector(static_cast<int>(basis.cols()));
        const double max_abs = xi.cwiseAbs().maxCoeff();
        if (max_abs <= 0.0) continue;
        xi /= max_abs;
        if (xi.cwiseAbs().minCoeff() >= tol.xi_min_rel) return xi;
    }
    throw NumericalError("could not draw a null vector with all entries above xi_min_rel in 100 attempts");
}

inline GaleData gale_from_representation(const Matrix& X, const Vector& xi, const ToleranceProfile& tol = {}) {
    tol.validate();
    const int n = static_cast<int>(X.rows());
    if (xi.size() != n) throw InputError("gale_from_representation: xi length must match rows of X");
    ensure_finite(X, "X");
    if (!xi.allFinite()) throw InputError("xi contains non-finite entries");
    const double max_abs = xi.cwiseAbs().maxCoeff();
    if (max_abs <= 0.0 || xi.cwiseAbs().minCoeff() < tol.xi_min_rel * max_abs)
        throw InputError("xi has a (near-)zero entry; all scalings must be nonzero");

    Eigen::JacobiSVD<Matrix> svd(X);
    const double sigma_max = svd.singularValues()[0];
    const double bound = tol.rank_rel_tol * sigma_max * max_abs * n;
    if ((X.transpose() * xi).cwiseAbs().maxCoeff() > bound)
        throw NumericalError("xi is not in the null space of X^T");

    GaleData gd{xi, xi.asDiagonal() * X};
    // Z^T e = X^T xi by construction; re-verify on the materialized Z anyway.
    if ((gd.Z.transpose() * Vector::Ones(n)).cwiseAbs().maxCoeff() > bound)
        throw NumericalError("Gale matrix violates Z^T e = 0");
    return gd;
}

// Configuration whose Gale matrix is Z: the columns of P form an orthonormal
// basis of the null space of [Z^T; e^T].
inline Configuration configuration_from_gale(const GaleData& gd, const ToleranceProfile& tol = {}) {
    tol.validate();
    const int n = static_cast<int>(gd.Z.rows());
    const int d = static_cast<int>(gd.Z.cols());
    if (n < 2 || d < 1 || d > n - 2) throw InputError("configuration_from_gale: Z must be n x d with 1 <= d <= n-2");
    ensure_finite(gd.Z, "Z");
    const int r = n - d - 1;
    Matrix stack(d + 1, n);
    stack.topRows(d) = gd.Z.transpose();
    stack.row(d) = Eigen::RowVectorXd::Ones(n);
    const Matrix P = null_space_basis(stack, tol);
    if (P.cols() != r)
        throw NumericalError("null space of [Z^T; e^T] has dimension " + std::to_string(P.cols()) +
                             ", expected r = " + std::to_string(r) + "; Gale data is broken");
    return Configuration{P};
}

// Stress matrix Omega = Z Z^T: positive semidefinite of rank n-r-1 by
// construction, with Omega_ij = xi_i xi_j <x^i, x^j> = 0 on non-edges.
// Computed as a symmetric rank update so Omega is exactly symmetric.
inline Matrix stress_from_gale(const GaleData& gd) {
    const int n = static_cast<int>(gd.Z.rows());
    ensure_finite(gd.Z, "Z");
    Matrix omega = Matrix::Zero(n, n);
    omega.selfadjointView<Eigen::Lower>().rankUpdate(gd.Z);
    omega.triangularView<Eigen::StrictlyUpper>() = omega.transpose();
    return omega;
}

struct ConstructionResult {
    RigidityCertificate certificate;
    int retries_used = 0;
    VerificationReport report;
};

// Full constructive pipeline: orthogonal representation -> nonzero null
// vector -> Gale matrix -> configuration -> stress matrix, packaged as a
// certificate. Fail-closed: the certificate is verified before being
// returned, so a returned certificate has already passed the sufficiency
// checklist.
inline ConstructionResult construct_universally_rigid_framework(
    const Graph& g, int r, std::uint64_t seed, int max_retries = 20, const ToleranceProfile& tol = {},
    std::optional<ScanMode> mode = std::nullopt) {
    tol.validate();
    const int n = g.node_count();
    if (r < 1 || r > n - 2) throw InputError("dimension r must satisfy 1 <= r <= n-2");
    if (g.is_complete())
        throw HypothesisError("complete graph rejected: a framework requires an incomplete graph");

    const int kappa = vertex_connectivity(g);
    if (kappa < r + 1) {
        Separator sep = min_separator(g);
        throw ConnectivityError("vertex connectivity " + std::to_string(kappa) + " < r+1 = " +
                                    std::to_string(r + 1) + "; separator " + to_string(sep.nodes) +
                                    " splits " + to_string(sep.part1) + " | " + to_string(sep.part2),
                                kappa, std::move(sep));
    }

    const OrthogonalRepresentation rep = build_orthogonal_representation(g, r, seed, max_retries, tol);
    const Vector xi = nonzero_null_vector(rep.X, seed, tol);
    const GaleData gd = gale_from_representation(rep.X, xi, tol);
    const Configuration conf = configuration_from_gale(gd, tol);
    Matrix omega = stress_from_gale(gd);

    RigidityCertificate cert{kCertificateVersion, g,  r,        seed, rep.X,
                             gd.Z,                conf.P, std::move(omega), gd.xi, tol};
    const ScanMode scan = mode.value_or(auto_scan_mode(n, n - r - 1));
    VerificationReport report = verify_certificate(cert, scan);
    if (!report.overall) {
        std::string failing;
        for (const auto& c : report.checks)
            if (!c.pass) failing += (failing.empty() ? "" : ", ") + c.name;
        throw NumericalError("constructed certificate failed verification (stage verify): " + failing);
    }
    return ConstructionResult{std::move(cert), rep.retries_used, std::move(report)};
}

}  // namespace rigidity
