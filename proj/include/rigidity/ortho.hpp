#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "rigidity/errors.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/numeric.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

// Row norms of a representation are exact up to normalization roundoff.
constexpr double kUnitNormTol = 1e-12;

// General-position orthogonal representation of a graph in R^(n-r-1): row i
// of X is the vector for node i, rows of non-adjacent nodes are orthogonal,
// and every maximal row subset is linearly independent.
struct OrthogonalRepresentation {
    Graph g;
    int r = 0;
    Matrix X;                // n x (n-r-1)
    std::uint64_t seed = 0;  // seed of the invocation (not of the successful attempt)
    int retries_used = 0;
};

struct RepresentationReport {
    double max_nonedge_dot = 0.0;    // worst |<x_i, x_j>| over non-edges, relative to max row norm^2
    double max_row_norm_dev = 0.0;   // worst | ||x_i|| - 1 |
    RegularityReport regularity;
    bool orthogonality_pass = false;
    bool row_norm_pass = false;
    bool pass = false;
};

namespace detail {

// Orthonormal basis of the span of the given rows (d x rank). The span
// threshold is near machine precision, independent of the rank tolerance, so
// no numerically meaningful direction is dropped from the projector.
inline Matrix row_span_basis(const Matrix& rows) {
    Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
    int rank = 0;
    if (smax > 0.0)
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma[i] > 1e-12 * smax) ++rank;
    return svd.matrixV().leftCols(rank);
}

}  // namespace detail

inline RepresentationReport check_representation(const OrthogonalRepresentation& rep,
                                                 const ToleranceProfile& tol, ScanMode mode) {
    const int n = rep.g.node_count();
    const int d = n - rep.r - 1;
    if (rep.X.rows() != n || rep.X.cols() != d)
        throw InputError("representation shape mismatch: expected " + std::to_string(n) + "x" +
                         std::to_string(d) + ", got " + std::to_string(rep.X.rows()) + "x" +
                         std::to_string(rep.X.cols()));
    ensure_finite(rep.X, "X");

    RepresentationReport report;
    double max_sq_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double norm = rep.X.row(i).norm();
        max_sq_norm = std::max(max_sq_norm, norm * norm);
        report.max_row_norm_dev = std::max(report.max_row_norm_dev, std::abs(norm - 1.0));
    }
    double max_dot = 0.0;
    for (auto [i, j] : rep.g.non_edges())
        max_dot = std::max(max_dot, std::abs(rep.X.row(i - 1).dot(rep.X.row(j - 1))));
    report.max_nonedge_dot = max_sq_norm > 0.0 ? max_dot / max_sq_norm : max_dot;

    report.regularity = maximal_submatrix_regularity(rep.X, mode, kDefaultSampleSize, rep.seed, tol);
    report.orthogonality_pass = report.max_nonedge_dot <= tol.zero_rel_tol;
    report.row_norm_pass = report.max_row_norm_dev <= kUnitNormTol;
    report.pass = report.orthogonality_pass && report.row_norm_pass && report.regularity.pass;
    return report;
}

// Sequential randomized construction: x^1 is a random unit vector in
// R^(n-r-1); x^j is a random unit vector orthogonal to the span of the
// vectors of earlier non-neighbors of j. For an (r+1)-connected graph the
// result is in general position with probability 1; the subset-independence
// check guards the finite-precision outcome and failing attempts restart
// with seed+1, seed+2, ...
inline OrthogonalRepresentation build_orthogonal_representation(const Graph& g, int r,
                                                                std::uint64_t seed, int max_retries = 20,
                                                                const ToleranceProfile& tol = {}) {
    tol.validate();
    const int n = g.node_count();
    if (r < 1 || r > n - 2) throw InputError("dimension r must satisfy 1 <= r <= n-2");
    if (g.is_complete())
        throw HypothesisError("complete graph rejected: a framework requires an incomplete graph");
    for (int i = 1; i <= n; ++i)
        if (g.degree(i) < r + 1)
            throw HypothesisError("node " + std::to_string(i) + " has degree " + std::to_string(g.degree(i)) +
                                  " < r+1 = " + std::to_string(r + 1));
    if (max_retries < 0) throw InputError("max_retries must be nonnegative");

    const int d = n - r - 1;
    const ScanMode mode = auto_scan_mode(n, d);
    RepresentationReport last_report;

    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        SeededRng rng(seed + static_cast<std::uint64_t>(attempt));
        Matrix X(n, d);
        X.row(0) = rng.unit_vector(d).transpose();
        for (int j = 2; j <= n; ++j) {
            std::vector<int> prior;
            for (int i = 1; i < j; ++i)
                if (!g.has_edge(i, j)) prior.push_back(i);
            if (prior.empty()) {
                X.row(j - 1) = rng.unit_vector(d).transpose();
                continue;
            }
            Matrix rows(static_cast<Eigen::Index>(prior.size()), d);
            for (std::size_t t = 0; t < prior.size(); ++t) rows.row(static_cast<Eigen::Index>(t)) = X.row(prior[t] - 1);
            const Matrix basis = detail::row_span_basis(rows);
            if (basis.cols() >= d)
                throw NumericalError("orthogonality constraints fill R^" + std::to_string(d) +
                                     " at node " + std::to_string(j));
            bool placed = false;
            for (int draw = 0; draw < 64; ++draw) {
                Vector v = rng.gaussian_vector(d);
                v -= basis * (basis.transpose() * v);
                v -= basis * (basis.transpose() * v);  // second pass tightens the projection
                const double norm = v.norm();
                if (norm > 1e-12) {
                    X.row(j - 1) = v.transpose() / norm;
                    placed = true;
                    break;
                }
            }
            if (!placed)
                throw NumericalError("could not draw a nonzero vector orthogonal to the span at node " +
                                     std::to_string(j));
        }

        OrthogonalRepresentation rep{g, r, std::move(X), seed, attempt};
        last_report = check_representation(rep, tol, mode);
        if (last_report.pass) return rep;
    }

    std::string worst = "rows";
    for (int row : last_report.regularity.worst_rows) worst += " " + std::to_string(row + 1);
    throw NumericalError("independence check still failing after " + std::to_string(max_retries) +
                         " retries; worst submatrix (" + worst +
                         ") has relative sigma_min " + std::to_string(last_report.regularity.min_rel_sigma));
}

}  // namespace rigidity
