#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rigidity/errors.hpp"
#include "rigidity/rng.hpp"

namespace rigidity {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Tolerance policy. All rank and zero decisions are relative to the largest
// singular value or largest absolute entry of the matrix at hand, so the
// exact-arithmetic statements behind the construction survive floating point
// at any scale.
struct ToleranceProfile {
    double rank_rel_tol = 1e-9;  // singular value threshold, relative to sigma_max
    double zero_rel_tol = 1e-9;  // "is approximately zero", relative to the matrix scale
    double psd_rel_tol = 1e-9;   // admissible negative eigenvalue, relative to lambda_max
    double xi_min_rel = 1e-6;    // smallest admissible |xi_i| relative to max |xi_k|

    void validate() const {
        for (double t : {rank_rel_tol, zero_rel_tol, psd_rel_tol, xi_min_rel})
            if (!(t > 0.0 && t < 1.0)) throw InputError("tolerances must lie strictly between 0 and 1");
    }
};

inline void ensure_finite(const Matrix& m, const std::string& name) {
    if (!m.allFinite()) throw InputError(name + " contains non-finite entries");
}

// C(n, k), capped: returns cap + 1 as soon as the count exceeds cap.
inline long long binomial_capped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > cap) return cap + 1;
    }
    return static_cast<long long>(c);
}

// Lexicographic enumeration of k-subsets of {0..n-1}.
template <typename F>
void for_each_combination(int n, int k, F&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
        fn(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Count of singular values above rank_rel_tol * sigma_max (0 for the zero
// matrix). SVD is the single rank/null-space primitive throughout.
inline int numeric_rank(const Matrix& m, const ToleranceProfile& tol = {}) {
    if (m.size() == 0) throw InputError("numeric_rank: empty matrix");
    ensure_finite(m, "matrix");
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
    if (smax <= 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > tol.rank_rel_tol * smax) ++rank;
    return rank;
}

// Orthonormal basis N of {v : m v ~ 0}; max |m N| <= rank_rel_tol * sigma_max.
// A 0-column matrix signals a trivial null space.
inline Matrix null_space_basis(const Matrix& m, const ToleranceProfile& tol = {}) {
    if (m.size() == 0) throw InputError("null_space_basis: empty matrix");
    ensure_finite(m, "matrix");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
    int rank = 0;
    if (smax > 0.0)
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma[i] > tol.rank_rel_tol * smax) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

// Extreme eigenvalues of the symmetrized matrix (m + m^T)/2.
inline std::pair<double, double> symmetric_eigen_bounds(const Matrix& m) {
    if (m.size() == 0) throw InputError("symmetric_eigen_bounds: empty matrix");
    if (m.rows() != m.cols()) throw InputError("symmetric_eigen_bounds: matrix is not square");
    ensure_finite(m, "matrix");
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev[0], ev[ev.size() - 1]};
}

enum class ScanMode { exhaustive, sampled };

inline std::string to_string(ScanMode mode) { return mode == ScanMode::exhaustive ? "exhaustive" : "sampled"; }

constexpr long long kExhaustiveSubsetCap = 1'000'000;
constexpr int kDefaultSampleSize = 10'000;

// Exhaustive if C(n, k) fits under the cap, else sampled.
inline ScanMode auto_scan_mode(int n, int k) {
    return binomial_capped(n, k, kExhaustiveSubsetCap) <= kExhaustiveSubsetCap ? ScanMode::exhaustive
                                                                               : ScanMode::sampled;
}

// Result of scanning k x k row-submatrices of an n x k matrix for
// near-singularity. min_rel_sigma is the worst sigma_min / sigma_max seen, so
// callers can tell "barely regular" from "comfortably regular".
struct RegularityReport {
    ScanMode mode = ScanMode::exhaustive;
    long long subsets_tested = 0;
    double min_rel_sigma = 0.0;
    std::vector<int> worst_rows;  // 0-based row indices of the worst submatrix
    bool pass = false;
};

// Checks that every (exhaustive) or many (sampled) maximal square
// row-submatrices are nonsingular relative to rank_rel_tol. Exhaustive
// enumeration is lexicographic; sampling is seeded and deterministic.
inline RegularityReport maximal_submatrix_regularity(const Matrix& m, ScanMode mode,
                                                     int sample_size = kDefaultSampleSize,
                                                     std::uint64_t seed = 0,
                                                     const ToleranceProfile& tol = {}) {
    const int n = static_cast<int>(m.rows());
    const int k = static_cast<int>(m.cols());
    if (k < 1) throw InputError("submatrix regularity: matrix needs at least one column");
    if (k > n) throw InputError("submatrix regularity: more columns than rows");
    ensure_finite(m, "matrix");

    RegularityReport report;
    report.mode = mode;
    report.min_rel_sigma = std::numeric_limits<double>::infinity();

    const auto visit = [&](const std::vector<int>& rows) {
        Matrix sub(k, k);
        for (int i = 0; i < k; ++i) sub.row(i) = m.row(rows[static_cast<std::size_t>(i)]);
        Eigen::JacobiSVD<Matrix> svd(sub);
        const auto& sigma = svd.singularValues();
        const double smax = sigma[0];
        const double rel = smax > 0.0 ? sigma[sigma.size() - 1] / smax : 0.0;
        ++report.subsets_tested;
        if (rel < report.min_rel_sigma) {
            report.min_rel_sigma = rel;
            report.worst_rows = rows;
        }
    };

    if (mode == ScanMode::exhaustive) {
        if (binomial_capped(n, k, kExhaustiveSubsetCap) > kExhaustiveSubsetCap)
            throw InputError("submatrix regularity: C(" + std::to_string(n) + "," + std::to_string(k) +
                             ") exceeds the exhaustive cap of 10^6; use sampled mode");
        for_each_combination(n, k, visit);
    } else {
        if (sample_size < 1) throw InputError("submatrix regularity: sample_size must be positive");
        SeededRng rng(seed);
        for (int s = 0; s < sample_size; ++s) visit(rng.subset(n, k));
    }
    report.pass = report.min_rel_sigma > tol.rank_rel_tol;
    return report;
}

}  // namespace rigidity
