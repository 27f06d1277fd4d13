#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "rigidity/errors.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/numeric.hpp"

namespace rigidity {

constexpr const char* kCertificateVersion = "1";

// Everything needed to re-verify universal rigidity of the constructed
// framework independently: the graph, the orthogonal representation X, the
// scaling xi, the Gale matrix Z = Diag(xi) X, the configuration P, the
// stress matrix Omega = Z Z^T, plus seed and tolerances.
struct RigidityCertificate {
    std::string version = kCertificateVersion;
    Graph g;
    int r = 0;
    std::uint64_t seed = 0;
    Matrix X;      // n x (n-r-1)
    Matrix Z;      // n x (n-r-1)
    Matrix P;      // n x r
    Matrix Omega;  // n x n, symmetric
    Vector xi;     // length n
    ToleranceProfile tolerances;
};

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    RegularityReport regularity;  // detail behind the general_position check
    ScanMode mode = ScanMode::exhaustive;
    bool overall = false;

    const CheckRecord* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    bool passed(const std::string& name) const {
        const CheckRecord* c = find(name);
        if (!c) throw InputError("no verification check named \"" + name + "\"");
        return c->pass;
    }
};

inline void validate_shapes(const RigidityCertificate& cert) {
    const int n = cert.g.node_count();
    const int d = n - cert.r - 1;
    if (cert.r < 1 || cert.r > n - 2) throw InputError("certificate dimension r out of range 1..n-2");
    const auto expect = [&](const Matrix& m, int rows, int cols, const std::string& name) {
        if (m.rows() != rows || m.cols() != cols)
            throw InputError("certificate matrix " + name + " must be " + std::to_string(rows) + "x" +
                             std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
        ensure_finite(m, name);
    };
    expect(cert.X, n, d, "X");
    expect(cert.Z, n, d, "Z");
    expect(cert.P, n, cert.r, "P");
    expect(cert.Omega, n, n, "Omega");
    if (cert.xi.size() != n) throw InputError("certificate xi must have length n");
    if (!cert.xi.allFinite()) throw InputError("xi contains non-finite entries");
    cert.tolerances.validate();
}

// Worst per-node equilibrium violation of the stress recovered from Omega:
// max_i || sum_{j: {i,j} edge} omega_ij (p^i - p^j) || with omega_ij =
// -Omega_ij, normalized by max|Omega| * max||p^i||. Recomputed straight from
// the stress definition over the edge set, independent of the matrix
// identities the verifier also checks.
inline double equilibrium_residual(const Graph& g, const Matrix& P, const Matrix& Omega) {
    const int n = g.node_count();
    if (P.rows() != n || Omega.rows() != n || Omega.cols() != n)
        throw InputError("equilibrium_residual: shape mismatch");
    ensure_finite(P, "P");
    ensure_finite(Omega, "Omega");
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        Vector sum = Vector::Zero(P.cols());
        for (int j : g.neighbors(i)) {
            const double omega_ij = -Omega(i - 1, j - 1);
            sum += omega_ij * (P.row(i - 1) - P.row(j - 1)).transpose();
        }
        worst = std::max(worst, sum.norm());
    }
    const double scale = Omega.cwiseAbs().maxCoeff() * P.rowwise().norm().maxCoeff();
    return scale > 0.0 ? worst / scale : worst;
}

// Runs the full sufficiency checklist on a certificate: Omega must be a
// positive semidefinite stress matrix of rank n-r-1 with the complement zero
// pattern, and the configuration must be in general position (checked on Z).
// Mathematical failures are report entries, never exceptions; a failing
// report means "certificate invalid", not "framework not universally rigid".
inline VerificationReport verify_certificate(const RigidityCertificate& cert,
                                             ScanMode mode) {
    validate_shapes(cert);
    const int n = cert.g.node_count();
    const ToleranceProfile& tol = cert.tolerances;
    const Matrix& O = cert.Omega;
    const double omega_scale = std::max(O.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const double p_scale = std::max(cert.P.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const double z_scale = std::max(cert.Z.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

    VerificationReport report;
    report.mode = mode;
    const auto residual = [&](const std::string& name, double measured, double threshold) {
        report.checks.push_back({name, measured, threshold, measured <= threshold});
    };

    residual("omega_symmetry", (O - O.transpose()).cwiseAbs().maxCoeff() / omega_scale, tol.zero_rel_tol);

    double nonedge_max = 0.0;
    for (auto [i, j] : cert.g.non_edges())
        nonedge_max = std::max(nonedge_max, std::abs(O(i - 1, j - 1)));
    residual("omega_nonedge_zero", nonedge_max / omega_scale, tol.zero_rel_tol);

    const Vector ones = Vector::Ones(n);
    residual("omega_kernel_e", (O * ones).cwiseAbs().maxCoeff() / (n * omega_scale), tol.zero_rel_tol);
    residual("omega_kernel_P", (O * cert.P).cwiseAbs().maxCoeff() / (n * omega_scale * p_scale), tol.zero_rel_tol);

    // Diagonal consistency of the stress-matrix definition, entrywise over
    // the edge set: Omega_ii must equal the sum of omega_ik = -Omega_ik over
    // incident edges.
    double diag_dev = 0.0;
    for (int i = 1; i <= n; ++i) {
        double edge_sum = 0.0;
        for (int j : cert.g.neighbors(i)) edge_sum += -O(i - 1, j - 1);
        diag_dev = std::max(diag_dev, std::abs(O(i - 1, i - 1) - edge_sum));
    }
    residual("omega_diagonal_consistency", diag_dev / (n * omega_scale), tol.zero_rel_tol);

    const auto [lambda_min, lambda_max] = symmetric_eigen_bounds(O);
    const double psd_floor = -tol.psd_rel_tol * std::abs(lambda_max);
    report.checks.push_back({"omega_psd", lambda_min, psd_floor, lambda_min >= psd_floor});

    const int rank = numeric_rank(O, tol);
    report.checks.push_back({"omega_rank", static_cast<double>(rank), static_cast<double>(n - cert.r - 1),
                             rank == n - cert.r - 1});

    report.regularity = maximal_submatrix_regularity(cert.Z, mode, kDefaultSampleSize, cert.seed, tol);
    report.checks.push_back({"general_position", report.regularity.min_rel_sigma, tol.rank_rel_tol,
                             report.regularity.pass});

    residual("gale_kernel_e", (cert.Z.transpose() * ones).cwiseAbs().maxCoeff() / (n * z_scale), tol.zero_rel_tol);
    residual("gale_kernel_P", (cert.Z.transpose() * cert.P).cwiseAbs().maxCoeff() / (n * z_scale * p_scale),
             tol.zero_rel_tol);
    residual("gale_scaling", (cert.Z - cert.xi.asDiagonal() * cert.X).cwiseAbs().maxCoeff() / z_scale,
             tol.zero_rel_tol);

    residual("equilibrium_residual", equilibrium_residual(cert.g, cert.P, cert.Omega), tol.zero_rel_tol);

    report.overall = true;
    for (const auto& c : report.checks) report.overall = report.overall && c.pass;
    return report;
}

inline VerificationReport verify_certificate(const RigidityCertificate& cert) {
    const int n = cert.g.node_count();
    return verify_certificate(cert, auto_scan_mode(n, n - cert.r - 1));
}

// --- JSON serialization ---------------------------------------------------
//
// Schema (version "1", keys serialized in nlohmann's sorted order):
//   version: "1"; n, r, seed: integers;
//   edges: array of sorted 2-arrays, sorted lexicographically;
//   tolerances: object of the four tolerance reals;
//   xi: array of n reals;
//   X, Z, P, Omega: {rows, cols, data} with data in row-major order.
// Reals round-trip exactly (shortest round-trip decimal form).

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(i, c));
    j["data"] = std::move(data);
    return j;
}

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError("missing field \"" + key + "\"");
    return *it;
}

inline double finite_number(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError("field \"" + where + "\" must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError("non-finite number in \"" + where + "\"");
    return v;
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& name) {
    if (!j.is_object()) throw SchemaError("field \"" + name + "\" must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "rows" && key != "cols" && key != "data")
            throw SchemaError("unknown key \"" + key + "\" in \"" + name + "\"");
    const auto& jr = require_field(j, "rows");
    const auto& jc = require_field(j, "cols");
    const auto& jd = require_field(j, "data");
    if (!jr.is_number_integer() || !jc.is_number_integer())
        throw SchemaError("\"" + name + ".rows\" and \"" + name + ".cols\" must be integers");
    const auto rows = jr.get<long long>();
    const auto cols = jc.get<long long>();
    if (rows < 0 || cols < 0) throw SchemaError("\"" + name + "\" has negative dimensions");
    if (!jd.is_array() || static_cast<long long>(jd.size()) != rows * cols)
        throw SchemaError("\"" + name + ".data\" must hold rows*cols numbers");
    Matrix m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = finite_number(jd[idx++], name + ".data");
    return m;
}

}  // namespace detail

inline std::string serialize(const RigidityCertificate& cert) {
    validate_shapes(cert);
    if (cert.version != kCertificateVersion)
        throw SchemaError("cannot serialize certificate version \"" + cert.version + "\"");
    nlohmann::json j;
    j["version"] = cert.version;
    j["n"] = cert.g.node_count();
    j["r"] = cert.r;
    j["seed"] = cert.seed;
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : cert.g.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    j["tolerances"] = {{"rank_rel_tol", cert.tolerances.rank_rel_tol},
                       {"zero_rel_tol", cert.tolerances.zero_rel_tol},
                       {"psd_rel_tol", cert.tolerances.psd_rel_tol},
                       {"xi_min_rel", cert.tolerances.xi_min_rel}};
    j["xi"] = std::vector<double>(cert.xi.data(), cert.xi.data() + cert.xi.size());
    j["X"] = detail::matrix_to_json(cert.X);
    j["Z"] = detail::matrix_to_json(cert.Z);
    j["P"] = detail::matrix_to_json(cert.P);
    j["Omega"] = detail::matrix_to_json(cert.Omega);
    return j.dump(2) + "\n";
}

inline RigidityCertificate deserialize(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("certificate stream is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("certificate stream must be a JSON object");
    static const std::vector<std::string> kKeys = {"version", "n", "r", "seed", "edges",
                                                   "tolerances", "xi", "X", "Z", "P", "Omega"};
    for (const auto& [key, value] : j.items())
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw SchemaError("unknown field \"" + key + "\"");
    for (const auto& key : kKeys) detail::require_field(j, key);

    if (!j["version"].is_string()) throw SchemaError("field \"version\" must be a string");
    const auto version = j["version"].get<std::string>();
    if (version != kCertificateVersion)
        throw SchemaError("unsupported certificate version \"" + version + "\" (expected \"" +
                          kCertificateVersion + "\")");
    if (!j["n"].is_number_integer() || !j["r"].is_number_integer() || !j["seed"].is_number_integer())
        throw SchemaError("fields \"n\", \"r\", \"seed\" must be integers");
    const int n = j["n"].get<int>();
    const int r = j["r"].get<int>();
    if (n < 1) throw SchemaError("field \"n\" must be positive");
    const auto seed = j["seed"].get<std::uint64_t>();

    if (!j["edges"].is_array()) throw SchemaError("field \"edges\" must be an array");
    std::vector<std::pair<int, int>> edges;
    std::pair<int, int> prev{0, 0};
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw SchemaError("each edge must be a 2-array of integers");
        const std::pair<int, int> cur{e[0].get<int>(), e[1].get<int>()};
        if (cur.first >= cur.second) throw SchemaError("edges must be sorted pairs [i, j] with i < j");
        if (!(prev < cur)) throw SchemaError("edge array must be strictly increasing lexicographically");
        prev = cur;
        edges.push_back(cur);
    }

    const auto& jt = detail::require_field(j, "tolerances");
    if (!jt.is_object()) throw SchemaError("field \"tolerances\" must be an object");
    for (const auto& [key, value] : jt.items())
        if (key != "rank_rel_tol" && key != "zero_rel_tol" && key != "psd_rel_tol" && key != "xi_min_rel")
            throw SchemaError("unknown key \"" + key + "\" in \"tolerances\"");
    ToleranceProfile tol;
    tol.rank_rel_tol = detail::finite_number(detail::require_field(jt, "rank_rel_tol"), "tolerances.rank_rel_tol");
    tol.zero_rel_tol = detail::finite_number(detail::require_field(jt, "zero_rel_tol"), "tolerances.zero_rel_tol");
    tol.psd_rel_tol = detail::finite_number(detail::require_field(jt, "psd_rel_tol"), "tolerances.psd_rel_tol");
    tol.xi_min_rel = detail::finite_number(detail::require_field(jt, "xi_min_rel"), "tolerances.xi_min_rel");

    const auto& jxi = j["xi"];
    if (!jxi.is_array() || static_cast<int>(jxi.size()) != n)
        throw SchemaError("field \"xi\" must be an array of n numbers");
    Vector xi(n);
    for (int i = 0; i < n; ++i) xi[i] = detail::finite_number(jxi[static_cast<std::size_t>(i)], "xi");

    try {
        RigidityCertificate cert{version,
                                 Graph(n, std::move(edges)),
                                 r,
                                 seed,
                                 detail::matrix_from_json(j["X"], "X"),
                                 detail::matrix_from_json(j["Z"], "Z"),
                                 detail::matrix_from_json(j["P"], "P"),
                                 detail::matrix_from_json(j["Omega"], "Omega"),
                                 std::move(xi),
                                 tol};
        validate_shapes(cert);
        return cert;
    } catch (const SchemaError&) {
        throw;
    } catch (const InputError& e) {
        throw SchemaError(e.what());
    }
}

}  // namespace rigidity
