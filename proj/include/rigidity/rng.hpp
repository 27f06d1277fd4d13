#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "rigidity/errors.hpp"

namespace rigidity {

// Deterministic random source. Every draw is derived from the mt19937_64 bit
// stream through fixed, explicitly coded mappings (53-bit uniforms, Marsaglia
// polar Gaussians), so a given seed reproduces the same sequence on any
// conforming platform. Certificates built from a seed are reproducible.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via the polar method (rejection; no trig).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0, v = 0.0, s = 0.0;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Unbiased integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InputError("SeededRng::below: bound must be positive");
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x = 0;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    Eigen::VectorXd gaussian_vector(int dim) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = gaussian();
        return v;
    }

    // Uniform on the unit sphere: normalized Gaussian, redrawn in the
    // (measure-zero) event of a tiny norm.
    Eigen::VectorXd unit_vector(int dim) {
        for (;;) {
            Eigen::VectorXd v = gaussian_vector(dim);
            const double n = v.norm();
            if (n > 1e-12) return v / n;
        }
    }

    // Sorted k-subset of {0, ..., n-1}, uniform over subsets (Floyd's method).
    std::vector<int> subset(int n, int k) {
        if (k < 0 || k > n) throw InputError("SeededRng::subset: k out of range");
        std::set<int> chosen;
        for (int j = n - k; j < n; ++j) {
            const int t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        return {chosen.begin(), chosen.end()};
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rigidity
