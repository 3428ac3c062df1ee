#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rsfp/linalg.hpp"

namespace rsfp {

// Seeded random source with explicit scalar recipes so that results are
// reproducible for a given seed independent of library distribution details.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform01() {
        // 53-bit mantissa in [0,1).
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        // Marsaglia polar method.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    Vec uniform_box(int dim, double radius) {
        Vec x(dim);
        for (double& v : x) v = uniform(-radius, radius);
        return x;
    }

    Vec unit_sphere(int dim) {
        Vec x(dim);
        double n = 0.0;
        do {
            for (double& v : x) v = normal();
            n = norm(x);
        } while (n < 1e-12);
        return scaled(x, 1.0 / n);
    }

    // Uniform point of the unit simplex (flat Dirichlet) via exponentials.
    Vec simplex(int k) {
        Vec w(k);
        double s = 0.0;
        for (double& v : w) {
            v = -std::log(1.0 - uniform01());
            s += v;
        }
        for (double& v : w) v /= s;
        return w;
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace rsfp
