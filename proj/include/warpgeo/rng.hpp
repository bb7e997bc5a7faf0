#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "warpgeo/types.hpp"

namespace warpgeo {

// Counter-based splittable generator. Every draw is splitmix64(key ^ mix(counter)),
// so a stream is a pure function of (key, counter); child streams derive a new
// key from a label hash, which keeps sampling reproducible no matter in which
// order subsystems consume their streams. The algorithm is documented in the
// README so reports can be reproduced.
class Rng {
   public:
    explicit Rng(uint64_t key = 0) : key_(key), counter_(0) {}

    static uint64_t splitmix64(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static uint64_t hash_label(std::string_view label) {
        // FNV-1a, then one splitmix round for diffusion
        uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return splitmix64(h);
    }

    Rng child(std::string_view label) const {
        return Rng(splitmix64(key_ ^ hash_label(label)));
    }
    Rng child(uint64_t index) const {
        return Rng(splitmix64(key_ ^ splitmix64(index + 0x51b365ULL)));
    }

    uint64_t next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        // Box-Muller; one value per call keeps the stream stateless enough.
        double u1 = uniform01(), u2 = uniform01();
        u1 = std::max(u1, 1e-300);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec normal_vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Vec unit_vec(int n) {
        Vec v = normal_vec(n);
        double norm = v.norm();
        while (norm < 1e-12) {
            v = normal_vec(n);
            norm = v.norm();
        }
        return v / norm;
    }

    Vec point_in_box(const ChartDomain& box, double margin_frac = 0.0) {
        Vec p(box.dim);
        for (int i = 0; i < box.dim; ++i) {
            const auto [lo, hi] = box.bounds[i];
            const double m = margin_frac * (hi - lo);
            p[i] = uniform(lo + m, hi - m);
        }
        return p;
    }

    uint64_t key() const { return key_; }

   private:
    uint64_t key_;
    uint64_t counter_;
};

// R2 low-discrepancy sequence (additive recurrence on the generalized golden
// ratio), offset by a seeded start so different seeds explore shifted lattices.
class QuasiRandom {
   public:
    QuasiRandom(int dim, Rng seed_rng) : dim_(dim), alpha_(dim), state_(dim) {
        const double phi = plastic_constant(dim);
        double a = 1.0;
        for (int i = 0; i < dim; ++i) {
            a /= phi;
            alpha_[i] = a;
            state_[i] = seed_rng.uniform01();
        }
    }

    // Next point in the unit cube [0,1)^dim.
    Vec next() {
        for (int i = 0; i < dim_; ++i) {
            state_[i] += alpha_[i];
            state_[i] -= std::floor(state_[i]);
        }
        return state_;
    }

    Vec next_in_box(const ChartDomain& box, double margin_frac = 0.0) {
        Vec u = next();
        Vec p(box.dim);
        for (int i = 0; i < box.dim; ++i) {
            const auto [lo, hi] = box.bounds[i];
            const double m = margin_frac * (hi - lo);
            p[i] = lo + m + (hi - lo - 2 * m) * u[i];
        }
        return p;
    }

   private:
    static double plastic_constant(int d) {
        // unique real root > 1 of x^(d+1) = x + 1
        double x = 1.5;
        for (int it = 0; it < 64; ++it)
            x = std::pow(1.0 + x, 1.0 / (d + 1));
        return x;
    }
    int dim_;
    Vec alpha_;
    Vec state_;
};

}  // namespace warpgeo
