#pragma once

#include <vector>

#include "warpgeo/rng.hpp"
#include "warpgeo/types.hpp"

namespace warpgeo::otsuki {

// A symmetric bilinear form beta: V x V -> W given by component matrices in
// coordinates, with inner products on both spaces.
struct SymmetricBilinearForm {
    int n1 = 0;  // dim V
    int n2 = 0;  // dim W
    std::vector<Mat> betas;  // n2 symmetric n1 x n1 matrices
    Mat inner_V;             // SPD n1 x n1
    Mat inner_W;             // SPD n2 x n2

    static SymmetricBilinearForm make(std::vector<Mat> betas, Mat inner_V, Mat inner_W);

    Vec eval(const Vec& v, const Vec& w) const;      // W components
    double w_norm2(const Vec& w_value) const;        // |.|_W^2
    double v_norm2(const Vec& v) const { return v.dot(inner_V * v); }
};

struct DefinitenessResult {
    bool definite = false;
    double min_norm = 0.0;  // min over the unit sphere of |beta(v,v)|_W
    Vec witness;            // minimizer (a near-asymptotic vector when not definite)
};

// Multi-start minimization of |beta(v,v)|_W over the unit sphere of V.
DefinitenessResult definiteness_check(const SymmetricBilinearForm& form, uint64_t seed = 7,
                                      int restarts = 48, double threshold = 1e-6);

struct OtsukiPair {
    Vec v1, v2;
    double residual = 0.0;  // |beta(v1,v1)-beta(v2,v2)|_W^2 + |beta(v1,v2)|_W^2
    int restarts_used = 0;
};

struct OtsukiOptions {
    uint64_t seed = 7;
    int restarts = 64;
    double residual_tol = 1e-12;
    double min_angle = 1e-3;  // reject nearly collinear candidate pairs
};

// Numerical construction of the pair guaranteed by the lemma: v1, v2 with
// equal diagonal values and vanishing cross term, scaled so |v1| >= |v2|
// with |v1| = 1. Requires n2 < n1 and a definite form.
OtsukiPair find_otsuki_pair(const SymmetricBilinearForm& form, const OtsukiOptions& opts = {});

}  // namespace warpgeo::otsuki
