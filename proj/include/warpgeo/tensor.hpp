#pragma once

#include <vector>

#include "warpgeo/types.hpp"

namespace warpgeo {

// Dense little rank-3 / rank-4 arrays over a single chart dimension.
// Dimensions here are tiny (<= 6), so flat storage is plenty.

class Tensor3 {
   public:
    explicit Tensor3(int n = 0) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}
    int dim() const { return n_; }
    double& operator()(int i, int j, int k) { return data_[idx(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[idx(i, j, k)]; }

   private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * n_ + j) * n_ + k;
    }
    int n_;
    std::vector<double> data_;
};

class Tensor4 {
   public:
    explicit Tensor4(int n = 0) : n_(n), data_(static_cast<size_t>(n) * n * n * n, 0.0) {}
    int dim() const { return n_; }
    double& operator()(int i, int j, int k, int l) { return data_[idx(i, j, k, l)]; }
    double operator()(int i, int j, int k, int l) const { return data_[idx(i, j, k, l)]; }

   private:
    size_t idx(int i, int j, int k, int l) const {
        return ((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l;
    }
    int n_;
    std::vector<double> data_;
};

}  // namespace warpgeo
