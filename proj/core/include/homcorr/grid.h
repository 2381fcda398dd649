// Copyright 2026 The homcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMCORR_GRID_H
#define HOMCORR_GRID_H

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace homcorr {

/// Uniform azimuthal sectors. Sector k is centered on 2 pi k / n and spans
/// half a sector width on either side, so sector 0 is centered on phi = 0.
class AngularGrid {
   public:
    explicit AngularGrid(int n) : n_(n) {
        if (n < 2) {
            throw std::invalid_argument("angular grid needs at least 2 sectors");
        }
    }

    int size() const {
        return n_;
    }
    double width() const {
        return 2 * std::numbers::pi / n_;
    }
    double center(int k) const {
        return width() * k;
    }
    std::vector<double> centers() const {
        std::vector<double> r(n_);
        for (int k = 0; k < n_; k++) {
            r[k] = center(k);
        }
        return r;
    }
    /// Sector containing azimuth phi (any real value).
    int sector_of(double phi) const {
        double t = phi / width() + 0.5;
        auto k = static_cast<long long>(std::floor(t));
        k %= n_;
        if (k < 0) {
            k += n_;
        }
        return static_cast<int>(k);
    }

    bool operator==(const AngularGrid &) const = default;

   private:
    int n_;
};

/// Dense row-major matrix.
template <typename T>
class Grid2D {
   public:
    Grid2D() = default;
    Grid2D(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    T &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    const std::vector<T> &data() const {
        return data_;
    }
    std::vector<T> &data() {
        return data_;
    }

    bool operator==(const Grid2D &) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

}  // namespace homcorr

#endif
