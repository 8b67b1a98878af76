#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mmnn {

// Dense row-major 2D grid.
template <typename T>
class Grid {
  public:
    Grid() = default;
    Grid(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows <= 0 || cols <= 0) {
            throw std::invalid_argument("Grid: dimensions must be positive");
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    T& at(int r, int c) {
        check(r, c);
        return (*this)(r, c);
    }
    const T& at(int r, int c) const {
        check(r, c);
        return (*this)(r, c);
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Grid&) const = default;

  private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
            throw std::out_of_range("Grid: index out of range");
        }
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

// MNIST frame: 8-bit pixel intensities.
using Image = Grid<std::uint8_t>;

// Preprocessed output currents in mA.
using CurrentMap = Grid<double>;

}  // namespace mmnn
