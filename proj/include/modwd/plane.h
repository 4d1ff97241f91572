// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_PLANE_H_
#define MODWD_PLANE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace modwd {

// Dense row-major 2-D grid. Spectrogram planes use rows = frames and
// columns = frequency bins.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  // Copy of column c, i.e. the temporal trajectory of one bin.
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(std::size_t c, std::span<const T> values) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  std::vector<T> &data() { return data_; }
  const std::vector<T> &data() const { return data_; }

  bool operator==(const Grid &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Plane = Grid<double>;

}  // namespace modwd

#endif  // MODWD_PLANE_H_
