#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rfdose {

struct Int3 {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Int3&, const Int3&) = default;
};

struct GridDims {
  int nx = 0, ny = 0, nz = 0;
  std::size_t count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(nz);
  }
  bool contains(int i, int j, int k) const {
    return i >= 0 && i < nx && j >= 0 && j < ny && k >= 0 && k < nz;
  }
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

// Dense 3D array, x-fastest storage. All grid payloads in the engine
// (tissue IDs, field components, SAR) use this layout.
template <typename T>
class Array3 {
 public:
  Array3() = default;
  Array3(GridDims dims, T fill = T{}) : dims_(dims), data_(dims.count(), fill) {}

  const GridDims& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims_.nx) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(dims_.ny) * static_cast<std::size_t>(k));
  }

  T& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  friend bool operator==(const Array3&, const Array3&) = default;

 private:
  GridDims dims_{};
  std::vector<T> data_;
};

// Voxel-count rounding used throughout: round halves up.
inline int round_half_up_cells(double length, double spacing) {
  return static_cast<int>(std::floor(length / spacing + 0.5));
}

}  // namespace rfdose
