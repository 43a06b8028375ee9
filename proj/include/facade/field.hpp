#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace facade {

// Node values on a structured ny x nx grid, stored row-major (row = y index).
class Field2D {
 public:
  Field2D() = default;
  Field2D(std::size_t nx, std::size_t ny, double value = 0.0)
      : nx_(nx), ny_(ny), data_(nx * ny, value) {}

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t j, std::size_t i) noexcept { return data_[i * nx_ + j]; }
  double operator()(std::size_t j, std::size_t i) const noexcept { return data_[i * nx_ + j]; }

  double* row(std::size_t i) noexcept { return data_.data() + i * nx_; }
  const double* row(std::size_t i) const noexcept { return data_.data() + i * nx_; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool same_shape(const Field2D& other) const noexcept {
    return nx_ == other.nx_ && ny_ == other.ny_;
  }

  void fill(double value) { data_.assign(data_.size(), value); }

  friend bool operator==(const Field2D&, const Field2D&) = default;

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<double> data_;
};

}  // namespace facade
