#pragma once

#include <cstddef>
#include <vector>

namespace qve {

/// Dense rank-4 tensor with equal extents, row-major.
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

  std::size_t extent() const noexcept { return n_; }

  double &operator()(std::size_t p, std::size_t q, std::size_t r,
                     std::size_t s) noexcept {
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }
  double operator()(std::size_t p, std::size_t q, std::size_t r,
                    std::size_t s) const noexcept {
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }

  const std::vector<double> &data() const noexcept { return data_; }

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

} // namespace qve
