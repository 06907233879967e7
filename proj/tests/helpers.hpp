#pragma once

#include <initializer_list>
#include <optional>

#include "isored/error.hpp"
#include "isored/matrix.hpp"

namespace testing {

inline isored::DenseMatrix dense(std::initializer_list<std::initializer_list<double>> rows) {
  isored::DenseMatrix m(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline isored::StochasticMatrix stochastic(
    std::initializer_list<std::initializer_list<double>> rows) {
  return isored::StochasticMatrix::from_dense(dense(rows));
}

inline isored::StochasticMatrix example_a() {
  return stochastic({{0, 0.9, 0}, {0.5, 0, 1}, {0.5, 0.1, 0}});
}

inline isored::StochasticMatrix averaging(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return isored::StochasticMatrix::from_dense(
      isored::DenseMatrix::Constant(k, k, 1.0 / static_cast<double>(n)));
}

inline isored::StochasticMatrix identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return isored::StochasticMatrix::from_dense(isored::DenseMatrix::Identity(k, k));
}

template <class F>
std::optional<isored::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const isored::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

template <class F>
std::optional<isored::Error> caught(F&& f) {
  try {
    f();
  } catch (const isored::Error& e) {
    return e;
  }
  return std::nullopt;
}

}  // namespace testing
