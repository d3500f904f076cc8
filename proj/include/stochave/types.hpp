#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace stochave {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised for shape mismatches, out-of-range parameters and malformed input.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a derivative is requested where |.| is not differentiable
/// (smoothing parameter zero and a zero coordinate).
class NonsmoothPoint : public std::domain_error {
 public:
  explicit NonsmoothPoint(const std::string& what) : std::domain_error(what) {}
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  explicit UnsupportedDimension(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace stochave
