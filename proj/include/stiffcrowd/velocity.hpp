#pragma once

#include <Eigen/Core>

namespace stiffcrowd {

/// Sup norms of U and its first two derivatives over the bounding box.
struct VelocityBounds {
  double sup_u = 0.0;
  double sup_du = 0.0;
  double sup_d2u = 0.0;

  /// W^{2,inf} norm, taken as the sum of the three sup norms.
  double w2inf() const { return sup_u + sup_du + sup_d2u; }
};

/// Closed-form desired velocity on the line.
///
///   constant: U(x) = a
///   affine:   U(x) = a + b x,                  b <= 0
///   tanh:     U(x) = a - b tanh((x - x0) / w), b >= 0, w > 0
///
/// The tanh family is the bounded, smooth, decreasing profile. Every
/// derivative is analytic; nothing is differenced numerically.
class Velocity1D {
 public:
  enum class Family { Constant, Affine, Tanh };

  static Velocity1D constant(double u, double lo, double hi);
  static Velocity1D affine(double a, double b, double lo, double hi);
  static Velocity1D tanh_profile(double a, double b, double x0, double width, double lo, double hi);

  double eval(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  // In one dimension the divergence is U' and the Jacobian is the 1x1 matrix U'.
  double divergence(double x) const { return derivative(x); }
  double jacobian(double x) const { return derivative(x); }
  double divergence_gradient(double x) const { return second_derivative(x); }

  const VelocityBounds& bounds() const { return bounds_; }
  /// Largest alpha >= 0 with U' <= -alpha on the box.
  double contraction() const { return alpha_; }
  Family family() const { return family_; }
  double box_min() const { return lo_; }
  double box_max() const { return hi_; }

 private:
  Velocity1D(Family f, double a, double b, double x0, double w, double lo, double hi);

  Family family_;
  double a_, b_, x0_, w_;
  double lo_, hi_;
  VelocityBounds bounds_;
  double alpha_ = 0.0;
};

/// Closed-form desired velocity in the plane.
///
///   constant: U(x) = c
///   radial:   U(x) = c - lambda x,  lambda >= 0, so sym(DU) = -lambda I
class Velocity2D {
 public:
  enum class Family { Constant, Radial };

  static Velocity2D constant(const Eigen::Vector2d& c, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi);
  static Velocity2D radial(const Eigen::Vector2d& c, double lambda, const Eigen::Vector2d& lo,
                           const Eigen::Vector2d& hi);

  Eigen::Vector2d eval(const Eigen::Vector2d& x) const;
  Eigen::Matrix2d jacobian(const Eigen::Vector2d& x) const;
  double divergence(const Eigen::Vector2d& x) const;
  Eigen::Vector2d divergence_gradient(const Eigen::Vector2d& x) const;

  const VelocityBounds& bounds() const { return bounds_; }
  double contraction() const { return alpha_; }
  Family family() const { return family_; }

 private:
  Velocity2D(Family f, const Eigen::Vector2d& c, double lambda, const Eigen::Vector2d& lo,
             const Eigen::Vector2d& hi);

  Family family_;
  Eigen::Vector2d c_;
  double lambda_;
  Eigen::Vector2d lo_, hi_;
  VelocityBounds bounds_;
  double alpha_ = 0.0;
};

}  // namespace stiffcrowd
