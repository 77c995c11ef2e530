#include "stiffcrowd/velocity.hpp"

#include <algorithm>
#include <cmath>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

namespace {

void check_box(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo))
    throw Error(ErrorKind::InvalidArgument, "velocity bounding box must be finite and nonempty");
}

// |sech^2(s) tanh(s)| on [s0, s1]; the peak sits at tanh(s) = +-1/sqrt(3).
double sup_sech2_tanh(double s0, double s1) {
  auto g = [](double s) {
    const double sech = 1.0 / std::cosh(s);
    return std::abs(sech * sech * std::tanh(s));
  };
  double best = std::max(g(s0), g(s1));
  const double peak = std::atanh(1.0 / std::sqrt(3.0));
  for (double s : {peak, -peak})
    if (s > s0 && s < s1) best = std::max(best, g(s));
  return best;
}

}  // namespace

Velocity1D::Velocity1D(Family f, double a, double b, double x0, double w, double lo, double hi)
    : family_(f), a_(a), b_(b), x0_(x0), w_(w), lo_(lo), hi_(hi) {
  check_box(lo, hi);
  switch (family_) {
    case Family::Constant:
      bounds_ = {std::abs(a_), 0.0, 0.0};
      alpha_ = 0.0;
      break;
    case Family::Affine:
      bounds_ = {std::max(std::abs(eval(lo)), std::abs(eval(hi))), std::abs(b_), 0.0};
      alpha_ = -b_;
      break;
    case Family::Tanh: {
      const double s0 = (lo - x0_) / w_;
      const double s1 = (hi - x0_) / w_;
      const double s_near = std::clamp(0.0, s0, s1);
      const double sech = 1.0 / std::cosh(s_near);
      bounds_.sup_u = std::max(std::abs(eval(lo)), std::abs(eval(hi)));
      bounds_.sup_du = b_ / w_ * sech * sech;
      bounds_.sup_d2u = 2.0 * b_ / (w_ * w_) * sup_sech2_tanh(s0, s1);
      // U' is least negative at the box end farthest from x0.
      const double far = std::abs(s0) > std::abs(s1) ? lo : hi;
      alpha_ = -derivative(far);
      break;
    }
  }
}

Velocity1D Velocity1D::constant(double u, double lo, double hi) {
  if (!std::isfinite(u)) throw Error(ErrorKind::InvalidArgument, "constant velocity must be finite");
  return Velocity1D(Family::Constant, u, 0.0, 0.0, 1.0, lo, hi);
}

Velocity1D Velocity1D::affine(double a, double b, double lo, double hi) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw Error(ErrorKind::InvalidArgument, "affine velocity must be finite");
  if (b > 0.0) throw Error(ErrorKind::InvalidArgument, "affine velocity needs b <= 0 (nonincreasing U)");
  return Velocity1D(Family::Affine, a, b, 0.0, 1.0, lo, hi);
}

Velocity1D Velocity1D::tanh_profile(double a, double b, double x0, double width, double lo, double hi) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(x0)))
    throw Error(ErrorKind::InvalidArgument, "tanh velocity must be finite");
  if (b < 0.0) throw Error(ErrorKind::InvalidArgument, "tanh velocity needs b >= 0 (nonincreasing U)");
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "tanh velocity needs width > 0");
  return Velocity1D(Family::Tanh, a, b, x0, width, lo, hi);
}

double Velocity1D::eval(double x) const {
  switch (family_) {
    case Family::Constant: return a_;
    case Family::Affine: return a_ + b_ * x;
    case Family::Tanh: return a_ - b_ * std::tanh((x - x0_) / w_);
  }
  return 0.0;
}

double Velocity1D::derivative(double x) const {
  switch (family_) {
    case Family::Constant: return 0.0;
    case Family::Affine: return b_;
    case Family::Tanh: {
      const double sech = 1.0 / std::cosh((x - x0_) / w_);
      return -b_ / w_ * sech * sech;
    }
  }
  return 0.0;
}

double Velocity1D::second_derivative(double x) const {
  switch (family_) {
    case Family::Constant:
    case Family::Affine: return 0.0;
    case Family::Tanh: {
      const double s = (x - x0_) / w_;
      const double sech = 1.0 / std::cosh(s);
      return 2.0 * b_ / (w_ * w_) * sech * sech * std::tanh(s);
    }
  }
  return 0.0;
}

Velocity2D::Velocity2D(Family f, const Eigen::Vector2d& c, double lambda, const Eigen::Vector2d& lo,
                       const Eigen::Vector2d& hi)
    : family_(f), c_(c), lambda_(lambda), lo_(lo), hi_(hi) {
  check_box(lo.x(), hi.x());
  check_box(lo.y(), hi.y());
  // |c - lambda x| is convex in x, so its sup over the box is at a corner.
  double sup = 0.0;
  for (double x : {lo.x(), hi.x()})
    for (double y : {lo.y(), hi.y()}) sup = std::max(sup, eval(Eigen::Vector2d(x, y)).norm());
  bounds_ = {sup, std::abs(lambda_), 0.0};
  alpha_ = family_ == Family::Radial ? lambda_ : 0.0;
}

Velocity2D Velocity2D::constant(const Eigen::Vector2d& c, const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  if (!c.allFinite()) throw Error(ErrorKind::InvalidArgument, "constant velocity must be finite");
  return Velocity2D(Family::Constant, c, 0.0, lo, hi);
}

Velocity2D Velocity2D::radial(const Eigen::Vector2d& c, double lambda, const Eigen::Vector2d& lo,
                              const Eigen::Vector2d& hi) {
  if (!c.allFinite() || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidArgument, "radial velocity must be finite");
  if (lambda < 0.0) throw Error(ErrorKind::InvalidArgument, "radial velocity needs lambda >= 0");
  return Velocity2D(Family::Radial, c, lambda, lo, hi);
}

Eigen::Vector2d Velocity2D::eval(const Eigen::Vector2d& x) const {
  if (family_ == Family::Constant) return c_;
  return c_ - lambda_ * x;
}

Eigen::Matrix2d Velocity2D::jacobian(const Eigen::Vector2d&) const {
  if (family_ == Family::Constant) return Eigen::Matrix2d::Zero();
  return -lambda_ * Eigen::Matrix2d::Identity();
}

double Velocity2D::divergence(const Eigen::Vector2d& x) const { return jacobian(x).trace(); }

Eigen::Vector2d Velocity2D::divergence_gradient(const Eigen::Vector2d&) const { return Eigen::Vector2d::Zero(); }

}  // namespace stiffcrowd
