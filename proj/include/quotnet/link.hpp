#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "quotnet/error.hpp"

namespace quotnet {

namespace detail {
inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}
}  // namespace detail

// Inverse link g: R -> (0, 1), nondecreasing. Edge probability is
// g(alpha - distance). Logistic and probit are built in; custom monotone
// links wrap any callable.
class LinkFunction {
 public:
  enum class Kind { Logistic, Probit, Custom };

  static LinkFunction logistic() { return LinkFunction(Kind::Logistic, "logistic", {}); }
  static LinkFunction probit() { return LinkFunction(Kind::Probit, "probit", {}); }
  static LinkFunction custom(std::function<double(double)> g, std::string name = "custom") {
    if (!g) throw InvalidInputError("LinkFunction::custom: empty callable");
    return LinkFunction(Kind::Custom, std::move(name), std::move(g));
  }

  static LinkFunction by_name(const std::string& name) {
    if (name == "logistic") return logistic();
    if (name == "probit") return probit();
    throw InvalidInputError("unknown link function: " + name);
  }

  double operator()(double t) const {
    switch (kind_) {
      case Kind::Logistic:
        return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
      case Kind::Probit:
        return 0.5 * std::erfc(-t * 0.70710678118654752440);
      case Kind::Custom:
        return fn_(t);
    }
    return 0.0;  // unreachable
  }

  // log g(t), stable in the lower tail for the built-in links.
  double log(double t) const {
    switch (kind_) {
      case Kind::Logistic:
        return -detail::softplus(-t);
      case Kind::Probit:
      case Kind::Custom: {
        const double g = std::max((*this)(t), 1e-300);
        return std::log(g);
      }
    }
    return 0.0;
  }

  // log(1 - g(t)), stable in the upper tail for the built-in links.
  double log1m(double t) const {
    switch (kind_) {
      case Kind::Logistic:
        return -detail::softplus(t);
      case Kind::Probit: {
        const double q = 0.5 * std::erfc(t * 0.70710678118654752440);
        return std::log(std::max(q, 1e-300));
      }
      case Kind::Custom: {
        const double q = std::max(1.0 - fn_(t), 1e-300);
        return std::log(q);
      }
    }
    return 0.0;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  LinkFunction(Kind kind, std::string name, std::function<double(double)> fn)
      : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

  Kind kind_;
  std::string name_;
  std::function<double(double)> fn_;
};

}  // namespace quotnet
