#ifndef LCYCLE_SYSTEM_HPP
#define LCYCLE_SYSTEM_HPP

/// \file
/// The planar system  x' = phi(y) - F(x,y),  y' = -g(x)  on the strip (a,b) x R.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lcycle/error.hpp"
#include "lcycle/funcdesc.hpp"

namespace lcycle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (a,b) with a < 0 < b; endpoints may be infinite.
struct Domain {
  double a = -kInf;
  double b = kInf;

  bool contains(double x) const noexcept { return a < x && x < b; }
};

/// s -> int_0^s f. Uses the closed-form antiderivative when the descriptor
/// has one, adaptive Gauss-Kronrod quadrature otherwise.
class Primitive {
 public:
  Primitive() = default;
  explicit Primitive(FunctionDescriptor f) : integrand_(std::move(f)) {
    closed_ = integrand_.antiderivative();
  }

  double operator()(double s) const {
    if (closed_) return (*closed_)(s) - (*closed_)(0.0);
    if (s == 0.0) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(
        [this](double u) { return integrand_(u); }, 0.0, s, 20, 1e-14, &err);
    return v;
  }

  bool closed_form() const noexcept { return closed_.has_value(); }
  const FunctionDescriptor& integrand() const noexcept { return integrand_; }

 private:
  FunctionDescriptor integrand_;
  std::optional<FunctionDescriptor> closed_;
};

/// Phi(y) = int_0^y phi and G(x) = int_0^x g.
struct EnergyPair {
  Primitive Phi;
  Primitive G;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

class PlanarSystem {
 public:
  /// Validates a < 0 < b. When F is a SpecialForm and no curves are given the
  /// embedded curves are adopted; curves that are given must match them.
  PlanarSystem(FunctionDescriptor phi, FunctionDescriptor g, BivariateDescriptor F,
               Domain domain = {}, std::optional<FunctionDescriptor> psi1 = std::nullopt,
               std::optional<FunctionDescriptor> psi2 = std::nullopt)
      : phi_(std::move(phi)),
        g_(std::move(g)),
        F_(std::move(F)),
        domain_(domain),
        psi1_(std::move(psi1)),
        psi2_(std::move(psi2)) {
    if (!(domain_.a < 0.0 && 0.0 < domain_.b)) {
      throw InvalidSystem("domain must satisfy a < 0 < b");
    }
    if (psi1_.has_value() != psi2_.has_value()) {
      throw InvalidSystem("psi1 and psi2 must be given together");
    }
    if (const auto* sf = F_.as_special_form()) {
      if (!psi1_) {
        psi1_ = sf->psi1;
        psi2_ = sf->psi2;
      } else if (!(*psi1_ == sf->psi1) || !(*psi2_ == sf->psi2)) {
        throw InvalidSystem("declared psi curves differ from the special form's curves");
      }
    }
    if (psi1_) {
      dpsi1_ = psi1_->derivative();
      dpsi2_ = psi2_->derivative();
    }
    energy_ = EnergyPair{Primitive(phi_), Primitive(g_)};
  }

  const FunctionDescriptor& phi() const noexcept { return phi_; }
  const FunctionDescriptor& g() const noexcept { return g_; }
  const BivariateDescriptor& F() const noexcept { return F_; }
  const Domain& domain() const noexcept { return domain_; }
  const EnergyPair& energy() const noexcept { return energy_; }

  bool has_curves() const noexcept { return psi1_.has_value(); }
  /// psi_j for j in {1,2}; throws MissingCurves when absent.
  const FunctionDescriptor& psi(int j) const {
    if (!psi1_) throw MissingCurves();
    return j == 1 ? *psi1_ : *psi2_;
  }
  const FunctionDescriptor& dpsi(int j) const {
    if (!psi1_) throw MissingCurves();
    return j == 1 ? dpsi1_ : dpsi2_;
  }

  void require_in_domain(double x) const {
    if (!domain_.contains(x)) throw DomainExceeded(x, domain_.a, domain_.b);
  }

  /// (phi(y) - F(x,y), -g(x)) without the domain check; used on hot paths
  /// whose callers validate x themselves.
  Vec2 field_unchecked(double x, double y) const noexcept { return {phi_(y) - F_(x, y), -g_(x)}; }

 private:
  FunctionDescriptor phi_;
  FunctionDescriptor g_;
  BivariateDescriptor F_;
  Domain domain_;
  std::optional<FunctionDescriptor> psi1_;
  std::optional<FunctionDescriptor> psi2_;
  FunctionDescriptor dpsi1_;
  FunctionDescriptor dpsi2_;
  EnergyPair energy_;
};

inline Vec2 vector_field(const PlanarSystem& sys, double x, double y) {
  sys.require_in_domain(x);
  return sys.field_unchecked(x, y);
}

/// H(x,y) = Phi(y) + G(x)
inline double hamiltonian(const PlanarSystem& sys, double x, double y) {
  sys.require_in_domain(x);
  return sys.energy().Phi(y) + sys.energy().G(x);
}

/// dH/dt along the flow, evaluated as -F(x,y) g(x).
inline double energy_derivative(const PlanarSystem& sys, double x, double y) {
  sys.require_in_domain(x);
  return -sys.F()(x, y) * sys.g()(x);
}

/// Number of samples used to validate positivity of the time-rescaling factors.
inline constexpr int kReparamSamples = 10000;

/// Divides  x' = beta(x)[phi(y) - F(x,y)],  y' = -alpha(y) g(x)  by alpha(y) beta(x).
/// alpha is sampled on [y_lo, y_hi] and beta on the domain clipped to
/// [x_lo, x_hi]; a non-positive sample raises NonPositiveFactor.
inline PlanarSystem reparametrize(const FunctionDescriptor& alpha, const FunctionDescriptor& beta,
                                  const PlanarSystem& raw, double x_lo, double x_hi, double y_lo,
                                  double y_hi) {
  const double xa = std::max(x_lo, std::isfinite(raw.domain().a) ? raw.domain().a : x_lo);
  const double xb = std::min(x_hi, std::isfinite(raw.domain().b) ? raw.domain().b : x_hi);
  for (int k = 0; k < kReparamSamples; ++k) {
    const double t = static_cast<double>(k) / (kReparamSamples - 1);
    const double y = y_lo + t * (y_hi - y_lo);
    if (const double v = alpha(y); !(v > 0.0)) throw NonPositiveFactor("alpha", y, v);
    // open interval: skip the endpoints when they are the domain's own
    const double x = xa + t * (xb - xa);
    if (!raw.domain().contains(x)) continue;
    if (const double v = beta(x); !(v > 0.0)) throw NonPositiveFactor("beta", x, v);
  }
  auto phi = FunctionDescriptor::quotient(raw.phi(), alpha);
  auto g = FunctionDescriptor::quotient(raw.g(), beta);
  auto F = BivariateDescriptor::y_quotient(raw.F(), alpha);
  if (raw.has_curves()) {
    return PlanarSystem(std::move(phi), std::move(g), std::move(F), raw.domain(), raw.psi(1), raw.psi(2));
  }
  return PlanarSystem(std::move(phi), std::move(g), std::move(F), raw.domain());
}

}  // namespace lcycle

#endif  // LCYCLE_SYSTEM_HPP
