#ifndef LCYCLE_FUNCDESC_HPP
#define LCYCLE_FUNCDESC_HPP

/// \file
/// Closed-form scalar function descriptors.
///
/// A FunctionDescriptor is an immutable expression tree over a small set of
/// node kinds (polynomials, Gaussian bumps, negation, sums, products, argument
/// shifts and quotients). Every node has an exact derivative expressible in
/// the same node set, so hypothesis checks never fall back to numerical
/// differentiation. Trees share structure through shared_ptr and may be
/// copied and passed between threads freely.

#include <cmath>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace lcycle {

class FunctionDescriptor;

namespace fd {

/// sum_k coeffs[k] * s^k
struct Polynomial {
  std::vector<double> coeffs;
};

/// c * exp(-d s^2) + e
struct GaussBump {
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
};

struct Negated;
struct Sum;
struct Product;
struct ShiftedArg;
struct Quotient;

}  // namespace fd

class FunctionDescriptor {
 public:
  using Node = std::variant<fd::Polynomial, fd::GaussBump, std::shared_ptr<const fd::Negated>,
                            std::shared_ptr<const fd::Sum>, std::shared_ptr<const fd::Product>,
                            std::shared_ptr<const fd::ShiftedArg>,
                            std::shared_ptr<const fd::Quotient>>;

  /// The zero polynomial.
  FunctionDescriptor() : node_(fd::Polynomial{}) {}
  FunctionDescriptor(fd::Polynomial p) : node_(std::move(p)) {}
  FunctionDescriptor(fd::GaussBump b) : node_(b) {}

  static FunctionDescriptor polynomial(std::vector<double> coeffs) {
    return FunctionDescriptor(fd::Polynomial{std::move(coeffs)});
  }
  static FunctionDescriptor constant(double v) { return polynomial({v}); }
  static FunctionDescriptor identity() { return polynomial({0.0, 1.0}); }
  static FunctionDescriptor gauss_bump(double c, double d, double e) {
    return FunctionDescriptor(fd::GaussBump{c, d, e});
  }
  static FunctionDescriptor negated(FunctionDescriptor inner);
  static FunctionDescriptor sum(std::vector<FunctionDescriptor> terms);
  static FunctionDescriptor product(std::vector<FunctionDescriptor> factors);
  /// s -> inner(s - offset)
  static FunctionDescriptor shifted(FunctionDescriptor inner, double offset);
  static FunctionDescriptor quotient(FunctionDescriptor num, FunctionDescriptor den);

  const Node& node() const noexcept { return node_; }

  double operator()(double s) const;

  /// Exact derivative, expressed in the same node set.
  FunctionDescriptor derivative() const;

  /// Closed-form antiderivative vanishing at 0, when one exists in the node
  /// set (polynomials and their negations and sums). Otherwise nullopt.
  std::optional<FunctionDescriptor> antiderivative() const;

  bool is_polynomial() const noexcept { return std::holds_alternative<fd::Polynomial>(node_); }

  friend bool operator==(const FunctionDescriptor& a, const FunctionDescriptor& b);

 private:
  template <class T>
  explicit FunctionDescriptor(std::shared_ptr<const T> p) : node_(std::move(p)) {}

  Node node_;
};

namespace fd {

struct Negated {
  FunctionDescriptor inner;
};
struct Sum {
  std::vector<FunctionDescriptor> terms;
};
struct Product {
  std::vector<FunctionDescriptor> factors;
};
struct ShiftedArg {
  FunctionDescriptor inner;
  double offset = 0.0;
};
struct Quotient {
  FunctionDescriptor num;
  FunctionDescriptor den;
};

inline double eval_poly(const std::vector<double>& c, double s) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

}  // namespace fd

inline FunctionDescriptor FunctionDescriptor::negated(FunctionDescriptor inner) {
  return FunctionDescriptor(std::make_shared<const fd::Negated>(fd::Negated{std::move(inner)}));
}

inline FunctionDescriptor FunctionDescriptor::sum(std::vector<FunctionDescriptor> terms) {
  return FunctionDescriptor(std::make_shared<const fd::Sum>(fd::Sum{std::move(terms)}));
}

inline FunctionDescriptor FunctionDescriptor::product(std::vector<FunctionDescriptor> factors) {
  return FunctionDescriptor(std::make_shared<const fd::Product>(fd::Product{std::move(factors)}));
}

inline FunctionDescriptor FunctionDescriptor::shifted(FunctionDescriptor inner, double offset) {
  return FunctionDescriptor(
      std::make_shared<const fd::ShiftedArg>(fd::ShiftedArg{std::move(inner), offset}));
}

inline FunctionDescriptor FunctionDescriptor::quotient(FunctionDescriptor num,
                                                       FunctionDescriptor den) {
  return FunctionDescriptor(
      std::make_shared<const fd::Quotient>(fd::Quotient{std::move(num), std::move(den)}));
}

inline double FunctionDescriptor::operator()(double s) const {
  struct Visitor {
    double s;
    double operator()(const fd::Polynomial& p) const { return fd::eval_poly(p.coeffs, s); }
    double operator()(const fd::GaussBump& b) const { return b.c * std::exp(-b.d * s * s) + b.e; }
    double operator()(const std::shared_ptr<const fd::Negated>& n) const { return -n->inner(s); }
    double operator()(const std::shared_ptr<const fd::Sum>& n) const {
      double acc = 0.0;
      for (const auto& t : n->terms) acc += t(s);
      return acc;
    }
    double operator()(const std::shared_ptr<const fd::Product>& n) const {
      double acc = 1.0;
      for (const auto& f : n->factors) acc *= f(s);
      return acc;
    }
    double operator()(const std::shared_ptr<const fd::ShiftedArg>& n) const {
      return n->inner(s - n->offset);
    }
    double operator()(const std::shared_ptr<const fd::Quotient>& n) const {
      return n->num(s) / n->den(s);
    }
  };
  return std::visit(Visitor{s}, node_);
}

inline FunctionDescriptor FunctionDescriptor::derivative() const {
  struct Visitor {
    FunctionDescriptor operator()(const fd::Polynomial& p) const {
      if (p.coeffs.size() <= 1) return FunctionDescriptor::constant(0.0);
      std::vector<double> d(p.coeffs.size() - 1);
      for (std::size_t k = 1; k < p.coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * p.coeffs[k];
      return FunctionDescriptor::polynomial(std::move(d));
    }
    FunctionDescriptor operator()(const fd::GaussBump& b) const {
      // d/ds [c exp(-d s^2) + e] = (-2 d s) * c exp(-d s^2)
      return FunctionDescriptor::product({FunctionDescriptor::polynomial({0.0, -2.0 * b.d}),
                                          FunctionDescriptor::gauss_bump(b.c, b.d, 0.0)});
    }
    FunctionDescriptor operator()(const std::shared_ptr<const fd::Negated>& n) const {
      return FunctionDescriptor::negated(n->inner.derivative());
    }
    FunctionDescriptor operator()(const std::shared_ptr<const fd::Sum>& n) const {
      std::vector<FunctionDescriptor> terms;
      terms.reserve(n->terms.size());
      for (const auto& t : n->terms) terms.push_back(t.derivative());
      return FunctionDescriptor::sum(std::move(terms));
    }
    FunctionDescriptor operator()(const std::shared_ptr<const fd::Product>& n) const {
      std::vector<FunctionDescriptor> terms;
      for (std::size_t i = 0; i < n->factors.size(); ++i) {
        std::vector<FunctionDescriptor> factors = n->factors;
        factors[i] = n->factors[i].derivative();
        terms.push_back(FunctionDescriptor::product(std::move(factors)));
      }
      return FunctionDescriptor::sum(std::move(terms));
    }
    FunctionDescriptor operator()(const std::shared_ptr<const fd::ShiftedArg>& n) const {
      return FunctionDescriptor::shifted(n->inner.derivative(), n->offset);
    }
    FunctionDescriptor operator()(const std::shared_ptr<const fd::Quotient>& n) const {
      // (num' den - num den') / den^2
      auto top = FunctionDescriptor::sum(
          {FunctionDescriptor::product({n->num.derivative(), n->den}),
           FunctionDescriptor::negated(FunctionDescriptor::product({n->num, n->den.derivative()}))});
      return FunctionDescriptor::quotient(std::move(top), FunctionDescriptor::product({n->den, n->den}));
    }
  };
  return std::visit(Visitor{}, node_);
}

inline std::optional<FunctionDescriptor> FunctionDescriptor::antiderivative() const {
  return std::visit(
      [](const auto& n) -> std::optional<FunctionDescriptor> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, fd::Polynomial>) {
          std::vector<double> c(n.coeffs.size() + 1, 0.0);
          for (std::size_t k = 0; k < n.coeffs.size(); ++k) c[k + 1] = n.coeffs[k] / static_cast<double>(k + 1);
          return FunctionDescriptor::polynomial(std::move(c));
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const fd::Negated>>) {
          auto inner = n->inner.antiderivative();
          if (!inner) return std::nullopt;
          return FunctionDescriptor::negated(std::move(*inner));
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const fd::Sum>>) {
          std::vector<FunctionDescriptor> terms;
          for (const auto& t : n->terms) {
            auto a = t.antiderivative();
            if (!a) return std::nullopt;
            terms.push_back(std::move(*a));
          }
          return FunctionDescriptor::sum(std::move(terms));
        } else {
          return std::nullopt;
        }
      },
      node_);
}

inline bool operator==(const FunctionDescriptor& a, const FunctionDescriptor& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node_);
        if constexpr (std::is_same_v<T, fd::Polynomial>) {
          return lhs.coeffs == rhs.coeffs;
        } else if constexpr (std::is_same_v<T, fd::GaussBump>) {
          return lhs.c == rhs.c && lhs.d == rhs.d && lhs.e == rhs.e;
        } else {
          if (lhs == rhs) return true;
          using N = std::remove_const_t<typename T::element_type>;
          if constexpr (std::is_same_v<N, fd::Negated>) {
            return lhs->inner == rhs->inner;
          } else if constexpr (std::is_same_v<N, fd::Sum>) {
            return lhs->terms == rhs->terms;
          } else if constexpr (std::is_same_v<N, fd::Product>) {
            return lhs->factors == rhs->factors;
          } else if constexpr (std::is_same_v<N, fd::ShiftedArg>) {
            return lhs->offset == rhs->offset && lhs->inner == rhs->inner;
          } else {
            return lhs->num == rhs->num && lhs->den == rhs->den;
          }
        }
      },
      a.node_);
}

/// Value of a bivariate function together with its partial derivatives.
struct Partials {
  double dx = 0.0;
  double dy = 0.0;
};

class BivariateDescriptor;

namespace bd {

/// F(x,y) = x (x - psi1(y)) (x - psi2(y)); derivatives of the curves are
/// cached at construction.
struct SpecialForm {
  FunctionDescriptor psi1;
  FunctionDescriptor psi2;
  FunctionDescriptor dpsi1;
  FunctionDescriptor dpsi2;
};

/// F(x,y) = f(x)
struct Lienard {
  FunctionDescriptor f;
  FunctionDescriptor df;
};

struct Scaled;
struct YQuotient;

}  // namespace bd

/// F(x,y) of the planar system. Same sharing rules as FunctionDescriptor.
class BivariateDescriptor {
 public:
  using Node = std::variant<bd::SpecialForm, bd::Lienard, std::shared_ptr<const bd::Scaled>,
                            std::shared_ptr<const bd::YQuotient>>;

  BivariateDescriptor() : BivariateDescriptor(lienard(FunctionDescriptor{})) {}

  static BivariateDescriptor special_form(FunctionDescriptor psi1, FunctionDescriptor psi2) {
    auto d1 = psi1.derivative();
    auto d2 = psi2.derivative();
    return BivariateDescriptor(
        bd::SpecialForm{std::move(psi1), std::move(psi2), std::move(d1), std::move(d2)});
  }
  static BivariateDescriptor lienard(FunctionDescriptor f) {
    auto df = f.derivative();
    return BivariateDescriptor(bd::Lienard{std::move(f), std::move(df)});
  }
  /// k * inner(x,y)
  static BivariateDescriptor scaled(BivariateDescriptor inner, double k);
  /// inner(x,y) / den(y)
  static BivariateDescriptor y_quotient(BivariateDescriptor inner, FunctionDescriptor den);

  const Node& node() const noexcept { return node_; }

  double operator()(double x, double y) const;
  Partials partials(double x, double y) const;

  /// The embedded curves when this is a SpecialForm.
  const bd::SpecialForm* as_special_form() const noexcept {
    return std::get_if<bd::SpecialForm>(&node_);
  }

 private:
  explicit BivariateDescriptor(Node n) : node_(std::move(n)) {}

  Node node_;
};

namespace bd {

struct Scaled {
  BivariateDescriptor inner;
  double k = 1.0;
};

struct YQuotient {
  BivariateDescriptor inner;
  FunctionDescriptor den;
  FunctionDescriptor dden;
};

}  // namespace bd

inline BivariateDescriptor BivariateDescriptor::scaled(BivariateDescriptor inner, double k) {
  return BivariateDescriptor(std::make_shared<const bd::Scaled>(bd::Scaled{std::move(inner), k}));
}

inline BivariateDescriptor BivariateDescriptor::y_quotient(BivariateDescriptor inner,
                                                           FunctionDescriptor den) {
  auto dden = den.derivative();
  return BivariateDescriptor(std::make_shared<const bd::YQuotient>(
      bd::YQuotient{std::move(inner), std::move(den), std::move(dden)}));
}

inline double BivariateDescriptor::operator()(double x, double y) const {
  struct Visitor {
    double x, y;
    double operator()(const bd::SpecialForm& s) const { return x * (x - s.psi1(y)) * (x - s.psi2(y)); }
    double operator()(const bd::Lienard& l) const { return l.f(x); }
    double operator()(const std::shared_ptr<const bd::Scaled>& s) const { return s->k * s->inner(x, y); }
    double operator()(const std::shared_ptr<const bd::YQuotient>& q) const {
      return q->inner(x, y) / q->den(y);
    }
  };
  return std::visit(Visitor{x, y}, node_);
}

inline Partials BivariateDescriptor::partials(double x, double y) const {
  struct Visitor {
    double x, y;
    Partials operator()(const bd::SpecialForm& s) const {
      const double u = x - s.psi1(y);
      const double v = x - s.psi2(y);
      return {u * v + x * v + x * u, -x * (s.dpsi1(y) * v + s.dpsi2(y) * u)};
    }
    Partials operator()(const bd::Lienard& l) const { return {l.df(x), 0.0}; }
    Partials operator()(const std::shared_ptr<const bd::Scaled>& s) const {
      const auto p = s->inner.partials(x, y);
      return {s->k * p.dx, s->k * p.dy};
    }
    Partials operator()(const std::shared_ptr<const bd::YQuotient>& q) const {
      const auto p = q->inner.partials(x, y);
      const double f = q->inner(x, y);
      const double a = q->den(y);
      return {p.dx / a, (p.dy * a - f * q->dden(y)) / (a * a)};
    }
  };
  return std::visit(Visitor{x, y}, node_);
}

}  // namespace lcycle

#endif  // LCYCLE_FUNCDESC_HPP
