#include "topspin/potential.hpp"

#include <charconv>
#include <cmath>

#include "topspin/errors.hpp"

namespace topspin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

InvariantPotential::InvariantPotential(PotentialSpec spec) : spec_(std::move(spec)) {
  std::visit(overloaded{
                 [](const BuiltinLagrange&) {},
                 [](const BuiltinKirchhoff& k) {
                   if (!std::isfinite(k.c)) throw ConfigError("kirchhoff constant c must be finite");
                 },
                 [](const PolynomialInS& p) {
                   if (p.coefficients.empty()) throw ConfigError("polynomial needs at least one coefficient");
                   for (double a : p.coefficients)
                     if (!std::isfinite(a)) throw ConfigError("polynomial coefficients must be finite");
                 },
                 [this](const Expression& e) {
                   std::vector<std::string> declared;
                   for (const auto& [name, value] : e.bindings) {
                     if (!std::isfinite(value)) throw ConfigError("parameter '" + name + "' must be finite");
                     declared.push_back(name);
                   }
                   ast_ = std::make_shared<const ExprAst>(parse_expression(e.source, declared));
                 },
             },
             spec_);
}

std::string InvariantPotential::describe() const {
  return std::visit(overloaded{
                        [](const BuiltinLagrange&) -> std::string { return "lagrange"; },
                        [](const BuiltinKirchhoff& k) { return "kirchhoff(c=" + shortest(k.c) + ")"; },
                        [](const PolynomialInS& p) {
                          std::string out = "polynomial[";
                          for (std::size_t i = 0; i < p.coefficients.size(); ++i)
                            out += (i ? "," : "") + shortest(p.coefficients[i]);
                          return out + "]";
                        },
                        [](const Expression& e) {
                          std::string out = "expr(" + e.source;
                          for (const auto& [name, value] : e.bindings) out += "; " + name + "=" + shortest(value);
                          return out + ")";
                        },
                    },
                    spec_);
}

PotentialValue InvariantPotential::evaluate(double s) const {
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("potential argument s=" + shortest(s) + " outside [0, 1)");
  return evaluate_unchecked(s);
}

Jet2 InvariantPotential::evaluate(Jet2 s) const {
  const PotentialValue p = evaluate(s.v);
  return compose(s, p.value, p.d1, p.d2);
}

PotentialValue InvariantPotential::evaluate_unchecked(double s) const {
  return std::visit(
      overloaded{
          [s](const BuiltinLagrange&) {
            const double w = 1.0 - s;
            const double v = std::sqrt(w);
            const double d1 = -0.5 / v;
            return PotentialValue{v, d1, 0.5 * d1 / w};
          },
          [s](const BuiltinKirchhoff& k) {
            const double a = k.c - 1.0;
            return PotentialValue{1.0 + a * (1.0 - s), -a, 0.0};
          },
          [s](const PolynomialInS& p) {
            const Jet2 x = Jet2::variable(s);
            Jet2 acc;
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * x + Jet2{*it};
            return PotentialValue{acc.v, acc.d, acc.dd};
          },
          [this, s](const Expression& e) {
            const Jet2 r = ast_->evaluate(Jet2::variable(s), e.bindings);
            return PotentialValue{r.v, r.d, r.dd};
          },
      },
      spec_);
}

NormalFormCoeffs normal_form_coeffs(const InvariantPotential& p) {
  const PotentialValue at0 = p.evaluate(0.0);
  return {4.0 * at0.d1, 8.0 * (at0.d2 - at0.d1), at0.d1, at0.d2};
}

}  // namespace topspin
