#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mfl {

/// The interaction function g : [-1, 1] -> R of a mean-field Hamiltonian
/// H_N = -N g(m_N).
///
/// Every instance carries a bound K with |g(x)| <= K on [-1, 1], checked on a
/// 10^4-point grid at construction, and a Lipschitz constant used to turn
/// dense-grid maxima into rigorous sup-norm bounds. Instances are immutable.
class GFunction {
 public:
  struct Polynomial {
    std::vector<double> coefficients;  // a_0 .. a_n, monomial basis
  };
  /// Piecewise-linear interpolant of (x, y) samples covering [-1, 1]; the
  /// declared Lipschitz constant is the modulus of continuity.
  struct Tabulated {
    std::vector<double> x;
    std::vector<double> y;
    double lipschitz = 0.0;
  };
  enum class Builtin { Zero, Identity, Square, Quartic, SquareMinusX, NegSquare, Abs };

  static GFunction polynomial(std::vector<double> coefficients,
                              std::optional<double> bound = {});
  static GFunction monomial(int power);
  static GFunction tabulated(std::vector<double> x, std::vector<double> y, double lipschitz,
                             std::optional<double> bound = {});
  static GFunction builtin(Builtin which, std::optional<double> bound = {});
  static std::optional<Builtin> builtin_from_name(const std::string& name);
  static std::string builtin_name(Builtin which);

  /// Throws DomainError for x outside [-1, 1].
  double operator()(double x) const;

  double bound() const { return bound_; }
  /// Upper bound on |g'| (Lipschitz constant) over [-1, 1].
  double lipschitz() const { return lipschitz_; }
  /// Monomial coefficients when g is a polynomial (including polynomial builtins).
  std::optional<std::vector<double>> polynomial_form() const;
  /// Numerical convexity test on [-1, 1].
  bool is_convex() const;
  std::string describe() const;

  const std::variant<Polynomial, Tabulated, Builtin>& representation() const { return rep_; }

 private:
  explicit GFunction(std::variant<Polynomial, Tabulated, Builtin> rep);
  double eval_unchecked(double x) const;
  void finalize(std::optional<double> bound);

  std::variant<Polynomial, Tabulated, Builtin> rep_;
  double bound_ = 0.0;
  double lipschitz_ = 0.0;
};

struct SupNormEstimate {
  double grid_max = 0.0;  // max |g - g'| on the dense grid
  double bound = 0.0;     // grid_max plus Lipschitz slack; a rigorous upper bound
};

SupNormEstimate sup_norm_estimate(const GFunction& a, const GFunction& b);

/// Rigorous upper bound on sup_{[-1,1]} |a - b|.
double sup_norm_distance(const GFunction& a, const GFunction& b);

struct ChebyshevApproximation {
  GFunction polynomial;
  double sup_norm = 0.0;         // sup_norm_distance(g, polynomial)
  double levelled_error = 0.0;   // |E| of the final Remez reference
  int iterations = 0;
};

/// Best uniform (minimax) polynomial approximation of the given degree,
/// computed by Remez exchange on a dense grid.
ChebyshevApproximation chebyshev_approximate(const GFunction& g, int degree);

/// Horner evaluation of a monomial-basis polynomial.
double evaluate_polynomial(const std::vector<double>& coefficients, double x);

}  // namespace mfl
