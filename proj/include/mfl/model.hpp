#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mfl/gfunction.hpp"

namespace mfl {

/// Order-parameter coordinates: m for scalar models, (m+, m-) for the random
/// field model, (m^1 .. m^M) for Hopfield.
struct OrderParameterPoint {
  std::vector<double> values;
};

/// A group of sites sharing one disorder signature. Flipping one spin of the
/// class from -1 to +1 changes the order-parameter sums by 2*signature.
struct SiteClass {
  int size = 0;
  std::vector<int> signature;
};

/// A mean-field model H_N(sigma) = -N g(order parameters).
///
/// The inverse temperature is supplied per computation. Disordered models
/// (random field, Hopfield) carry their disorder explicitly and therefore a
/// fixed number of sites.
class ModelSpec {
 public:
  struct ScalarMeanField {
    GFunction g;
  };
  struct PSpinPlain {
    int p = 2;
  };
  struct PSpinTilde {
    int k = 2;
  };
  struct RandomFieldCW {
    std::vector<std::int8_t> h;
  };
  struct Hopfield {
    int patterns = 1;
    std::vector<std::int8_t> xi;  // row-major patterns x sites
  };
  using Variant = std::variant<ScalarMeanField, PSpinPlain, PSpinTilde, RandomFieldCW, Hopfield>;

  static ModelSpec scalar(GFunction g);
  static ModelSpec pspin(int p);
  static ModelSpec pspin_tilde(int k);
  static ModelSpec random_field(std::vector<std::int8_t> h);
  static ModelSpec hopfield(int patterns, std::vector<std::int8_t> xi);

  const Variant& variant() const { return rep_; }
  std::string kind() const;
  std::string describe() const;

  /// Number of order-parameter coordinates.
  int dimension() const;
  /// Site count fixed by the disorder, if any.
  std::optional<int> fixed_size() const;
  bool disordered() const { return fixed_size().has_value(); }

  /// Validates that a whole system of n sites is admissible (k < n for the
  /// symmetrized p-spin model, disorder length for disordered models).
  void check_system_size(int n) const;
  /// Validates that a block of n sites inside a split is admissible.
  void check_block_size(int n) const;

  /// Energy H_n of a system of n sites whose order-parameter sums are
  /// `sums` (sums[d] = n * m_d).
  double energy(std::span<const long> sums, int n) const;

  /// Site classes of the sub-system [begin, end). Scalar models have one
  /// class; disordered models group sites by disorder signature.
  std::vector<SiteClass> classes(int begin, int end) const;

  /// The model restricted to sites [begin, end).
  ModelSpec restrict(int begin, int end) const;

  /// K with |H_n / n| <= K for every admissible configuration.
  double bound() const;
  /// g is convex in the order parameters, so the interpolation condition
  /// holds with gap >= 0.
  bool convex() const;
  /// The condition is guaranteed: convex g, or the symmetrized p-spin
  /// (where it holds with equality).
  bool condition_guaranteed() const;
  /// The scalar g whose variational problem gives the limit, when one exists.
  std::optional<GFunction> limit_g() const;

 private:
  explicit ModelSpec(Variant rep) : rep_(std::move(rep)) {}
  Variant rep_;
};

/// H/N at an order-parameter point, i.e. -g(point). `n` is required for the
/// symmetrized p-spin model, whose density depends on the system size.
double hamiltonian_density(const ModelSpec& model, const OrderParameterPoint& point,
                           std::optional<int> n = {});

}  // namespace mfl
