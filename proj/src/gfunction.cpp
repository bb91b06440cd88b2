#include "mfl/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "mfl/error.hpp"

namespace mfl {

namespace {

constexpr int kBoundCheckPoints = 10000;
constexpr int kSupNormIntervals = 200000;
constexpr int kRemezIntervals = 20000;

double grid_point(int i, int intervals) {
  return static_cast<double>(2 * i - intervals) / intervals;
}

std::vector<double> builtin_coefficients(GFunction::Builtin b) {
  using B = GFunction::Builtin;
  switch (b) {
    case B::Zero: return {0.0};
    case B::Identity: return {0.0, 1.0};
    case B::Square: return {0.0, 0.0, 1.0};
    case B::Quartic: return {0.0, 0.0, 0.0, 0.0, 1.0};
    case B::SquareMinusX: return {0.0, -1.0, 1.0};
    case B::NegSquare: return {0.0, 0.0, -1.0};
    case B::Abs: return {};
  }
  return {};
}

double derivative_bound(const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) s += static_cast<double>(k) * std::abs(c[k]);
  return s;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

double evaluate_polynomial(const std::vector<double>& coefficients, double x) {
  double r = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) r = r * x + *it;
  return r;
}

GFunction::GFunction(std::variant<Polynomial, Tabulated, Builtin> rep) : rep_(std::move(rep)) {}

GFunction GFunction::polynomial(std::vector<double> coefficients, std::optional<double> bound) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw DomainError("polynomial g: non-finite coefficient");
  }
  GFunction g(Polynomial{std::move(coefficients)});
  g.finalize(bound);
  return g;
}

GFunction GFunction::monomial(int power) {
  if (power < 0) throw DomainError("monomial: negative power");
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = 1.0;
  return polynomial(std::move(c), 1.0);
}

GFunction GFunction::tabulated(std::vector<double> x, std::vector<double> y, double lipschitz,
                               std::optional<double> bound) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("tabulated g: need matching x/y arrays with at least two points");
  }
  if (x.front() != -1.0 || x.back() != 1.0) {
    throw DomainError("tabulated g: grid must start at -1 and end at 1");
  }
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw DomainError("tabulated g: declared Lipschitz constant must be finite and >= 0");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw DomainError("tabulated g: x must be strictly increasing");
    const double slope = std::abs(y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    if (slope > lipschitz * (1.0 + 1e-12) + 1e-12) {
      throw DomainError("tabulated g: table slope exceeds the declared Lipschitz constant");
    }
  }
  GFunction g(Tabulated{std::move(x), std::move(y), lipschitz});
  g.finalize(bound);
  return g;
}

GFunction GFunction::builtin(Builtin which, std::optional<double> bound) {
  GFunction g(which);
  g.finalize(bound);
  return g;
}

std::optional<GFunction::Builtin> GFunction::builtin_from_name(const std::string& name) {
  static const std::pair<const char*, Builtin> kNames[] = {
      {"zero", Builtin::Zero},        {"identity", Builtin::Identity},
      {"square", Builtin::Square},    {"quartic", Builtin::Quartic},
      {"square_minus_x", Builtin::SquareMinusX},
      {"neg_square", Builtin::NegSquare}, {"abs", Builtin::Abs}};
  for (const auto& [n, b] : kNames) {
    if (name == n) return b;
  }
  return std::nullopt;
}

std::string GFunction::builtin_name(Builtin which) {
  switch (which) {
    case Builtin::Zero: return "zero";
    case Builtin::Identity: return "identity";
    case Builtin::Square: return "square";
    case Builtin::Quartic: return "quartic";
    case Builtin::SquareMinusX: return "square_minus_x";
    case Builtin::NegSquare: return "neg_square";
    case Builtin::Abs: return "abs";
  }
  return "?";
}

double GFunction::eval_unchecked(double x) const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    return evaluate_polynomial(p->coefficients, x);
  }
  if (const auto* t = std::get_if<Tabulated>(&rep_)) {
    const auto it = std::upper_bound(t->x.begin(), t->x.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - t->x.begin());
    if (hi >= t->x.size()) return t->y.back();
    if (hi == 0) return t->y.front();
    const std::size_t lo = hi - 1;
    const double w = (x - t->x[lo]) / (t->x[hi] - t->x[lo]);
    return t->y[lo] + w * (t->y[hi] - t->y[lo]);
  }
  const auto b = std::get<Builtin>(rep_);
  switch (b) {
    case Builtin::Zero: return 0.0;
    case Builtin::Identity: return x;
    case Builtin::Square: return x * x;
    case Builtin::Quartic: return (x * x) * (x * x);
    case Builtin::SquareMinusX: return x * x - x;
    case Builtin::NegSquare: return -(x * x);
    case Builtin::Abs: return std::abs(x);
  }
  return 0.0;
}

double GFunction::operator()(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "g evaluated outside [-1, 1] at x=" << x;
    throw DomainError(os.str());
  }
  return eval_unchecked(x);
}

std::optional<std::vector<double>> GFunction::polynomial_form() const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) return p->coefficients;
  if (const auto* b = std::get_if<Builtin>(&rep_)) {
    if (*b == Builtin::Abs) return std::nullopt;
    return builtin_coefficients(*b);
  }
  return std::nullopt;
}

void GFunction::finalize(std::optional<double> bound) {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    lipschitz_ = derivative_bound(p->coefficients);
  } else if (const auto* t = std::get_if<Tabulated>(&rep_)) {
    lipschitz_ = t->lipschitz;
  } else {
    const auto b = std::get<Builtin>(rep_);
    lipschitz_ = b == Builtin::Abs ? 1.0 : derivative_bound(builtin_coefficients(b));
  }

  double grid_max = 0.0;
  for (int i = 0; i <= kBoundCheckPoints; ++i) {
    grid_max = std::max(grid_max, std::abs(eval_unchecked(grid_point(i, kBoundCheckPoints))));
  }

  if (bound) {
    if (!(*bound >= 0.0) || !std::isfinite(*bound)) {
      throw DomainError("declared bound K must be finite and >= 0");
    }
    if (grid_max > *bound * (1.0 + 1e-12) + 1e-12) {
      std::ostringstream os;
      os << "declared bound K=" << *bound << " is violated: |g| reaches " << grid_max;
      throw DomainError(os.str());
    }
    bound_ = *bound;
    return;
  }

  // Derived bound: sum |a_k| for polynomials, exact node maximum for tables,
  // closed forms for builtins; otherwise grid max plus slack.
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    double s = 0.0;
    for (double c : p->coefficients) s += std::abs(c);
    bound_ = std::min(s, grid_max + lipschitz_ / kBoundCheckPoints);
  } else if (const auto* t = std::get_if<Tabulated>(&rep_)) {
    double m = 0.0;
    for (double y : t->y) m = std::max(m, std::abs(y));
    bound_ = m;
  } else {
    switch (std::get<Builtin>(rep_)) {
      case Builtin::Zero: bound_ = 0.0; break;
      case Builtin::SquareMinusX: bound_ = 2.0; break;
      default: bound_ = 1.0; break;
    }
  }
}

bool GFunction::is_convex() const {
  if (const auto* t = std::get_if<Tabulated>(&rep_)) {
    for (std::size_t i = 2; i < t->x.size(); ++i) {
      const double s0 = (t->y[i - 1] - t->y[i - 2]) / (t->x[i - 1] - t->x[i - 2]);
      const double s1 = (t->y[i] - t->y[i - 1]) / (t->x[i] - t->x[i - 1]);
      if (s1 < s0 - 1e-12) return false;
    }
    return true;
  }
  if (const auto* b = std::get_if<Builtin>(&rep_)) {
    return *b != Builtin::NegSquare;
  }
  const auto second = derivative(derivative(*polynomial_form()));
  for (int i = 0; i <= kBoundCheckPoints; ++i) {
    if (evaluate_polynomial(second, grid_point(i, kBoundCheckPoints)) < -1e-12) return false;
  }
  return true;
}

std::string GFunction::describe() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    os << "polynomial[";
    for (std::size_t i = 0; i < p->coefficients.size(); ++i) {
      os << (i ? "," : "") << p->coefficients[i];
    }
    os << "]";
  } else if (const auto* t = std::get_if<Tabulated>(&rep_)) {
    os << "tabulated(" << t->x.size() << " points, L=" << t->lipschitz << ")";
  } else {
    os << builtin_name(std::get<Builtin>(rep_));
  }
  return os.str();
}

SupNormEstimate sup_norm_estimate(const GFunction& a, const GFunction& b) {
  SupNormEstimate est;
  const auto pa = a.polynomial_form();
  const auto pb = b.polynomial_form();
  double slack_lipschitz = a.lipschitz() + b.lipschitz();
  if (pa && pb) {
    std::vector<double> d(std::max(pa->size(), pb->size()), 0.0);
    for (std::size_t k = 0; k < pa->size(); ++k) d[k] += (*pa)[k];
    for (std::size_t k = 0; k < pb->size(); ++k) d[k] -= (*pb)[k];
    slack_lipschitz = derivative_bound(d);
    for (int i = 0; i <= kSupNormIntervals; ++i) {
      est.grid_max = std::max(est.grid_max,
                              std::abs(evaluate_polynomial(d, grid_point(i, kSupNormIntervals))));
    }
  } else {
    for (int i = 0; i <= kSupNormIntervals; ++i) {
      const double x = grid_point(i, kSupNormIntervals);
      est.grid_max = std::max(est.grid_max, std::abs(a(x) - b(x)));
    }
  }
  // Any point is within h/2 = 1/kSupNormIntervals of a grid point.
  est.bound = est.grid_max + slack_lipschitz / kSupNormIntervals;
  return est;
}

double sup_norm_distance(const GFunction& a, const GFunction& b) {
  return sup_norm_estimate(a, b).bound;
}

namespace {

// Chebyshev-basis coefficients -> monomial coefficients.
std::vector<double> chebyshev_to_monomial(const std::vector<double>& cheb) {
  const std::size_t n = cheb.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> t_prev(n, 0.0), t_cur(n, 0.0);
  t_prev[0] = 1.0;  // T_0
  if (n > 1) t_cur[1] = 1.0;  // T_1
  out[0] += cheb[0];
  if (n > 1) out[1] += cheb[1];
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<double> t_next(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) t_next[j + 1] += 2.0 * t_cur[j];
    for (std::size_t j = 0; j < n; ++j) t_next[j] -= t_prev[j];
    for (std::size_t j = 0; j < n; ++j) out[j] += cheb[k] * t_next[j];
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return out;
}

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

struct LevelledSolution {
  std::vector<double> cheb;
  double levelled = 0.0;
};

LevelledSolution solve_reference(const std::vector<int>& ref, const std::vector<double>& xs,
                                 const std::vector<double>& fx, int degree) {
  const int n = degree + 2;
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const double x = xs[static_cast<std::size_t>(ref[static_cast<std::size_t>(i)])];
    double t0 = 1.0, t1 = x;
    for (int k = 0; k <= degree; ++k) {
      if (k == 0) {
        a(i, k) = 1.0;
      } else if (k == 1) {
        a(i, k) = x;
      } else {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
        a(i, k) = t2;
      }
    }
    a(i, n - 1) = (i % 2 == 0) ? 1.0 : -1.0;
    rhs(i) = fx[static_cast<std::size_t>(ref[static_cast<std::size_t>(i)])];
  }
  const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);
  LevelledSolution out;
  out.cheb.assign(sol.data(), sol.data() + degree + 1);
  out.levelled = sol(n - 1);
  return out;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

ChebyshevApproximation chebyshev_approximate(const GFunction& g, int degree) {
  if (degree < 0) throw DomainError("chebyshev_approximate: degree must be >= 0");
  if (degree > 40) throw DomainError("chebyshev_approximate: degree above 40 is not supported");

  const int grid_n = kRemezIntervals;
  std::vector<double> xs(static_cast<std::size_t>(grid_n) + 1), fx(xs.size());
  for (int i = 0; i <= grid_n; ++i) {
    xs[static_cast<std::size_t>(i)] = grid_point(i, grid_n);
    fx[static_cast<std::size_t>(i)] = g(xs[static_cast<std::size_t>(i)]);
  }

  // Initial reference: grid points nearest the Chebyshev extrema.
  const int npts = degree + 2;
  std::vector<int> ref(static_cast<std::size_t>(npts));
  for (int j = 0; j < npts; ++j) {
    const double x = -std::cos(M_PI * j / (npts - 1));
    int idx = static_cast<int>(std::lround((x + 1.0) * grid_n / 2.0));
    idx = std::clamp(idx, 0, grid_n);
    if (j > 0 && idx <= ref[static_cast<std::size_t>(j - 1)]) idx = ref[static_cast<std::size_t>(j - 1)] + 1;
    ref[static_cast<std::size_t>(j)] = idx;
  }

  std::vector<double> best_cheb;
  double best_err = std::numeric_limits<double>::infinity();
  double best_levelled = 0.0;
  std::vector<double> err(xs.size());
  int iter = 0;
  for (; iter < 200; ++iter) {
    const LevelledSolution sol = solve_reference(ref, xs, fx, degree);
    double max_err = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      err[i] = fx[i] - clenshaw(sol.cheb, xs[i]);
      if (std::abs(err[i]) > max_err) {
        max_err = std::abs(err[i]);
        arg = i;
      }
    }
    if (max_err < best_err) {
      best_err = max_err;
      best_cheb = sol.cheb;
      best_levelled = std::abs(sol.levelled);
    }
    const double lev = std::abs(sol.levelled);
    if (max_err <= 1e-14 || max_err - lev <= 1e-13 * max_err) break;

    // Multi-point exchange: one extremum per sign run, dropping points below
    // the levelled error, then a window of npts alternating points that holds
    // the global maximum.
    std::vector<int> cand;
    int run_sign = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const int s = sign_of(err[i]);
      if (s == 0) continue;
      if (s != run_sign) {
        cand.push_back(static_cast<int>(i));
        run_sign = s;
      } else if (std::abs(err[i]) > std::abs(err[static_cast<std::size_t>(cand.back())])) {
        cand.back() = static_cast<int>(i);
      }
    }
    std::vector<int> kept;
    for (int c : cand) {
      if (std::abs(err[static_cast<std::size_t>(c)]) < lev) continue;
      if (!kept.empty() &&
          sign_of(err[static_cast<std::size_t>(kept.back())]) == sign_of(err[static_cast<std::size_t>(c)])) {
        if (std::abs(err[static_cast<std::size_t>(c)]) > std::abs(err[static_cast<std::size_t>(kept.back())])) {
          kept.back() = c;
        }
        continue;
      }
      kept.push_back(c);
    }

    if (static_cast<int>(kept.size()) >= npts) {
      const auto pos = std::find(kept.begin(), kept.end(), static_cast<int>(arg));
      int center = pos == kept.end() ? 0 : static_cast<int>(pos - kept.begin());
      int start = std::clamp(center - npts + 1, 0, static_cast<int>(kept.size()) - npts);
      if (pos == kept.end()) {
        // Global max merged away; keep the window with the largest total error.
        double best = -1.0;
        for (int s = 0; s + npts <= static_cast<int>(kept.size()); ++s) {
          double tot = 0.0;
          for (int j = 0; j < npts; ++j) tot += std::abs(err[static_cast<std::size_t>(kept[static_cast<std::size_t>(s + j)])]);
          if (tot > best) {
            best = tot;
            start = s;
          }
        }
      }
      std::vector<int> next(kept.begin() + start, kept.begin() + start + npts);
      if (next == ref) break;
      ref = std::move(next);
      continue;
    }

    // Single-point exchange of the global maximum, preserving alternation of
    // the reference sign pattern (-1)^i sign(E).
    const int e_sign = sol.levelled >= 0 ? 1 : -1;
    auto ref_sign = [&](int i) { return (i % 2 == 0 ? 1 : -1) * e_sign; };
    const int s_star = sign_of(err[arg]);
    const int a_idx = static_cast<int>(arg);
    if (std::find(ref.begin(), ref.end(), a_idx) != ref.end()) break;
    if (a_idx < ref.front()) {
      if (s_star == ref_sign(0)) {
        ref.front() = a_idx;
      } else {
        ref.pop_back();
        ref.insert(ref.begin(), a_idx);
      }
    } else if (a_idx > ref.back()) {
      if (s_star == ref_sign(npts - 1)) {
        ref.back() = a_idx;
      } else {
        ref.erase(ref.begin());
        ref.push_back(a_idx);
      }
    } else {
      const int hi = static_cast<int>(std::upper_bound(ref.begin(), ref.end(), a_idx) - ref.begin());
      const int lo = hi - 1;
      if (s_star == ref_sign(lo)) {
        ref[static_cast<std::size_t>(lo)] = a_idx;
      } else {
        ref[static_cast<std::size_t>(hi)] = a_idx;
      }
    }
  }

  ChebyshevApproximation out{GFunction::polynomial(chebyshev_to_monomial(best_cheb)), 0.0,
                             best_levelled, iter + 1};
  out.sup_norm = sup_norm_distance(g, out.polynomial);
  return out;
}

}  // namespace mfl
