#include "mfl/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mfl/error.hpp"
#include "mfl/symmetric_pspin.hpp"

namespace mfl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_pm_one(const std::vector<std::int8_t>& v, const char* what) {
  for (auto x : v) {
    if (x != 1 && x != -1) throw DomainError(std::string(what) + " entries must be exactly +1 or -1");
  }
}

double int_pow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

ModelSpec ModelSpec::scalar(GFunction g) { return ModelSpec(ScalarMeanField{std::move(g)}); }

ModelSpec ModelSpec::pspin(int p) {
  if (p < 1) throw DomainError("p-spin model requires p >= 1");
  return ModelSpec(PSpinPlain{p});
}

ModelSpec ModelSpec::pspin_tilde(int k) {
  if (k < 1) throw DomainError("symmetrized p-spin model requires k >= 1");
  if (k > 20) throw DomainError("symmetrized p-spin model supports k <= 20");
  return ModelSpec(PSpinTilde{k});
}

ModelSpec ModelSpec::random_field(std::vector<std::int8_t> h) {
  if (h.empty()) throw DomainError("random field model needs at least one site");
  check_pm_one(h, "random field");
  return ModelSpec(RandomFieldCW{std::move(h)});
}

ModelSpec ModelSpec::hopfield(int patterns, std::vector<std::int8_t> xi) {
  if (patterns < 1) throw DomainError("Hopfield model requires M >= 1 patterns");
  if (xi.empty() || xi.size() % static_cast<std::size_t>(patterns) != 0) {
    throw DomainError("Hopfield pattern matrix size is not a multiple of M");
  }
  check_pm_one(xi, "Hopfield pattern");
  return ModelSpec(Hopfield{patterns, std::move(xi)});
}

std::string ModelSpec::kind() const {
  return std::visit(Overloaded{[](const ScalarMeanField&) { return std::string("scalar"); },
                               [](const PSpinPlain&) { return std::string("pspin"); },
                               [](const PSpinTilde&) { return std::string("pspin-tilde"); },
                               [](const RandomFieldCW&) { return std::string("rfcw"); },
                               [](const Hopfield&) { return std::string("hopfield"); }},
                    rep_);
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{[&](const ScalarMeanField& s) { os << "scalar g=" << s.g.describe(); },
                        [&](const PSpinPlain& s) { os << "pspin p=" << s.p; },
                        [&](const PSpinTilde& s) { os << "pspin-tilde k=" << s.k; },
                        [&](const RandomFieldCW& s) { os << "rfcw N=" << s.h.size(); },
                        [&](const Hopfield& s) {
                          os << "hopfield M=" << s.patterns
                             << " N=" << s.xi.size() / static_cast<std::size_t>(s.patterns);
                        }},
             rep_);
  return os.str();
}

int ModelSpec::dimension() const {
  if (std::holds_alternative<RandomFieldCW>(rep_)) return 2;
  if (const auto* h = std::get_if<Hopfield>(&rep_)) return h->patterns;
  return 1;
}

std::optional<int> ModelSpec::fixed_size() const {
  if (const auto* r = std::get_if<RandomFieldCW>(&rep_)) return static_cast<int>(r->h.size());
  if (const auto* h = std::get_if<Hopfield>(&rep_)) {
    return static_cast<int>(h->xi.size() / static_cast<std::size_t>(h->patterns));
  }
  return std::nullopt;
}

void ModelSpec::check_system_size(int n) const {
  if (n < 1) throw DomainError("system size must be >= 1");
  if (const auto f = fixed_size(); f && *f != n) {
    throw DomainError("model disorder covers " + std::to_string(*f) + " sites, not " +
                      std::to_string(n));
  }
  if (const auto* t = std::get_if<PSpinTilde>(&rep_); t && t->k >= n) {
    throw DomainError("symmetrized p-spin model requires k < N (k=" + std::to_string(t->k) +
                      ", N=" + std::to_string(n) + ")");
  }
}

void ModelSpec::check_block_size(int n) const {
  if (n < 1) throw DomainError("split blocks must be nonempty");
  if (const auto* t = std::get_if<PSpinTilde>(&rep_); t && t->k >= n) {
    throw DomainError("symmetrized p-spin block of " + std::to_string(n) +
                      " sites is too small for k=" + std::to_string(t->k));
  }
}

double ModelSpec::energy(std::span<const long> sums, int n) const {
  const double nd = static_cast<double>(n);
  return std::visit(
      Overloaded{
          [&](const ScalarMeanField& s) { return -nd * s.g(static_cast<double>(sums[0]) / nd); },
          [&](const PSpinPlain& s) { return -nd * int_pow(static_cast<double>(sums[0]) / nd, s.p); },
          [&](const PSpinTilde& s) { return tilde_hamiltonian(n, sums[0], s.k); },
          [&](const RandomFieldCW&) {
            const double mp = static_cast<double>(sums[0]) / nd;
            const double mm = static_cast<double>(sums[1]) / nd;
            const double m = mp + mm;
            return -nd * (m * m - (mp - mm));
          },
          [&](const Hopfield& h) {
            double g = 0.0;
            for (int mu = 0; mu < h.patterns; ++mu) {
              const double m = static_cast<double>(sums[static_cast<std::size_t>(mu)]) / nd;
              g += m * m;
            }
            return -nd * g;
          }},
      rep_);
}

std::vector<SiteClass> ModelSpec::classes(int begin, int end) const {
  if (begin < 0 || end <= begin) throw DomainError("classes: empty site range");
  if (const auto f = fixed_size(); f && end > *f) {
    throw DomainError("classes: site range exceeds the disorder length");
  }
  if (const auto* r = std::get_if<RandomFieldCW>(&rep_)) {
    int plus = 0;
    for (int i = begin; i < end; ++i) plus += r->h[static_cast<std::size_t>(i)] > 0;
    std::vector<SiteClass> out;
    if (plus > 0) out.push_back({plus, {1, 0}});
    if (end - begin - plus > 0) out.push_back({end - begin - plus, {0, 1}});
    return out;
  }
  if (const auto* h = std::get_if<Hopfield>(&rep_)) {
    const int n = *fixed_size();
    std::map<std::vector<int>, int> groups;
    for (int i = begin; i < end; ++i) {
      std::vector<int> sig(static_cast<std::size_t>(h->patterns));
      // Gauge: (xi_i, sigma_i) -> (-xi_i, -sigma_i) leaves H invariant, so
      // columns are canonicalized to a leading +1.
      const int flip = h->xi[static_cast<std::size_t>(i)] > 0 ? 1 : -1;
      for (int mu = 0; mu < h->patterns; ++mu) {
        sig[static_cast<std::size_t>(mu)] =
            flip * h->xi[static_cast<std::size_t>(mu) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
      }
      ++groups[sig];
    }
    std::vector<SiteClass> out;
    for (auto& [sig, count] : groups) out.push_back({count, sig});
    return out;
  }
  return {SiteClass{end - begin, {1}}};
}

ModelSpec ModelSpec::restrict(int begin, int end) const {
  if (begin < 0 || end <= begin) throw DomainError("restrict: empty site range");
  if (const auto* r = std::get_if<RandomFieldCW>(&rep_)) {
    if (end > static_cast<int>(r->h.size())) throw DomainError("restrict: range exceeds disorder");
    return random_field({r->h.begin() + begin, r->h.begin() + end});
  }
  if (const auto* h = std::get_if<Hopfield>(&rep_)) {
    const int n = *fixed_size();
    if (end > n) throw DomainError("restrict: range exceeds disorder");
    std::vector<std::int8_t> xi;
    xi.reserve(static_cast<std::size_t>(h->patterns) * static_cast<std::size_t>(end - begin));
    for (int mu = 0; mu < h->patterns; ++mu) {
      const auto row = h->xi.begin() + static_cast<std::ptrdiff_t>(mu) * n;
      xi.insert(xi.end(), row + begin, row + end);
    }
    return hopfield(h->patterns, std::move(xi));
  }
  return *this;
}

double ModelSpec::bound() const {
  return std::visit(Overloaded{[](const ScalarMeanField& s) { return s.g.bound(); },
                               [](const PSpinPlain&) { return 1.0; },
                               [](const PSpinTilde&) { return 1.0; },
                               [](const RandomFieldCW&) { return 2.0; },
                               [](const Hopfield& h) { return static_cast<double>(h.patterns); }},
                    rep_);
}

bool ModelSpec::convex() const {
  return std::visit(Overloaded{[](const ScalarMeanField& s) { return s.g.is_convex(); },
                               [](const PSpinPlain& s) { return s.p % 2 == 0 || s.p == 1; },
                               [](const PSpinTilde&) { return false; },
                               [](const RandomFieldCW&) { return true; },
                               [](const Hopfield&) { return true; }},
                    rep_);
}

bool ModelSpec::condition_guaranteed() const {
  return convex() || std::holds_alternative<PSpinTilde>(rep_);
}

std::optional<GFunction> ModelSpec::limit_g() const {
  if (const auto* s = std::get_if<ScalarMeanField>(&rep_)) return s->g;
  if (const auto* p = std::get_if<PSpinPlain>(&rep_)) return GFunction::monomial(p->p);
  if (const auto* t = std::get_if<PSpinTilde>(&rep_)) return GFunction::monomial(t->k);
  return std::nullopt;
}

double hamiltonian_density(const ModelSpec& model, const OrderParameterPoint& point,
                           std::optional<int> n) {
  if (static_cast<int>(point.values.size()) != model.dimension()) {
    throw DomainError("order-parameter point has dimension " + std::to_string(point.values.size()) +
                      ", model expects " + std::to_string(model.dimension()));
  }
  for (double v : point.values) {
    if (!(v >= -1.0 && v <= 1.0)) throw DomainError("order-parameter coordinate outside [-1, 1]");
  }
  const auto& rep = model.variant();
  if (const auto* t = std::get_if<ModelSpec::PSpinTilde>(&rep)) {
    if (!n) throw DomainError("symmetrized p-spin density needs the system size");
    const double s = point.values[0] * *n;
    const long spin_sum = std::lround(s);
    if (std::abs(s - static_cast<double>(spin_sum)) > 1e-9) {
      throw DomainError("magnetization not achievable at this system size");
    }
    return tilde_hamiltonian(*n, spin_sum, t->k) / *n;
  }
  return std::visit(
      Overloaded{[&](const ModelSpec::ScalarMeanField& s) { return -s.g(point.values[0]); },
                 [&](const ModelSpec::PSpinPlain& s) { return -int_pow(point.values[0], s.p); },
                 [&](const ModelSpec::PSpinTilde&) { return 0.0; },
                 [&](const ModelSpec::RandomFieldCW&) {
                   const double mp = point.values[0], mm = point.values[1];
                   return -((mp + mm) * (mp + mm) - (mp - mm));
                 },
                 [&](const ModelSpec::Hopfield&) {
                   double g = 0.0;
                   for (double m : point.values) g += m * m;
                   return -g;
                 }},
      rep);
}

}  // namespace mfl
