#include "regdecomp/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "seminorm_detail.hpp"

namespace regdecomp {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw precondition_error(msg);
}

constexpr double kNormSlack = 1e-9;

// (sum_j w |v_j|^p)^(1/p) with a max rescale, or max |v_j| for p = inf.
double vector_lp(const std::vector<double>& v, const Exponent& p,
                 double weight) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (p.is_infinite() || peak == 0.0) return peak;
  double sum = 0.0;
  for (double x : v) sum += weight * std::pow(std::abs(x) / peak, p.value());
  return peak * std::pow(sum, 1.0 / p.value());
}

// The threshold level K solving K^(1-p/p') = eps, i.e. K = eps^(p'/(p'-p)).
double threshold_level(const Exponent& p, const Exponent& p_prime,
                       double epsilon) {
  if (p.is_infinite()) return 1.0;
  return std::pow(epsilon, p_prime.value() / (p_prime.value() - p.value()));
}

// Integer ceiling with a one-ulp-scale nudge so exact real values such as
// 0.1^-1 = 10 do not round up through floating-point excess.
double nudged_ceil(double x) { return std::ceil(x - 1e-9 * std::max(1.0, x)); }

}  // namespace

TruncationSplit threshold_split(const StepTensor& f, const Exponent& p,
                                const Exponent& p_prime, double epsilon) {
  require(f.measure() == Measure::kProbability,
          "threshold_split requires the probability measure");
  require(p_prime < p, "threshold_split requires p > p_prime");
  require(epsilon > 0.0, "threshold_split requires epsilon > 0");
  require(lp_norm(f, p) <= 1.0 + kNormSlack,
          "threshold_split input must lie in the unit p-ball");

  const double level = threshold_level(p, p_prime, epsilon);
  StepTensor bounded = f;
  StepTensor tail = StepTensor::zeros(f.order(), f.resolution(), f.measure());
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    if (std::abs(f[i]) > level) {
      tail[i] = f[i];
      bounded[i] = 0.0;
    }
  }
  return TruncationSplit{std::move(bounded), std::move(tail), level, epsilon};
}

namespace {

struct FactorSplit {
  std::vector<double> kept;   // entries with |f| <= level
  std::vector<double> spill;  // the rest
  bool has_spill = false;
};

FactorSplit split_factor(const std::vector<double>& f, double level) {
  FactorSplit out;
  out.kept.assign(f.size(), 0.0);
  out.spill.assign(f.size(), 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (std::abs(f[j]) > level) {
      out.spill[j] = f[j];
      out.has_spill = true;
    } else {
      out.kept[j] = f[j];
    }
  }
  return out;
}

bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

RankOneSplit rank1_split(const std::vector<std::vector<double>>& factors,
                         const Exponent& p, const Exponent& s, double epsilon) {
  require(!factors.empty(), "rank1_split needs at least one factor");
  require(s < p, "rank1_split requires p > s");
  require(epsilon > 0.0, "rank1_split requires epsilon > 0");
  const std::size_t order = factors.size();
  const std::size_t n = factors[0].size();
  require(n > 0, "rank1_split factors must be nonempty");
  const double weight = 1.0 / static_cast<double>(n);
  for (const auto& f : factors) {
    require(f.size() == n, "rank1_split factors must share one length");
    require(vector_lp(f, p, weight) <= 1.0 + kNormSlack,
            "rank1_split factors must lie in the unit p-ball");
  }
  if (order >= 64 ||
      (std::size_t{1} << order) > detail::kEnumerationBudget) {
    throw budget_error("rank1_split term count 2^l exceeds the step budget");
  }

  RankOneSplit out;

  if (order == 1) {
    // Base case: a plain threshold split of the single factor.
    const double level = threshold_level(p, s, epsilon);
    FactorSplit parts = split_factor(factors[0], level);
    out.bound_constant = level;
    if (!all_zero(parts.kept) || !parts.has_spill) {
      double sup = vector_lp(parts.kept, Exponent::infinity(), weight);
      out.terms.push_back(RankOneTerm{RankOneTag::kBounded,
                                      {std::move(parts.kept)}, sup});
    }
    if (parts.has_spill) {
      double snorm = vector_lp(parts.spill, s, weight);
      out.terms.push_back(
          RankOneTerm{RankOneTag::kSmall, {std::move(parts.spill)}, snorm});
    }
    return out;
  }

  // Two-stage split per axis. Stage one truncates p -> p' at level c1 with
  // tail delta-small in p'; stage two truncates that tail p' -> s at level
  // delta*c2 with tail delta*eta-small in s. Both stages keep cells of the
  // original factor, so the combined head is the factor below
  // max(c1, delta*c2) and the residue above it carries the stacked
  // certificate ||residue||_s <= delta*eta = eps/(3*c1) <= eps.
  const double p_prime = 2.0 / (s.reciprocal() + p.reciprocal());
  const double delta = std::sqrt(epsilon / 3.0);
  const double c1 =
      p.is_infinite()
          ? 1.0
          : std::max(1.0, std::pow(delta, p_prime / (p_prime - p.value())));
  const double eta = epsilon / (3.0 * c1 * delta);
  const double c2 = std::pow(eta, s.value() / (s.value() - p_prime));
  const double level = std::max(c1, delta * c2);

  std::vector<FactorSplit> axes;
  axes.reserve(order);
  for (const auto& f : factors) axes.push_back(split_factor(f, level));

  out.bound_constant = 1.0;
  for (std::size_t i = 0; i < order; ++i) out.bound_constant *= level;

  for (std::size_t mask = 0; mask < (std::size_t{1} << order); ++mask) {
    std::vector<std::vector<double>> picked;
    picked.reserve(order);
    bool zero = false;
    for (std::size_t i = 0; i < order && !zero; ++i) {
      const bool spill = (mask >> i) & 1u;
      const auto& piece = spill ? axes[i].spill : axes[i].kept;
      if ((spill && !axes[i].has_spill) || all_zero(piece)) {
        zero = true;
      } else {
        picked.push_back(piece);
      }
    }
    if (zero && mask != 0) continue;
    if (zero) {
      // Zero product tensor: keep one bounded zero term only if nothing
      // else survives, so the sum still reconstructs the input.
      continue;
    }
    double certificate = 1.0;
    if (mask == 0) {
      for (const auto& g : picked) {
        certificate *= vector_lp(g, Exponent::infinity(), weight);
      }
      out.terms.push_back(
          RankOneTerm{RankOneTag::kBounded, std::move(picked), certificate});
    } else {
      for (const auto& g : picked) certificate *= vector_lp(g, s, weight);
      out.terms.push_back(
          RankOneTerm{RankOneTag::kSmall, std::move(picked), certificate});
    }
  }

  if (out.terms.empty()) {
    out.terms.push_back(RankOneTerm{
        RankOneTag::kBounded,
        std::vector<std::vector<double>>(order, std::vector<double>(n, 0.0)),
        0.0});
  }
  return out;
}

std::int64_t k_bound(const Exponent& p, const Exponent& q, double epsilon) {
  require(!p.is_infinite(), "k_bound requires finite p");
  require(p < q, "k_bound requires q > p");
  require(epsilon > 0.0 && epsilon <= 1.0,
          "k_bound requires epsilon in (0, 1]");

  double k_real = 0.0;
  if (q.is_infinite()) {
    k_real = nudged_ceil(std::pow(epsilon, -p.value()));
  } else {
    const double ratio = q.value() / p.value();
    const double target = std::pow(epsilon, q.value()) * (ratio - 1.0);
    k_real = nudged_ceil(std::pow(target, 1.0 / (1.0 - ratio)));
  }
  if (!(k_real < 9.0e18)) {
    throw budget_error("k_bound does not fit in a 64-bit integer");
  }
  auto k = static_cast<std::int64_t>(k_real);
  if (k < 1) k = 1;
  if (!q.is_infinite()) {
    const double ratio = q.value() / p.value();
    const double target = std::pow(epsilon, q.value()) * (ratio - 1.0);
    while (std::pow(static_cast<double>(k), 1.0 - ratio) >
           target * (1.0 + 1e-12)) {
      ++k;
    }
  }
  return k;
}

SparsifyResult top_k_sparsify(const StepTensor& x, const Exponent& p,
                              const Exponent& q, double epsilon) {
  require(x.measure() == Measure::kCounting,
          "top_k_sparsify requires the counting measure");
  require(lp_norm(x, p) <= 1.0 + kNormSlack,
          "top_k_sparsify input must lie in the unit p-ball");
  const std::int64_t k = k_bound(p, q, epsilon);

  std::vector<std::int64_t> order(x.cell_count());
  std::iota(order.begin(), order.end(), std::int64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::int64_t a, std::int64_t b) {
                     return std::abs(x[static_cast<std::size_t>(a)]) >
                            std::abs(x[static_cast<std::size_t>(b)]);
                   });

  std::vector<std::int64_t> support;
  StepTensor sparse = StepTensor::zeros(x.order(), x.resolution(), x.measure());
  for (std::int64_t i = 0; i < k && i < static_cast<std::int64_t>(order.size());
       ++i) {
    const auto flat = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
    if (x[flat] == 0.0) break;
    support.push_back(order[static_cast<std::size_t>(i)]);
    sparse[flat] = x[flat];
  }
  std::sort(support.begin(), support.end());

  const double err = lp_norm(x - sparse, q);
  return SparsifyResult{std::move(support), std::move(sparse), k, err};
}

}  // namespace regdecomp
