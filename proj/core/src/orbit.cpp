#include "regdecomp/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "parallel.hpp"
#include "seminorm_detail.hpp"

namespace regdecomp {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw precondition_error(msg);
}

void check_permutation(const BlockPermutation& g, int n) {
  require(static_cast<int>(g.perm.size()) == n,
          "permutation length must equal the resolution");
  std::vector<bool> seen(g.perm.size(), false);
  for (int v : g.perm) {
    require(v >= 0 && v < n && !seen[static_cast<std::size_t>(v)],
            "permutation must visit each index exactly once");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

constexpr int kExactResolutionCap = 8;
constexpr std::uint64_t kExactInnerCap = 1024;
constexpr std::uint64_t kStartMix = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kInnerMix = 0xd1b54a32d192ed03ULL;

std::vector<double> axis_marginals(const StepTensor& t) {
  const int n = t.resolution();
  const std::size_t slice = t.cell_count() / static_cast<std::size_t>(n);
  std::vector<double> m(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    const std::size_t base = static_cast<std::size_t>(i) * slice;
    for (std::size_t r = 0; r < slice; ++r) sum += t[base + r];
    m[static_cast<std::size_t>(i)] = sum;
  }
  return m;
}

std::vector<int> rank_order(const std::vector<double>& marginals) {
  std::vector<int> order(marginals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&marginals](int a, int b) {
    return marginals[static_cast<std::size_t>(a)] <
           marginals[static_cast<std::size_t>(b)];
  });
  return order;
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace

BlockPermutation BlockPermutation::identity(int n) {
  BlockPermutation g;
  g.perm.resize(static_cast<std::size_t>(n > 0 ? n : 0));
  std::iota(g.perm.begin(), g.perm.end(), 0);
  return g;
}

StepTensor apply_permutation(const StepTensor& t, const BlockPermutation& g) {
  check_permutation(g, t.resolution());
  const int n = t.resolution();
  const int l = t.order();
  StepTensor out = StepTensor::zeros(l, n, t.measure());
  std::vector<int> digits(static_cast<std::size_t>(l), 0);
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    std::size_t rest = flat;
    for (int ax = l - 1; ax >= 0; --ax) {
      digits[static_cast<std::size_t>(ax)] =
          static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    std::size_t image = 0;
    for (int ax = 0; ax < l; ++ax) {
      image = image * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(
                  g.perm[static_cast<std::size_t>(digits[static_cast<std::size_t>(ax)])]);
    }
    out[image] = t[flat];
  }
  return out;
}

StepTensor refine_to(const StepTensor& t, int resolution) {
  require(resolution >= t.resolution() && t.resolution() > 0 &&
              resolution % t.resolution() == 0,
          "refined resolution must be a positive multiple of the original");
  if (resolution == t.resolution()) return t;
  const int n = t.resolution();
  const int l = t.order();
  const int factor = resolution / n;
  const std::size_t cells = cell_count_for(l, resolution);
  std::vector<double> values(cells, 0.0);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rest = flat;
    std::size_t coarse = 0;
    std::size_t scale = 1;
    for (int ax = l - 1; ax >= 0; --ax) {
      const auto digit = static_cast<int>(rest % static_cast<std::size_t>(resolution));
      rest /= static_cast<std::size_t>(resolution);
      coarse += scale * static_cast<std::size_t>(digit / factor);
      scale *= static_cast<std::size_t>(n);
    }
    values[flat] = t[coarse];
  }
  return StepTensor(l, resolution, t.measure(), std::move(values));
}

namespace {

struct AlignmentProblem {
  const StepTensor& a;
  const StepTensor& b;
  const SeminormFamily& family;
  Mode inner;

  double value_of(const std::vector<int>& perm) const {
    StepTensor moved = apply_permutation(b, BlockPermutation{perm});
    moved -= a;
    return r_seminorm(family, moved, inner);
  }
};

struct LocalSearchResult {
  std::vector<int> perm;
  double value;
};

// First-improvement transposition descent; each accepted swap restarts the
// sweep. The improvement count is capped so adversarial value landscapes
// cannot stall a cover run.
LocalSearchResult descend(const AlignmentProblem& problem,
                          std::vector<int> perm) {
  const int n = static_cast<int>(perm.size());
  double best = problem.value_of(perm);
  int budget = 2 * n + 16;
  bool improved = true;
  while (improved && budget > 0 && best > 0.0) {
    improved = false;
    for (int i = 0; i < n && !improved; ++i) {
      for (int j = i + 1; j < n && !improved; ++j) {
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(j)]);
        const double v = problem.value_of(perm);
        if (v < best - 1e-12) {
          best = v;
          improved = true;
          --budget;
        } else {
          std::swap(perm[static_cast<std::size_t>(i)],
                    perm[static_cast<std::size_t>(j)]);
        }
      }
    }
  }
  return LocalSearchResult{std::move(perm), best};
}

}  // namespace

OrbitDistanceResult orbit_distance(const StepTensor& a, const StepTensor& b,
                                   const SeminormFamily& family,
                                   const Mode& mode) {
  require(a.order() == b.order() && a.measure() == b.measure(),
          "orbit_distance tensors must share order and measure");
  StepTensor ua = a;
  StepTensor ub = b;
  if (a.resolution() != b.resolution()) {
    const int unified = std::lcm(a.resolution(), b.resolution());
    ua = refine_to(a, unified);
    ub = refine_to(b, unified);
  }
  require(family.order() == ua.order() &&
              family.resolution() == ua.resolution(),
          "family shape must match the compared tensors");
  const int n = ua.resolution();

  if (mode.exact) {
    if (n > kExactResolutionCap) {
      throw budget_error(
          "exact orbit_distance enumerates n! alignments and is limited to "
          "resolution <= 8");
    }
    const AlignmentProblem problem{ua, ub, family, Mode::Exact()};
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm = perm;
    double best = problem.value_of(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double v = problem.value_of(perm);
      if (v < best) {
        best = v;
        best_perm = perm;
      }
    }
    return OrbitDistanceResult{best, BlockPermutation{std::move(best_perm)},
                               true};
  }

  Mode inner = Mode::Exact();
  if (detail::exact_oracle_steps(family) > kExactInnerCap) {
    inner = Mode::Heuristic(4, mode.seed ^ kInnerMix);
  }
  // When even the inner oracle is heuristic, descent candidates are ranked
  // with a single-start oracle and only the winning alignment is rescored
  // with the full inner mode; the reported value stays the seminorm of a
  // concrete alignment while the search runs several times faster.
  Mode scorer = inner;
  if (!inner.exact) {
    scorer = Mode::Heuristic(0, mode.seed ^ kInnerMix);
  }
  const AlignmentProblem problem{ua, ub, family, scorer};

  const int starts = 1 + std::max(0, mode.restarts);
  std::vector<LocalSearchResult> results(
      static_cast<std::size_t>(starts),
      LocalSearchResult{{}, std::numeric_limits<double>::infinity()});
  detail::parallel_for(static_cast<std::size_t>(starts), [&](std::size_t s) {
    std::vector<int> init;
    if (s == 0) {
      const std::vector<int> oa = rank_order(axis_marginals(ua));
      const std::vector<int> ob = rank_order(axis_marginals(ub));
      init.assign(static_cast<std::size_t>(n), 0);
      for (int r = 0; r < n; ++r) {
        init[static_cast<std::size_t>(ob[static_cast<std::size_t>(r)])] =
            oa[static_cast<std::size_t>(r)];
      }
    } else {
      init = random_permutation(n, mode.seed ^ (kStartMix * s));
    }
    results[s] = descend(problem, std::move(init));
  });

  std::size_t winner = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].value < results[winner].value - 1e-15) winner = s;
  }
  double value = results[winner].value;
  if (!inner.exact) {
    const AlignmentProblem full{ua, ub, family, inner};
    value = std::max(value, full.value_of(results[winner].perm));
  }
  return OrbitDistanceResult{value,
                             BlockPermutation{std::move(results[winner].perm)},
                             false};
}

CoverResult greedy_cover(const std::vector<StepTensor>& samples,
                         const SeminormFamily& family, double epsilon,
                         const Mode& mode) {
  require(epsilon > 0.0, "cover radius must be positive");
  CoverResult out;
  out.exact = mode.exact;
  if (samples.empty()) return out;
  for (const auto& s : samples) {
    require(s.same_shape(samples.front()),
            "cover samples must share one shape");
  }

  const std::size_t count = samples.size();
  std::vector<double> dist(count, 0.0);
  std::vector<int> assignment(count, 0);
  out.net.push_back(0);
  detail::parallel_for(count, [&](std::size_t i) {
    dist[i] = i == 0 ? 0.0
                     : orbit_distance(samples[i], samples[0], family, mode)
                           .distance;
  });

  for (;;) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < count; ++i) {
      if (dist[i] > dist[far]) far = i;
    }
    if (dist[far] <= epsilon) break;
    const int pos = static_cast<int>(out.net.size());
    out.net.push_back(static_cast<int>(far));
    detail::parallel_for(count, [&](std::size_t i) {
      if (i == far) {
        dist[i] = 0.0;
        assignment[i] = pos;
        return;
      }
      const double v =
          orbit_distance(samples[i], samples[far], family, mode).distance;
      if (v < dist[i]) {
        dist[i] = v;
        assignment[i] = pos;
      }
    });
  }

  out.assignment = std::move(assignment);
  out.distances = std::move(dist);
  return out;
}

InterpolatedExponents interp_exponents(const Exponent& p, const Exponent& q,
                                       double theta) {
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
  require(Exponent(1.0) < p, "p must exceed 1");
  require(Exponent(1.0) < q, "q must exceed 1");
  const Exponent p_dual = dual_exponent(p);
  require(p_dual < q, "q must exceed the dual exponent of p");

  const double rp = (1.0 - theta) * p_dual.reciprocal() + theta * q.reciprocal();
  const double rq =
      (1.0 - theta) * p.reciprocal() + theta * dual_exponent(q).reciprocal();
  auto to_exponent = [](double reciprocal) {
    return reciprocal <= 0.0 ? Exponent::infinity()
                             : Exponent(1.0 / reciprocal);
  };
  return InterpolatedExponents{to_exponent(rp), to_exponent(rq)};
}

RieszThorinReport riesz_thorin_check(const StepTensor& W, const Exponent& p,
                                     const Exponent& q, double theta,
                                     const Mode& mode) {
  require(W.order() == 2, "riesz_thorin_check requires an order-2 tensor");
  require(W.measure() == Measure::kProbability,
          "riesz_thorin_check requires the probability measure");
  require(lp_norm(W, p) <= 1.0 + 1e-9,
          "riesz_thorin_check input must lie in the unit p-ball");
  const InterpolatedExponents mid = interp_exponents(p, q, theta);

  const double lhs = operator_norm(W, mid.p_theta, mid.q_theta, mode);
  const double rhs = operator_norm(W, q, dual_exponent(q), mode);
  const double rhs_power = std::pow(rhs, theta);
  return RieszThorinReport{mid.p_theta, mid.q_theta,        lhs, rhs,
                           rhs_power,   lhs > rhs_power + 1e-3};
}

}  // namespace regdecomp
