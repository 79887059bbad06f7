#include "regdecomp/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "seminorm_detail.hpp"

namespace regdecomp {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

constexpr double kNormSlack = 1e-12;

void check_greedy_family(const SeminormFamily& family) {
  if (family.kind() == FamilyKind::kHoelder &&
      !(Exponent(2.0) <= family.hoelder_q())) {
    throw precondition_error(
        "greedy decomposition needs family members inside the unit 2-ball; "
        "holder(q) qualifies only for q >= 2");
  }
}

}  // namespace

GreedyDecomposition greedy_decompose(const StepTensor& a,
                                     const SeminormFamily& family, int k,
                                     const Mode& mode) {
  require(k >= 1, "k must be >= 1");
  require(a.measure() == Measure::kProbability,
          "greedy decomposition acts on Probability-measure tensors");
  require(lp_norm(a, 2.0) <= 1.0 + kNormSlack,
          "input must lie in the unit 2-ball");
  check_greedy_family(family);

  double threshold = 1.0 / std::sqrt(static_cast<double>(k));
  GreedyDecomposition out{{}, a, k, true, 0.0};
  for (;;) {
    OracleResult r = best_response(family, out.residual, mode);
    out.certified = out.certified && r.exact;
    if (r.value < threshold ||
        out.terms.size() >= static_cast<std::size_t>(k)) {
      out.residual_r_bound = r.value;
      break;
    }
    double coef = inner_product(out.residual, r.witness);
    out.residual -= coef * StepTensor(r.witness);
    out.terms.push_back(GreedyTerm{coef, std::move(r.witness)});
  }
  return out;
}

PipelineApprox weak_banach_approx(const StepTensor& w, const Exponent& p,
                                  const SeminormFamily& family, double epsilon,
                                  const Mode& mode) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(!(p <= Exponent(1.0)), "pipeline needs p > 1");
  require(family.kind() == FamilyKind::kCut ||
              family.kind() == FamilyKind::kRectangle,
          "pipeline families are cut or rectangle");
  require(w.measure() == Measure::kProbability,
          "pipeline acts on Probability-measure tensors");
  require(lp_norm(w, p) <= 1.0 + kNormSlack,
          "input must lie in the unit p-ball");

  // Threshold level c with c^(1 - p) = eps; the tail is then eps-small in
  // L^1 and the bounded part is c-bounded, so bounded/c sits in the 2-ball.
  double c;
  if (p.is_infinite()) {
    c = 1.0;
  } else {
    c = std::pow(epsilon, 1.0 / (1.0 - p.value()));
  }
  double tail_bound = 0.0;
  StepTensor bounded = w;
  StepTensor tail = StepTensor::zeros(w.order(), w.resolution(), w.measure());
  if (!p.is_infinite()) {
    for (std::size_t i = 0; i < bounded.cell_count(); ++i) {
      if (std::abs(bounded[i]) > c) {
        tail[i] = bounded[i];
        bounded[i] = 0.0;
      }
    }
    tail_bound = epsilon;
  }

  const double k_real = std::ceil((c / epsilon) * (c / epsilon));
  if (!(k_real <= static_cast<double>(detail::kEnumerationBudget))) {
    throw budget_error("pipeline term budget k = ceil((c/eps)^2) exceeds the step budget");
  }
  int k = static_cast<int>(k_real);
  StepTensor scaled = (1.0 / c) * StepTensor(bounded);
  GreedyDecomposition dec = greedy_decompose(scaled, family, k, mode);

  StepTensor approx = StepTensor::zeros(w.order(), w.resolution(), w.measure());
  for (const auto& term : dec.terms) {
    approx += (c * term.coefficient) * StepTensor(term.witness);
  }
  double measured = r_seminorm(family, w - approx, mode);
  return PipelineApprox{std::move(bounded),
                        std::move(approx),
                        c,
                        std::move(dec.terms),
                        tail_bound + c * dec.residual_r_bound,
                        measured,
                        dec.certified};
}

namespace {

using Partition = std::vector<std::vector<int>>;

std::vector<int> part_index_of(const Partition& parts, int n) {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    require(!parts[p].empty(), "partition parts must be nonempty");
    for (int i : parts[p]) {
      require(i >= 0 && i < n, "partition index out of range");
      require(owner[static_cast<std::size_t>(i)] == -1,
              "partition parts overlap");
      owner[static_cast<std::size_t>(i)] = static_cast<int>(p);
    }
  }
  for (int i = 0; i < n; ++i) {
    require(owner[static_cast<std::size_t>(i)] != -1,
            "partition does not cover every index");
  }
  return owner;
}

// Split every part of P by the distinct axis-slice patterns of the witness.
Partition refine_by_witness(const Partition& parts, const StepTensor& witness) {
  int n = witness.resolution();
  int l = witness.order();
  std::size_t N = static_cast<std::size_t>(n);
  // slice signature of index i on each axis, all axes concatenated
  std::vector<std::vector<double>> signature(N);
  const auto& x = witness.values();
  std::size_t cells = witness.cell_count();
  std::vector<std::size_t> stride(static_cast<std::size_t>(l), 1);
  for (int axis = l - 2; axis >= 0; --axis) {
    stride[static_cast<std::size_t>(axis)] =
        stride[static_cast<std::size_t>(axis + 1)] * N;
  }
  for (std::size_t i = 0; i < N; ++i) {
    auto& sig = signature[i];
    sig.reserve(static_cast<std::size_t>(l) * cells / N);
    for (int axis = 0; axis < l; ++axis) {
      std::size_t st = stride[static_cast<std::size_t>(axis)];
      for (std::size_t flat = 0; flat < cells; ++flat) {
        if ((flat / st) % N == i) sig.push_back(x[flat]);
      }
    }
  }
  Partition refined;
  for (const auto& part : parts) {
    std::map<std::vector<double>, std::vector<int>> buckets;
    for (int i : part) buckets[signature[static_cast<std::size_t>(i)]].push_back(i);
    for (auto& [sig, members] : buckets) refined.push_back(std::move(members));
  }
  std::sort(refined.begin(), refined.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  return refined;
}

}  // namespace

StepTensor partition_average(const StepTensor& w,
                             const std::vector<std::vector<int>>& parts) {
  require(w.order() == 2, "partition averaging is defined for order 2");
  int n = w.resolution();
  std::vector<int> owner = part_index_of(parts, n);
  std::size_t m = parts.size();
  std::size_t N = static_cast<std::size_t>(n);
  std::vector<double> sums(m * m, 0.0);
  std::vector<double> counts(m * m, 0.0);
  const auto& x = w.values();
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      std::size_t block = static_cast<std::size_t>(owner[i]) * m +
                          static_cast<std::size_t>(owner[j]);
      sums[block] += x[i * N + j];
      counts[block] += 1.0;
    }
  }
  StepTensor out = StepTensor::zeros(2, n, w.measure());
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      std::size_t block = static_cast<std::size_t>(owner[i]) * m +
                          static_cast<std::size_t>(owner[j]);
      out[i * N + j] = sums[block] / counts[block];
    }
  }
  return out;
}

StrongDecomposition strong_decompose(
    const StepTensor& w, const SeminormFamily& family, double epsilon,
    const std::function<double(double, int)>& h, const Mode& mode) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(w.order() == 2, "strong decomposition is defined for order 2");
  require(w.measure() == Measure::kProbability,
          "strong decomposition acts on Probability-measure tensors");
  require(lp_norm(w, 2.0) <= 1.0 + kNormSlack,
          "input must lie in the unit 2-ball");
  check_greedy_family(family);

  int n = w.resolution();
  Partition parts(1);
  for (int i = 0; i < n; ++i) parts[0].push_back(i);

  std::int64_t schedule_k = 4;
  int rounds = 0;
  for (;;) {
    ++rounds;
    int m = static_cast<int>(parts.size());
    double budget = h(epsilon, m);
    require(budget > 0.0 && budget < 1.0, "h(epsilon, m) must lie in (0, 1)");
    std::int64_t k_needed = static_cast<std::int64_t>(
        std::ceil(1.0 / (budget * budget)));
    std::int64_t k = std::max(schedule_k, k_needed);
    if (k > static_cast<std::int64_t>(detail::kEnumerationBudget)) {
      throw budget_error("strong decomposition round needs k = " +
                         std::to_string(k) + ", budget is " +
                         std::to_string(detail::kEnumerationBudget));
    }

    StepTensor y = partition_average(w, parts);
    StepTensor u = w - y;
    GreedyDecomposition dec =
        greedy_decompose(u, family, static_cast<int>(k), mode);
    StepTensor w_prime = w - dec.residual;
    double l2_gap = lp_norm(w_prime - y, 2.0);
    if (dec.residual_r_bound <= budget && l2_gap <= epsilon) {
      return StrongDecomposition{std::move(w_prime), std::move(y), m,
                                 dec.residual_r_bound, l2_gap, rounds,
                                 dec.certified};
    }

    Partition refined = parts;
    for (const auto& term : dec.terms) {
      refined = refine_by_witness(refined, term.witness);
    }
    require(refined.size() > parts.size(),
            "strong decomposition round made no partition progress");
    parts = std::move(refined);
    schedule_k *= 2;
  }
}

}  // namespace regdecomp
