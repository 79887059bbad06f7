#include "regdecomp/seminorm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "parallel.hpp"
#include "seminorm_detail.hpp"

namespace regdecomp {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

void check_input(const SeminormFamily& family, const StepTensor& a) {
  require(a.measure() == Measure::kProbability,
          "seminorm families act on Probability-measure tensors");
  require(a.order() == family.order() && a.resolution() == family.resolution(),
          "tensor shape does not match the family");
}

std::vector<double> indicator_from_mask(std::uint32_t mask, int n) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) v[static_cast<std::size_t>(i)] = 1.0;
  }
  return v;
}

std::vector<double> signs_from_mask(std::uint64_t mask, int n) {
  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) v[static_cast<std::size_t>(i)] = -1.0;
  }
  return v;
}

OracleResult finish(const StepTensor& a,
                    std::vector<std::vector<double>> factors, bool exact) {
  StepTensor witness = rank1(factors, a.measure());
  double value = std::abs(inner_product(a, witness));
  return OracleResult{std::move(witness), value, exact};
}

// ---------------------------------------------------------------------------
// exact oracles

// Cut family: walk subsets A in Gray-code order keeping the column sums
// s_j = sum_{i in A} w a(i,j); the best B for a fixed A takes exactly the
// columns whose sums share the sign of the larger one-sided total. Ties keep
// the smallest (A, B) bit encoding.
OracleResult exact_cut(const StepTensor& a) {
  int n = a.resolution();
  double w = a.cell_weight();
  const auto& x = a.values();
  std::size_t N = static_cast<std::size_t>(n);

  std::vector<double> s(N, 0.0);
  double best_val = 0.0;
  std::uint32_t best_a = 0;
  std::uint32_t cur = 0;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    int bit = std::countr_zero(g);
    cur ^= std::uint32_t{1} << bit;
    double sign = (cur >> bit & 1u) ? 1.0 : -1.0;
    const double* row = x.data() + static_cast<std::size_t>(bit) * N;
    for (std::size_t j = 0; j < N; ++j) s[j] += sign * w * row[j];
    double pos = 0.0, neg = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      if (s[j] > 0.0) pos += s[j];
      else neg -= s[j];
    }
    double v = std::max(pos, neg);
    if (v > best_val || (v == best_val && cur < best_a)) {
      best_val = v;
      best_a = cur;
    }
  }

  std::fill(s.begin(), s.end(), 0.0);
  for (int i = 0; i < n; ++i) {
    if (!(best_a >> i & 1u)) continue;
    const double* row = x.data() + static_cast<std::size_t>(i) * N;
    for (std::size_t j = 0; j < N; ++j) s[j] += w * row[j];
  }
  double pos = 0.0, neg = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    if (s[j] > 0.0) pos += s[j];
    else neg -= s[j];
  }
  std::uint32_t best_b = 0;
  for (std::size_t j = 0; j < N; ++j) {
    bool take = (pos >= neg) ? (s[j] > 0.0) : (s[j] < 0.0);
    if (take) best_b |= std::uint32_t{1} << j;
  }
  return finish(a, {indicator_from_mask(best_a, n), indicator_from_mask(best_b, n)},
                true);
}

// Sign family, order 2: walk column signs in Gray-code order keeping the row
// sums; the best row signs match the row-sum signs.
OracleResult exact_sign2(const StepTensor& a) {
  int n = a.resolution();
  double w = a.cell_weight();
  const auto& x = a.values();
  std::size_t N = static_cast<std::size_t>(n);

  std::vector<double> s(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) s[i] += w * x[i * N + j];
  }
  auto score = [&] {
    double v = 0.0;
    for (std::size_t i = 0; i < N; ++i) v += std::abs(s[i]);
    return v;
  };
  double best_val = score();
  std::uint32_t best_cols = 0;
  std::uint32_t cur = 0;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    int bit = std::countr_zero(g);
    cur ^= std::uint32_t{1} << bit;
    double delta = (cur >> bit & 1u) ? -2.0 : 2.0;
    for (std::size_t i = 0; i < N; ++i) {
      s[i] += delta * w * x[i * N + static_cast<std::size_t>(bit)];
    }
    double v = score();
    if (v > best_val || (v == best_val && cur < best_cols)) {
      best_val = v;
      best_cols = cur;
    }
  }

  std::vector<double> cols = signs_from_mask(best_cols, n);
  std::vector<double> rows(N, 1.0);
  for (std::size_t i = 0; i < N; ++i) {
    double si = 0.0;
    for (std::size_t j = 0; j < N; ++j) si += w * x[i * N + j] * cols[j];
    rows[i] = si < 0.0 ? -1.0 : 1.0;
  }
  return finish(a, {rows, cols}, true);
}

// Contraction of a against fixed factors on every axis except the last;
// returns s with s[i] = sum over cells whose last coordinate is i, including
// the full cell weight.
std::vector<double> contract_leading(const StepTensor& a,
                                     const std::vector<std::vector<double>>& lead) {
  int n = a.resolution();
  int l = a.order();
  std::size_t N = static_cast<std::size_t>(n);
  const auto& x = a.values();
  double w = a.cell_weight();
  std::vector<double> s(N, 0.0);
  std::size_t cells = a.cell_count();
  std::vector<std::size_t> coord(static_cast<std::size_t>(l), 0);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    double prod = w * x[flat];
    for (int axis = l - 1; axis >= 0; --axis) {
      coord[static_cast<std::size_t>(axis)] = rem % N;
      rem /= N;
    }
    for (int axis = 0; axis + 1 < l; ++axis) {
      prod *= lead[static_cast<std::size_t>(axis)][coord[static_cast<std::size_t>(axis)]];
    }
    s[coord[static_cast<std::size_t>(l - 1)]] += prod;
  }
  return s;
}

// Sign or rectangle family at order >= 3: enumerate the leading l-1 factors
// as one (l-1)n bit string, closed form on the last axis.
OracleResult exact_multiaxis(const StepTensor& a, bool rectangle) {
  int n = a.resolution();
  int l = a.order();
  std::size_t N = static_cast<std::size_t>(n);
  int bits = n * (l - 1);

  double best_val = -1.0;
  std::uint64_t best_mask = 0;
  std::uint64_t total = std::uint64_t{1} << bits;
  std::vector<std::vector<double>> lead(static_cast<std::size_t>(l - 1));
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int axis = 0; axis + 1 < l; ++axis) {
      std::uint64_t part = mask >> (axis * n) & ((std::uint64_t{1} << n) - 1);
      lead[static_cast<std::size_t>(axis)] =
          rectangle ? indicator_from_mask(static_cast<std::uint32_t>(part), n)
                    : signs_from_mask(part, n);
    }
    std::vector<double> s = contract_leading(a, lead);
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (s[i] > 0.0) pos += s[i];
      else neg -= s[i];
    }
    double v;
    if (rectangle) {
      v = std::max(pos, neg);
    } else {
      v = pos + neg;
    }
    if (v > best_val || (v == best_val && mask < best_mask)) {
      best_val = v;
      best_mask = mask;
    }
  }

  std::vector<std::vector<double>> factors(static_cast<std::size_t>(l));
  for (int axis = 0; axis + 1 < l; ++axis) {
    std::uint64_t part = best_mask >> (axis * n) & ((std::uint64_t{1} << n) - 1);
    factors[static_cast<std::size_t>(axis)] =
        rectangle ? indicator_from_mask(static_cast<std::uint32_t>(part), n)
                  : signs_from_mask(part, n);
  }
  lead.assign(factors.begin(), factors.end() - 1);
  std::vector<double> s = contract_leading(a, lead);
  std::vector<double>& last = factors[static_cast<std::size_t>(l - 1)];
  last.assign(N, 0.0);
  if (rectangle) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (s[i] > 0.0) pos += s[i];
      else neg -= s[i];
    }
    for (std::size_t i = 0; i < N; ++i) {
      bool take = (pos >= neg) ? (s[i] > 0.0) : (s[i] < 0.0);
      last[i] = take ? 1.0 : 0.0;
    }
  } else {
    for (std::size_t i = 0; i < N; ++i) last[i] = s[i] < 0.0 ? -1.0 : 1.0;
  }
  return finish(a, std::move(factors), true);
}

// ---------------------------------------------------------------------------
// heuristic oracles

std::uint64_t restart_seed(const Mode& mode, int restart) {
  return mode.seed ^ static_cast<std::uint64_t>(restart);
}

struct Candidate {
  double value = -1.0;
  std::vector<std::vector<double>> factors;
};

void keep_better(Candidate& best, Candidate&& cand) {
  if (cand.value > best.value) best = std::move(cand);
}

// Alternating subset ascent for cut/rectangle: per axis, the closed-form
// optimal subset for a fixed target sign. Both target signs per start.
Candidate alternate_subsets(const StepTensor& a,
                            std::vector<std::vector<double>> factors) {
  int l = a.order();
  int n = a.resolution();
  std::size_t N = static_cast<std::size_t>(n);
  Candidate best;
  for (double target : {1.0, -1.0}) {
    auto f = factors;
    double prev = -1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
      bool changed = false;
      for (int axis = 0; axis < l; ++axis) {
        std::vector<double> s(N, 0.0);
        const auto& x = a.values();
        double w = a.cell_weight();
        std::size_t cells = a.cell_count();
        for (std::size_t flat = 0; flat < cells; ++flat) {
          std::size_t rem = flat;
          double prod = w * x[flat];
          std::size_t axis_coord = 0;
          for (int k = l - 1; k >= 0; --k) {
            std::size_t c = rem % N;
            rem /= N;
            if (k == axis) {
              axis_coord = c;
            } else {
              prod *= f[static_cast<std::size_t>(k)][c];
            }
          }
          s[axis_coord] += prod;
        }
        for (std::size_t i = 0; i < N; ++i) {
          double nv = target * s[i] > 0.0 ? 1.0 : 0.0;
          if (nv != f[static_cast<std::size_t>(axis)][i]) changed = true;
          f[static_cast<std::size_t>(axis)][i] = nv;
        }
      }
      StepTensor wt = rank1(f, a.measure());
      double v = target * inner_product(a, wt);
      if (!changed || v <= prev + 1e-15) {
        prev = std::max(prev, v);
        break;
      }
      prev = v;
    }
    keep_better(best, Candidate{std::abs(prev), f});
  }
  return best;
}

std::vector<double> axis_contraction(const StepTensor& a,
                                     const std::vector<std::vector<double>>& f,
                                     int axis) {
  int l = a.order();
  std::size_t N = static_cast<std::size_t>(a.resolution());
  const auto& x = a.values();
  double w = a.cell_weight();
  std::vector<double> s(N, 0.0);
  std::size_t cells = a.cell_count();
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    double prod = x[flat];
    std::size_t axis_coord = 0;
    for (int k = l - 1; k >= 0; --k) {
      std::size_t c = rem % N;
      rem /= N;
      if (k == axis) {
        axis_coord = c;
      } else {
        prod *= f[static_cast<std::size_t>(k)][c];
      }
    }
    s[axis_coord] += prod;
  }
  // fold the weight so <s, r_axis> with axis weight 1/n equals <a, prod f>
  double axis_w = static_cast<double>(N) * w;
  for (double& v : s) v *= axis_w;
  return s;
}

Candidate alternate_signs(const StepTensor& a,
                          std::vector<std::vector<double>> f) {
  int l = a.order();
  std::size_t N = static_cast<std::size_t>(a.resolution());
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool changed = false;
    for (int axis = 0; axis < l; ++axis) {
      std::vector<double> s = axis_contraction(a, f, axis);
      for (std::size_t i = 0; i < N; ++i) {
        double nv = s[i] < 0.0 ? -1.0 : 1.0;
        if (nv != f[static_cast<std::size_t>(axis)][i]) changed = true;
        f[static_cast<std::size_t>(axis)][i] = nv;
      }
    }
    if (!changed) break;
  }
  StepTensor wt = rank1(f, a.measure());
  return Candidate{std::abs(inner_product(a, wt)), std::move(f)};
}

Candidate alternate_hoelder(const StepTensor& a, const Exponent& q,
                            std::vector<std::vector<double>> f) {
  int l = a.order();
  int n = a.resolution();
  double axis_weight = 1.0 / static_cast<double>(n);
  double prev = -1.0;
  for (int sweep = 0; sweep < 128; ++sweep) {
    double val = 0.0;
    for (int axis = 0; axis < l; ++axis) {
      std::vector<double> s = axis_contraction(a, f, axis);
      detail::DualWitness dw = detail::dual_witness(s, q, axis_weight);
      f[static_cast<std::size_t>(axis)] = std::move(dw.vector);
      val = dw.value;
    }
    if (val <= prev * (1.0 + 1e-14) + 1e-300) break;
    prev = val;
  }
  StepTensor wt = rank1(f, a.measure());
  return Candidate{std::abs(inner_product(a, wt)), std::move(f)};
}

std::vector<std::vector<double>> start_factors(const SeminormFamily& family,
                                               std::uint64_t seed,
                                               bool deterministic) {
  int l = family.order();
  int n = family.resolution();
  std::size_t N = static_cast<std::size_t>(n);
  std::vector<std::vector<double>> f(static_cast<std::size_t>(l),
                                     std::vector<double>(N, 1.0));
  if (deterministic) return f;
  std::mt19937_64 rng(seed);
  for (auto& fac : f) {
    switch (family.kind()) {
      case FamilyKind::kCut:
      case FamilyKind::kRectangle:
        for (auto& v : fac) v = (rng() & 1u) ? 1.0 : 0.0;
        break;
      case FamilyKind::kSign:
        for (auto& v : fac) v = (rng() & 1u) ? 1.0 : -1.0;
        break;
      case FamilyKind::kHoelder: {
        for (auto& v : fac) {
          double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
          double u2 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
          v = std::sqrt(-2.0 * std::log(u1)) *
              std::cos(6.283185307179586 * u2);
        }
        double norm = 0.0;
        if (family.hoelder_q().is_infinite()) {
          for (double v : fac) norm = std::max(norm, std::abs(v));
        } else {
          double qv = family.hoelder_q().value();
          double m = 0.0;
          for (double v : fac) m = std::max(m, std::abs(v));
          if (m > 0.0) {
            double acc = 0.0;
            for (double v : fac) acc += std::pow(std::abs(v) / m, qv);
            norm = m * std::pow(acc / static_cast<double>(N), 1.0 / qv);
          }
        }
        if (norm > 0.0) {
          for (auto& v : fac) v /= norm;
        }
        break;
      }
    }
  }
  return f;
}

OracleResult heuristic_best_response(const SeminormFamily& family,
                                     const StepTensor& a, const Mode& mode) {
  int restarts = std::max(1, mode.restarts);
  std::vector<Candidate> results(static_cast<std::size_t>(restarts));
  detail::parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    auto f = start_factors(family, restart_seed(mode, static_cast<int>(r)),
                           r == 0);
    switch (family.kind()) {
      case FamilyKind::kCut:
      case FamilyKind::kRectangle:
        results[r] = alternate_subsets(a, std::move(f));
        break;
      case FamilyKind::kSign:
        results[r] = alternate_signs(a, std::move(f));
        break;
      case FamilyKind::kHoelder:
        if (family.hoelder_q().is_infinite()) {
          for (auto& fac : f) {
            for (auto& v : fac) v = (v >= 0.5) ? 1.0 : (v <= -0.5 ? -1.0 : 1.0);
          }
          results[r] = alternate_signs(a, std::move(f));
        } else {
          results[r] = alternate_hoelder(a, family.hoelder_q(), std::move(f));
        }
        break;
    }
  });
  Candidate best;
  for (auto& c : results) keep_better(best, std::move(c));
  if (best.factors.empty()) {
    best.factors.assign(static_cast<std::size_t>(family.order()),
                        std::vector<double>(
                            static_cast<std::size_t>(family.resolution()), 0.0));
  }
  return finish(a, std::move(best.factors), false);
}

}  // namespace

// ---------------------------------------------------------------------------

SeminormFamily::SeminormFamily(FamilyKind kind, int order, int resolution,
                               Exponent q)
    : kind_(kind), order_(order), resolution_(resolution), q_(q) {
  require(order_ >= 1, "family order must be >= 1");
  require(resolution_ >= 1, "family resolution must be >= 1");
  cell_count_for(order_, resolution_);
}

SeminormFamily SeminormFamily::cut(int resolution) {
  return SeminormFamily(FamilyKind::kCut, 2, resolution, Exponent(1.0));
}

SeminormFamily SeminormFamily::sign(int order, int resolution) {
  return SeminormFamily(FamilyKind::kSign, order, resolution, Exponent(1.0));
}

SeminormFamily SeminormFamily::hoelder(const Exponent& q, int order,
                                       int resolution) {
  return SeminormFamily(FamilyKind::kHoelder, order, resolution, q);
}

SeminormFamily SeminormFamily::rectangle(int order, int resolution) {
  return SeminormFamily(FamilyKind::kRectangle, order, resolution,
                        Exponent(1.0));
}

const Exponent& SeminormFamily::hoelder_q() const {
  require(kind_ == FamilyKind::kHoelder, "only hoelder families carry q");
  return q_;
}

std::string SeminormFamily::name() const {
  switch (kind_) {
    case FamilyKind::kCut: return "cut";
    case FamilyKind::kSign: return "sign";
    case FamilyKind::kHoelder: return "holder";
    case FamilyKind::kRectangle: return "rectangle";
  }
  return "";
}

namespace detail {

std::uint64_t exact_oracle_steps(const SeminormFamily& family) {
  int n = family.resolution();
  int l = family.order();
  auto pow2 = [](int bits) -> std::uint64_t {
    if (bits >= 63) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << bits;
  };
  switch (family.kind()) {
    case FamilyKind::kCut:
      return pow2(n);
    case FamilyKind::kSign:
    case FamilyKind::kRectangle:
      return pow2(n * std::max(1, l - 1));
    case FamilyKind::kHoelder:
      if (family.hoelder_q().is_infinite()) {
        return pow2(n * std::max(1, l - 1));
      }
      return std::numeric_limits<std::uint64_t>::max();
  }
  return std::numeric_limits<std::uint64_t>::max();
}

DualWitness dual_witness(const std::vector<double>& g, const Exponent& q,
                         double axis_weight) {
  std::size_t n = g.size();
  DualWitness out{std::vector<double>(n, 0.0), 0.0};
  double m = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double av = std::abs(g[i]);
    if (av > m) {
      m = av;
      arg = i;
    }
  }
  if (m == 0.0) return out;
  if (q.is_infinite()) {
    double val = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.vector[i] = g[i] < 0.0 ? -1.0 : 1.0;
      val += std::abs(g[i]);
    }
    out.value = val;
    return out;
  }
  double qv = q.value();
  if (qv == 1.0) {
    out.vector[arg] = (g[arg] < 0.0 ? -1.0 : 1.0) / axis_weight;
    out.value = m;
    return out;
  }
  double expo = 1.0 / (qv - 1.0);  // q* - 1
  double norm_acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double u = std::abs(g[i]) / m;
    double mag = std::pow(u, expo);
    out.vector[i] = g[i] < 0.0 ? -mag : mag;
    norm_acc += axis_weight * std::pow(mag, qv);
  }
  double norm = std::pow(norm_acc, 1.0 / qv);
  double val = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.vector[i] /= norm;
    val += axis_weight * g[i] * out.vector[i];
  }
  out.value = val;
  return out;
}

}  // namespace detail

OracleResult best_response(const SeminormFamily& family, const StepTensor& a,
                           const Mode& mode) {
  check_input(family, a);
  if (!mode.exact) return heuristic_best_response(family, a, mode);

  std::uint64_t steps = detail::exact_oracle_steps(family);
  if (family.kind() == FamilyKind::kHoelder &&
      !family.hoelder_q().is_infinite()) {
    throw budget_error(
        "holder(q) with finite q has no exact enumeration; use heuristic mode");
  }
  if (steps > detail::kEnumerationBudget) {
    throw budget_error("exact enumeration needs " + std::to_string(steps) +
                       " steps, budget is " +
                       std::to_string(detail::kEnumerationBudget));
  }
  switch (family.kind()) {
    case FamilyKind::kCut:
      return exact_cut(a);
    case FamilyKind::kRectangle:
      return a.order() == 2 ? exact_cut(a) : exact_multiaxis(a, true);
    case FamilyKind::kSign:
    case FamilyKind::kHoelder:
      return a.order() == 2 ? exact_sign2(a) : exact_multiaxis(a, false);
  }
  throw precondition_error("unknown family kind");
}

double r_seminorm(const SeminormFamily& family, const StepTensor& a,
                  const Mode& mode) {
  return best_response(family, a, mode).value;
}

double cut_norm(const StepTensor& a, const Mode& mode) {
  require(a.order() == 2, "cut norm is defined for order-2 tensors");
  return r_seminorm(SeminormFamily::cut(a.resolution()), a, mode);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> kernel_apply(const StepTensor& W,
                                 const std::vector<double>& f) {
  std::size_t n = static_cast<std::size_t>(W.resolution());
  double axis_w = 1.0;
  if (W.measure() == Measure::kProbability) axis_w = 1.0 / static_cast<double>(n);
  const auto& x = W.values();
  std::vector<double> h(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += x[i * n + j] * f[j];
    h[i] = axis_w * acc;
  }
  return h;
}

std::vector<double> kernel_apply_adjoint(const StepTensor& W,
                                         const std::vector<double>& g) {
  std::size_t n = static_cast<std::size_t>(W.resolution());
  double axis_w = 1.0;
  if (W.measure() == Measure::kProbability) axis_w = 1.0 / static_cast<double>(n);
  const auto& x = W.values();
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) u[j] += axis_w * x[i * n + j] * g[i];
  }
  return u;
}

double vector_lp(const std::vector<double>& v, const Exponent& p,
                 double axis_w) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double pv = p.value();
  double acc = 0.0;
  for (double x : v) acc += axis_w * std::pow(std::abs(x) / m, pv);
  return m * std::pow(acc, 1.0 / pv);
}

double exact_inf_to_one(const StepTensor& W) {
  int n = W.resolution();
  std::uint64_t steps = std::uint64_t{1} << n;
  if (steps > detail::kEnumerationBudget) {
    throw budget_error("exact enumeration needs " + std::to_string(steps) +
                       " steps, budget is " +
                       std::to_string(detail::kEnumerationBudget));
  }
  std::size_t N = static_cast<std::size_t>(n);
  double axis_w =
      W.measure() == Measure::kProbability ? 1.0 / static_cast<double>(N) : 1.0;
  const auto& x = W.values();
  std::vector<double> h(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) h[i] += axis_w * x[i * N + j];
  }
  auto score = [&] {
    double v = 0.0;
    for (std::size_t i = 0; i < N; ++i) v += axis_w * std::abs(h[i]);
    return v;
  };
  double best = score();
  std::uint32_t cur = 0;
  for (std::uint64_t g = 1; g < steps; ++g) {
    int bit = std::countr_zero(g);
    cur ^= std::uint32_t{1} << bit;
    double delta = (cur >> bit & 1u) ? -2.0 : 2.0;
    for (std::size_t i = 0; i < N; ++i) {
      h[i] += delta * axis_w * x[i * N + static_cast<std::size_t>(bit)];
    }
    best = std::max(best, score());
  }
  return best;
}

}  // namespace

double operator_norm(const StepTensor& W, const Exponent& p0,
                     const Exponent& q0, const Mode& mode) {
  require(W.order() == 2, "operator norms act on order-2 tensors");
  if (mode.exact) {
    require(p0.is_infinite() && !q0.is_infinite() && q0.value() == 1.0,
            "exact operator norm exists only for (inf, 1)");
    return exact_inf_to_one(W);
  }

  std::size_t n = static_cast<std::size_t>(W.resolution());
  double axis_w =
      W.measure() == Measure::kProbability ? 1.0 / static_cast<double>(n) : 1.0;
  Exponent q_dual = dual_exponent(q0);
  int restarts = std::max(1, mode.restarts);
  std::vector<double> results(static_cast<std::size_t>(restarts), 0.0);
  detail::parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    std::vector<double> f(n, 1.0);
    if (r != 0) {
      std::mt19937_64 rng(restart_seed(mode, static_cast<int>(r)));
      for (auto& v : f) {
        double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        v = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
      }
    }
    double fn = vector_lp(f, p0, axis_w);
    if (fn > 1.0) {
      for (auto& v : f) v /= fn;
    }
    double best = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      std::vector<double> h = kernel_apply(W, f);
      double val = vector_lp(h, q0, axis_w);
      if (val <= best * (1.0 + 1e-14) + 1e-300) {
        best = std::max(best, val);
        break;
      }
      best = val;
      detail::DualWitness g = detail::dual_witness(h, q_dual, axis_w);
      std::vector<double> u = kernel_apply_adjoint(W, g.vector);
      detail::DualWitness fw = detail::dual_witness(u, p0, axis_w);
      f = std::move(fw.vector);
      double check = vector_lp(f, p0, axis_w);
      if (check > 1.0) {
        for (auto& v : f) v /= check;
      }
    }
    results[r] = best;
  });
  double best = 0.0;
  for (double v : results) best = std::max(best, v);
  return best;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kMembershipTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kMembershipTol; }

bool indicator_rectangle_member(const StepTensor& r) {
  int l = r.order();
  std::size_t n = static_cast<std::size_t>(r.resolution());
  const auto& x = r.values();
  for (double v : x) {
    if (!near(v, 0.0) && !near(v, 1.0)) return false;
  }
  std::vector<std::vector<bool>> axis_hit(
      static_cast<std::size_t>(l), std::vector<bool>(n, false));
  std::size_t cells = r.cell_count();
  for (std::size_t flat = 0; flat < cells; ++flat) {
    if (near(x[flat], 0.0)) continue;
    std::size_t rem = flat;
    for (int axis = l - 1; axis >= 0; --axis) {
      axis_hit[static_cast<std::size_t>(axis)][rem % n] = true;
      rem /= n;
    }
  }
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    bool inside = true;
    for (int axis = l - 1; axis >= 0; --axis) {
      if (!axis_hit[static_cast<std::size_t>(axis)][rem % n]) inside = false;
      rem /= n;
    }
    if (!near(x[flat], inside ? 1.0 : 0.0)) return false;
  }
  return true;
}

bool sign_member(const StepTensor& r) {
  int l = r.order();
  std::size_t n = static_cast<std::size_t>(r.resolution());
  const auto& x = r.values();
  for (double v : x) {
    if (!near(std::abs(v), 1.0)) return false;
  }
  std::size_t cells = r.cell_count();
  std::vector<std::size_t> stride(static_cast<std::size_t>(l), 1);
  for (int axis = l - 2; axis >= 0; --axis) {
    stride[static_cast<std::size_t>(axis)] =
        stride[static_cast<std::size_t>(axis + 1)] * n;
  }
  double base = x[0] < 0.0 ? -1.0 : 1.0;
  std::vector<std::vector<double>> f(static_cast<std::size_t>(l),
                                     std::vector<double>(n, 1.0));
  for (int axis = 0; axis < l; ++axis) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = x[i * stride[static_cast<std::size_t>(axis)]] < 0.0 ? -1.0 : 1.0;
      f[static_cast<std::size_t>(axis)][i] = axis == 0 ? v : v * base;
    }
  }
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    double prod = 1.0;
    for (int axis = l - 1; axis >= 0; --axis) {
      prod *= f[static_cast<std::size_t>(axis)][rem % n];
      rem /= n;
    }
    if (!near(x[flat], prod)) return false;
  }
  return true;
}

bool hoelder_member(const StepTensor& r, const Exponent& q) {
  int l = r.order();
  std::size_t n = static_cast<std::size_t>(r.resolution());
  const auto& x = r.values();
  std::size_t cells = r.cell_count();
  double m = 0.0;
  std::size_t pivot = 0;
  for (std::size_t flat = 0; flat < cells; ++flat) {
    if (std::abs(x[flat]) > m) {
      m = std::abs(x[flat]);
      pivot = flat;
    }
  }
  if (m <= kMembershipTol) return true;

  std::vector<std::size_t> pivot_coord(static_cast<std::size_t>(l));
  std::vector<std::size_t> stride(static_cast<std::size_t>(l), 1);
  for (int axis = l - 2; axis >= 0; --axis) {
    stride[static_cast<std::size_t>(axis)] =
        stride[static_cast<std::size_t>(axis + 1)] * n;
  }
  std::size_t rem = pivot;
  for (int axis = l - 1; axis >= 0; --axis) {
    pivot_coord[static_cast<std::size_t>(axis)] = rem % n;
    rem /= n;
  }
  std::vector<std::vector<double>> f(static_cast<std::size_t>(l),
                                     std::vector<double>(n, 0.0));
  for (int axis = 0; axis < l; ++axis) {
    std::size_t base = pivot - pivot_coord[static_cast<std::size_t>(axis)] *
                                   stride[static_cast<std::size_t>(axis)];
    for (std::size_t i = 0; i < n; ++i) {
      f[static_cast<std::size_t>(axis)][i] =
          x[base + i * stride[static_cast<std::size_t>(axis)]];
    }
  }
  double pv = x[pivot];
  double denom = std::pow(pv, static_cast<double>(l - 1));
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t r2 = flat;
    double prod = 1.0;
    for (int axis = l - 1; axis >= 0; --axis) {
      prod *= f[static_cast<std::size_t>(axis)][r2 % n];
      r2 /= n;
    }
    if (std::abs(prod / denom - x[flat]) > kMembershipTol * std::max(1.0, m)) {
      return false;
    }
  }
  double axis_w = 1.0 / static_cast<double>(n);
  double norm_product = 1.0;
  for (int axis = 0; axis < l; ++axis) {
    const auto& fac = f[static_cast<std::size_t>(axis)];
    double norm;
    if (q.is_infinite()) {
      norm = 0.0;
      for (double v : fac) norm = std::max(norm, std::abs(v));
    } else {
      double qv = q.value();
      double fm = 0.0;
      for (double v : fac) fm = std::max(fm, std::abs(v));
      double acc = 0.0;
      for (double v : fac) acc += axis_w * std::pow(std::abs(v) / fm, qv);
      norm = fm * std::pow(acc, 1.0 / qv);
    }
    norm_product *= norm;
  }
  norm_product /= std::abs(denom);
  return norm_product <= 1.0 + kMembershipTol;
}

}  // namespace

bool family_membership(const SeminormFamily& family, const StepTensor& r) {
  check_input(family, r);
  switch (family.kind()) {
    case FamilyKind::kCut:
    case FamilyKind::kRectangle:
      return indicator_rectangle_member(r);
    case FamilyKind::kSign:
      return sign_member(r);
    case FamilyKind::kHoelder:
      return hoelder_member(r, family.hoelder_q());
  }
  return false;
}

}  // namespace regdecomp
