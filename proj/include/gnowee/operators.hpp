#ifndef GNOWEE_OPERATORS_HPP
#define GNOWEE_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gnowee/design_space.hpp"
#include "gnowee/errors.hpp"
#include "gnowee/levy.hpp"
#include "gnowee/problem.hpp"
#include "gnowee/random.hpp"
#include "gnowee/tsplib.hpp"

namespace gnowee {

inline const double kGoldenRatio = (1.0 + std::sqrt(5.0)) / 2.0;

struct OperatorFractions {
  double f_levy = 1.0;      // fraction of parents taking a Levy flight
  double f_elite = 0.2;     // elite subset fraction
  double f_mh = 0.2;        // Metropolis-Hastings acceptance fraction
  double f_mutation = 0.2;  // mutation mask zero-probability
  double beta = 10.0;       // step size divisor

  void validate() const {
    const auto in01 = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!in01(f_levy) || !in01(f_elite) || !in01(f_mh) || !in01(f_mutation)) {
      throw InvalidArgument("operator fractions must lie in [0, 1]");
    }
    if (!(beta > 0.0)) throw InvalidArgument("beta must be > 0");
  }
};

struct Candidate {
  std::size_t parent;
  DesignVector vec;
};

struct EvaluatedCandidate {
  std::size_t parent;
  DesignVector vec;
  Evaluation eval;
};

// Evaluation hook handed to the self-updating operators; returns nothing when
// the evaluation budget is exhausted.
using TryEvaluate = std::function<std::optional<Evaluation>(const DesignVector&)>;
// Replacement hook: writes pop[i] and lets the caller track best-so-far.
using ReplaceMember = std::function<void(std::size_t, const DesignVector&, const Evaluation&)>;

inline std::size_t fraction_count(double fraction, std::size_t p) {
  const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(p)));
  return std::min(k, p);
}

// ---------------------------------------------------------------------------
// Pure kernels (deterministic arithmetic; the stream-driven operators and the
// golden tests share these).
// ---------------------------------------------------------------------------

inline void reverse_inclusive(std::vector<int>& seq, std::size_t i, std::size_t j) {
  while (i < j) std::swap(seq[i++], seq[j--]);
}

// Child with the slice (cut, cut+span] reversed; span clips at the tail.
inline std::vector<int> segment_reversal_child(const std::vector<int>& perm, std::size_t cut,
                                               std::size_t span) {
  std::vector<int> child = perm;
  if (perm.empty() || cut + 1 >= perm.size()) return child;
  const std::size_t hi = std::min(cut + span, perm.size() - 1);
  reverse_inclusive(child, cut + 1, hi);
  return child;
}

// Segments S1=[0..b1], S2=(b1..b2], S3=(b2..b3], S4=(b3..]; first child swaps
// S2 and S3, second reverses both in place.
inline std::pair<std::vector<int>, std::vector<int>> three_opt_children(const std::vector<int>& perm,
                                                                        std::size_t b1, std::size_t b2,
                                                                        std::size_t b3) {
  if (!(b1 < b2 && b2 < b3 && b3 + 1 < perm.size())) {
    throw InvalidArgument("three_opt_children: break points must satisfy b1 < b2 < b3 < n-1");
  }
  std::vector<int> c1;
  c1.reserve(perm.size());
  c1.insert(c1.end(), perm.begin(), perm.begin() + static_cast<long>(b1 + 1));
  c1.insert(c1.end(), perm.begin() + static_cast<long>(b2 + 1), perm.begin() + static_cast<long>(b3 + 1));
  c1.insert(c1.end(), perm.begin() + static_cast<long>(b1 + 1), perm.begin() + static_cast<long>(b2 + 1));
  c1.insert(c1.end(), perm.begin() + static_cast<long>(b3 + 1), perm.end());

  std::vector<int> c2 = perm;
  reverse_inclusive(c2, b1 + 1, b2);
  reverse_inclusive(c2, b2 + 1, b3);
  return {std::move(c1), std::move(c2)};
}

template <typename T>
inline long position_of(const std::vector<T>& seq, const T& value) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] == value) return static_cast<long>(i);
  }
  return -1;
}

// One step of the follower-guided inversion: the element after a[start]'s
// value in b names the second inversion point; the span between the two
// points in `a` is reversed. Returns the child and the follower value, or
// nothing when no follower exists.
template <typename T>
inline std::optional<std::pair<std::vector<T>, T>> follower_inversion_child(const std::vector<T>& a,
                                                                            const std::vector<T>& b,
                                                                            std::size_t start) {
  if (start >= a.size()) return std::nullopt;
  const T v = a[start];
  const long k = position_of(b, v);
  if (k < 0 || k + 1 >= static_cast<long>(b.size())) return std::nullopt;
  const T w = b[static_cast<std::size_t>(k + 1)];
  const long j = position_of(a, w);
  if (j < 0 || j == static_cast<long>(start)) return std::nullopt;
  std::vector<T> child = a;
  const auto s = static_cast<std::size_t>(start);
  const auto jj = static_cast<std::size_t>(j);
  if (jj > s) {
    std::reverse(child.begin() + static_cast<long>(s + 1), child.begin() + static_cast<long>(jj + 1));
  } else {
    std::reverse(child.begin() + static_cast<long>(jj + 1), child.begin() + static_cast<long>(s + 1));
  }
  return std::make_pair(std::move(child), w);
}

// Index-space discrete step with wall reflection.
inline long disc_step_index(long old_index, std::size_t cardinality, double t, bool positive) {
  const long d = static_cast<long>(cardinality);
  const long step = std::llround(t * static_cast<double>(d));
  long idx = positive ? old_index + step : old_index - step;
  while (idx < 0 || idx > d - 1) {
    if (idx < 0) idx = -idx;
    if (idx > d - 1) idx = 2 * (d - 1) - idx;
  }
  return idx;
}

// One bounded component update with per-component rejection; the 100th draw
// is clamped.
template <typename StepFn>
inline double bounded_levy_step(double parent, double lo, double hi, StepFn&& draw_step) {
  double val = parent;
  for (int attempt = 0; attempt < 100; ++attempt) {
    val = parent + draw_step();
    if (val >= lo && val <= hi) return val;
  }
  return std::clamp(val, lo, hi);
}

inline double crossover_blend(double x0, double xr) { return x0 + (x0 - xr) / kGoldenRatio; }

struct ScatterCoefficients {
  double alpha;  // +1 when the elite ranks ahead of the partner
  double beta;   // rank-distance weight
};

inline ScatterCoefficients scatter_coefficients(std::size_t rank_i, std::size_t rank_j, std::size_t p) {
  if (p < 3) throw InvalidArgument("scatter search requires population size >= 3");
  ScatterCoefficients c;
  c.alpha = (rank_i < rank_j) ? 1.0 : -1.0;
  const double diff = std::fabs(static_cast<double>(rank_j) - static_cast<double>(rank_i));
  c.beta = (diff - 1.0) / (static_cast<double>(p) - 2.0);
  return c;
}

inline double scatter_blend(double xi, double xj, const ScatterCoefficients& c, double r) {
  const double d = (xj - xi) / 2.0;
  const double c1 = xi - d * (1.0 + c.alpha * c.beta);
  const double c2 = xi - d * (1.0 - c.alpha * c.beta);
  return c1 + (c2 - c1) * r;
}

inline double mutated_component(double x, double p1, double p2, double r, double mask) {
  return x + r * mask * (p1 - p2);
}

// ---------------------------------------------------------------------------
// Stream-driven batch operators: emit candidates carrying their parent index;
// the caller evaluates them and applies population_update.
// ---------------------------------------------------------------------------

inline std::vector<Candidate> cont_levy_flight(const DesignSpace& space, const Population& pop,
                                               const OperatorFractions& fr, const LevyParams& levy,
                                               RandomSource& rng) {
  std::vector<Candidate> out;
  if (!space.has_continuous() || pop.empty()) return out;
  const std::size_t k = fraction_count(fr.f_levy, pop.size());
  const auto parents = rng.sample_without_replacement(k, pop.size());
  out.reserve(k);
  for (std::size_t r : parents) {
    Candidate c{r, pop[r].vec};
    for (std::size_t i : space.continuous_indices()) {
      const VariableSpec& v = space.var(i);
      c.vec.values[i] = bounded_levy_step(pop[r].vec.values[i], v.lower, v.upper,
                                          [&] { return levy_sample(levy, rng) / fr.beta; });
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Candidate> disc_levy_flight(const DesignSpace& space, const Population& pop,
                                               const OperatorFractions& fr, const LevyParams& levy,
                                               RandomSource& rng) {
  std::vector<Candidate> out;
  if (!space.has_discrete() || pop.empty()) return out;
  const std::size_t k = fraction_count(fr.f_levy, pop.size());
  const auto parents = rng.sample_without_replacement(k, pop.size());
  out.reserve(k);
  for (std::size_t r : parents) {
    Candidate c{r, pop[r].vec};
    for (std::size_t i : space.discrete_indices()) {
      const std::size_t card = space.cardinality(i);
      const double t = tlf_sample(levy.alpha, levy.gamma, rng);
      const bool positive = rng.coin();
      const long old_idx = space.index_of(i, pop[r].vec.values[i]);
      const long new_idx = disc_step_index(old_idx, card, t, positive);
      c.vec.values[i] = space.value_at(i, new_idx);
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<Candidate> comb_levy_flight(const DesignSpace& space, const Population& pop,
                                               const OperatorFractions& fr, const LevyParams& levy,
                                               RandomSource& rng) {
  std::vector<Candidate> out;
  if (!space.has_combinatorial() || pop.empty()) return out;
  const auto n = static_cast<std::size_t>(space.perm_length());
  const std::size_t k = fraction_count(fr.f_levy, pop.size());
  const auto parents = rng.sample_without_replacement(k, pop.size());
  out.reserve(k);
  for (std::size_t r : parents) {
    Candidate c{r, pop[r].vec};
    const std::size_t cut = rng.index(n);
    const double t = tlf_sample(levy.alpha, levy.gamma, rng);
    const auto span = static_cast<std::size_t>(
        std::max(1LL, std::llround(t * static_cast<double>(n))));
    c.vec.perm = segment_reversal_child(pop[r].vec.perm, cut, span);
    out.push_back(std::move(c));
  }
  return out;
}

// Elite/random blend through the golden ratio; the child contends with the
// random (non-elite) parent.
inline std::vector<Candidate> crossover(const DesignSpace& space, const Population& pop,
                                        const OperatorFractions& fr, RandomSource& rng) {
  std::vector<Candidate> out;
  if ((!space.has_continuous() && !space.has_discrete()) || pop.size() < 2) return out;
  const auto ranks = rank_by_better(pop);
  const std::size_t k = fraction_count(fr.f_elite, pop.size());
  const std::size_t non_elite = pop.size() - k;
  const std::size_t pairs = std::min(k, non_elite);
  if (pairs == 0) return out;
  const auto partner_slots = rng.sample_without_replacement(pairs, non_elite);
  out.reserve(pairs);
  for (std::size_t e = 0; e < pairs; ++e) {
    const std::size_t elite_idx = ranks[e];
    const std::size_t random_idx = ranks[k + partner_slots[e]];
    const DesignVector& x0 = pop[elite_idx].vec;
    const DesignVector& xr = pop[random_idx].vec;
    Candidate c{random_idx, x0};
    for (std::size_t i : space.continuous_indices()) {
      const VariableSpec& v = space.var(i);
      c.vec.values[i] = std::clamp(crossover_blend(x0.values[i], xr.values[i]), v.lower, v.upper);
    }
    for (std::size_t i : space.discrete_indices()) {
      const auto i0 = static_cast<double>(space.index_of(i, x0.values[i]));
      const auto ir = static_cast<double>(space.index_of(i, xr.values[i]));
      const long idx = space.clamp_index(i, std::llround(crossover_blend(i0, ir)));
      c.vec.values[i] = space.value_at(i, idx);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Rank-weighted hyper-rectangle sampling around each elite member.
inline std::vector<Candidate> scatter_search(const DesignSpace& space, const Population& pop,
                                             const OperatorFractions& fr, RandomSource& rng) {
  std::vector<Candidate> out;
  if ((!space.has_continuous() && !space.has_discrete()) || pop.size() < 3) return out;
  const auto ranks = rank_by_better(pop);
  const std::size_t p = pop.size();
  const std::size_t k = fraction_count(fr.f_elite, p);
  out.reserve(k);
  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t rank_i = e + 1;  // 1-based rank of the elite member
    const std::size_t rank_j = rng.index(p) + 1;
    const std::size_t idx_i = ranks[rank_i - 1];
    const std::size_t idx_j = ranks[rank_j - 1];
    const ScatterCoefficients sc = scatter_coefficients(rank_i, rank_j, p);
    const DesignVector& xi = pop[idx_i].vec;
    const DesignVector& xj = pop[idx_j].vec;
    Candidate c{idx_i, xi};
    for (std::size_t i = 0; i < space.size(); ++i) {
      const VariableSpec& v = space.var(i);
      if (v.kind == VarKind::Combinatorial) continue;
      const double r = rng.uniform01();
      if (v.kind == VarKind::Continuous) {
        c.vec.values[i] = std::clamp(scatter_blend(xi.values[i], xj.values[i], sc, r), v.lower, v.upper);
      } else {
        const auto ii = static_cast<double>(space.index_of(i, xi.values[i]));
        const auto ij = static_cast<double>(space.index_of(i, xj.values[i]));
        const long idx = space.clamp_index(i, std::llround(scatter_blend(ii, ij, sc, r)));
        c.vec.values[i] = space.value_at(i, idx);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Whole-population differential mutation X + r D (P1 - P2) with a Bernoulli
// mask; one scalar r per generation.
inline std::vector<Candidate> mutation(const DesignSpace& space, const Population& pop,
                                       const OperatorFractions& fr, RandomSource& rng) {
  std::vector<Candidate> out;
  if ((!space.has_continuous() && !space.has_discrete()) || pop.size() < 2) return out;
  const std::size_t p = pop.size();
  const double r = rng.uniform01();
  const auto perm1 = rng.permutation(p);
  const auto perm2 = rng.permutation(p);
  out.reserve(p);
  for (std::size_t m = 0; m < p; ++m) {
    Candidate c{m, pop[m].vec};
    const DesignVector& p1 = pop[perm1[m]].vec;
    const DesignVector& p2 = pop[perm2[m]].vec;
    for (std::size_t i = 0; i < space.size(); ++i) {
      const VariableSpec& v = space.var(i);
      if (v.kind == VarKind::Combinatorial) continue;
      const double mask = (rng.uniform01() < fr.f_mutation) ? 0.0 : 1.0;
      if (v.kind == VarKind::Continuous) {
        c.vec.values[i] = std::clamp(
            mutated_component(pop[m].vec.values[i], p1.values[i], p2.values[i], r, mask), v.lower,
            v.upper);
      } else {
        const auto xm = static_cast<double>(space.index_of(i, pop[m].vec.values[i]));
        const auto i1 = static_cast<double>(space.index_of(i, p1.values[i]));
        const auto i2 = static_cast<double>(space.index_of(i, p2.values[i]));
        const long idx = space.clamp_index(i, std::llround(mutated_component(xm, i1, i2, r, mask)));
        c.vec.values[i] = space.value_at(i, idx);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Population update (batch acceptance + optional Metropolis-Hastings step).
// ---------------------------------------------------------------------------

inline void population_update(Population& pop, const std::vector<EvaluatedCandidate>& candidates,
                              bool mh, double f_mh, RandomSource& rng, const ReplaceMember& replace) {
  const std::size_t p = pop.size();
  for (const auto& c : candidates) {
    if (better(c.eval, pop[c.parent].eval)) {
      replace(c.parent, c.vec, c.eval);
    } else if (mh && p > 1 && rng.uniform01() < f_mh) {
      std::size_t other = rng.index(p - 1);
      if (other >= c.parent) ++other;
      if (better(c.eval, pop[other].eval)) {
        replace(other, c.vec, c.eval);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Self-updating combinatorial operators (hill-climbing acceptance).
// Each returns false when the evaluation budget ran out mid-pass.
// ---------------------------------------------------------------------------

namespace detail {

inline bool accept_if_better(Population& pop, std::size_t idx, const DesignSpace& space,
                             const std::vector<int>& child_perm, const TryEvaluate& try_eval,
                             const ReplaceMember& replace, bool* exhausted) {
  if (child_perm == pop[idx].vec.perm) return true;
  DesignVector child = pop[idx].vec;
  child.perm = child_perm;
  const auto ev = try_eval(child);
  if (!ev) {
    *exhausted = true;
    return false;
  }
  if (better(*ev, pop[idx].eval)) replace(idx, child, *ev);
  return true;
}

}  // namespace detail

// Two segment re-orderings per parent from three unique break points, each
// accepted against the current incumbent.
inline bool three_opt(const DesignSpace& space, Population& pop, RandomSource& rng,
                      const TryEvaluate& try_eval, const ReplaceMember& replace) {
  if (!space.has_combinatorial()) return true;
  const auto n = static_cast<std::size_t>(space.perm_length());
  if (n < 4) {
    throw InvalidArgument("three_opt requires permutation length >= 4");
  }
  bool exhausted = false;
  for (std::size_t m = 0; m < pop.size(); ++m) {
    auto breaks = rng.sample_without_replacement(3, n - 1);  // positions 0..n-2
    std::sort(breaks.begin(), breaks.end());
    const auto [c1, c2] = three_opt_children(pop[m].vec.perm, breaks[0], breaks[1], breaks[2]);
    if (!detail::accept_if_better(pop, m, space, c1, try_eval, replace, &exhausted)) return false;
    if (!detail::accept_if_better(pop, m, space, c2, try_eval, replace, &exhausted)) return false;
  }
  return !exhausted;
}

// Elite-only segment reversal; the first break cycles over positions, the
// second comes from a TLF span (or the nearest-neighbor city when distance
// bias is enabled).
inline bool two_opt(const DesignSpace& space, Population& pop, const OperatorFractions& fr,
                    const LevyParams& levy, RandomSource& rng, const TryEvaluate& try_eval,
                    const ReplaceMember& replace, const TspInstance* bias = nullptr) {
  if (!space.has_combinatorial()) return true;
  const auto n = static_cast<std::size_t>(space.perm_length());
  if (n < 3) return true;
  const std::size_t first_limit = space.perm_looping() ? n : n - 2;
  const auto ranks = rank_by_better(pop);
  const std::size_t k = fraction_count(fr.f_elite, pop.size());
  bool exhausted = false;
  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t idx = ranks[e];
    for (std::size_t b1 = 0; b1 < first_limit; ++b1) {
      std::vector<int> child;
      if (bias != nullptr) {
        const long b2 = tsp_nearest_position(*bias, pop[idx].vec.perm, b1);
        if (b2 < 0) continue;
        const auto lo = std::min(b1, static_cast<std::size_t>(b2));
        const auto hi = std::max(b1, static_cast<std::size_t>(b2));
        child = pop[idx].vec.perm;
        if (lo + 1 <= hi) reverse_inclusive(child, lo + 1, hi);
      } else {
        const double t = tlf_sample(levy.alpha, levy.gamma, rng);
        const auto span = static_cast<std::size_t>(
            std::max(1LL, std::llround(t * static_cast<double>(n))));
        child = segment_reversal_child(pop[idx].vec.perm, b1, span);
      }
      if (!detail::accept_if_better(pop, idx, space, child, try_eval, replace, &exhausted)) return false;
    }
  }
  return !exhausted;
}

// Follower-guided inversion exchange between an elite parent and a random
// partner, cycling the starting point over every position. Runs on the
// permutation slice when one exists, otherwise on the discrete-index
// sequence.
inline bool inversion_crossover(const DesignSpace& space, Population& pop,
                                const OperatorFractions& fr, RandomSource& rng,
                                const TryEvaluate& try_eval, const ReplaceMember& replace) {
  const std::size_t p = pop.size();
  if (p < 2) return true;
  const bool comb = space.has_combinatorial();
  if (!comb && !space.has_discrete()) return true;
  const auto ranks = rank_by_better(pop);
  const std::size_t k = fraction_count(fr.f_elite, p);
  bool exhausted = false;

  const auto disc_sequence = [&](std::size_t idx) {
    std::vector<long> seq;
    seq.reserve(space.discrete_indices().size());
    for (std::size_t i : space.discrete_indices()) {
      seq.push_back(space.index_of(i, pop[idx].vec.values[i]));
    }
    return seq;
  };
  const auto disc_vector = [&](std::size_t idx, const std::vector<long>& seq) {
    DesignVector v = pop[idx].vec;
    std::size_t slot = 0;
    for (std::size_t i : space.discrete_indices()) {
      v.values[i] = space.value_at(i, seq[slot++]);
    }
    return v;
  };

  const std::size_t seq_len = comb ? static_cast<std::size_t>(space.perm_length())
                                   : space.discrete_indices().size();
  if (seq_len < 2) return true;

  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t i1 = ranks[e];
    std::size_t i2 = rng.index(p - 1);
    if (i2 >= i1) ++i2;
    for (std::size_t start = 0; start + 1 < seq_len; ++start) {
      if (comb) {
        const auto& s1 = pop[i1].vec.perm;
        const auto& s2 = pop[i2].vec.perm;
        const auto step1 = follower_inversion_child(s1, s2, start);
        if (!step1) continue;
        const auto& [c1, w] = *step1;
        DesignVector child1 = pop[i1].vec;
        child1.perm = c1;
        if (child1.perm != pop[i1].vec.perm) {
          const auto ev = try_eval(child1);
          if (!ev) return false;
          if (better(*ev, pop[i1].eval)) replace(i1, child1, *ev);
        }
        const long w_pos = position_of(pop[i2].vec.perm, w);
        if (w_pos < 0) continue;
        const auto step2 =
            follower_inversion_child(pop[i2].vec.perm, pop[i1].vec.perm, static_cast<std::size_t>(w_pos));
        if (!step2) continue;
        DesignVector child2 = pop[i2].vec;
        child2.perm = step2->first;
        if (child2.perm != pop[i2].vec.perm) {
          const auto ev = try_eval(child2);
          if (!ev) return false;
          if (better(*ev, pop[i2].eval)) replace(i2, child2, *ev);
        }
      } else {
        const auto s1 = disc_sequence(i1);
        const auto s2 = disc_sequence(i2);
        const auto step1 = follower_inversion_child(s1, s2, start);
        if (!step1) continue;
        if (step1->first != s1) {
          const DesignVector child1 = disc_vector(i1, step1->first);
          const auto ev = try_eval(child1);
          if (!ev) return false;
          if (better(*ev, pop[i1].eval)) replace(i1, child1, *ev);
        }
        const long w_pos = position_of(disc_sequence(i2), step1->second);
        if (w_pos < 0) continue;
        const auto s2b = disc_sequence(i2);
        const auto step2 = follower_inversion_child(s2b, disc_sequence(i1), static_cast<std::size_t>(w_pos));
        if (!step2) continue;
        if (step2->first != s2b) {
          const DesignVector child2 = disc_vector(i2, step2->first);
          const auto ev = try_eval(child2);
          if (!ev) return false;
          if (better(*ev, pop[i2].eval)) replace(i2, child2, *ev);
        }
      }
    }
  }
  return !exhausted;
}

}  // namespace gnowee

#endif  // GNOWEE_OPERATORS_HPP
