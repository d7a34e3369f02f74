#ifndef GNOWEE_DESIGN_SPACE_HPP
#define GNOWEE_DESIGN_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gnowee/errors.hpp"
#include "gnowee/random.hpp"

namespace gnowee {

enum class VarKind { Continuous, Integer, Binary, DiscreteSet, Combinatorial };

struct VariableSpec {
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> values;  // DiscreteSet members, strictly ascending
  int length = 0;              // Combinatorial permutation length
  bool looping = true;         // Combinatorial: closed sequence

  static VariableSpec continuous(double lo, double hi) {
    if (!(lo < hi)) throw InvalidArgument("continuous variable requires lower < upper");
    VariableSpec v;
    v.kind = VarKind::Continuous;
    v.lower = lo;
    v.upper = hi;
    return v;
  }

  static VariableSpec integer(double lo, double hi) {
    if (!(lo < hi)) throw InvalidArgument("integer variable requires lower < upper");
    if (lo != std::floor(lo) || hi != std::floor(hi)) {
      throw InvalidArgument("integer variable bounds must be integral");
    }
    VariableSpec v;
    v.kind = VarKind::Integer;
    v.lower = lo;
    v.upper = hi;
    return v;
  }

  static VariableSpec binary() {
    VariableSpec v;
    v.kind = VarKind::Binary;
    v.lower = 0.0;
    v.upper = 1.0;
    return v;
  }

  static VariableSpec discrete_set(std::vector<double> members) {
    if (members.empty()) throw InvalidArgument("discrete set must be non-empty");
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (!(members[i - 1] < members[i])) {
        throw InvalidArgument("discrete set must be strictly ascending with no duplicates");
      }
    }
    VariableSpec v;
    v.kind = VarKind::DiscreteSet;
    v.values = std::move(members);
    v.lower = v.values.front();
    v.upper = v.values.back();
    return v;
  }

  static VariableSpec combinatorial(int length, bool looping = true) {
    if (length < 2) throw InvalidArgument("combinatorial variable requires length >= 2");
    VariableSpec v;
    v.kind = VarKind::Combinatorial;
    v.length = length;
    v.looping = looping;
    return v;
  }

  bool is_scalar() const { return kind != VarKind::Combinatorial; }
  bool is_discrete_family() const {
    return kind == VarKind::Integer || kind == VarKind::Binary || kind == VarKind::DiscreteSet;
  }
};

// One candidate solution. `values` is aligned one-to-one with the space's
// variable list (the combinatorial slot, when present, is an unused 0.0);
// the permutation lives in `perm`.
struct DesignVector {
  std::vector<double> values;
  std::vector<int> perm;

  bool operator==(const DesignVector&) const = default;
};

struct ValidationResult {
  bool ok = true;
  std::string description;  // first violation when !ok
};

class DesignSpace {
public:
  DesignSpace() = default;

  explicit DesignSpace(std::vector<VariableSpec> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      switch (vars_[i].kind) {
        case VarKind::Continuous:
          cont_idx_.push_back(i);
          break;
        case VarKind::Integer:
        case VarKind::Binary:
        case VarKind::DiscreteSet:
          disc_idx_.push_back(i);
          break;
        case VarKind::Combinatorial:
          if (comb_idx_) {
            throw InvalidArgument("design space admits at most one combinatorial variable");
          }
          comb_idx_ = i;
          break;
      }
    }
  }

  const std::vector<VariableSpec>& variables() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  const VariableSpec& var(std::size_t i) const { return vars_[i]; }

  const std::vector<std::size_t>& continuous_indices() const { return cont_idx_; }
  const std::vector<std::size_t>& discrete_indices() const { return disc_idx_; }
  std::optional<std::size_t> combinatorial_index() const { return comb_idx_; }

  bool has_continuous() const { return !cont_idx_.empty(); }
  bool has_discrete() const { return !disc_idx_.empty(); }
  bool has_combinatorial() const { return comb_idx_.has_value(); }

  int perm_length() const { return comb_idx_ ? vars_[*comb_idx_].length : 0; }
  bool perm_looping() const { return comb_idx_ ? vars_[*comb_idx_].looping : true; }

  // Scalar slot count plus permutation length; drives the initialization
  // over-sampling rule.
  std::size_t flattened_length() const {
    return cont_idx_.size() + disc_idx_.size() + static_cast<std::size_t>(perm_length());
  }

  // --- discrete-family helpers: all operators act on member indices ---

  std::size_t cardinality(std::size_t i) const {
    const VariableSpec& v = vars_[i];
    switch (v.kind) {
      case VarKind::Integer:
        return static_cast<std::size_t>(v.upper - v.lower) + 1;
      case VarKind::Binary:
        return 2;
      case VarKind::DiscreteSet:
        return v.values.size();
      default:
        throw InvalidArgument("cardinality: variable is not discrete-family");
    }
  }

  double value_at(std::size_t i, long index) const {
    const VariableSpec& v = vars_[i];
    switch (v.kind) {
      case VarKind::Integer:
        return v.lower + static_cast<double>(index);
      case VarKind::Binary:
        return static_cast<double>(index);
      case VarKind::DiscreteSet:
        return v.values[static_cast<std::size_t>(index)];
      default:
        throw InvalidArgument("value_at: variable is not discrete-family");
    }
  }

  // Index of an exact member value; throws for non-members.
  long index_of(std::size_t i, double value) const {
    const VariableSpec& v = vars_[i];
    switch (v.kind) {
      case VarKind::Integer: {
        const long idx = std::lround(value - v.lower);
        if (idx < 0 || idx >= static_cast<long>(cardinality(i)) || value_at(i, idx) != value) {
          throw InvalidArgument("index_of: value is not a member of the integer range");
        }
        return idx;
      }
      case VarKind::Binary:
        if (value == 0.0) return 0;
        if (value == 1.0) return 1;
        throw InvalidArgument("index_of: binary value must be 0 or 1");
      case VarKind::DiscreteSet: {
        const auto it = std::lower_bound(v.values.begin(), v.values.end(), value);
        if (it == v.values.end() || *it != value) {
          throw InvalidArgument("index_of: value is not a member of the discrete set");
        }
        return static_cast<long>(it - v.values.begin());
      }
      default:
        throw InvalidArgument("index_of: variable is not discrete-family");
    }
  }

  // Nearest member index by value distance; exact midpoints resolve toward
  // the lower value.
  long nearest_index(std::size_t i, double value) const {
    const VariableSpec& v = vars_[i];
    switch (v.kind) {
      case VarKind::Integer: {
        long idx = std::llround(value - v.lower);
        idx = std::clamp(idx, 0L, static_cast<long>(cardinality(i)) - 1);
        return idx;
      }
      case VarKind::Binary:
        return value > 0.5 ? 1 : 0;
      case VarKind::DiscreteSet: {
        long best = 0;
        double best_dist = std::fabs(value - v.values[0]);
        for (std::size_t k = 1; k < v.values.size(); ++k) {
          const double d = std::fabs(value - v.values[k]);
          if (d < best_dist) {
            best = static_cast<long>(k);
            best_dist = d;
          }
        }
        return best;
      }
      default:
        throw InvalidArgument("nearest_index: variable is not discrete-family");
    }
  }

  long clamp_index(std::size_t i, long index) const {
    return std::clamp(index, 0L, static_cast<long>(cardinality(i)) - 1);
  }

private:
  std::vector<VariableSpec> vars_;
  std::vector<std::size_t> cont_idx_;
  std::vector<std::size_t> disc_idx_;
  std::optional<std::size_t> comb_idx_;
};

inline void check_lengths(const DesignSpace& space, const DesignVector& vec) {
  if (vec.values.size() != space.size()) {
    throw InvalidArgument("design vector length " + std::to_string(vec.values.size()) +
                          " does not match space size " + std::to_string(space.size()));
  }
  const std::size_t want = space.has_combinatorial() ? static_cast<std::size_t>(space.perm_length()) : 0;
  if (vec.perm.size() != want) {
    throw InvalidArgument("permutation length " + std::to_string(vec.perm.size()) +
                          " does not match space permutation length " + std::to_string(want));
  }
}

inline ValidationResult validate(const DesignSpace& space, const DesignVector& vec) {
  check_lengths(space, vec);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const VariableSpec& v = space.var(i);
    const double x = vec.values[i];
    switch (v.kind) {
      case VarKind::Continuous:
        if (!(x >= v.lower && x <= v.upper)) {
          return {false, "variable " + std::to_string(i) + ": value " + std::to_string(x) +
                             " outside [" + std::to_string(v.lower) + ", " + std::to_string(v.upper) + "]"};
        }
        break;
      case VarKind::Integer:
        if (x != std::floor(x) || x < v.lower || x > v.upper) {
          return {false, "variable " + std::to_string(i) + ": value " + std::to_string(x) +
                             " is not an in-range integer"};
        }
        break;
      case VarKind::Binary:
        if (x != 0.0 && x != 1.0) {
          return {false, "variable " + std::to_string(i) + ": value " + std::to_string(x) + " is not 0/1"};
        }
        break;
      case VarKind::DiscreteSet: {
        const auto it = std::lower_bound(v.values.begin(), v.values.end(), x);
        if (it == v.values.end() || *it != x) {
          return {false, "variable " + std::to_string(i) + ": value " + std::to_string(x) +
                             " is not a member of its discrete set"};
        }
        break;
      }
      case VarKind::Combinatorial: {
        const int n = v.length;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int e : vec.perm) {
          if (e < 0 || e >= n || seen[static_cast<std::size_t>(e)]) {
            return {false, "variable " + std::to_string(i) + ": permutation is not a bijection on 0.." +
                               std::to_string(n - 1)};
          }
          seen[static_cast<std::size_t>(e)] = true;
        }
        break;
      }
    }
  }
  return {true, ""};
}

// Clamp/round/snap scalar slots into validity; permutations pass through.
inline DesignVector repair_to_bounds(const DesignSpace& space, const DesignVector& vec) {
  check_lengths(space, vec);
  DesignVector out = vec;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const VariableSpec& v = space.var(i);
    double& x = out.values[i];
    switch (v.kind) {
      case VarKind::Continuous:
        x = std::clamp(x, v.lower, v.upper);
        break;
      case VarKind::Integer:
      case VarKind::Binary:
      case VarKind::DiscreteSet:
        x = space.value_at(i, space.nearest_index(i, x));
        break;
      case VarKind::Combinatorial:
        break;
    }
  }
  return out;
}

namespace detail {

inline std::vector<int> random_permutation_int(int n, RandomSource& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = p.size(); i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

}  // namespace detail

// Latin hypercube sample of `count` vectors: every scalar dimension places
// one sample in each of `count` equal strata (index space for the discrete
// family); permutation slots are independent uniform permutations.
inline std::vector<DesignVector> lhc_initialize(const DesignSpace& space, std::size_t count,
                                                RandomSource& rng) {
  if (count < 1) throw InvalidArgument("lhc_initialize: count must be >= 1");
  std::vector<DesignVector> out(count);
  for (auto& v : out) v.values.assign(space.size(), 0.0);

  for (std::size_t i = 0; i < space.size(); ++i) {
    const VariableSpec& v = space.var(i);
    if (v.kind == VarKind::Combinatorial) {
      for (std::size_t k = 0; k < count; ++k) {
        out[k].perm = detail::random_permutation_int(v.length, rng);
      }
      continue;
    }
    const std::vector<std::size_t> strata = rng.permutation(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double s = (static_cast<double>(strata[k]) + rng.uniform01()) / static_cast<double>(count);
      if (v.kind == VarKind::Continuous) {
        out[k].values[i] = v.lower + s * (v.upper - v.lower);
      } else {
        const std::size_t card = space.cardinality(i);
        const auto idx = std::min(static_cast<std::size_t>(s * static_cast<double>(card)), card - 1);
        out[k].values[i] = space.value_at(i, static_cast<long>(idx));
      }
    }
  }
  return out;
}

inline std::vector<DesignVector> uniform_initialize(const DesignSpace& space, std::size_t count,
                                                    RandomSource& rng) {
  if (count < 1) throw InvalidArgument("uniform_initialize: count must be >= 1");
  std::vector<DesignVector> out(count);
  for (auto& v : out) v.values.assign(space.size(), 0.0);

  for (std::size_t i = 0; i < space.size(); ++i) {
    const VariableSpec& v = space.var(i);
    if (v.kind == VarKind::Combinatorial) {
      for (std::size_t k = 0; k < count; ++k) {
        out[k].perm = detail::random_permutation_int(v.length, rng);
      }
      continue;
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (v.kind == VarKind::Continuous) {
        out[k].values[i] = v.lower + rng.uniform01() * (v.upper - v.lower);
      } else {
        out[k].values[i] = space.value_at(i, static_cast<long>(rng.index(space.cardinality(i))));
      }
    }
  }
  return out;
}

}  // namespace gnowee

#endif  // GNOWEE_DESIGN_SPACE_HPP
