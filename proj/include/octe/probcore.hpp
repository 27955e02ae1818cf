#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "octe/common.hpp"

namespace octe {

/// Per-variable category counts. Every data value v for variable position i
/// must satisfy 0 <= v < cardinalities[i].
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<int> cardinalities);

  int size() const { return static_cast<int>(card_.size()); }
  int operator[](int position) const { return card_[static_cast<std::size_t>(position)]; }
  const std::vector<int>& cardinalities() const { return card_; }

  /// Product of cardinalities; throws CapacityError above kMaxTableCells.
  std::uint64_t table_size() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<int> card_;
};

/// Exact probability mass function over an ordered tuple of categorical
/// variables, stored as a dense table in mixed-radix layout (first variable
/// slowest, last variable fastest).
///
/// Immutable after construction; all operations on it are pure functions and
/// safe to call concurrently.
class JointDistribution {
 public:
  JointDistribution(std::vector<VariableId> variables, Alphabet alphabet,
                    std::vector<double> probabilities);

  const std::vector<VariableId>& variables() const { return vars_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<double>& probabilities() const { return p_; }

  VarSet variable_set() const;

  /// Position of a workspace variable index within this distribution;
  /// throws std::domain_error if the variable is not part of it.
  int position_of(int var_index) const;

  friend bool operator==(const JointDistribution&,
                         const JointDistribution&) = default;

 private:
  std::vector<VariableId> vars_;
  Alphabet alphabet_;
  std::vector<double> p_;
};

/// T samples x V categorical variables, stored column-major so per-column
/// scans (the hot path of every estimator) stay contiguous.
class DataMatrix {
 public:
  DataMatrix(std::vector<VariableId> variables, Alphabet alphabet,
             std::vector<std::int32_t> column_major_values, std::int64_t rows);

  std::int64_t rows() const { return rows_; }
  int cols() const { return static_cast<int>(vars_.size()); }
  const std::vector<VariableId>& variables() const { return vars_; }
  const Alphabet& alphabet() const { return alphabet_; }
  VarSet variable_set() const;
  int position_of(int var_index) const;

  std::int32_t value(std::int64_t row, int position) const {
    return values_[static_cast<std::size_t>(position) *
                       static_cast<std::size_t>(rows_) +
                   static_cast<std::size_t>(row)];
  }

  std::span<const std::int32_t> column(int position) const {
    return {values_.data() + static_cast<std::size_t>(position) *
                                 static_cast<std::size_t>(rows_),
            static_cast<std::size_t>(rows_)};
  }

  friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

 private:
  std::vector<VariableId> vars_;
  Alphabet alphabet_;
  std::vector<std::int32_t> values_;
  std::int64_t rows_;
};

/// Sum the pmf over all variables not in `keep`; the kept variables retain
/// their relative order.
JointDistribution marginalize(const JointDistribution& dist, VarSet keep);

/// Plug-in (maximum likelihood) pmf over the given variables, in the given
/// order: probability of each configuration = count / rows.
JointDistribution empirical_distribution(const DataMatrix& data,
                                         const std::vector<int>& var_indices);

/// Shannon entropy in bits, with 0 log 0 == 0.
double entropy(const JointDistribution& dist);

/// I(A;B) = H(A) + H(B) - H(AB), in bits.
double mutual_information(const JointDistribution& dist, VarSet a, VarSet b);
double mutual_information(const DataMatrix& data, VarSet a, VarSet b);

/// I(A;B|S) = H(AS) + H(BS) - H(ABS) - H(S), in bits. S may be empty, in
/// which case this equals mutual_information. Negative values above -1e-9
/// (floating-point cancellation) are clamped to 0.
double cmi(const JointDistribution& dist, VarSet a, VarSet b, VarSet s);
double cmi(const DataMatrix& data, VarSet a, VarSet b, VarSet s);

namespace detail {

/// Kahan-compensated sum.
double stable_sum(std::span<const double> values);

/// -sum p log2 p over a dense table.
double entropy_of(std::span<const double> p);

/// Clamp floating-point cancellation noise: values in (-1e-9, 0) become 0.
double clamp_information(double value);

/// The single shared CMI kernel. `p` is a dense probability table whose
/// axes are grouped as (a-block, b-block, s-block) with sizes (na, nb, ns):
/// index = (ia * nb + ib) * ns + is. Every CMI path in the library funnels
/// through here, so exact, plug-in, and permutation estimates are computed
/// by identical code.
double cmi_from_table(std::span<const double> p, std::int64_t na,
                      std::int64_t nb, std::int64_t ns);

/// Counts -> probabilities -> cmi_from_table.
double cmi_from_counts(std::span<const std::int64_t> counts, std::int64_t na,
                       std::int64_t nb, std::int64_t ns, std::int64_t total);

}  // namespace detail

}  // namespace octe
