#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace octe {

inline constexpr const char* kVersion = "0.1.0";

/// Workspace-wide capacity limits for dense tables and powerset loops.
inline constexpr int kMaxVariables = 64;
inline constexpr std::uint64_t kMaxTableCells = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kMaxSubsetEvaluations = std::uint64_t{1} << 16;

/// Requested computation exceeds a dense-table or powerset limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document; the message names the offending location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A variable (column) of the workspace. Indices are unique within a
/// workspace and double as bit positions in VarSet.
struct VariableId {
  int index = 0;
  std::string name;

  friend bool operator==(const VariableId&, const VariableId&) = default;
};

/// Set of variable indices in [0, kMaxVariables), stored as a bitmask.
/// Iteration and indices() yield ascending order.
class VarSet {
 public:
  constexpr VarSet() = default;

  static constexpr VarSet single(int index) { return VarSet{}.with(index); }

  static VarSet of(std::initializer_list<int> indices) {
    VarSet s;
    for (int i : indices) s.add(i);
    return s;
  }

  static VarSet from_indices(const std::vector<int>& indices) {
    VarSet s;
    for (int i : indices) s.add(i);
    return s;
  }

  static constexpr VarSet from_bits(std::uint64_t bits) {
    VarSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool contains(int index) const {
    return index >= 0 && index < kMaxVariables &&
           (bits_ & (std::uint64_t{1} << index)) != 0;
  }

  constexpr void add(int index) {
    check_index(index);
    bits_ |= std::uint64_t{1} << index;
  }

  constexpr void remove(int index) {
    check_index(index);
    bits_ &= ~(std::uint64_t{1} << index);
  }

  constexpr VarSet with(int index) const {
    VarSet s = *this;
    s.add(index);
    return s;
  }

  constexpr VarSet without(int index) const {
    VarSet s = *this;
    s.remove(index);
    return s;
  }

  constexpr bool subset_of(VarSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr bool strict_subset_of(VarSet other) const {
    return subset_of(other) && bits_ != other.bits_;
  }

  constexpr bool intersects(VarSet other) const {
    return (bits_ & other.bits_) != 0;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr VarSet operator|(VarSet a, VarSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr VarSet operator&(VarSet a, VarSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr VarSet operator-(VarSet a, VarSet b) {
    return from_bits(a.bits_ & ~b.bits_);
  }

  friend constexpr bool operator==(VarSet a, VarSet b) {
    return a.bits_ == b.bits_;
  }

 private:
  static constexpr void check_index(int index) {
    if (index < 0 || index >= kMaxVariables)
      throw std::invalid_argument("variable index out of range [0, 64)");
  }

  std::uint64_t bits_ = 0;
};

/// Lexicographic order on the ascending index lists, e.g. {0,3} < {1,2}.
inline bool lex_less(VarSet a, VarSet b) {
  const std::vector<int> ia = a.indices();
  const std::vector<int> ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                      ib.end());
}

/// "{X1,X2}" style rendering; falls back to "#i" when no name is known.
std::string format_set(VarSet set, const std::vector<VariableId>& vars);

/// "{0,2}" rendering for error messages.
std::string format_set(VarSet set);

}  // namespace octe
