#include "octe/probcore.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace octe {

namespace {

void check_variables(const std::vector<VariableId>& vars) {
  if (vars.empty()) throw std::invalid_argument("variable list is empty");
  std::unordered_set<int> seen;
  for (const VariableId& v : vars) {
    if (v.index < 0 || v.index >= kMaxVariables)
      throw std::invalid_argument("variable index out of range [0, 64): " +
                                  std::to_string(v.index));
    if (v.name.empty())
      throw std::invalid_argument("variable " + std::to_string(v.index) +
                                  " has an empty name");
    if (!seen.insert(v.index).second)
      throw std::invalid_argument("duplicate variable index " +
                                  std::to_string(v.index));
  }
}

/// Strides for the mixed-radix layout: first variable slowest.
std::vector<std::uint64_t> strides_of(const Alphabet& alphabet) {
  const int k = alphabet.size();
  std::vector<std::uint64_t> strides(static_cast<std::size_t>(k), 1);
  for (int i = k - 2; i >= 0; --i)
    strides[static_cast<std::size_t>(i)] =
        strides[static_cast<std::size_t>(i + 1)] *
        static_cast<std::uint64_t>(alphabet[i + 1]);
  return strides;
}

}  // namespace

std::string format_set(VarSet set, const std::vector<VariableId>& vars) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int i : set.indices()) {
    if (!first) out << ',';
    first = false;
    const auto it =
        std::find_if(vars.begin(), vars.end(),
                     [i](const VariableId& v) { return v.index == i; });
    if (it != vars.end())
      out << it->name;
    else
      out << '#' << i;
  }
  out << '}';
  return out.str();
}

std::string format_set(VarSet set) { return format_set(set, {}); }

Alphabet::Alphabet(std::vector<int> cardinalities)
    : card_(std::move(cardinalities)) {
  for (int c : card_)
    if (c < 1) throw std::invalid_argument("cardinality must be >= 1");
}

std::uint64_t Alphabet::table_size() const {
  std::uint64_t n = 1;
  for (int c : card_) {
    n *= static_cast<std::uint64_t>(c);
    if (n > kMaxTableCells)
      throw CapacityError("joint table would exceed 2^24 cells");
  }
  return n;
}

JointDistribution::JointDistribution(std::vector<VariableId> variables,
                                     Alphabet alphabet,
                                     std::vector<double> probabilities)
    : vars_(std::move(variables)),
      alphabet_(std::move(alphabet)),
      p_(std::move(probabilities)) {
  check_variables(vars_);
  if (alphabet_.size() != static_cast<int>(vars_.size()))
    throw std::invalid_argument("alphabet size does not match variable count");
  if (p_.size() != alphabet_.table_size())
    throw std::invalid_argument("probability table size does not match alphabet");
  for (double v : p_)
    if (!(v >= 0.0))
      throw std::invalid_argument("probability entries must be >= 0");
  const double total = detail::stable_sum(p_);
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("probabilities sum to " +
                                std::to_string(total) + ", expected 1");
}

VarSet JointDistribution::variable_set() const {
  VarSet s;
  for (const VariableId& v : vars_) s.add(v.index);
  return s;
}

int JointDistribution::position_of(int var_index) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].index == var_index) return static_cast<int>(i);
  throw std::domain_error("variable " + std::to_string(var_index) +
                          " is not part of this distribution");
}

DataMatrix::DataMatrix(std::vector<VariableId> variables, Alphabet alphabet,
                       std::vector<std::int32_t> column_major_values,
                       std::int64_t rows)
    : vars_(std::move(variables)),
      alphabet_(std::move(alphabet)),
      values_(std::move(column_major_values)),
      rows_(rows) {
  check_variables(vars_);
  if (alphabet_.size() != static_cast<int>(vars_.size()))
    throw std::invalid_argument("alphabet size does not match variable count");
  if (rows_ < 1) throw std::invalid_argument("data matrix needs at least one row");
  if (values_.size() != static_cast<std::size_t>(rows_) * vars_.size())
    throw std::invalid_argument("value buffer size does not match T x V");
  for (int c = 0; c < cols(); ++c) {
    const auto col = column(c);
    for (std::int32_t v : col)
      if (v < 0 || v >= alphabet_[c])
        throw std::invalid_argument("value " + std::to_string(v) +
                                    " outside alphabet of variable " +
                                    vars_[static_cast<std::size_t>(c)].name);
  }
}

VarSet DataMatrix::variable_set() const {
  VarSet s;
  for (const VariableId& v : vars_) s.add(v.index);
  return s;
}

int DataMatrix::position_of(int var_index) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].index == var_index) return static_cast<int>(i);
  throw std::domain_error("variable " + std::to_string(var_index) +
                          " is not part of this data matrix");
}

namespace detail {

double stable_sum(std::span<const double> values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double entropy_of(std::span<const double> p) {
  double sum = 0.0, comp = 0.0;
  for (double v : p) {
    if (v <= 0.0) continue;
    const double y = -v * std::log2(v) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum < 0.0 ? 0.0 : sum;
}

double clamp_information(double value) {
  return (value < 0.0 && value > -1e-9) ? 0.0 : value;
}

double cmi_from_table(std::span<const double> p, std::int64_t na,
                      std::int64_t nb, std::int64_t ns) {
  std::vector<double> pas(static_cast<std::size_t>(na * ns), 0.0);
  std::vector<double> pbs(static_cast<std::size_t>(nb * ns), 0.0);
  std::vector<double> ps(static_cast<std::size_t>(ns), 0.0);
  std::size_t idx = 0;
  for (std::int64_t ia = 0; ia < na; ++ia)
    for (std::int64_t ib = 0; ib < nb; ++ib)
      for (std::int64_t is = 0; is < ns; ++is, ++idx) {
        const double v = p[idx];
        pas[static_cast<std::size_t>(ia * ns + is)] += v;
        pbs[static_cast<std::size_t>(ib * ns + is)] += v;
        ps[static_cast<std::size_t>(is)] += v;
      }
  const double value =
      entropy_of(pas) + entropy_of(pbs) - entropy_of(p) - entropy_of(ps);
  return clamp_information(value);
}

double cmi_from_counts(std::span<const std::int64_t> counts, std::int64_t na,
                       std::int64_t nb, std::int64_t ns, std::int64_t total) {
  std::vector<double> p(counts.size());
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < counts.size(); ++i)
    p[i] = static_cast<double>(counts[i]) * inv;
  return cmi_from_table(p, na, nb, ns);
}

}  // namespace detail

namespace {

/// Sum `dist` onto a table whose axes are the listed variables, grouped and
/// ordered as given. Variables absent from every group are summed out.
struct GroupedTable {
  std::vector<double> p;
  std::vector<std::int64_t> group_sizes;
};

GroupedTable regroup(const JointDistribution& dist,
                     std::span<const std::vector<int>> groups) {
  const Alphabet& alphabet = dist.alphabet();
  const int k = alphabet.size();

  // Axis size per group and stride per (group, member) pair.
  std::vector<std::int64_t> sizes(groups.size(), 1);
  std::vector<std::uint64_t> weight(static_cast<std::size_t>(k), 0);
  std::uint64_t table_cells = 1;
  for (std::size_t g = groups.size(); g-- > 0;) {
    std::uint64_t stride = table_cells;
    const std::vector<int>& members = groups[g];
    for (std::size_t m = members.size(); m-- > 0;) {
      const int pos = dist.position_of(members[m]);
      weight[static_cast<std::size_t>(pos)] = stride;
      stride *= static_cast<std::uint64_t>(alphabet[pos]);
      sizes[g] *= alphabet[pos];
    }
    table_cells = stride;
  }

  GroupedTable out;
  out.group_sizes = std::move(sizes);
  out.p.assign(table_cells, 0.0);

  const std::vector<double>& src = dist.probabilities();
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  std::uint64_t target = 0;
  for (std::size_t i = 0;;) {
    out.p[target] += src[i];
    if (++i == src.size()) break;
    for (int ax = k - 1; ax >= 0; --ax) {
      const auto a = static_cast<std::size_t>(ax);
      ++digits[a];
      target += weight[a];
      if (digits[a] < alphabet[ax]) break;
      target -= weight[a] * static_cast<std::uint64_t>(alphabet[ax]);
      digits[a] = 0;
    }
  }
  return out;
}

void check_in_dist(const JointDistribution& dist, VarSet s, const char* role) {
  for (int i : s.indices())
    if (!dist.variable_set().contains(i))
      throw std::domain_error(std::string(role) + " variable " +
                              std::to_string(i) +
                              " is not part of the distribution");
}

void check_disjoint(VarSet a, VarSet b, const char* what) {
  if (a.intersects(b))
    throw std::invalid_argument(std::string("overlapping variable sets: ") +
                                what);
}

}  // namespace

JointDistribution marginalize(const JointDistribution& dist, VarSet keep) {
  if (keep.empty()) throw std::invalid_argument("marginalize: empty keep set");
  check_in_dist(dist, keep, "keep");

  std::vector<VariableId> vars;
  std::vector<int> card;
  std::vector<int> members;
  for (const VariableId& v : dist.variables()) {
    if (!keep.contains(v.index)) continue;
    vars.push_back(v);
    card.push_back(dist.alphabet()[dist.position_of(v.index)]);
    members.push_back(v.index);
  }

  GroupedTable table =
      regroup(dist, std::array<std::vector<int>, 1>{std::move(members)});
  return JointDistribution(std::move(vars), Alphabet(std::move(card)),
                           std::move(table.p));
}

JointDistribution empirical_distribution(const DataMatrix& data,
                                         const std::vector<int>& var_indices) {
  if (var_indices.empty())
    throw std::invalid_argument("empirical_distribution: no variables given");

  std::vector<VariableId> vars;
  std::vector<int> card;
  for (int idx : var_indices) {
    const int pos = data.position_of(idx);
    vars.push_back(data.variables()[static_cast<std::size_t>(pos)]);
    card.push_back(data.alphabet()[pos]);
  }
  Alphabet alphabet(card);
  const std::uint64_t cells = alphabet.table_size();

  const std::int64_t rows = data.rows();
  std::vector<std::int64_t> counts(cells, 0);
  std::vector<std::uint64_t> strides = strides_of(alphabet);
  std::vector<std::span<const std::int32_t>> cols;
  cols.reserve(var_indices.size());
  for (int idx : var_indices) cols.push_back(data.column(data.position_of(idx)));

  for (std::int64_t t = 0; t < rows; ++t) {
    std::uint64_t code = 0;
    for (std::size_t v = 0; v < cols.size(); ++v)
      code += strides[v] *
              static_cast<std::uint64_t>(cols[v][static_cast<std::size_t>(t)]);
    ++counts[code];
  }

  std::vector<double> p(cells);
  const double inv = 1.0 / static_cast<double>(rows);
  for (std::uint64_t i = 0; i < cells; ++i)
    p[i] = static_cast<double>(counts[i]) * inv;
  return JointDistribution(std::move(vars), std::move(alphabet), std::move(p));
}

double entropy(const JointDistribution& dist) {
  return detail::entropy_of(dist.probabilities());
}

double cmi(const JointDistribution& dist, VarSet a, VarSet b, VarSet s) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("cmi: A and B must be nonempty");
  check_disjoint(a, b, "A and B");
  check_disjoint(a, s, "A and S");
  check_disjoint(b, s, "B and S");
  check_in_dist(dist, a | b | s, "queried");

  const std::array<std::vector<int>, 3> groups = {a.indices(), b.indices(),
                                                  s.indices()};
  GroupedTable table = regroup(dist, groups);
  return detail::cmi_from_table(table.p, table.group_sizes[0],
                                table.group_sizes[1], table.group_sizes[2]);
}

double cmi(const DataMatrix& data, VarSet a, VarSet b, VarSet s) {
  return cmi(empirical_distribution(data, (a | b | s).indices()), a, b, s);
}

double mutual_information(const JointDistribution& dist, VarSet a, VarSet b) {
  return cmi(dist, a, b, VarSet{});
}

double mutual_information(const DataMatrix& data, VarSet a, VarSet b) {
  return cmi(data, a, b, VarSet{});
}

}  // namespace octe
