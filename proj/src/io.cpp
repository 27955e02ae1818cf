#include "octe/io.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace octe {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

DataMatrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path + ": empty file, expected a header row");

  std::vector<VariableId> vars;
  {
    const std::vector<std::string> header = split_line(line);
    if (header.empty())
      throw ParseError(path + ": header row has no columns");
    if (header.size() > static_cast<std::size_t>(kMaxVariables))
      throw CapacityError(path + ": more than 64 columns");
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string name = trimmed(header[c]);
      if (name.empty())
        throw ParseError(path + ": empty column name at row 1, column " +
                         std::to_string(c + 1));
      vars.push_back({static_cast<int>(c), name});
    }
  }
  const std::size_t cols = vars.size();

  std::vector<std::vector<std::int32_t>> columns(cols);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != cols)
      throw ParseError(path + ": row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string cell = trimmed(cells[c]);
      int value = 0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || value < 0)
        throw ParseError(path + ": cell \"" + cell + "\" at row " +
                         std::to_string(row) + ", column " +
                         std::to_string(c + 1) +
                         " is not a non-negative integer");
      columns[c].push_back(value);
    }
  }
  if (columns.empty() || columns[0].empty())
    throw ParseError(path + ": no data rows");

  const std::int64_t rows = static_cast<std::int64_t>(columns[0].size());
  std::vector<int> card(cols);
  std::vector<std::int32_t> values;
  values.reserve(cols * static_cast<std::size_t>(rows));
  for (std::size_t c = 0; c < cols; ++c) {
    card[c] = *std::max_element(columns[c].begin(), columns[c].end()) + 1;
    values.insert(values.end(), columns[c].begin(), columns[c].end());
  }
  return DataMatrix(std::move(vars), Alphabet(std::move(card)),
                    std::move(values), rows);
}

void write_csv(const DataMatrix& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  for (int c = 0; c < data.cols(); ++c) {
    if (c > 0) out << ',';
    out << data.variables()[static_cast<std::size_t>(c)].name;
  }
  out << '\n';
  for (std::int64_t t = 0; t < data.rows(); ++t) {
    for (int c = 0; c < data.cols(); ++c) {
      if (c > 0) out << ',';
      out << data.value(t, c);
    }
    out << '\n';
  }
  if (!out) throw ParseError("write failed for " + path);
}

DataMatrix lag_embed(const DataMatrix& series, const LagSpec& spec) {
  series.position_of(spec.target);  // membership check
  int max_lag = 0;
  for (const VariableId& v : series.variables()) {
    if (v.index == spec.target) continue;
    const int lag = spec.lag_of(v.index);
    if (lag < 1)
      throw std::invalid_argument("lag for " + v.name + " must be >= 1");
    max_lag = std::max(max_lag, lag);
  }
  if (series.rows() <= max_lag)
    throw std::invalid_argument("series too short for lag " +
                                std::to_string(max_lag));

  const std::int64_t out_rows = series.rows() - max_lag;
  std::vector<std::int32_t> values(
      static_cast<std::size_t>(series.cols()) *
      static_cast<std::size_t>(out_rows));
  for (int c = 0; c < series.cols(); ++c) {
    const VariableId& v = series.variables()[static_cast<std::size_t>(c)];
    const int shift =
        v.index == spec.target ? max_lag : max_lag - spec.lag_of(v.index);
    const auto col = series.column(c);
    for (std::int64_t t = 0; t < out_rows; ++t)
      values[static_cast<std::size_t>(c) * static_cast<std::size_t>(out_rows) +
             static_cast<std::size_t>(t)] =
          col[static_cast<std::size_t>(t + shift)];
  }
  return DataMatrix(series.variables(), series.alphabet(), std::move(values),
                    out_rows);
}

EventSeries load_events(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  EventSeries events;
  events.duration = -1.0;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string text = trimmed(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto pos = text.find("duration=");
      if (pos != std::string::npos) {
        try {
          events.duration = std::stod(text.substr(pos + 9));
        } catch (const std::exception&) {
          throw ParseError(path + ": bad duration header at row " +
                           std::to_string(row));
        }
      }
      continue;
    }
    char* end = nullptr;
    const double t = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
      throw ParseError(path + ": bad timestamp \"" + text + "\" at row " +
                       std::to_string(row));
    events.timestamps.push_back(t);
  }
  if (events.duration < 0.0)
    throw ParseError(path + ": missing \"# duration=<seconds>\" header");
  for (std::size_t i = 0; i < events.timestamps.size(); ++i) {
    const double t = events.timestamps[i];
    if (t < 0.0 || t > events.duration)
      throw ParseError(path + ": timestamp " + std::to_string(t) +
                       " outside [0, duration]");
    if (i > 0 && t < events.timestamps[i - 1])
      throw ParseError(path + ": timestamps must be nondecreasing");
  }
  return events;
}

std::vector<int> binarize_events(const EventSeries& events,
                                 double window_seconds,
                                 double rate_threshold_hz) {
  if (!(window_seconds > 0.0))
    throw std::invalid_argument("window length must be positive");
  if (events.duration < window_seconds)
    throw std::invalid_argument("recording shorter than one window");

  const auto windows =
      static_cast<std::size_t>(events.duration / window_seconds);
  std::vector<std::int64_t> counts(windows, 0);
  for (double t : events.timestamps) {
    const auto w = static_cast<std::size_t>(t / window_seconds);
    if (w < windows) ++counts[w];
  }
  std::vector<int> out(windows);
  for (std::size_t w = 0; w < windows; ++w)
    out[w] =
        static_cast<double>(counts[w]) / window_seconds > rate_threshold_hz
            ? 1
            : 0;
  return out;
}

}  // namespace octe
