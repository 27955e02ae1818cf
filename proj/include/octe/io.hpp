#pragma once

#include <map>
#include <string>
#include <vector>

#include "octe/probcore.hpp"

namespace octe {

/// Load a categorical CSV matrix: UTF-8, comma-separated, first row holds
/// variable names, body holds non-negative integer codes. The alphabet is
/// inferred per column as max code + 1. Throws ParseError with the
/// offending row/column on any malformed cell.
DataMatrix load_csv(const std::string& path);

/// Inverse of load_csv for tight alphabets (every column reaches its top
/// category somewhere).
void write_csv(const DataMatrix& data, const std::string& path);

/// Lag assignment for time-series embedding: every non-target column is a
/// candidate source read `lag` steps before the target.
struct LagSpec {
  int target = 0;              // workspace index of the target column
  int default_lag = 1;
  std::map<int, int> overrides;  // per-source lag, by workspace index

  int lag_of(int var_index) const {
    const auto it = overrides.find(var_index);
    return it == overrides.end() ? default_lag : it->second;
  }
};

/// Align sources with the target across time: output sample i pairs each
/// source at time i + max_lag - lag with the target at time i + max_lag.
/// Output length is input length - max lag; alphabets are preserved.
DataMatrix lag_embed(const DataMatrix& series, const LagSpec& spec);

/// Sorted event timestamps (seconds) over a recording of fixed duration.
struct EventSeries {
  std::vector<double> timestamps;
  double duration = 0.0;
};

/// One float timestamp per line, plus a "# duration=<seconds>" header
/// comment.
EventSeries load_events(const std::string& path);

/// One value per full window of the recording: 1 iff the event rate in the
/// window is strictly above the threshold. The trailing partial window is
/// discarded.
std::vector<int> binarize_events(const EventSeries& events,
                                 double window_seconds,
                                 double rate_threshold_hz);

}  // namespace octe
