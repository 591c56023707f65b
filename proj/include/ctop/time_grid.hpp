#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace ctop {

/// Seconds per planning period. All rate plans, capacities and slots live on
/// a 15-minute grid.
inline constexpr long kPeriodSeconds = 900;

/// Discretization of the planning horizon. Period p (0-based) covers the
/// half-open interval [start_s + 900*p, start_s + 900*(p+1)). The horizon is
/// split into an "active" program window followed by padding periods that
/// exist so every flight can land/exit before the horizon closes.
struct TimeGrid {
  long start_s = 0;
  int active_periods = 0;
  int padding_periods = 0;

  int total_periods() const { return active_periods + padding_periods; }

  /// Period containing absolute time t (floor division, may be negative or
  /// beyond the horizon; callers check in_horizon when it matters).
  int period_of(long t) const {
    long d = t - start_s;
    long q = d / kPeriodSeconds;
    if (d % kPeriodSeconds != 0 && d < 0) --q;
    return static_cast<int>(q);
  }

  long period_start(int p) const { return start_s + kPeriodSeconds * p; }
  long horizon_end_s() const { return period_start(total_periods()); }

  bool in_horizon(int p) const { return p >= 0 && p < total_periods(); }
  bool in_active(int p) const { return p >= 0 && p < active_periods; }

  /// Clock label of a period start, e.g. "20:00" (wraps past midnight).
  std::string label(int p) const {
    long s = period_start(p) % 86400;
    if (s < 0) s += 86400;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02ld:%02ld", s / 3600, (s % 3600) / 60);
    return buf;
  }
};

}  // namespace ctop
