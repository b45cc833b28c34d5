#pragma once

#include "calibmetrics/errors.hpp"

namespace calib {

// Inclusive calendar-year range.
struct YearRange {
  int start = 0;
  int end = 0;

  bool empty() const { return start > end; }
  int length() const { return empty() ? 0 : end - start + 1; }
  bool contains(int year) const { return year >= start && year <= end; }

  // Throws EmptyWindow when start > end.
  void require_nonempty() const {
    if (empty()) throw EmptyWindow(start, end);
  }

  bool operator==(const YearRange&) const = default;
};

}  // namespace calib
