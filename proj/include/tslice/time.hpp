#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace tslice {

using Tick = std::int64_t;

/// A temporal reference: either a point or a closed interval, optionally
/// open on the right. A point t and the interval [t, t] are the same value.
class TimeRef {
public:
  constexpr TimeRef() = default;

  static constexpr TimeRef point(Tick t) { return TimeRef(t, t); }
  static constexpr TimeRef interval(Tick lo, std::optional<Tick> hi) { return TimeRef(lo, hi); }
  static constexpr TimeRef open_from(Tick lo) { return TimeRef(lo, std::nullopt); }

  constexpr Tick start() const { return lo_; }
  constexpr std::optional<Tick> end() const { return hi_; }
  constexpr bool is_open() const { return !hi_.has_value(); }
  constexpr bool is_point() const { return hi_ && *hi_ == lo_; }
  /// A closed interval with start after end.
  constexpr bool is_valid() const { return !hi_ || lo_ <= *hi_; }

  /// end - start for closed references; nullopt when open.
  constexpr std::optional<Tick> length() const {
    if (!hi_) return std::nullopt;
    return *hi_ - lo_;
  }

  friend constexpr bool operator==(const TimeRef&, const TimeRef&) = default;
  friend constexpr auto operator<=>(const TimeRef& a, const TimeRef& b) {
    if (auto c = a.lo_ <=> b.lo_; c != 0) return c;
    // open ends sort after every closed end
    if (a.hi_.has_value() != b.hi_.has_value())
      return a.hi_.has_value() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.hi_) return std::strong_ordering::equal;
    return *a.hi_ <=> *b.hi_;
  }

private:
  constexpr TimeRef(Tick lo, std::optional<Tick> hi) : lo_(lo), hi_(hi) {}

  Tick lo_ = 0;
  std::optional<Tick> hi_ = Tick{0};
};

/// True iff every tick of `t` lies in `span`; open ends are unbounded.
constexpr bool within(const TimeRef& t, const TimeRef& span) {
  if (t.start() < span.start()) return false;
  if (span.is_open()) return true;
  if (t.is_open()) return false;
  return *t.end() <= *span.end();
}

/// "2002" for points, "[1700, 1950]" or "[1984, *]" otherwise.
std::string to_string(const TimeRef& t);

} // namespace tslice
