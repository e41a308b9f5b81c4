#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stlf {

/// True when `name` matches [a-zA-Z_][a-zA-Z0-9_]*.
bool is_identifier(std::string_view name) noexcept;

/// One named interval of an input box.
struct Interval {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Point in an input box (one initial configuration).
struct InputVector {
  std::vector<double> values;

  InputVector() = default;
  explicit InputVector(std::vector<double> v) : values(std::move(v)) {}
  InputVector(std::initializer_list<double> v) : values(v) {}

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  std::span<const double> span() const noexcept { return values; }

  bool operator==(const InputVector&) const = default;
};

/// Axis-aligned box of admissible inputs.
///
/// Invariants: at least one dimension, lo <= hi everywhere, finite bounds,
/// unique dimension names.
class Box {
 public:
  explicit Box(std::vector<Interval> dims);

  std::size_t dim() const noexcept { return dims_.size(); }
  const std::vector<Interval>& dims() const noexcept { return dims_; }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }

  bool contains(std::span<const double> x) const noexcept;
  bool contains(const InputVector& x) const noexcept { return contains(x.span()); }
  /// True when `other` lies inside this box (same dimension count).
  bool contains(const Box& other) const noexcept;

  /// Product of the interval widths.
  double volume() const noexcept;

  bool operator==(const Box&) const = default;

 private:
  std::vector<Interval> dims_;
};

/// Declared signal: name and per-sample dimension.
struct SignalDecl {
  std::string name;
  std::size_t dim = 1;
  bool operator==(const SignalDecl&) const = default;
};

/// Ordered list of declared signals.
using SignalSchema = std::vector<SignalDecl>;

/// A named, fixed-dimension channel stored row-major (sample-major).
struct Signal {
  std::string name;
  std::size_t dim = 1;
  std::vector<double> data;  // length * dim values

  bool operator==(const Signal&) const = default;
};

/// Uniformly sampled multi-channel time series from one episode.
///
/// Immutable after construction. Signals keep their insertion order, which is
/// also the CSV column order.
class Trace {
 public:
  /// Validates every invariant: period > 0, length >= 1, identical lengths,
  /// dims >= 1, identifier names, unique names, finite samples.
  Trace(double sample_period, std::size_t length, std::vector<Signal> signals);

  double sample_period() const noexcept { return period_; }
  std::size_t length() const noexcept { return length_; }
  const std::vector<Signal>& signals() const noexcept { return signals_; }

  /// nullptr when absent.
  const Signal* find(std::string_view name) const noexcept;
  const Signal& at(std::string_view name) const;

  /// Sample `t` of the named signal.
  std::span<const double> sample(std::string_view name, std::size_t t) const;

  SignalSchema schema() const;

  bool operator==(const Trace&) const = default;

 private:
  double period_;
  std::size_t length_;
  std::vector<Signal> signals_;
};

/// Incremental trace construction used by simulators.
class TraceBuilder {
 public:
  explicit TraceBuilder(const SignalSchema& schema, std::size_t reserve = 0);

  /// Appends one value block for signal `index` (schema order).
  void push(std::size_t index, std::span<const double> values);
  /// Build after every signal received the same number of samples.
  Trace build(double sample_period) &&;

 private:
  std::vector<Signal> signals_;
};

/// Keeps samples 0, stride, 2*stride, ...; the period is multiplied by stride.
/// stride == 0 is an ArgumentError.
Trace decimate(const Trace& trace, std::size_t stride);

}  // namespace stlf
