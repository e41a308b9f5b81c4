#include "stlf/trace.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stlf/errors.hpp"

namespace stlf {

bool is_identifier(std::string_view name) noexcept {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

Box::Box(std::vector<Interval> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ArgumentError("box must have at least one dimension");
  std::set<std::string> seen;
  for (const auto& d : dims_) {
    if (!std::isfinite(d.lo) || !std::isfinite(d.hi))
      throw ArgumentError("box dimension '" + d.name + "' has a non-finite bound");
    if (d.lo > d.hi) throw ArgumentError("box dimension '" + d.name + "' has lo > hi");
    if (!seen.insert(d.name).second) throw ArgumentError("duplicate box dimension '" + d.name + "'");
  }
}

bool Box::contains(std::span<const double> x) const noexcept {
  if (x.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= dims_[i].lo && x[i] <= dims_[i].hi)) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const noexcept {
  if (other.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (other[i].lo < dims_[i].lo || other[i].hi > dims_[i].hi) return false;
  }
  return true;
}

double Box::volume() const noexcept {
  double v = 1.0;
  for (const auto& d : dims_) v *= d.width();
  return v;
}

Trace::Trace(double sample_period, std::size_t length, std::vector<Signal> signals)
    : period_(sample_period), length_(length), signals_(std::move(signals)) {
  if (!(period_ > 0.0) || !std::isfinite(period_))
    throw ArgumentError("trace sample period must be positive and finite");
  if (length_ == 0) throw SchemaError("trace must contain at least one sample");
  std::set<std::string, std::less<>> seen;
  for (const auto& s : signals_) {
    if (!is_identifier(s.name)) throw SchemaError("invalid signal name '" + s.name + "'");
    if (!seen.insert(s.name).second) throw SchemaError("duplicate signal '" + s.name + "'");
    if (s.dim == 0) throw SchemaError("signal '" + s.name + "' has dimension 0");
    if (s.data.size() != length_ * s.dim)
      throw SchemaError("signal '" + s.name + "' has " + std::to_string(s.data.size() / s.dim) +
                        " samples, expected " + std::to_string(length_));
    for (double v : s.data) {
      if (!std::isfinite(v)) throw ValueError("signal '" + s.name + "' contains a non-finite value");
    }
  }
}

const Signal* Trace::find(std::string_view name) const noexcept {
  for (const auto& s : signals_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Signal& Trace::at(std::string_view name) const {
  if (const Signal* s = find(name)) return *s;
  throw SchemaError("trace has no signal '" + std::string(name) + "'");
}

std::span<const double> Trace::sample(std::string_view name, std::size_t t) const {
  const Signal& s = at(name);
  if (t >= length_) throw ArgumentError("sample index out of range");
  return std::span<const double>(s.data).subspan(t * s.dim, s.dim);
}

SignalSchema Trace::schema() const {
  SignalSchema out;
  out.reserve(signals_.size());
  for (const auto& s : signals_) out.push_back({s.name, s.dim});
  return out;
}

TraceBuilder::TraceBuilder(const SignalSchema& schema, std::size_t reserve) {
  signals_.reserve(schema.size());
  for (const auto& decl : schema) {
    Signal s{decl.name, decl.dim, {}};
    s.data.reserve(reserve * decl.dim);
    signals_.push_back(std::move(s));
  }
}

void TraceBuilder::push(std::size_t index, std::span<const double> values) {
  Signal& s = signals_.at(index);
  if (values.size() != s.dim)
    throw SchemaError("signal '" + s.name + "' expects dimension " + std::to_string(s.dim));
  s.data.insert(s.data.end(), values.begin(), values.end());
}

Trace TraceBuilder::build(double sample_period) && {
  const std::size_t length = signals_.empty() ? 0 : signals_.front().data.size() / signals_.front().dim;
  return Trace(sample_period, length, std::move(signals_));
}

Trace decimate(const Trace& trace, std::size_t stride) {
  if (stride == 0) throw ArgumentError("decimation stride must be at least 1");
  if (stride == 1) return trace;
  const std::size_t n = (trace.length() - 1) / stride + 1;
  std::vector<Signal> out;
  out.reserve(trace.signals().size());
  for (const auto& s : trace.signals()) {
    Signal d{s.name, s.dim, {}};
    d.data.reserve(n * s.dim);
    for (std::size_t k = 0; k < n; ++k) {
      const auto first = s.data.begin() + static_cast<std::ptrdiff_t>(k * stride * s.dim);
      d.data.insert(d.data.end(), first, first + static_cast<std::ptrdiff_t>(s.dim));
    }
    out.push_back(std::move(d));
  }
  return Trace(trace.sample_period() * static_cast<double>(stride), n, std::move(out));
}

}  // namespace stlf
