#include "banachlab/seq_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "banachlab/errors.hpp"

namespace banachlab {

Interval::Interval(std::size_t lo, std::size_t hi) : lo_(lo), hi_(hi) {
  if (lo == 0) throw ArgumentError("interval endpoints are 1-indexed");
  if (lo > hi) throw ArgumentError("interval requires lo <= hi");
}

SeqVector::SeqVector(Entries entries) {
  for (const auto& [i, v] : entries) set(i, v);
}

SeqVector SeqVector::from_dense(std::span<const double> values, std::size_t first_index) {
  if (first_index == 0) throw ArgumentError("coordinates are 1-indexed");
  SeqVector out;
  for (std::size_t k = 0; k < values.size(); ++k) out.set(first_index + k, values[k]);
  return out;
}

SeqVector SeqVector::basis(std::size_t i) {
  SeqVector out;
  out.set(i, 1.0);
  return out;
}

SeqVector SeqVector::constant_block(std::size_t first, std::size_t count, double c) {
  SeqVector out;
  for (std::size_t k = 0; k < count; ++k) out.set(first + k, c);
  return out;
}

double SeqVector::operator[](std::size_t i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? 0.0 : it->second;
}

void SeqVector::set(std::size_t i, double value) {
  if (i == 0) throw ArgumentError("coordinates are 1-indexed");
  if (!std::isfinite(value)) throw ArgumentError("vector entries must be finite");
  if (value == 0.0) {
    entries_.erase(i);
  } else {
    entries_[i] = value;
  }
}

std::vector<std::size_t> SeqVector::support() const {
  std::vector<std::size_t> out;
  out.reserve(entries_.size());
  for (const auto& [i, v] : entries_) out.push_back(i);
  return out;
}

std::size_t SeqVector::min_index() const {
  if (entries_.empty()) throw ArgumentError("empty vector has no support");
  return entries_.begin()->first;
}

std::size_t SeqVector::max_index() const {
  if (entries_.empty()) throw ArgumentError("empty vector has no support");
  return entries_.rbegin()->first;
}

std::vector<double> SeqVector::compressed() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& [i, v] : entries_) out.push_back(v);
  return out;
}

std::vector<double> SeqVector::compressed_abs() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& [i, v] : entries_) out.push_back(std::fabs(v));
  return out;
}

SeqVector SeqVector::abs() const {
  SeqVector out;
  for (const auto& [i, v] : entries_) out.entries_[i] = std::fabs(v);
  return out;
}

SeqVector SeqVector::scaled(double lambda) const {
  SeqVector out;
  for (const auto& [i, v] : entries_) out.set(i, lambda * v);
  return out;
}

SeqVector& SeqVector::operator+=(const SeqVector& other) {
  for (const auto& [i, v] : other.entries_) set(i, (*this)[i] + v);
  return *this;
}

SeqVector& SeqVector::operator-=(const SeqVector& other) {
  for (const auto& [i, v] : other.entries_) set(i, (*this)[i] - v);
  return *this;
}

double lp_norm(std::span<const double> x, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  if (x.empty()) return 0.0;
  if (p == kInf) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
  }
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  if (p == 2.0) {
    for (double v : x) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  for (double v : x) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double lp_norm(const SeqVector& x, double p) {
  const auto values = x.compressed();
  return lp_norm(values, p);
}

SeqVector restrict(const SeqVector& x, const Interval& e) {
  SeqVector out;
  const auto& m = x.entries();
  for (auto it = m.lower_bound(e.lo()); it != m.end() && it->first <= e.hi(); ++it) {
    out.set(it->first, it->second);
  }
  return out;
}

SeqVector pointwise_power(const SeqVector& x, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("pointwise_power requires alpha > 0");
  SeqVector out;
  for (const auto& [i, v] : x.entries()) out.set(i, alpha == 1.0 ? std::fabs(v) : std::pow(std::fabs(v), alpha));
  return out;
}

double pairing(const SeqVector& x, const SeqVector& g) {
  const auto& small = x.support_size() <= g.support_size() ? x : g;
  const auto& large = x.support_size() <= g.support_size() ? g : x;
  double s = 0.0;
  for (const auto& [i, v] : small.entries()) s += v * large[i];
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view token) {
  std::string buf(trim(token));
  if (buf.empty()) throw ArgumentError("empty number in vector literal");
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw ArgumentError("malformed number '" + buf + "' in vector literal");
  }
  return v;
}

std::size_t parse_index(std::string_view token) {
  std::string buf(trim(token));
  if (buf.empty() || !std::all_of(buf.begin(), buf.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ArgumentError("malformed index '" + buf + "' in vector literal");
  }
  const auto idx = std::strtoull(buf.c_str(), nullptr, 10);
  if (idx == 0) throw ArgumentError("vector indices are 1-based");
  return static_cast<std::size_t>(idx);
}

}  // namespace

SeqVector parse_vector(std::string_view text) {
  SeqVector out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t next = 1;
  std::size_t last = 0;
  while (true) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    const auto colon = token.find(':');
    std::size_t idx = next;
    double value = 0.0;
    if (colon == std::string_view::npos) {
      value = parse_real(token);
    } else {
      idx = parse_index(token.substr(0, colon));
      value = parse_real(token.substr(colon + 1));
    }
    if (idx <= last) throw ArgumentError("vector literal indices must be strictly increasing");
    out.set(idx, value);
    last = idx;
    next = idx + 1;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_real(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_vector(const SeqVector& x) {
  std::string out;
  for (const auto& [i, v] : x.entries()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i) + ':' + format_real(v);
  }
  return out;
}

}  // namespace banachlab
