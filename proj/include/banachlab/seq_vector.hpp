#ifndef BANACHLAB_SEQ_VECTOR_HPP
#define BANACHLAB_SEQ_VECTOR_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace banachlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval {lo, ..., hi} of positive integers.
class Interval {
 public:
  Interval(std::size_t lo, std::size_t hi);

  std::size_t lo() const noexcept { return lo_; }
  std::size_t hi() const noexcept { return hi_; }
  std::size_t length() const noexcept { return hi_ - lo_ + 1; }
  bool contains(std::size_t i) const noexcept { return lo_ <= i && i <= hi_; }

  // E < F in the block ordering: max E < min F.
  bool precedes(const Interval& other) const noexcept { return hi_ < other.lo_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  std::size_t lo_;
  std::size_t hi_;
};

// Finitely supported real sequence, 1-indexed. Zero entries are never stored,
// so the entry map is a canonical form.
class SeqVector {
 public:
  using Entries = std::map<std::size_t, double>;

  SeqVector() = default;
  explicit SeqVector(Entries entries);

  // values[k] lands on coordinate first_index + k.
  static SeqVector from_dense(std::span<const double> values, std::size_t first_index = 1);
  static SeqVector basis(std::size_t i);
  // c * (e_{first} + ... + e_{first+count-1})
  static SeqVector constant_block(std::size_t first, std::size_t count, double c = 1.0);

  double operator[](std::size_t i) const;
  void set(std::size_t i, double value);

  const Entries& entries() const noexcept { return entries_; }
  std::vector<std::size_t> support() const;
  std::size_t support_size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t min_index() const;
  std::size_t max_index() const;

  // Nonzero values in index order.
  std::vector<double> compressed() const;
  std::vector<double> compressed_abs() const;

  SeqVector abs() const;
  SeqVector scaled(double lambda) const;

  SeqVector& operator+=(const SeqVector& other);
  SeqVector& operator-=(const SeqVector& other);
  friend SeqVector operator+(SeqVector a, const SeqVector& b) { return a += b; }
  friend SeqVector operator-(SeqVector a, const SeqVector& b) { return a -= b; }
  friend SeqVector operator*(double lambda, const SeqVector& v) { return v.scaled(lambda); }

  friend bool operator==(const SeqVector&, const SeqVector&) = default;

 private:
  Entries entries_;
};

// (sum |x_i|^p)^(1/p), or max |x_i| for p = inf. Throws DomainError for p < 1.
double lp_norm(const SeqVector& x, double p);
double lp_norm(std::span<const double> x, double p);

SeqVector restrict(const SeqVector& x, const Interval& e);

// |x_i|^alpha on the support of x.
SeqVector pointwise_power(const SeqVector& x, double alpha);

double pairing(const SeqVector& x, const SeqVector& g);

// "1,2,3" (dense from index 1) or "1:1,5:2.5" (sparse). A plain token continues
// from the previous index. Throws ArgumentError on malformed input.
SeqVector parse_vector(std::string_view text);
std::string format_vector(const SeqVector& x);

// 12 significant digits, the project-wide output precision.
std::string format_real(double v);

}  // namespace banachlab

#endif  // BANACHLAB_SEQ_VECTOR_HPP
