#ifndef BELLCERT_LHVCONE_HPP
#define BELLCERT_LHVCONE_HPP

#include "bellcert/measurements.hpp"

#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bellcert {

class ScenarioTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Largest total outcome count (bits_a + bits_b) accepted for enumeration.
inline constexpr std::size_t kMaxAssignmentBits = 30;

/// One deterministic hidden-variable value: a 0/1 verdict for every outcome of every
/// measurement on each side.
///
/// lambda = idx_a * 2^bits_b + idx_b, where idx_a reads bits_a as a binary number with
/// bits_a[0] most significant (likewise idx_b).
struct BooleanAssignment {
  std::uint64_t lambda = 0;
  std::vector<std::uint8_t> bits_a;
  std::vector<std::uint8_t> bits_b;
};

BooleanAssignment decode_assignment(std::uint64_t lambda, const EventLayout& layout);
std::uint64_t encode_assignment(const std::vector<std::uint8_t>& bits_a,
                                const std::vector<std::uint8_t>& bits_b);

/// Restartable forward range over all assignments in increasing lambda order.
class AssignmentRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = BooleanAssignment;
    using difference_type = std::ptrdiff_t;
    using pointer = const BooleanAssignment*;
    using reference = const BooleanAssignment&;

    iterator() = default;
    iterator(const EventLayout* layout, std::uint64_t lambda);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int);
    bool operator==(const iterator& o) const { return current_.lambda == o.current_.lambda; }

   private:
    const EventLayout* layout_ = nullptr;
    BooleanAssignment current_;
  };

  explicit AssignmentRange(EventLayout layout);

  iterator begin() const { return {&layout_, 0}; }
  iterator end() const { return {nullptr, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  EventLayout layout_;
  std::uint64_t count_;
};

AssignmentRange enumerate_assignments(const EventLayout& layout);
AssignmentRange enumerate_assignments(const MeasurementConfig& config);

/// (bits_a (x) bits_b, bits_a, bits_b) in event-vector layout.
RealVector generator_vector(const BooleanAssignment& a, const EventLayout& layout);

struct GeneratorMinimum {
  double value = 0.0;
  std::uint64_t lambda = 0;
};

/// The extremal rays of the local-hidden-variable cone for one measurement layout.
/// Columns are produced on demand from lambda; nothing of size N is stored.
class ConeGenerators {
 public:
  explicit ConeGenerators(EventLayout layout);

  const EventLayout& layout() const { return layout_; }
  std::uint64_t count() const { return std::uint64_t{1} << (layout_.bits_a() + layout_.bits_b()); }
  std::size_t rows() const { return layout_.size(); }

  RealVector column(std::uint64_t lambda) const;
  double dot(const RealVector& f, std::uint64_t lambda) const;

  /// rows() x count() 0/1 matrix. Throws ScenarioTooLarge past 2^27 entries.
  RealMatrix dense() const;

  /// min over lambda of f . B_lambda, exact: for a fixed pattern on one side the
  /// optimum on the other side sets each bit whose coefficient is negative.
  GeneratorMinimum minimize(const RealVector& f) const;

  /// Smallest lambda with f . B_lambda < threshold, if any.
  std::optional<std::uint64_t> first_below(const RealVector& f, double threshold) const;

 private:
  EventLayout layout_;
};

ConeGenerators build_generators(const MeasurementConfig& config);
ConeGenerators build_generators(const EventLayout& layout);

}  // namespace bellcert

#endif  // BELLCERT_LHVCONE_HPP
