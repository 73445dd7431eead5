#include "bellcert/lhvcone.hpp"

#include <bit>
#include <limits>
#include <string>

namespace bellcert {

namespace {

void check_guard(const EventLayout& layout) {
  const std::size_t bits = layout.bits_a() + layout.bits_b();
  if (bits > kMaxAssignmentBits) {
    throw ScenarioTooLarge("scenario has " + std::to_string(bits) + " outcome bits; the limit is " +
                           std::to_string(kMaxAssignmentBits));
  }
}

std::vector<std::uint8_t> unpack(std::uint64_t idx, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t t = 0; t < n; ++t) bits[t] = static_cast<std::uint8_t>((idx >> (n - 1 - t)) & 1U);
  return bits;
}

std::uint64_t pack(const std::vector<std::uint8_t>& bits) {
  std::uint64_t idx = 0;
  for (auto b : bits) idx = (idx << 1) | (b ? 1U : 0U);
  return idx;
}

// View of f split into the joint, Alice and Bob blocks.
struct Blocks {
  const RealVector& f;
  std::size_t na;
  std::size_t nb;

  double joint(std::size_t a, std::size_t b) const { return f[static_cast<Eigen::Index>(a * nb + b)]; }
  double alice(std::size_t a) const { return f[static_cast<Eigen::Index>(na * nb + a)]; }
  double bob(std::size_t b) const { return f[static_cast<Eigen::Index>(na * nb + na + b)]; }
};

// Minimizes over all assignments by enumerating the `outer` side's patterns in Gray-code
// order and solving the inner side bitwise. Coefficients are rebuilt from scratch every
// 1024 steps to bound accumulated rounding.
GeneratorMinimum minimize_blocks(const Blocks& blk, bool outer_is_a) {
  const std::size_t n_outer = outer_is_a ? blk.na : blk.nb;
  const std::size_t n_inner = outer_is_a ? blk.nb : blk.na;
  auto coupling = [&](std::size_t o, std::size_t in) {
    return outer_is_a ? blk.joint(o, in) : blk.joint(in, o);
  };
  auto outer_single = [&](std::size_t o) { return outer_is_a ? blk.alice(o) : blk.bob(o); };
  auto inner_single = [&](std::size_t in) { return outer_is_a ? blk.bob(in) : blk.alice(in); };

  std::vector<double> w(n_inner);
  double s = 0.0;
  auto rebuild = [&](std::uint64_t pattern) {
    s = 0.0;
    for (std::size_t in = 0; in < n_inner; ++in) w[in] = inner_single(in);
    for (std::size_t o = 0; o < n_outer; ++o) {
      if ((pattern >> (n_outer - 1 - o)) & 1U) {
        s += outer_single(o);
        for (std::size_t in = 0; in < n_inner; ++in) w[in] += coupling(o, in);
      }
    }
  };

  GeneratorMinimum best{std::numeric_limits<double>::infinity(), 0};
  const std::uint64_t outer_count = std::uint64_t{1} << n_outer;
  std::uint64_t pattern = 0;
  rebuild(0);
  for (std::uint64_t i = 0; i < outer_count; ++i) {
    if (i > 0) {
      pattern = i ^ (i >> 1);
      if ((i & 1023U) == 0) {
        rebuild(pattern);
      } else {
        const auto pos = static_cast<std::size_t>(std::countr_zero(i));
        const std::size_t o = n_outer - 1 - pos;
        const double sign = ((pattern >> pos) & 1U) ? 1.0 : -1.0;
        s += sign * outer_single(o);
        for (std::size_t in = 0; in < n_inner; ++in) w[in] += sign * coupling(o, in);
      }
    }
    double value = s;
    std::uint64_t inner = 0;
    for (std::size_t in = 0; in < n_inner; ++in) {
      inner <<= 1;
      if (w[in] < 0.0) {
        value += w[in];
        inner |= 1U;
      }
    }
    const std::uint64_t lambda = outer_is_a ? (pattern << blk.nb) | inner : (inner << blk.nb) | pattern;
    if (value < best.value || (value == best.value && lambda < best.lambda)) best = {value, lambda};
  }
  return best;
}

}  // namespace

BooleanAssignment decode_assignment(std::uint64_t lambda, const EventLayout& layout) {
  const std::size_t na = layout.bits_a();
  const std::size_t nb = layout.bits_b();
  check_guard(layout);
  if (lambda >= (std::uint64_t{1} << (na + nb))) throw std::out_of_range("decode_assignment: lambda out of range");
  return {lambda, unpack(lambda >> nb, na), unpack(lambda & ((std::uint64_t{1} << nb) - 1), nb)};
}

std::uint64_t encode_assignment(const std::vector<std::uint8_t>& bits_a, const std::vector<std::uint8_t>& bits_b) {
  return (pack(bits_a) << bits_b.size()) | pack(bits_b);
}

AssignmentRange::iterator::iterator(const EventLayout* layout, std::uint64_t lambda) : layout_(layout) {
  current_.lambda = lambda;
  if (layout_ != nullptr && lambda < (std::uint64_t{1} << (layout_->bits_a() + layout_->bits_b()))) {
    current_ = decode_assignment(lambda, *layout_);
  }
}

AssignmentRange::iterator& AssignmentRange::iterator::operator++() {
  *this = iterator(layout_, current_.lambda + 1);
  return *this;
}

AssignmentRange::iterator AssignmentRange::iterator::operator++(int) {
  iterator old = *this;
  ++*this;
  return old;
}

AssignmentRange::AssignmentRange(EventLayout layout) : layout_(std::move(layout)) {
  check_guard(layout_);
  count_ = std::uint64_t{1} << (layout_.bits_a() + layout_.bits_b());
}

AssignmentRange enumerate_assignments(const EventLayout& layout) { return AssignmentRange(layout); }
AssignmentRange enumerate_assignments(const MeasurementConfig& config) { return AssignmentRange(config.layout()); }

RealVector generator_vector(const BooleanAssignment& a, const EventLayout& layout) {
  const std::size_t na = layout.bits_a();
  const std::size_t nb = layout.bits_b();
  if (a.bits_a.size() != na || a.bits_b.size() != nb) {
    throw DimensionMismatch("generator_vector: assignment shape does not match layout");
  }
  RealVector v(static_cast<Eigen::Index>(layout.size()));
  Eigen::Index r = 0;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) v[r++] = static_cast<double>(a.bits_a[x] & a.bits_b[y]);
  for (std::size_t x = 0; x < na; ++x) v[r++] = a.bits_a[x];
  for (std::size_t y = 0; y < nb; ++y) v[r++] = a.bits_b[y];
  return v;
}

ConeGenerators::ConeGenerators(EventLayout layout) : layout_(std::move(layout)) { check_guard(layout_); }

RealVector ConeGenerators::column(std::uint64_t lambda) const {
  return generator_vector(decode_assignment(lambda, layout_), layout_);
}

double ConeGenerators::dot(const RealVector& f, std::uint64_t lambda) const {
  const std::size_t na = layout_.bits_a();
  const std::size_t nb = layout_.bits_b();
  if (static_cast<std::size_t>(f.size()) != rows()) throw DimensionMismatch("ConeGenerators::dot: size mismatch");
  const Blocks blk{f, na, nb};
  const std::uint64_t idx_a = lambda >> nb;
  const std::uint64_t idx_b = lambda & ((std::uint64_t{1} << nb) - 1);
  double value = 0.0;
  for (std::size_t y = 0; y < nb; ++y)
    if ((idx_b >> (nb - 1 - y)) & 1U) value += blk.bob(y);
  for (std::size_t x = 0; x < na; ++x) {
    if (!((idx_a >> (na - 1 - x)) & 1U)) continue;
    value += blk.alice(x);
    for (std::size_t y = 0; y < nb; ++y)
      if ((idx_b >> (nb - 1 - y)) & 1U) value += blk.joint(x, y);
  }
  return value;
}

RealMatrix ConeGenerators::dense() const {
  const std::uint64_t n = count();
  if (n * rows() > (std::uint64_t{1} << 27)) throw ScenarioTooLarge("ConeGenerators::dense: matrix too large");
  RealMatrix m(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(n));
  for (std::uint64_t lambda = 0; lambda < n; ++lambda) m.col(static_cast<Eigen::Index>(lambda)) = column(lambda);
  return m;
}

GeneratorMinimum ConeGenerators::minimize(const RealVector& f) const {
  if (static_cast<std::size_t>(f.size()) != rows()) throw DimensionMismatch("ConeGenerators::minimize: size mismatch");
  const Blocks blk{f, layout_.bits_a(), layout_.bits_b()};
  return minimize_blocks(blk, blk.na <= blk.nb);
}

std::optional<std::uint64_t> ConeGenerators::first_below(const RealVector& f, double threshold) const {
  if (static_cast<std::size_t>(f.size()) != rows()) throw DimensionMismatch("ConeGenerators::first_below: size mismatch");
  const std::size_t na = layout_.bits_a();
  const std::size_t nb = layout_.bits_b();
  const Blocks blk{f, na, nb};
  std::vector<double> w(nb);
  std::vector<double> min_rest(nb + 1);
  for (std::uint64_t idx_a = 0; idx_a < (std::uint64_t{1} << na); ++idx_a) {
    double s = 0.0;
    for (std::size_t y = 0; y < nb; ++y) w[y] = blk.bob(y);
    for (std::size_t x = 0; x < na; ++x) {
      if (!((idx_a >> (na - 1 - x)) & 1U)) continue;
      s += blk.alice(x);
      for (std::size_t y = 0; y < nb; ++y) w[y] += blk.joint(x, y);
    }
    min_rest[nb] = 0.0;
    for (std::size_t y = nb; y-- > 0;) min_rest[y] = min_rest[y + 1] + std::min(0.0, w[y]);
    if (!(s + min_rest[0] < threshold)) continue;
    std::uint64_t idx_b = 0;
    double current = s;
    for (std::size_t y = 0; y < nb; ++y) {
      idx_b <<= 1;
      if (!(current + min_rest[y + 1] < threshold)) {
        idx_b |= 1U;
        current += w[y];
      }
    }
    return (idx_a << nb) | idx_b;
  }
  return std::nullopt;
}

ConeGenerators build_generators(const MeasurementConfig& config) { return ConeGenerators(config.layout()); }
ConeGenerators build_generators(const EventLayout& layout) { return ConeGenerators(layout); }

}  // namespace bellcert
