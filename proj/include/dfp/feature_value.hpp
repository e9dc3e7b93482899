#ifndef DFP_FEATURE_VALUE_HPP
#define DFP_FEATURE_VALUE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace dfp {

// One header-field measurement: a 64-bit integer, or missing when the packet
// has no such field (a UDP packet has no tcp.* values). Missing is encoded
// as INT64_MIN, which no field domain reaches (the widest is tcp.ack at
// 2^32-1; the only negatives are the -1/-2 window-scale sentinels).
class FeatureValue {
 public:
  constexpr FeatureValue() : raw_(kMissingRaw) {}
  constexpr FeatureValue(std::int64_t v) : raw_(v) {}  // NOLINT: implicit by design

  static constexpr FeatureValue missing() { return FeatureValue(); }

  constexpr bool is_missing() const { return raw_ == kMissingRaw; }
  constexpr bool has_value() const { return raw_ != kMissingRaw; }

  // Only meaningful when has_value().
  constexpr std::int64_t value() const { return raw_; }

  friend constexpr bool operator==(FeatureValue a, FeatureValue b) {
    return a.raw_ == b.raw_;
  }

  // Raw encoding, used for hashing and serialization internals.
  constexpr std::int64_t raw() const { return raw_; }

 private:
  static constexpr std::int64_t kMissingRaw =
      std::numeric_limits<std::int64_t>::min();

  std::int64_t raw_;
};

// One packet's fingerprint, aligned index-for-index with a FeatureSchema.
using FeatureVector = std::vector<FeatureValue>;

struct FeatureVectorHash {
  std::size_t operator()(const FeatureVector& v) const noexcept {
    // FNV-1a over the raw encodings; Missing hashes as its own symbol.
    std::uint64_t h = 1469598103934665603ull;
    for (const FeatureValue fv : v) {
      std::uint64_t x = static_cast<std::uint64_t>(fv.raw());
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace dfp

#endif
