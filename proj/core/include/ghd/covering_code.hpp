#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghd/bit_string.hpp"

namespace ghd {

/// Largest length for which the greedy construction enumerates the cube.
inline constexpr std::size_t kMaxGreedyLength = 22;
/// Largest length audited exhaustively; longer codes get a sampled audit.
inline constexpr std::size_t kMaxExhaustiveAuditLength = 20;
inline constexpr std::size_t kDefaultAuditSamples = 100'000;

/// A set of codewords C in {0,1}^n with a claimed covering radius. The class
/// does not prove the claim; audit_covering() does.
class CoveringCode {
 public:
  /// Throws InvalidInput on an empty set, a radius above n, or a length mismatch.
  CoveringCode(std::size_t n, std::size_t radius, std::vector<BitString> codewords);

  std::size_t length() const noexcept { return n_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return codewords_.size(); }
  const std::vector<BitString>& codewords() const noexcept { return codewords_; }
  const BitString& operator[](std::size_t i) const { return codewords_.at(i); }
  /// ceil(log2 |C|) bits per codeword index.
  unsigned index_width() const noexcept;

 private:
  std::size_t n_;
  std::size_t radius_;
  std::vector<BitString> codewords_;
};

/// Greedy set cover over the whole cube: repeatedly take the word whose ball
/// covers the most uncovered points (lowest word on ties). Codewords come out
/// sorted. Throws SizeLimitExceeded for n > kMaxGreedyLength.
CoveringCode greedy_covering_code(std::size_t n, std::size_t radius);

/// Uniform random codewords, ceil((n ln 2 + ln(1/(1-confidence))) 2^n / V(n,r))
/// of them, grown until the covering audit passes. Only the audit backs the
/// covering claim when n > kMaxExhaustiveAuditLength. Throws
/// ConstructionFailure if the code would exceed `max_size` or never passes.
CoveringCode random_covering_code(std::size_t n, std::size_t radius, double confidence, std::uint64_t seed = 0,
                                  std::size_t max_size = std::size_t{1} << 20);

struct NearestCodeword {
  std::size_t index = 0;
  std::size_t distance = 0;
};

/// Exhaustive search; ties go to the lowest index.
NearestCodeword nearest_codeword(const CoveringCode& code, const BitString& x);

struct CoverageAudit {
  bool exhaustive = false;
  std::size_t points_checked = 0;
  std::optional<BitString> uncovered;  // first point found farther than the radius

  bool passed() const noexcept { return !uncovered.has_value(); }
};

/// Exhaustive for n <= kMaxExhaustiveAuditLength, otherwise `samples` uniform points.
CoverageAudit audit_covering(const CoveringCode& code, std::size_t samples = kDefaultAuditSamples,
                             std::uint64_t seed = 0);

/// |C| * V(n, r) >= 2^n, exactly.
bool meets_volume_lower_bound(const CoveringCode& code);
/// |C| <= (0.694 n + 1) 2^n / V(n, r), exactly.
bool meets_greedy_size_bound(const CoveringCode& code);

/// Text form: a header line `covering-code <n> <r> <size>` followed by one
/// hex row per codeword (BitString::to_hex).
std::string serialize(const CoveringCode& code);
CoveringCode parse_covering_code(std::string_view text);

/// Maximum pairwise Hamming distance. Throws InvalidInput on an empty set.
std::size_t set_diameter(std::span<const BitString> points);

}  // namespace ghd
