#include "ghd/covering_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <sstream>

#include "ghd/ball_volume.hpp"
#include "ghd/errors.hpp"
#include "ghd/instance.hpp"
#include "ghd/shared_randomness.hpp"

namespace ghd {

namespace {

using Point = std::uint32_t;

// Every n-bit mask of weight <= r; XOR with a centre enumerates its ball.
std::vector<Point> ball_masks(std::size_t n, std::size_t r) {
  std::vector<Point> masks;
  const Point end = Point{1} << n;
  for (Point m = 0; m < end; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) <= r) masks.push_back(m);
  }
  return masks;
}

std::size_t ball_size(std::size_t n, std::size_t r) {
  return ball_volume(n, r).value.get_ui();
}

Point to_point(const BitString& s) { return static_cast<Point>(s.to_integer()); }

}  // namespace

CoveringCode::CoveringCode(std::size_t n, std::size_t radius, std::vector<BitString> codewords)
    : n_(n), radius_(radius), codewords_(std::move(codewords)) {
  if (n_ == 0) throw InvalidInput("covering code: n must be positive");
  if (radius_ > n_) throw InvalidInput("covering code: radius exceeds n");
  if (codewords_.empty()) throw InvalidInput("covering code: no codewords");
  for (const auto& c : codewords_) {
    if (c.size() != n_) throw InvalidInput("covering code: codeword length differs from n");
  }
}

unsigned CoveringCode::index_width() const noexcept {
  return static_cast<unsigned>(std::bit_width(codewords_.size() - 1));
}

CoveringCode greedy_covering_code(std::size_t n, std::size_t radius) {
  if (n == 0) throw InvalidInput("greedy_covering_code: n must be positive");
  if (radius > n) throw InvalidInput("greedy_covering_code: radius exceeds n");
  if (n > kMaxGreedyLength) {
    throw SizeLimitExceeded("greedy_covering_code: n = " + std::to_string(n) +
                            " is too large for exhaustive construction; use random_covering_code");
  }
  if (radius == n) return CoveringCode(n, radius, {BitString(n)});

  const std::size_t universe = std::size_t{1} << n;
  const std::vector<Point> masks = ball_masks(n, radius);
  const auto volume = static_cast<std::int64_t>(masks.size());

  // gain[c] = number of uncovered points in the ball around c, kept exact.
  std::vector<std::int64_t> gain(universe, volume);
  std::vector<unsigned char> covered(universe, 0);
  std::size_t uncovered = universe;

  // Max-heap on (gain, -index) with lazy deletion of stale entries.
  using Entry = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<Entry> heap;
  for (std::size_t c = 0; c < universe; ++c) heap.emplace(volume, -static_cast<std::int64_t>(c));

  std::vector<BitString> chosen;
  while (uncovered > 0) {
    const auto [g, neg_index] = heap.top();
    heap.pop();
    const auto c = static_cast<Point>(-neg_index);
    if (g != gain[c]) {
      if (gain[c] > 0) heap.emplace(gain[c], neg_index);
      continue;
    }
    chosen.push_back(BitString::from_integer(n, c));
    for (const Point m : masks) {
      const Point z = c ^ m;
      if (covered[z]) continue;
      covered[z] = 1;
      if (--uncovered == 0) break;
      for (const Point m2 : masks) --gain[z ^ m2];
    }
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const BitString& a, const BitString& b) { return a.to_integer() < b.to_integer(); });
  return CoveringCode(n, radius, std::move(chosen));
}

CoveringCode random_covering_code(std::size_t n, std::size_t radius, double confidence, std::uint64_t seed,
                                  std::size_t max_size) {
  if (n == 0) throw InvalidInput("random_covering_code: n must be positive");
  if (radius > n) throw InvalidInput("random_covering_code: radius exceeds n");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidInput("random_covering_code: confidence must be in (0, 1)");
  if (radius == n) return CoveringCode(n, radius, {BitString(n)});

  const double log2_ratio = static_cast<double>(n) - log2_ball_volume(n, radius);
  const double factor = static_cast<double>(n) * std::log(2.0) - std::log1p(-confidence);
  const double target = std::ceil(factor * std::exp2(log2_ratio));
  if (!(target <= static_cast<double>(max_size))) {
    throw ConstructionFailure("random_covering_code: required size exceeds the cap of " + std::to_string(max_size));
  }

  std::vector<BitString> words;
  std::size_t drawn = 0;
  auto draw = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) words.push_back(random_bit_string(n, derive_seed(seed, drawn++)));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
  };

  auto batch = static_cast<std::size_t>(target);
  draw(batch);
  for (int attempt = 0; attempt < 8; ++attempt) {
    CoveringCode code(n, radius, words);
    if (audit_covering(code, kDefaultAuditSamples, derive_seed(seed, ~std::uint64_t{0} - attempt)).passed()) {
      return code;
    }
    batch = std::max<std::size_t>(1, batch / 2);
    if (words.size() + batch > max_size) break;
    draw(batch);
  }
  throw ConstructionFailure("random_covering_code: audit kept failing");
}

NearestCodeword nearest_codeword(const CoveringCode& code, const BitString& x) {
  if (x.size() != code.length()) throw InvalidInput("nearest_codeword: length mismatch");
  NearestCodeword best{0, hamming_distance(code[0], x)};
  for (std::size_t i = 1; i < code.size() && best.distance > 0; ++i) {
    const std::size_t d = hamming_distance(code.codewords()[i], x);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

CoverageAudit audit_covering(const CoveringCode& code, std::size_t samples, std::uint64_t seed) {
  CoverageAudit audit;
  const std::size_t n = code.length();
  if (n <= kMaxExhaustiveAuditLength) {
    audit.exhaustive = true;
    const std::size_t universe = std::size_t{1} << n;
    audit.points_checked = universe;
    std::vector<unsigned char> covered(universe, 0);
    if (ball_size(n, code.radius()) >= universe) return audit;
    const std::vector<Point> masks = ball_masks(n, code.radius());
    for (const auto& c : code.codewords()) {
      const Point centre = to_point(c);
      for (const Point m : masks) covered[centre ^ m] = 1;
    }
    const auto hole = std::find(covered.begin(), covered.end(), 0);
    if (hole != covered.end()) {
      audit.uncovered = BitString::from_integer(n, static_cast<std::uint64_t>(hole - covered.begin()));
    }
    return audit;
  }
  for (std::size_t k = 0; k < samples; ++k) {
    BitString z = random_bit_string(n, derive_seed(seed, k));
    ++audit.points_checked;
    if (nearest_codeword(code, z).distance > code.radius()) {
      audit.uncovered = std::move(z);
      break;
    }
  }
  return audit;
}

bool meets_volume_lower_bound(const CoveringCode& code) {
  mpz_class cube;
  mpz_ui_pow_ui(cube.get_mpz_t(), 2, static_cast<unsigned long>(code.length()));
  return mpz_class(static_cast<unsigned long>(code.size())) * ball_volume(code.length(), code.radius()).value >= cube;
}

bool meets_greedy_size_bound(const CoveringCode& code) {
  mpz_class cube;
  mpz_ui_pow_ui(cube.get_mpz_t(), 2, static_cast<unsigned long>(code.length()));
  const mpz_class lhs = mpz_class(1000) * static_cast<unsigned long>(code.size()) *
                        ball_volume(code.length(), code.radius()).value;
  const mpz_class rhs = (mpz_class(694) * static_cast<unsigned long>(code.length()) + 1000) * cube;
  return lhs <= rhs;
}

std::string serialize(const CoveringCode& code) {
  std::ostringstream out;
  out << "covering-code " << code.length() << ' ' << code.radius() << ' ' << code.size() << '\n';
  for (const auto& c : code.codewords()) out << c.to_hex() << '\n';
  return out.str();
}

CoveringCode parse_covering_code(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long long n = 0;
  long long r = 0;
  long long size = 0;
  if (!(in >> tag >> n >> r >> size) || tag != "covering-code" || n <= 0 || r < 0 || size <= 0) {
    throw InvalidInput("covering code: malformed header");
  }
  std::vector<BitString> words;
  words.reserve(static_cast<std::size_t>(size));
  std::string row;
  for (long long i = 0; i < size; ++i) {
    if (!(in >> row)) throw InvalidInput("covering code: fewer rows than the header declares");
    words.push_back(BitString::from_hex(static_cast<std::size_t>(n), row));
  }
  if (in >> row) throw InvalidInput("covering code: trailing data after the declared rows");
  return CoveringCode(static_cast<std::size_t>(n), static_cast<std::size_t>(r), std::move(words));
}

std::size_t set_diameter(std::span<const BitString> points) {
  if (points.empty()) throw InvalidInput("set_diameter: empty set");
  std::size_t diameter = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      diameter = std::max(diameter, hamming_distance(points[i], points[j]));
    }
  }
  return diameter;
}

}  // namespace ghd
