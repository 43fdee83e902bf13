#pragma once

// Reduced words in the free group F_n and its positive monoid F_n^+.
//
// A letter is a signed generator index: +i stands for g_i and -i for its
// inverse, with 1 <= i <= n. The identity is the empty word.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdsx {

class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(int rank);

  // Cancels adjacent inverse pairs. Throws ErrorKind::InvalidInput when a
  // letter index lies outside 1..rank.
  static ReducedWord reduce(int rank, std::span<const int> letters);
  static ReducedWord generator(int rank, int index, int sign = +1);

  // "e" or dot-separated letters such as "g1.g2'.g1" (apostrophe = inverse).
  static ReducedWord parse(int rank, std::string_view text);
  static ReducedWord from_signed(int rank, std::span<const int> letters) {
    return reduce(rank, letters);
  }

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  std::span<const int> letters() const { return letters_; }
  int first() const { return letters_.front(); }
  int last() const { return letters_.back(); }

  // True when every letter is a generator (an element of F_n^+).
  bool is_positive() const;

  ReducedWord inverse() const;
  ReducedWord prefix(std::size_t len) const;
  ReducedWord suffix_from(std::size_t pos) const;

  std::string to_string() const;
  const std::vector<int>& signed_letters() const { return letters_; }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  // Shortlex: shorter first, then letterwise with g1 < g1' < g2 < g2' < ...
  friend std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b);

 private:
  int rank_ = 0;
  std::vector<int> letters_;
};

// Group law; throws ErrorKind::InvalidInput on rank mismatch.
ReducedWord concat(const ReducedWord& t, const ReducedWord& r);
inline ReducedWord operator*(const ReducedWord& t, const ReducedWord& r) { return concat(t, r); }

// |tr| = |t| + |r|, i.e. nothing cancels at the junction.
bool is_geodesic_product(const ReducedWord& t, const ReducedWord& r);

// [e, t1, t1t2, ..., t]
std::vector<ReducedWord> initial_segments(const ReducedWord& t);

// Splits y = r s^{-1} with r, s positive when the reduced spelling has no
// inverse letter followed by a generator; nullopt otherwise.
std::optional<std::pair<ReducedWord, ReducedWord>> positive_negative_factor(const ReducedWord& y);

// All reduced words of length <= radius in shortlex order.
std::vector<ReducedWord> ball(int rank, int radius);
std::uint64_t ball_size(int rank, int radius);

// Positive words of length exactly len, lexicographic.
std::vector<ReducedWord> positive_words(int rank, int len);

}  // namespace pdsx
