#include "pdsx/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "pdsx/error.hpp"

namespace pdsx {

namespace {

void check_letter(int rank, int letter) {
  const int idx = std::abs(letter);
  if (letter == 0 || idx > rank) {
    throw Error(ErrorKind::InvalidInput,
                "generator index " + std::to_string(letter) + " out of range for rank " +
                    std::to_string(rank));
  }
}

// Sort key placing g_i before g_i^{-1} before g_{i+1}.
int letter_key(int letter) { return 2 * std::abs(letter) + (letter < 0 ? 1 : 0); }

void require_same_rank(const ReducedWord& a, const ReducedWord& b) {
  if (a.rank() != b.rank()) {
    throw Error(ErrorKind::InvalidInput, "rank mismatch: " + std::to_string(a.rank()) + " vs " +
                                             std::to_string(b.rank()));
  }
}

}  // namespace

bool guards_overridden() { return std::getenv("PDSX_GUARD_OVERRIDE") != nullptr; }

ReducedWord::ReducedWord(int rank) : rank_(rank) {
  if (rank < 0) throw Error(ErrorKind::InvalidInput, "negative rank");
}

ReducedWord ReducedWord::reduce(int rank, std::span<const int> letters) {
  ReducedWord w(rank);
  for (int l : letters) {
    check_letter(rank, l);
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

ReducedWord ReducedWord::generator(int rank, int index, int sign) {
  const int l = sign < 0 ? -index : index;
  return reduce(rank, std::span<const int>(&l, 1));
}

ReducedWord ReducedWord::parse(int rank, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty() || text == "e") return ReducedWord(rank);
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = trim(text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos));
    int sign = +1;
    if (!tok.empty() && tok.back() == '\'') {
      sign = -1;
      tok.remove_suffix(1);
    }
    if (tok.size() < 2 || tok.front() != 'g') {
      throw Error(ErrorKind::Parse, "bad letter '" + std::string(tok) + "' in word '" +
                                        std::string(text) + "'");
    }
    int idx = 0;
    for (char c : tok.substr(1)) {
      if (c < '0' || c > '9') throw Error(ErrorKind::Parse, "bad letter in word '" + std::string(text) + "'");
      idx = idx * 10 + (c - '0');
      if (idx > 1'000'000) throw Error(ErrorKind::Parse, "generator index too large");
    }
    letters.push_back(sign * idx);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return reduce(rank, letters);
}

bool ReducedWord::is_positive() const {
  return std::all_of(letters_.begin(), letters_.end(), [](int l) { return l > 0; });
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord w(rank_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

ReducedWord ReducedWord::prefix(std::size_t len) const {
  ReducedWord w(rank_);
  w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(len, letters_.size())));
  return w;
}

ReducedWord ReducedWord::suffix_from(std::size_t pos) const {
  ReducedWord w(rank_);
  if (pos < letters_.size()) w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos), letters_.end());
  return w;
}

std::string ReducedWord::to_string() const {
  if (letters_.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << '.';
    os << 'g' << std::abs(letters_[i]);
    if (letters_[i] < 0) os << '\'';
  }
  return os.str();
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    if (auto c = letter_key(a.letters_[i]) <=> letter_key(b.letters_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

ReducedWord concat(const ReducedWord& t, const ReducedWord& r) {
  require_same_rank(t, r);
  std::vector<int> all(t.signed_letters());
  all.insert(all.end(), r.signed_letters().begin(), r.signed_letters().end());
  return ReducedWord::reduce(t.rank(), all);
}

bool is_geodesic_product(const ReducedWord& t, const ReducedWord& r) {
  require_same_rank(t, r);
  return t.is_identity() || r.is_identity() || t.last() != -r.first();
}

std::vector<ReducedWord> initial_segments(const ReducedWord& t) {
  std::vector<ReducedWord> out;
  out.reserve(t.length() + 1);
  for (std::size_t k = 0; k <= t.length(); ++k) out.push_back(t.prefix(k));
  return out;
}

std::optional<std::pair<ReducedWord, ReducedWord>> positive_negative_factor(const ReducedWord& y) {
  auto letters = y.letters();
  std::size_t split = 0;
  while (split < letters.size() && letters[split] > 0) ++split;
  for (std::size_t i = split; i < letters.size(); ++i) {
    if (letters[i] > 0) return std::nullopt;
  }
  ReducedWord r = y.prefix(split);
  ReducedWord s = y.suffix_from(split).inverse();
  return std::make_pair(std::move(r), std::move(s));
}

std::vector<ReducedWord> ball(int rank, int radius) {
  std::vector<ReducedWord> out{ReducedWord(rank)};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int g = 1; g <= rank; ++g) {
        for (int l : {g, -g}) {
          const ReducedWord& w = out[i];
          if (!w.is_identity() && w.last() == -l) continue;
          std::vector<int> letters(w.signed_letters());
          letters.push_back(l);
          out.push_back(ReducedWord::reduce(rank, letters));
        }
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::uint64_t ball_size(int rank, int radius) {
  if (rank == 0 || radius == 0) return 1;
  if (rank == 1) return 1 + 2 * static_cast<std::uint64_t>(radius);
  std::uint64_t p = 1;
  const std::uint64_t b = 2 * static_cast<std::uint64_t>(rank) - 1;
  for (int i = 0; i < radius; ++i) p *= b;
  return 1 + 2 * static_cast<std::uint64_t>(rank) * (p - 1) / (b - 1);
}

std::vector<ReducedWord> positive_words(int rank, int len) {
  std::vector<ReducedWord> out{ReducedWord(rank)};
  for (int step = 0; step < len; ++step) {
    std::vector<ReducedWord> next;
    next.reserve(out.size() * static_cast<std::size_t>(rank));
    for (const auto& w : out) {
      for (int g = 1; g <= rank; ++g) {
        std::vector<int> letters(w.signed_letters());
        letters.push_back(g);
        next.push_back(ReducedWord::reduce(rank, letters));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace pdsx
