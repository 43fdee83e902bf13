#include "pdsx/qlattice.hpp"

#include <sstream>

namespace pdsx::ql {

ZkNk::ZkNk(int k) : k_(k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "ZkNk needs k >= 1");
}

void ZkNk::check(const Element& x) const {
  if (x.size() != static_cast<std::size_t>(k_)) {
    throw Error(ErrorKind::InvalidInput, "element has " + std::to_string(x.size()) + " components, expected " +
                                             std::to_string(k_));
  }
}

ZkNk::Element ZkNk::multiply(const Element& x, const Element& y) const {
  check(x);
  check(y);
  Element z(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
  return z;
}

ZkNk::Element ZkNk::invert(const Element& x) const {
  check(x);
  Element z(x);
  for (auto& v : z) v = -v;
  return z;
}

bool ZkNk::in_positive(const Element& x) const {
  check(x);
  return std::all_of(x.begin(), x.end(), [](long v) { return v >= 0; });
}

UpperBound<ZkNk::Element> ZkNk::lub(const Element& x, const Element& y) const {
  check(x);
  check(y);
  Element z(x.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::max({x[i], y[i], 0L});
  return UpperBound<Element>::finite(std::move(z));
}

std::vector<ZkNk::Element> ZkNk::ball(int radius) const {
  std::vector<Element> out{Element()};
  for (int axis = 0; axis < k_; ++axis) {
    std::vector<Element> next;
    for (const auto& head : out) {
      for (long v = -radius; v <= radius; ++v) {
        Element e(head);
        e.push_back(v);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string ZkNk::format(const Element& x) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  return os.str();
}

ZkNk::Element ZkNk::parse(const std::string& text) const {
  Element x;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
      x.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "bad integer vector '" + text + "'");
    }
  }
  if (x.size() != static_cast<std::size_t>(k_)) {
    throw Error(ErrorKind::Parse, "expected " + std::to_string(k_) + " components in '" + text + "'");
  }
  return x;
}

FreeQL::FreeQL(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "FreeQL needs n >= 1");
}

UpperBound<ReducedWord> FreeQL::lub(const ReducedWord& x, const ReducedWord& y) const {
  // Upper bounds of x in P are exactly sigma(x) P, with sigma(x) = r when
  // x = r s^{-1}; so x v y = sigma(x) v sigma(y) in the prefix order.
  auto fx = positive_negative_factor(x);
  auto fy = positive_negative_factor(y);
  if (!fx || !fy) return UpperBound<ReducedWord>::infinity();
  const ReducedWord& a = fx->first;
  const ReducedWord& b = fy->first;
  const ReducedWord& shorter = a.length() <= b.length() ? a : b;
  const ReducedWord& longer = a.length() <= b.length() ? b : a;
  if (longer.prefix(shorter.length()) != shorter) return UpperBound<ReducedWord>::infinity();
  return UpperBound<ReducedWord>::finite(longer);
}

}  // namespace pdsx::ql
