#include "pdsx/scalar.hpp"

#include <cctype>

#include "pdsx/error.hpp"

namespace pdsx {

namespace {

mpq_class parse_rational(const std::string& s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational in '" + std::string(whole) + "'");
  std::string body = s;
  if (body.front() == '+') body.erase(0, 1);
  for (char c : body) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) {
      throw Error(ErrorKind::Parse, "bad rational '" + s + "' in '" + std::string(whole) + "'");
    }
  }
  mpq_class q;
  if (q.set_str(body, 10) != 0) {
    throw Error(ErrorKind::Parse, "bad rational '" + s + "' in '" + std::string(whole) + "'");
  }
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) { return q.get_str(10); }

}  // namespace

Gaussian Gaussian::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::Parse, "empty scalar");
  if (s.back() != 'i') return Gaussian(parse_rational(s, text));

  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  mpq_class im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part, text);
  }
  mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part, text);
  return {re, im};
}

std::string Gaussian::to_string() const {
  if (sgn(im_) == 0) return rational_string(re_);
  std::string out;
  if (sgn(re_) != 0) out = rational_string(re_);
  if (sgn(im_) > 0 && !out.empty()) out += "+";
  out += rational_string(im_) + " i";
  return out;
}

}  // namespace pdsx
