#include "quatreg/quaternion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include <fmt/format.h>

#include "quatreg/error.hpp"

namespace quatreg {

Quaternion q_inv(const Quaternion& a, double epsilon) {
  const double n2 = a.norm2();
  if (!(std::sqrt(n2) >= epsilon)) {
    throw Error(ErrorKind::ZeroDivisor, "inverse of quaternion with norm below " + fmt::format("{}", epsilon));
  }
  return a.conj() / n2;
}

Quaternion iota_of(const Quaternion& p, double epsilon) {
  const double r = p.imag_norm();
  if (!(r >= epsilon * std::max(1.0, p.norm()))) {
    throw Error(ErrorKind::OnRealAxis, "point " + to_string(p) + " lies on the real axis");
  }
  return p.imag_part() / r;
}

namespace {

double parse_number(std::string_view s, std::string_view whole) {
  double value = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::BadParams, "malformed quaternion literal '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Quaternion parse_quaternion(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::BadParams, "empty quaternion literal");

  Quaternion q;
  std::size_t pos = 0;
  while (pos < s.size()) {
    // A term runs until the next sign that does not follow an exponent marker.
    std::size_t end = pos + 1;
    while (end < s.size() && !((s[end] == '+' || s[end] == '-') && s[end - 1] != 'e' && s[end - 1] != 'E')) {
      ++end;
    }
    std::string_view term(s.data() + pos, end - pos);
    int slot = 0;
    if (char last = term.back(); last == 'i' || last == 'j' || last == 'k') {
      slot = last == 'i' ? 1 : last == 'j' ? 2 : 3;
      term.remove_suffix(1);
    }
    double sign = 1.0;
    if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      sign = term.front() == '-' ? -1.0 : 1.0;
      term.remove_prefix(1);
    }
    double magnitude = 1.0;
    if (term.empty()) {
      if (slot == 0) throw Error(ErrorKind::BadParams, "malformed quaternion literal '" + std::string(text) + "'");
    } else {
      magnitude = parse_number(term, text);
    }
    q[slot] += sign * magnitude;
    pos = end;
  }
  return q;
}

std::string to_string(const Quaternion& q) {
  auto signed_term = [](double v) { return (std::signbit(v) ? "" : "+") + fmt::format("{}", v); };
  return fmt::format("{}", q.t) + signed_term(q.x) + "i" + signed_term(q.y) + "j" + signed_term(q.z) + "k";
}

}  // namespace quatreg
