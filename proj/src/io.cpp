#include "kfree/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace kfree {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Int parse_int(const std::string& text) {
  std::string t = strip(text);
  if (t.empty()) throw Error(Errc::BadLiteral, "empty integer literal");
  size_t i = t[0] == '+' || t[0] == '-' ? 1 : 0;
  if (i == t.size()) throw Error(Errc::BadLiteral, "bare sign in integer literal");
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw Error(Errc::BadLiteral, "bad integer literal: " + text);
  return Int(t[0] == '+' ? t.substr(1) : t);
}

// a+bi / a-bs style quadratic literal; returns false if the text is not of
// that shape (then the tuple parser gets its turn)
bool parse_quadratic(const NumberField& F, const std::string& text, Elem& out) {
  if (F.degree != 2) return false;
  char unit = F.min_poly[0] == 1 && F.min_poly[1] == 0 ? 'i' : 's';
  std::string t = strip(text);
  size_t pos = t.find(unit);
  if (pos == std::string::npos) return false;
  // split into rational part and generator coefficient
  std::string coef = t.substr(0, pos);
  std::string rest = strip(t.substr(pos + 1));
  if (!rest.empty()) throw Error(Errc::BadLiteral, "trailing text in literal: " + text);
  std::string rat_part = "0";
  if (!coef.empty()) {
    // the last top-level +/- not at position 0 splits the two terms
    size_t cut = std::string::npos;
    for (size_t i = coef.size(); i-- > 1;) {
      if (coef[i] == '+' || coef[i] == '-') { cut = i; break; }
    }
    if (cut == std::string::npos) {
      rat_part = "0";
    } else {
      rat_part = coef.substr(0, cut);
      coef = coef.substr(cut);
    }
  }
  std::string c = strip(coef);
  if (c.empty() || c == "+") c = "1";
  else if (c == "-") c = "-1";
  std::vector<Int> v{parse_int(rat_part), parse_int(c)};
  out = elem(F, v);
  return true;
}

}  // namespace

NumberField parse_field(const std::string& spec, bool assume_irreducible) {
  std::vector<Int> coeffs;
  for (const std::string& part : split(spec, ','))
    coeffs.push_back(parse_int(part));
  return make_field(coeffs, assume_irreducible);
}

Elem parse_elem(const NumberField& F, const std::string& text) {
  std::string t = strip(text);
  if (t.empty()) throw Error(Errc::BadLiteral, "empty element literal");
  if (t.front() == '(') {
    if (t.back() != ')') throw Error(Errc::BadLiteral, "unbalanced tuple: " + text);
    auto parts = split(t.substr(1, t.size() - 2), ',');
    if (static_cast<int>(parts.size()) != F.degree)
      throw Error(Errc::BadLiteral, "tuple arity mismatch: " + text);
    std::vector<Int> v;
    for (const std::string& p : parts) v.push_back(parse_int(p));
    return elem(F, v);
  }
  Elem e = zero_elem(F);
  if (parse_quadratic(F, t, e)) return e;
  std::vector<Int> v(static_cast<size_t>(F.degree), Int(0));
  v[0] = parse_int(t);
  return elem(F, v);
}

std::vector<Elem> parse_shifts(const NumberField& F, const std::string& text) {
  std::vector<Elem> out;
  for (const std::string& part : split(text, ';')) out.push_back(parse_elem(F, part));
  return out;
}

Ideal parse_ideal(const NumberField& F, const std::string& text) {
  std::string t = strip(text);
  if (!t.empty() && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<Elem> gens;
  for (const std::string& part : split(t, ';')) gens.push_back(parse_elem(F, part));
  return ideal_from_generators(F, gens);
}

std::string format_value(long double v, bool exact_zero) {
  if (exact_zero) return "0 (exact)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

std::string format_rat(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

}  // namespace kfree
