#pragma once
// Divisor mini-language: L, Nhat, N1..N8, L1, L2 (L' families), M, e1..e8 (M families),
// integer coefficients, + and -, parentheses, and a /k suffix for fractional classes.
//   "L-Nhat", "2L-N1-N2", "(L-N1-N2)/2", "3*(L-Nhat)"
// The result must lie in the lattice.

#include <cctype>
#include <string>

#include "families.hpp"

namespace k3even {

struct DivisorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const char* divisor_grammar() {
  return "expected sums of [k][*]atom or [k](expr) with optional /k, atoms L Nhat N1..N8 L1 L2 (L families) or M e1..e8 (M families), e.g. \"L-Nhat\", \"(L-N1-N2)/2\"";
}

class DivisorParser {
 public:
  DivisorParser(const NSFamily& fam, const IntegerLattice& ns, std::string text) : fam_(fam), ns_(ns), src_(std::move(text)) {
    // accept the typographic minus
    std::string t;
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (src_.compare(i, 3, "\xE2\x88\x92") == 0) {
        t += '-';
        i += 2;
      } else if (!std::isspace(static_cast<unsigned char>(src_[i]))) {
        t += src_[i];
      }
    }
    s_ = t;
  }

  FrameVector parse() {
    if (s_.empty()) fail("empty divisor");
    FrameVector v = expr();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    if (!ns_.contains(v)) throw DivisorError("divisor \"" + src_ + "\" = " + v.str() + " is not in " + fam_.symbol());
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DivisorError("malformed divisor \"" + src_ + "\": " + why + "; " + divisor_grammar());
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
  Integer number() {
    std::size_t start = pos_;
    while (digit()) ++pos_;
    if (pos_ - start > 12) fail("coefficient too large");
    return Integer(s_.substr(start, pos_ - start));
  }

  FrameVector expr() {
    FrameVector v = term();
    while (pos_ < s_.size()) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        break;
    }
    return v;
  }

  FrameVector term() {
    bool neg = false;
    while (eat('-')) neg = !neg;
    Integer k = 1;
    bool has_k = false;
    if (digit()) {
      k = number();
      has_k = true;
      eat('*');
    }
    FrameVector v = factor(has_k);
    if (has_k) v = v * k;
    while (eat('/')) {
      if (!digit()) fail("expected a denominator after '/'");
      Integer den = number();
      if (den == 0) fail("division by zero");
      v = v / den;
    }
    return neg ? v * Integer(-1) : v;
  }

  FrameVector factor(bool after_coefficient) {
    if (eat('(')) {
      FrameVector v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty()) {
      // a bare integer means that multiple of zero only when nothing follows; reject it
      fail(after_coefficient ? "a coefficient must multiply a class" : "expected a class");
    }
    return atom(tok);
  }

  FrameVector atom(const std::string& tok) {
    const FramePtr& f = ns_.frame();
    if (fam_.is_L()) {
      if (tok == "L") return FrameVector::unit(f, 0);
      if (tok == "Nhat") return nhat(f);
      if (tok.size() == 2 && tok[0] == 'N' && tok[1] >= '1' && tok[1] <= '8') return FrameVector::unit(f, tok[1] - '0');
      if (tok == "L1" || tok == "L2") {
        if (fam_.kind != FamilyKind::L2dPrime) fail(tok + " is defined only for L' families");
        auto [l1, l2] = l1_l2(fam_);
        return rebase(tok == "L1" ? l1 : l2);
      }
    } else {
      if (tok == "M") return FrameVector::unit(f, 0);
      if (tok.size() == 2 && tok[0] == 'e' && tok[1] >= '1' && tok[1] <= '8') return FrameVector::unit(f, tok[1] - '0');
    }
    fail("unknown class '" + tok + "' for " + fam_.symbol());
  }

  // l1_l2 builds its own frame object; move the coordinates onto ns_'s
  FrameVector rebase(const FrameVector& x) const { return FrameVector(ns_.frame(), x.numerators(), x.denominator()); }

  NSFamily fam_;
  const IntegerLattice& ns_;
  std::string src_, s_;
  std::size_t pos_ = 0;
};

inline FrameVector parse_divisor(const NSFamily& fam, const IntegerLattice& ns, const std::string& text) {
  return DivisorParser(fam, ns, text).parse();
}

inline FrameVector parse_divisor(const NSFamily& fam, const std::string& text) {
  return parse_divisor(fam, make(fam), text);
}

}  // namespace k3even
