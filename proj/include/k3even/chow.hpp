#pragma once
// Intersection numbers on complete intersections in products of projective spaces.
// The Chow ring of P^n1 x ... x P^nk is Z[h1..hk]/(hi^(ni+1)); polynomials are stored
// densely over the exponent box.

#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "exactlin.hpp"

namespace k3even {

struct MultiProjSpace {
  std::vector<int> dims;

  int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
  std::size_t factors() const { return dims.size(); }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "xP" : "P") + std::to_string(dims[i]);
    return s;
  }
};

struct CompleteIntersection {
  MultiProjSpace space;
  std::vector<std::vector<int>> multidegrees;

  int dimension() const { return space.total_dim() - static_cast<int>(multidegrees.size()); }

  void validate() const {
    if (space.dims.empty()) throw std::invalid_argument("complete intersection: no factors");
    for (int n : space.dims)
      if (n < 1) throw std::invalid_argument("complete intersection: factor P" + std::to_string(n) + " has dimension < 1");
    for (const auto& md : multidegrees) {
      if (md.size() != space.factors())
        throw std::invalid_argument("complete intersection: multidegree with " + std::to_string(md.size()) + " entries in a product of " +
                                    std::to_string(space.factors()) + " factors");
      for (int e : md)
        if (e < 0) throw std::invalid_argument("complete intersection: negative degree");
    }
  }

  std::string str() const {
    std::string s = space.str() + ":";
    for (std::size_t i = 0; i < multidegrees.size(); ++i) {
      s += i ? "+(" : " (";
      for (std::size_t j = 0; j < multidegrees[i].size(); ++j) s += (j ? "," : "") + std::to_string(multidegrees[i][j]);
      s += ")";
    }
    return s;
  }
};

class ChowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "P4xP2: (2,0)+(1,1)^3"
inline CompleteIntersection parse_complete_intersection(const std::string& text) {
  static const char* grammar = "expected <space>: <degrees>, e.g. \"P4xP2: (2,0)+(1,1)^3\"";
  auto fail = [&](const std::string& why) { throw ChowError("chow: " + why + "; " + grammar); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto colon = s.find(':');
  if (colon == std::string::npos) fail("missing ':'");

  CompleteIntersection ci;
  std::size_t i = 0;
  const std::string head = s.substr(0, colon);
  auto read_int = [&](const std::string& str, std::size_t& k) {
    std::size_t start = k;
    while (k < str.size() && std::isdigit(static_cast<unsigned char>(str[k]))) ++k;
    if (k == start) fail("expected a number at '" + str.substr(start) + "'");
    if (k - start > 6) fail("number too large");
    return std::stoi(str.substr(start, k - start));
  };
  while (i < head.size()) {
    if (head[i] != 'P' && head[i] != 'p') fail("expected 'P' in '" + head + "'");
    ++i;
    ci.space.dims.push_back(read_int(head, i));
    if (i < head.size()) {
      if (head[i] != 'x' && head[i] != 'X') fail("expected 'x' between factors");
      ++i;
      if (i == head.size()) fail("trailing 'x'");
    }
  }
  if (ci.space.dims.empty()) fail("no factors");

  const std::string body = s.substr(colon + 1);
  i = 0;
  while (i < body.size()) {
    if (body[i] != '(') fail("expected '(' at '" + body.substr(i) + "'");
    ++i;
    std::vector<int> md;
    while (true) {
      md.push_back(read_int(body, i));
      if (i < body.size() && body[i] == ',') {
        ++i;
        if (i < body.size() && body[i] == ')') break;  // "(3,)"
        continue;
      }
      break;
    }
    if (i >= body.size() || body[i] != ')') fail("expected ')'");
    ++i;
    int rep = 1;
    if (i < body.size() && body[i] == '^') {
      ++i;
      rep = read_int(body, i);
      if (rep < 1) fail("repetition must be positive");
    }
    for (int r = 0; r < rep; ++r) ci.multidegrees.push_back(md);
    if (i < body.size()) {
      if (body[i] != '+') fail("expected '+' at '" + body.substr(i) + "'");
      ++i;
      if (i == body.size()) fail("trailing '+'");
    }
  }
  try {
    ci.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return ci;
}

// Dense element of Z[h1..hk]/(hi^(ni+1)).
class ChowClass {
 public:
  explicit ChowClass(std::vector<int> dims) : dims_(std::move(dims)), stride_(dims_.size()) {
    std::size_t size = 1;
    for (std::size_t i = dims_.size(); i-- > 0;) {
      stride_[i] = size;
      size *= static_cast<std::size_t>(dims_[i] + 1);
    }
    c_.assign(size, 0);
  }

  static ChowClass one(const std::vector<int>& dims) {
    ChowClass r(dims);
    r.c_[0] = 1;
    return r;
  }

  // sum_j deg_j h_j
  static ChowClass hyperplane_sum(const std::vector<int>& dims, const std::vector<int>& degrees) {
    ChowClass r(dims);
    for (std::size_t j = 0; j < dims.size(); ++j) r.c_[r.stride_[j]] += degrees[j];
    return r;
  }

  const Integer& coefficient(const std::vector<int>& exps) const { return c_[index(exps)]; }

  friend ChowClass operator*(const ChowClass& a, const ChowClass& b) {
    ChowClass r(a.dims_);
    std::vector<int> ea(a.dims_.size()), eb(a.dims_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      a.unpack(i, ea);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        b.unpack(j, eb);
        std::size_t k = 0;
        bool live = true;
        for (std::size_t f = 0; f < ea.size(); ++f) {
          int e = ea[f] + eb[f];
          if (e > a.dims_[f]) {
            live = false;
            break;
          }
          k += static_cast<std::size_t>(e) * a.stride_[f];
        }
        if (live) r.c_[k] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

 private:
  std::size_t index(const std::vector<int>& exps) const {
    std::size_t k = 0;
    for (std::size_t f = 0; f < dims_.size(); ++f) {
      if (exps[f] < 0 || exps[f] > dims_[f]) throw std::out_of_range("ChowClass: exponent outside the box");
      k += static_cast<std::size_t>(exps[f]) * stride_[f];
    }
    return k;
  }
  void unpack(std::size_t k, std::vector<int>& e) const {
    for (std::size_t f = 0; f < dims_.size(); ++f) {
      e[f] = static_cast<int>(k / stride_[f]);
      k %= stride_[f];
    }
  }

  std::vector<int> dims_;
  std::vector<std::size_t> stride_;
  IntVector c_;
};

inline void require_surface(const CompleteIntersection& ci) {
  ci.validate();
  if (ci.dimension() != 2)
    throw ChowError("chow: " + ci.str() + " has dimension " + std::to_string(ci.dimension()) + " (codimension " +
                    std::to_string(ci.multidegrees.size()) + " in dimension " + std::to_string(ci.space.total_dim()) +
                    "), not a surface");
}

// (i,j) entry: degree of h_i h_j on the surface.
inline IntMatrix intersection_matrix(const CompleteIntersection& ci) {
  require_surface(ci);
  const auto& dims = ci.space.dims;
  ChowClass s = ChowClass::one(dims);
  for (const auto& md : ci.multidegrees) s = s * ChowClass::hyperplane_sum(dims, md);
  const std::size_t k = dims.size();
  IntMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      std::vector<int> e(dims);
      --e[i];
      --e[j];
      // h_i h_j s has top degree iff s carries the complementary monomial
      out(i, j) = out(j, i) = (e[i] < 0 || e[j] < 0) ? Integer(0) : s.coefficient(e);
    }
  return out;
}

// Adjunction: trivial canonical class iff the degrees in each factor sum to n_j + 1.
inline bool ci_is_k3(const CompleteIntersection& ci) {
  require_surface(ci);
  for (std::size_t j = 0; j < ci.space.factors(); ++j) {
    int sum = 0;
    for (const auto& md : ci.multidegrees) sum += md[j];
    if (sum != ci.space.dims[j] + 1) return false;
  }
  return true;
}

}  // namespace k3even
