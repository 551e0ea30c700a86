#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exactlin.hpp"

namespace k3even {

struct FrameMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Root coordinate system of one construction tree. The Gram may be degenerate.
struct Frame {
  std::string name;
  IntMatrix gram;
  std::vector<std::string> basis_names;

  std::size_t dim() const { return gram.rows(); }
};
using FramePtr = std::shared_ptr<const Frame>;

inline FramePtr make_frame(std::string name, IntMatrix gram, std::vector<std::string> names = {}) {
  if (!gram.symmetric()) throw std::invalid_argument("frame " + name + ": Gram is not symmetric");
  if (names.empty())
    for (std::size_t i = 0; i < gram.rows(); ++i) names.push_back("b" + std::to_string(i + 1));
  if (names.size() != gram.rows()) throw std::invalid_argument("frame " + name + ": basis name count mismatch");
  return std::make_shared<const Frame>(Frame{std::move(name), std::move(gram), std::move(names)});
}

inline bool same_frame(const FramePtr& a, const FramePtr& b) {
  return a == b || (a && b && a->name == b->name && a->gram == b->gram);
}

class FrameVector {
 public:
  FrameVector() = default;
  FrameVector(FramePtr frame, IntVector num, Integer den = 1)
      : frame_(std::move(frame)), num_(std::move(num)), den_(std::move(den)) {
    if (!frame_) throw std::invalid_argument("FrameVector: null frame");
    if (num_.size() != frame_->dim()) throw std::invalid_argument("FrameVector: length does not match frame rank");
    normalize();
  }

  static FrameVector zero(const FramePtr& f) { return FrameVector(f, IntVector(f->dim())); }
  static FrameVector unit(const FramePtr& f, std::size_t i) {
    IntVector v(f->dim());
    v.at(i) = 1;
    return FrameVector(f, std::move(v));
  }

  const FramePtr& frame() const { return frame_; }
  const IntVector& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }
  std::size_t size() const { return num_.size(); }
  Rational operator[](std::size_t i) const { return Rational(num_[i], den_); }
  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Integer& x) { return x == 0; });
  }

  FrameVector operator+(const FrameVector& o) const { return combine(o, 1); }
  FrameVector operator-(const FrameVector& o) const { return combine(o, -1); }
  FrameVector operator-() const { return *this * Integer(-1); }
  FrameVector operator*(const Integer& s) const {
    IntVector n = num_;
    for (auto& x : n) x *= s;
    return FrameVector(frame_, std::move(n), den_);
  }
  FrameVector operator/(const Integer& s) const {
    if (s == 0) throw std::invalid_argument("FrameVector: division by zero");
    return FrameVector(frame_, num_, den_ * s);
  }
  friend FrameVector operator*(const Integer& s, const FrameVector& v) { return v * s; }
  friend FrameVector operator*(long long s, const FrameVector& v) { return v * Integer(s); }

  friend bool operator==(const FrameVector& a, const FrameVector& b) {
    return same_frame(a.frame_, b.frame_) && a.den_ == b.den_ && a.num_ == b.num_;
  }
  // total order on coordinates, used for canonical sorting
  friend bool operator<(const FrameVector& a, const FrameVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rational x = a[i], y = b[i];
      if (x != y) return x < y;
    }
    return false;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < num_.size(); ++i) s += (i ? "," : "") + to_string((*this)[i]);
    return s + ")";
  }

 private:
  FrameVector combine(const FrameVector& o, int sign) const {
    if (!same_frame(frame_, o.frame_)) throw FrameMismatch("frame mismatch: " + frame_->name + " vs " + o.frame_->name);
    Integer d = lcm(den_, o.den_);
    Integer fa = d / den_, fb = d / o.den_;
    IntVector n(num_.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = num_[i] * fa + sign * o.num_[i] * fb;
    return FrameVector(frame_, std::move(n), d);
  }

  void normalize() {
    if (den_ == 0) throw std::invalid_argument("FrameVector: zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      for (auto& x : num_) x = -x;
    }
    Integer g = den_;
    for (const auto& x : num_) g = gcd(g, x);
    if (g > 1) {
      for (auto& x : num_) x /= g;
      den_ /= g;
    }
  }

  FramePtr frame_;
  IntVector num_;
  Integer den_ = 1;
};

inline Rational inner(const FrameVector& x, const FrameVector& y) {
  if (!same_frame(x.frame(), y.frame())) throw FrameMismatch("inner: frame mismatch (" + x.frame()->name + " vs " + y.frame()->name + ")");
  const IntMatrix& g = x.frame()->gram;
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.numerators()[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x.numerators()[i] * g(i, j) * y.numerators()[j];
  }
  return Rational(s, x.denominator() * y.denominator());
}

inline Rational square(const FrameVector& x) { return inner(x, x); }

// Integer value of a rational known to be integral.
inline Integer as_integer(const Rational& q) {
  if (boost::multiprecision::denominator(q) != 1) throw std::domain_error("value " + to_string(q) + " is not an integer");
  return boost::multiprecision::numerator(q);
}

class IntegerLattice {
 public:
  IntegerLattice() = default;

  // A lattice that is its own root frame, basis = standard basis.
  static IntegerLattice root(std::string name, IntMatrix gram, std::vector<std::string> names = {}) {
    FramePtr f = make_frame(name, gram, std::move(names));
    std::vector<FrameVector> basis;
    for (std::size_t i = 0; i < f->dim(); ++i) basis.push_back(FrameVector::unit(f, i));
    return from_basis(std::move(name), basis, f->basis_names);
  }

  // Lattice spanned by linearly independent frame vectors.
  static IntegerLattice from_basis(std::string name, const std::vector<FrameVector>& basis,
                                   std::vector<std::string> names = {}) {
    if (basis.empty()) throw std::invalid_argument("lattice " + name + ": empty basis");
    IntegerLattice l;
    l.name_ = std::move(name);
    l.frame_ = basis[0].frame();
    const std::size_t n = basis.size(), dim = l.frame_->dim();
    Integer den = 1;
    for (const auto& b : basis) {
      if (!same_frame(b.frame(), l.frame_)) throw FrameMismatch("lattice " + l.name_ + ": basis vectors in different frames");
      den = lcm(den, b.denominator());
    }
    IntMatrix num(dim, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < dim; ++i) num(i, j) = basis[j].numerators()[i] * (den / basis[j].denominator());
    l.basis_ = RationalMatrix(num, den);
    if (k3even::rank(l.basis_.num) != n) throw std::invalid_argument("lattice " + l.name_ + ": basis vectors are linearly dependent");

    l.gram_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Rational q = inner(basis[i], basis[j]);
        if (boost::multiprecision::denominator(q) != 1)
          throw std::invalid_argument("lattice " + l.name_ + ": form is not integral (" + basis[i].str() + "." + basis[j].str() + " = " + to_string(q) + ")");
        l.gram_(i, j) = l.gram_(j, i) = boost::multiprecision::numerator(q);
      }
    for (std::size_t i = 0; i < n; ++i)
      if (l.gram_(i, i) % 2 != 0)
        throw std::invalid_argument("lattice " + l.name_ + ": odd lattice rejected (basis vector " + std::to_string(i + 1) + " has square " + l.gram_(i, i).str() + ")");
    if (names.empty())
      for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
    if (names.size() != n) throw std::invalid_argument("lattice " + l.name_ + ": basis name count mismatch");
    l.names_ = std::move(names);
    l.solver_ = std::make_shared<const IntegralSolver>(l.basis_.num);
    return l;
  }

  // Lattice spanned by arbitrary frame vectors (a basis is extracted via SNF).
  static IntegerLattice from_generators(std::string name, const std::vector<FrameVector>& gens,
                                        std::vector<std::string> names = {}) {
    if (gens.empty()) throw std::invalid_argument("lattice " + name + ": no generators");
    const FramePtr& f = gens[0].frame();
    Integer den = 1;
    for (const auto& g : gens) den = lcm(den, g.denominator());
    IntMatrix num(f->dim(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t i = 0; i < f->dim(); ++i) num(i, j) = gens[j].numerators()[i] * (den / gens[j].denominator());
    // column span of num = U^{-1} * (column span of D)
    SNFResult s = smith_normal_form(num);
    std::vector<FrameVector> basis;
    for (std::size_t k = 0; k < s.diag.size() && s.diag[k] != 0; ++k) {
      IntVector c = s.left_inverse.col(k);
      for (auto& x : c) x *= s.diag[k];
      basis.emplace_back(f, std::move(c), den);
    }
    return from_basis(std::move(name), basis, std::move(names));
  }

  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const FramePtr& frame() const { return frame_; }
  const RationalMatrix& basis_matrix() const { return basis_; }

  FrameVector basis_vector(std::size_t i) const { return FrameVector(frame_, basis_.num.col(i), basis_.den); }
  std::vector<FrameVector> basis() const {
    std::vector<FrameVector> b;
    for (std::size_t i = 0; i < rank(); ++i) b.push_back(basis_vector(i));
    return b;
  }
  std::size_t index_of(const std::string& basis_name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == basis_name) return i;
    throw std::out_of_range("lattice " + name_ + " has no basis vector " + basis_name);
  }

  Integer determinant() const { return det(gram_); }
  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return gram_.symmetric();
  }

  // Vector with integer coordinates in this lattice's basis.
  FrameVector vector(const IntVector& coords) const {
    if (coords.size() != rank()) throw std::invalid_argument("lattice " + name_ + ": coordinate length mismatch");
    return FrameVector(frame_, basis_.num * coords, basis_.den);
  }
  // Vector with rational coordinates in this lattice's basis.
  FrameVector vector(const RatVector& coords) const {
    FrameVector v = FrameVector::zero(frame_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      v = v + basis_vector(i) * boost::multiprecision::numerator(coords[i]) / boost::multiprecision::denominator(coords[i]);
    }
    return v;
  }

  // Integer coordinates of x in this basis, or nullopt if x is not a lattice point.
  std::optional<IntVector> coordinates(const FrameVector& x) const {
    check_frame(x);
    // basis.num * c / basis.den = x.num / x.den  <=>  basis.num * c * x.den = x.num * basis.den
    IntVector b = x.numerators();
    if (x.denominator() != 1) {
      Integer scale = basis_.den;
      for (auto& v : b) {
        v *= scale;
        if (v % x.denominator() != 0) return std::nullopt;
        v /= x.denominator();
      }
    } else {
      for (auto& v : b) v *= basis_.den;
    }
    return solver_->solve(b);
  }

  // Rational coordinates of x in this basis, or nullopt if x is outside the Q-span.
  std::optional<RatVector> rational_coordinates(const FrameVector& x) const {
    check_frame(x);
    IntVector b = x.numerators();
    for (auto& v : b) v *= basis_.den;
    auto c = solver_->solve_rational(b);
    if (!c) return std::nullopt;
    for (auto& q : *c) q /= Rational(x.denominator());
    return c;
  }

  bool contains(const FrameVector& x) const { return coordinates(x).has_value(); }

  void check_frame(const FrameVector& x) const {
    if (!same_frame(x.frame(), frame_))
      throw FrameMismatch("vector in frame " + x.frame()->name + " is incompatible with lattice " + name_ + " (frame " + frame_->name + ")");
  }

  IntegerLattice renamed(std::string n) const {
    IntegerLattice c = *this;
    c.name_ = std::move(n);
    return c;
  }

 private:
  std::string name_;
  IntMatrix gram_;
  std::vector<std::string> names_;
  FramePtr frame_;
  RationalMatrix basis_;
  std::shared_ptr<const IntegralSolver> solver_;
};

struct DependentGenerators : std::invalid_argument {
  IntVector relation;
  DependentGenerators(const std::string& what, IntVector rel) : std::invalid_argument(what), relation(std::move(rel)) {}
};

struct Saturation {
  IntegerLattice lattice;
  Integer index;
};

// Primitive closure of span(gens) inside L.
inline Saturation saturation(const IntegerLattice& l, const std::vector<FrameVector>& gens) {
  if (gens.empty()) throw std::invalid_argument("saturation: no generators");
  IntMatrix c(l.rank(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto co = l.coordinates(gens[j]);
    if (!co) throw std::invalid_argument("saturation: generator " + gens[j].str() + " is not in " + l.name());
    for (std::size_t i = 0; i < l.rank(); ++i) c(i, j) = (*co)[i];
  }
  SNFResult s = smith_normal_form(c);
  const std::size_t r = s.rank();
  if (r < gens.size()) {
    IntVector rel = s.right.col(r);
    std::string txt;
    for (std::size_t j = 0; j < rel.size(); ++j)
      if (rel[j] != 0) txt += (txt.empty() ? "" : " + ") + rel[j].str() + "*g" + std::to_string(j + 1);
    throw DependentGenerators("saturation: generators are linearly dependent: " + txt + " = 0", rel);
  }
  std::vector<FrameVector> basis;
  Integer index = 1;
  for (std::size_t k = 0; k < r; ++k) {
    basis.push_back(l.vector(s.left_inverse.col(k)));
    index *= s.diag[k];
  }
  return {IntegerLattice::from_basis("sat(" + l.name() + ")", basis), index};
}

inline bool is_primitive(const IntegerLattice& ambient, const IntegerLattice& sub) {
  if (!same_frame(ambient.frame(), sub.frame()))
    throw FrameMismatch("is_primitive: " + sub.name() + " is not framed in " + ambient.name());
  return saturation(ambient, sub.basis()).index == 1;
}

// map: column j = coordinates of the image of A's basis vector j in B's basis.
inline bool isometry_from_basis_map(const IntegerLattice& a, const IntegerLattice& b, const RationalMatrix& map) {
  if (a.rank() != b.rank() || map.rows() != b.rank() || map.cols() != a.rank())
    throw std::invalid_argument("isometry_from_basis_map: rank mismatch");
  if (!map.integral()) return false;
  if (abs(det(map.num)) != 1) return false;
  return map.num.transpose() * b.gram() * map.num == a.gram();
}

// Same, with the images given as frame vectors of B.
inline bool isometry_from_basis_map(const IntegerLattice& a, const IntegerLattice& b, const std::vector<FrameVector>& images) {
  if (images.size() != a.rank() || a.rank() != b.rank()) throw std::invalid_argument("isometry_from_basis_map: rank mismatch");
  IntMatrix m(b.rank(), a.rank());
  for (std::size_t j = 0; j < images.size(); ++j) {
    auto c = b.coordinates(images[j]);
    if (!c) return false;
    for (std::size_t i = 0; i < b.rank(); ++i) m(i, j) = (*c)[i];
  }
  return isometry_from_basis_map(a, b, RationalMatrix(m));
}

}  // namespace k3even
