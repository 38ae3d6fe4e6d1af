#pragma once

// Exact integer linear algebra over Z: Smith normal form, finitely generated
// abelian groups in invariant-factor form, homomorphisms between them,
// subgroups, extension enumeration and exactness checks.
//
// Conventions used throughout:
//   * a relation matrix R presents the group Z^rows / (column span of R);
//   * a homomorphism matrix has one column per source generator holding the
//     image in target generator coordinates;
//   * canonical generators of an FgAbGroup are ordered free first, then the
//     torsion generators in invariant-factor order d_1 | d_2 | ...

#include <mtspec/error.hpp>
#include <mtspec/integer.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mtspec {

using Vector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// [this | other], same row count.
  IntMatrix hconcat(const IntMatrix& other) const {
    if (other.rows_ != rows_) throw Error(ErrorKind::InvalidArgument, "hconcat row mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
  }

  IntMatrix top_rows(std::size_t count) const {
    IntMatrix m(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += factor * row[source]
  void add_row(std::size_t target, std::size_t source, const Integer& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
  }
  /// col[target] += factor * col[source]
  void add_col(std::size_t target, std::size_t source, const Integer& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector operator*(const IntMatrix& a, const Vector& x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::InvalidArgument, "matrix-vector dimension mismatch");
    Vector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// ---------------------------------------------------------------------------
// Smith normal form

/// left * input * right == diagonal, with left and right unimodular.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank.
  Vector invariants() const {
    Vector out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
    return out;
  }
};

/// Pivot rule: smallest nonzero absolute value in the active block, ties
/// broken by lowest (row, col).
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  std::size_t t = 0;

  for (; t < std::min(m, n); ++t) {
    bool found_any = false;
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer mag = abs(d(i, j));
          if (!pivot || mag < best) {
            pivot = {i, j};
            best = mag;
          }
        }
      if (!pivot) break;
      found_any = true;
      d.swap_rows(t, pivot->first);
      u.swap_rows(t, pivot->first);
      d.swap_cols(t, pivot->second);
      v.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      d.add_row(t, *offender, 1);
      u.add_row(t, *offender, 1);
    }
    if (!found_any) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return SmithForm{std::move(u), std::move(d), std::move(v), t};
}

/// Basis of the integer null space {x : a x = 0}, as columns.
inline IntMatrix integer_nullspace(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  IntMatrix basis(a.cols(), a.cols() - s.rank);
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) basis(i, j - s.rank) = s.right(i, j);
  return basis;
}

/// Some integer x with a x = b, if one exists.
inline std::optional<Vector> solve_integer(const IntMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::InvalidArgument, "solve: rhs length mismatch");
  SmithForm s = smith_normal_form(a);
  Vector ub = s.left * b;
  Vector y(a.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      const Integer& di = s.diagonal(i, i);
      if (ub[i] % di != 0) return std::nullopt;
      y[i] = ub[i] / di;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

class FgAbGroup {
 public:
  /// The trivial group.
  FgAbGroup() = default;

  /// Accepts torsion orders in any order and factorization (orders >= 1);
  /// the stored form is always the invariant-factor chain.
  FgAbGroup(std::size_t free_rank, const Vector& torsion_orders) : free_rank_(free_rank) {
    std::vector<Integer> orders;
    for (const Integer& o : torsion_orders) {
      if (o < 1) throw Error(ErrorKind::InvalidArgument, "torsion orders must be positive");
      if (o > 1) orders.push_back(o);
    }
    if (orders.empty()) return;
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
    for (const Integer& f : smith_normal_form(diag).invariants())
      if (f > 1) torsion_.push_back(f);
  }

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, {}); }
  /// Z/n for n >= 1; n == 0 gives Z.
  static FgAbGroup cyclic(const Integer& n) {
    if (n == 0) return free(1);
    return FgAbGroup(0, {abs(n)});
  }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const Vector& torsion() const noexcept { return torsion_; }
  std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }
  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_free() const noexcept { return torsion_.empty(); }

  std::optional<Integer> order() const {
    if (free_rank_ != 0) return std::nullopt;
    Integer n = 1;
    for (const Integer& d : torsion_) n *= d;
    return n;
  }

  /// 0 for a free generator, otherwise its order.
  Integer generator_order(std::size_t i) const {
    return i < free_rank_ ? Integer(0) : torsion_[i - free_rank_];
  }

  FgAbGroup torsion_subgroup() const { return FgAbGroup(0, torsion_); }

  FgAbGroup direct_sum(const FgAbGroup& other) const {
    Vector t = torsion_;
    t.insert(t.end(), other.torsion_.begin(), other.torsion_.end());
    return FgAbGroup(free_rank_ + other.free_rank_, t);
  }

  /// generator_count x torsion-count matrix presenting this group.
  IntMatrix relations() const {
    IntMatrix r(generator_count(), torsion_.size());
    for (std::size_t j = 0; j < torsion_.size(); ++j) r(free_rank_ + j, j) = torsion_[j];
    return r;
  }

  /// Reduces torsion coordinates into [0, d).
  Vector normalize(Vector x) const {
    if (x.size() != generator_count()) throw Error(ErrorKind::InvalidArgument, "element has wrong length");
    for (std::size_t j = 0; j < torsion_.size(); ++j)
      x[free_rank_ + j] = floor_mod(x[free_rank_ + j], torsion_[j]);
    return x;
  }

  bool is_zero_element(const Vector& x) const {
    Vector n = normalize(x);
    return std::all_of(n.begin(), n.end(), [](const Integer& v) { return v == 0; });
  }

  /// "Z+Z+Z/6" (ascii) or "ℤ⊕ℤ⊕ℤ/6" (unicode); "0" when trivial.
  std::string to_string(bool unicode = false) const {
    if (is_trivial()) return "0";
    std::string out;
    const char* z = unicode ? "ℤ" : "Z";
    const char* plus = unicode ? "⊕" : "+";
    auto append = [&](const std::string& s) {
      if (!out.empty()) out += plus;
      out += s;
    };
    for (std::size_t i = 0; i < free_rank_; ++i) append(z);
    for (const Integer& d : torsion_) append(std::string(z) + "/" + d.str());
    return out;
  }

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
  friend bool operator<(const FgAbGroup& a, const FgAbGroup& b) {
    if (a.free_rank_ != b.free_rank_) return a.free_rank_ < b.free_rank_;
    return std::lexicographical_compare(a.torsion_.begin(), a.torsion_.end(), b.torsion_.begin(),
                                        b.torsion_.end());
  }

 private:
  std::size_t free_rank_ = 0;
  Vector torsion_;
};

/// Parses the ascii rendering produced by FgAbGroup::to_string.
inline FgAbGroup parse_group(const std::string& text) {
  if (text == "0") return {};
  std::size_t free = 0;
  Vector torsion;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part == "Z") {
      ++free;
    } else if (part.size() > 2 && part.compare(0, 2, "Z/") == 0) {
      try {
        torsion.emplace_back(part.substr(2));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad torsion summand '" + part + "'");
      }
    } else {
      throw Error(ErrorKind::ParseError, "bad group summand '" + part + "' in '" + text + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return FgAbGroup(free, torsion);
}

/// Z^rows / column span, together with the map sending ambient coordinates
/// to canonical generator coordinates.
struct Quotient {
  FgAbGroup group;
  IntMatrix projection;  // group.generator_count() x ambient rows
};

inline Quotient quotient(const IntMatrix& relations) {
  SmithForm s = smith_normal_form(relations);
  const std::size_t m = relations.rows();
  std::vector<std::size_t> free_rows;
  std::vector<std::size_t> torsion_rows;
  Vector torsion;
  for (std::size_t i = s.rank; i < m; ++i) free_rows.push_back(i);
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diagonal(i, i) > 1) {
      torsion_rows.push_back(i);
      torsion.push_back(s.diagonal(i, i));
    }
  FgAbGroup group(free_rows.size(), torsion);
  IntMatrix proj(group.generator_count(), m);
  std::size_t r = 0;
  for (std::size_t i : free_rows) {
    for (std::size_t j = 0; j < m; ++j) proj(r, j) = s.left(i, j);
    ++r;
  }
  for (std::size_t k = 0; k < torsion_rows.size(); ++k, ++r)
    for (std::size_t j = 0; j < m; ++j) proj(r, j) = floor_mod(s.left(torsion_rows[k], j), torsion[k]);
  return Quotient{std::move(group), std::move(proj)};
}

/// Z^rows / column span of the relation matrix.
inline FgAbGroup cokernel(const IntMatrix& relations) { return quotient(relations).group; }

// ---------------------------------------------------------------------------
// Homomorphisms

inline bool is_well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix) {
  if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count()) return false;
  for (std::size_t j = source.free_rank(); j < source.generator_count(); ++j) {
    const Integer& d = source.generator_order(j);
    Vector col = matrix.column(j);
    for (Integer& c : col) c *= d;
    if (!target.is_zero_element(col)) return false;
  }
  return true;
}

class GroupHom {
 public:
  GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
      throw Error(ErrorKind::InvalidArgument, "homomorphism matrix has wrong shape");
    if (!is_well_defined(source_, target_, matrix_))
      throw Error(ErrorKind::InvalidArgument,
                  "homomorphism " + source_.to_string() + " -> " + target_.to_string() +
                      " does not respect torsion");
    for (std::size_t i = target_.free_rank(); i < target_.generator_count(); ++i)
      for (std::size_t j = 0; j < matrix_.cols(); ++j)
        matrix_(i, j) = floor_mod(matrix_(i, j), target_.generator_order(i));
  }

  static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target) {
    return GroupHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
  }
  static GroupHom identity(const FgAbGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.generator_count()));
  }

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  Vector apply(const Vector& x) const { return target_.normalize(matrix_ * x); }

  bool is_zero() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!target_.is_zero_element(matrix_.column(j))) return false;
    return true;
  }

  friend bool operator==(const GroupHom&, const GroupHom&) = default;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// outer ∘ inner
inline GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (!(inner.target() == outer.source()))
    throw Error(ErrorKind::CompositionMismatch, "cannot compose " + inner.source().to_string() + " -> " +
                                                   inner.target().to_string() + " with " +
                                                   outer.source().to_string() + " -> " +
                                                   outer.target().to_string());
  return GroupHom(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

// ---------------------------------------------------------------------------
// Subgroups

/// The subgroup of `ambient` generated by the columns of `generators`.
struct Subgroup {
  FgAbGroup ambient;
  IntMatrix generators;

  bool contains(const Vector& element) const {
    return solve_integer(generators.hconcat(ambient.relations()), element).has_value();
  }

  bool contains(const Subgroup& other) const {
    for (std::size_t j = 0; j < other.generators.cols(); ++j)
      if (!contains(other.generators.column(j))) return false;
    return true;
  }

  /// Isomorphism type of the subgroup.
  FgAbGroup abstract_group() const {
    const std::size_t l = generators.cols();
    IntMatrix null = integer_nullspace(generators.hconcat(ambient.relations()));
    return cokernel(null.top_rows(l));
  }

  friend bool same_subgroup(const Subgroup& a, const Subgroup& b) {
    return a.ambient == b.ambient && a.contains(b) && b.contains(a);
  }
};

inline Subgroup image(const GroupHom& f) { return Subgroup{f.target(), f.matrix()}; }

inline Subgroup kernel(const GroupHom& f) {
  const std::size_t n = f.source().generator_count();
  IntMatrix null = integer_nullspace(f.matrix().hconcat(f.target().relations()));
  return Subgroup{f.source(), null.top_rows(n)};
}

/// target / image(f), with the quotient map from target coordinates.
inline Quotient cokernel(const GroupHom& f) {
  return quotient(f.matrix().hconcat(f.target().relations()));
}

/// Largest n with x ∈ nG; 0 when x is divisible by every n (x torsion and
/// infinitely divisible, in particular x == 0).
inline Integer divisibility(const FgAbGroup& g, const Vector& x) {
  Vector v = g.normalize(x);
  Integer content = 0;
  for (std::size_t i = 0; i < g.free_rank(); ++i) content = gcd(content, v[i]);
  auto divisible_by = [&](const Integer& n) {
    for (std::size_t j = g.free_rank(); j < g.generator_count(); ++j)
      if (v[j] % gcd(n, g.generator_order(j)) != 0) return false;
    return true;
  };
  if (content == 0) {
    bool all_zero = std::all_of(v.begin(), v.end(), [](const Integer& c) { return c == 0; });
    if (all_zero) return 0;
    Integer bound = 1;
    for (const Integer& d : g.torsion()) bound = lcm(bound, d);
    Integer best = 1;
    for (Integer n = 1; n <= bound; ++n)
      if (bound % n == 0 && divisible_by(n)) best = n;
    return best == bound ? Integer(0) : best;
  }
  for (Integer n = content; n >= 1; --n)
    if (content % n == 0 && divisible_by(n)) return n;
  return 1;
}

// ---------------------------------------------------------------------------
// Exactness

struct ExactnessVerdict {
  bool exact = false;
  bool composite_zero = false;
  bool image_equals_kernel = false;
};

/// Exactness of  source(f) --f--> middle --g--> target(g)  at the middle.
inline ExactnessVerdict check_exact(const GroupHom& f, const GroupHom& g) {
  GroupHom gf = compose(g, f);
  ExactnessVerdict v;
  v.composite_zero = gf.is_zero();
  v.image_equals_kernel = same_subgroup(image(f), kernel(g));
  v.exact = v.composite_zero && v.image_equals_kernel;
  return v;
}

// ---------------------------------------------------------------------------
// Extensions

inline FgAbGroup ext_group(const FgAbGroup& b, const FgAbGroup& a) {
  Vector orders;
  for (const Integer& n : b.torsion()) {
    for (std::size_t i = 0; i < a.free_rank(); ++i) orders.push_back(n);
    for (const Integer& m : a.torsion()) orders.push_back(gcd(n, m));
  }
  return FgAbGroup(0, orders);
}

/// One extension 0 -> A -> X -> B -> 0 from a chosen Ext class.
struct Extension {
  /// For each torsion generator j of B, the element e_j of A with n_j b_j = e_j in X.
  std::vector<Vector> classes;
  FgAbGroup middle;
  /// The inclusion A -> X.
  GroupHom inclusion;
};

inline constexpr long long kExtensionTorsionBound = 64;
inline constexpr long long kExtensionClassBound = 100000;

/// Enumerates one extension per element of Ext(B, A).
inline std::vector<Extension> enumerate_extensions(const FgAbGroup& a, const FgAbGroup& b) {
  for (const FgAbGroup* g : {&a, &b})
    for (const Integer& d : g->torsion())
      if (d > kExtensionTorsionBound)
        throw Error(ErrorKind::UnsupportedShape, "torsion order " + d.str() + " exceeds enumeration bound");
  if (*ext_group(b, a).order() > kExtensionClassBound)
    throw Error(ErrorKind::UnsupportedShape, "Ext group too large to enumerate");

  const std::size_t na = a.generator_count();
  const std::size_t nb = b.generator_count();

  // Ranges of the coordinates of each e_j, flattened.
  std::vector<Integer> ranges;
  for (const Integer& n : b.torsion())
    for (std::size_t i = 0; i < na; ++i)
      ranges.push_back(i < a.free_rank() ? n : gcd(n, a.generator_order(i)));

  std::vector<Extension> out;
  std::vector<Integer> counter(ranges.size(), 0);
  while (true) {
    IntMatrix rel(na + nb, a.torsion().size() + b.torsion().size());
    for (std::size_t j = 0; j < a.torsion().size(); ++j) rel(a.free_rank() + j, j) = a.torsion()[j];
    std::vector<Vector> classes;
    for (std::size_t j = 0; j < b.torsion().size(); ++j) {
      const std::size_t col = a.torsion().size() + j;
      rel(na + b.free_rank() + j, col) = b.torsion()[j];
      Vector e(na);
      for (std::size_t i = 0; i < na; ++i) {
        e[i] = counter[j * na + i];
        rel(i, col) = -e[i];
      }
      classes.push_back(std::move(e));
    }
    Quotient q = quotient(rel);
    IntMatrix incl(q.group.generator_count(), na);
    for (std::size_t r = 0; r < incl.rows(); ++r)
      for (std::size_t i = 0; i < na; ++i) incl(r, i) = q.projection(r, i);
    out.push_back(Extension{std::move(classes), q.group, GroupHom(a, q.group, std::move(incl))});

    std::size_t k = 0;
    for (; k < counter.size(); ++k) {
      if (++counter[k] < ranges[k]) break;
      counter[k] = 0;
    }
    if (k == counter.size()) break;
  }
  return out;
}

/// Isomorphism types of X admitting 0 -> A -> X -> B -> 0.
inline std::set<FgAbGroup> middle_group_candidates(const FgAbGroup& a, const FgAbGroup& b) {
  std::set<FgAbGroup> out;
  for (const Extension& e : enumerate_extensions(a, b)) out.insert(e.middle);
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicative kernels

/// Kernel of x ↦ (∏_i x_i^{A_ij})_j on (C^x)^rows. Free rank counts C^x factors.
inline FgAbGroup units_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  Vector torsion;
  for (const Integer& d : s.invariants())
    if (d > 1) torsion.push_back(d);
  return FgAbGroup(a.rows() - s.rank, torsion);
}

/// A tuple (ζ^{k_1}, ..., ζ^{k_m}) for ζ = exp(2πi / order).
struct RootTuple {
  Integer order = 1;
  Vector powers;

  friend bool operator==(const RootTuple&, const RootTuple&) = default;
  friend auto operator<=>(const RootTuple& a, const RootTuple& b) {
    if (a.order != b.order) return a.order < b.order ? std::strong_ordering::less : std::strong_ordering::greater;
    for (std::size_t i = 0; i < std::min(a.powers.size(), b.powers.size()); ++i)
      if (a.powers[i] != b.powers[i])
        return a.powers[i] < b.powers[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.powers.size() <=> b.powers.size();
  }
};

/// Explicit elements of a finite units_kernel(a), all written over one
/// common root of unity whose order is the exponent of the kernel.
inline std::vector<RootTuple> units_kernel_elements(const IntMatrix& a, const Integer& max_order = 64) {
  SmithForm s = smith_normal_form(a);
  const std::size_t m = a.rows();
  if (s.rank < m) throw Error(ErrorKind::Unsupported, "kernel is not finite");
  Integer order = 1;
  Integer exponent = 1;
  for (const Integer& d : s.invariants()) {
    order *= d;
    exponent = lcm(exponent, d);
  }
  if (order > max_order) throw Error(ErrorKind::Unsupported, "kernel order " + order.str() + " too large to list");

  // a^T = b^T U with b_i ∈ (1/d_i)Z/Z; in units of 1/exponent.
  std::vector<RootTuple> out;
  Vector t(m, 0);
  while (true) {
    Vector powers(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      Integer scaled = t[i] * (exponent / s.diagonal(i, i));
      for (std::size_t j = 0; j < m; ++j) powers[j] += scaled * s.left(i, j);
    }
    for (Integer& p : powers) p = floor_mod(p, exponent);
    out.push_back(RootTuple{exponent, std::move(powers)});
    std::size_t k = 0;
    for (; k < m; ++k) {
      if (++t[k] < s.diagonal(k, k)) break;
      t[k] = 0;
    }
    if (k == m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mtspec
