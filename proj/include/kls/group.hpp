#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "kls/linalg.hpp"
#include "kls/poly.hpp"

namespace kls {

using Perm = std::vector<int>;

/// Default bound on |W|; KLS_MAX_GROUP overrides it.
size_t max_group_order();

/// A finite group given by permutations of {0..n-1}, closed from generators.
/// Optional linear representations ride along; elements are identified by their permutation,
/// so each representation must be a function of the permutation.
class Group {
 public:
  /// reps[k][i] is the matrix of generator i in representation k.
  static std::shared_ptr<const Group> generate(int degree, const std::vector<Perm>& generators,
                                               const std::vector<std::vector<Matrix>>& reps = {},
                                               size_t max_order = max_group_order());
  static std::shared_ptr<const Group> trivial(int degree);

  int order() const { return static_cast<int>(perms_.size()); }
  int degree() const { return degree_; }
  int identity() const { return 0; }
  const Perm& perm(int g) const { return perms_[static_cast<size_t>(g)]; }
  int act(int g, int point) const { return perms_[static_cast<size_t>(g)][static_cast<size_t>(point)]; }
  /// (a * b)(p) = a(b(p)).
  int mul(int a, int b) const;
  int inv(int g) const { return inv_[static_cast<size_t>(g)]; }
  /// x g x^{-1}
  int conj(int x, int g) const { return mul(mul(x, g), inv(x)); }
  int find(const Perm& p) const;
  int num_reps() const { return static_cast<int>(reps_.size()); }
  const Matrix& matrix(int rep, int g) const { return reps_[static_cast<size_t>(rep)][static_cast<size_t>(g)]; }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  int generator(int i) const { return generators_[static_cast<size_t>(i)]; }
  int element_order(int g) const;

  /// Minimal element id in the conjugacy class of g in the whole group, and some x with x rep x^{-1} = g.
  int class_rep(int g) const { return class_rep_[static_cast<size_t>(g)]; }
  int class_witness(int g) const { return class_witness_[static_cast<size_t>(g)]; }
  const std::vector<int>& class_reps() const { return reps_list_; }

 private:
  int degree_ = 0;
  std::vector<Perm> perms_;
  std::vector<int> mul_, inv_, generators_;  // mul_ is a full table only for small groups
  std::map<Perm, int> index_;
  std::vector<std::vector<Matrix>> reps_;
  std::vector<int> class_rep_, class_witness_, reps_list_;
  void finish();
};
using GroupPtr = std::shared_ptr<const Group>;

/// A subgroup with its own conjugacy classes; class representatives are minimal element ids.
class Subgroup {
 public:
  Subgroup(GroupPtr group, std::vector<int> elements);
  static std::shared_ptr<const Subgroup> whole(GroupPtr group);
  /// Elements fixing every listed point.
  static std::shared_ptr<const Subgroup> stabilizer(GroupPtr group, const std::vector<int>& points);

  const GroupPtr& group() const { return group_; }
  const std::vector<int>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(int g) const { return local_[static_cast<size_t>(g)] >= 0; }
  int num_classes() const { return static_cast<int>(class_reps_.size()); }
  int class_of(int g) const;
  const std::vector<int>& class_reps() const { return class_reps_; }
  int class_size(int c) const { return class_sizes_[static_cast<size_t>(c)]; }
  bool is_subgroup_of(const Subgroup& h) const;
  bool operator==(const Subgroup& o) const { return group_ == o.group_ && elements_ == o.elements_; }

 private:
  GroupPtr group_;
  std::vector<int> elements_, local_, class_of_, class_reps_, class_sizes_;
};
using SubgroupPtr = std::shared_ptr<const Subgroup>;

/// Rational-valued class function on a subgroup.
class ClassFunction {
 public:
  ClassFunction() = default;
  explicit ClassFunction(SubgroupPtr on);
  ClassFunction(SubgroupPtr on, std::vector<Rational> per_class);
  template <class F>
  static ClassFunction from_function(SubgroupPtr on, F&& value_at) {
    std::vector<Rational> v;
    for (int g : on->class_reps()) v.push_back(value_at(g));
    return ClassFunction(std::move(on), std::move(v));
  }
  const SubgroupPtr& on() const { return on_; }
  const Rational& operator()(int g) const { return values_[static_cast<size_t>(on_->class_of(g))]; }
  const std::vector<Rational>& values() const { return values_; }
  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator*(const ClassFunction& o) const;
  bool operator==(const ClassFunction& o) const;
  bool is_integral() const;

 private:
  SubgroupPtr on_;
  std::vector<Rational> values_;
};

/// Induced character: (1/|K|) sum over h in H with h^{-1} g h in K of f(h^{-1} g h).
ClassFunction ind(const ClassFunction& f, SubgroupPtr up);
ClassFunction res(const ClassFunction& f, SubgroupPtr down);
/// (1/|H|) sum a(h) b(h^{-1}).
Rational inner_product(const ClassFunction& a, const ClassFunction& b);
/// Number of listed points fixed by each element.
ClassFunction permutation_character(SubgroupPtr on, const std::vector<int>& points);

/// Polynomial with class-function coefficients, stored as one polynomial per conjugacy class.
class ClassPoly {
 public:
  ClassPoly() = default;
  explicit ClassPoly(SubgroupPtr on);
  ClassPoly(SubgroupPtr on, std::vector<Poly> per_class);
  static ClassPoly constant(SubgroupPtr on, const Poly& p);
  template <class F>
  static ClassPoly from_function(SubgroupPtr on, F&& value_at) {
    std::vector<Poly> v;
    for (int g : on->class_reps()) v.push_back(value_at(g));
    return ClassPoly(std::move(on), std::move(v));
  }
  const SubgroupPtr& on() const { return on_; }
  const Poly& ev(int g) const { return per_class_[static_cast<size_t>(on_->class_of(g))]; }
  const std::vector<Poly>& per_class() const { return per_class_; }
  ClassFunction coeff(int i) const;
  int degree() const;
  bool is_zero() const;
  bool is_integral() const;
  ClassPoly operator+(const ClassPoly& o) const;
  ClassPoly operator-(const ClassPoly& o) const;
  ClassPoly operator*(const ClassPoly& o) const;
  ClassPoly operator-() const;
  bool operator==(const ClassPoly& o) const;
  std::string to_text() const;

 private:
  SubgroupPtr on_;
  std::vector<Poly> per_class_;
};
ClassPoly ind(const ClassPoly& f, SubgroupPtr up);
ClassPoly res(const ClassPoly& f, SubgroupPtr down);

}  // namespace kls
