#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kls {

/// Finite poset stored as a full relation matrix, with an interval index over all pairs z <= z'.
class Poset {
 public:
  Poset() = default;
  /// leq is n*n row-major; it must already be a partial order (checked).
  Poset(std::vector<std::string> labels, std::vector<uint8_t> leq, std::optional<std::vector<int>> rank = {});
  /// Builds the order as the reflexive-transitive closure of the given cover pairs (a, b) meaning a < b.
  static Poset from_covers(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& covers,
                           std::optional<std::vector<int>> rank = {});

  int size() const { return n_; }
  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * n_ + b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::optional<std::vector<int>>& rank() const { return rank_; }
  Poset with_rank(std::optional<std::vector<int>> rank) const;
  /// Index of the element with this label, or -1.
  int find_label(const std::string& label) const;

  /// Elements >= z / <= z, ascending index (z included).
  const std::vector<int>& up(int z) const { return up_[static_cast<size_t>(z)]; }
  const std::vector<int>& down(int z) const { return down_[static_cast<size_t>(z)]; }
  /// Cover pairs (a, b), a < b with nothing strictly between; sorted.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  /// Elements ordered so that a < b implies a appears before b.
  const std::vector<int>& linear_extension() const { return linext_; }

  std::optional<int> minimum() const;
  std::optional<int> maximum() const;

  int num_intervals() const { return static_cast<int>(intervals_.size()); }
  /// Slot of [z, z'] or -1 when z is not <= z'.
  int slot(int z, int zp) const { return slot_[static_cast<size_t>(z) * n_ + zp]; }
  std::pair<int, int> interval(int slot) const { return intervals_[static_cast<size_t>(slot)]; }
  /// Elements of [z, z'] ascending.
  std::vector<int> closed_interval(int z, int zp) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_ && a.rank_ == b.rank_;
  }

 private:
  void build_indexes();

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<uint8_t> leq_;
  std::optional<std::vector<int>> rank_;
  std::vector<std::vector<int>> up_, down_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<int> linext_;
  std::vector<std::pair<int, int>> intervals_;
  std::vector<int32_t> slot_;
};

using PosetPtr = std::shared_ptr<const Poset>;

struct RankCheck {
  bool ok = true;
  std::pair<int, int> violation{-1, -1};
};
RankCheck validate_rank(const Poset& p, const std::vector<int>& rank);
inline RankCheck validate_rank(const Poset& p) { return validate_rank(p, p.rank().value()); }

struct EulerianCheck {
  bool ok = true;
  std::string reason;
  std::pair<int, int> witness{-1, -1};
};
/// Unique minimum, a rank function (the attached one, else inferred), alternating sums zero on strict intervals.
EulerianCheck is_lower_eulerian(const Poset& p);
EulerianCheck is_eulerian(const Poset& p);

/// Rank function with value 0 at the minimum; throws NotRanked when none exists.
std::vector<int> natural_rank(const Poset& p);
/// The attached rank if present, else natural_rank.
std::vector<int> rank_or_natural(const Poset& p);

std::optional<int> join(const Poset& p, int a, int b);
std::vector<int> upper_set(const Poset& p, int q);
std::vector<int> lower_complement(const Poset& p, int q);

struct Subposet {
  Poset poset;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 outside
};
/// Induced order on the given elements (kept in the given order); the rank is restricted when present.
Subposet induced_subposet(const Poset& p, const std::vector<int>& elements);
/// Elements fixed by perm with the induced order and no rank attached.
Subposet fixed_subposet(const Poset& p, const std::vector<int>& perm);
bool is_automorphism(const Poset& p, const std::vector<int>& perm);

/// Element (i, j) has index i * b.size() + j.
Poset direct_product(const Poset& a, const Poset& b);
Poset pyramid(const Poset& b);
Poset adjoin_max(const Poset& p, const std::string& label = "top");

Poset boolean_algebra(int n);
Poset chain(int k);
/// Face poset (empty face included) of [0,1] cut at s interior points.
Poset segment_subdivision(int s);
Poset polygon(int k);
Poset cube_face_lattice(int d);
Poset simplex_face_lattice(int d);
Poset cross_polytope_face_lattice(int d);
/// Adjoin an element above everything except the top, then a new top.
Poset semisuspension(const Poset& eulerian);
/// Disjoint union of a and b with their minima identified and their maxima identified.
/// Elements of a keep their indices; b's remaining elements follow in order.
Poset glue_at_extremes(const Poset& a, const Poset& b);

}  // namespace kls
