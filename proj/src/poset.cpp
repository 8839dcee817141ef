#include "kls/poset.hpp"

#include <algorithm>
#include <numeric>

#include "kls/error.hpp"

namespace kls {

Poset::Poset(std::vector<std::string> labels, std::vector<uint8_t> relation, std::optional<std::vector<int>> rank)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)), leq_(std::move(relation)), rank_(std::move(rank)) {
  if (leq_.size() != static_cast<size_t>(n_) * n_) fail(ErrorCode::InvalidInput, "relation matrix has wrong size");
  if (rank_ && static_cast<int>(rank_->size()) != n_) fail(ErrorCode::InvalidInput, "rank vector has wrong size");
  for (int a = 0; a < n_; ++a) {
    if (!leq(a, a)) fail(ErrorCode::InvalidInput, "relation is not reflexive");
    for (int b = 0; b < n_; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) {
        fail(ErrorCode::InvalidInput, "relation is not antisymmetric at " + labels_[a] + ", " + labels_[b]);
      }
    }
  }
  for (int a = 0; a < n_; ++a) {
    const uint8_t* ra = &leq_[static_cast<size_t>(a) * n_];
    for (int b = 0; b < n_; ++b) {
      if (!ra[b] || a == b) continue;
      const uint8_t* rb = &leq_[static_cast<size_t>(b) * n_];
      for (int c = 0; c < n_; ++c)
        if (rb[c] && !ra[c]) fail(ErrorCode::InvalidInput, "relation is not transitive");
    }
  }
  build_indexes();
}

Poset Poset::from_covers(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& covers,
                         std::optional<std::vector<int>> rank) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorCode::InvalidInput, "cover index out of range");
    if (a == b) fail(ErrorCode::InvalidInput, "cover pair relates an element to itself");
    succ[static_cast<size_t>(a)].push_back(b);
  }
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    std::vector<int> stack{a};
    leq[static_cast<size_t>(a) * n + a] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : succ[static_cast<size_t>(x)]) {
        auto& cell = leq[static_cast<size_t>(a) * n + y];
        if (!cell) {
          cell = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return Poset(std::move(labels), std::move(leq), std::move(rank));
}

void Poset::build_indexes() {
  up_.assign(static_cast<size_t>(n_), {});
  down_.assign(static_cast<size_t>(n_), {});
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (leq(a, b)) {
        up_[static_cast<size_t>(a)].push_back(b);
        down_[static_cast<size_t>(b)].push_back(a);
      }
  covers_.clear();
  for (int a = 0; a < n_; ++a) {
    for (int b : up_[static_cast<size_t>(a)]) {
      if (b == a) continue;
      bool cover = true;
      for (int c : up_[static_cast<size_t>(a)]) {
        if (c != a && c != b && leq(c, b)) {
          cover = false;
          break;
        }
      }
      if (cover) covers_.emplace_back(a, b);
    }
  }
  linext_.resize(static_cast<size_t>(n_));
  std::iota(linext_.begin(), linext_.end(), 0);
  std::stable_sort(linext_.begin(), linext_.end(), [&](int a, int b) {
    return down_[static_cast<size_t>(a)].size() < down_[static_cast<size_t>(b)].size();
  });
  intervals_.clear();
  slot_.assign(static_cast<size_t>(n_) * n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b : up_[static_cast<size_t>(a)]) {
      slot_[static_cast<size_t>(a) * n_ + b] = static_cast<int32_t>(intervals_.size());
      intervals_.emplace_back(a, b);
    }
}

Poset Poset::with_rank(std::optional<std::vector<int>> rank) const {
  Poset p = *this;
  if (rank && static_cast<int>(rank->size()) != n_) fail(ErrorCode::InvalidInput, "rank vector has wrong size");
  p.rank_ = std::move(rank);
  return p;
}

int Poset::find_label(const std::string& label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[static_cast<size_t>(i)] == label) return i;
  return -1;
}

std::optional<int> Poset::minimum() const {
  for (int a = 0; a < n_; ++a)
    if (static_cast<int>(up_[static_cast<size_t>(a)].size()) == n_) return a;
  return std::nullopt;
}

std::optional<int> Poset::maximum() const {
  for (int a = 0; a < n_; ++a)
    if (static_cast<int>(down_[static_cast<size_t>(a)].size()) == n_) return a;
  return std::nullopt;
}

std::vector<int> Poset::closed_interval(int z, int zp) const {
  std::vector<int> out;
  for (int c : up(z))
    if (leq(c, zp)) out.push_back(c);
  return out;
}

RankCheck validate_rank(const Poset& p, const std::vector<int>& rank) {
  for (auto [a, b] : p.covers()) {
    if (rank[static_cast<size_t>(b)] != rank[static_cast<size_t>(a)] + 1) return {false, {a, b}};
  }
  return {};
}

std::vector<int> natural_rank(const Poset& p) {
  auto mn = p.minimum();
  if (!mn) fail(ErrorCode::NotRanked, "poset has no unique minimum");
  std::vector<int> rank(static_cast<size_t>(p.size()), -1);
  rank[static_cast<size_t>(*mn)] = 0;
  // covers are sorted by lower element; walk in linear-extension order instead
  std::vector<std::vector<int>> succ(static_cast<size_t>(p.size()));
  for (auto [a, b] : p.covers()) succ[static_cast<size_t>(a)].push_back(b);
  for (int a : p.linear_extension()) {
    for (int b : succ[static_cast<size_t>(a)]) {
      int want = rank[static_cast<size_t>(a)] + 1;
      int& have = rank[static_cast<size_t>(b)];
      if (have == -1) {
        have = want;
      } else if (have != want) {
        fail(ErrorCode::NotRanked, "no rank function: element " + p.label(b) + " is reached by chains of different lengths");
      }
    }
  }
  return rank;
}

std::vector<int> rank_or_natural(const Poset& p) { return p.rank() ? *p.rank() : natural_rank(p); }

EulerianCheck is_lower_eulerian(const Poset& p) {
  EulerianCheck out;
  if (!p.minimum()) return {false, "no unique minimum", {-1, -1}};
  std::vector<int> rank;
  if (p.rank()) {
    auto rc = validate_rank(p, *p.rank());
    if (!rc.ok) return {false, "rank function violated on a cover", rc.violation};
    rank = *p.rank();
  } else {
    try {
      rank = natural_rank(p);
    } catch (const Error& e) {
      return {false, e.what(), {-1, -1}};
    }
  }
  const int n = p.size();
  std::vector<int> sum(static_cast<size_t>(n));
  for (int z = 0; z < n; ++z) {
    std::fill(sum.begin(), sum.end(), 0);
    for (int m : p.up(z)) {
      int sign = (rank[static_cast<size_t>(m)] % 2 == 0) ? 1 : -1;
      for (int zp : p.up(m)) sum[static_cast<size_t>(zp)] += sign;
    }
    for (int zp : p.up(z)) {
      if (zp != z && sum[static_cast<size_t>(zp)] != 0) return {false, "alternating sum is nonzero", {z, zp}};
    }
  }
  return out;
}

EulerianCheck is_eulerian(const Poset& p) {
  auto r = is_lower_eulerian(p);
  if (!r.ok) return r;
  if (!p.maximum()) return {false, "no unique maximum", {-1, -1}};
  return r;
}

std::optional<int> join(const Poset& p, int a, int b) {
  std::vector<int> common;
  for (int c : p.up(a))
    if (p.leq(b, c)) common.push_back(c);
  for (int c : common) {
    bool least = std::all_of(common.begin(), common.end(), [&](int d) { return p.leq(c, d); });
    if (least) return c;
  }
  return std::nullopt;
}

std::vector<int> upper_set(const Poset& p, int q) { return p.up(q); }

std::vector<int> lower_complement(const Poset& p, int q) {
  std::vector<int> out;
  for (int z = 0; z < p.size(); ++z)
    if (!p.leq(q, z)) out.push_back(z);
  return out;
}

Subposet induced_subposet(const Poset& p, const std::vector<int>& elements) {
  const int m = static_cast<int>(elements.size());
  Subposet s;
  s.to_parent = elements;
  s.from_parent.assign(static_cast<size_t>(p.size()), -1);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    s.from_parent[static_cast<size_t>(elements[static_cast<size_t>(i)])] = i;
    labels.push_back(p.label(elements[static_cast<size_t>(i)]));
  }
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      leq[static_cast<size_t>(i) * m + j] = p.leq(elements[static_cast<size_t>(i)], elements[static_cast<size_t>(j)]);
  std::optional<std::vector<int>> rank;
  if (p.rank()) {
    rank.emplace();
    for (int e : elements) rank->push_back((*p.rank())[static_cast<size_t>(e)]);
  }
  s.poset = Poset(std::move(labels), std::move(leq), std::move(rank));
  return s;
}

bool is_automorphism(const Poset& p, const std::vector<int>& perm) {
  const int n = p.size();
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
  for (int x : perm) {
    if (x < 0 || x >= n || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(a, b) != p.leq(perm[static_cast<size_t>(a)], perm[static_cast<size_t>(b)])) return false;
  return true;
}

Subposet fixed_subposet(const Poset& p, const std::vector<int>& perm) {
  std::vector<int> fixed;
  for (int z = 0; z < p.size(); ++z)
    if (perm[static_cast<size_t>(z)] == z) fixed.push_back(z);
  Subposet s = induced_subposet(p.with_rank(std::nullopt), fixed);
  return s;
}

Poset direct_product(const Poset& a, const Poset& b) {
  const int na = a.size(), nb = b.size(), n = na * nb;
  std::vector<std::string> labels;
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k : a.up(i))
        for (int l : b.up(j)) leq[static_cast<size_t>(i * nb + j) * n + (k * nb + l)] = 1;
  std::optional<std::vector<int>> rank;
  if (a.rank() && b.rank()) {
    rank.emplace();
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) rank->push_back((*a.rank())[static_cast<size_t>(i)] + (*b.rank())[static_cast<size_t>(j)]);
  }
  return Poset(std::move(labels), std::move(leq), std::move(rank));
}

Poset pyramid(const Poset& b) { return direct_product(b, boolean_algebra(1)); }

Poset adjoin_max(const Poset& p, const std::string& label) {
  const int n = p.size(), m = n + 1;
  std::vector<std::string> labels = p.labels();
  labels.push_back(label);
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) leq[static_cast<size_t>(a) * m + b] = p.leq(a, b);
    leq[static_cast<size_t>(a) * m + n] = 1;
  }
  leq[static_cast<size_t>(n) * m + n] = 1;
  return Poset(std::move(labels), std::move(leq));
}

namespace {

std::string subset_label(int mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1) {
      if (!first) s += ',';
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

// Poset given by a comparator over abstract elements.
template <class Leq>
Poset build(std::vector<std::string> labels, Leq&& le, std::vector<int> rank) {
  const int n = static_cast<int>(labels.size());
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[static_cast<size_t>(a) * n + b] = le(a, b);
  return Poset(std::move(labels), std::move(leq), std::move(rank));
}

}  // namespace

namespace {
void check_param(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi)
    fail(ErrorCode::InvalidInput, std::string(what) + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}
}  // namespace

Poset boolean_algebra(int n) {
  check_param(n, 0, 12, "boolean algebra rank");
  const int size = 1 << n;
  std::vector<std::string> labels;
  std::vector<int> rank;
  for (int m = 0; m < size; ++m) {
    labels.push_back(subset_label(m, n));
    rank.push_back(__builtin_popcount(static_cast<unsigned>(m)));
  }
  return build(std::move(labels), [](int a, int b) { return (a & ~b) == 0; }, std::move(rank));
}

Poset chain(int k) {
  check_param(k, 1, 1 << 20, "chain length");
  std::vector<std::string> labels;
  std::vector<int> rank;
  for (int i = 0; i < k; ++i) {
    labels.push_back(std::to_string(i));
    rank.push_back(i);
  }
  return build(std::move(labels), [](int a, int b) { return a <= b; }, std::move(rank));
}

namespace {

// Face lattice given by vertex sets (the empty face first); order is containment.
Poset from_vertex_sets(const std::vector<std::vector<int>>& faces, std::vector<std::string> labels, std::vector<int> rank) {
  auto subset = [&](int a, int b) {
    return std::includes(faces[static_cast<size_t>(b)].begin(), faces[static_cast<size_t>(b)].end(),
                         faces[static_cast<size_t>(a)].begin(), faces[static_cast<size_t>(a)].end());
  };
  return build(std::move(labels), subset, std::move(rank));
}

}  // namespace

Poset segment_subdivision(int s) {
  check_param(s, 0, 1 << 20, "segment interior points");
  std::vector<std::vector<int>> faces{{}};
  std::vector<std::string> labels{"empty"};
  std::vector<int> rank{0};
  for (int i = 0; i < s + 2; ++i) {
    faces.push_back({i});
    labels.push_back("v" + std::to_string(i));
    rank.push_back(1);
  }
  for (int i = 0; i < s + 1; ++i) {
    faces.push_back({i, i + 1});
    labels.push_back("e" + std::to_string(i));
    rank.push_back(2);
  }
  return from_vertex_sets(faces, std::move(labels), std::move(rank));
}

Poset polygon(int k) {
  check_param(k, 3, 1 << 20, "polygon vertex count");
  std::vector<std::vector<int>> faces{{}};
  std::vector<std::string> labels{"empty"};
  std::vector<int> rank{0};
  for (int i = 0; i < k; ++i) {
    faces.push_back({i});
    labels.push_back("v" + std::to_string(i));
    rank.push_back(1);
  }
  for (int i = 0; i < k; ++i) {
    std::vector<int> e{i, (i + 1) % k};
    std::sort(e.begin(), e.end());
    faces.push_back(e);
    labels.push_back("e" + std::to_string(i));
    rank.push_back(2);
  }
  std::vector<int> all(static_cast<size_t>(k));
  std::iota(all.begin(), all.end(), 0);
  faces.push_back(all);
  labels.push_back("P");
  rank.push_back(3);
  return from_vertex_sets(faces, std::move(labels), std::move(rank));
}

Poset cube_face_lattice(int d) {
  check_param(d, 0, 8, "cube dimension");
  // nonempty faces are words in {0,1,*}^d
  std::vector<std::string> words{""};
  for (int i = 0; i < d; ++i) {
    std::vector<std::string> next;
    for (const auto& w : words)
      for (char c : {'0', '1', '*'}) next.push_back(w + c);
    words = std::move(next);
  }
  std::vector<std::string> labels{"empty"};
  std::vector<int> rank{0};
  for (const auto& w : words) {
    labels.push_back(w);
    rank.push_back(static_cast<int>(std::count(w.begin(), w.end(), '*')) + 1);
  }
  auto le = [&](int a, int b) {
    if (a == 0) return true;
    if (b == 0) return false;
    const auto& x = words[static_cast<size_t>(a - 1)];
    const auto& y = words[static_cast<size_t>(b - 1)];
    for (int i = 0; i < d; ++i)
      if (y[i] != '*' && x[i] != y[i]) return false;
    return true;
  };
  return build(std::move(labels), le, std::move(rank));
}

Poset simplex_face_lattice(int d) {
  check_param(d, -1, 11, "simplex dimension");
  return boolean_algebra(d + 1);
}

Poset cross_polytope_face_lattice(int d) {
  check_param(d, 0, 8, "cross-polytope dimension");
  // proper faces are sign vectors in {0,+,-}^d; the all-zero vector is the empty face
  std::vector<std::string> words{""};
  for (int i = 0; i < d; ++i) {
    std::vector<std::string> next;
    for (const auto& w : words)
      for (char c : {'0', '+', '-'}) next.push_back(w + c);
    words = std::move(next);
  }
  std::vector<std::string> labels;
  std::vector<int> rank;
  for (const auto& w : words) {
    int nz = static_cast<int>(d - std::count(w.begin(), w.end(), '0'));
    labels.push_back(nz == 0 ? "empty" : w);
    rank.push_back(nz);
  }
  const int top = static_cast<int>(words.size());
  labels.push_back("P");
  rank.push_back(d + 1);
  auto le = [&](int a, int b) {
    if (b == top) return true;
    if (a == top) return false;
    const auto& x = words[static_cast<size_t>(a)];
    const auto& y = words[static_cast<size_t>(b)];
    for (int i = 0; i < d; ++i)
      if (x[i] != '0' && x[i] != y[i]) return false;
    return true;
  };
  return build(std::move(labels), le, std::move(rank));
}

Poset semisuspension(const Poset& eulerian) {
  auto top = eulerian.maximum();
  if (!top) fail(ErrorCode::InvalidInput, "semisuspension needs a unique maximum");
  const int n = eulerian.size(), m = n + 2;
  const int zhat = n, newtop = n + 1;
  std::vector<std::string> labels = eulerian.labels();
  labels.push_back("zhat");
  labels.push_back("top");
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) leq[static_cast<size_t>(a) * m + b] = eulerian.leq(a, b);
    if (a != *top) leq[static_cast<size_t>(a) * m + zhat] = 1;
    leq[static_cast<size_t>(a) * m + newtop] = 1;
  }
  leq[static_cast<size_t>(zhat) * m + zhat] = 1;
  leq[static_cast<size_t>(zhat) * m + newtop] = 1;
  leq[static_cast<size_t>(newtop) * m + newtop] = 1;
  return Poset(std::move(labels), std::move(leq));
}

Poset glue_at_extremes(const Poset& a, const Poset& b) {
  auto amin = a.minimum(), amax = a.maximum(), bmin = b.minimum(), bmax = b.maximum();
  if (!amin || !amax || !bmin || !bmax) fail(ErrorCode::InvalidInput, "gluing needs bounded posets");
  std::vector<int> map_b(static_cast<size_t>(b.size()));
  std::vector<std::string> labels = a.labels();
  for (int j = 0; j < b.size(); ++j) {
    if (j == *bmin) {
      map_b[static_cast<size_t>(j)] = *amin;
    } else if (j == *bmax) {
      map_b[static_cast<size_t>(j)] = *amax;
    } else {
      map_b[static_cast<size_t>(j)] = static_cast<int>(labels.size());
      labels.push_back(b.label(j) + "'");
    }
  }
  const int m = static_cast<int>(labels.size());
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) leq[static_cast<size_t>(x) * m + y] = a.leq(x, y);
  for (int x = 0; x < b.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      if (b.leq(x, y)) leq[static_cast<size_t>(map_b[static_cast<size_t>(x)]) * m + map_b[static_cast<size_t>(y)]] = 1;
  for (int x = 0; x < m; ++x) {
    leq[static_cast<size_t>(*amin) * m + x] = 1;
    leq[static_cast<size_t>(x) * m + *amax] = 1;
  }
  return Poset(std::move(labels), std::move(leq));
}

}  // namespace kls
