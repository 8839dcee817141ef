#include "kls/group.hpp"

#include <cstdlib>
#include <algorithm>
#include <sstream>

#include "kls/error.hpp"

namespace kls {

size_t max_group_order() {
  if (const char* env = std::getenv("KLS_MAX_GROUP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return 10000;
}

namespace {

Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (size_t p = 0; p < b.size(); ++p) out[p] = a[static_cast<size_t>(b[p])];
  return out;
}

constexpr size_t kTableLimit = 512;

}  // namespace

int Group::mul(int a, int b) const {
  if (!mul_.empty()) return mul_[static_cast<size_t>(a) * perms_.size() + b];
  return index_.at(compose(perms_[static_cast<size_t>(a)], perms_[static_cast<size_t>(b)]));
}

std::shared_ptr<const Group> Group::generate(int degree, const std::vector<Perm>& generators,
                                             const std::vector<std::vector<Matrix>>& reps, size_t max_order) {
  auto g = std::make_shared<Group>();
  g->degree_ = degree;
  for (const auto& s : generators) {
    if (static_cast<int>(s.size()) != degree) fail(ErrorCode::InvalidAction, "generator has the wrong length");
    std::vector<uint8_t> seen(static_cast<size_t>(degree), 0);
    for (int p : s) {
      if (p < 0 || p >= degree || seen[static_cast<size_t>(p)]) fail(ErrorCode::InvalidAction, "generator is not a permutation");
      seen[static_cast<size_t>(p)] = 1;
    }
  }
  for (const auto& rep : reps) {
    if (rep.size() != generators.size()) fail(ErrorCode::InvalidAction, "one matrix per generator is required");
    for (const auto& m : rep)
      if (m.rows() != m.cols() || m.rows() != rep[0].rows()) fail(ErrorCode::InvalidAction, "generator matrices must be square of one size");
  }
  Perm id(static_cast<size_t>(degree));
  for (int i = 0; i < degree; ++i) id[static_cast<size_t>(i)] = i;
  std::map<Perm, int> index;
  g->perms_.push_back(id);
  index[id] = 0;
  g->reps_.resize(reps.size());
  for (size_t k = 0; k < reps.size(); ++k) g->reps_[k].push_back(Matrix::identity(reps[k].empty() ? 0 : reps[k][0].rows()));
  for (size_t next = 0; next < g->perms_.size(); ++next) {
    for (size_t s = 0; s < generators.size(); ++s) {
      Perm p = compose(generators[s], g->perms_[next]);
      auto it = index.find(p);
      if (it != index.end()) {
        for (size_t k = 0; k < reps.size(); ++k)
          if (!(reps[k][s] * g->reps_[k][next] == g->reps_[k][static_cast<size_t>(it->second)]))
            fail(ErrorCode::InvalidAction, "matrices are not determined by the permutation action");
        continue;
      }
      if (g->perms_.size() >= max_order)
        fail(ErrorCode::GroupTooLarge, "group order exceeds " + std::to_string(max_order));
      index[p] = static_cast<int>(g->perms_.size());
      g->perms_.push_back(std::move(p));
      for (size_t k = 0; k < reps.size(); ++k) g->reps_[k].push_back(reps[k][s] * g->reps_[k][next]);
    }
  }
  for (const auto& s : generators) g->generators_.push_back(index.at(s));
  const size_t n = g->perms_.size();
  g->index_ = std::move(index);
  if (n <= kTableLimit) {
    g->mul_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) g->mul_[a * n + b] = g->index_.at(compose(g->perms_[a], g->perms_[b]));
  }
  g->inv_.resize(n);
  for (size_t a = 0; a < n; ++a) {
    Perm inv(static_cast<size_t>(degree));
    for (int p = 0; p < degree; ++p) inv[static_cast<size_t>(g->perms_[a][static_cast<size_t>(p)])] = p;
    g->inv_[a] = g->index_.at(inv);
  }
  g->finish();
  return g;
}

std::shared_ptr<const Group> Group::trivial(int degree) { return generate(degree, {}); }

void Group::finish() {
  const size_t n = perms_.size();
  class_rep_.assign(n, -1);
  class_witness_.assign(n, -1);
  for (size_t g0 = 0; g0 < n; ++g0) {
    if (class_rep_[g0] >= 0) continue;
    // g0 is the smallest id of its class since smaller ids are already assigned
    reps_list_.push_back(static_cast<int>(g0));
    class_rep_[g0] = static_cast<int>(g0);
    class_witness_[g0] = 0;
    std::vector<int> queue{static_cast<int>(g0)};
    for (size_t i = 0; i < queue.size(); ++i) {
      const int h = queue[i];
      for (int s : generators_) {
        const int c = conj(s, h);
        if (class_rep_[static_cast<size_t>(c)] >= 0) continue;
        class_rep_[static_cast<size_t>(c)] = static_cast<int>(g0);
        class_witness_[static_cast<size_t>(c)] = mul(s, class_witness_[static_cast<size_t>(h)]);
        queue.push_back(c);
      }
    }
  }
}

int Group::find(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int Group::element_order(int g) const {
  int k = 1;
  for (int x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

Subgroup::Subgroup(GroupPtr group, std::vector<int> elements) : group_(std::move(group)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  local_.assign(static_cast<size_t>(group_->order()), -1);
  for (size_t i = 0; i < elements_.size(); ++i) local_[static_cast<size_t>(elements_[i])] = static_cast<int>(i);
  if (elements_.empty() || elements_[0] != 0) fail(ErrorCode::InvalidAction, "subgroup must contain the identity");
  for (int a : elements_)
    for (int b : elements_)
      if (!contains(group_->mul(a, b))) fail(ErrorCode::InvalidAction, "element set is not closed under multiplication");
  class_of_.assign(elements_.size(), -1);
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (class_of_[i] >= 0) continue;
    const int c = static_cast<int>(class_reps_.size());
    class_reps_.push_back(elements_[i]);
    int size = 0;
    for (int x : elements_) {
      const int k = local_[static_cast<size_t>(group_->conj(x, elements_[i]))];
      if (class_of_[static_cast<size_t>(k)] < 0) {
        class_of_[static_cast<size_t>(k)] = c;
        ++size;
      }
    }
    class_sizes_.push_back(size);
  }
}

std::shared_ptr<const Subgroup> Subgroup::whole(GroupPtr group) {
  std::vector<int> all(static_cast<size_t>(group->order()));
  for (int i = 0; i < group->order(); ++i) all[static_cast<size_t>(i)] = i;
  return std::make_shared<const Subgroup>(std::move(group), std::move(all));
}

std::shared_ptr<const Subgroup> Subgroup::stabilizer(GroupPtr group, const std::vector<int>& points) {
  std::vector<int> els;
  for (int g = 0; g < group->order(); ++g) {
    bool fixes = true;
    for (int p : points) fixes = fixes && group->act(g, p) == p;
    if (fixes) els.push_back(g);
  }
  return std::make_shared<const Subgroup>(std::move(group), std::move(els));
}

int Subgroup::class_of(int g) const {
  const int l = local_[static_cast<size_t>(g)];
  if (l < 0) fail(ErrorCode::InvalidInput, "group element outside the subgroup");
  return class_of_[static_cast<size_t>(l)];
}

bool Subgroup::is_subgroup_of(const Subgroup& h) const {
  if (group_ != h.group_) return false;
  for (int g : elements_)
    if (!h.contains(g)) return false;
  return true;
}

namespace {

void require_same(const SubgroupPtr& a, const SubgroupPtr& b) {
  if (a != b && !(*a == *b)) fail(ErrorCode::MismatchedCarrier, "class functions live on different subgroups");
}

}  // namespace

ClassFunction::ClassFunction(SubgroupPtr on) : on_(std::move(on)), values_(static_cast<size_t>(on_->num_classes())) {}

ClassFunction::ClassFunction(SubgroupPtr on, std::vector<Rational> per_class) : on_(std::move(on)), values_(std::move(per_class)) {
  if (static_cast<int>(values_.size()) != on_->num_classes()) fail(ErrorCode::InvalidInput, "one value per conjugacy class is required");
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  require_same(on_, o.on_);
  auto v = values_;
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return {on_, v};
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
  require_same(on_, o.on_);
  auto v = values_;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.values_[i];
  return {on_, v};
}

ClassFunction ClassFunction::operator*(const ClassFunction& o) const {
  require_same(on_, o.on_);
  auto v = values_;
  for (size_t i = 0; i < v.size(); ++i) v[i] *= o.values_[i];
  return {on_, v};
}

bool ClassFunction::operator==(const ClassFunction& o) const {
  return (on_ == o.on_ || *on_ == *o.on_) && values_ == o.values_;
}

bool ClassFunction::is_integral() const {
  for (const auto& v : values_)
    if (!is_integer(v)) return false;
  return true;
}

ClassFunction ind(const ClassFunction& f, SubgroupPtr up) {
  const SubgroupPtr& down = f.on();
  if (!down->is_subgroup_of(*up)) fail(ErrorCode::InvalidInput, "induction needs a subgroup");
  const Group& g = *up->group();
  return ClassFunction::from_function(up, [&](int h) {
    Rational sum = 0;
    for (int x : up->elements()) {
      const int c = g.conj(g.inv(x), h);
      if (down->contains(c)) sum += f(c);
    }
    return Rational(sum / down->order());
  });
}

ClassFunction res(const ClassFunction& f, SubgroupPtr down) {
  if (!down->is_subgroup_of(*f.on())) fail(ErrorCode::InvalidInput, "restriction needs a subgroup");
  return ClassFunction::from_function(std::move(down), [&](int h) { return f(h); });
}

Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
  require_same(a.on(), b.on());
  const Group& g = *a.on()->group();
  Rational sum = 0;
  for (int h : a.on()->elements()) sum += a(h) * b(g.inv(h));
  return sum / a.on()->order();
}

ClassFunction permutation_character(SubgroupPtr on, const std::vector<int>& points) {
  const Group& g = *on->group();
  return ClassFunction::from_function(on, [&](int h) {
    long n = 0;
    for (int p : points) n += g.act(h, p) == p;
    return Rational(n);
  });
}

ClassPoly::ClassPoly(SubgroupPtr on) : on_(std::move(on)), per_class_(static_cast<size_t>(on_->num_classes())) {}

ClassPoly::ClassPoly(SubgroupPtr on, std::vector<Poly> per_class) : on_(std::move(on)), per_class_(std::move(per_class)) {
  if (static_cast<int>(per_class_.size()) != on_->num_classes()) fail(ErrorCode::InvalidInput, "one polynomial per conjugacy class is required");
}

ClassPoly ClassPoly::constant(SubgroupPtr on, const Poly& p) {
  const auto n = static_cast<size_t>(on->num_classes());
  return ClassPoly(std::move(on), std::vector<Poly>(n, p));
}

ClassFunction ClassPoly::coeff(int i) const {
  std::vector<Rational> v;
  for (const auto& p : per_class_) v.push_back(p.coeff(i));
  return {on_, v};
}

int ClassPoly::degree() const {
  int d = Poly::kDegreeNegInf;
  for (const auto& p : per_class_) d = std::max(d, p.degree());
  return d;
}

bool ClassPoly::is_zero() const {
  for (const auto& p : per_class_)
    if (!p.is_zero()) return false;
  return true;
}

bool ClassPoly::is_integral() const {
  for (const auto& p : per_class_)
    if (!p.is_integral()) return false;
  return true;
}

ClassPoly ClassPoly::operator+(const ClassPoly& o) const {
  require_same(on_, o.on_);
  auto v = per_class_;
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.per_class_[i];
  return {on_, v};
}

ClassPoly ClassPoly::operator-(const ClassPoly& o) const {
  require_same(on_, o.on_);
  auto v = per_class_;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.per_class_[i];
  return {on_, v};
}

ClassPoly ClassPoly::operator*(const ClassPoly& o) const {
  require_same(on_, o.on_);
  auto v = per_class_;
  for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] * o.per_class_[i];
  return {on_, v};
}

ClassPoly ClassPoly::operator-() const {
  auto v = per_class_;
  for (auto& p : v) p = -p;
  return {on_, v};
}

bool ClassPoly::operator==(const ClassPoly& o) const {
  return (on_ == o.on_ || *on_ == *o.on_) && per_class_ == o.per_class_;
}

std::string ClassPoly::to_text() const {
  std::ostringstream os;
  for (size_t c = 0; c < per_class_.size(); ++c) {
    if (c) os << "; ";
    os << on_->class_reps()[c] << ": " << per_class_[c].to_text();
  }
  return os.str();
}

ClassPoly ind(const ClassPoly& f, SubgroupPtr up) {
  const SubgroupPtr& down = f.on();
  if (!down->is_subgroup_of(*up)) fail(ErrorCode::InvalidInput, "induction needs a subgroup");
  const Group& g = *up->group();
  return ClassPoly::from_function(up, [&](int h) {
    Poly sum;
    for (int x : up->elements()) {
      const int c = g.conj(g.inv(x), h);
      if (down->contains(c)) sum += f.ev(c);
    }
    return Rational(1, down->order()) * sum;
  });
}

ClassPoly res(const ClassPoly& f, SubgroupPtr down) {
  if (!down->is_subgroup_of(*f.on())) fail(ErrorCode::InvalidInput, "restriction needs a subgroup");
  return ClassPoly::from_function(std::move(down), [&](int h) { return f.ev(h); });
}

}  // namespace kls
