#include "kls/equivariant.hpp"

#include "kls/error.hpp"

namespace kls {

namespace {

std::string interval_name(const Poset& b, int z, int zp) { return "[" + b.label(z) + ", " + b.label(zp) + "]"; }

}  // namespace

ActionCheck validate_action(const Group& w, const Poset& b, const std::optional<std::vector<int>>& rank, std::optional<int> q) {
  if (w.degree() != b.size()) return {false, "group acts on the wrong number of points", -1, -1};
  for (int i = 0; i < w.generator_count(); ++i) {
    const int g = w.generator(i);
    if (!is_automorphism(b, w.perm(g))) return {false, "not a poset automorphism", g, -1};
    if (rank)
      for (int z = 0; z < b.size(); ++z)
        if ((*rank)[static_cast<size_t>(z)] != (*rank)[static_cast<size_t>(w.act(g, z))]) return {false, "rank is not invariant", g, z};
    if (q && w.act(g, *q) != *q) return {false, "q is not fixed", g, *q};
  }
  return {};
}

ActionCheck is_eulerian_action(const Group& w, const Poset& b) {
  for (int g : w.class_reps()) {
    auto fixed = fixed_subposet(b, w.perm(g));
    auto e = is_lower_eulerian(fixed.poset);
    if (!e.ok) return {false, "fixed poset is not lower Eulerian: " + e.reason, g, -1};
  }
  return {};
}

EquivCarrier::EquivCarrier(GroupPtr group, WeakRankPtr rank) : group_(std::move(group)), rank_(std::move(rank)) {
  const Poset& b = rank_->poset();
  auto check = validate_action(*group_, b);
  if (!check.ok) fail(ErrorCode::InvalidAction, check.reason);
  for (int i = 0; i < group_->generator_count(); ++i) {
    const int g = group_->generator(i);
    for (int s = 0; s < b.num_intervals(); ++s) {
      auto [z, zp] = b.interval(s);
      if (rank_->at_slot(s) != (*rank_)(group_->act(g, z), group_->act(g, zp)))
        fail(ErrorCode::InvalidAction, "weak rank is not invariant on " + interval_name(b, z, zp));
    }
  }
  whole_ = Subgroup::whole(group_);
  std::map<std::vector<int>, SubgroupPtr> cache;
  for (int s = 0; s < b.num_intervals(); ++s) {
    auto [z, zp] = b.interval(s);
    std::vector<int> key{std::min(z, zp), std::max(z, zp)};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, Subgroup::stabilizer(group_, key)).first;
    stab_.push_back(it->second);
  }
  fixed_.resize(static_cast<size_t>(group_->order()));
}

SubgroupPtr EquivCarrier::stab3(int z, int zm, int zp) const {
  std::vector<int> key{z, zm, zp};
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  auto it = stab3_.find(key);
  if (it == stab3_.end()) it = stab3_.emplace(key, Subgroup::stabilizer(group_, key)).first;
  return it->second;
}

const EquivCarrier::Fixed& EquivCarrier::fixed(int w) const {
  auto& slot = fixed_[static_cast<size_t>(w)];
  if (!slot) {
    auto sub = fixed_subposet(poset(), group_->perm(w));
    auto r = restrict_weak_rank(*rank_, sub);
    std::optional<std::vector<int>> natural;
    try {
      natural = natural_rank(sub.poset);
    } catch (const Error&) {
    }
    slot = std::make_unique<Fixed>(Fixed{std::move(sub), std::move(r), std::move(natural)});
  }
  return *slot;
}

EquivElement::EquivElement(EquivCarrierPtr c) : c_(std::move(c)) {
  for (int s = 0; s < c_->poset().num_intervals(); ++s) values_.emplace_back(c_->stab(s));
}

EquivElement EquivElement::delta(EquivCarrierPtr c) {
  EquivElement e(c);
  for (int z = 0; z < c->poset().size(); ++z) {
    const int s = c->poset().slot(z, z);
    e.values_[static_cast<size_t>(s)] = ClassPoly::constant(c->stab(s), Poly::constant(1));
  }
  return e;
}

EquivElement EquivElement::from_function(EquivCarrierPtr c, const std::function<Poly(int, int, int)>& f) {
  EquivElement e(c);
  for (int s = 0; s < c->poset().num_intervals(); ++s) {
    auto [z, zp] = c->poset().interval(s);
    e.values_[static_cast<size_t>(s)] = ClassPoly::from_function(c->stab(s), [&](int u) { return f(z, zp, u); });
  }
  return e;
}

const ClassPoly& EquivElement::operator()(int z, int zp) const {
  const int s = poset().slot(z, zp);
  if (s < 0) fail(ErrorCode::InvalidInput, "not an interval: " + interval_name(poset(), z, zp));
  return values_[static_cast<size_t>(s)];
}

void EquivElement::set_slot(int s, ClassPoly p) {
  if (!(*p.on() == *c_->stab(s))) fail(ErrorCode::MismatchedCarrier, "class polynomial lives on the wrong stabilizer");
  values_[static_cast<size_t>(s)] = std::move(p);
}

IncidenceElement EquivElement::ev(int w) const {
  const auto& fx = c_->fixed(w);
  return IncidenceElement::from_function(fx.rank, [&](int a, int b) {
    return (*this)(fx.sub.to_parent[static_cast<size_t>(a)], fx.sub.to_parent[static_cast<size_t>(b)]).ev(w);
  });
}

namespace {

void require_same(const EquivElement& a, const EquivElement& b) {
  if (a.carrier() != b.carrier()) fail(ErrorCode::MismatchedCarrier, "equivariant elements live on different carriers");
}

template <class F>
EquivElement map_slots(const EquivElement& p, F&& f) {
  EquivElement out(p.carrier());
  for (int s = 0; s < p.poset().num_intervals(); ++s) out.set_slot(s, f(s, p.at_slot(s)));
  return out;
}

template <class F>
ClassPoly map_classes(const ClassPoly& p, F&& f) {
  std::vector<Poly> v;
  for (size_t c = 0; c < p.per_class().size(); ++c) v.push_back(f(p.on()->class_reps()[c], p.per_class()[c]));
  return ClassPoly(p.on(), std::move(v));
}

}  // namespace

EquivElement EquivElement::operator+(const EquivElement& o) const {
  require_same(*this, o);
  return map_slots(*this, [&](int s, const ClassPoly& a) { return a + o.at_slot(s); });
}

EquivElement EquivElement::operator-(const EquivElement& o) const {
  require_same(*this, o);
  return map_slots(*this, [&](int s, const ClassPoly& a) { return a - o.at_slot(s); });
}

EquivElement EquivElement::operator-() const {
  return map_slots(*this, [](int, const ClassPoly& a) { return -a; });
}

EquivElement operator*(const Poly& a, const EquivElement& p) {
  return map_slots(p, [&](int, const ClassPoly& v) { return map_classes(v, [&](int, const Poly& x) { return a * x; }); });
}

bool EquivElement::operator==(const EquivElement& o) const { return first_difference(*this, o).first < 0; }

std::pair<int, int> first_difference(const EquivElement& a, const EquivElement& b) {
  require_same(a, b);
  for (int s = 0; s < a.poset().num_intervals(); ++s)
    if (!(a.at_slot(s) == b.at_slot(s))) return a.poset().interval(s);
  return {-1, -1};
}

EquivElement equiv_multiply(const EquivElement& p, const EquivElement& q) {
  require_same(p, q);
  const EquivCarrier& c = *p.carrier();
  const Poset& b = c.poset();
  const Group& g = c.group();
  EquivElement out(p.carrier());
  for (int s = 0; s < b.num_intervals(); ++s) {
    auto [z, zp] = b.interval(s);
    const SubgroupPtr& h = c.stab(s);
    ClassPoly sum(h);
    std::vector<uint8_t> seen(static_cast<size_t>(b.size()), 0);
    for (int m : b.up(z)) {
      if (!b.leq(m, zp) || seen[static_cast<size_t>(m)]) continue;
      for (int u : h->elements()) seen[static_cast<size_t>(g.act(u, m))] = 1;
      auto k = c.stab3(z, m, zp);
      sum = sum + ind(res(p(z, m), k) * res(q(m, zp), k), h);
    }
    out.set_slot(s, sum);
  }
  return out;
}

EquivElement rev(const EquivElement& p) {
  const WeakRank& r = *p.carrier()->weak_rank();
  return map_slots(p, [&](int s, const ClassPoly& v) {
    return map_classes(v, [&](int, const Poly& x) { return poly_rev(x, r.at_slot(s)); });
  });
}

EquivElement delta_op(const EquivElement& p) {
  const WeakRank& r = *p.carrier()->weak_rank();
  return map_slots(p, [&](int s, const ClassPoly& v) {
    auto [z, zp] = p.poset().interval(s);
    return map_classes(v, [&](int, const Poly& x) { return z == zp ? Poly() : delta_truncate(x, r.at_slot(s)); });
  });
}

EquivElement hat(const EquivElement& p) {
  const EquivCarrier& c = *p.carrier();
  return map_slots(p, [&](int s, const ClassPoly& v) {
    auto [z, zp] = p.poset().interval(s);
    return map_classes(v, [&](int u, const Poly& x) {
      const auto& fx = c.fixed(u);
      if (!fx.natural) fail(ErrorCode::NotLowerEulerian, "fixed poset of element " + std::to_string(u) + " is not ranked");
      const auto& rk = *fx.natural;
      const int d = rk[static_cast<size_t>(fx.sub.from_parent[static_cast<size_t>(zp)])] -
                    rk[static_cast<size_t>(fx.sub.from_parent[static_cast<size_t>(z)])];
      return d % 2 == 0 ? x : -x;
    });
  });
}

EquivElement mask(const EquivElement& p, const std::function<bool(int, int)>& keep) {
  return map_slots(p, [&](int s, const ClassPoly& v) {
    auto [z, zp] = p.poset().interval(s);
    return keep(z, zp) ? v : ClassPoly(v.on());
  });
}

bool is_integral(const EquivElement& p) {
  for (int s = 0; s < p.poset().num_intervals(); ++s)
    if (!p.at_slot(s).is_integral()) return false;
  return true;
}

Check check_conjugation_compatible(const EquivElement& p) {
  const EquivCarrier& c = *p.carrier();
  const Group& g = c.group();
  for (int s = 0; s < p.poset().num_intervals(); ++s) {
    auto [z, zp] = p.poset().interval(s);
    for (int i = 0; i < g.generator_count(); ++i) {
      const int y = g.generator(i);
      const ClassPoly& there = p(g.act(y, z), g.act(y, zp));
      for (int u : c.stab(s)->class_reps())
        if (there.ev(g.conj(y, u)) != p.at_slot(s).ev(u)) return {false, "conjugation compatibility", {z, zp}};
    }
  }
  return {true, "conjugation compatibility", {-1, -1}};
}

EquivElement assemble(EquivCarrierPtr c, const std::function<IncidenceElement(int)>& per_rep) {
  const Group& g = c->group();
  const Poset& b = c->poset();
  std::map<int, IncidenceElement> at;
  for (int w : g.class_reps()) at.emplace(w, per_rep(w));
  EquivElement out(c);
  for (int s = 0; s < b.num_intervals(); ++s) {
    auto [z, zp] = b.interval(s);
    const SubgroupPtr& h = c->stab(s);
    std::vector<std::optional<Poly>> per_class(static_cast<size_t>(h->num_classes()));
    for (int u : h->elements()) {
      const int w = g.class_rep(u), x = g.class_witness(u), xi = g.inv(x);
      const auto& fx = c->fixed(w);
      const int a = fx.sub.from_parent[static_cast<size_t>(g.act(xi, z))];
      const int bb = fx.sub.from_parent[static_cast<size_t>(g.act(xi, zp))];
      const Poly& v = at.at(w)(a, bb);
      if (!v.is_integral())
        fail(ErrorCode::NonIntegralCharacter, "non-integral value " + v.to_text() + " on " + interval_name(b, z, zp) + " at element " + std::to_string(u));
      auto& slot = per_class[static_cast<size_t>(h->class_of(u))];
      if (!slot)
        slot = v;
      else if (*slot != v)
        fail(ErrorCode::AssemblyInconsistent, "values on " + interval_name(b, z, zp) + " are not constant on the class of element " + std::to_string(u));
    }
    std::vector<Poly> v;
    for (auto& p : per_class) v.push_back(*p);
    out.set_slot(s, ClassPoly(h, std::move(v)));
  }
  auto cc = check_conjugation_compatible(out);
  if (!cc.ok) fail(ErrorCode::AssemblyInconsistent, "assembled values are not conjugation compatible on " + interval_name(b, cc.witness.first, cc.witness.second));
  return out;
}

EquivElement pullback(const EquivElement& p, const SubgroupPtr& h) {
  const Group& g = p.carrier()->group();
  std::vector<Perm> gens;
  for (int u : h->elements())
    if (u != g.identity()) gens.push_back(g.perm(u));
  auto sub = Group::generate(g.degree(), gens);
  auto c = std::make_shared<const EquivCarrier>(sub, p.carrier()->weak_rank());
  return EquivElement::from_function(c, [&](int z, int zp, int u) { return p(z, zp).ev(g.find(sub->perm(u))); });
}

EquivElement pullback_conjugation(const EquivElement& p, int x) {
  const Group& g = p.carrier()->group();
  const int xi = g.inv(x);
  return EquivElement::from_function(p.carrier(), [&](int z, int zp, int u) {
    return p(g.act(xi, z), g.act(xi, zp)).ev(g.conj(xi, u));
  });
}

EquivKernelCheck equiv_kernel_validate(const EquivElement& kappa) {
  const EquivCarrier& c = *kappa.carrier();
  auto cc = check_conjugation_compatible(kappa);
  if (!cc.ok) return {false, "not conjugation compatible", -1, cc.witness};
  for (int w : c.group().class_reps()) {
    auto e = kappa.ev(w);
    const auto& fx = c.fixed(w);
    for (int s = 0; s < e.poset().num_intervals(); ++s)
      if (!e.at_slot(s).is_integral()) {
        auto [a, b] = e.poset().interval(s);
        return {false, "non-integral value", w, {fx.sub.to_parent[static_cast<size_t>(a)], fx.sub.to_parent[static_cast<size_t>(b)]}};
      }
    auto k = validate_kernel(e);
    if (!k.ok) {
      std::pair<int, int> wit{-1, -1};
      if (k.witness.first >= 0)
        wit = {fx.sub.to_parent[static_cast<size_t>(k.witness.first)], fx.sub.to_parent[static_cast<size_t>(k.witness.second)]};
      return {false, k.reason, w, wit};
    }
  }
  return {};
}

EquivElement equiv_solve_g(const EquivElement& kappa) {
  return assemble(kappa.carrier(), [&](int w) { return solve_g(kappa.ev(w)); });
}

EquivElement equiv_solve_f(const EquivElement& kappa) {
  return assemble(kappa.carrier(), [&](int w) { return solve_f(kappa.ev(w)); });
}

EquivElement equiv_z(const EquivElement& kappa) {
  return assemble(kappa.carrier(), [&](int w) { return z_function(kappa.ev(w)); });
}

Check check_equiv_solution(const EquivElement& kappa, const EquivElement& g, const EquivElement& f) {
  const Poset& b = kappa.poset();
  const WeakRank& r = *kappa.carrier()->weak_rank();
  for (const EquivElement* e : {&g, &f}) {
    for (int s = 0; s < b.num_intervals(); ++s) {
      auto [z, zp] = b.interval(s);
      const ClassPoly& v = e->at_slot(s);
      if (z == zp) {
        if (!(v == ClassPoly::constant(v.on(), Poly::constant(1)))) return {false, "unit diagonal", {z, zp}};
      } else if (!v.is_zero() && 2 * v.degree() >= r.at_slot(s)) {
        return {false, "degree below half the weak rank", {z, zp}};
      }
    }
  }
  auto d = first_difference(rev(g), equiv_multiply(g, kappa));
  if (d.first >= 0) return {false, "g^rev = g kappa", d};
  d = first_difference(rev(f), equiv_multiply(kappa, f));
  if (d.first >= 0) return {false, "f^rev = kappa f", d};
  return {true, "equivariant solution", {-1, -1}};
}

namespace {

void require_triple_action(const SubdivisionTriple& t, const EquivCarrier& c) {
  const Poset& b = c.poset();
  if (b.size() != t.gamma().size()) fail(ErrorCode::MismatchedCarrier, "kernel does not live on Gamma");
  for (int a = 0; a < b.size(); ++a)
    for (int x = 0; x < b.size(); ++x)
      if (b.leq(a, x) != t.gamma().leq(a, x)) fail(ErrorCode::MismatchedCarrier, "kernel poset differs from Gamma");
  auto v = validate_action(c.group(), t.gamma(), t.rho(), t.q());
  if (!v.ok) fail(ErrorCode::InvalidAction, v.reason + " (element " + std::to_string(v.element) + ")");
  auto e = is_eulerian_action(c.group(), t.gamma());
  if (!e.ok) fail(ErrorCode::NotLowerEulerian, "action is not Eulerian at element " + std::to_string(e.element) + ": " + e.reason);
}

}  // namespace

SubdivisionTriple fixed_triple(const SubdivisionTriple& t, const EquivCarrier& c, int w) {
  const auto& fx = c.fixed(w);
  if (!fx.natural) fail(ErrorCode::NotLowerEulerian, "fixed poset of element " + std::to_string(w) + " is not ranked");
  const int q = fx.sub.from_parent[static_cast<size_t>(t.q())];
  if (q < 0) fail(ErrorCode::InvalidAction, "q is not fixed by element " + std::to_string(w));
  return SubdivisionTriple(fx.sub.poset, *fx.natural, q);
}

EquivLocalInvariants equiv_local_invariants(const SubdivisionTriple& t, const EquivElement& kappa) {
  const EquivCarrier& c = *kappa.carrier();
  require_triple_action(t, c);
  std::map<int, LocalInvariants> per;
  for (int w : c.group().class_reps()) {
    auto tw = fixed_triple(t, c, w);
    per.emplace(w, local_invariants(tw, c.fixed(w).rank, kappa.ev(w)));
  }
  auto h = assemble(kappa.carrier(), [&](int w) { return per.at(w).h; });
  auto ell = assemble(kappa.carrier(), [&](int w) { return per.at(w).ell; });
  auto d = assemble(kappa.carrier(), [&](int w) { return per.at(w).delta_ell; });
  return {std::move(h), std::move(ell), std::move(d)};
}

Check check_equivariant_theorem(const SubdivisionTriple& t, const EquivElement& kappa) {
  const EquivCarrier& c = *kappa.carrier();
  require_triple_action(t, c);
  for (int w : c.group().class_reps()) {
    auto tw = fixed_triple(t, c, w);
    const auto& rw = c.fixed(w).rank;
    auto kw = kappa.ev(w);
    for (auto chk : {check_local_properties(tw, rw, kw), check_theorem_g(tw, rw, kw), check_corollary_f(tw, rw, kw),
                     check_corollary_z(tw, rw, kw)}) {
      if (!chk.ok) {
        const auto& sub = c.fixed(w).sub;
        std::pair<int, int> wit{-1, -1};
        if (chk.witness.first >= 0)
          wit = {sub.to_parent[static_cast<size_t>(chk.witness.first)], sub.to_parent[static_cast<size_t>(chk.witness.second)]};
        return {false, chk.what + " at element " + std::to_string(w), wit};
      }
    }
  }
  auto g = equiv_solve_g(kappa);
  auto f = equiv_solve_f(kappa);
  auto z = equiv_z(kappa);
  auto li = equiv_local_invariants(t, kappa);
  auto xy = [&](int a, int b) { return t.is_XY(a, b); };
  auto xx = [&](int a, int b) { return t.in_X(a) && t.in_X(b); };
  auto yy = [&](int a, int b) { return t.in_Y(a) && t.in_Y(b); };
  auto check = [](const EquivElement& a, const EquivElement& b, const std::string& what) -> Check {
    auto d = first_difference(a, b);
    return {d.first < 0, what, d};
  };
  const auto hd = hat(li.delta_ell);
  for (auto chk : {
           check(mask(g, xy), equiv_multiply(li.delta_ell, g), "equivariant g|X/Y = Delta ell * g"),
           check(mask(g, xy), equiv_multiply(li.delta_ell, mask(g, yy)), "equivariant g|X/Y = Delta ell * g|Y"),
           check(mask(f, xy), -equiv_multiply(f, hd), "equivariant f|X/Y = -f * hat(Delta ell)"),
           check(mask(f, xy), -equiv_multiply(mask(f, xx), hd), "equivariant f|X/Y = -f|X * hat(Delta ell)"),
           check(mask(z, xy), -equiv_multiply(mask(z, xx), hd) + equiv_multiply(rev(li.delta_ell), mask(z, yy)),
                 "equivariant Z|X/Y"),
           check(li.delta_ell, equiv_multiply(mask(g, xy), hat(f)), "equivariant Delta ell = g|X/Y * hat(f)"),
       })
    if (!chk.ok) return chk;
  return {true, "equivariant theorem", {-1, -1}};
}

}  // namespace kls
