#include "io/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>

#include "kls/error.hpp"

namespace kls::io {

namespace {

int status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::GroupTooLarge:
    case ErrorCode::NotASimplex:
      return kInputError;
    default:
      return kFailed;
  }
}

json pair_json(std::pair<int, int> p) { return json::array({p.first, p.second}); }

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

// Order of the element and, when the group carries matrices, its first matrix.
json element_json(const Group& g, int e) {
  json out = {{"order", g.element_order(e)}};
  if (g.num_reps() > 0) {
    const Matrix& m = g.matrix(0, e);
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
      rows.push_back(row);
    }
    out["matrix"] = rows;
  }
  return out;
}

json class_json(const ClassPoly& p) {
  json out = json::array();
  const auto& reps = p.on()->class_reps();
  for (size_t c = 0; c < reps.size(); ++c)
    out.push_back({{"rep", reps[c]}, {"element", element_json(*p.on()->group(), reps[c])},
                   {"poly", p.per_class()[c].to_text()}});
  return out;
}

std::string class_text(const ClassPoly& p) {
  std::string s;
  const auto& reps = p.on()->class_reps();
  for (size_t c = 0; c < reps.size(); ++c)
    s += (c ? "  " : "") + std::string("[") + std::to_string(reps[c]) + "] " + p.per_class()[c].to_text();
  return s;
}

std::string opt_string(const json& o, const char* key, const std::string& fallback) {
  if (!o.contains(key)) return fallback;
  if (!o.at(key).is_string()) throw InputError(std::string("option ") + key + " must be a string");
  return o.at(key).get<std::string>();
}

int opt_int(const json& o, const char* key, int fallback) {
  if (!o.contains(key)) return fallback;
  if (!o.at(key).is_number_integer()) throw InputError(std::string("option ") + key + " must be an integer");
  return o.at(key).get<int>();
}

bool use_file_kernel(const Document& d, const json& o) {
  const std::string k = opt_string(o, "kernel", "auto");
  if (k == "eulerian") return false;
  if (k == "file") return true;
  if (k == "auto") return d.body.contains("kernel");
  throw InputError("--kernel is eulerian or file");
}

// --equivariant: a group document given inline or by path.
std::optional<json> group_override(const json& o) {
  if (!o.contains("equivariant")) return std::nullopt;
  const json& g = o.at("equivariant");
  if (!g.is_string()) return g;
  Document d = load_document(g.get<std::string>());
  if (d.schema != Schema::Group) throw InputError("--equivariant needs a group document");
  return d.body;
}

Report start(const std::string& command, const Document& d) {
  Report r;
  r.data = {{"v", 1}, {"command", command}, {"document", d.name}, {"schema", schema_name(d.schema)}, {"ok", true}};
  return r;
}

void set_failed(Report& r) {
  r.status = std::max(r.status, static_cast<int>(kFailed));
  r.data["ok"] = false;
}

// Intervals selected by options: one pair, all, or (min, max) when both exist.
std::vector<std::pair<int, int>> select_intervals(const Poset& b, const json& o) {
  std::vector<std::pair<int, int>> out;
  if (o.contains("interval")) {
    const auto& iv = o.at("interval");
    if (!iv.is_array() || iv.size() != 2) throw InputError("--interval takes two elements");
    const int z = resolve(b, iv[0]), zp = resolve(b, iv[1]);
    if (!b.leq(z, zp)) throw InputError("the requested pair is not an interval");
    out.emplace_back(z, zp);
    return out;
  }
  auto lo = b.minimum(), hi = b.maximum();
  if (!o.value("all", false) && lo && hi) return {{*lo, *hi}};
  for (int z = 0; z < b.size(); ++z)
    for (int zp : b.up(z)) out.emplace_back(z, zp);
  return out;
}

// ---- check ----

struct CheckList {
  Report& r;
  void add(const std::string& name, bool ok, const std::string& detail, json witness = nullptr) {
    json e = {{"validator", name}, {"ok", ok}, {"detail", detail}};
    if (!witness.is_null()) e["witness"] = witness;
    r.data["results"].push_back(e);
    r.rows.push_back({name, ok ? "pass" : "fail", detail + (witness.is_null() ? "" : " " + witness.dump())});
    if (!ok) set_failed(r);
  }
  // Runs fn; a library error counts as a failed validator.
  bool run(const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
      return true;
    } catch (const Error& e) {
      if (status_of(e.code()) == kInputError) throw;
      add(name, false, std::string(error_code_name(e.code())) + ": " + e.what());
      return false;
    }
  }
};

void check_poset_like(CheckList& cl, const Poset& b, const std::vector<std::string>& checks) {
  for (const auto& c : checks) {
    if (c == "ranked") {
      cl.run(c, [&] {
        if (b.rank()) {
          auto rc = validate_rank(b);
          cl.add(c, rc.ok, rc.ok ? "attached rank is a rank function" : "attached rank fails on", rc.ok ? json() : pair_json(rc.violation));
        } else {
          natural_rank(b);
          cl.add(c, true, "ranked");
        }
      });
    } else if (c == "lower-eulerian" || c == "eulerian") {
      auto e = c == "eulerian" ? is_eulerian(b) : is_lower_eulerian(b);
      cl.add(c, e.ok, e.ok ? "ok" : e.reason, e.ok || e.witness.first < 0 ? json() : pair_json(e.witness));
    } else {
      throw InputError("unknown check \"" + c + "\"");
    }
  }
}

std::vector<std::string> requested_checks(const Document& d, const json& o, std::vector<std::string> fallback) {
  const json* src = o.contains("checks") ? &o.at("checks") : (d.body.contains("checks") ? &d.body.at("checks") : nullptr);
  if (!src) return fallback;
  std::vector<std::string> out;
  for (const auto& c : *src) out.push_back(c.get<std::string>());
  return out;
}

void equivariant_action_checks(CheckList& cl, const Group& g, const Poset& b) {
  auto e = is_eulerian_action(g, b);
  cl.add("eulerian-action", e.ok, e.ok ? "every fixed subposet is lower Eulerian" : e.reason,
         e.ok ? json() : json{{"element", e.element}, {"perm", g.perm(e.element)}});
}

Report cmd_check(const Document& d, const json& o) {
  Report r = start("check", d);
  r.data["results"] = json::array();
  CheckList cl{r};
  switch (d.schema) {
    case Schema::Poset: {
      Poset b = read_poset(d.body);
      check_poset_like(cl, b, requested_checks(d, o, {"ranked", "lower-eulerian"}));
      if (d.body.contains("group")) {
        auto g = read_perm_group(d.body.at("group"), b);
        auto a = validate_action(*g, b);
        cl.add("action", a.ok, a.ok ? "group of order " + std::to_string(g->order()) : a.reason);
        if (a.ok) equivariant_action_checks(cl, *g, b);
      }
      break;
    }
    case Schema::Triple: {
      std::optional<TripleData> td;
      if (!cl.run("triple", [&] { td = read_triple(d, use_file_kernel(d, o), group_override(o)); })) break;
      const auto& t = *td->triple;
      cl.add("triple", true, "lower Eulerian with admissible q = " + t.gamma().label(t.q()));
      auto split = triple_to_sfs(t);
      auto s = validate_sfs(split.sfs);
      cl.add("sfs", s.ok, s.ok ? "strong formal subdivision" : s.condition, s.ok ? json() : pair_json(s.witness));
      if (td->kernel) {
        auto k = validate_kernel(*td->kernel);
        cl.add("kernel", k.ok, k.ok ? "kernel" : k.reason, k.ok ? json() : pair_json(k.witness));
      } else {
        const auto& c = *td->equiv_kernel->carrier();
        auto a = validate_action(c.group(), t.gamma(), t.rho(), t.q());
        cl.add("action", a.ok, a.ok ? "group of order " + std::to_string(c.group().order()) : a.reason,
               a.ok ? json() : json{{"element", a.element}});
        if (!a.ok) break;
        equivariant_action_checks(cl, c.group(), t.gamma());
        auto k = equiv_kernel_validate(*td->equiv_kernel);
        cl.add("kernel", k.ok, k.ok ? "equivariant kernel" : k.reason,
               k.ok ? json() : json{{"element", k.element}, {"interval", pair_json(k.witness)}});
      }
      break;
    }
    case Schema::Sfs: {
      StrongFormalSubdivision s = read_sfs(d.body);
      check_poset_like(cl, s.X, {"lower-eulerian"});
      check_poset_like(cl, s.Y, {"lower-eulerian"});
      cl.run("sfs", [&] {
        auto v = validate_sfs(s);
        cl.add("sfs", v.ok, v.ok ? "strong formal subdivision" : v.condition, v.ok ? json() : pair_json(v.witness));
      });
      break;
    }
    case Schema::Fan: {
      std::optional<FanData> f;
      if (!cl.run("fan", [&] { f = read_fan(d); })) break;
      cl.add("fan", true, std::to_string(f->fan.cones.size()) + " cones, group of order " + std::to_string(f->group->order()));
      equivariant_action_checks(cl, *f->group, f->fan.face_poset);
      auto k = equiv_kernel_validate(f->kernel);
      cl.add("kernel", k.ok, k.ok ? "fan kernel" : k.reason);
      break;
    }
    case Schema::Complex: {
      std::optional<LatticeComplex> c;
      if (!cl.run("complex", [&] { c = read_complex(d); })) break;
      cl.add("complex", true, std::to_string(c->fine.size()) + " fine faces, group of order " + std::to_string(c->group->order()));
      const int M = opt_int(o, "M", default_truncation(c->dim));
      cl.run("polynomial-action", [&] {
        auto p = polynomial_action_check(*c, M);
        cl.add("polynomial-action", p.ok, p.ok ? "h* assembled = counted to order " + std::to_string(M) : p.detail);
      });
      break;
    }
    case Schema::Group: {
      std::vector<Perm> gens;
      int n = -1;
      for (const auto& g : d.body.at("generators")) {
        gens.push_back(g.get<Perm>());
        if (n >= 0 && static_cast<int>(gens.back().size()) != n) throw InputError("generators have different degrees");
        n = static_cast<int>(gens.back().size());
      }
      cl.run("group", [&] {
        auto g = Group::generate(std::max(n, 0), gens);
        cl.add("group", true, "order " + std::to_string(g->order()));
      });
      break;
    }
  }
  return r;
}

// ---- kls ----

Report cmd_kls(const Document& d, const json& o) {
  Report r = start("kls", d);
  const std::string what = opt_string(o, "what", "g");
  if (what != "f" && what != "g" && what != "z" && what != "h" && what != "toric-h")
    throw InputError("--what is f, g, z, h or toric-h");
  r.data["what"] = what;
  std::optional<IncidenceElement> kappa;
  std::optional<EquivElement> ekappa;
  std::optional<Poset> whole;
  switch (d.schema) {
    case Schema::Poset: {
      Poset b = read_poset(d.body);
      whole = b;
      auto rank = WeakRank::natural(std::make_shared<const Poset>(b));
      auto k = read_kernel(d.body, rank, use_file_kernel(d, o));
      if (d.body.contains("group")) {
        auto c = std::make_shared<const EquivCarrier>(read_perm_group(d.body.at("group"), b), rank);
        ekappa = EquivElement::from_function(c, [&](int z, int zp, int) { return k(z, zp); });
      } else {
        kappa = k;
      }
      break;
    }
    case Schema::Triple: {
      auto td = read_triple(d, use_file_kernel(d, o), group_override(o));
      whole = td.triple->gamma();
      kappa = td.kernel;
      ekappa = td.equiv_kernel;
      break;
    }
    case Schema::Fan: {
      auto f = read_fan(d);
      ekappa = f.kernel;
      break;
    }
    case Schema::Complex: {
      auto c = read_complex(d);
      ekappa = c.kappa;
      break;
    }
    default:
      throw InputError(std::string("kls does not apply to ") + schema_name(d.schema) + " documents");
  }
  if (what == "h" || what == "toric-h") {
    if (!whole) throw InputError("--what " + what + " needs a poset or triple document");
    Poly v = what == "h" ? h_polynomial(*whole) : toric_h_boundary(*whole);
    r.data["value"] = v.to_text();
    r.rows.push_back({what, v.to_text()});
    return r;
  }
  r.data["intervals"] = json::array();
  if (ekappa) {
    auto e = equiv_kernel_validate(*ekappa);
    if (!e.ok) fail(ErrorCode::VerificationFailed, "not an equivariant kernel at element " + std::to_string(e.element) + ": " + e.reason);
    EquivElement g = equiv_solve_g(*ekappa), f = equiv_solve_f(*ekappa);
    EquivElement val = what == "g" ? g : what == "f" ? f : equiv_z(*ekappa);
    const Poset& b = ekappa->poset();
    for (auto [z, zp] : select_intervals(b, o)) {
      r.data["intervals"].push_back({{"z", b.label(z)}, {"zp", b.label(zp)}, {"classes", class_json(val(z, zp))}});
      r.rows.push_back({b.label(z), b.label(zp), class_text(val(z, zp))});
    }
  } else {
    IncidenceElement val = what == "g" ? solve_g(*kappa) : what == "f" ? solve_f(*kappa) : z_function(*kappa);
    const Poset& b = kappa->poset();
    for (auto [z, zp] : select_intervals(b, o)) {
      r.data["intervals"].push_back({{"z", b.label(z)}, {"zp", b.label(zp)}, {"poly", val(z, zp).to_text()}});
      r.rows.push_back({b.label(z), b.label(zp), val(z, zp).to_text()});
    }
  }
  return r;
}

// ---- local ----

void relative_g_report(Report& r, const Document& d, const json& o) {
  Poset b = read_poset(d.body);
  const int F = resolve(b, o.at("relative_g"));
  auto e = is_eulerian(b);
  if (!e.ok) fail(ErrorCode::NotLowerEulerian, "relative g needs a face lattice: " + e.reason);
  const int top = *b.maximum(), bottom = *b.minimum();
  Poly rec = relative_g_recursion(b, F);
  SubdivisionTriple t(b, natural_rank(b), F);
  auto rank = natural_weak_rank(t);
  auto li = local_invariants(t, rank, eulerian_kernel(rank));
  Poly dl = li.delta_ell(bottom, top);
  r.data["relative_g"] = rec.to_text();
  r.data["delta_ell"] = dl.to_text();
  r.rows.push_back({"g(Q,F) recursion", rec.to_text()});
  r.rows.push_back({"delta ell", dl.to_text()});
  if (rec != dl) set_failed(r);
  const auto& rk = *b.rank();
  if (rk[static_cast<size_t>(F)] == rk[static_cast<size_t>(top)] - 1) {
    auto g = solve_g(eulerian_kernel(WeakRank::natural(std::make_shared<const Poset>(b))));
    Poly diff = g(bottom, top) - g(bottom, F);
    r.data["g_Q_minus_g_F"] = diff.to_text();
    r.rows.push_back({"g(Q) - g(F)", diff.to_text()});
    if (diff != rec) set_failed(r);
  }
}

Report cmd_local(const Document& d, const json& o) {
  Report r = start("local", d);
  if (o.contains("relative_g")) {
    if (d.schema != Schema::Poset) throw InputError("--relative-g needs a poset document");
    relative_g_report(r, d, o);
    return r;
  }
  std::optional<SubdivisionTriple> t;
  std::optional<EquivElement> ekappa;
  std::optional<IncidenceElement> kappa;
  WeakRankPtr rank;
  if (d.schema == Schema::Triple) {
    auto td = read_triple(d, use_file_kernel(d, o), group_override(o));
    t = td.triple;
    kappa = td.kernel;
    ekappa = td.equiv_kernel;
    rank = td.rank;
  } else if (d.schema == Schema::Complex) {
    auto c = read_complex(d);
    t = c.geometry.triple;
    ekappa = c.kappa;
  } else {
    throw InputError("local needs a triple or complex document");
  }
  const Poset& b = t->gamma();
  auto lo = b.minimum(), hi = b.maximum();
  r.data["intervals"] = json::array();
  auto emit = [&](const std::string& key, int z, int zp, const json& value, const std::string& text) {
    r.rows.push_back({key, b.label(z), b.label(zp), text});
    if (lo && hi && z == *lo && zp == *hi) r.data["gamma"][key] = value;
  };
  if (ekappa) {
    const Group& g = ekappa->carrier()->group();
    auto a = is_eulerian_action(g, b);
    if (!a.ok) fail(ErrorCode::NotLowerEulerian, "action is not Eulerian at element " + std::to_string(a.element) + ": " + a.reason);
    auto li = equiv_local_invariants(*t, *ekappa);
    for (int x : t->X())
      for (int y : t->Y()) {
        if (!b.leq(x, y)) continue;
        r.data["intervals"].push_back({{"z", b.label(x)}, {"zp", b.label(y)}, {"h", class_json(li.h(x, y))},
                                       {"ell", class_json(li.ell(x, y))}, {"delta_ell", class_json(li.delta_ell(x, y))}});
        emit("h", x, y, class_json(li.h(x, y)), class_text(li.h(x, y)));
        emit("ell", x, y, class_json(li.ell(x, y)), class_text(li.ell(x, y)));
        emit("delta_ell", x, y, class_json(li.delta_ell(x, y)), class_text(li.delta_ell(x, y)));
      }
  } else {
    auto li = local_invariants(*t, rank, *kappa);
    for (int x : t->X())
      for (int y : t->Y()) {
        if (!b.leq(x, y)) continue;
        r.data["intervals"].push_back({{"z", b.label(x)}, {"zp", b.label(y)}, {"h", li.h(x, y).to_text()},
                                       {"ell", li.ell(x, y).to_text()}, {"delta_ell", li.delta_ell(x, y).to_text()}});
        emit("h", x, y, li.h(x, y).to_text(), li.h(x, y).to_text());
        emit("ell", x, y, li.ell(x, y).to_text(), li.ell(x, y).to_text());
        emit("delta_ell", x, y, li.delta_ell(x, y).to_text(), li.delta_ell(x, y).to_text());
      }
  }
  return r;
}

// ---- verify ----

struct SuiteList {
  Report& r;
  void add(const std::string& suite, const Check& c) { add(suite, c.ok, c.what, c.ok ? json() : pair_json(c.witness)); }
  void add(const std::string& suite, bool ok, const std::string& detail, json witness = nullptr) {
    json e = {{"suite", suite}, {"ok", ok}, {"detail", detail}};
    if (!witness.is_null()) e["witness"] = witness;
    r.data["results"].push_back(e);
    r.rows.push_back({suite, ok ? "pass" : "fail", detail + (witness.is_null() ? "" : " " + witness.dump())});
    if (!ok) set_failed(r);
  }
  void run(const std::string& suite, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (status_of(e.code()) == kInputError) throw;
      add(suite, false, std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }
};

std::vector<std::string> suites_for(Schema s, bool equivariant) {
  switch (s) {
    case Schema::Triple:
      if (equivariant) return {"equivariant"};
      return {"theorem-g", "corollary-f", "corollary-z", "products"};
    case Schema::Sfs: return {"products", "composition"};
    case Schema::Poset: return equivariant ? std::vector<std::string>{"equivariant"} : std::vector<std::string>{"products"};
    case Schema::Fan: return {"equivariant"};
    case Schema::Complex: return {"equivariant", "ehrhart-reciprocity"};
    default: return {};
  }
}

void verify_equivariant(SuiteList& sl, const Group& g, const Poset& b, const std::function<void()>& body) {
  auto a = is_eulerian_action(g, b);
  if (!a.ok) {
    json w = {{"element", a.element}, {"perm", g.perm(a.element)}};
    sl.r.data["refused"] = true;
    sl.add("equivariant", false, "refused: the action is not Eulerian (" + a.reason + ")", w);
    return;
  }
  body();
}

void verify_complex_ehrhart(SuiteList& sl, const LatticeComplex& c, int M) {
  const auto& whole = c.kappa.carrier()->stab(0, c.coarse_index(c.top()));
  auto h = hstar_from_subdivision(c);
  for (int u : whole->class_reps()) {
    auto s = reciprocity_check(c, u, M, h.ev(u));
    sl.add("ehrhart-reciprocity", s.ok, "reciprocity at element " + std::to_string(u) + " to order " + std::to_string(M) +
                                            (s.ok ? "" : ": " + s.detail));
  }
  auto p = polynomial_action_check(c, M);
  sl.add("ehrhart-reciprocity", p.ok, p.ok ? "assembled h* = counted series times det" : p.detail);
  sl.add("ehrhart-reciprocity", check_hstar_identity(c));
  const bool same = hstar_via_localh(c) == h;
  sl.add("ehrhart-reciprocity", same, "h* from the subdivision = h* via local h");
}

Report cmd_verify(const Document& d, const json& o) {
  Report r = start("verify", d);
  r.data["results"] = json::array();
  SuiteList sl{r};
  const std::string suite = opt_string(o, "suite", "all");
  static const std::vector<std::string> known = {"theorem-g", "corollary-f", "corollary-z", "composition", "products",
                                                 "equivariant", "ehrhart-reciprocity", "all"};
  if (std::find(known.begin(), known.end(), suite) == known.end()) throw InputError("unknown suite \"" + suite + "\"");
  r.data["suite"] = suite;
  const bool has_group = d.body.contains("group") || o.contains("equivariant");
  std::vector<std::string> suites = suite == "all" ? suites_for(d.schema, has_group || d.schema == Schema::Fan)
                                                   : std::vector<std::string>{suite};
  auto not_applicable = [&](const std::string& s) {
    throw InputError("suite " + s + " does not apply to " + std::string(schema_name(d.schema)) + " documents");
  };
  for (const auto& s : suites) {
    if (s == "theorem-g" || s == "corollary-f" || s == "corollary-z") {
      if (d.schema != Schema::Triple) not_applicable(s);
      sl.run(s, [&] {
        auto td = read_triple(d, use_file_kernel(d, o), std::nullopt);
        if (!td.kernel) fail(ErrorCode::InvalidInput, "use --suite equivariant for documents with a group or geometry");
        if (s == "theorem-g") sl.add(s, check_theorem_g(*td.triple, td.rank, *td.kernel));
        if (s == "corollary-f") sl.add(s, check_corollary_f(*td.triple, td.rank, *td.kernel));
        if (s == "corollary-z") sl.add(s, check_corollary_z(*td.triple, td.rank, *td.kernel));
      });
    } else if (s == "composition") {
      if (d.schema != Schema::Sfs) not_applicable(s);
      if (!d.body.contains("then")) {
        if (suite != "all") throw InputError("composition needs a \"then\" field");
        continue;
      }
      sl.run(s, [&] {
        StrongFormalSubdivision sigma = read_sfs(d.body);
        json second = d.body.at("then");
        second["X"] = d.body.at("Y");
        sl.add(s, check_composition(sigma, read_sfs(second)));
      });
    } else if (s == "products") {
      sl.run(s, [&] {
        if (d.schema == Schema::Poset) {
          Poset a = read_poset(d.body), b = d.body.contains("times") ? read_poset(d.body.at("times")) : a;
          const bool ok = h_polynomial(direct_product(a, b)) == h_polynomial(a) * h_polynomial(b);
          sl.add(s, ok, "h(B x B') = h(B) h(B')");
        } else if (d.schema == Schema::Sfs || d.schema == Schema::Triple) {
          StrongFormalSubdivision a = d.schema == Schema::Sfs ? read_sfs(d.body)
                                                              : triple_to_sfs(*read_triple(d, false, std::nullopt).triple).sfs;
          StrongFormalSubdivision b = d.body.contains("times") ? read_sfs(d.body.at("times")) : a;
          sl.add(s, check_product_sfs(a, b));
        } else {
          not_applicable(s);
        }
      });
    } else if (s == "equivariant") {
      sl.run(s, [&] {
        if (d.schema == Schema::Triple) {
          auto td = read_triple(d, use_file_kernel(d, o), group_override(o));
          if (!td.equiv_kernel) fail(ErrorCode::InvalidInput, "no group: use the theorem suites");
          verify_equivariant(sl, td.equiv_kernel->carrier()->group(), td.triple->gamma(),
                             [&] { sl.add(s, check_equivariant_theorem(*td.triple, *td.equiv_kernel)); });
        } else if (d.schema == Schema::Poset) {
          Poset b = read_poset(d.body);
          if (!d.body.contains("group")) fail(ErrorCode::InvalidInput, "no group in the document");
          auto g = read_perm_group(d.body.at("group"), b);
          verify_equivariant(sl, *g, b, [&] {
            auto rank = WeakRank::natural(std::make_shared<const Poset>(b));
            auto c = std::make_shared<const EquivCarrier>(g, rank);
            auto k = read_kernel(d.body, rank, use_file_kernel(d, o));
            auto kappa = EquivElement::from_function(c, [&](int z, int zp, int) { return k(z, zp); });
            auto e = equiv_kernel_validate(kappa);
            if (!e.ok) {
              sl.add(s, false, "not an equivariant kernel at element " + std::to_string(e.element) + ": " + e.reason, pair_json(e.witness));
              return;
            }
            sl.add(s, check_equiv_solution(kappa, equiv_solve_g(kappa), equiv_solve_f(kappa)));
          });
        } else if (d.schema == Schema::Fan) {
          auto f = read_fan(d);
          verify_equivariant(sl, *f.group, f.fan.face_poset,
                             [&] { sl.add(s, check_equiv_solution(f.kernel, equiv_solve_g(f.kernel), equiv_solve_f(f.kernel))); });
        } else if (d.schema == Schema::Complex) {
          auto c = read_complex(d);
          verify_equivariant(sl, *c.group, c.geometry.triple.gamma(),
                             [&] { sl.add(s, check_equivariant_theorem(c.geometry.triple, c.kappa)); });
        } else {
          not_applicable(s);
        }
      });
    } else if (s == "ehrhart-reciprocity") {
      if (d.schema != Schema::Complex) not_applicable(s);
      sl.run(s, [&] {
        auto c = read_complex(d);
        verify_complex_ehrhart(sl, c, opt_int(o, "M", default_truncation(c.dim)));
      });
    }
  }
  return r;
}

// ---- ehrhart ----

Report cmd_ehrhart(const Document& d, const json& o) {
  Report r = start("ehrhart", d);
  if (d.schema != Schema::Complex) throw InputError("ehrhart needs a complex document");
  const std::string what = opt_string(o, "what", "hstar");
  r.data["what"] = what;
  auto c = read_complex(d);
  const int M = opt_int(o, "M", default_truncation(c.dim));
  if (M < 0) throw InputError("M must be nonnegative");
  const auto& whole = c.kappa.carrier()->stab(0, c.coarse_index(c.top()));
  if (what == "hstar" || what == "local-hstar") {
    ClassPoly v = what == "hstar" ? hstar_from_subdivision(c) : localhstar_via_localh(c);
    r.data["classes"] = class_json(v);
    for (size_t k = 0; k < v.per_class().size(); ++k)
      r.rows.push_back({"[" + std::to_string(whole->class_reps()[k]) + "]", v.per_class()[k].to_text()});
    // second route: via local h for h*, via the faces of P for l* when the coarse faces form face(P)
    ClassPoly w = v;
    if (what == "hstar")
      w = hstar_via_localh(c);
    else if (is_eulerian(c.geometry.target.face_poset).ok)
      w = localhstar_from_faces(c);
    const bool agree = w == v;
    r.data["routes_agree"] = agree;
    if (!agree) {
      set_failed(r);
      r.rows.push_back({"second route", class_text(w)});
    }
  } else if (what == "series") {
    r.data["M"] = M;
    r.data["classes"] = json::array();
    for (int u : whole->class_reps()) {
      Poly e = ehr_series(c, c.top(), u, M), i = ehr_series(c, c.top(), u, M, true);
      r.data["classes"].push_back({{"rep", u}, {"element", element_json(*whole->group(), u)}, {"ehr", e.to_text()}, {"interior", i.to_text()}});
      r.rows.push_back({"[" + std::to_string(u) + "]", e.to_text(), i.to_text()});
    }
  } else if (what == "reciprocity") {
    r.data["M"] = M;
    r.data["classes"] = json::array();
    for (int u : whole->class_reps()) {
      auto s = reciprocity_check(c, u, M);
      r.data["classes"].push_back({{"rep", u}, {"element", element_json(*whole->group(), u)}, {"ok", s.ok}, {"order", s.order}, {"detail", s.detail}});
      r.rows.push_back({"[" + std::to_string(u) + "]", s.ok ? "pass" : "fail", s.detail});
      if (!s.ok) set_failed(r);
    }
  } else {
    throw InputError("--what is hstar, local-hstar, series or reciprocity");
  }
  return r;
}

// Partial match: objects by key subset, arrays elementwise with equal length, scalars by equality.
bool matches(const json& actual, const json& expected, std::string& where) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (const auto& [k, v] : expected.items()) {
      if (!actual.contains(k) || !matches(actual.at(k), v, where)) {
        where = k + (where.empty() ? "" : "." + where);
        return false;
      }
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (size_t i = 0; i < expected.size(); ++i)
      if (!matches(actual[i], expected[i], where)) {
        where = "[" + std::to_string(i) + "]" + (where.empty() ? "" : "." + where);
        return false;
      }
    return true;
  }
  return actual == expected;
}

}  // namespace

Report run_command(const std::string& command, const Document& doc, const json& options) {
  try {
    if (command == "check") return cmd_check(doc, options);
    if (command == "kls") return cmd_kls(doc, options);
    if (command == "local") return cmd_local(doc, options);
    if (command == "verify") return cmd_verify(doc, options);
    if (command == "ehrhart") return cmd_ehrhart(doc, options);
    throw InputError("unknown command \"" + command + "\"");
  } catch (const std::exception& e) {
    Report r = start(command, doc);
    r.data["ok"] = false;
    std::string code = "InvalidInput";
    r.status = kInputError;
    if (auto* ke = dynamic_cast<const Error*>(&e)) {
      r.status = status_of(ke->code());
      code = error_code_name(ke->code());
    } else if (!dynamic_cast<const InputError*>(&e) && !dynamic_cast<const json::exception*>(&e)) {
      code = "Internal";
      r.status = kFailed;
    }
    r.data["error"] = {{"code", code}, {"message", e.what()}};
    r.rows = {{"error", code, e.what()}};
    return r;
  }
}

Report verify_directory(const std::string& dir, const json& options) {
  namespace fs = std::filesystem;
  Report r;
  r.data = {{"v", 1}, {"command", "verify"}, {"suite", "all"}, {"directory", dir}, {"ok", true}, {"results", json::array()}};
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.path().extension() == ".json") files.push_back(e.path());
  if (ec) {
    r.status = kInputError;
    r.data["ok"] = false;
    r.data["error"] = {{"code", "InvalidInput"}, {"message", "cannot list " + dir}};
    r.rows = {{"error", "InvalidInput", "cannot list " + dir}};
    return r;
  }
  std::sort(files.begin(), files.end());
  auto record = [&](const std::string& file, const std::string& what, bool ok, const std::string& detail) {
    r.data["results"].push_back({{"file", file}, {"check", what}, {"ok", ok}, {"detail", detail}});
    r.rows.push_back({file, what, ok ? "pass" : "fail", detail});
    if (!ok) {
      r.status = kFailed;
      r.data["ok"] = false;
    }
  };
  for (const auto& path : files) {
    const std::string file = path.filename().string();
    Document d;
    try {
      d = load_document(path.string());
    } catch (const std::exception& e) {
      record(file, "load", false, e.what());
      continue;
    }
    if (!d.body.contains("expect")) {
      Report v = run_command("verify", d, options);
      record(file, "verify all", v.status == kOk, v.status == kOk ? "" : v.data.dump());
      continue;
    }
    int k = 0;
    for (const auto& ex : d.body.at("expect")) {
      const std::string cmd = ex.value("command", "verify");
      json opts = ex.value("options", json::object());
      const std::string label = cmd + " #" + std::to_string(k++) + (opts.empty() ? "" : " " + opts.dump());
      Report got = run_command(cmd, d, opts);
      const int want_status = ex.value("status", 0);
      std::string where;
      if (got.status != want_status) {
        record(file, label, false, "status " + std::to_string(got.status) + ", expected " + std::to_string(want_status) + ": " + got.data.dump());
      } else if (ex.contains("match") && !matches(got.data, ex.at("match"), where)) {
        record(file, label, false, "mismatch at " + where + ": " + got.data.dump());
      } else {
        record(file, label, true, "");
      }
    }
  }
  return r;
}

std::string render(const Report& r, bool as_json) {
  if (as_json) return r.data.dump() + "\n";
  std::vector<size_t> width;
  for (const auto& row : r.rows)
    for (size_t i = 0; i + 1 < row.size(); ++i) {
      if (width.size() <= i) width.resize(i + 1, 0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::string out;
  for (const auto& row : r.rows) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace kls::io
