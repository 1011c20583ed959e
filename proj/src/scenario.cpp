#include "zdlab/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace zdlab {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

struct Ctx {
  std::vector<SchemaError> errors;

  void fail(const std::string& code, const YAML::Node& at, const std::string& msg) {
    errors.push_back({code, line_of(at), msg});
  }
  void fail(const std::string& code, int line, const std::string& msg) { errors.push_back({code, line, msg}); }
};

std::string format_errors(const std::vector<SchemaError>& errors) {
  std::ostringstream os;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) os << '\n';
    os << errors[i].code << " (line " << errors[i].line << "): " << errors[i].message;
  }
  return os.str();
}

std::optional<Rational> as_rational(Ctx& ctx, const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) {
    ctx.fail("BAD_VALUE", n, what + ": expected a rational");
    return std::nullopt;
  }
  try {
    return parse_rational(n.Scalar());
  } catch (const std::exception&) {
    ctx.fail("BAD_VALUE", n, what + ": malformed rational '" + n.Scalar() + "'");
    return std::nullopt;
  }
}

std::optional<unsigned long long> as_count(Ctx& ctx, const YAML::Node& n, const std::string& what) {
  if (n.IsScalar()) {
    const std::string& s = n.Scalar();
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos && s.size() < 19) {
      return std::stoull(s);
    }
  }
  ctx.fail("BAD_VALUE", n, what + ": expected a nonnegative integer");
  return std::nullopt;
}

// A tail given as {kind, params} or as the shorthand "kind(p1, p2)".
struct TailText {
  std::string kind;
  std::vector<YAML::Node> params;
  int line = 0;
};

std::optional<TailText> read_tail(Ctx& ctx, const YAML::Node& n, const std::string& what) {
  TailText t;
  t.line = line_of(n);
  if (n.IsScalar()) {
    static const std::regex shorthand(R"(^\s*([A-Za-z_]+)\s*(?:\((.*)\))?\s*$)");
    std::smatch m;
    const std::string s = n.Scalar();
    if (!std::regex_match(s, m, shorthand)) {
      ctx.fail("BAD_VALUE", n, what + ": malformed tail '" + s + "'");
      return std::nullopt;
    }
    t.kind = m[1];
    std::stringstream ss(m[2]);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) continue;
      YAML::Node v(item.substr(b, e - b + 1));
      t.params.push_back(v);
    }
    return t;
  }
  if (!n.IsMap() || !n["kind"]) {
    ctx.fail("MISSING_FIELD", n, what + ": tail needs a kind");
    return std::nullopt;
  }
  t.kind = n["kind"].as<std::string>();
  if (const auto ps = n["params"]) {
    if (!ps.IsSequence()) {
      ctx.fail("BAD_VALUE", ps, what + ": params must be a list");
      return std::nullopt;
    }
    for (const auto& p : ps) t.params.push_back(p);
  }
  return t;
}

bool arity(Ctx& ctx, const TailText& t, std::size_t lo, std::size_t hi, const std::string& what) {
  if (t.params.size() < lo || t.params.size() > hi) {
    ctx.fail("BAD_VALUE", t.line,
             what + ": tail '" + t.kind + "' takes " + std::to_string(lo) +
                 (hi != lo ? "-" + std::to_string(hi) : "") + " parameters");
    return false;
  }
  return true;
}

// Accepts the full map form, or a bare tail (shorthand string or {kind, params}).
YAML::Node tail_node(const YAML::Node& n) {
  if (n.IsScalar()) return n;
  if (n.IsMap() && n["tail"]) return n["tail"];
  return n;
}

std::optional<Index> default_tail_start(Ctx& ctx, const YAML::Node& n, const std::string& what, Index max_key) {
  if (n.IsMap() && n["tail_start"]) {
    auto v = as_count(ctx, n["tail_start"], what + ".tail_start");
    if (!v) return std::nullopt;
    return *v;
  }
  return max_key + 1;
}

std::optional<SelfMap> read_selfmap(Ctx& ctx, const YAML::Node& n) {
  const std::string what = "phi";
  std::map<Index, Index> exc;
  Index max_key = 0;
  bool ok = true;
  if (n.IsMap() && n["exceptions"]) {
    for (const auto& kv : n["exceptions"]) {
      auto k = as_count(ctx, kv.first, what + ".exceptions key");
      auto v = as_count(ctx, kv.second, what + ".exceptions value");
      if (!k || !v) {
        ok = false;
        continue;
      }
      exc[*k] = *v;
      max_key = std::max<Index>(max_key, *k);
    }
  }
  auto ts = default_tail_start(ctx, n, what, max_key);
  auto t = read_tail(ctx, tail_node(n), what);
  if (!ts || !t || !ok) return std::nullopt;
  MapTail tail;
  std::vector<Index> ps;
  for (const auto& p : t->params) {
    auto v = as_count(ctx, p, what + " parameter");
    if (!v) return std::nullopt;
    ps.push_back(*v);
  }
  if (t->kind == "shift") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    tail = ShiftTail{ps[0]};
  } else if (t->kind == "block") {
    if (!arity(ctx, *t, 1, 2, what)) return std::nullopt;
    tail = BlockTail{ps[0], ps.size() > 1 ? ps[1] : 0};
  } else if (t->kind == "power") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    tail = PowerTail{static_cast<unsigned>(ps[0])};
  } else if (t->kind == "const") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    tail = ConstTail{ps[0]};
  } else {
    ctx.fail("UNKNOWN_TAIL_KIND", t->line, what + ": unknown tail kind '" + t->kind + "'");
    return std::nullopt;
  }
  try {
    return SelfMap(std::move(exc), *ts, tail);
  } catch (const std::exception& e) {
    ctx.fail("BAD_SYMBOL", n, what + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<WeightSeq> read_weight(Ctx& ctx, const YAML::Node& n, const std::string& what) {
  std::map<Index, Rational> exc;
  Index max_key = 0;
  bool ok = true;
  if (n.IsMap() && n["exceptions"]) {
    for (const auto& kv : n["exceptions"]) {
      auto k = as_count(ctx, kv.first, what + ".exceptions key");
      auto v = as_rational(ctx, kv.second, what + ".exceptions value");
      if (!k || !v) {
        ok = false;
        continue;
      }
      exc[*k] = *v;
      max_key = std::max<Index>(max_key, *k);
    }
  }
  auto ts = default_tail_start(ctx, n, what, max_key);
  auto t = read_tail(ctx, tail_node(n), what);
  if (!ts || !t || !ok) return std::nullopt;
  std::vector<Rational> ps;
  for (const auto& p : t->params) {
    auto v = as_rational(ctx, p, what + " parameter");
    if (!v) return std::nullopt;
    ps.push_back(*v);
  }
  WeightTail tail;
  if (t->kind == "const") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    tail = ConstWeight{ps[0]};
  } else if (t->kind == "c_plus_inv") {
    if (!arity(ctx, *t, 2, 2, what)) return std::nullopt;
    tail = ShiftedInverseWeight{ps[0], ps[1]};
  } else if (t->kind == "inv") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    tail = InverseWeight{ps[0]};
  } else if (t->kind == "geom") {
    if (!arity(ctx, *t, 2, 2, what)) return std::nullopt;
    tail = GeometricWeight{ps[0], ps[1]};
  } else {
    ctx.fail("UNKNOWN_TAIL_KIND", t->line, what + ": unknown tail kind '" + t->kind + "'");
    return std::nullopt;
  }
  try {
    return WeightSeq(std::move(exc), *ts, tail);
  } catch (const std::exception& e) {
    ctx.fail("BAD_SYMBOL", n, what + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<GridFunction> read_grid_function(Ctx& ctx, const YAML::Node& n, const Scenario& s) {
  const std::string what = "h";
  if (n.IsMap() && n["samples"]) {
    RationalVector v;
    for (const auto& x : n["samples"]) {
      auto q = as_rational(ctx, x, what + ".samples");
      if (!q) return std::nullopt;
      v.push_back(*q);
    }
    if (v.size() != s.grid) {
      ctx.fail("BAD_VALUE", n["samples"], what + ": expected " + std::to_string(s.grid) + " samples");
      return std::nullopt;
    }
    return GridFunction(s.a, s.b, std::move(v));
  }
  auto t = read_tail(ctx, n, what);
  if (!t) return std::nullopt;
  GridTag tag;
  if (t->kind == "affine") {
    if (!arity(ctx, *t, 2, 2, what)) return std::nullopt;
    auto m = as_rational(ctx, t->params[0], what);
    auto c = as_rational(ctx, t->params[1], what);
    if (!m || !c) return std::nullopt;
    tag = AffineTag{*m, *c};
  } else if (t->kind == "monomial") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    auto k = as_count(ctx, t->params[0], what);
    if (!k) return std::nullopt;
    tag = MonomialTag{static_cast<unsigned>(*k)};
  } else if (t->kind == "const") {
    if (!arity(ctx, *t, 1, 1, what)) return std::nullopt;
    auto c = as_rational(ctx, t->params[0], what);
    if (!c) return std::nullopt;
    tag = ConstTag{*c};
  } else {
    ctx.fail("UNKNOWN_TAIL_KIND", t->line, what + ": unknown function kind '" + t->kind + "'");
    return std::nullopt;
  }
  return GridFunction::sample(s.a, s.b, s.grid, tag);
}

std::optional<SimpleFunction> read_simple(Ctx& ctx, const YAML::Node& n, const AtomicMeasureSpace& sp,
                                          const std::string& what) {
  const YAML::Node vals = n.IsMap() && n["values"] ? n["values"] : n;
  if (!vals.IsMap()) {
    ctx.fail("BAD_VALUE", n, what + ": expected a map from atom id to value");
    return std::nullopt;
  }
  RationalVector v(sp.size());
  std::vector<bool> seen(sp.size(), false);
  bool ok = true;
  for (const auto& kv : vals) {
    const std::string id = kv.first.as<std::string>();
    std::size_t i = 0;
    try {
      i = sp.index_of(id);
    } catch (const std::exception&) {
      ctx.fail("BAD_VALUE", kv.first, what + ": unknown atom '" + id + "'");
      ok = false;
      continue;
    }
    auto q = as_rational(ctx, kv.second, what);
    if (!q) {
      ok = false;
      continue;
    }
    v[i] = *q;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (!seen[i]) {
      ctx.fail("MISSING_FIELD", n, what + ": no value for atom '" + sp.atoms()[i].id + "'");
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return SimpleFunction(sp, std::move(v));
}

std::optional<AtomMap> read_atom_map(Ctx& ctx, const YAML::Node& n, const AtomicMeasureSpace& sp) {
  const YAML::Node img = n.IsMap() && n["image"] ? n["image"] : n;
  if (!img.IsMap()) {
    ctx.fail("BAD_VALUE", n, "phi: expected a map from atom id to atom id");
    return std::nullopt;
  }
  std::vector<std::size_t> image(sp.size(), 0);
  std::vector<bool> seen(sp.size(), false);
  bool ok = true;
  for (const auto& kv : img) {
    try {
      const std::size_t from = sp.index_of(kv.first.as<std::string>());
      image[from] = sp.index_of(kv.second.as<std::string>());
      seen[from] = true;
    } catch (const std::exception& e) {
      ctx.fail("BAD_VALUE", kv.first, std::string("phi: ") + e.what());
      ok = false;
    }
  }
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (!seen[i]) {
      ctx.fail("MISSING_FIELD", n, "phi: no image for atom '" + sp.atoms()[i].id + "'");
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return AtomMap(sp, std::move(image));
}

void read_space(Ctx& ctx, const YAML::Node& n, Scenario& s) {
  if (!n) {
    ctx.fail("MISSING_FIELD", 0, "space is required");
    return;
  }
  const std::string kind = n.IsScalar() ? n.Scalar() : (n["kind"] ? n["kind"].as<std::string>() : "");
  if (kind == "lp") {
    s.space = SpaceKind::Lp;
    if (n.IsMap() && n["p"]) {
      try {
        s.p = Exponent::parse(n["p"].as<std::string>());
      } catch (const std::exception& e) {
        ctx.fail("BAD_VALUE", n["p"], e.what());
      }
    }
  } else if (kind == "cx") {
    s.space = SpaceKind::Cx;
    s.p = Exponent::infinity();
    if (n.IsMap()) {
      if (n["a"])
        if (auto v = as_rational(ctx, n["a"], "space.a")) s.a = *v;
      if (n["b"])
        if (auto v = as_rational(ctx, n["b"], "space.b")) s.b = *v;
      if (n["grid"])
        if (auto v = as_count(ctx, n["grid"], "space.grid")) s.grid = *v;
    }
    if (!(s.a < s.b)) ctx.fail("BAD_VALUE", n, "space: need a < b");
    if (s.grid < 3 || s.grid > 1'000'001) ctx.fail("PARAM_RANGE", n, "space.grid must be in [3, 1000001]");
  } else if (kind == "atomic") {
    s.space = SpaceKind::Atomic;
    if (n.IsMap() && n["p"]) {
      try {
        s.p = Exponent::parse(n["p"].as<std::string>());
      } catch (const std::exception& e) {
        ctx.fail("BAD_VALUE", n["p"], e.what());
      }
    }
    if (!n.IsMap() || !n["atoms"] || !n["atoms"].IsSequence() || n["atoms"].size() == 0) {
      ctx.fail("MISSING_FIELD", n, "atomic space needs a nonempty atoms list");
      return;
    }
    std::vector<Atom> atoms;
    std::set<std::string> ids;
    bool ok = true;
    for (const auto& a : n["atoms"]) {
      if (!a.IsMap() || !a["id"] || !a["mass"]) {
        ctx.fail("MISSING_FIELD", a, "atom needs id and mass");
        ok = false;
        continue;
      }
      const std::string id = a["id"].as<std::string>();
      auto m = as_rational(ctx, a["mass"], "mass of atom '" + id + "'");
      if (!m) {
        ok = false;
        continue;
      }
      if (sgn(*m) <= 0) {
        ctx.fail("NEGATIVE_MASS", a["mass"], "mass of atom '" + id + "' is " + to_string(*m) + "; must be > 0");
        ok = false;
        continue;
      }
      if (!ids.insert(id).second) {
        ctx.fail("BAD_VALUE", a, "duplicate atom '" + id + "'");
        ok = false;
        continue;
      }
      atoms.push_back({id, *m});
    }
    if (ok) s.atoms = AtomicMeasureSpace(std::move(atoms));
  } else {
    ctx.fail("UNKNOWN_SPACE", n, "unknown space kind '" + kind + "'");
  }
}

void read_symbols(Ctx& ctx, const YAML::Node& n, Scenario& s) {
  if (!n) return;
  if (!n.IsMap()) {
    ctx.fail("BAD_VALUE", n, "symbols must be a map");
    return;
  }
  for (const auto& kv : n) {
    const std::string name = kv.first.as<std::string>();
    const YAML::Node& def = kv.second;
    if (s.space == SpaceKind::Lp) {
      if (name == "u") {
        s.u = read_weight(ctx, def, "u");
      } else if (name == "phi") {
        s.phi = read_selfmap(ctx, def);
      } else if (name == "y") {
        if (auto w = read_weight(ctx, def, "y")) {
          try {
            s.y = C0Sequence(*w);
          } catch (const std::exception& e) {
            ctx.fail("BAD_SYMBOL", def, std::string("y: ") + e.what());
          }
        }
      } else {
        ctx.fail("BAD_VALUE", kv.first, "symbol '" + name + "' is not used on l^p");
      }
    } else if (s.space == SpaceKind::Cx) {
      if (name == "h") {
        s.h_grid = read_grid_function(ctx, def, s);
      } else {
        ctx.fail("BAD_VALUE", kv.first, "symbol '" + name + "' is not used on C[a,b]");
      }
    } else {
      if (!s.atoms) return;
      if (name == "u") {
        s.u_atomic = read_simple(ctx, def, *s.atoms, "u");
      } else if (name == "h") {
        s.h_atomic = read_simple(ctx, def, *s.atoms, "h");
      } else if (name == "phi") {
        s.phi_atomic = read_atom_map(ctx, def, *s.atoms);
      } else {
        ctx.fail("BAD_VALUE", kv.first, "symbol '" + name + "' is not used on an atomic space");
      }
    }
  }
}

// Symbol names a task consumes in the scenario's space.
std::vector<std::string> needed_symbols(const Scenario& s, const Task& t) {
  switch (s.space) {
    case SpaceKind::Lp:
      if (t.kind == TaskKind::TdzDemo) {
        const std::string rule = t.rule.value_or(s.y ? "diagonal_tail" : "tail_projection");
        if (rule == "diagonal_tail") return {"y"};
      }
      return {"u", "phi"};
    case SpaceKind::Cx:
      if (t.kind == TaskKind::ClassifyZd || t.kind == TaskKind::Witness || t.kind == TaskKind::TdzDemo) {
        return {"h"};
      }
      return {};
    case SpaceKind::Atomic:
      if (t.kind == TaskKind::ClassifyZd || t.kind == TaskKind::TdzDemo) return {"h"};
      if (t.kind == TaskKind::Witness && !s.phi_atomic && s.h_atomic) return {"h"};
      if (t.kind == TaskKind::ClassifyLeft || t.kind == TaskKind::Witness || t.kind == TaskKind::VerifyAll) {
        return {"u", "phi"};
      }
      return {};
  }
  return {};
}

bool symbol_defined(const Scenario& s, const std::string& name) {
  if (name == "u") return s.space == SpaceKind::Atomic ? s.u_atomic.has_value() : s.u.has_value();
  if (name == "phi") return s.space == SpaceKind::Atomic ? s.phi_atomic.has_value() : s.phi.has_value();
  if (name == "y") return s.y.has_value();
  if (name == "h") return s.space == SpaceKind::Atomic ? s.h_atomic.has_value() : s.h_grid.has_value();
  return false;
}

bool valid_probe(const std::string& p) {
  if (p == "harmonic" || p == "geometric") return true;
  return p.size() > 1 && p[0] == 'e' && p.find_first_not_of("0123456789", 1) == std::string::npos;
}

std::optional<Task> read_task(Ctx& ctx, const YAML::Node& n) {
  Task t;
  t.line = line_of(n);
  const YAML::Node kind = n.IsScalar() ? n : n["kind"];
  if (!kind) {
    ctx.fail("MISSING_FIELD", n, "task needs a kind");
    return std::nullopt;
  }
  try {
    t.kind = parse_task_kind(kind.as<std::string>());
  } catch (const std::exception&) {
    ctx.fail("UNKNOWN_TASK", kind, "unknown task kind '" + kind.as<std::string>() + "'");
    return std::nullopt;
  }
  if (n.IsScalar()) return t;
  static const std::set<std::string> keys{"kind", "N", "n_max", "tol", "eps", "probes", "rule", "side", "windows"};
  const std::size_t before = ctx.errors.size();
  for (const auto& kv : n) {
    const std::string key = kv.first.as<std::string>();
    if (!keys.count(key)) ctx.fail("BAD_VALUE", kv.first, "unknown task parameter '" + key + "'");
  }
  if (n["N"]) {
    auto v = as_count(ctx, n["N"], "N");
    if (v && (*v < 1 || *v > kMaxWitnessWindow)) {
      ctx.fail("PARAM_RANGE", n["N"], "N must be in [1, " + std::to_string(kMaxWitnessWindow) + "]");
    } else if (v) {
      t.dim = *v;
    }
  }
  if (n["n_max"]) {
    auto v = as_count(ctx, n["n_max"], "n_max");
    if (v && (*v < 1 || *v > 100'000)) {
      ctx.fail("PARAM_RANGE", n["n_max"], "n_max must be in [1, 100000]");
    } else if (v) {
      t.n_max = static_cast<unsigned>(*v);
    }
  }
  if (n["tol"]) {
    auto v = as_rational(ctx, n["tol"], "tol");
    if (v && sgn(*v) < 0) {
      ctx.fail("PARAM_RANGE", n["tol"], "tol must be >= 0");
    } else if (v) {
      t.tol = *v;
    }
  }
  if (n["eps"]) {
    try {
      const double e = n["eps"].as<double>();
      if (!(e > 0)) throw std::invalid_argument("eps");
      t.eps = e;
    } catch (const std::exception&) {
      ctx.fail("PARAM_RANGE", n["eps"], "eps must be a positive number");
    }
  }
  if (n["probes"]) {
    for (const auto& p : n["probes"]) {
      const std::string name = p.as<std::string>();
      if (!valid_probe(name)) {
        ctx.fail("BAD_VALUE", p, "unknown probe '" + name + "'");
      } else {
        t.probes.push_back(name);
      }
    }
  }
  if (n["rule"]) {
    const std::string r = n["rule"].as<std::string>();
    try {
      parse_rule_kind(r);
      t.rule = r;
    } catch (const std::exception&) {
      ctx.fail("BAD_VALUE", n["rule"], "unknown sequence rule '" + r + "'");
    }
  }
  if (n["side"]) {
    try {
      t.side = parse_side(n["side"].as<std::string>());
    } catch (const std::exception& e) {
      ctx.fail("BAD_VALUE", n["side"], e.what());
    }
  }
  if (n["windows"]) {
    for (const auto& w : n["windows"]) {
      auto v = as_count(ctx, w, "windows");
      if (v && (*v < 1 || *v > 64)) {
        ctx.fail("PARAM_RANGE", w, "oracle windows must be in [1, 64]");
      } else if (v) {
        t.windows.push_back(*v);
      }
    }
  }
  if (t.dim && t.n_max && *t.dim <= *t.n_max && t.kind == TaskKind::TdzDemo) {
    ctx.fail("PARAM_RANGE", n, "tdz_demo needs N > n_max");
  }
  if (ctx.errors.size() != before) return std::nullopt;
  return t;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<SchemaError> errors)
    : std::runtime_error(format_errors(errors)), errors_(std::move(errors)) {}

bool ScenarioError::has(const std::string& code) const {
  for (const auto& e : errors_)
    if (e.code == code) return true;
  return false;
}

std::string space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Lp: return "lp";
    case SpaceKind::Cx: return "cx";
    case SpaceKind::Atomic: return "atomic";
  }
  return "lp";
}

std::string task_kind_name(TaskKind k) {
  switch (k) {
    case TaskKind::ClassifyLeft: return "classify_left";
    case TaskKind::ClassifyRight: return "classify_right";
    case TaskKind::ClassifyZd: return "classify_zd";
    case TaskKind::Witness: return "witness";
    case TaskKind::TdzDemo: return "tdz_demo";
    case TaskKind::Norm: return "norm";
    case TaskKind::VerifyAll: return "verify_all";
  }
  return "classify_zd";
}

TaskKind parse_task_kind(const std::string& s) {
  for (auto k : {TaskKind::ClassifyLeft, TaskKind::ClassifyRight, TaskKind::ClassifyZd, TaskKind::Witness,
                 TaskKind::TdzDemo, TaskKind::Norm, TaskKind::VerifyAll}) {
    if (task_kind_name(k) == s) return k;
  }
  throw std::invalid_argument("unknown task kind '" + s + "'");
}

OperatorSpec Scenario::spec() const {
  if (!u || !phi) throw std::logic_error("scenario has no l^p operator");
  return {*u, *phi, p};
}

Scenario parse_scenario(const std::string& text) {
  Ctx ctx;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError({{"MALFORMED", e.mark.line + 1, e.msg}});
  }
  if (!root.IsMap()) throw ScenarioError({{"MALFORMED", 1, "scenario must be a map"}});

  Scenario s;
  try {
    static const std::set<std::string> top{"id", "space", "symbols", "tasks"};
    for (const auto& kv : root) {
      const std::string key = kv.first.as<std::string>();
      if (!top.count(key)) ctx.fail("BAD_VALUE", kv.first, "unknown top-level key '" + key + "'");
    }
    if (root["id"]) {
      s.id = root["id"].as<std::string>();
    } else {
      ctx.fail("MISSING_FIELD", root, "id is required");
    }
    read_space(ctx, root["space"], s);
    read_symbols(ctx, root["symbols"], s);
    if (const auto tasks = root["tasks"]) {
      if (!tasks.IsSequence()) {
        ctx.fail("BAD_VALUE", tasks, "tasks must be a list");
      } else {
        for (const auto& tn : tasks) {
          auto t = read_task(ctx, tn);
          if (!t) continue;
          for (const auto& name : needed_symbols(s, *t)) {
            // a symbol that is present but invalid was already reported
            const bool written = root["symbols"] && root["symbols"].IsMap() && root["symbols"][name];
            if (!symbol_defined(s, name) && !written) {
              ctx.fail("UNDEFINED_SYMBOL", t->line,
                       task_kind_name(t->kind) + " uses symbol '" + name + "', which is not defined");
            }
          }
          s.tasks.push_back(std::move(*t));
        }
      }
    }
  } catch (const YAML::Exception& e) {
    ctx.fail("MALFORMED", e.mark.line + 1, e.msg);
  }
  if (!ctx.errors.empty()) throw ScenarioError(std::move(ctx.errors));
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

}  // namespace zdlab
