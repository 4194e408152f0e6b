#include "bethepop/commands.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "bethepop/fundop.hpp"
#include "bethepop/gaudin_sl2.hpp"

namespace bp {

namespace {

struct Options {
  SolveOptions solve;
  long max_nodes = 0;
  long max_den = 0;
};

Options options_from_json(const json& req) {
  Options o;
  if (!req.contains("options")) return o;
  const json& j = req["options"];
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "'options' must be an object");
  try {
    if (j.contains("attempts")) o.solve.attempts = j["attempts"].get<int>();
    if (j.contains("tol")) o.solve.tol = j["tol"].get<double>();
    if (j.contains("seed")) o.solve.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("dedup_tol")) o.solve.dedup_tol = j["dedup_tol"].get<double>();
    if (j.contains("max_iter")) o.solve.max_iter = j["max_iter"].get<int>();
    if (j.contains("max_nodes")) o.max_nodes = j["max_nodes"].get<long>();
    if (j.contains("max_den")) o.max_den = j["max_den"].get<long>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad option: ") + e.what());
  }
  if (o.solve.attempts <= 0 || o.solve.tol <= 0 || o.solve.dedup_tol <= 0 || o.max_nodes < 0 || o.max_den < 0)
    throw Error(ErrorCode::InvalidInput, "options must be positive");
  return o;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

std::vector<Complex> numeric_param(const json& req, const Problem& p) {
  if (req.contains("param")) {
    std::vector<Complex> out;
    if (!req["param"].is_array()) throw Error(ErrorCode::InvalidInput, "'param' must be an array");
    for (const auto& e : req["param"]) out.push_back(complex_from_json(e));
    if (static_cast<int>(out.size()) != p.rs.rank()) throw Error(ErrorCode::InvalidInput, "'param' has wrong length");
    return out;
  }
  std::vector<Complex> out;
  for (const auto& c : coords(weight_from_json(req, p))) out.emplace_back(c.get_d(), 0);
  return out;
}

Population populate_from(const json& req, const Problem& p, const Options& o) {
  return generate(p, tuple_from_json(req, p), weight_from_json(req, p), o.max_nodes);
}

void add_population_checks(Report& rep, const Population& pop) {
  rep.merge(population_invariants(pop));
  rep.merge(check_relations(pop));
  rep.merge(degree_law_check(pop));
  if (pop.problem.rs.is_finite()) {
    const long order = weyl_group_order(pop.problem.rs);
    rep.add("cardinality", static_cast<long>(pop.nodes.size()) == order,
            "nodes " + std::to_string(pop.nodes.size()) + ", |W| " + std::to_string(order));
    rep.add("weyl_label_bijective", weyl_label(pop).bijective);
  }
}

json failures_json(const Population& pop) {
  json out = json::array();
  for (const auto& f : pop.failures)
    out.push_back({{"node", f.node}, {"direction", f.direction + 1}, {"code", error_name(f.code)}, {"message", f.message}});
  return out;
}

json population_summary(const Population& pop) {
  return {{"problem", problem_to_json(pop.problem)},
          {"size", pop.nodes.size()},
          {"nodes", population_to_json(pop)},
          {"failures", failures_json(pop)}};
}

CommandResult finish(json out, const Report& rep) {
  out["checks"] = to_json(rep);
  out["pass"] = rep.pass();
  return {std::move(out), rep.pass()};
}

CommandResult cmd_populate(const json& req) {
  const Problem p = problem_from_json(req);
  const Options o = options_from_json(req);
  const Population pop = populate_from(req, p, o);
  Report rep;
  add_population_checks(rep, pop);
  return finish({{"command", "populate"}, {"population", population_summary(pop)}}, rep);
}

Verdict safe_verify(const Problem& p, const PolyTuple& t, const Weight& w) {
  try {
    return verify_critical_point(p, t, w, t.degrees());
  } catch (const Error& e) {
    if (is_input_error(e.code())) throw;
    return Verdict::Fail;
  }
}

CommandResult cmd_verify(const json& req) {
  const Problem p = problem_from_json(req);
  Report rep;
  json out = {{"command", "verify"}, {"problem", problem_to_json(p)}};
  if (req.contains("population")) {
    const json& nodes = req["population"].is_object() ? req["population"]["nodes"] : req["population"];
    if (!nodes.is_array() || nodes.empty()) throw Error(ErrorCode::InvalidInput, "'population' must list nodes");
    json verdicts = json::array();
    std::optional<Weight> base;
    for (size_t k = 0; k < nodes.size(); ++k) {
      const json& n = nodes[k];
      json wreq = json::object();
      wreq[p.family.kind == FamilyKind::Xxx ? "kappa" : "weight"] = n.at("weight");
      const Weight w = weight_from_json(wreq, p);
      const PolyTuple t = tuple_from_json_value(n.at("tuple"), p);
      const Verdict v = safe_verify(p, t, w);
      verdicts.push_back(verdict_name(v));
      rep.add("node_" + std::to_string(k), v == Verdict::Pass, verdict_name(v));
      if (!base) base = w;
      if (n.contains("word")) {
        WeylWord word;
        for (int l : int_list(n["word"])) {
          if (l < 1 || l > p.rs.rank()) throw Error(ErrorCode::InvalidInput, "word letter out of range");
          word.letters.push_back(l - 1);
        }
        rep.add("node_" + std::to_string(k) + "_word", apply_word(p, word, *base) == w);
      }
    }
    out["verdicts"] = verdicts;
  } else {
    const Weight w = weight_from_json(req, p);
    const PolyTuple t = tuple_from_json(req, p);
    const Verdict v = safe_verify(p, t, w);
    out["verdict"] = verdict_name(v);
    rep.add("critical", v == Verdict::Pass, verdict_name(v));
  }
  return finish(std::move(out), rep);
}

CommandResult cmd_solve(const json& req) {
  const Problem p = problem_from_json(req);
  const Options o = options_from_json(req);
  if (!req.contains("degrees")) throw Error(ErrorCode::InvalidInput, "missing 'degrees'");
  const std::vector<int> l = int_list(req["degrees"]);
  if (static_cast<int>(l.size()) != p.rs.rank()) throw Error(ErrorCode::InvalidInput, "'degrees' has wrong length");
  for (int d : l)
    if (d < 0) throw Error(ErrorCode::InvalidInput, "degrees must be nonnegative");
  const auto param = numeric_param(req, p);
  Report rep;
  json out = {{"command", "solve"}, {"problem", problem_to_json(p)}};
  std::vector<BetheConfig> sols;
  if (p.rs.rank() == 1) {
    const CountReport c = count_check(p, param, l[0], o.solve);
    sols = c.solutions;
    out["multiplicity"] = c.multiplicity;
    out["min_condition"] = c.min_condition;
    out["max_condition"] = c.max_condition;
    rep.add("count_within_bound", !c.exceeds,
            "found " + std::to_string(c.found) + ", multiplicity " + std::to_string(c.multiplicity));
  } else {
    sols = solve_newton(p, param, l, o.solve);
  }
  out["found"] = sols.size();
  json js = json::array();
  double worst = 0;
  for (const auto& s : sols) {
    const double r = s.size() ? residual(s, p, param).norm() : 0.0;
    worst = std::max(worst, r);
    json e = {{"roots", to_json(s)}, {"residual", r}};
    if (o.max_den > 0) {
      try {
        Weight w = weight_from_json(req, p);
        if (p.family.kind == FamilyKind::Xxx) w = exact_kappa_for(std::get<MultWeight>(w).kappa);
        e["exact_tuple"] = to_json(rationalize(roots_to_tuple(s), o.max_den, p, w));
      } catch (const Error& err) {
        if (is_input_error(err.code())) throw;
        e["exact_tuple"] = nullptr;
        e["rationalize_error"] = err.what();
      }
    }
    js.push_back(std::move(e));
  }
  out["solutions"] = js;
  rep.add("residuals", worst <= std::max(1e-8, 100 * o.solve.tol), "max " + fmt(worst));
  return finish(std::move(out), rep);
}

CommandResult cmd_kernel(const json& req) {
  const Problem p = problem_from_json(req);
  const Options o = options_from_json(req);
  const Population pop = populate_from(req, p, o);
  Report rep;
  rep.add("closed", pop.closed());
  rep.merge(kernel_checks(pop));
  return finish({{"command", "kernel-check"}, {"problem", problem_to_json(p)}, {"size", pop.nodes.size()}}, rep);
}

CommandResult cmd_fold(const json& req) {
  const Problem p = problem_from_json(req);
  const Options o = options_from_json(req);
  const Folding f = Folding::make(p.rs);
  Problem q{f.target, {}, p.z, p.family};
  for (const auto& L : p.Lambda) q.Lambda.push_back(f.fold_weight(L));
  q.validate();
  const Weight w = weight_from_json(req, p);
  const Weight fw = std::holds_alternative<WeightVec>(w) ? Weight(f.fold_weight(std::get<WeightVec>(w)))
                                                         : Weight(f.fold_weight(std::get<MultWeight>(w)));
  const PolyTuple start = tuple_from_json(req, p);
  const Population src = generate(p, start, w, o.max_nodes);
  const Population tgt = generate(q, PolyTuple{f.fold_tuple(start.ys)}, fw, o.max_nodes);
  Report rep;
  rep.add("source_closed", src.closed());
  rep.add("target_closed", tgt.closed());
  rep.merge(fold_check(src, tgt, f));
  return finish({{"command", "fold-check"},
                 {"source", problem_to_json(p)},
                 {"target", problem_to_json(q)},
                 {"source_size", src.nodes.size()},
                 {"target_size", tgt.nodes.size()}},
                rep);
}

std::vector<int> sl2_lambda(const json& req) {
  if (!req.contains("Lambda")) throw Error(ErrorCode::InvalidInput, "missing 'Lambda'");
  std::vector<int> out;
  for (const auto& e : req["Lambda"]) {
    const auto v = int_list(e);
    if (v.size() != 1) throw Error(ErrorCode::InvalidInput, "sl2 highest weights are single integers");
    out.push_back(v[0]);
  }
  return out;
}

std::vector<Rational> sl2_points(const json& req, size_t n) {
  if (!req.contains("z") || !req["z"].is_array()) throw Error(ErrorCode::InvalidInput, "missing 'z'");
  std::vector<Rational> z;
  for (const auto& e : req["z"]) z.push_back(rational_from_json(e));
  if (z.size() != n) throw Error(ErrorCode::InvalidInput, "need one point per factor");
  return z;
}

Problem sl2_problem(const std::vector<int>& Lambda, const std::vector<Rational>& z) {
  Problem p{RootSystem::make(Family::A, 1), {}, z, BetheFamily{FamilyKind::Trig, 0}};
  for (int L : Lambda) p.Lambda.push_back(WeightVec{{Rational(L)}});
  p.validate();
  return p;
}

std::vector<Complex> to_complex(const std::vector<Rational>& z) {
  std::vector<Complex> out;
  for (const auto& q : z) out.emplace_back(q.get_d(), 0);
  return out;
}

std::vector<int> levels(const json& req, const char* key, int total) {
  if (req.contains(key)) return int_list(req[key]);
  std::vector<int> out;
  for (int l = 0; 2 * l <= total; ++l) out.push_back(l);
  return out;
}

CommandResult cmd_gaudin(const json& req) {
  const auto Lambda = sl2_lambda(req);
  const auto zr = sl2_points(req, Lambda.size());
  const Problem p = sl2_problem(Lambda, zr);
  const Options o = options_from_json(req);
  if (!req.contains("lambda")) throw Error(ErrorCode::InvalidInput, "missing 'lambda'");
  const Complex lambda = complex_from_json(req["lambda"]);
  const Sl2Tensor V(Lambda);
  const auto z = to_complex(zr);
  Report rep;
  json blocks = json::array();
  std::mt19937_64 rng(o.solve.seed + 104729);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int l : levels(req, "l", V.total())) {
    if (l < 0 || l > V.total()) throw Error(ErrorCode::InvalidInput, "'l' out of range");
    const std::string tag = "l" + std::to_string(l) + "_";
    const int inf = V.total() - 2 * l;
    const GaudinOperators g = build_gaudin(V, z, lambda + 1.0 + inf / 2.0);
    rep.add(tag + "commuting", max_commutator(g) <= 1e-12, "max " + fmt(max_commutator(g)));
    bool graded = true;
    for (const auto& H : g.H)
      for (Eigen::Index r = 0; r < H.rows(); ++r)
        for (Eigen::Index c = 0; c < H.cols(); ++c)
          if (V.weight(static_cast<size_t>(r)) != V.weight(static_cast<size_t>(c)) && H(r, c) != Complex(0)) graded = false;
    rep.add(tag + "weight_graded", graded);

    const CountReport cr = count_check(p, {lambda}, l, o.solve);
    rep.add(tag + "count_within_bound", !cr.exceeds,
            "found " + std::to_string(cr.found) + ", multiplicity " + std::to_string(cr.multiplicity));
    json sols = json::array();
    double worst = 0;
    for (const auto& s : cr.solutions) {
      const EigenReport er = verify_bethe_eigen(V, z, lambda, s.colors[0]);
      worst = std::max(worst, er.max_residual);
      json ev = json::array();
      for (const auto& mu : er.eigenvalues) ev.push_back(to_json(mu));
      sols.push_back({{"roots", to_json(s)}, {"residuals", er.residuals}, {"eigenvalues", ev}});
    }
    rep.add(tag + "eigenvectors", worst <= 1e-8, "max residual " + fmt(worst));
    json block = {{"l", l}, {"found", cr.found}, {"multiplicity", cr.multiplicity}, {"solutions", sols}};
    if (l > 0 && V.block(inf).size() > 1) {
      double least = INFINITY;
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Complex> t;
        for (int k = 0; k < l; ++k) t.emplace_back(dist(rng), dist(rng));
        least = std::min(least, verify_bethe_eigen(V, z, lambda, t).max_residual);
      }
      rep.add(tag + "control_not_eigen", least >= 1e-2, "min residual " + fmt(least));
      block["control_min_residual"] = least;
    }
    blocks.push_back(std::move(block));
  }
  return finish({{"command", "gaudin-check"}, {"problem", problem_to_json(p)}, {"blocks", blocks}}, rep);
}

CommandResult cmd_dwg(const json& req) {
  const auto Lambda = sl2_lambda(req);
  const auto zr = sl2_points(req, Lambda.size());
  sl2_problem(Lambda, zr);
  const Options o = options_from_json(req);
  const Sl2Tensor V(Lambda);
  const auto z = to_complex(zr);
  std::vector<int> lambdas = req.contains("lambda") ? int_list(req["lambda"]) : std::vector<int>{10, 20};
  const int l_max = req.contains("l_max") ? int_list(req["l_max"]).at(0) : 2;
  const Rational limit_lambda = req.contains("limit_lambda") ? rational_from_json(req["limit_lambda"]) : Rational(10000);
  Report rep;
  json per = json::array();
  for (int lam : lambdas) {
    const std::string tag = "lambda" + std::to_string(lam) + "_";
    const DWGOperator op = dwg_operator(V, lam);
    rep.add(tag + "weights_flip", op.weights_flip);
    rep.add(tag + "lower_terms_vanish", op.lower_terms_vanish);
    const double comm = dwg_commutation_check(V, z, lam).max_relative;
    rep.add(tag + "commutation", comm <= 1e-10, "max " + fmt(comm));
    rep.add(tag + "square_scalar", dwg_square_scalar(V, lam));
    json conj = json::array();
    for (int l = 0; l <= std::min(l_max, V.total()); ++l) {
      const ConjectureReport cr = conjecture_check(V, zr, lam, l, o.solve);
      const std::string lt = tag + "l" + std::to_string(l) + "_";
      rep.add(lt + "conjecture", cr.max_sine <= 1e-6,
              "cases " + std::to_string(cr.cases.size()) + ", skipped " + std::to_string(cr.skipped) + ", max sine " +
                  fmt(cr.max_sine));
      json c = {{"l", l}, {"cases", cr.cases.size()}, {"skipped", cr.skipped}, {"max_sine", cr.max_sine}};
      if (cr.control_run) {
        rep.add(lt + "control", cr.control_min_sine >= 1e-2 && cr.control_min_residual >= 1e-2,
                "min sine " + fmt(cr.control_min_sine) + ", min residual " + fmt(cr.control_min_residual));
        c["control_min_sine"] = cr.control_min_sine;
        c["control_min_residual"] = cr.control_min_residual;
      }
      conj.push_back(std::move(c));
    }
    per.push_back({{"lambda", lam}, {"commutation", comm}, {"conjecture", conj}});
  }
  const double angle = dwg_limit_angle(V, limit_lambda);
  rep.add("limit", angle <= 1e-3, "sine " + fmt(angle) + " at lambda " + to_string(limit_lambda));
  return finish({{"command", "dwg-check"}, {"Lambda", Lambda}, {"per_lambda", per}, {"limit_sine", angle}}, rep);
}

}  // namespace

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidType:
    case ErrorCode::UnsupportedType:
    case ErrorCode::InvalidInput:
    case ErrorCode::ZeroStep:
    case ErrorCode::NonGeneric:
      return true;
    default:
      return false;
  }
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"populate",   "verify",    "solve",     "kernel-check",
                                              "gaudin-check", "dwg-check", "fold-check"};
  return names;
}

CommandResult run_command(const std::string& subcommand, const json& request) {
  using Fn = CommandResult (*)(const json&);
  static const std::map<std::string, Fn> table{
      {"populate", cmd_populate},  {"verify", cmd_verify},         {"solve", cmd_solve},
      {"kernel-check", cmd_kernel}, {"gaudin-check", cmd_gaudin}, {"dwg-check", cmd_dwg},
      {"fold-check", cmd_fold}};
  auto it = table.find(subcommand);
  if (it == table.end()) throw Error(ErrorCode::InvalidInput, "unknown subcommand '" + subcommand + "'");
  try {
    return it->second(request);
  } catch (const Error& e) {
    if (is_input_error(e.code())) throw;
    json out = {{"command", subcommand},
                {"error", {{"code", error_name(e.code())}, {"message", e.what()}}},
                {"checks", json::array()},
                {"pass", false}};
    return {std::move(out), false};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

}  // namespace bp
