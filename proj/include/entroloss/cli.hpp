#pragma once

#include "entroloss/energy.hpp"
#include "entroloss/report.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace entroloss::cli {

enum ExitCode : int { ok = 0, check_failure = 1, config_error = 2 };

// ---------------------------------------------------------------- config parsing

inline Json load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  require(static_cast<bool>(f), ErrorKind::ConfigError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    fail(ErrorKind::ConfigError, path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
}

inline void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  require(j.is_object(), ErrorKind::ConfigError, where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    (void)v;
    require(allowed.count(k) > 0, ErrorKind::ConfigError, where + ": unknown key '" + k + "'");
  }
}

inline const Json& need(const Json& j, const char* key, const std::string& where) {
  require(j.contains(key), ErrorKind::ConfigError, where + ": missing key '" + key + "'");
  return j.at(key);
}

/// JSON number or decimal string.
inline double real(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && used > 0, ErrorKind::ConfigError, where + ": '" + s + "' is not a number");
    return v;
  }
  fail(ErrorKind::ConfigError, where + ": expected a number");
}

inline std::int64_t integer(const Json& j, const std::string& where) {
  const double v = real(j, where);
  require(v == std::floor(v) && std::abs(v) < 9e15, ErrorKind::ConfigError, where + ": expected an integer");
  return static_cast<std::int64_t>(v);
}

/// Real number or [re, im].
inline cplx complex_entry(const Json& j, const std::string& where) {
  if (j.is_array()) {
    require(j.size() == 2, ErrorKind::ConfigError, where + ": complex entries are [re, im]");
    return {real(j[0], where), real(j[1], where)};
  }
  return {real(j, where), 0.0};
}

inline Matrix matrix(const Json& j, const std::string& where) {
  require(j.is_array() && !j.empty(), ErrorKind::ConfigError, where + ": expected a row-major array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  require(j[0].is_array() && !j[0].empty(), ErrorKind::ConfigError, where + ": rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, ErrorKind::ConfigError,
            where + ": ragged matrix at row " + std::to_string(r));
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_entry(row[static_cast<size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline Vector vector(const Json& j, const std::string& where) {
  require(j.is_array() && !j.empty(), ErrorKind::ConfigError, where + ": expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_entry(j[i], where);
  return v;
}

inline RealVector real_vector(const Json& j, const std::string& where) {
  require(j.is_array() && !j.empty(), ErrorKind::ConfigError, where + ": expected a non-empty array");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = real(j[i], where);
  return v;
}

inline Dims dims(const Json& j, const std::string& where) {
  require(j.is_array(), ErrorKind::ConfigError, where + ": dims must be an array");
  Dims d;
  for (const auto& x : j) d.push_back(static_cast<int>(integer(x, where)));
  return d;
}

inline Grid grid(const Json& j, const std::string& where) {
  require(j.is_array(), ErrorKind::ConfigError, where + ": grid must be an array");
  Grid g;
  for (const auto& x : j) g.push_back(integer(x, where));
  return g;
}

/// {"matrix"|"diagonal"|"ket": ..., "dims": [...]} or {"named": "bell"|"ghz"|"maximally_mixed", "dim": d}.
inline TraceClassElement state(const Json& j, const std::string& where) {
  allow_keys(j, {"matrix", "diagonal", "ket", "named", "dim", "dims"}, where);
  const Dims d = j.contains("dims") ? dims(j.at("dims"), where + ".dims") : Dims{};
  const int forms = static_cast<int>(j.contains("matrix")) + static_cast<int>(j.contains("diagonal")) +
                    static_cast<int>(j.contains("ket")) + static_cast<int>(j.contains("named"));
  require(forms == 1, ErrorKind::ConfigError, where + ": give exactly one of matrix, diagonal, ket, named");
  if (j.contains("matrix")) return TraceClassElement::from_matrix(matrix(j.at("matrix"), where + ".matrix"), d);
  if (j.contains("diagonal"))
    return TraceClassElement::from_diagonal(real_vector(j.at("diagonal"), where + ".diagonal"), d);
  if (j.contains("ket")) {
    Vector psi = vector(j.at("ket"), where + ".ket");
    require(psi.norm() > 0.0, ErrorKind::ConfigError, where + ": zero ket");
    return TraceClassElement::from_ket(psi / psi.norm(), d);
  }
  const std::string name = j.at("named").get<std::string>();
  const int dim = j.contains("dim") ? static_cast<int>(integer(j.at("dim"), where + ".dim")) : 2;
  if (name == "bell") return TraceClassElement::ghz(Vector::Constant(dim, 1.0 / std::sqrt(dim)), 2, dim);
  if (name == "ghz") return TraceClassElement::ghz(Vector::Constant(2, 1.0 / std::sqrt(2.0)), dim, 2);
  if (name == "maximally_mixed") return TraceClassElement::from_diagonal(RealVector::Constant(dim, 1.0 / dim), d);
  fail(ErrorKind::ConfigError, where + ": unknown named state '" + name + "'");
}

inline QuantumOperation channel(const Json& j, const std::string& where) {
  allow_keys(j, {"kind", "dim", "p", "gamma", "dims", "keep", "povm", "preps", "operators", "matrix"}, where);
  const std::string kind = need(j, "kind", where).get<std::string>();
  const auto dim = [&] { return integer(need(j, "dim", where), where + ".dim"); };
  const auto par = [&](const char* k) { return real(need(j, k, where), where + "." + k); };
  if (kind == "identity") return channels::identity(static_cast<int>(dim()));
  if (kind == "unitary") return channels::unitary(matrix(need(j, "matrix", where), where + ".matrix"));
  if (kind == "depolarizing") return channels::depolarizing(static_cast<int>(dim()), par("p"));
  if (kind == "dephasing") return channels::dephasing(dim(), par("p"));
  if (kind == "ladder_damping") return channels::ladder_damping(dim(), par("gamma"));
  if (kind == "shift_mixture") return channels::shift_mixture(dim(), par("p"));
  if (kind == "partial_trace") {
    const Dims d = dims(need(j, "dims", where), where + ".dims");
    require(d.size() == 2, ErrorKind::ConfigError, where + ": partial_trace needs two dims");
    const std::string keep = j.contains("keep") ? j.at("keep").get<std::string>() : "first";
    require(keep == "first" || keep == "second", ErrorKind::ConfigError, where + ".keep: first or second");
    return channels::partial_trace(d[0], d[1], keep == "first");
  }
  if (kind == "measure_prepare" || kind == "pseudo_diagonal") {
    const Json& pj = need(j, "povm", where);
    const Json& sj = need(j, "preps", where);
    require(pj.is_array() && sj.is_array(), ErrorKind::ConfigError, where + ": povm and preps are arrays");
    std::vector<Matrix> povm;
    std::vector<TraceClassElement> preps;
    for (size_t i = 0; i < pj.size(); ++i) povm.push_back(matrix(pj[i], where + ".povm[" + std::to_string(i) + "]"));
    for (size_t i = 0; i < sj.size(); ++i) preps.push_back(state(sj[i], where + ".preps[" + std::to_string(i) + "]"));
    return kind == "measure_prepare" ? channels::measure_prepare(povm, preps) : channels::pseudo_diagonal(povm, preps);
  }
  if (kind == "kraus") {
    const Json& oj = need(j, "operators", where);
    require(oj.is_array() && !oj.empty(), ErrorKind::ConfigError, where + ".operators: non-empty array");
    std::vector<Matrix> ks;
    for (size_t i = 0; i < oj.size(); ++i) ks.push_back(matrix(oj[i], where + ".operators[" + std::to_string(i) + "]"));
    return channels::custom(std::move(ks));
  }
  fail(ErrorKind::ConfigError, where + ": unknown channel kind '" + kind + "'");
}

/// {"kind": "log"|"linear"|"table", "params": {...}, "truncation": d}.
inline Hamiltonian hamiltonian(const Json& j, const std::string& where) {
  allow_keys(j, {"kind", "params", "truncation"}, where);
  const std::string kind = need(j, "kind", where).get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  const int trunc = j.contains("truncation") ? static_cast<int>(integer(j.at("truncation"), where + ".truncation")) : 64;
  const auto get = [&](const char* k, double def) {
    return params.contains(k) ? real(params.at(k), where + ".params." + k) : def;
  };
  if (kind == "log") {
    allow_keys(params, {"scale", "offset"}, where + ".params");
    return Hamiltonian::logarithmic(get("scale", 1.0), get("offset", 0.0), trunc);
  }
  if (kind == "linear") {
    allow_keys(params, {"slope", "offset"}, where + ".params");
    return Hamiltonian::linear(get("offset", 0.0), get("slope", 1.0), trunc);
  }
  if (kind == "table") {
    allow_keys(params, {"levels"}, where + ".params");
    const RealVector lv = real_vector(need(params, "levels", where + ".params"), where + ".params.levels");
    return Hamiltonian::table(std::vector<double>(lv.data(), lv.data() + lv.size()));
  }
  fail(ErrorKind::ConfigError, where + ": unknown Hamiltonian kind '" + kind + "'");
}

inline OptimizerBudget budget(const Json& j, OptimizerBudget b) {
  allow_keys(j, {"restarts", "iterations", "initial_step", "min_step", "gap_tolerance"}, "budget");
  if (j.contains("restarts")) b.restarts = static_cast<int>(integer(j.at("restarts"), "budget.restarts"));
  if (j.contains("iterations")) b.iterations = static_cast<int>(integer(j.at("iterations"), "budget.iterations"));
  if (j.contains("initial_step")) b.initial_step = real(j.at("initial_step"), "budget.initial_step");
  if (j.contains("min_step")) b.min_step = real(j.at("min_step"), "budget.min_step");
  if (j.contains("gap_tolerance")) b.gap_tolerance = real(j.at("gap_tolerance"), "budget.gap_tolerance");
  require(b.restarts >= 1 && b.iterations >= 1, ErrorKind::ConfigError, "budget: restarts and iterations >= 1");
  return b;
}

// ---------------------------------------------------------------- run options

struct Options {
  std::string command;
  Json config = Json::object();
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "entroloss_out";
  report::Format format = report::Format::both;
};

inline std::uint64_t seed_of(const Options& o) {
  if (o.seed) return *o.seed;
  if (o.config.contains("seed")) return static_cast<std::uint64_t>(integer(o.config.at("seed"), "seed"));
  return 7;
}

// ---------------------------------------------------------------- quantity

struct QuantityResult {
  std::string quantity;
  BoundedValue value;
  /// Optimizer-backed quantities always report their bound direction, even on exact fast paths.
  bool optimizer = false;

  std::string provenance() const { return optimizer ? to_string(value.direction) : "EXACT"; }
};

inline QuantityResult compute_quantity(const Json& c, std::uint64_t seed) {
  allow_keys(c, {"command", "seed", "quantity", "state", "sigma", "channel", "hamiltonian", "ensemble", "members", "k",
                 "budget"},
             "config");
  const std::string q = need(c, "quantity", "config").get<std::string>();
  OptimizerBudget b;
  b.seed = seed;
  if (c.contains("budget")) b = budget(c.at("budget"), b);
  const auto st = [&] { return state(need(c, "state", "config"), "state"); };
  const auto ch = [&] { return channel(need(c, "channel", "config"), "channel"); };
  const auto members = [&](int def) {
    return c.contains("members") ? static_cast<int>(integer(c.at("members"), "members")) : def;
  };
  const int k = c.contains("k") ? static_cast<int>(integer(c.at("k"), "k")) : 2;
  const auto exact = [](double v) { return BoundedValue::certified(v, Direction::upper_bound); };
  const auto ext = [&](ExtendedReal v) { return exact(v.as_double()); };

  if (q == "entropy") return {q, exact(von_neumann_entropy(st()))};
  if (q == "relative_entropy") return {q, ext(relative_entropy(st(), state(need(c, "sigma", "config"), "sigma")))};
  if (q == "mutual_information") return {q, ext(mutual_information(st()))};
  if (q == "conditional_entropy") return {q, exact(conditional_entropy(st()))};
  if (q == "conditional_mutual_information") return {q, exact(conditional_mutual_information(st()))};
  if (q == "holevo") {
    const Json& e = need(c, "ensemble", "config");
    allow_keys(e, {"weights", "states"}, "ensemble");
    const RealVector w = real_vector(need(e, "weights", "ensemble"), "ensemble.weights");
    const Json& sj = need(e, "states", "ensemble");
    require(sj.is_array() && sj.size() == static_cast<size_t>(w.size()), ErrorKind::ConfigError,
            "ensemble: one state per weight");
    std::vector<TraceClassElement> ms;
    for (size_t i = 0; i < sj.size(); ++i) ms.push_back(state(sj[i], "ensemble.states[" + std::to_string(i) + "]"));
    return {q, ext(holevo_quantity(Ensemble(std::vector<double>(w.data(), w.data() + w.size()), ms)))};
  }
  if (q == "output_entropy") return {q, exact(output_entropy(ch(), st()))};
  if (q == "entropy_exchange") return {q, exact(entropy_exchange(ch(), st()))};
  if (q == "coherent_information") return {q, exact(coherent_information(ch(), st()))};
  if (q == "channel_mutual_information") return {q, exact(channel_mutual_information(ch(), st()))};
  if (q == "entropy_gain") return {q, exact(entropy_gain(ch(), st()))};
  if (q == "choi_rank") return {q, exact(static_cast<double>(choi_rank(ch())))};
  if (q == "entanglement_of_formation") return {q, entanglement_of_formation(st(), members(4), b), true};
  if (q == "csq_entanglement") return {q, csq_entanglement_k(st(), k, b), true};
  if (q == "squashed_entanglement") return {q, squashed_entanglement_k(st(), k, b), true};
  if (q == "classical_correlations") {
    const TraceClassElement w = st();
    require(w.parties() == 2, ErrorKind::ConfigError, "classical_correlations needs a bipartite state");
    return {q, classical_correlations_CB(w, members(std::max(2, w.factor_dims()[1])), b), true};
  }
  if (q == "quantum_discord") {
    const TraceClassElement w = st();
    require(w.parties() == 2, ErrorKind::ConfigError, "quantum_discord needs a bipartite state");
    return {q, quantum_discord(w, members(std::max(2, w.factor_dims()[1])), b), true};
  }
  if (q == "constrained_holevo") return {q, constrained_holevo(ch(), st(), members(4), b), true};
  if (q == "g_parameter") return {q, ext(g_parameter(hamiltonian(need(c, "hamiltonian", "config"), "hamiltonian")))};
  if (q == "mean_energy") {
    const TraceClassElement rho = st();
    const Hamiltonian h = hamiltonian(need(c, "hamiltonian", "config"), "hamiltonian");
    return {q, exact(mean_energy(rho, h.with_truncation(std::max(h.truncation_dim(), static_cast<int>(rho.dim())))))};
  }
  fail(ErrorKind::ConfigError, "unknown quantity '" + q + "'");
}

inline Json quantity_json(const QuantityResult& r) {
  Json j;
  j["quantity"] = r.quantity;
  const Json v = report::to_json(r.value);
  for (auto it = v.begin(); it != v.end(); ++it) j[it.key()] = it.value();
  j["provenance"] = r.provenance();
  j["exact"] = r.value.exact;
  return j;
}

inline int cmd_quantity(const Options& o, std::ostream& out) {
  const QuantityResult r = compute_quantity(o.config, seed_of(o));
  const std::string prov = r.provenance();
  out << r.quantity << " = " << report::number(r.value.value) << " [" << prov << "]\n";
  std::filesystem::create_directories(o.out);
  if (o.format != report::Format::csv) report::write_file(o.out / "quantity.json", quantity_json(r).dump(2) + "\n");
  if (o.format != report::Format::json) {
    std::ostringstream os;
    os << "quantity,value,provenance,converged,gap_estimate\n"
       << r.quantity << ',' << report::number(r.value.value) << ',' << prov << ','
       << (r.value.converged ? "true" : "false") << ',' << report::number(r.value.gap_estimate) << '\n';
    report::write_file(o.out / "quantity.csv", os.str());
  }
  return ok;
}

// ---------------------------------------------------------------- sequence

inline StateFunctional sequence_functional(const std::string& name) {
  if (name == "H") return [](const TraceClassElement& x) { return von_neumann_entropy(x); };
  if (name == "S_pinched") return [](const TraceClassElement& x) {
    return shannon_entropy(computational_pinching(x)).as_double();
  };
  if (name == "I") return [](const TraceClassElement& x) { return mutual_information(x).as_double(); };
  if (name == "CE") return [](const TraceClassElement& x) { return conditional_entropy(x); };
  if (name == "CMI") return [](const TraceClassElement& x) { return conditional_mutual_information(x); };
  const std::string parts = "ABC";
  if (name.size() >= 3 && name.rfind("H_", 0) == 0) {
    std::vector<int> keep;
    for (size_t i = 2; i < name.size(); ++i) {
      const auto p = parts.find(name[i]);
      require(p != std::string::npos, ErrorKind::ConfigError, "unknown functional '" + name + "'");
      keep.push_back(static_cast<int>(p));
    }
    return [keep](const TraceClassElement& x) { return von_neumann_entropy(partial_trace(x, keep)); };
  }
  fail(ErrorKind::ConfigError, "unknown functional '" + name + "' (H, H_A, H_AB, ..., I, CE, CMI, S_pinched)");
}

inline SuiteReport run_sequence(const Json& c, std::uint64_t seed) {
  allow_keys(c, {"command", "seed", "family", "params", "grid", "window", "functionals"}, "config");
  const std::string family = need(c, "family", "config").get<std::string>();
  FamilyParams p;
  p.seed = seed;
  if (c.contains("params")) {
    const Json& pj = c.at("params");
    allow_keys(pj, {"law", "scale", "offset", "energy", "parties"}, "params");
    if (pj.contains("law")) p.law = pj.at("law").get<std::string>();
    if (pj.contains("scale")) p.scale = real(pj.at("scale"), "params.scale");
    if (pj.contains("offset")) p.offset = real(pj.at("offset"), "params.offset");
    if (pj.contains("energy")) p.energy = real(pj.at("energy"), "params.energy");
    if (pj.contains("parties")) p.parties = static_cast<int>(integer(pj.at("parties"), "params.parties"));
  }
  if (c.contains("grid")) p.grid = grid(c.at("grid"), "grid");
  const int window = c.contains("window") ? static_cast<int>(integer(c.at("window"), "window")) : default_window;
  std::vector<std::string> names{"H"};
  if (c.contains("functionals")) names = c.at("functionals").get<std::vector<std::string>>();

  const StateSequence s = make_family(family, p);
  SuiteReport rep{"sequence_" + s.name, "dj estimates along the " + s.name + " family", {}, {}, {}};
  SeriesTable t{s.name, s.n_grid, {}, {}, {}};
  for (const auto& name : names) {
    const DjEstimate e = dj_estimate(s, sequence_functional(name), window);
    t.add(name, e.values, e.limit_value);
    rep.notes.push_back(name + ": dj = " + report::number(e.dj_value()) + ", gain = " + report::number(e.gain) +
                        " (window " + std::to_string(window) + " at the largest grid points)");
  }
  for (const auto& [k, v] : s.closed_forms) rep.notes.push_back("closed form " + k + " = " + report::number(v));
  rep.tables.push_back(std::move(t));
  return rep;
}

inline int cmd_sequence(const Options& o, std::ostream& out) {
  const SuiteReport r = run_sequence(o.config, seed_of(o));
  for (const auto& n : r.notes) out << n << '\n';
  report::write_suite(r, o.out, o.format);
  return ok;
}

// ---------------------------------------------------------------- suite

inline SuiteParams suite_params(const Json& c, std::uint64_t seed) {
  SuiteParams sp;
  sp.seed = seed;
  sp.budget = suite_budget(seed);
  if (c.contains("params")) {
    const Json& pj = c.at("params");
    allow_keys(pj, {"window", "energy", "diagonal_grid", "dense_grid", "tol_exact", "tol_optimizer", "tol_relative"},
               "params");
    if (pj.contains("window")) sp.window = static_cast<int>(integer(pj.at("window"), "params.window"));
    if (pj.contains("energy")) sp.energy = real(pj.at("energy"), "params.energy");
    if (pj.contains("diagonal_grid")) sp.diagonal_grid = grid(pj.at("diagonal_grid"), "params.diagonal_grid");
    if (pj.contains("dense_grid")) sp.dense_grid = grid(pj.at("dense_grid"), "params.dense_grid");
    if (pj.contains("tol_exact")) sp.tol_exact = real(pj.at("tol_exact"), "params.tol_exact");
    if (pj.contains("tol_optimizer")) sp.tol_optimizer = real(pj.at("tol_optimizer"), "params.tol_optimizer");
    if (pj.contains("tol_relative")) sp.tol_relative = real(pj.at("tol_relative"), "params.tol_relative");
    require_grid(sp.diagonal_grid, sp.window);
    require_grid(sp.dense_grid, sp.window);
  }
  if (c.contains("budget")) sp.budget = budget(c.at("budget"), sp.budget);
  return sp;
}

inline std::vector<std::string> selected_suites(const Json& c) {
  if (!c.contains("suites")) return suite_ids();
  const Json& s = c.at("suites");
  if (s.is_string() && s.get<std::string>() == "all") return suite_ids();
  require(s.is_array(), ErrorKind::ConfigError, "suites: \"all\" or an array of ids");
  const auto known = suite_ids();
  std::vector<std::string> ids;
  for (const auto& x : s) {
    const std::string id = x.get<std::string>();
    require(std::find(known.begin(), known.end(), id) != known.end(), ErrorKind::UnknownSuite,
            "unknown suite '" + id + "'");
    ids.push_back(id);
  }
  return ids;
}

inline int cmd_suite(const Options& o, std::ostream& out) {
  allow_keys(o.config, {"command", "seed", "suites", "params", "budget"}, "config");
  const std::uint64_t seed = seed_of(o);
  const SuiteParams sp = suite_params(o.config, seed);
  const auto ids = selected_suites(o.config);
  std::vector<report::SummaryRow> rows;
  for (const auto& id : ids) {
    const SuiteReport r = suite_run(id, sp);
    report::write_suite(r, o.out, o.format);
    rows.push_back(report::summarize(r));
    out << (r.passed() ? "PASS " : "FAIL ") << id << "  checks=" << r.checks.size()
        << "  min_slack=" << report::number(r.min_slack()) << '\n';
  }
  const bool all = std::all_of(rows.begin(), rows.end(), [](const report::SummaryRow& r) { return r.passed; });
  return all ? ok : check_failure;
}

// ---------------------------------------------------------------- report

inline int cmd_report(const Options& o, std::ostream& out) {
  allow_keys(o.config, {"command", "seed", "input"}, "config");
  const std::filesystem::path in =
      o.config.contains("input") ? std::filesystem::path(o.config.at("input").get<std::string>()) : o.out;
  const auto rows = report::consolidate(in, o.out, o.format);
  bool all = true;
  for (const auto& r : rows) {
    out << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.claim << "  max_slack=" << report::number(r.max_slack)
        << '\n';
    all = all && r.passed;
  }
  return all ? ok : check_failure;
}

/// Runs one command; library errors other than failed checks map to exit code 2.
inline int run(Options o, std::ostream& out, std::ostream& err) {
  try {
    if (o.config.contains("command")) {
      const std::string c = o.config.at("command").get<std::string>();
      require(c == o.command, ErrorKind::ConfigError, "config command '" + c + "' differs from '" + o.command + "'");
    }
    if (o.command == "quantity") return cmd_quantity(o, out);
    if (o.command == "sequence") return cmd_sequence(o, out);
    if (o.command == "suite") return cmd_suite(o, out);
    if (o.command == "report") return cmd_report(o, out);
    fail(ErrorKind::ConfigError, "unknown command '" + o.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  } catch (const Json::exception& e) {
    err << "error: ConfigError: " << e.what() << '\n';
    return config_error;
  }
}

}  // namespace entroloss::cli
