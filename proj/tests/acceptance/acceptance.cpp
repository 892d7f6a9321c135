// Acceptance run: one PASS/FAIL line per criterion.
// Criteria listed in known_blocked are expected to fail (analysis in the decisions ledger); they still
// print FAIL. The exit code is nonzero if any other criterion fails or a blocked one starts passing.
#include "entroloss/entroloss.hpp"
#include "entroloss/random.hpp"

#include "../support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace entroloss;

namespace {

namespace tol {
constexpr double identity = 1e-8;
constexpr double inequality = 1e-9;
constexpr double pinsker = 1e-8;
constexpr double band_lo = 0.8;
constexpr double band_hi = 1.2;
constexpr double relative = 0.05;
constexpr double ef_bell = 1e-6;
constexpr double ef_grid = 1e-2;
constexpr double koashi_winter = 5e-3;
}  // namespace tol

namespace limit_s {
constexpr double identity = 60;
constexpr double inequality = 120;
constexpr double sharpness = 30;
constexpr double lifted = 30;
constexpr double anchors = 600;
constexpr double koashi_winter = 900;
}  // namespace limit_s

const std::set<int> known_blocked{3};

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string g(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string timed(const std::string& what, double t, double lim) {
  return what + "; " + g(t) + " s (limit " + g(lim) + " s)";
}

QuantumOperation random_channel(Rng& rng, int d, int kraus) {
  const Matrix v = rng.haar_isometry(static_cast<Eigen::Index>(kraus) * d, d);
  std::vector<Matrix> ks;
  for (int i = 0; i < kraus; ++i) ks.push_back(v.middleRows(static_cast<Eigen::Index>(i) * d, d));
  return channels::custom(std::move(ks));
}

RealVector descending(RealVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

RealVector eigen_desc(const TraceClassElement& x) { return descending(oracle::eigenvalues(x.dense())); }

// mu = D lambda with D a random convex mixture of permutations; lambda majorizes mu.
RealVector doubly_stochastic_image(Rng& rng, const RealVector& lambda) {
  const auto n = lambda.size();
  RealVector mu = RealVector::Zero(n);
  const RealVector w = rng.simplex(4);
  for (int t = 0; t < 4; ++t) {
    std::vector<Eigen::Index> perm(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    for (Eigen::Index i = 0; i < n; ++i) mu(i) += w(t) * lambda(perm[static_cast<size_t>(i)]);
  }
  return mu;
}

TraceClassElement rotated(Rng& rng, const RealVector& spectrum) {
  const auto n = spectrum.size();
  const Matrix u = rng.haar_unitary(n);
  return TraceClassElement::trusted_dense(u * spectrum.cast<cplx>().asDiagonal() * u.adjoint(), {static_cast<int>(n)});
}

// ---------------------------------------------------------------- 1

Outcome identities() {
  const auto t0 = Clock::now();
  Rng rng(101);
  constexpr int per = 200;
  double sp = 0, ext2 = 0, lrel = 0, cmi = 0;
  for (const int d : {2, 3, 4}) {
    const auto h = Hamiltonian::logarithmic(1.0, 0.0, d);
    for (int t = 0; t < per; ++t) {
      const auto psi = rng.pure_state(d * d * d, {d, d, d});
      const double iab = mutual_information(partial_trace(psi, {0, 1})).value();
      const double iac = mutual_information(partial_trace(psi, {0, 2})).value();
      sp = std::max(sp, std::abs(iab + iac - 2.0 * von_neumann_entropy(partial_trace(psi, {0}))));

      ext2 = std::max(ext2, ext2_residual(random_channel(rng, d, 3), rng.density(d)));
      lrel = std::max(lrel, gibbs_identity_residual(rng.density(d), h, 2.0, d));

      const auto f = cmi_forms(rng.density(d * d * d, d, {d, d, d}));
      for (size_t k = 1; k < f.size(); ++k) cmi = std::max(cmi, std::abs(f[k] - f[0]));
    }
  }
  const double t = seconds_since(t0);
  const bool ok = sp <= tol::identity && ext2 <= tol::identity && lrel <= tol::identity && cmi <= tol::identity &&
                  t < limit_s::identity;
  return {ok, timed("max residuals: purity " + g(sp) + ", ext-2 " + g(ext2) + ", Gibbs " + g(lrel) + ", CMI forms " +
                        g(cmi) + " (tol 1e-8; 200 states per d in {2,3,4} per identity)",
                    t, limit_s::identity)};
}

// ---------------------------------------------------------------- 2

Outcome inequalities() {
  const auto t0 = Clock::now();
  Rng rng(202);
  constexpr int n = 240;
  int ssa = 0, sub = 0, tri = 0, miub = 0, pinsker = 0, mirsky = 0, lemma5 = 0, rear = 0, maj_fail = 0;
  for (int t = 0; t < n; ++t) {
    const int d = 2 + t % 3;
    const auto abc = rng.density(2 * d * 2, 3, {2, d, 2});
    if (cmi_forms(abc)[0] < -tol::inequality) ++ssa;

    const auto ab = rng.density(d * d, 1 + t % (d * d), {d, d});
    const double hab = von_neumann_entropy(ab);
    const double ha = von_neumann_entropy(partial_trace(ab, {0}));
    const double hb = von_neumann_entropy(partial_trace(ab, {1}));
    if (hab > ha + hb + tol::inequality) ++sub;
    if (hab < std::abs(ha - hb) - tol::inequality) ++tri;
    if (mutual_information(ab).value() > 2.0 * std::min(ha, hb) + tol::inequality) ++miub;

    const int m = 2 + t % 5;
    const RealVector lambda = rng.simplex(m);
    const RealVector mu = doubly_stochastic_image(rng, lambda);
    const auto rho = rotated(rng, lambda);
    const auto sigma = rotated(rng, mu);
    if (!majorizes(rho, sigma)) ++maj_fail;
    const RealVector ld = eigen_desc(rho), md = eigen_desc(sigma);
    const double l1 = (md - ld).cwiseAbs().sum();
    if (von_neumann_entropy(sigma) - von_neumann_entropy(rho) < 0.5 * l1 * l1 - tol::pinsker) ++pinsker;

    const auto x = rng.density(m), y = rng.density(m);
    if ((eigen_desc(x) - eigen_desc(y)).cwiseAbs().sum() > trace_distance(x, y) + tol::inequality) ++mirsky;

    RealVector hk(m);
    double acc = 0.0;
    for (int k = 0; k < m; ++k) hk(k) = (acc += rng.uniform());
    if (descending(lambda).dot(hk) > descending(mu).dot(hk) + tol::inequality) ++lemma5;

    const auto h = (t % 2 == 0) ? Hamiltonian::logarithmic(1.0 + t % 3, 0.0, m) : Hamiltonian::linear(0.5, 1.0, m);
    const auto down = rearrangement(x, h);
    if (mean_energy(down, h.with_truncation(static_cast<int>(down.dim()))) > mean_energy(x, h) + tol::inequality ||
        std::abs(von_neumann_entropy(down) - von_neumann_entropy(x)) > tol::inequality)
      ++rear;
  }
  const double t = seconds_since(t0);
  const int total = ssa + sub + tri + miub + pinsker + mirsky + lemma5 + rear + maj_fail;
  const std::string counts = "violations: SSA " + std::to_string(ssa) + ", subadditivity " + std::to_string(sub) +
                             ", triangle " + std::to_string(tri) + ", MI bound " + std::to_string(miub) +
                             ", Pinsker " + std::to_string(pinsker) + ", Mirsky " + std::to_string(mirsky) +
                             ", Lemma 5 " + std::to_string(lemma5) + ", rearrangement " + std::to_string(rear) +
                             ", generator " + std::to_string(maj_fail) + " (" + std::to_string(n) + " instances each)";
  return {total == 0 && t < limit_s::inequality, timed(counts, t, limit_s::inequality)};
}

// ---------------------------------------------------------------- 3

Outcome sharpness() {
  const auto t0 = Clock::now();
  FamilyParams p;  // E_k = log(k + 1), E = 1
  const StateSequence s = make_family("sharp", p);
  const Hamiltonian h = Hamiltonian::logarithmic(1.0, 0.0, 1);
  const double gh = g_parameter(h).value();
  const double e0 = h.ground_energy();
  const double target = gh * (p.energy - e0);

  std::vector<double> hv;
  int link1 = 0, link2 = 0, link3 = 0;
  for (const auto n : s.n_grid) {
    const TraceClassElement rho = s.at(n);
    const Hamiltonian hn = h.with_truncation(static_cast<int>(rho.dim()));
    const double hr = von_neumann_entropy(rho);
    const double e = mean_energy(rho, hn);
    const double ed = mean_energy(rearrangement(rho, hn), hn);
    hv.push_back(hr);
    if (hr > gh * (ed - e0) + tol::inequality) ++link1;
    if (ed > e + tol::inequality) ++link2;
    if (e - e0 > p.energy - e0 + tol::inequality) ++link3;
  }
  const double at_max = hv.back() - von_neumann_entropy(s.limit);
  const double window = dj_from_values(s.n_grid, hv, von_neumann_entropy(s.limit), default_window).dj_value();
  const double t = seconds_since(t0);
  const bool in_band = at_max >= tol::band_lo * target && at_max <= tol::band_hi * target;
  const bool chain = link1 + link2 + link3 == 0;
  const std::string d = "dj estimate at n = 2^16: " + g(at_max) + " (window sup " + g(window) + "), band [" +
                        g(tol::band_lo * target) + ", " + g(tol::band_hi * target) + "]; chain violations per link " +
                        std::to_string(link1) + "/" + std::to_string(link2) + "/" + std::to_string(link3) + " of " +
                        std::to_string(s.n_grid.size()) + " points; info: fitted limit " +
                        g(asymptotic_extrapolation(s.n_grid, hv)) + ", closed form " +
                        g(s.closed_forms.at("dj_H"));
  return {in_band && chain && t < limit_s::sharpness, timed(d, t, limit_s::sharpness)};
}

// ---------------------------------------------------------------- 4

Outcome lifted_sharpness() {
  const auto t0 = Clock::now();
  const StateSequence s = make_family("lifted_sharp");
  const auto mi = dj_estimate(s, [](const TraceClassElement& w) { return mutual_information(w).value(); });
  const auto ha = dj_estimate(s, [](const TraceClassElement& w) { return von_neumann_entropy(partial_trace(w, {0})); });
  const double t = seconds_since(t0);
  const double rel = std::abs(mi.dj_value() - 2.0 * ha.dj_value()) / (2.0 * ha.dj_value());
  return {rel <= tol::relative && t < limit_s::lifted,
          timed("dj I = " + g(mi.dj_value()) + ", 2 dj H_A = " + g(2.0 * ha.dj_value()) + ", relative gap " + g(rel) +
                    " (tol 5%)",
                t, limit_s::lifted)};
}

// ---------------------------------------------------------------- 5

Outcome anchors() {
  const auto t0 = Clock::now();
  const OptimizerBudget b;  // default budget
  Rng rng(505);
  int exact_fail = 0;
  for (int t = 0; t < 20; ++t) {
    const auto rho = rng.density(2 + t % 3);
    const auto h1 = hk_approximator(rho, 1, b);
    const auto d1 = delta_k(rho, 1, b);
    if (!(h1.exact && h1.value == 0.0 && d1.exact && d1.value == von_neumann_entropy(rho))) ++exact_fail;
  }
  Matrix bell = Matrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  const double ef_bell = entanglement_of_formation(TraceClassElement::from_matrix(bell, {2, 2}), 4, b).value;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto w = rng.density(4, 2, {2, 2});
    OptimizerBudget bt = b;
    bt.seed = 5000 + static_cast<std::uint64_t>(t);
    worst = std::max(worst, std::abs(entanglement_of_formation(w, 4, bt).value - oracle::grid_ef_two_member(w.dense())));
  }
  const double t = seconds_since(t0);
  const bool ok = exact_fail == 0 && std::abs(ef_bell - std::log(2.0)) <= tol::ef_bell && worst <= tol::ef_grid &&
                  t < limit_s::anchors;
  return {ok, timed("H_1/Delta_1 non-exact " + std::to_string(exact_fail) + " of 20; |E_F(Bell) - log 2| = " +
                        g(std::abs(ef_bell - std::log(2.0))) + "; worst |E_F - grid oracle| = " + g(worst) +
                        " on 20 rank-2 qubit pairs (tol 1e-2)",
                    t, limit_s::anchors)};
}

// ---------------------------------------------------------------- 6

Outcome koashi_winter_identity() {
  const auto t0 = Clock::now();
  Rng rng(606);
  OptimizerBudget b;
  int used = 0, excluded = 0;
  double worst = 0.0;
  std::string skipped;
  for (int t = 0; t < 20; ++t) {
    b.seed = 6000 + static_cast<std::uint64_t>(t);
    const auto kw = koashi_winter(rng.pure_state(8, {2, 2, 2}), b);
    if (!kw.converged()) {
      ++excluded;
      skipped += " #" + std::to_string(t) + "(" + g(kw.signed_residual) + ")";
      continue;
    }
    ++used;
    worst = std::max(worst, std::abs(kw.signed_residual));
  }
  const double t = seconds_since(t0);
  std::string d = "worst |C_B + E_F - H_A| = " + g(worst) + " over " + std::to_string(used) + " converged states";
  d += excluded ? "; excluded (not converged):" + skipped : "; none excluded";
  return {used > 0 && worst <= tol::koashi_winter && t < limit_s::koashi_winter, timed(d, t, limit_s::koashi_winter)};
}

// ---------------------------------------------------------------- 7

Outcome channel_suite() {
  const SuiteParams sp;
  int eq_rows = 0, eq_fail = 0, cub_rows = 0, cub_fail = 0, range_rows = 0, range_fail = 0;
  for (const auto& c : suite_run("T2", sp).checks)
    if ((c.family == "identity_sharp" || c.family == "pair_swap_sharp") && c.relation == Relation::eq) {
      ++eq_rows;
      if (std::abs(c.lhs - c.rhs) > tol::relative * std::abs(c.rhs)) ++eq_fail;
    }
  for (const auto& c : suite_run("C-UB", sp).checks) {
    ++cub_rows;
    if (!c.passed()) ++cub_fail;
  }
  for (const auto& c : suite_run("C12", sp).checks)
    if (c.name.rfind("|I_c|", 0) == 0) {
      ++range_rows;
      if (!c.passed()) ++range_fail;
    }
  Rng rng(707);
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 3;
    const auto phi = random_channel(rng, d, 1 + t % 4);
    const auto rho = rng.density(d, 1 + t % d);
    ++range_rows;
    try {
      const double ic = coherent_information(phi, rho);
      if (std::abs(ic) > von_neumann_entropy(rho) + tol::inequality) ++range_fail;
    } catch (const Error&) {
      ++range_fail;
    }
  }
  const bool ok = eq_rows > 0 && eq_fail == 0 && cub_rows > 0 && cub_fail == 0 && range_fail == 0;
  return {ok, "output/input loss equality " + std::to_string(eq_rows - eq_fail) + "/" + std::to_string(eq_rows) +
                  " within 5% (identity, pair-swap unitary); C-UB checks " + std::to_string(cub_rows - cub_fail) + "/" +
                  std::to_string(cub_rows) + "; coherent-information range " +
                  std::to_string(range_rows - range_fail) + "/" + std::to_string(range_rows)};
}

// ---------------------------------------------------------------- 8

std::string serialize_all(const SuiteParams& sp) {
  std::string out;
  for (const auto& id : suite_ids()) {
    const SuiteReport r = suite_run(id, sp);
    out += report::to_json(r).dump(2) + report::series_csv(r) + report::checks_csv(r);
  }
  return out;
}

Outcome determinism() {
  SuiteParams sp;
  sp.seed = 13;
  sp.budget = suite_budget(13);
  const std::string a = serialize_all(sp);
  const std::string b = serialize_all(sp);
  size_t first = 0;
  while (first < std::min(a.size(), b.size()) && a[first] == b[first]) ++first;
  const bool same = a == b;
  return {same, same ? "two full runs, " + std::to_string(a.size()) + " bytes each, identical"
                     : "reports differ at byte " + std::to_string(first)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "identity suite", identities},
      {2, "inequality suite", inequalities},
      {3, "energy-constrained sharpness", sharpness},
      {4, "mutual-information sharpness on the lifted sequence", lifted_sharpness},
      {5, "exact optimizer anchors", anchors},
      {6, "Koashi-Winter identity", koashi_winter_identity},
      {7, "channel suite", channel_suite},
      {8, "determinism", determinism},
  };
  int unexpected = 0, failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool blocked = known_blocked.count(c.id) > 0;
    if (!o.passed) ++failed;
    if (o.passed == blocked) ++unexpected;
    std::printf("[%s] criterion %d %s: %s%s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                blocked ? (o.passed ? " [listed as blocked but passed]" : " [known blocked, see decisions ledger]") : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed; %d unexpected outcome(s)\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
