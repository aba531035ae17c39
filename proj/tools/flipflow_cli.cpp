// Command-line surface for the orientation / submodular-flow toolkit.
//
// Exit codes: 0 = a verdict was produced (positive or negative),
// 1 = input error, 2 = capacity exceeded, 3 = internal invariant failed.

#include <array>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flipflow/errors.hpp"
#include "flipflow/generators.hpp"
#include "flipflow/instance_io.hpp"
#include "flipflow/oracles.hpp"
#include "flipflow/report.hpp"
#include "flipflow/solvers.hpp"

namespace ff = flipflow;

namespace {

ff::SubmodularOracle empty_oracle(int n) {
  return ff::constant_oracle(ff::CrossingFamily::explicit_family({}, n), 0);
}

std::vector<ff::Bound> broadcast_bound(std::optional<long long> v, int m) {
  return std::vector<ff::Bound>(m, v ? ff::Bound(*v) : ff::Bound());
}

std::string arc_list(const ff::ArcSet& s) {
  return s.to_string() + " (" + std::to_string(s.count()) + " arcs)";
}

void print_flip_report(const ff::Digraph& d, const ff::FlipCertificate& cert) {
  ff::CertificateReport rep;
  rep.verdict = "flip found";
  rep.witness("J = " + arc_list(cert.j));
  rep.witness("k = " + std::to_string(cert.k) +
              ", tau = " + std::to_string(cert.tau));
  rep.check(cert.k_flip_verified, "flip(d, J) is k-arc-connected");
  rep.check(cert.family_constraints_verified,
            "d_J+(U) - d_J-(U) <= f(U) on every family member");
  rep.check(ff::is_k_flip(d, cert.j.complement(), cert.k),
            "complement is also a k-arc-connected flip");
  if (d.vertex_count() <= ff::kSubsetEnumerationCap)
    rep.check(ff::is_k_dijoin(d, cert.j, cert.k), "J is a k-dijoin");
  std::cout << rep.to_text();
}

void print_decomposition(const ff::DecompositionResult& dec) {
  ff::CertificateReport rep;
  rep.verdict = "decomposition found";
  rep.witness("part1 (" + dec.role1 + ") = " + arc_list(dec.part1));
  rep.witness("part2 (" + dec.role2 + ") = " + arc_list(dec.part2));
  rep.check(dec.verified, "both parts verified against their definitions");
  std::cout << rep.to_text();
}

void print_hypothesis_violation(const ff::HypothesisViolation& v) {
  ff::CertificateReport rep;
  rep.verdict = "hypothesis violated";
  rep.witness("U = " + v.u.to_string());
  rep.witness("slack = " + ff::rat_to_string(v.slack));
  rep.witness("inequality: " + v.inequality);
  std::cout << rep.to_text();
}

void print_two_system_result(const ff::TwoSystemResult& res) {
  if (const auto* sol = std::get_if<ff::IntegralSolution>(&res)) {
    ff::CertificateReport rep;
    rep.verdict = "integral solution";
    std::string ys;
    for (long long y : sol->y) ys += (ys.empty() ? "" : " ") + std::to_string(y);
    rep.witness("y = (" + ys + ")");
    rep.check(true, "re-verified against every family member and bound");
    std::cout << rep.to_text();
  } else if (const auto* viol = std::get_if<ff::ViolatingSet>(&res)) {
    ff::CertificateReport rep;
    rep.verdict = "cut condition violated";
    rep.witness("U = " + viol->u.to_string());
    rep.witness("b(U) = " + std::to_string(viol->lhs) +
                " > u(delta+(U)) - l(delta-(U)) = " + std::to_string(viol->rhs));
    std::cout << rep.to_text();
  } else if (std::holds_alternative<ff::TwoSystemInfeasible>(res)) {
    std::cout << "verdict: infeasible (the base polyhedron face is empty)\n";
  } else if (const auto* pre = std::get_if<ff::PreconditionViolated>(&res)) {
    std::cout << "verdict: precondition violated\n"
              << "witness: isolated set U = " << pre->u.to_string()
              << " needs min f_i(U) <= 0\n";
  } else if (const auto* obj = std::get_if<ff::ObjectiveNotRealizable>(&res)) {
    std::cout << "verdict: objective not realizable by potentials\n"
              << "witness: cycle with nonzero signed objective sum, arcs";
    for (int a : obj->cycle_arcs) std::cout << " " << a;
    std::cout << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"k-arc-connected flips, dijoin decompositions, and integral "
               "two-system submodular flows with verified certificates"};
  app.require_subcommand(1);

  // --- verify-hypothesis ---
  auto* vh = app.add_subcommand("verify-hypothesis",
                                "check the cut inequalities for (tau, k)");
  std::string vh_in;
  int vh_tau = 2, vh_k = 1;
  bool vh_weighted = false;
  vh->add_option("--in", vh_in)->required();
  vh->add_option("--tau", vh_tau)->required();
  vh->add_option("--k", vh_k)->required();
  vh->add_flag("--weighted", vh_weighted);
  vh->callback([&] {
    ff::Instance inst = ff::load_instance(vh_in);
    ff::HypothesisResult res =
        vh_weighted ? ff::verify_weighted_hypothesis(inst.d, inst.d.weights(),
                                                     vh_tau, vh_k)
                    : ff::verify_hypothesis(inst.d, vh_tau, vh_k);
    if (!res) {
      std::cout << "verdict: OK\n";
    } else {
      print_hypothesis_violation(*res);
    }
  });

  // --- find-flip ---
  auto* flip_cmd = app.add_subcommand("find-flip",
                                      "find a k-arc-connected flip");
  std::string ff_in, ff_fn, ff_family;
  int ff_k = 1;
  std::optional<int> ff_tau;
  flip_cmd->add_option("--in", ff_in)->required();
  flip_cmd->add_option("--k", ff_k)->required();
  flip_cmd->add_option("--tau", ff_tau);
  flip_cmd->add_option("--family", ff_family);
  flip_cmd->add_option("--fn", ff_fn);
  flip_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(ff_in);
    int tau = ff_tau ? *ff_tau : 2 * ff_k;
    if (!ff_fn.empty() && !inst.fns.count(ff_fn))
      throw ff::InputError("unknown fn: " + ff_fn);
    if (!ff_family.empty()) {
      if (ff_fn.empty())
        throw ff::InputError("--family needs --fn for the values");
      if (inst.fns.at(ff_fn).family != ff_family)
        throw ff::InputError("fn " + ff_fn + " is defined over family " +
                             inst.fns.at(ff_fn).family + ", not " + ff_family);
    }
    ff::SubmodularOracle f = ff_fn.empty()
                                 ? empty_oracle(inst.d.vertex_count())
                                 : ff::make_oracle(inst, ff_fn);
    try {
      print_flip_report(inst.d, ff::find_k_flip(inst.d, tau, ff_k, f));
    } catch (const ff::HypothesisViolatedError& e) {
      print_hypothesis_violation(e.violation);
    }
  });

  // --- decompose ---
  auto* dec_cmd = app.add_subcommand(
      "decompose", "split the arcs into a k-flip and a (tau-k)-dijoin");
  std::string dec_in;
  int dec_tau = 2, dec_k = 1;
  bool dec_weighted = false;
  dec_cmd->add_option("--in", dec_in)->required();
  dec_cmd->add_option("--tau", dec_tau)->required();
  dec_cmd->add_option("--k", dec_k)->required();
  dec_cmd->add_flag("--weighted", dec_weighted);
  dec_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(dec_in);
    try {
      ff::DecompositionResult dec =
          dec_weighted
              ? ff::weighted_decompose(inst.d, inst.d.weights(), dec_tau, dec_k)
              : ff::decompose_flip_dijoin(inst.d, dec_tau, dec_k);
      print_decomposition(dec);
    } catch (const ff::HypothesisViolatedError& e) {
      print_hypothesis_violation(e.violation);
    }
  });

  // --- orient ---
  auto* orient_cmd =
      app.add_subcommand("orient", "near-Eulerian k-arc-connected flip");
  std::string or_in;
  int or_k = 1;
  orient_cmd->add_option("--in", or_in)->required();
  orient_cmd->add_option("--k", or_k)->required();
  orient_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(or_in);
    try {
      print_flip_report(inst.d, ff::near_eulerian_flip(inst.d, or_k));
    } catch (const ff::ConnectivityTooLowError& e) {
      ff::CertificateReport rep;
      rep.verdict = "underlying graph not 2k-edge-connected";
      rep.witness("cut U = " + e.cut.to_string());
      rep.witness("size " + std::to_string(e.have) + " < " +
                  std::to_string(e.need));
      std::cout << rep.to_text();
    }
  });

  // --- dijoin-pair ---
  auto* pair_cmd = app.add_subcommand(
      "dijoin-pair", "split the arcs into a k-dijoin and a (tau-k)-dijoin");
  std::string dp_in;
  int dp_tau = 2, dp_k = 1;
  pair_cmd->add_option("--in", dp_in)->required();
  pair_cmd->add_option("--tau", dp_tau)->required();
  pair_cmd->add_option("--k", dp_k)->required();
  pair_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(dp_in);
    try {
      print_decomposition(ff::dijoin_pair_decompose(inst.d, dp_tau, dp_k));
    } catch (const ff::ConnectivityTooLowError& e) {
      ff::CertificateReport rep;
      rep.verdict = "underlying graph not tau-edge-connected";
      rep.witness("cut U = " + e.cut.to_string());
      std::cout << rep.to_text();
    }
  });

  // --- solve ---
  auto* solve_cmd = app.add_subcommand(
      "solve", "integral point of the intersection of two flow systems");
  std::string sv_in, sv_sys1, sv_sys2, sv_objective;
  std::optional<long long> sv_lower, sv_upper;
  solve_cmd->add_option("--in", sv_in)->required();
  solve_cmd->add_option("--sys1", sv_sys1)->required();
  solve_cmd->add_option("--sys2", sv_sys2)->required();
  solve_cmd->add_option("--lower", sv_lower);
  solve_cmd->add_option("--upper", sv_upper);
  solve_cmd->add_option("--objective", sv_objective);
  solve_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(sv_in);
    ff::TwoSystemInstance two{
        inst.d, ff::make_oracle(inst, sv_sys1), ff::make_oracle(inst, sv_sys2),
        broadcast_bound(sv_lower, inst.d.arc_count()),
        broadcast_bound(sv_upper, inst.d.arc_count()),
        {}};
    if (!sv_objective.empty())
      two.objective = ff::load_int_vector(sv_objective, inst.d.arc_count());
    print_two_system_result(ff::solve_two_systems(two));
  });

  // --- transship ---
  auto* ts_cmd = app.add_subcommand(
      "transship", "integral b-transshipment within arc bounds");
  std::string ts_in, ts_b;
  std::optional<long long> ts_lower, ts_upper;
  ts_cmd->add_option("--in", ts_in)->required();
  ts_cmd->add_option("--b", ts_b)->required();
  ts_cmd->add_option("--lower", ts_lower);
  ts_cmd->add_option("--upper", ts_upper);
  ts_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(ts_in);
    ff::TransshipmentInstance t{
        inst.d,
        ff::load_int_vector(ts_b, inst.d.vertex_count()),
        broadcast_bound(ts_lower, inst.d.arc_count()),
        broadcast_bound(ts_upper, inst.d.arc_count())};
    auto res = ff::solve_transshipment(t);
    if (const auto* flow = std::get_if<ff::Flow>(&res)) {
      std::string ys;
      for (long long y : flow->y)
        ys += (ys.empty() ? "" : " ") + std::to_string(y);
      std::cout << "verdict: flow\nwitness: y = (" << ys << ")\n";
    } else {
      const auto& viol = std::get<ff::ViolatingSet>(res);
      std::cout << "verdict: infeasible\nwitness: U = " << viol.u.to_string()
                << " with b(U) = " << viol.lhs << " > " << viol.rhs << "\n";
    }
  });

  // --- check ---
  auto* check_cmd =
      app.add_subcommand("check", "boolean predicates with witnesses");
  std::string ck_what, ck_in;
  std::vector<int> ck_set;
  int ck_k = 1;
  check_cmd->add_option("--what", ck_what)
      ->required()
      ->check(CLI::IsMember({"flip", "dijoin", "connectivity"}));
  check_cmd->add_option("--in", ck_in)->required();
  check_cmd->add_option("--set", ck_set);
  check_cmd->add_option("--k", ck_k);
  check_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(ck_in);
    ff::ArcSet j(inst.d.arc_count());
    for (int a : ck_set) {
      if (a < 0 || a >= inst.d.arc_count())
        throw ff::InputError("arc id out of range in --set");
      j.add(a);
    }
    if (ck_what == "connectivity") {
      ff::ConnectivityResult res = ff::arc_connectivity(inst.d);
      bool ok = inst.d.vertex_count() == 1 || res.value >= ck_k;
      std::cout << "verdict: " << (ok ? "true" : "false") << "\n";
      if (res.min_cut)
        std::cout << "witness: min out-degree "
                  << (inst.d.vertex_count() == 1 ? 0 : res.value) << " at U = "
                  << res.min_cut->to_string() << "\n";
    } else if (ck_what == "flip") {
      bool ok = ff::is_k_flip(inst.d, j, ck_k);
      std::cout << "verdict: " << (ok ? "true" : "false") << "\n";
      ff::ConnectivityResult after = ff::arc_connectivity(ff::flip(inst.d, j));
      if (after.min_cut)
        std::cout << "witness: flipped digraph has min out-degree "
                  << after.value << " at U = " << after.min_cut->to_string()
                  << "\n";
    } else {
      bool ok = ff::is_k_dijoin(inst.d, j, ck_k);
      std::cout << "verdict: " << (ok ? "true" : "false") << "\n";
      for (const ff::VertexSet& u : ff::enumerate_dicuts(inst.d)) {
        ff::Cut cut = ff::delta(inst.d, u);
        if ((j & cut.outgoing).count() < ck_k) {
          std::cout << "witness: dicut at U = " << u.to_string() << " met "
                    << (j & cut.outgoing).count() << " < " << ck_k
                    << " times\n";
          break;
        }
      }
    }
  });

  // --- repro ---
  auto* repro_cmd = app.add_subcommand(
      "repro", "reproduce a named example instance and its certificate");
  std::string repro_name;
  repro_cmd->add_option("name", repro_name)->required();
  repro_cmd->callback([&] {
    if (repro_name != "bad-example")
      throw ff::InputError("unknown repro target: " + repro_name);
    ff::Digraph d(6, {{0, 3}, {1, 4}, {2, 5}});
    std::map<ff::VertexSet, long long> t1{{ff::VertexSet::of({0, 1}), 1},
                                          {ff::VertexSet::of({0, 1, 2, 3}), 1}};
    std::map<ff::VertexSet, long long> t2{{ff::VertexSet::of({0, 1}), 1},
                                          {ff::VertexSet::of({0, 1, 2, 4}), 1}};
    ff::TwoSystemInstance inst{d, ff::table_oracle(t1, 6),
                               ff::table_oracle(t2, 6),
                               std::vector<ff::Bound>(3, ff::Bound(0)),
                               std::vector<ff::Bound>(3, ff::Bound(1)),
                               {}};
    std::cout << "system: y_a + y_b <= 1; y_b + y_c <= 1; y_c + y_a <= 1; "
                 "0 <= y <= 1\n";
    for (const auto& fv : ff::fractional_vertex_search(inst)) {
      std::string vals;
      for (const ff::Rat& v : fv.point.values)
        vals += (vals.empty() ? "" : " ") + ff::rat_to_string(v);
      std::cout << "fractional vertex: " << vals
                << " (tight rank " << fv.tight_rank << ")\n";
    }
  });

  // --- search-fractional ---
  auto* frac_cmd = app.add_subcommand(
      "search-fractional", "fractional vertices of P within a box");
  std::string fr_in, fr_sys1, fr_sys2;
  std::vector<long long> fr_box;
  frac_cmd->add_option("--in", fr_in)->required();
  frac_cmd->add_option("--sys1", fr_sys1)->required();
  frac_cmd->add_option("--sys2", fr_sys2)->required();
  frac_cmd->add_option("--box", fr_box)->expected(2)->required();
  frac_cmd->callback([&] {
    ff::Instance inst = ff::load_instance(fr_in);
    ff::TwoSystemInstance two{
        inst.d, ff::make_oracle(inst, fr_sys1), ff::make_oracle(inst, fr_sys2),
        broadcast_bound(fr_box[0], inst.d.arc_count()),
        broadcast_bound(fr_box[1], inst.d.arc_count()),
        {}};
    auto hits = ff::fractional_vertex_search(two);
    std::cout << "fractional vertices: " << hits.size() << "\n";
    for (const auto& fv : hits) {
      std::string vals;
      for (const ff::Rat& v : fv.point.values)
        vals += (vals.empty() ? "" : " ") + ff::rat_to_string(v);
      std::cout << "vertex: " << vals << " (tight rank " << fv.tight_rank
                << ")\n";
    }
  });

  // --- reduce-matroids ---
  auto* mat_cmd = app.add_subcommand(
      "reduce-matroids", "three-matroid reduction and equivalence report");
  std::string mat_catalog;
  mat_cmd->add_option("--catalog", mat_catalog)
      ->required()
      ->check(CLI::IsMember({"uniform-triple", "mixed-partition", "graphic"}));
  mat_cmd->callback([&] {
    auto triple = [&]() -> std::array<ff::MatroidOracle, 3> {
      if (mat_catalog == "uniform-triple")
        return {ff::uniform_matroid(2, 3), ff::uniform_matroid(2, 3),
                ff::uniform_matroid(2, 3)};
      if (mat_catalog == "mixed-partition")
        return {ff::uniform_matroid(2, 4),
                ff::partition_matroid(
                    {ff::VertexSet::of({0, 1}), ff::VertexSet::of({2, 3})},
                    {1, 1}, 4),
                ff::partition_matroid(
                    {ff::VertexSet::of({0, 2}), ff::VertexSet::of({1, 3})},
                    {1, 1}, 4)};
      return {ff::uniform_matroid(2, 4), ff::uniform_matroid(2, 4),
              ff::graphic_matroid(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}})};
    }();
    ff::MatroidReduction red =
        ff::reduce_matroids_to_two_systems(triple[0], triple[1], triple[2]);
    bool basis = ff::has_common_basis(triple[0], triple[1], triple[2]);
    auto y = ff::brute_force_two_system_01(red.instance);
    ff::CertificateReport rep;
    rep.verdict = basis ? "common basis exists" : "no common basis";
    rep.check(basis == y.has_value(),
              "integral solution exists iff a common basis exists");
    if (y) {
      ff::VertexSet decoded = red.decode(*y);
      rep.witness("basis = " + decoded.to_string());
      rep.check(triple[0].is_basis(decoded) && triple[1].is_basis(decoded) &&
                    triple[2].is_basis(decoded),
                "decoded set is a basis in all three matroids");
    }
    std::cout << rep.to_text();
    std::cout << "summary: catalog=" << mat_catalog
              << " equivalence=" << (basis == y.has_value() ? "ok" : "FAIL")
              << "\n";
  });

  // --- gen ---
  auto* gen_cmd = app.add_subcommand("gen", "instance generators");
  std::string gen_model;
  int gen_n = 3, gen_target = 2;
  std::uint64_t gen_seed = 1;
  gen_cmd->add_option("--model", gen_model)
      ->required()
      ->check(CLI::IsMember({"cycle", "bidirected", "random-ec"}));
  gen_cmd->add_option("--n", gen_n)->required();
  gen_cmd->add_option("--target-ec", gen_target);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->callback([&] {
    ff::Digraph d = gen_model == "cycle" ? ff::gen_cycle(gen_n)
                    : gen_model == "bidirected"
                        ? ff::gen_bidirected_cycle(gen_n)
                        : ff::gen_random_ec(gen_n, gen_target, gen_seed);
    std::cout << ff::print_instance(ff::Instance{std::move(d), {}, {}});
  });

  // --- conjecture-search ---
  auto* conj_cmd = app.add_subcommand(
      "conjecture-search", "search for dijoin-decomposition counterexamples");
  int cj_tau = 2, cj_n = 5, cj_trials = 50;
  std::uint64_t cj_seed = 1;
  conj_cmd->add_option("--tau", cj_tau)->required();
  conj_cmd->add_option("--n", cj_n)->required();
  conj_cmd->add_option("--trials", cj_trials)->required();
  conj_cmd->add_option("--seed", cj_seed)->required();
  conj_cmd->callback([&] {
    ff::ConjectureSearchReport rep =
        ff::conjecture_search(cj_tau, cj_n, cj_trials, cj_seed);
    std::cout << "trials: " << rep.trials_run << "\n"
              << "accepted instances (min dicut >= tau): "
              << rep.instances_accepted << "\n"
              << "counterexamples: " << rep.counterexamples.size() << "\n";
    for (const auto& cand : rep.counterexamples) {
      std::cout << "counterexample (k = " << cand.k << ", seed " << cand.seed
                << "):\n"
                << ff::print_instance(ff::Instance{cand.d, {}, {}});
    }
    std::cout << "summary: tau=" << cj_tau << " trials=" << rep.trials_run
              << " accepted=" << rep.instances_accepted
              << " counterexamples=" << rep.counterexamples.size() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are input errors
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ff::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ff::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const ff::InternalInvariantError& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 3;
  } catch (const ff::ReductionInapplicableError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
}
