// iyb: construct, search for and verify bijective 1-cocycles.
//
// Exit codes: 0 success or verified, 1 verification failed,
// 2 construction or search failed, 3 parse or I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "iyb/certificate.hpp"
#include "iyb/constructors.hpp"
#include "iyb/error.hpp"
#include "iyb/parallel.hpp"
#include "iyb/search.hpp"
#include "selftest.hpp"

using namespace iyb;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kConstruction = 2, kParse = 3;

bool g_json = false;

// Human report on stderr, machine result on stdout when --json is set.
int finish(int code, json result) {
  result["exit_code"] = code;
  if (g_json) std::cout << result.dump() << "\n";
  return code;
}

std::string set_summary(const ElementSet& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t i = 0; i < s.size() && i < 16; ++i) o << (i ? "," : "") << s[i];
  if (s.size() > 16) o << ",...";
  o << "}";
  return o.str();
}

u64 perm_order(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  u64 order = 1;
  for (u64 x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    u64 len = 0;
    for (u64 y = x; !seen[y]; y = p[y]) {
      seen[y] = 1;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

// Action file with an optional actor spec. Without one the file must hold a
// single permutation and the actor is the cyclic group of its order.
GroupAction load_action(const std::string& path, const std::string& actor_spec, const Group& target) {
  if (!actor_spec.empty()) return read_action_file(path, parse_group_spec(actor_spec), target);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open action file " + path);
  std::vector<Perm> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    Perm p;
    u64 v;
    while (ls >> v) p.push_back(v);
    if (!ls.eof()) throw ParseError("action file " + path + ": non-integer entry");
    if (!p.empty()) lines.push_back(std::move(p));
  }
  if (lines.size() != 1) throw ParseError("action file " + path + " has several generators; pass --actor");
  if (lines[0].size() != target.order()) throw ParseError("action file " + path + ": wrong permutation length");
  return read_action_file(path, Group::cyclic(perm_order(lines[0])), target);
}

int emit_structure(const IYBStructure& s, const std::string& builder, const json& params, const std::string& out) {
  require_verified(s, builder);
  json cert = structure_certificate(s, Provenance{builder, params, std::nullopt});
  if (!out.empty()) write_certificate(cert, out);
  std::cerr << builder << ": verified structure on a group of order " << s.group().order() << ", |M| = "
            << s.module.size().str() << (out.empty() ? "" : ", written to " + out) << "\n";
  return finish(kOk, {{"builder", builder}, {"order", s.group().order()}, {"output", out}});
}

IYBStructure structure_from_file(const std::string& path) {
  CertificateCheck chk = verify_certificate(read_certificate(path));
  if (!chk.report.ok) throw ConstructionError(path + " does not verify: " + chk.report.summary());
  if (!chk.structure) throw ParseError(path + " holds no structure");
  return *chk.structure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, search for and verify bijective 1-cocycles (IYB structures) of finite groups."};
  app.require_subcommand(1);
  unsigned jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads (default: IYB_JOBS or all cores)");
  app.add_flag("--json", g_json, "Print a JSON result on stdout");

  // info
  auto* info = app.add_subcommand("info", "Structural invariants of a group");
  std::string info_group;
  info->add_option("--group", info_group, "Group spec")->required();

  // construct
  auto* construct = app.add_subcommand("construct", "Build a verified structure and write its certificate");
  construct->require_subcommand(1);
  std::string out;
  auto* c_hd = construct->add_subcommand("hertweck-d", "Structure on the Heisenberg group mod q, equivariant under A");
  u64 q = 0;
  bool any_q = false;
  c_hd->add_option("--q", q, "Odd prime, 1 mod 4")->required();
  c_hd->add_flag("--allow-any-odd-q", any_q, "Accept any odd prime q");
  c_hd->add_option("-o,--output", out, "Certificate path");

  auto* c_odd = construct->add_subcommand("class2-odd", "Odd group of class at most 2");
  std::string group_spec, action_path, actor_spec;
  c_odd->add_option("--group", group_spec)->required();
  c_odd->add_option("--action", action_path, "Action file for equivariance");
  c_odd->add_option("--actor", actor_spec, "Acting group spec");
  c_odd->add_option("-o,--output", out);

  auto* c_sand = construct->add_subcommand("sandling", "Equivariant structure on a class-2 p-group from a complementing ideal");
  unsigned k_factor = 1;
  std::string ideal_out;
  c_sand->add_option("--group", group_spec)->required();
  c_sand->add_option("--action", action_path, "Action file")->required();
  c_sand->add_option("--actor", actor_spec, "Acting group spec (default: cyclic of the permutation's order)");
  c_sand->add_option("--k-factor", k_factor, "Modulus exponent is k-factor times log_p |N|");
  c_sand->add_option("--ideal-out", ideal_out, "Also write the ideal certificate");
  c_sand->add_option("-o,--output", out);

  auto* c_sdp = construct->add_subcommand("semidirect", "Combine an equivariant structure on N with one on H");
  std::string n_cert, h_cert;
  c_sdp->add_option("--normal", n_cert, "Certificate of the structure on N, equivariant under H")->required();
  c_sdp->add_option("--complement", h_cert, "Certificate of the structure on H")->required();
  c_sdp->add_option("-o,--output", out);

  auto* c_pow = construct->add_subcommand("power", "Coordinatewise structure on G^n");
  std::string base_cert;
  unsigned power_n = 2;
  c_pow->add_option("--cert", base_cert, "Certificate of the structure on G")->required();
  c_pow->add_option("--n", power_n, "Exponent")->required()->check(CLI::Range(1u, 8u));
  c_pow->add_option("-o,--output", out);

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a certificate file");
  std::string verify_path;
  bool full = false;
  verify->add_option("path", verify_path)->required();
  verify->add_flag("--full", full, "Check the cocycle law on all pairs");

  // search
  auto* search = app.add_subcommand("search", "Search for complementing ideals");
  search->require_subcommand(1);
  auto* s_heur = search->add_subcommand("heuristic", "Randomized lifting along central quotients");
  SearchConfig cfg;
  std::string trace_path, hyper = "random";
  bool deterministic = false;
  s_heur->add_option("--group", group_spec)->required();
  s_heur->add_option("--seed", cfg.seed);
  s_heur->add_option("--restarts", cfg.max_restarts);
  s_heur->add_option("--k", cfg.k, "Modulus exponent (default log_p |G|)");
  s_heur->add_flag("--deterministic", deterministic, "Report the lowest successful restart");
  s_heur->add_option("--hyperplanes", hyper)->check(CLI::IsMember({"random", "exhaustive"}));
  s_heur->add_option("--trace", trace_path, "Write the search trace");
  s_heur->add_option("-o,--output", out);

  auto* s_brute = search->add_subcommand("brute", "All complementing ideals of a tiny group");
  unsigned brute_k = 0;
  s_brute->add_option("--group", group_spec)->required();
  s_brute->add_option("--k", brute_k)->required();
  s_brute->add_option("-o,--output", out);

  auto* s_auto = search->add_subcommand("auto", "Pick a strategy; N x| H is given by --normal, --complement, --action");
  std::string n_spec, h_spec;
  s_auto->add_option("--group", group_spec);
  s_auto->add_option("--normal", n_spec, "Spec of N");
  s_auto->add_option("--complement", h_spec, "Spec of H");
  s_auto->add_option("--action", action_path);
  s_auto->add_option("--seed", cfg.seed);
  s_auto->add_option("-o,--output", out);

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest::Options st;
  selftest->add_flag("--quick", st.quick, "Reduced instances");
  selftest->add_option("--workdir", st.workdir, "Keep emitted files here");
  selftest->add_flag("--verbose", st.verbose);

  // export
  auto* export_table = app.add_subcommand("export-table", "Write the Cayley table of a group");
  export_table->add_option("--group", group_spec)->required();
  export_table->add_option("-o,--output", out)->required();

  auto* export_action = app.add_subcommand("export-action", "Write an automorphism of the Heisenberg group as an action file");
  std::string which;
  export_action->add_option("--q", q)->required();
  export_action->add_option("--automorphism", which)->required()->check(CLI::IsMember({"alpha1", "alpha2", "tau", "all"}));
  export_action->add_option("-o,--output", out)->required();

  // global options are accepted after the subcommand as well
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  if (jobs) set_default_jobs(jobs);

  try {
    if (*info) {
      Group g = parse_group_spec(info_group);
      auto inv = structural_invariants(g);
      std::cerr << "group " << g.name() << "\norder " << g.order() << "\n|Z| " << inv.center.size() << " "
                << set_summary(inv.center) << "\n|[G,G]| " << inv.derived.size() << " " << set_summary(inv.derived)
                << "\nclass " << (inv.nilpotency_class ? std::to_string(*inv.nilpotency_class) : "not nilpotent")
                << "\nelement orders";
      for (auto [o, c] : inv.element_orders) std::cerr << " " << o << ":" << c;
      std::cerr << "\n";
      json orders = json::object();
      for (auto [o, c] : inv.element_orders) orders[std::to_string(o)] = c;
      return finish(kOk, {{"order", g.order()},
                          {"center", inv.center.size()},
                          {"derived", inv.derived.size()},
                          {"class", inv.nilpotency_class ? json(*inv.nilpotency_class) : json(nullptr)},
                          {"element_orders", orders}});
    }

    if (*c_hd) {
      HertweckGroups h = hertweck_groups(q);
      IYBStructure s = hertweck_d_structure(h, any_q);
      return emit_structure(s, "hertweck-d", {{"q", q}, {"zeta", h.zeta}, {"allow_any_odd_q", any_q}}, out);
    }
    if (*c_odd) {
      Group g = parse_group_spec(group_spec);
      json params{{"group", group_spec}};
      if (!action_path.empty()) {
        GroupAction act = load_action(action_path, actor_spec, g);
        params["actor"] = act.actor().descriptor();
        return emit_structure(class2_odd(g, &act), "class2-odd", params, out);
      }
      return emit_structure(class2_odd(g), "class2-odd", params, out);
    }
    if (*c_sand) {
      Group g = parse_group_spec(group_spec);
      GroupAction act = load_action(action_path, actor_spec, g);
      SandlingResult res = class2_equivariant_sandling(act, k_factor);
      json params{{"group", group_spec}, {"actor", act.actor().descriptor()}, {"k_factor", k_factor}};
      std::cerr << "sandling: [omega : I] = " << res.transversal.index.str() << ", "
                << res.transversal.pairwise_tests << " pairwise tests\n";
      if (!ideal_out.empty())
        write_certificate(ideal_certificate(res.ring, res.ideal, &act, Provenance{"sandling", params, std::nullopt}),
                          ideal_out);
      return emit_structure(res.structure, "sandling", params, out);
    }
    if (*c_sdp) {
      IYBStructure sn = structure_from_file(n_cert);
      IYBStructure sh = structure_from_file(h_cert);
      if (!sn.equivariance) throw ConstructionError(n_cert + " carries no action");
      const GroupAction& act = sn.equivariance->action;
      if (act.actor().descriptor() != sh.group().descriptor())
        throw ConstructionError("the group of " + h_cert + " is not the acting group of " + n_cert);
      return emit_structure(combine_semidirect(sh, sn, act), "semidirect", {{"n", n_cert}, {"h", h_cert}}, out);
    }
    if (*c_pow) {
      IYBStructure s = structure_from_file(base_cert);
      // without an action the power is equivariant under S_n alone
      if (!s.equivariance) s.equivariance = Equivariance{GroupAction::trivial(Group::trivial(), s.group()), {}};
      return emit_structure(power_wreath(s, power_n), "power", {{"base", base_cert}, {"n", power_n}}, out);
    }

    if (*verify) {
      json cert = read_certificate(verify_path);
      VerifyOptions vo;
      if (full) {
        vo.mode = CocycleMode::Full;
        vo.full_limit = ~u64{0};
      }
      CertificateCheck chk = verify_certificate(cert, vo);
      std::cerr << verify_path << ": " << chk.kind << ", " << (chk.report.ok ? "verified" : "FAILED " + chk.report.summary())
                << "\n";
      for (const auto& n : chk.report.notes) std::cerr << "  " << n << "\n";
      return finish(chk.report.ok ? kOk : kFailed,
                    {{"kind", chk.kind}, {"ok", chk.report.ok}, {"check", chk.report.check}, {"witness", chk.report.witness}});
    }

    if (*s_heur) {
      Group g = parse_group_spec(group_spec);
      cfg.deterministic = deterministic;
      cfg.hyperplanes = hyper == "exhaustive" ? HyperplaneMode::Exhaustive : HyperplaneMode::Random;
      cfg.jobs = jobs;
      SearchResult r = [&] {
        try {
          return heuristic_lift(g, cfg);
        } catch (const ConstructionError&) {
          if (!trace_path.empty()) {
            // record the failed restarts; replay is cheap next to the search
            SearchTrace t;
            t.seed = cfg.seed;
            for (u64 i = 0; i < cfg.max_restarts; ++i) t.restarts.push_back(replay_restart(g, cfg, i));
            std::ofstream(trace_path) << trace_json(t).dump(1) << "\n";
          }
          throw;
        }
      }();
      json params{{"group", group_spec}, {"restart", r.restart}, {"k", r.k}, {"max_restarts", cfg.max_restarts},
                  {"hyperplanes", hyper}, {"deterministic", deterministic}};
      json cert = ideal_certificate(r.ring, r.ideal, nullptr, Provenance{"heuristic", params, cfg.seed});
      if (!out.empty()) write_certificate(cert, out);
      if (!trace_path.empty()) {
        std::ofstream t(trace_path);
        if (!t) throw ParseError("cannot write " + trace_path);
        t << trace_json(r.trace).dump(1) << "\n";
      }
      std::cerr << "heuristic: success at restart " << r.restart << " with k = " << r.k << " after "
                << r.trace.restarts.size() << " restarts\n";
      return finish(kOk, {{"restart", r.restart}, {"k", r.k}, {"output", out}});
    }
    if (*s_brute) {
      Group g = parse_group_spec(group_spec);
      auto list = brute_force_ideals(g, brute_k);
      json rows = json::array();
      for (const auto& x : list) rows.push_back(x.rows());
      json doc{{"group", g.descriptor()}, {"k", brute_k}, {"count", list.size()}, {"ideals", rows}};
      if (!out.empty()) std::ofstream(out) << doc.dump() << "\n";
      std::cerr << "brute: " << list.size() << " complementing ideals\n";
      return finish(kOk, {{"count", list.size()}, {"output", out}});
    }
    if (*s_auto) {
      SearchHints hints;
      Group g;
      if (!n_spec.empty() || !h_spec.empty()) {
        if (n_spec.empty() || h_spec.empty() || action_path.empty())
          throw ParseError("a decomposition needs --normal, --complement and --action");
        Group n = parse_group_spec(n_spec);
        hints.semidirect = read_action_file(action_path, parse_group_spec(h_spec), n);
        g = Group::semidirect(*hints.semidirect);
      } else {
        if (group_spec.empty()) throw ParseError("give --group or a decomposition");
        g = parse_group_spec(group_spec);
      }
      cfg.jobs = jobs;
      SearchOutcome o = iyb_search(g, hints, cfg);
      CertificateCheck chk = verify_certificate(o.certificate);
      if (!chk.report.ok) throw ConstructionError("search result does not verify: " + chk.report.summary());
      if (!out.empty()) write_certificate(o.certificate, out);
      std::cerr << "search: " << o.strategy << ", verified, order " << g.order() << "\n";
      return finish(kOk, {{"strategy", o.strategy}, {"order", g.order()}, {"output", out}});
    }

    if (*selftest) {
      st.jobs = jobs;
      auto results = selftest::run(st);
      bool all = true;
      double total = 0;
      json items = json::array();
      for (const auto& c : results) {
        std::cerr << selftest::format_line(c) << "\n";
        all = all && c.pass;
        total += c.seconds;
        items.push_back({{"id", c.id}, {"pass", c.pass}, {"seconds", c.seconds}, {"detail", c.detail}});
      }
      std::cerr << (all ? "all criteria passed" : "FAILURES") << ", runtime " << total << " s\n";
      return finish(all ? kOk : kFailed, {{"criteria", items}, {"seconds", total}});
    }

    if (*export_table) {
      write_group_table(parse_group_spec(group_spec), out);
      return finish(kOk, {{"output", out}});
    }
    if (*export_action) {
      HertweckGroups h = hertweck_groups(q);
      const auto& gens = h.a.generators();
      GroupAction act = which == "all" ? h.action
                                       : h.action.pull_back(Group::cyclic(which == "tau" ? 2 : q - 1),
                                                            {gens[which == "alpha1" ? 0 : which == "alpha2" ? 1 : 2]});
      write_action_file(act, out);
      return finish(kOk, {{"output", out}});
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finish(kParse, {{"error", e.what()}});
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return finish(kConstruction, {{"error", e.what()}});
  } catch (const ResourceLimit& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return finish(kConstruction, {{"error", e.what()}});
  } catch (const Error& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return finish(kConstruction, {{"error", e.what()}});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finish(kParse, {{"error", e.what()}});
  }
  return kOk;
}
