#include "iyb/search.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include "iyb/error.hpp"
#include "iyb/parallel.hpp"

namespace iyb {

namespace {

u64 log_p(u64 n, u64 p) {
  u64 k = 0;
  for (; n > 1; n /= p) ++k;
  return k;
}

u64 ipow(u64 p, u64 k) {
  u64 m = 1;
  for (u64 i = 0; i < k; ++i) {
    if (m > (u64{1} << 62) / p) throw ResourceLimit("modulus too large");
    m *= p;
  }
  return m;
}

struct Lifter {
  u64 p;
  u64 modulus;
  HyperplaneMode mode;
  std::mt19937_64 rng;
  std::vector<LevelRecord>* levels;

  // Complementing ideal of (Z/modulus)G, or nullopt with the reason in levels.
  std::optional<HowellBasis> lift(const Group& g) {
    GroupRing r(g, modulus);
    LevelRecord rec;
    rec.order = g.order();
    if (g.order() == 1) {
      rec.outcome = "ok";
      levels->push_back(rec);
      return r.zero();
    }
    if (g.order() == p) {
      HowellBasis i = base_case_ideal(r);
      rec.outcome = verify_transversal(r, i).ok ? "ok" : "not a transversal";
      levels->push_back(rec);
      if (rec.outcome != "ok") return std::nullopt;
      return i;
    }
    std::vector<u64> pool;
    for (u64 z : center(g))
      if (z != 0 && g.element_order(z) == p) pool.push_back(z);
    if (pool.empty()) throw Error("heuristic_lift: no central element of order p");
    u64 n = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    rec.central = n;
    ElementSet nsub;
    for (u64 i = 0, x = 0; i < p; ++i, x = g.mul(x, n)) nsub.push_back(x);
    std::sort(nsub.begin(), nsub.end());
    QuotientGroup q = quotient_group(g, nsub);
    auto below = lift(q.group);
    if (!below) return std::nullopt;
    HowellBasis j = left_ideal_preimage(r, q, *below);
    HowellBasis rad = r.radical(j);
    zk::HyperplaneStream hs(j, rad, r.one_minus(n));
    rec.hyperplanes = hs.size();
    if (hs.size() == 0) {
      rec.outcome = "1-n in rad J";
      levels->push_back(rec);
      return std::nullopt;
    }
    auto accept = [&](const HowellBasis& h) { return r.is_left_ideal(h) && verify_transversal(r, h).ok; };
    if (mode == HyperplaneMode::Random) {
      rec.choice = std::uniform_int_distribution<u64>(0, hs.size() - 1)(rng);
      HowellBasis h = hs.at(rec.choice);
      bool ok = accept(h);
      rec.outcome = ok ? "ok" : "not a transversal";
      levels->push_back(rec);
      if (!ok) return std::nullopt;
      return h;
    }
    for (u64 c = 0; c < hs.size(); ++c) {
      HowellBasis h = hs.at(c);
      if (accept(h)) {
        rec.choice = c;
        rec.outcome = "ok";
        levels->push_back(rec);
        return h;
      }
    }
    rec.outcome = "no hyperplane is a transversal";
    levels->push_back(rec);
    return std::nullopt;
  }
};

RestartRecord run_restart(const Group& g, u64 p, unsigned k, HyperplaneMode mode, u64 seed, u64 restart,
                          std::optional<HowellBasis>& out) {
  RestartRecord rec;
  rec.restart = restart;
  rec.k = k;
  auto t0 = std::chrono::steady_clock::now();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  Lifter lifter{p, ipow(p, k), mode, std::mt19937_64(seq), &rec.levels};
  try {
    out = lifter.lift(g);
  } catch (const ResourceLimit& e) {
    rec.failure = e.what();
  }
  // levels are pushed bottom-up; report them top-down
  std::reverse(rec.levels.begin(), rec.levels.end());
  if (out) {
    rec.success = true;
  } else if (rec.failure.empty()) {
    for (const auto& l : rec.levels)
      if (l.outcome != "ok") rec.failure = l.outcome + " at order " + std::to_string(l.order);
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

nlohmann::json trace_json(const SearchTrace& t) {
  nlohmann::json j;
  j["seed"] = t.seed;
  j["winner"] = t.winner ? nlohmann::json(*t.winner) : nlohmann::json(nullptr);
  j["restarts"] = nlohmann::json::array();
  for (const auto& r : t.restarts) {
    nlohmann::json jr{{"restart", r.restart}, {"k", r.k}, {"success", r.success}, {"failure", r.failure},
                      {"seconds", r.seconds}};
    jr["levels"] = nlohmann::json::array();
    for (const auto& l : r.levels)
      jr["levels"].push_back({{"order", l.order}, {"central", l.central}, {"hyperplanes", l.hyperplanes},
                              {"choice", l.choice}, {"outcome", l.outcome}});
    j["restarts"].push_back(std::move(jr));
  }
  return j;
}

HowellBasis base_case_ideal(const GroupRing& r) {
  u64 p = r.group().order();
  if (!is_prime(p)) throw Error("base_case_ideal: group order must be prime");
  return zk::sum(r.omega(2), zk::scale(r.omega(1), p));
}

RestartRecord replay_restart(const Group& g, const SearchConfig& cfg, u64 restart, std::optional<HowellBasis>* ideal) {
  u64 p = prime_power_base(g.order());
  if (p == 0) throw ConstructionError("heuristic_lift: group order is not a prime power");
  unsigned k = cfg.k ? cfg.k : static_cast<unsigned>(log_p(g.order(), p));
  std::optional<HowellBasis> out;
  RestartRecord rec = run_restart(g, p, k, cfg.hyperplanes, cfg.seed, restart, out);
  if (!out && rec.failure.find("not a transversal") != std::string::npos) {
    std::optional<HowellBasis> retry;
    RestartRecord again = run_restart(g, p, k + 1, cfg.hyperplanes, cfg.seed, restart, retry);
    again.failure = again.success ? "" : again.failure + " (after retry at k+1)";
    rec = std::move(again);
    out = std::move(retry);
  }
  if (ideal) *ideal = std::move(out);
  return rec;
}

SearchResult heuristic_lift(const Group& g, const SearchConfig& cfg) {
  u64 p = prime_power_base(g.order());
  if (g.order() == 1) p = 2;
  if (p == 0) throw ConstructionError("heuristic_lift: group order is not a prime power");
  if (g.order() > cfg.max_order) throw ResourceLimit("heuristic_lift: group order above the configured bound");
  if (cfg.max_restarts == 0) throw ConstructionError("heuristic_lift: no restarts allowed");

  struct Slot {
    RestartRecord rec;
    std::optional<HowellBasis> ideal;
    bool done = false;
  };
  std::vector<Slot> slots(cfg.max_restarts);
  std::atomic<u64> next{0};
  std::atomic<u64> best{cfg.max_restarts};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (;;) {
      u64 i = next.fetch_add(1);
      if (i >= cfg.max_restarts || i > best.load() || stop.load()) return;
      Slot& s = slots[i];
      s.rec = replay_restart(g, cfg, i, &s.ideal);
      if (s.ideal) {
        // final independent check before anything is accepted
        unsigned k = s.rec.k;
        GroupRing r(g, ipow(p, k));
        try {
          IYBStructure st = ideal_to_structure(r, *s.ideal);
          Report rep = verify_structure(st);
          if (!rep.ok) throw ConstructionError(rep.summary());
        } catch (const ConstructionError& e) {
          s.rec.success = false;
          s.rec.failure = std::string("final verification: ") + e.what();
          s.ideal.reset();
        }
      }
      s.done = true;
      if (s.ideal) {
        u64 cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        if (!cfg.deterministic) stop = true;
      }
    }
  };
  unsigned jobs = cfg.jobs ? cfg.jobs : default_jobs();
  jobs = std::max(1u, std::min(jobs, cfg.max_restarts));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchTrace trace;
  trace.seed = cfg.seed;
  for (auto& s : slots)
    if (s.done) trace.restarts.push_back(s.rec);
  u64 w = best.load();
  if (w >= cfg.max_restarts)
    throw ConstructionError("heuristic_lift: inconclusive, all " + std::to_string(trace.restarts.size()) +
                            " restarts failed");
  trace.winner = w;
  Slot& win = slots[w];
  GroupRing r(g, ipow(p, win.rec.k));
  IYBStructure st = ideal_to_structure(r, *win.ideal);
  return SearchResult{std::move(r), std::move(*win.ideal), std::move(st), std::move(trace), w, win.rec.k};
}

std::vector<HowellBasis> brute_force_ideals(const Group& g, unsigned k, std::size_t limit) {
  if (g.order() == 1) return {};
  u64 p = prime_power_base(g.order());
  if (p == 0) throw ConstructionError("brute_force_ideals: group order is not a prime power");
  if (k == 0) k = static_cast<unsigned>(log_p(g.order(), p));
  GroupRing r(g, ipow(p, k), 64);
  const HowellBasis& w = r.omega(1);
  if (!w.size().fits_u64() || w.size().to_u64() > (u64{1} << 20))
    throw ResourceLimit("brute_force_ideals: omega has more than 2^20 elements");
  const Cardinality target = w.size() / Cardinality::of(g.order());
  HowellBasis bottom = r.left_closure(zk::scale(w, g.order()));
  auto keep = [&](const HowellBasis& x) {
    Cardinality s = x.size();
    // |X| <= |omega| / |G|
    return s.fits_u64() && target.fits_u64() && s.to_u64() <= target.to_u64();
  };
  auto close = [&](HowellBasis b) { return r.left_closure(b); };
  std::vector<HowellBasis> out;
  for (auto& x : zk::enumerate_submodules(w, bottom, keep, close, limit))
    if (x.size() == target && verify_transversal(r, x).ok) out.push_back(std::move(x));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

SearchOutcome structure_outcome(IYBStructure s, const std::string& strategy, const nlohmann::json& params) {
  nlohmann::json cert = structure_certificate(s, Provenance{"iyb-search", params, std::nullopt});
  return SearchOutcome{std::move(s), std::move(cert), strategy, std::nullopt};
}

}  // namespace

SearchOutcome iyb_search(const Group& g, const SearchHints& hints, const SearchConfig& cfg) {
  nlohmann::json params{{"strategy", ""}, {"seed", cfg.seed}};
  if (hints.semidirect) {
    const GroupAction& act = *hints.semidirect;
    Group built = Group::semidirect(act);
    if (!built.same_as(g) && built.order() != g.order())
      throw ConstructionError("iyb_search: hinted decomposition does not match the group");
    const Group& n = act.target();
    const Group& h = act.actor();
    if (std::gcd(n.order(), h.order()) != 1) throw ConstructionError("iyb_search: hinted decomposition is not coprime");
    auto cls = nilpotency_class(n);
    IYBStructure sn;
    std::string how;
    if (n.order() % 2 == 1 && cls && *cls <= 2) {
      sn = class2_odd(n, &act);
      how = "class2-odd";
    } else if (prime_power_base(n.order()) != 0 && cls && *cls <= 2) {
      sn = class2_equivariant_sandling(act).structure;
      how = "sandling";
    } else {
      throw ConstructionError("iyb_search: N must be a class-2 p-group or of odd order and class 2");
    }
    SearchOutcome sh = iyb_search(h, {}, cfg);
    IYBStructure s = combine_semidirect(sh.structure, sn, act);
    params["strategy"] = "semidirect(" + how + ", " + sh.strategy + ")";
    return structure_outcome(std::move(s), params["strategy"], params);
  }
  if (g.order() == 1) {
    params["strategy"] = "trivial";
    return structure_outcome(make_structure(GModule::trivial(g, {}), [](u64) { return Vec{}; }), "trivial", params);
  }
  auto cls = nilpotency_class(g);
  if (g.order() % 2 == 1 && cls && *cls <= 2 && g.order() <= (u64{1} << 16)) {
    params["strategy"] = "class2-odd";
    return structure_outcome(class2_odd(g), "class2-odd", params);
  }
  if (prime_power_base(g.order()) != 0) {
    SearchResult r = heuristic_lift(g, cfg);
    nlohmann::json hp{{"seed", cfg.seed}, {"restart", r.restart}, {"k", r.k}, {"max_restarts", cfg.max_restarts}};
    nlohmann::json cert = ideal_certificate(r.ring, r.ideal, nullptr, Provenance{"heuristic", hp, cfg.seed});
    return SearchOutcome{std::move(r.structure), std::move(cert), "heuristic", std::move(r.trace)};
  }
  throw ConstructionError("iyb_search: no applicable strategy (give a coprime N x| H hint)");
}

}  // namespace iyb
