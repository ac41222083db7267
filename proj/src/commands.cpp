#include "etnckit/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "etnckit/bs_matrix.hpp"
#include "etnckit/error.hpp"
#include "etnckit/euler_family.hpp"
#include "etnckit/fitting.hpp"
#include "etnckit/lvalues.hpp"

namespace etnckit {

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == "ok"; });
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs tasks on up to `jobs` threads; results stay in task order.
std::vector<CheckRecord> run_tasks(const std::vector<std::function<CheckRecord()>>& tasks, int jobs) {
  std::vector<CheckRecord> out(tasks.size());
  auto run_one = [&](std::size_t i) {
    try {
      out[i] = tasks[i]();
    } catch (const Error& e) {
      out[i] = CheckRecord{"task " + std::to_string(i), "error",
                           Json{{"kind", to_string(e.kind())}, {"message", e.what()}}};
    }
  };
  const std::size_t n = tasks.size();
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) run_one(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

// Wraps a task so that errors keep the intended record name.
std::function<CheckRecord()> named(std::string name, std::function<CheckRecord()> body) {
  return [name = std::move(name), body = std::move(body)]() {
    try {
      auto r = body();
      r.name = name;
      return r;
    } catch (const Error& e) {
      return CheckRecord{name, "error", Json{{"kind", to_string(e.kind())}, {"message", e.what()}}};
    }
  };
}

Json base_inputs(const TowerConfig& cfg) {
  Json j;
  j["config"] = cfg.echo();
  Json lat = Json::array();
  for (const auto& E : cfg.lattice.members) lat.push_back(E.descriptor());
  j["lattice"] = lat;
  return j;
}

std::vector<Place> theta_S(const AbelianFieldQ& E, const std::vector<std::int64_t>& extra) {
  std::vector<Place> S{kInfinity};
  for (auto l : E.ramified_primes()) S.push_back(l);
  for (auto l : extra) S.push_back(l);
  std::sort(S.begin() + 1, S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  return S;
}

Json identity_details(const IdentityReport& r, std::int64_t p) {
  Json d;
  d["identity"] = r.identity;
  d["field"] = r.field;
  d["p"] = p;
  d["lhs"] = to_json(r.lhs);
  d["rhs"] = to_json(r.rhs);
  if (!r.ok) d["difference"] = to_json(r.difference);
  return d;
}

void add_tnorm(const TowerConfig& cfg, std::vector<std::function<CheckRecord()>>& tasks) {
  const auto& L = cfg.lattice;
  if (L.empty()) return;
  for (auto p : cfg.primes) {
    auto sigma_prime = sigma_sets(L.members[0], p, cfg.T).SigmaPrime;
    for (auto [i, j] : L.edges) {
      const auto& E = L.members[i];
      const auto& Ep = L.members[j];
      std::string name = "tnorm p=" + std::to_string(p) + " E=" + E.descriptor() + " E'=" + Ep.descriptor();
      tasks.push_back(named(name, [&cfg, E, Ep, p, sigma_prime] {
        std::optional<MinusElement> perturb;
        if (cfg.perturb) perturb = MinusElement::scalar(E.minus_ring(CoefficientRing::rationals()), *cfg.perturb);
        auto r = check_tnorm(Ep, E, p, sigma_prime, perturb ? &*perturb : nullptr);
        auto d = identity_details(r, p);
        d["super"] = Ep.descriptor();
        return CheckRecord{"", r.ok ? "ok" : "fail", d};
      }));
    }
  }
}

void add_st(const TowerConfig& cfg, std::vector<std::function<CheckRecord()>>& tasks) {
  const auto& L = cfg.lattice;
  if (L.empty()) return;
  const auto& K = L.members[0];
  for (auto p : cfg.primes)
    for (const auto& E : L.members)
      for (bool k_level : {false, true}) {
        std::string name = std::string(k_level ? "st-conversion-reduced" : "st-conversion") +
                           " p=" + std::to_string(p) + " E=" + E.descriptor();
        tasks.push_back(named(name, [&cfg, K, E, p, k_level] {
          auto r = check_st_conversion(K, E, p, cfg.T, k_level);
          return CheckRecord{"", r.ok ? "ok" : "fail", identity_details(r, p)};
        }));
      }
}

void add_lemma_tx(std::vector<std::function<CheckRecord()>>& tasks) {
  std::map<std::pair<int, std::int64_t>, std::vector<LocalRWParams>> groups;
  for (auto& P : lemma_tx_sweep(6, 13, 24)) groups[{P.e, P.q}].push_back(P);
  for (auto& [key, cases] : groups) {
    std::string name = "lemma-tx e=" + std::to_string(key.first) + " q=" + std::to_string(key.second);
    tasks.push_back(named(name, [cases] {
      Json failures = Json::array();
      for (const auto& P : cases) {
        auto r = verify_lemma_tx(P);
        if (!r.det_ok || !r.image_ok)
          failures.push_back({{"params", r.params}, {"det_ok", r.det_ok}, {"image_ok", r.image_ok},
                              {"det", to_json(r.det)}, {"expected", to_json(r.expected)}});
      }
      Json d{{"cases", cases.size()}, {"failures", failures}};
      return CheckRecord{"", failures.empty() ? "ok" : "fail", d};
    }));
  }
}

void add_bs(const TowerConfig& cfg, std::vector<std::function<CheckRecord()>>& tasks) {
  tasks.push_back(named("bs-gaussian-fixture", [] {
    auto fx = gaussian_fixture();
    auto u = build_u(fx.A);
    auto ker = kernel_check(fx.A, u);
    auto ord = ord_identity_check(fx.A, u, &fx.theta);
    bool ok = ker.ok && ord.ok && ord.pairing == fx.theta;
    Json d{{"matrix", to_json(fx.A)}, {"theta", to_json(fx.theta)}, {"pairing", to_json(ord.pairing)},
           {"kernel_ok", ker.ok}, {"lifted", u.lifted}};
    return CheckRecord{"", ok ? "ok" : "fail", d};
  }));

  std::vector<MinusRingPtr> rings;
  for (const auto& E : cfg.lattice.members)
    if (E.degree() <= 8) rings.push_back(E.minus_ring(CoefficientRing::integers()));
  if (rings.empty()) rings.push_back(AbelianFieldQ::build(4, {}).minus_ring(CoefficientRing::integers()));
  tasks.push_back(named("bs-random-suite", [rings] {
    std::mt19937_64 rng(0x6574'6e63ULL);
    const int instances = 200;
    int kernel_fail = 0, ord_fail = 0;
    Json first_failure;
    for (int i = 0; i < instances; ++i) {
      const auto& ring = rings[static_cast<std::size_t>(i) % rings.size()];
      std::size_t n = 1 + static_cast<std::size_t>(rng() % 4);
      int real = static_cast<int>(rng() % n);
      int t = real == 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(real + 1));
      auto A = random_place_matrix(ring, n, real, t, 3, rng);
      auto u = build_u(A);
      auto ker = kernel_check(A, u);
      auto ord = ord_identity_check(A, u);
      if (!ker.ok) ++kernel_fail;
      if (!ord.ok) ++ord_fail;
      if ((!ker.ok || !ord.ok) && first_failure.is_null()) first_failure = to_json(A);
    }
    Json d{{"instances", instances}, {"kernel_failures", kernel_fail}, {"ord_failures", ord_fail}};
    if (!first_failure.is_null()) d["first_failure"] = first_failure;
    return CheckRecord{"", kernel_fail == 0 && ord_fail == 0 ? "ok" : "fail", d};
  }));
}

}  // namespace

Report cmd_theta(const TowerConfig& cfg, int jobs) {
  auto t0 = Clock::now();
  Report rep{"theta", base_inputs(cfg), {}, 0};
  std::vector<std::function<CheckRecord()>> tasks;
  for (const auto& E : cfg.lattice.members) {
    tasks.push_back(named("theta " + E.descriptor(), [&cfg, E] {
      auto S = theta_S(E, cfg.S_extra);
      auto th = theta(E, S, cfg.T);
      Json d;
      d["field"] = E.descriptor();
      d["S"] = places_json(S);
      d["T"] = places_json(cfg.T);
      d["dr_condition"] = th.dr_condition;
      d["integral"] = th.integral;
      d["warning"] = th.warning;
      d["minus"] = to_json(th.minus);
      d["value"] = to_json(th.value);
      return CheckRecord{"", "ok", d};
    }));
  }
  rep.checks = run_tasks(tasks, jobs);
  rep.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

Report cmd_verify(const TowerConfig& cfg, const std::string& which, int jobs) {
  const bool all = which == "all";
  require(all || which == "tnorm" || which == "st-conversion" || which == "lemma-tx" || which == "bs",
          ErrorKind::Input, "unknown verify suite '" + which + "' (tnorm, st-conversion, lemma-tx, bs, all)");
  auto t0 = Clock::now();
  Report rep{"verify", base_inputs(cfg), {}, 0};
  rep.inputs["which"] = which;
  std::vector<std::function<CheckRecord()>> tasks;
  if (all || which == "tnorm") add_tnorm(cfg, tasks);
  if (all || which == "st-conversion") add_st(cfg, tasks);
  if (all || which == "lemma-tx") add_lemma_tx(tasks);
  if (all || which == "bs") add_bs(cfg, tasks);
  rep.checks = run_tasks(tasks, jobs);
  rep.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

Report cmd_lift(const TowerConfig& cfg, const std::string& family_text, int jobs) {
  (void)jobs;  // a single linear system
  auto t0 = Clock::now();
  Report rep{"lift", base_inputs(cfg), {}, 0};
  const auto p = cfg.primes.front();
  const auto order = cfg.sigma_order_for(p);
  rep.inputs["p"] = p;
  rep.inputs["k"] = cfg.k;
  rep.inputs["stage"] = cfg.stage;
  rep.inputs["sigma_order"] = places_json(order);

  auto file = read_family(family_text, cfg.lattice, p, cfg.k);
  const auto& fam = file.family;
  auto record = named("lift stage=" + std::to_string(cfg.stage) + " k=" + std::to_string(cfg.k), [&] {
    auto res = lift_family(fam, cfg.stage, cfg.k, order);
    Json d;
    d["feasible"] = res.feasible;
    d["precision"] = res.precision;
    Json edges = Json::array();
    bool compatible = true;
    for (const auto& e : is_norm_compatible(fam)) {
      compatible = compatible && e.ok;
      edges.push_back({{"sub", fam.lattice.members[e.sub].descriptor()},
                       {"super", fam.lattice.members[e.super].descriptor()},
                       {"ok", e.ok},
                       {"vacuous", e.vacuous}});
    }
    d["norm_compatible"] = compatible;
    d["edges"] = edges;
    bool ok;
    if (res.feasible) {
      auto residuals = check_lift(fam, *res.lift, cfg.stage, cfg.k, order);
      bool zero = std::all_of(residuals.begin(), residuals.end(), [](bool b) { return b; });
      d["lift"] = to_json(*res.lift);
      d["residuals_zero"] = zero;
      ok = zero;
    } else {
      Json cert = Json::array();
      for (std::size_t i = 0; i < res.certificate.size(); ++i)
        if (res.certificate[i] != 0)
          cert.push_back({{"condition", res.certificate_labels[i]}, {"weight", res.certificate[i]}});
      d["certificate"] = cert;
      d["certificate_verified"] = res.certificate_verified;
      ok = res.certificate_verified;
    }
    return CheckRecord{"", ok ? "ok" : "fail", d};
  });
  rep.checks.push_back(record());
  rep.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

std::string render_json(const Report& r, bool include_timing) {
  Json j;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", c.status}, {"details", c.details}});
  j["checks"] = checks;
  j["ok"] = r.ok();
  if (include_timing) j["wall_time_seconds"] = r.wall_seconds;
  return j.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  auto join = [](const Json& arr) {
    std::string s;
    for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? ";" : "") + arr[i].get<std::string>();
    return s;
  };
  if (r.command == "theta") {
    out << "field,S,T,dr_condition,integral,warning,minus,status\n";
    for (const auto& c : r.checks) {
      const auto& d = c.details;
      if (c.status != "ok") {
        out << '"' << c.name << "\",,,,,,," << c.status << "\n";
        continue;
      }
      out << '"' << d["field"].get<std::string>() << "\"," << join(d["S"]) << ',' << join(d["T"]) << ','
          << d["dr_condition"] << ',' << d["integral"] << ',' << d["warning"] << ',' << join(d["minus"]["coeffs"])
          << ',' << c.status << "\n";
    }
    return out.str();
  }
  out << "name,status\n";
  for (const auto& c : r.checks) out << '"' << c.name << "\"," << c.status << "\n";
  return out.str();
}

}  // namespace etnckit
