#include "etnckit/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "etnckit/arith.hpp"
#include "etnckit/error.hpp"

namespace etnckit {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& token, const std::string& why) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + why + " in token '" + token + "'");
}

std::int64_t parse_int(const std::string& s, int line, const std::string& token) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) parse_fail(line, token, "bad integer '" + s + "'");
  return v;
}

// "[1,4]", "1,4", "[]"
std::vector<std::string> split_list(std::string s) {
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (s.back() == ',') out.push_back("");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s, int line, const std::string& token) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(s)) out.push_back(parse_int(item, line, token));
  return out;
}

Place parse_place(const std::string& s, int line, const std::string& token) {
  if (s == "inf") return kInfinity;
  auto v = parse_int(s, line, token);
  if (v <= 0) parse_fail(line, token, "bad place '" + s + "'");
  return v;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

[[noreturn]] void invalid(const TowerConfig& cfg, const std::string& key, const std::string& why) {
  auto it = cfg.key_line.find(key);
  std::string where = it == cfg.key_line.end() ? "" : "line " + std::to_string(it->second) + ": ";
  fail(ErrorKind::Input, where + why);
}

}  // namespace

TowerConfig parse_config(const std::string& text, std::int64_t max_conductor) {
  TowerConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool saw_field = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream toks(raw);
    std::vector<std::string> tokens;
    for (std::string t; toks >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    std::string head;
    std::size_t first = 0;
    if (tokens[0] == "field" || tokens[0] == "member") {
      head = tokens[0];
      first = 1;
    }
    std::optional<std::int64_t> f;
    std::vector<std::int64_t> H;
    for (std::size_t i = first; i < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) parse_fail(line, tok, "expected key=value");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (!head.empty()) {
        if (key == "f") f = parse_int(val, line, tok);
        else if (key == "H") H = parse_int_list(val, line, tok);
        else parse_fail(line, tok, "unknown key '" + key + "' for " + head);
        continue;
      }
      if (cfg.key_line.count(key)) parse_fail(line, tok, "duplicate key '" + key + "'");
      cfg.key_line[key] = line;
      if (key == "p") cfg.primes = parse_int_list(val, line, tok);
      else if (key == "T") cfg.T = parse_int_list(val, line, tok);
      else if (key == "k") cfg.k = static_cast<int>(parse_int(val, line, tok));
      else if (key == "stage") {
        auto v = parse_int(val, line, tok);
        if (v < 0) parse_fail(line, tok, "stage must be non-negative");
        cfg.stage = static_cast<std::size_t>(v);
      }
      else if (key == "S_extra") cfg.S_extra = parse_int_list(val, line, tok);
      else if (key == "lattice") {
        if (val == "all-CM") cfg.listed = false;
        else if (val == "listed") cfg.listed = true;
        else parse_fail(line, tok, "lattice must be all-CM or listed");
      } else if (key == "sigma_order") {
        std::vector<Place> order;
        for (const auto& item : split_list(val)) order.push_back(parse_place(item, line, tok));
        cfg.sigma_order = order;
      } else if (key == "perturb") {
        try {
          cfg.perturb = parse_rational(val);
        } catch (const Error&) {
          parse_fail(line, tok, "bad rational '" + val + "'");
        }
      } else {
        parse_fail(line, tok, "unknown key '" + key + "'");
      }
    }
    if (!head.empty()) {
      if (!f) parse_fail(line, tokens[0], head + " needs f=");
      if (head == "field") {
        if (saw_field) parse_fail(line, tokens[0], "second field line");
        saw_field = true;
        cfg.f = *f;
        cfg.H = H;
        cfg.key_line["field"] = line;
      } else {
        cfg.key_line["member#" + std::to_string(cfg.members.size())] = line;
        cfg.members.emplace_back(*f, H);
      }
    }
  }
  if (!saw_field) fail(ErrorKind::Parse, "config has no 'field' line");
  validate_config(cfg, max_conductor);
  return cfg;
}

void validate_config(TowerConfig& cfg, std::int64_t max_conductor) {
  if (cfg.f <= 0) invalid(cfg, "field", "conductor must be positive");
  if (cfg.f > max_conductor)
    invalid(cfg, "field", "conductor " + std::to_string(cfg.f) + " exceeds the bound " + std::to_string(max_conductor) +
                              " (set ETNCKIT_MAX_CONDUCTOR to raise it)");
  try {
    cfg.top = AbelianFieldQ::build(cfg.f, cfg.H, false);
  } catch (const Error& e) {
    invalid(cfg, "field", e.what());
  }
  const auto& K = *cfg.top;
  if (cfg.primes.empty()) invalid(cfg, "p", "p= is required");
  for (auto p : cfg.primes)
    if (!is_prime(p)) invalid(cfg, "p", std::to_string(p) + " is not prime");
  for (auto l : cfg.T) {
    if (!is_prime(l)) invalid(cfg, "T", std::to_string(l) + " is not prime");
    if (K.is_ramified(l)) invalid(cfg, "T", std::to_string(l) + " ramifies in the top field");
  }
  for (auto l : cfg.S_extra) {
    if (!is_prime(l)) invalid(cfg, "S_extra", std::to_string(l) + " is not prime");
    if (std::find(cfg.T.begin(), cfg.T.end(), l) != cfg.T.end()) invalid(cfg, "S_extra", std::to_string(l) + " is also in T");
  }
  if (cfg.k < 1) invalid(cfg, "k", "precision k must be at least 1, got " + std::to_string(cfg.k));
  if (!cfg.listed && !cfg.members.empty()) invalid(cfg, "member#0", "member lines need lattice=listed");

  if (!K.is_cm()) {
    cfg.lattice = FieldLattice{};
    return;
  }
  if (cfg.listed) {
    std::vector<AbelianFieldQ> listed;
    for (std::size_t i = 0; i < cfg.members.size(); ++i) {
      try {
        listed.push_back(AbelianFieldQ::build(cfg.members[i].first, cfg.members[i].second));
      } catch (const Error& e) {
        invalid(cfg, "member#" + std::to_string(i), e.what());
      }
    }
    cfg.lattice = subfield_lattice(K, listed);
  } else {
    cfg.lattice = subfield_lattice(K);
  }
  if (cfg.sigma_order) {
    for (auto p : cfg.primes) {
      auto want = sigma_sets(K, p, {}).Sigma;
      auto got = *cfg.sigma_order;
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) invalid(cfg, "sigma_order", "sigma_order must list Sigma(K) for p = " + std::to_string(p));
    }
  }
}

std::vector<Place> TowerConfig::sigma_order_for(std::int64_t p) const {
  if (sigma_order) return *sigma_order;
  return sigma_sets(*top, p, {}).Sigma;
}

std::string TowerConfig::echo() const {
  std::string s = "field f=" + std::to_string(f) + " H=" + join(H) + " p=" + join(primes) + " T=" + join(T) +
                  " lattice=" + (listed ? "listed" : "all-CM") + " k=" + std::to_string(k);
  if (!S_extra.empty()) s += " S_extra=" + join(S_extra);
  if (sigma_order) s += " sigma_order=" + join(*sigma_order);
  if (perturb) s += " perturb=" + to_string(*perturb);
  return s;
}

}  // namespace etnckit
