// Copyright 2026 The wigent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wigent/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "wigent/criteria.hpp"
#include "wigent/optimize.hpp"
#include "wigent/oracle.hpp"
#include "wigent/states.hpp"

namespace wigent::cli {

using json = nlohmann::ordered_json;

namespace {

// --- parsing helpers -------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> numbers(const std::string& text, const std::string& what,
                            const std::string& origin) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(origin + ": " + what + ": expected numbers, got '" + text + "'");
    }
  }
  return out;
}

std::string origin_of(const Settings& s, const std::string& key) {
  auto f = s.find(key);
  return f ? f->origin : key;
}

// --- states ----------------------------------------------------------------

struct State {
  std::string family;
  StateSpec spec;
  std::optional<int> cutoff;
  json desc;
};

State parse_state(const Settings& s) {
  if (!s.has("state.family")) throw ConfigError("state.family is required (--state)");
  State st;
  st.family = s.text("state.family", "");
  st.desc["family"] = st.family;
  try {
    if (st.family == "tmsv" || st.family == "tmst") {
      TmstParams p;
      p.s = s.number("state.s", 0.0);
      if (st.family == "tmst") {
        p.eta = s.number("state.eta", 1.0);
        p.r = s.number("state.r", 0.0);
      }
      p.validate();
      st.spec = p;
      st.desc["s"] = p.s;
      st.desc["eta"] = p.eta;
      st.desc["r"] = p.r;
    } else if (st.family == "werner-phi+" || st.family == "werner-psi+") {
      WernerParams p;
      p.bell = st.family == "werner-phi+" ? BellState::phi_plus : BellState::psi_plus;
      p.epsilon = s.number("state.epsilon", 1.0);
      p.validate();
      st.spec = p;
      st.desc["epsilon"] = p.epsilon;
    } else if (st.family == "cat-plus" || st.family == "cat-minus") {
      CatParams p;
      p.sign = st.family == "cat-plus" ? CatSign::plus : CatSign::minus;
      p.gamma = s.number("state.gamma", 1.0);
      p.epsilon = s.number("state.epsilon", 1.0);
      p.validate();
      st.spec = p;
      st.desc["gamma"] = p.gamma;
      st.desc["epsilon"] = p.epsilon;
    } else if (st.family == "gaussian") {
      GaussianTwoMode g;
      if (s.has("state.mean")) {
        const auto m = numbers(s.text("state.mean", ""), "mean", origin_of(s, "state.mean"));
        if (m.size() != 4) throw ConfigError(origin_of(s, "state.mean") + ": mean needs 4 numbers");
        g.mean = Eigen::Vector4d(m[0], m[1], m[2], m[3]);
      }
      if (!s.has("state.cov")) throw ConfigError("state.cov is required for a gaussian state");
      const auto c = numbers(s.text("state.cov", ""), "cov", origin_of(s, "state.cov"));
      if (c.size() != 16) throw ConfigError(origin_of(s, "state.cov") + ": cov needs 16 numbers");
      for (int i = 0; i < 16; ++i) g.cov(i / 4, i % 4) = c[i];
      g.validate();
      st.spec = g;
      st.desc["mean"] = std::vector<double>(g.mean.data(), g.mean.data() + 4);
      st.desc["cov"] = c;
    } else {
      throw ConfigError(origin_of(s, "state.family") + ": unknown state family '" + st.family +
                        "' (tmsv, tmst, werner-phi+, werner-psi+, cat-plus, cat-minus, gaussian)");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
  if (s.has("state.cutoff")) {
    st.cutoff = s.integer("state.cutoff", 0);
    st.desc["cutoff"] = *st.cutoff;
  }
  return st;
}

FockDensityMatrix state_fock(const State& st) {
  return std::visit(
      [&st](const auto& p) -> FockDensityMatrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianTwoMode>) {
          throw ConfigError("this check needs a density matrix; use tmsv, tmst, werner or cat");
        } else {
          return state_to_fock(p, st.cutoff);
        }
      },
      st.spec);
}

GaussianTwoMode state_gaussian(const State& st) {
  if (auto* p = std::get_if<TmstParams>(&st.spec)) return tmst_covariance(*p);
  if (auto* g = std::get_if<GaussianTwoMode>(&st.spec)) return *g;
  throw ConfigError("this check needs a Gaussian state (tmsv, tmst or gaussian)");
}

// Family eps -> field for the epsilon-parametrized states.
std::function<WignerField(double)> epsilon_family(const State& st) {
  if (auto* p = std::get_if<WernerParams>(&st.spec)) {
    const BellState b = p->bell;
    return [b](double e) { return werner_wigner({b, e}); };
  }
  if (auto* p = std::get_if<CatParams>(&st.spec)) {
    const CatParams q = *p;
    return [q](double e) { return cat_wigner({q.gamma, e, q.sign}); };
  }
  throw ConfigError("epsilon thresholds need a werner or cat state");
}

// --- criterion settings ----------------------------------------------------

std::optional<Transform2> parse_transform(const Settings& s) {
  const std::string t = s.text("criterion.transform", "optimize");
  if (t == "optimize") return std::nullopt;
  if (t == "identity") return Transform2::identity();
  if (t == "p-reflect") return Transform2::p_reflection();
  if (t == "neg-identity") return Transform2::neg_identity();
  const std::string origin = origin_of(s, "criterion.transform");
  const auto v = numbers(t, "transform", origin);
  if (v.size() != 4 && v.size() != 6) {
    throw ConfigError(origin + ": transform needs a preset or a,b,c,d[,x0,p0]");
  }
  try {
    return Transform2(v[0], v[1], v[2], v[3], v.size() == 6 ? v[4] : 0.0,
                      v.size() == 6 ? v[5] : 0.0);
  } catch (const InvalidArgument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

std::optional<double> parse_theta(const Settings& s) {
  if (s.text("criterion.theta", "") == "optimize") return std::nullopt;
  return s.number("criterion.theta", kPi / 4);
}

// Region spec: full | rect:x0,x1,p0,p1 | disks:x,p,r;x,p,r | shrink.
std::optional<Region> parse_region(const Settings& s) {
  const std::string r = s.text("criterion.region", "full");
  const std::string origin = origin_of(s, "criterion.region");
  if (r == "full") return Region::full_plane();
  if (r == "shrink") return std::nullopt;
  try {
    if (r.rfind("rect:", 0) == 0) {
      const auto v = numbers(r.substr(5), "region", origin);
      if (v.size() != 4) throw ConfigError(origin + ": rect needs x0,x1,p0,p1");
      return Region::rectangle({v[0], v[1], v[2], v[3]});
    }
    if (r.rfind("disks:", 0) == 0) {
      std::vector<Disk> disks;
      for (const std::string& d : split(r.substr(6), ';')) {
        const auto v = numbers(d, "region", origin);
        if (v.size() != 3) throw ConfigError(origin + ": each disk needs x,p,r");
        disks.push_back({v[0], v[1], v[2]});
      }
      return Region::disk_union(std::move(disks));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  throw ConfigError(origin + ": unknown region '" + r + "' (full, rect:..., disks:..., shrink)");
}

QuadratureSpec parse_quadrature(const Settings& s) {
  QuadratureSpec q;
  const std::string rule = s.text("quadrature.rule", "tensor");
  if (rule == "tensor") {
    q.rule = QuadratureSpec::Rule::tensor_gauss_legendre;
  } else if (rule == "adaptive") {
    q.rule = QuadratureSpec::Rule::adaptive_subdivision;
  } else {
    throw ConfigError(origin_of(s, "quadrature.rule") + ": rule must be tensor or adaptive");
  }
  q.order = s.integer("quadrature.order", q.order);
  q.tolerance = s.number("quadrature.tolerance", q.tolerance);
  try {
    q.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  return q;
}

BellSettings parse_alphas(const Settings& s) {
  const std::string origin = origin_of(s, "criterion.alphas");
  const auto parts = split(s.text("criterion.alphas", ""), ';');
  if (parts.size() != 4) {
    throw ConfigError(origin + ": alphas needs four re,im pairs separated by ';'");
  }
  BellSettings a;
  for (int k = 0; k < 4; ++k) {
    const auto v = numbers(parts[k], "alphas", origin);
    if (v.size() != 2) throw ConfigError(origin + ": each alpha needs re,im");
    a[k] = cplx(v[0], v[1]);
  }
  return a;
}

// --- JSON ------------------------------------------------------------------

json region_json(const Region& r) {
  json j;
  j["kind"] = to_string(r.kind());
  if (r.kind() == Region::Kind::rectangle) {
    const Box& b = r.box();
    j["box"] = {b.x_min, b.x_max, b.p_min, b.p_max};
  } else if (r.kind() == Region::Kind::disk_union) {
    json d = json::array();
    for (const Disk& k : r.disks()) d.push_back({k.x, k.p, k.radius});
    j["disks"] = d;
    double area = 0.0;
    for (const Disk& k : r.disks()) area += k.area();
    j["nominal_area"] = area;
  }
  return j;
}

json report_json(const CriterionReport& r, const json& state) {
  json j;
  j["criterion"] = to_string(r.id);
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["violated"] = r.violated;
  if (r.transform) {
    const Transform2& t = *r.transform;
    j["transform"] = {{"a", t.a()}, {"b", t.b()}, {"c", t.c()},
                      {"d", t.d()}, {"x0", t.x0()}, {"p0", t.p0()}};
  } else {
    j["transform"] = nullptr;
  }
  j["theta"] = r.theta ? json(*r.theta) : json(nullptr);
  j["region"] = r.region ? region_json(*r.region) : json(nullptr);
  j["error_estimate"] = r.error_estimate;
  j["state"] = state;
  if (!r.warning.empty()) j["details"]["warning"] = r.warning;
  return j;
}

// --- evaluation --------------------------------------------------------------

struct Context {
  int workers = 1;
};

OptimizeOptions optimize_options(const Settings& s, const Context& ctx) {
  OptimizeOptions o;
  o.workers = ctx.workers;
  o.final_spec.tolerance = s.number("quadrature.tolerance", o.final_spec.tolerance);
  return o;
}

json evaluate_criterion(const Settings& s, const std::string& name, const Context& ctx) {
  const State st = parse_state(s);
  const QuadratureSpec q = parse_quadrature(s);
  json details;
  CriterionReport rep;
  auto field = [&] { return state_wigner(st.spec); };
  if (name == "c1" || name == "c2" || name == "c3") {
    const CriterionId id = name == "c1" ? CriterionId::C1
                           : name == "c2" ? CriterionId::C2
                                          : CriterionId::C3;
    const WignerField w = field();
    const auto t = parse_transform(s);
    const auto region = id == CriterionId::C2 ? parse_region(s) : Region::full_plane();
    if (!t) {
      if (id == CriterionId::C2 && !region) {
        throw ConfigError("criterion.region = shrink needs an explicit transform");
      }
      const OptimizationResult r = optimize_criterion(w, id, optimize_options(s, ctx));
      rep = r.report;
      details["restarts"] = r.restarts;
      if (id == CriterionId::C2 && region->kind() != Region::Kind::full_plane) {
        rep = criterion2(w, *rep.transform, *rep.theta, *region, q);
      }
    } else {
      const auto theta = parse_theta(s);
      if (!theta && id != CriterionId::C3) {
        throw ConfigError("criterion.theta = optimize needs criterion.transform = optimize");
      }
      if (id == CriterionId::C1) {
        rep = criterion1(w, *t, *theta, q);
      } else if (id == CriterionId::C2) {
        Region reg = region ? *region : shrink_region(w, *t, *theta, ShrinkOptions{q});
        rep = criterion2(w, *t, *theta, reg, q);
      } else {
        rep = criterion3(w, *t, q);
      }
    }
  } else if (name == "purity") {
    const auto theta = parse_theta(s);
    rep = theta ? purity_s1(field(), *theta, q) : maximize_purity_s1(field(), q);
  } else if (name == "simon") {
    rep = simon_check(state_gaussian(st));
  } else if (name == "duan") {
    rep = duan_check(state_gaussian(st));
  } else if (name == "ppt") {
    rep = ppt_check(state_fock(st));
  } else if (name == "epr") {
    rep = pseudospin_epr(state_fock(st));
  } else if (name == "bell") {
    const WignerField w = field();
    if (s.text("criterion.alphas", "optimize") == "optimize") {
      rep = bell_optimize(w);
    } else {
      rep = bell_chsh(w, parse_alphas(s));
    }
  } else {
    throw ConfigError(origin_of(s, "criterion.name") + ": unknown criterion '" + name +
                      "' (c1, c2, c3, purity, simon, duan, ppt, epr, bell)");
  }
  json j = report_json(rep, st.desc);
  if (!details.empty()) {
    for (auto& [k, v] : details.items()) j["details"][k] = v;
  }
  return j;
}

json crosscheck(const Settings& s) {
  const State st = parse_state(s);
  const FockDensityMatrix rho = state_fock(st);
  const WignerField analytic = state_wigner(st.spec);
  const WignerField fock = fock_wigner(rho);
  double engine = 0.0;
  const double g[5] = {-4.0, -2.0, 0.0, 2.0, 4.0};
  for (double a : g)
    for (double b : g)
      for (double c : g)
        for (double d : g) engine = std::max(engine, std::abs(analytic({a, b, c, d}) - fock({a, b, c, d})));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double parity = 0.0;
  for (int k = 0; k < 20; ++k) {
    const PhaseVec4 v{u(rng), u(rng), u(rng), u(rng)};
    parity = std::max(parity, std::abs(fock(v) - parity_wigner(rho, v)));
  }
  json j;
  j["criterion"] = "crosscheck";
  j["value"] = engine;
  j["bound"] = 1e-6;
  j["violated"] = engine > 1e-6 || parity > 1e-9;
  j["transform"] = nullptr;
  j["theta"] = nullptr;
  j["region"] = nullptr;
  j["error_estimate"] = 0.0;
  j["state"] = st.desc;
  j["details"] = {{"engine_max_abs_diff", engine},
                  {"parity_oracle_max_abs_diff", parity},
                  {"cutoff", rho.cutoff}};
  return j;
}

json bell_threshold_report(const Settings& s) {
  const State st = parse_state(s);
  const BellThreshold b = bell_epsilon_min(epsilon_family(st));
  json j;
  j["criterion"] = "BellThreshold";
  j["value"] = b.epsilon_min;
  j["bound"] = 1.0;
  j["violated"] = b.found;
  j["transform"] = nullptr;
  j["theta"] = nullptr;
  j["region"] = nullptr;
  j["error_estimate"] = 0.0;
  j["state"] = st.desc;
  json alphas = json::array();
  for (const cplx& a : b.alphas) alphas.push_back({a.real(), a.imag()});
  j["details"] = {{"alphas", alphas}};
  return j;
}

json oracle_report(const Settings& s, const Context& ctx) {
  const std::string check = s.text("oracle.check", "");
  if (check == "ppt" || check == "epr") return evaluate_criterion(s, check, ctx);
  if (check == "bell") {
    Settings t = s;
    if (!s.flag("oracle.optimize", false) && !s.has("criterion.alphas")) {
      throw ConfigError("--bell needs --optimize or --alphas");
    }
    if (s.flag("oracle.optimize", false)) t.set("criterion.alphas", "optimize", "--optimize");
    return evaluate_criterion(t, "bell", ctx);
  }
  if (check == "crosscheck-wigner") return crosscheck(s);
  if (check == "bell-threshold") return bell_threshold_report(s);
  throw ConfigError(
      "oracle needs one of --ppt, --epr, --bell, --crosscheck-wigner, --bell-threshold");
}

// --- sweeps -----------------------------------------------------------------

std::vector<double> grid_values(const Setting& g, const std::string& key) {
  if (g.value.find(':') != std::string::npos) {
    const auto parts = split(g.value, ':');
    if (parts.size() != 3) throw ConfigError(g.origin + ": " + key + ": expected start:stop:count");
    const double a = numbers(parts[0], key, g.origin).at(0);
    const double b = numbers(parts[1], key, g.origin).at(0);
    const int n = static_cast<int>(numbers(parts[2], key, g.origin).at(0));
    if (n < 1) throw ConfigError(g.origin + ": " + key + ": count must be >= 1");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
  }
  return numbers(g.value, key, g.origin);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Smallest epsilon in [0, 1] at which `violated(eps)` holds, by bisection.
double epsilon_threshold(const std::function<bool(double)>& violated) {
  if (!violated(1.0)) return std::nan("");
  double lo = 0.0, hi = 1.0;
  if (violated(lo)) return 0.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (violated(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<std::string> sweep_columns(const std::string& crit) {
  if (crit.size() > 8 && crit.compare(crit.size() - 8, 8, "-eps-min") == 0) return {crit};
  return {crit + "_value", crit + "_violated"};
}

std::vector<std::string> sweep_row(const Settings& s, const std::vector<std::string>& criteria,
                                   const Context& ctx) {
  std::vector<std::string> cells;
  for (const std::string& crit : criteria) {
    if (crit == "bell-eps-min") {
      const BellThreshold b = bell_epsilon_min(epsilon_family(parse_state(s)));
      cells.push_back(fmt(b.found ? b.epsilon_min : std::nan("")));
    } else if (crit.size() > 8 && crit.compare(crit.size() - 8, 8, "-eps-min") == 0) {
      const std::string base = crit.substr(0, crit.size() - 8);
      epsilon_family(parse_state(s));  // validates the family
      cells.push_back(fmt(epsilon_threshold([&](double e) {
        Settings t = s;
        std::ostringstream os;
        os.precision(17);
        os << e;
        t.set("state.epsilon", os.str(), "sweep");
        return evaluate_criterion(t, base, ctx)["violated"].get<bool>();
      })));
    } else {
      const json j = evaluate_criterion(s, crit, ctx);
      cells.push_back(fmt(j["value"].get<double>()));
      cells.push_back(j["violated"].get<bool>() ? "true" : "false");
    }
  }
  return cells;
}

void write_output(const Settings& s, const std::string& text, std::ostream& out) {
  const std::string path = s.text("output.path", "-");
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(origin_of(s, "output.path") + ": cannot write '" + path + "'");
  f << text;
}

std::string run_sweep(const Settings& s, const Context& ctx) {
  if (s.grid_order().empty()) throw ConfigError("sweep needs a [grid] section");
  const std::string clist = s.text("sweep.criteria", "");
  if (clist.empty()) throw ConfigError("sweep needs sweep.criteria");
  const std::vector<std::string> criteria = split(clist, ',');
  std::vector<std::string> names;
  std::vector<std::vector<double>> axes;
  for (const std::string& key : s.grid_order()) {
    names.push_back(key.substr(5));
    axes.push_back(grid_values(*s.find(key), key));
  }
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();

  // Row-major grid points.
  std::vector<Settings> points(total, s);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t d = axes.size(); d-- > 0;) {
      const double v = axes[d][rem % axes[d].size()];
      rem /= axes[d].size();
      std::ostringstream os;
      os.precision(17);
      os << v;
      points[idx].set("state." + names[d], os.str(), "grid." + names[d]);
    }
  }
  // Validate the first point up front so config errors surface before work.
  parse_state(points.front());

  std::vector<std::vector<std::string>> rows(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  Context inner = ctx;
  inner.workers = 1;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        rows[i] = sweep_row(points[i], criteria, inner);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::max(1, std::min<int>(ctx.workers, static_cast<int>(total)));
  for (int k = 1; k < workers; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::ostringstream csv;
  std::vector<std::string> header = names;
  for (const auto& c : criteria)
    for (const auto& col : sweep_columns(c)) header.push_back(col);
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << "\n";
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    std::vector<std::string> cells(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
      cells[d] = fmt(axes[d][rem % axes[d].size()]);
      rem /= axes[d].size();
    }
    for (const auto& c : rows[idx]) cells.push_back(c);
    for (std::size_t i = 0; i < cells.size(); ++i) csv << (i ? "," : "") << cells[i];
    csv << "\n";
  }
  return csv.str();
}

std::string plot_script(const std::string& csv, const std::string& x, const std::string& y,
                        const std::string& z) {
  std::ostringstream os;
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set xlabel '" << x << "'\nset ylabel '" << y << "'\n";
  if (z.empty()) {
    os << "plot '" << csv << "' using '" << x << "':'" << y << "' with linespoints\n";
  } else {
    os << "set view map\nset cblabel '" << z << "'\n";
    os << "splot '" << csv << "' using '" << x << "':'" << y << "':'" << z
       << "' with points palette pointtype 5\n";
  }
  return os.str();
}

// --- command line ----------------------------------------------------------

struct FlagBinding {
  std::string flag;
  std::string key;
  std::string value;
  CLI::Option* opt = nullptr;
};

void bind_common(CLI::App* app, std::vector<FlagBinding>& b, std::string& config_path) {
  app->add_option("--config", config_path, "Config file (key = value with [sections])");
  const std::pair<const char*, const char*> flags[] = {
      {"--state", "state.family"},     {"--s", "state.s"},
      {"--eta", "state.eta"},          {"--r", "state.r"},
      {"--epsilon", "state.epsilon"},  {"--gamma", "state.gamma"},
      {"--cutoff", "state.cutoff"},    {"--mean", "state.mean"},
      {"--cov", "state.cov"},          {"--criterion", "criterion.name"},
      {"--transform", "criterion.transform"},
      {"--theta", "criterion.theta"},  {"--region", "criterion.region"},
      {"--alphas", "criterion.alphas"},
      {"--rule", "quadrature.rule"},   {"--order", "quadrature.order"},
      {"--tolerance", "quadrature.tolerance"},
      {"--output", "output.path"},     {"--format", "output.format"},
      {"--workers", "run.workers"},
  };
  b.reserve(b.size() + std::size(flags) + 8);
  for (const auto& [flag, key] : flags) {
    b.push_back({flag, key, "", nullptr});
    b.back().opt = app->add_option(flag, b.back().value, key);
  }
}

Settings collect(const std::string& config_path, std::vector<FlagBinding>& b) {
  Settings s;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("--config: cannot read '" + config_path + "'");
    parse_config(f, config_path, s);
  }
  for (const FlagBinding& fb : b) {
    if (fb.opt && fb.opt->count() > 0) s.set(fb.key, fb.value, fb.flag);
  }
  return s;
}

Context make_context(const Settings& s) {
  Context ctx;
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  ctx.workers = s.integer("run.workers", hw);
  if (ctx.workers < 1) throw ConfigError(origin_of(s, "run.workers") + ": workers must be >= 1");
  return ctx;
}

std::string finish_json(json j, const Settings& s, double ms) {
  if (s.flag("output.timing", false)) j["runtime_ms"] = ms;
  return j.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wigner-function entanglement criteria toolkit"};
  app.require_subcommand(1);
  std::vector<FlagBinding> b_eval, b_sweep, b_oracle;
  std::string cfg_eval, cfg_sweep, cfg_oracle;
  bool timing_eval = false, timing_oracle = false;

  CLI::App* eval = app.add_subcommand("evaluate", "Evaluate one criterion and write a JSON report");
  bind_common(eval, b_eval, cfg_eval);
  eval->add_flag("--timing", timing_eval, "Include runtime_ms in the report");

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate criteria over a parameter grid (CSV)");
  bind_common(sweep, b_sweep, cfg_sweep);

  CLI::App* oracle = app.add_subcommand("oracle", "Fock-space reference checks");
  bind_common(oracle, b_oracle, cfg_oracle);
  oracle->add_flag("--timing", timing_oracle, "Include runtime_ms in the report");
  std::string check;
  bool optimize = false;
  auto* g = oracle->add_option_group("check");
  g->add_flag_callback("--ppt", [&] { check = "ppt"; }, "PPT minimum eigenvalue");
  g->add_flag_callback("--epr", [&] { check = "epr"; }, "Pseudospin steering value");
  g->add_flag_callback("--bell", [&] { check = "bell"; }, "Displaced-parity CHSH value");
  g->add_flag_callback("--crosscheck-wigner", [&] { check = "crosscheck-wigner"; },
                       "Analytic vs Fock Wigner engines");
  g->add_flag_callback("--bell-threshold", [&] { check = "bell-threshold"; },
                       "Smallest epsilon violating CHSH");
  g->require_option(0, 1);
  oracle->add_flag("--optimize", optimize, "Optimize the Bell displacements");

  std::string plot_csv, plot_x, plot_y, plot_z;
  CLI::App* plot = app.add_subcommand("plot-script", "Write a gnuplot script for a sweep CSV");
  plot->add_option("--csv", plot_csv, "CSV file")->required();
  plot->add_option("--x", plot_x, "x column")->required();
  plot->add_option("--y", plot_y, "y column")->required();
  plot->add_option("--z", plot_z, "colour column");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  try {
    if (*eval) {
      Settings s = collect(cfg_eval, b_eval);
      if (timing_eval) s.set("output.timing", "true", "--timing");
      if (s.text("output.format", "json") != "json") {
        throw ConfigError(origin_of(s, "output.format") + ": evaluate writes json only");
      }
      const Context ctx = make_context(s);
      if (!s.has("criterion.name")) throw ConfigError("criterion.name is required (--criterion)");
      const json j = evaluate_criterion(s, s.text("criterion.name", ""), ctx);
      write_output(s, finish_json(j, s, elapsed_ms()), out);
    } else if (*sweep) {
      Settings s = collect(cfg_sweep, b_sweep);
      if (s.text("output.format", "csv") != "csv") {
        throw ConfigError(origin_of(s, "output.format") + ": sweep writes csv only");
      }
      write_output(s, run_sweep(s, make_context(s)), out);
    } else if (*oracle) {
      Settings s = collect(cfg_oracle, b_oracle);
      if (!check.empty()) s.set("oracle.check", check, "--" + check);
      if (optimize) s.set("oracle.optimize", "true", "--optimize");
      if (timing_oracle) s.set("output.timing", "true", "--timing");
      const json j = oracle_report(s, make_context(s));
      write_output(s, finish_json(j, s, elapsed_ms()), out);
    } else if (*plot) {
      out << plot_script(plot_csv, plot_x, plot_y, plot_z);
    }
  } catch (const CutoffError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCutoff;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitQuadrature;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace wigent::cli
