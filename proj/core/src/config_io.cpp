// trunclab — configuration ingestion and report persistence implementation.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/config_io.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trunclab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

std::string joined(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Strict-schema guard: every key of `j` must be in `allowed`.
void check_fields(const json& j, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    fail("'" + (path.empty() ? std::string("<root>") : path) +
         "' must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known) fail("unknown field '" + joined(path, item.key()) + "'");
  }
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const std::string& path, const char* key) {
  const json* v = find(j, key);
  if (v == nullptr) fail("missing field '" + joined(path, key) + "'");
  return *v;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail("field '" + where + "' must be a number");
  return v.get<double>();
}

std::uint64_t as_u64(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  fail("field '" + where + "' must be a non-negative integer");
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail("field '" + where + "' must be a string");
  return v.get<std::string>();
}

double opt_number(const json& j, const std::string& path, const char* key,
                  double fallback) {
  const json* v = find(j, key);
  return v == nullptr ? fallback : as_number(*v, joined(path, key));
}

// [index, value] pair lists shared by direction vectors and functionals.
std::vector<SeqVec::Entry> as_entries(const json& v,
                                      const std::string& where) {
  if (!v.is_array()) fail("field '" + where + "' must be an array");
  std::vector<SeqVec::Entry> entries;
  entries.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& e = v[i];
    if (!e.is_array() || e.size() != 2)
      fail("field '" + at + "' must be an [index, value] pair");
    const std::uint64_t idx = as_u64(e[0], at);
    if (idx == 0 || idx > 0xffffffffull)
      fail("field '" + at + "' index must be in [1, 2^32)");
    entries.emplace_back(static_cast<std::uint32_t>(idx),
                         as_number(e[1], at));
  }
  return entries;
}

NormKind parse_norm(const json& v, const std::string& where) {
  const std::string s = as_string(v, where);
  if (s == "sup") return NormKind::Sup;
  if (s == "l2") return NormKind::L2;
  fail("field '" + where + "' must be \"sup\" or \"l2\"");
}

TailModelSpec parse_model_obj(const json& m) {
  const std::string variant = as_string(require(m, "model", "variant"),
                                        "model.variant");
  if (variant == "scalar_pareto") {
    check_fields(m, "model", {"variant", "alpha", "x_m", "tail_constant"});
    if (find(m, "tail_constant") != nullptr)
      fail("'model.tail_constant' is not accepted for scalar_pareto; its "
           "tail constant x_m^alpha is exact and supplied automatically");
    const double alpha = as_number(require(m, "model", "alpha"),
                                   "model.alpha");
    const double x_m = opt_number(m, "model", "x_m", 1.0);
    return TailModelSpec::scalar_pareto(alpha, x_m);
  }
  if (variant == "stable_series") {
    check_fields(m, "model",
                 {"variant", "alpha", "coeff_c", "coeff_r", "cap", "norm",
                  "tail_constant"});
    const double alpha = as_number(require(m, "model", "alpha"),
                                   "model.alpha");
    const double c = opt_number(m, "model", "coeff_c", 1.0);
    const double r = as_number(require(m, "model", "coeff_r"),
                               "model.coeff_r");
    const std::uint64_t cap = as_u64(require(m, "model", "cap"), "model.cap");
    if (cap == 0 || cap > 1000000)
      fail("field 'model.cap' must be in [1, 1e6]");
    NormKind kind = NormKind::Sup;
    if (const json* v = find(m, "norm")) kind = parse_norm(*v, "model.norm");
    TailModelSpec spec = TailModelSpec::stable_series(
        alpha, c, r, static_cast<std::uint32_t>(cap), kind);
    if (const json* v = find(m, "tail_constant")) {
      const double tc = as_number(*v, "model.tail_constant");
      if (!(tc > 0.0)) fail("field 'model.tail_constant' must be > 0");
      spec.tail_constant = tc;
    }
    return spec;
  }
  if (variant == "rademacher_cauchy_mix") {
    check_fields(m, "model",
                 {"variant", "p", "k_const", "cap", "direction",
                  "tail_constant"});
    const double p = as_number(require(m, "model", "p"), "model.p");
    const double k_const = opt_number(m, "model", "k_const", 1.0);
    const std::uint64_t cap = as_u64(require(m, "model", "cap"), "model.cap");
    if (cap == 0 || cap > 1000000)
      fail("field 'model.cap' must be in [1, 1e6]");
    SeqVec dir;
    if (const json* v = find(m, "direction"))
      dir = SeqVec(as_entries(*v, "model.direction"),
                   static_cast<std::uint32_t>(cap));
    TailModelSpec spec = TailModelSpec::rademacher_cauchy_mix(
        p, k_const, static_cast<std::uint32_t>(cap), std::move(dir));
    if (const json* v = find(m, "tail_constant")) {
      const double tc = as_number(*v, "model.tail_constant");
      if (!(tc > 0.0)) fail("field 'model.tail_constant' must be > 0");
      spec.tail_constant = tc;
    }
    return spec;
  }
  fail("field 'model.variant' must be one of \"scalar_pareto\", "
       "\"stable_series\", \"rademacher_cauchy_mix\"");
}

OvershootLaw parse_overshoot(const json& o) {
  check_fields(o, "scheme.overshoot", {"kind", "param"});
  const std::string kind = as_string(require(o, "scheme.overshoot", "kind"),
                                     "scheme.overshoot.kind");
  if (kind == "zero") {
    if (find(o, "param") != nullptr)
      fail("'scheme.overshoot.param' is not accepted for kind \"zero\"");
    return OvershootLaw::zero();
  }
  const double param = as_number(require(o, "scheme.overshoot", "param"),
                                 "scheme.overshoot.param");
  if (kind == "exponential") return OvershootLaw::exponential(param);
  if (kind == "half_gaussian") return OvershootLaw::half_gaussian(param);
  fail("field 'scheme.overshoot.kind' must be one of \"zero\", "
       "\"exponential\", \"half_gaussian\"");
}

TruncationScheme parse_scheme(const json& s) {
  check_fields(s, "scheme", {"m_coeff", "m_exponent", "overshoot"});
  const double coeff = opt_number(s, "scheme", "m_coeff", 1.0);
  const double expo = opt_number(s, "scheme", "m_exponent", 0.5);
  OvershootLaw law = OvershootLaw::zero();
  if (const json* o = find(s, "overshoot")) law = parse_overshoot(*o);
  return TruncationScheme(coeff, expo, law);
}

json entries_to_json(const std::vector<SeqVec::Entry>& entries) {
  json a = json::array();
  for (const auto& [idx, v] : entries) a.push_back(json::array({idx, v}));
  return a;
}

json model_to_json(const TailModelSpec& m) {
  json j;
  switch (m.variant) {
    case TailModelSpec::Variant::ScalarPareto:
      j["variant"] = "scalar_pareto";
      j["alpha"] = m.alpha;
      j["x_m"] = m.x_m;
      break;
    case TailModelSpec::Variant::StableSeries:
      j["variant"] = "stable_series";
      j["alpha"] = m.alpha;
      j["coeff_c"] = m.coeff_c;
      j["coeff_r"] = m.coeff_r;
      j["cap"] = m.cap;
      j["norm"] = m.norm_kind == NormKind::Sup ? "sup" : "l2";
      if (m.tail_constant.has_value()) j["tail_constant"] = *m.tail_constant;
      break;
    case TailModelSpec::Variant::RademacherCauchyMix:
      j["variant"] = "rademacher_cauchy_mix";
      j["p"] = m.p;
      j["k_const"] = m.k_const;
      j["cap"] = m.cap;
      j["direction"] = entries_to_json(m.direction_x.entries());
      if (m.tail_constant.has_value()) j["tail_constant"] = *m.tail_constant;
      break;
  }
  return j;
}

json scheme_to_json(const TruncationScheme& s) {
  json j;
  j["m_coeff"] = s.m_coeff;
  j["m_exponent"] = s.m_exponent;
  json o;
  switch (s.overshoot.kind) {
    case OvershootLaw::Kind::Zero:
      o["kind"] = "zero";
      break;
    case OvershootLaw::Kind::Exponential:
      o["kind"] = "exponential";
      o["param"] = s.overshoot.param;
      break;
    case OvershootLaw::Kind::HalfGaussian:
      o["kind"] = "half_gaussian";
      o["param"] = s.overshoot.param;
      break;
  }
  j["overshoot"] = o;
  return j;
}

json ks_to_json(const KsResult& ks) {
  json j;
  j["n_eff"] = ks.n_eff;
  j["p_value"] = ks.p_value;
  j["statistic"] = ks.statistic;
  return j;
}

void append_u64(std::string& out, std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_double(std::string& out, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " +
                                   path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

ExperimentConfig load_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") +
                                e.what());
  }
  check_fields(j, "",
               {"label", "seed", "out_dir", "model", "scheme", "n_grid",
                "reps", "functionals", "epsilon_grid"});
  ExperimentConfig cfg;
  cfg.model = parse_model_obj(require(j, "", "model"));
  if (const json* s = find(j, "scheme")) cfg.scheme = parse_scheme(*s);
  if (const json* v = find(j, "n_grid")) {
    if (!v->is_array() || v->empty())
      fail("field 'n_grid' must be a non-empty array");
    cfg.n_grid.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.n_grid.push_back(
          as_u64((*v)[i], "n_grid[" + std::to_string(i) + "]"));
  }
  if (const json* v = find(j, "reps")) cfg.reps = as_u64(*v, "reps");
  if (const json* v = find(j, "seed")) cfg.seed = as_u64(*v, "seed");
  if (const json* v = find(j, "label")) cfg.label = as_string(*v, "label");
  if (const json* v = find(j, "out_dir"))
    cfg.out_dir = as_string(*v, "out_dir");
  if (const json* v = find(j, "functionals")) {
    if (!v->is_array()) fail("field 'functionals' must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string at = "functionals[" + std::to_string(i) + "]";
      const json& f = (*v)[i];
      check_fields(f, at, {"weights"});
      cfg.functionals.emplace_back(
          as_entries(require(f, at, "weights"), at + ".weights"),
          cfg.model.norm_kind);
    }
  }
  if (const json* v = find(j, "epsilon_grid")) {
    if (!v->is_array()) fail("field 'epsilon_grid' must be an array");
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.epsilon_grid.push_back(
          as_number((*v)[i], "epsilon_grid[" + std::to_string(i) + "]"));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return load_config(buf.str());
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["epsilon_grid"] = cfg.epsilon_grid;
  json fs = json::array();
  for (const auto& f : cfg.functionals) {
    json fj;
    fj["weights"] = entries_to_json(f.weights());
    fs.push_back(fj);
  }
  j["functionals"] = fs;
  j["label"] = cfg.label;
  j["model"] = model_to_json(cfg.model);
  j["n_grid"] = cfg.n_grid;
  j["reps"] = cfg.reps;
  j["scheme"] = scheme_to_json(cfg.scheme);
  j["seed"] = cfg.seed;
  return j;
}

json report_to_json(const ExperimentReport& rep) {
  json j;
  j["artifact_version"] = rep.artifact_version;
  j["cap_error_per_draw"] = rep.cap_error_per_draw;
  j["centering"] = rep.centering;
  j["config"] = config_to_json(rep.config);
  j["kind"] = rep.kind;
  if (!rep.m_n.empty()) j["m_n"] = rep.m_n;
  if (!rep.b_n.empty()) j["b_n"] = rep.b_n;
  if (!rep.cells.empty()) {
    json cells = json::array();
    for (const auto& c : rep.cells) {
      json cj;
      if (c.analytic_variance.has_value())
        cj["analytic_variance"] = *c.analytic_variance;
      cj["empirical_variance"] = c.empirical_variance;
      cj["functional_id"] = c.functional_id;
      cj["ks"] = ks_to_json(c.ks);
      cj["n"] = c.n;
      cj["target_variance"] = c.target_variance;
      cj["variance_ci"] = c.variance_ci;
      cj["variance_consistent"] = c.variance_consistent;
      cells.push_back(cj);
    }
    j["cells"] = cells;
  }
  if (!rep.soft_cells.empty()) {
    json cells = json::array();
    for (const auto& c : rep.soft_cells) {
      json cj;
      cj["functional_id"] = c.functional_id;
      cj["ks"] = ks_to_json(c.ks);
      cj["n"] = c.n;
      cj["scale_ref"] = c.scale_ref;
      cj["scale_test"] = c.scale_test;
      cells.push_back(cj);
    }
    j["soft_cells"] = cells;
  }
  if (!rep.probes.empty()) {
    json probes = json::array();
    for (const auto& p : rep.probes) {
      json pj;
      pj["ci_halfwidths"] = p.ci_halfwidths;
      pj["kind"] = ProbeSeries::kind_name(p.kind);
      pj["n_grid"] = p.n_grid;
      pj["param"] = p.param;
      pj["values"] = p.values;
      probes.push_back(pj);
    }
    j["probes"] = probes;
  }
  if (rep.regime.has_value()) {
    json rj;
    rj["label"] = RegimeReport::label_name(rep.regime->label);
    rj["mc_reps"] = rep.regime->mc_reps;
    rj["method"] = rep.regime->method == RegimeReport::Method::Analytic
                       ? "analytic"
                       : "monte_carlo";
    rj["n_grid"] = rep.regime->n_grid;
    rj["np_ci"] = rep.regime->np_ci;
    rj["np_exceed"] = rep.regime->np_exceed;
    j["regime"] = rj;
  }
  j["regime_overridden"] = rep.regime_overridden;
  j["samples_csv"] = "samples.csv";
  if (rep.spectral.has_value()) {
    json sj;
    sj["n_exceed"] = rep.spectral->n_exceed;
    sj["pilot_draws"] = rep.spectral->pilot_draws;
    sj["threshold"] = rep.spectral->threshold;
    j["spectral"] = sj;
  }
  if (rep.spectral_atoms.has_value()) {
    const SpectralEstimate& sp = *rep.spectral_atoms;
    json aj = json::array();
    for (const auto& [atom, w] : sp.atoms) {
      json one;
      one["direction"] = entries_to_json(atom.entries());
      one["weight"] = w;
      aj.push_back(one);
    }
    json sj;
    sj["atoms"] = aj;
    sj["n_exceed"] = sp.n_exceed;
    sj["norm"] = sp.norm_kind == NormKind::Sup ? "sup" : "l2";
    sj["threshold"] = sp.threshold;
    j["spectral_atoms"] = sj;
  }
  return j;
}

std::string report_json_text(const ExperimentReport& rep) {
  return report_to_json(rep).dump(2) + "\n";
}

std::string samples_csv_text(const ExperimentReport& rep) {
  std::string out = "n,functional_id,replicate,value\n";
  out.reserve(out.size() + rep.samples.size() * 32);
  for (const auto& row : rep.samples) {
    append_u64(out, row.n);
    out.push_back(',');
    append_u64(out, row.functional_id);
    out.push_back(',');
    append_u64(out, row.replicate);
    out.push_back(',');
    append_double(out, row.value);
    out.push_back('\n');
  }
  return out;
}

void write_report(const ExperimentReport& rep, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" + out_dir +
                             "': " + ec.message());
  write_file(dir / "report.json", report_json_text(rep));
  write_file(dir / "samples.csv", samples_csv_text(rep));
  json meta;
  meta["artifact_version"] = rep.artifact_version;
  meta["threads"] = thread_count();
  meta["wall_seconds"] = rep.wall_seconds;
  write_file(dir / "run_meta.json", meta.dump(2) + "\n");
}

}  // namespace trunclab
