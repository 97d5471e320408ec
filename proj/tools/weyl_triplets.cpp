// weyl_triplets.cpp — batch driver: Weyl/gamma samples, spectra, Krein kernels, validation, JC runs
#include "weyl/jcdot.hpp"
#include "weyl/models1d.hpp"
#include "weyl/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace {

using namespace weyl;

// config problems, reported with exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Entry {
  std::string value;
  int line = 0, column = 0;  // 1-based position of the value
};

class Config {
 public:
  std::map<std::string, Entry> kv;
  std::string source;

  bool has(const std::string& k) const { return kv.count(k) > 0; }

  std::string str(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second.value;
  }
  std::string str(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError(source + ": missing required key '" + k + "'");
    return it->second.value;
  }
  double num(const std::string& k, double dflt) const { return has(k) ? num(k) : dflt; }
  double num(const std::string& k) const {
    const Entry& e = at(k);
    try {
      std::size_t pos = 0;
      double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw error(k, "expected a number, got '" + e.value + "'");
    }
  }
  int integer(const std::string& k, int dflt) const {
    if (!has(k)) return dflt;
    double v = num(k);
    if (v != std::floor(v)) throw error(k, "expected an integer");
    return int(v);
  }
  std::vector<double> list(const std::string& k, const std::vector<double>& dflt) const {
    if (!has(k)) return dflt;
    std::vector<double> out;
    std::stringstream ss(at(k).value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw error(k, "bad list element '" + tok + "'");
      }
    }
    return out;
  }
  // "re,im;re,im;..."
  std::vector<cplx> points(const std::string& k) const {
    std::vector<cplx> out;
    std::stringstream ss(str(k));
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      auto c = tok.find(',');
      try {
        if (c == std::string::npos) out.emplace_back(std::stod(tok), 0.0);
        else out.emplace_back(std::stod(tok.substr(0, c)), std::stod(tok.substr(c + 1)));
      } catch (const std::exception&) {
        throw error(k, "bad complex point '" + tok + "'");
      }
    }
    if (out.empty()) throw error(k, "no points given");
    return out;
  }
  ConfigError error(const std::string& k, const std::string& msg) const {
    const Entry& e = at(k);
    std::ostringstream os;
    os << source << ":" << e.line << ":" << e.column << ": key '" << k << "': " << msg;
    return ConfigError(os.str());
  }

 private:
  const Entry& at(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError(source + ": missing required key '" + k + "'");
    return it->second;
  }
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void flatten_json(const nlohmann::json& j, const std::string& prefix, Config& c) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), c);
    return;
  }
  Entry e;
  if (j.is_string()) e.value = j.get<std::string>();
  else if (j.is_number() || j.is_boolean()) e.value = j.dump();
  else if (j.is_array()) {
    // numbers join with ',', pairs [re, im] join with ';'
    std::ostringstream os;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_array()) {
        if (i) os << ';';
        for (std::size_t k = 0; k < j[i].size(); ++k) os << (k ? "," : "") << j[i][k].dump();
      } else {
        os << (i ? "," : "") << j[i].dump();
      }
    }
    e.value = os.str();
  } else {
    throw ConfigError(c.source + ": unsupported JSON value at '" + prefix + "'");
  }
  c.kv[prefix] = e;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Config c;
  c.source = path;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      flatten_json(nlohmann::json::parse(in), "", c);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
    return c;
  }
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    std::string body = line.substr(0, line.find('#'));
    if (trim(body).empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      auto col = body.find_first_not_of(" \t") + 1;
      throw ConfigError(path + ":" + std::to_string(ln) + ":" + std::to_string(col) + ": expected key=value");
    }
    std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(ln) + ":1: empty key");
    Entry e;
    e.value = trim(body.substr(eq + 1));
    auto vstart = body.find_first_not_of(" \t", eq + 1);
    e.line = ln;
    e.column = int((vstart == std::string::npos ? eq + 1 : vstart) + 1);
    if (c.kv.count(key)) throw ConfigError(path + ":" + std::to_string(ln) + ":1: duplicate key '" + key + "'");
    c.kv[key] = e;
  }
  return c;
}

// ---------------------------------------------------------------- output

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Cell {
  bool text = false;
  double x = 0.0;
  std::string s;
  Cell(double v) : x(v) {}
  Cell(int v) : x(v) {}
  Cell(std::size_t v) : x(double(v)) {}
  Cell(const char* v) : text(true), s(v) {}
  Cell(std::string v) : text(true), s(std::move(v)) {}
};
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

std::string json_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    if (c == '\n') { o += "\\n"; continue; }
    o += c;
  }
  return o;
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    // hand-written so numbers keep exactly 17 significant digits
    os << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      os << "  {";
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        const Cell& v = t.rows[r][c];
        os << (c ? ", " : "") << '"' << json_escape(t.header[c]) << "\": ";
        if (v.text) os << '"' << json_escape(v.s) << '"';
        else if (std::isfinite(v.x)) os << fmt(v.x);
        else os << "null";
      }
      os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
    }
    os << "]\n";
    return os.str();
  }
  for (std::size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << (row[c].text ? row[c].s : fmt(row[c].x));
    os << "\n";
  }
  return os.str();
}

// runs f(k) for every k with a small pool; results keep input order
template <class F>
std::vector<std::vector<Row>> fan_out(std::size_t n, int jobs, F f) {
  std::vector<std::vector<Row>> out(n);
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < n;) {
      try {
        out[k] = f(k);
      } catch (...) {
        errs[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------- models

bool is_jc(const Config& c) { return c.str("model.family", "") == "jaynes-cummings"; }

ModelSpec model_from(const Config& c) {
  std::string fam = c.str("model.family");
  auto f = parse_family(fam);
  if (!f) throw c.error("model.family", "unknown family '" + fam + "'");
  ModelSpec s;
  s.family = *f;
  s.v = c.num("model.v", 0.0);
  s.a = c.num("model.a", s.family == ModelSpec::Family::SchrodingerInterval || s.family == ModelSpec::Family::DiracInterval ? -1.0 : 0.0);
  s.b = c.num("model.b", s.family == ModelSpec::Family::SchrodingerInterval || s.family == ModelSpec::Family::DiracInterval ? 1.0 : 0.0);
  s.c = c.num("model.c", 1.0);
  s.v_l = c.num("model.v_l", 0.0);
  s.v_r = c.num("model.v_r", 0.0);
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(c.source + ": model: " + e.what());
  }
  return s;
}

JCModel jc_from(const Config& c) {
  int N = c.integer("jc.N", 10);
  if (N < 0) throw c.error("jc.N", "must be non-negative");
  try {
    return JCModel::make(N, c.num("jc.alpha", 0.0), c.num("jc.beta", 0.0),
                         cplx(c.num("jc.gamma_re", 0.0), c.num("jc.gamma_im", 0.0)), c.num("jc.tau", 0.0),
                         c.num("jc.v_l", 0.0), c.num("jc.v_r", 0.0));
  } catch (const DomainError& e) {
    throw ConfigError(c.source + ": jc: " + e.what());
  }
}

void require_model(const Config& c, const std::string& task) {
  if (is_jc(c)) throw ConfigError(c.source + ": task '" + task + "' needs a 1D model, but model.family = jaynes-cummings");
}

BoundaryTriplet triplet_from(const Config& c, const ModelSpec& s) {
  BoundaryTriplet t = build_triplet(s);
  std::string norm = c.str("triplet.normalize", "false");
  if (norm == "true") return normalize(t);
  if (norm != "false") throw c.error("triplet.normalize", "expected true or false");
  return t;
}

std::optional<std::size_t> locate_closed(const AnalyticKernel& k, double x) {
  if (auto p = k.locate(x)) return p;
  for (std::size_t p = 0; p < k.pieces.size(); ++p) {
    const auto& q = k.pieces[p];
    if ((q.extent != Extent::ToMinusInf && x == q.lo) || (q.extent != Extent::ToPlusInf && x == q.hi)) return p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- tasks

Table task_weyl_sample(const Config& c, int jobs) {
  require_model(c, "weyl-sample");
  ModelSpec s = model_from(c);
  BoundaryTriplet t = triplet_from(c, s);
  auto zs = c.points("z.points");
  const int d = t.dim();
  Table tab;
  tab.header = {"re_z", "im_z"};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      tab.header.push_back("re_m_" + std::to_string(i) + std::to_string(j));
      tab.header.push_back("im_m_" + std::to_string(i) + std::to_string(j));
    }
  for (auto& rows : fan_out(zs.size(), jobs, [&](std::size_t k) {
         CMat m = t.weyl(zs[k]);
         Row r{zs[k].real(), zs[k].imag()};
         for (int i = 0; i < d; ++i)
           for (int j = 0; j < d; ++j) {
             r.emplace_back(m(i, j).real());
             r.emplace_back(m(i, j).imag());
           }
         return std::vector<Row>{r};
       }))
    for (auto& r : rows) tab.rows.push_back(std::move(r));
  return tab;
}

Table task_gamma_sample(const Config& c, int jobs) {
  require_model(c, "gamma-sample");
  ModelSpec s = model_from(c);
  BoundaryTriplet t = triplet_from(c, s);
  auto zs = c.points("z.points");
  auto xs = c.list("gamma.x", {0.0, 0.5, 1.0});
  const int d = t.dim(), nc = s.components();
  Table tab;
  tab.header = {"re_z", "im_z", "x"};
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < d; ++j) {
      tab.header.push_back("re_g_" + std::to_string(i) + std::to_string(j));
      tab.header.push_back("im_g_" + std::to_string(i) + std::to_string(j));
    }
  for (auto& rows : fan_out(zs.size(), jobs, [&](std::size_t k) {
         GammaImage g = t.gamma(zs[k]);
         std::vector<Row> out;
         for (double x : xs) {
           auto p = locate_closed(g.kernel(), x);
           if (!p) throw DomainError("gamma-sample: x = " + fmt(x) + " outside the model domain");
           CMat v = g.kernel().pieces[*p].fn(x);
           Row r{zs[k].real(), zs[k].imag(), x};
           for (int i = 0; i < nc; ++i)
             for (int j = 0; j < d; ++j) {
               r.emplace_back(v(i, j).real());
               r.emplace_back(v(i, j).imag());
             }
           out.push_back(r);
         }
         return out;
       }))
    for (auto& r : rows) tab.rows.push_back(std::move(r));
  return tab;
}

Table spectrum_table(const std::vector<double>& ev) {
  Table tab;
  tab.header = {"index", "eigenvalue", "cluster", "multiplicity"};
  auto cl = cluster_eigenvalues(ev);
  std::size_t idx = 0;
  for (std::size_t c = 0; c < cl.size(); ++c)
    for (int m = 0; m < cl[c].multiplicity; ++m, ++idx) tab.rows.push_back({idx, ev[idx], c, cl[c].multiplicity});
  return tab;
}

Table task_spectrum(const Config& c) {
  if (is_jc(c)) {
    JCModel m = jc_from(c);
    std::string which = c.str("spectrum.which", "cjc");
    if (which == "cjc") return spectrum_table(spectrum_CJC(m));
    if (which == "tilde") return spectrum_table(spectrum_tilde_CJC(m));
    throw c.error("spectrum.which", "expected cjc or tilde");
  }
  ModelSpec s = model_from(c);
  if (s.family != ModelSpec::Family::SchrodingerInterval && s.family != ModelSpec::Family::DiracInterval)
    throw ConfigError(c.source + ": task 'spectrum' needs an interval family or model.family = jaynes-cummings");
  auto ev = interval_reference_eigenvalues(s, c.integer("spectrum.count", 10));
  std::sort(ev.begin(), ev.end());
  return spectrum_table(ev);
}

BoundaryCondition bc_from(const Config& c, int d) {
  std::string kind = c.str("bc.kind", "operator");
  if (kind == "theta0") return BoundaryCondition::theta0();
  if (kind == "theta1") return BoundaryCondition::theta1();
  if (kind != "operator") throw c.error("bc.kind", "expected theta0, theta1 or operator");
  if (c.has("bc.matrix")) {
    auto v = c.list("bc.matrix", {});
    if (int(v.size()) != d * d) throw c.error("bc.matrix", "expected " + std::to_string(d * d) + " real entries");
    CMat B(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) B(i, j) = v[std::size_t(i * d + j)];
    try {
      return BoundaryCondition::op(B);
    } catch (const DomainError& e) {
      throw c.error("bc.matrix", e.what());
    }
  }
  return BoundaryCondition::op(c.num("bc.theta", 0.0) * CMat::Identity(d, d));
}

Table task_krein_kernel(const Config& c, int jobs) {
  require_model(c, "krein-kernel");
  ModelSpec s = model_from(c);
  BoundaryTriplet t = triplet_from(c, s);
  BoundaryCondition bc = bc_from(c, t.dim());
  auto zs = c.points("z.points");
  auto xs = c.list("krein.x", {0.0, 0.5, 1.0});
  auto ys = c.list("krein.y", xs);
  const int ci = c.integer("krein.row", 0), cj = c.integer("krein.col", 0);
  if (ci < 0 || cj < 0 || ci >= s.components() || cj >= s.components())
    throw ConfigError(c.source + ": krein.row / krein.col outside the component range");
  Table tab;
  tab.header = {"re_z", "im_z", "x", "y", "re_K", "im_K"};
  for (auto& rows : fan_out(zs.size(), jobs, [&](std::size_t k) {
         KreinCorrection kc = krein_correction(t, bc, zs[k]);
         const auto& ker = std::get<AnalyticKernel>(kc.left);
         std::vector<Row> out;
         for (double x : xs)
           for (double y : ys) {
             auto px = locate_closed(ker, x), py = locate_closed(ker, y);
             if (!px || !py) throw DomainError("krein-kernel: sample point outside the model domain");
             cplx v = kc.kernel(*px, x, *py, y)(ci, cj);
             out.push_back({zs[k].real(), zs[k].imag(), x, y, v.real(), v.imag()});
           }
         return out;
       }))
    for (auto& r : rows) tab.rows.push_back(std::move(r));
  return tab;
}

Table task_jc_run(const Config& c, int jobs) {
  if (!is_jc(c)) throw ConfigError(c.source + ": task 'jc-run' needs model.family = jaynes-cummings");
  JCModel m = jc_from(c);
  auto zs = c.has("z.points") ? c.points("z.points") : std::vector<cplx>{cplx(-1.0, 0.5)};
  const double x = c.num("krein.x", 0.5), y = c.num("krein.y", 0.5);
  Table tab;
  tab.header = {"kind", "index", "re_z", "im_z", "re", "im"};
  auto ev = spectrum_CJC(m), evt = spectrum_tilde_CJC(m);
  for (std::size_t k = 0; k < ev.size(); ++k) tab.rows.push_back({"spectrum_cjc", k, 0.0, 0.0, ev[k], 0.0});
  for (std::size_t k = 0; k < evt.size(); ++k) tab.rows.push_back({"spectrum_tilde_cjc", k, 0.0, 0.0, evt[k], 0.0});
  BCEquivalence bc = boundary_condition_equivalence(m);
  tab.rows.push_back({"bc_identity_residual", 0, 0.0, 0.0, bc.identity_residual, 0.0});
  JacobiReport jr = jacobi_reorder(build_tilde_CJC(m), m, JCBasis::Boundary);
  tab.rows.push_back({"tilde_beyond_band_max", 0, 0.0, 0.0, jr.beyond_band_max, 0.0});
  tab.rows.push_back({"tilde_chain_verdict", 0, 0.0, 0.0, jr.chain_structure ? 1.0 : 0.0, 0.0});
  for (auto& rows : fan_out(zs.size(), jobs, [&](std::size_t k) {
         const cplx z = zs[k];
         std::vector<Row> out;
         CMat w = weyl_S(m, z);
         for (Eigen::Index i = 0; i < w.rows(); ++i)
           out.push_back({"weyl_S_diag", std::size_t(i), z.real(), z.imag(), w(i, i).real(), w(i, i).imag()});
         CMat K = dot_resolvent_correction(m, z, x, y);
         for (Eigen::Index i = 0; i < K.rows(); ++i)
           out.push_back({"correction_fock_diag", std::size_t(i), z.real(), z.imag(), K(i, i).real(), K(i, i).imag()});
         return out;
       }))
    for (auto& r : rows) tab.rows.push_back(std::move(r));
  return tab;
}

Table task_validate(std::uint64_t seed, bool& all_passed) {
  auto res = run_validation_suite(seed);
  Table tab;
  tab.header = {"check", "value", "threshold", "status", "detail"};
  all_passed = true;
  for (const auto& r : res) {
    all_passed = all_passed && r.passed;
    tab.rows.push_back({r.name, r.value, r.threshold, r.passed ? "PASS" : "FAIL", r.detail});
  }
  return tab;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weyl-triplets: boundary triplets for tensor-product operators"};
  std::string task, config, out, format = "csv";
  std::uint64_t seed = 1;
  int jobs = 1;
  app.add_option("task", task, "weyl-sample | gamma-sample | spectrum | krein-kernel | validate | jc-run")->required();
  app.add_option("--config", config, "key=value or .json config file");
  app.add_option("--out", out, "output path (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--jobs", jobs, "worker threads over z points")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  int code = 0;
  Table tab;
  try {
    if (task == "validate") {
      bool ok = false;
      tab = task_validate(seed, ok);
      code = ok ? 0 : 1;
    } else {
      if (config.empty()) throw ConfigError("task '" + task + "' needs --config");
      Config c = load_config(config);
      if (task == "weyl-sample") tab = task_weyl_sample(c, jobs);
      else if (task == "gamma-sample") tab = task_gamma_sample(c, jobs);
      else if (task == "spectrum") tab = task_spectrum(c);
      else if (task == "krein-kernel") tab = task_krein_kernel(c, jobs);
      else if (task == "jc-run") tab = task_jc_run(c, jobs);
      else throw ConfigError("unknown task '" + task + "'");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }

  std::string text = render(tab, format);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "config error: cannot write '" << out << "'\n";
      return 2;
    }
    f << text;
  }
  if (code == 1) std::cerr << "validation failed\n";
  return code;
}
