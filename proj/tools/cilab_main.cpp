// lab: command-line front end. Talks to the library only through cilab.h.
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cilab/cilab.h"
#include "lab_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitInvariant = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code(cilab_status s) {
  switch (s) {
    case CILAB_OK: return kExitOk;
    case CILAB_ERR_NUMERIC:
    case CILAB_ERR_INTERNAL: return kExitNumeric;
    case CILAB_ERR_INVARIANT: return kExitInvariant;
    default: return kExitUsage;
  }
}

void check(cilab_status s) {
  if (s != CILAB_OK) throw Failure{exit_code(s), std::string(cilab_status_name(s)) + ": " + cilab_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

template <class T, void (*D)(T*)>
struct Deleter {
  void operator()(T* p) const { D(p); }
};
using Pair = std::unique_ptr<cilab_pair, Deleter<cilab_pair, cilab_pair_destroy>>;
using Family = std::unique_ptr<cilab_family, Deleter<cilab_family, cilab_family_destroy>>;
using Centralizer = std::unique_ptr<cilab_centralizer, Deleter<cilab_centralizer, cilab_centralizer_destroy>>;
using TablePtr = std::unique_ptr<cilab_table, Deleter<cilab_table, cilab_table_destroy>>;
using Report = std::unique_ptr<cilab_report, Deleter<cilab_report, cilab_report_destroy>>;

// ---- text parsing

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) usage(what + ": empty number");
  const char* b = s.c_str();
  char* e = nullptr;
  errno = 0;
  double v = std::strtod(b, &e);
  if (e == b || *e != '\0' || errno == ERANGE) usage(what + ": not a number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Accepts "a", "bi", "a+bi", "a-bi".
void parse_complex(const std::string& s, const std::string& what, double& re, double& im) {
  if (s.empty()) usage(what + ": empty entry");
  if (s.back() != 'i') {
    re = parse_double(s, what);
    im = 0.0;
    return;
  }
  std::string body = s.substr(0, s.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) {
    re = 0.0;
    im = body.empty() || body == "+" ? 1.0 : body == "-" ? -1.0 : parse_double(body, what);
    return;
  }
  re = parse_double(body.substr(0, cut), what);
  std::string ims = body.substr(cut);
  im = ims == "+" ? 1.0 : ims == "-" ? -1.0 : parse_double(ims, what);
}

std::vector<double> parse_reals(const std::string& s, const std::string& what) {
  std::vector<double> v;
  for (const auto& t : split(s, ',')) v.push_back(parse_double(t, what));
  return v;
}

// Interleaved (re, im) pairs.
std::vector<double> parse_complex_list(const std::string& s, const std::string& what) {
  std::vector<double> v;
  for (const auto& t : split(s, ',')) {
    double re, im;
    parse_complex(t, what, re, im);
    v.push_back(re);
    v.push_back(im);
  }
  return v;
}

// "a:b:n" gives n equispaced points from a to b inclusive; otherwise a comma list.
std::vector<double> parse_grid(const std::string& s, const std::string& what) {
  auto parts = split(s, ':');
  if (parts.size() == 1) return parse_reals(s, what);
  if (parts.size() != 3) usage(what + ": expected a:b:n or a comma list");
  double a = parse_double(parts[0], what), b = parse_double(parts[1], what);
  double n = parse_double(parts[2], what);
  if (n < 1 || n != std::floor(n) || n > 1e6) usage(what + ": point count must be a positive integer");
  std::vector<double> g;
  int count = static_cast<int>(n);
  for (int k = 0; k < count; ++k) g.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
  return g;
}

// "linf", "l2", "l1.5", "l4/3".
double parse_exponent(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'l') usage("space '" + tok + "': expected linf or l<p>");
  std::string p = tok.substr(1);
  if (p == "inf") return INFINITY;
  auto slash = p.find('/');
  if (slash == std::string::npos) return parse_double(p, "space exponent");
  double num = parse_double(p.substr(0, slash), "space exponent");
  double den = parse_double(p.substr(slash + 1), "space exponent");
  if (den == 0.0) usage("space exponent: zero denominator");
  return num / den;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> d;
  for (double v : parse_reals(s, "--dims")) {
    if (v < 1 || v != std::floor(v)) usage("--dims: entries must be positive integers");
    d.push_back(static_cast<std::size_t>(v));
  }
  return d;
}

// ---- output

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string format_vector(const std::vector<double>& z) {
  bool real = true;
  for (std::size_t i = 1; i < z.size(); i += 2) real = real && z[i] == 0.0;
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i + 1 < z.size(); i += 2) {
    if (i) out += ",";
    if (real) {
      std::snprintf(buf, sizeof buf, "%.12g", z[i] == 0.0 ? 0.0 : z[i]);
      out += buf;
    } else {
      std::string im = format_real(z[i + 1]);
      out += format_real(z[i]) + (im[0] == '-' ? "" : "+") + im + "i";
    }
  }
  return out;
}

std::string table_csv(const cilab_table* t) {
  std::size_t need = 0;
  cilab_table_to_csv(t, nullptr, 0, &need);
  std::string buf(need, '\0');
  check(cilab_table_to_csv(t, buf.data(), buf.size(), &need));
  buf.resize(need - 1);
  return buf;
}

// ---- options shared across subcommands

struct PairOpts {
  std::string pair = "linf,l1";
  std::string w0, w1;
};

struct FamilyOpts {
  std::string family;  // variable-p | variable-exponent | flat-diagonal
  std::string family_file;
  std::string alpha;
  double p_max = INFINITY;
  int power = 1;
  std::string diag = "log1p";
};

struct State {
  std::string out;
  std::string config;
  bool print_config = false;

  PairOpts pair;
  FamilyOpts fam;
  std::string space = "l2";
  std::string weight;
  std::string x;
  std::string f;
  std::string z = "0";
  std::string grid;
  std::string z_grid;
  std::string dims = "16,64,256,1024";
  std::string ladder;
  std::string suite = "all";
  std::string kp;
  std::string kp_scale = "1";
  double theta = 0.5;
  double tol = 1e-12;
  double fd_step = 1e-4;
  std::uint64_t seed = 7;
  bool numeric = false;
  bool flat_only = false;
};

// Options seen by each subcommand, in long-name form, for config validation.
std::map<std::string, std::set<std::string>> g_allowed;

template <class T>
CLI::Option* opt(CLI::App* sub, const std::string& name, T& target, const std::string& help) {
  g_allowed[sub->get_name()].insert(name);
  return sub->add_option("--" + name, target, help);
}

CLI::Option* flag(CLI::App* sub, const std::string& name, bool& target, const std::string& help) {
  g_allowed[sub->get_name()].insert(name);
  return sub->add_flag("--" + name, target, help);
}

void add_pair(CLI::App* sub, State& st, bool with_x = true) {
  opt(sub, "pair", st.pair.pair, "endpoint spaces, e.g. linf,l1 or l2,l4/3");
  opt(sub, "w0", st.pair.w0, "weight of X0, comma list");
  opt(sub, "w1", st.pair.w1, "weight of X1, comma list");
  opt(sub, "theta", st.theta, "scale parameter in (0,1)");
  opt(sub, "tol", st.tol, "optimizer tolerance");
  if (with_x) opt(sub, "x", st.x, "vector, comma list of re, bi or re+imi");
}

void add_family(CLI::App* sub, State& st) {
  opt(sub, "family", st.fam.family, "variable-p | variable-exponent | flat-diagonal");
  opt(sub, "family-file", st.fam.family_file, "family JSON document");
  opt(sub, "alpha", st.fam.alpha, "rational function of z for variable exponents");
  opt(sub, "p-max", st.fam.p_max, "cap on the variable exponent");
  opt(sub, "power", st.fam.power, "flat-diagonal power k");
  opt(sub, "diag", st.fam.diag, "log1p | linear | constant:c | comma list");
  opt(sub, "z", st.z, "point of the strip, re or re+imi");
}

struct PairBuild {
  std::vector<double> w0, w1;
  Pair pair;
};

PairBuild make_pair(const State& st, std::size_t dim) {
  auto toks = split(st.pair.pair, ',');
  if (toks.size() != 2) usage("--pair: expected two spaces, e.g. linf,l1");
  PairBuild b;
  if (!st.pair.w0.empty()) b.w0 = parse_reals(st.pair.w0, "--w0");
  if (!st.pair.w1.empty()) b.w1 = parse_reals(st.pair.w1, "--w1");
  cilab_space s0{parse_exponent(toks[0]), b.w0.empty() ? nullptr : b.w0.data(), b.w0.size()};
  cilab_space s1{parse_exponent(toks[1]), b.w1.empty() ? nullptr : b.w1.data(), b.w1.size()};
  cilab_pair* p = nullptr;
  check(cilab_pair_create(&s0, &s1, dim, &p));
  b.pair.reset(p);
  return b;
}

bool wants_family(const State& st) { return !st.fam.family.empty() || !st.fam.family_file.empty(); }

Family make_family(const State& st) {
  cilab_family* f = nullptr;
  if (!st.fam.family_file.empty()) {
    if (!st.fam.family.empty()) usage("give --family or --family-file, not both");
    std::ifstream in(st.fam.family_file);
    if (!in) usage("cannot open '" + st.fam.family_file + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    check(cilab_family_parse(text.c_str(), &f));
  } else if (st.fam.family == "variable-p" || st.fam.family == "variable-exponent") {
    if (st.fam.alpha.empty()) usage("--alpha is required for " + st.fam.family);
    check(cilab_family_variable_exponent(st.fam.alpha.c_str(), st.fam.p_max, &f));
  } else if (st.fam.family == "flat-diagonal") {
    const std::string& d = st.fam.diag;
    if (d == "log1p" || d == "linear") {
      check(cilab_family_flat_diagonal(st.fam.power, d.c_str(), nullptr, 0, &f));
    } else if (d.rfind("constant:", 0) == 0) {
      double c = parse_double(d.substr(9), "--diag");
      check(cilab_family_flat_diagonal(st.fam.power, "constant", &c, 1, &f));
    } else {
      auto e = parse_reals(d, "--diag");
      check(cilab_family_flat_diagonal(st.fam.power, "explicit", e.data(), e.size(), &f));
    }
  } else {
    usage("--family: unknown family '" + st.fam.family + "'");
  }
  return Family(f);
}

void point(const State& st, double& re, double& im) { parse_complex(st.z, "--z", re, im); }

std::vector<double> need_x(const State& st) {
  if (st.x.empty()) usage("--x is required");
  return parse_complex_list(st.x, "--x");
}

cilab_space make_space(const std::string& tok, const std::vector<double>& weight) {
  return cilab_space{parse_exponent(tok), weight.empty() ? nullptr : weight.data(), weight.size()};
}

// ---- subcommands

std::string cmd_norm(const State& st, const CLI::App& sub) {
  auto x = need_x(st);
  std::size_t dim = x.size() / 2;
  double v = 0.0;
  if (sub.count("--space") && !sub.count("--pair")) {
    std::vector<double> w = st.weight.empty() ? std::vector<double>{} : parse_reals(st.weight, "--weight");
    cilab_space s = make_space(st.space, w);
    check(cilab_space_norm(&s, x.data(), dim, &v));
  } else {
    auto b = make_pair(st, dim);
    check(cilab_pair_norm(b.pair.get(), st.theta, x.data(), st.tol, &v));
  }
  return format_real(v) + "\n";
}

std::string cmd_factorize(const State& st) {
  auto x = need_x(st);
  std::size_t dim = x.size() / 2;
  auto b = make_pair(st, dim);
  std::vector<double> a0(2 * dim), a1(2 * dim);
  double value = 0.0;
  check(cilab_pair_factorize(b.pair.get(), st.theta, x.data(), st.tol, a0.data(), a1.data(), &value));
  std::string out = "index,x,a0,a1,value\n";
  for (std::size_t i = 0; i < dim; ++i) {
    auto one = [&](const std::vector<double>& v) { return format_vector({v[2 * i], v[2 * i + 1]}); };
    out += std::to_string(i) + "," + one(x) + "," + one(a0) + "," + one(a1) + "," + format_real(value) + "\n";
  }
  return out;
}

std::string cmd_derive(const State& st) {
  auto x = need_x(st);
  std::size_t dim = x.size() / 2;
  std::vector<double> y(2 * dim);
  if (!st.kp.empty()) {
    double sr, si;
    parse_complex(st.kp_scale, "--kp-scale", sr, si);
    cilab_centralizer* c = nullptr;
    check(cilab_centralizer_kalton_peck(parse_double(st.kp, "--kp"), sr, si, &c));
    Centralizer h(c);
    check(cilab_centralizer_eval(h.get(), x.data(), dim, y.data()));
  } else if (wants_family(st)) {
    Family f = make_family(st);
    double zr, zi;
    point(st, zr, zi);
    check(cilab_family_derivation(f.get(), zr, zi, x.data(), dim, st.tol, y.data()));
  } else {
    auto b = make_pair(st, dim);
    check(cilab_pair_derivation(b.pair.get(), st.theta, x.data(), st.tol, y.data()));
  }
  return format_vector(y) + "\n";
}

std::string cmd_sweep(const State& st) {
  auto x = need_x(st);
  std::size_t dim = x.size() / 2;
  cilab_table* t = nullptr;
  if (wants_family(st)) {
    if (st.z_grid.empty()) usage("--z-grid is required for a family sweep");
    std::vector<double> z;
    if (st.z_grid.find(':') != std::string::npos) {
      for (double r : parse_grid(st.z_grid, "--z-grid")) z.insert(z.end(), {r, 0.0});
    } else {
      z = parse_complex_list(st.z_grid, "--z-grid");
    }
    std::vector<std::size_t> ladder;
    if (!st.ladder.empty()) ladder = parse_dims(st.ladder);
    Family f = make_family(st);
    check(cilab_family_sweep(f.get(), x.data(), dim, z.data(), z.size() / 2, ladder.empty() ? nullptr : ladder.data(),
                             ladder.size(), st.seed, st.tol, &t));
  } else {
    if (st.grid.empty()) usage("--theta-grid is required");
    auto grid = parse_grid(st.grid, "--theta-grid");
    auto b = make_pair(st, dim);
    check(cilab_scale_sweep(b.pair.get(), x.data(), grid.data(), grid.size(), st.fd_step, st.tol, &t));
  }
  TablePtr table(t);
  return table_csv(table.get());
}

std::string cmd_family(const State& st) {
  Family f = make_family(st);
  if (st.x.empty()) {
    std::size_t need = 0;
    cilab_family_serialize(f.get(), nullptr, 0, &need);
    std::string buf(need, '\0');
    check(cilab_family_serialize(f.get(), buf.data(), buf.size(), &need));
    buf.resize(need - 1);
    return buf;
  }
  auto x = need_x(st);
  std::size_t dim = x.size() / 2;
  double zr, zi, n = 0.0;
  point(st, zr, zi);
  std::vector<double> y(2 * dim);
  check(cilab_family_norm(f.get(), zr, zi, x.data(), dim, st.tol, &n));
  check(cilab_family_derivation(f.get(), zr, zi, x.data(), dim, st.tol, y.data()));
  double on = 0.0;
  check(cilab_family_norm(f.get(), zr, zi, y.data(), dim, st.tol, &on));
  return "z_re,z_im,norm,omega_norm\n" + format_real(zr) + "," + format_real(zi) + "," + format_real(n) + "," +
         format_real(on) + "\n";
}

std::string cmd_probe(const State& st) {
  auto dims = parse_dims(st.dims);
  cilab_table* t = nullptr;
  double slope = 0.0, flat_slope = 0.0;
  if (wants_family(st)) {
    Family f = make_family(st);
    double zr, zi;
    point(st, zr, zi);
    check(cilab_family_probe(f.get(), zr, zi, dims.data(), dims.size(), st.seed, st.flat_only, &t, &slope,
                             &flat_slope));
  } else {
    cilab_centralizer* c = nullptr;
    if (!st.kp.empty()) {
      double sr, si;
      parse_complex(st.kp_scale, "--kp-scale", sr, si);
      check(cilab_centralizer_kalton_peck(parse_double(st.kp, "--kp"), sr, si, &c));
    } else {
      auto b = make_pair(st, 1);
      check(cilab_centralizer_pair(b.pair.get(), st.theta, &c));
    }
    Centralizer h(c);
    std::vector<double> w = st.weight.empty() ? std::vector<double>{} : parse_reals(st.weight, "--weight");
    cilab_space s = make_space(st.space, w);
    check(cilab_boundedness_probe(h.get(), &s, dims.data(), dims.size(), st.seed, st.flat_only, &t, &slope,
                                  &flat_slope));
  }
  TablePtr table(t);
  std::fprintf(stderr, "slope_vs_log_dim=%s flat_slope_vs_log_dim=%s\n", format_real(slope).c_str(),
               format_real(flat_slope).c_str());
  return table_csv(table.get());
}

std::string cmd_indicator(const State& st) {
  if (st.f.empty()) usage("--f is required");
  auto f = parse_reals(st.f, "--f");
  std::vector<double> w = st.weight.empty() ? std::vector<double>{} : parse_reals(st.weight, "--weight");
  cilab_space s = make_space(st.space, w);
  double v = 0.0;
  if (st.numeric) check(cilab_indicator_numeric(&s, f.data(), f.size(), st.tol, &v));
  else check(cilab_indicator(&s, f.data(), f.size(), &v));
  return format_real(v) + "\n";
}

std::string cmd_verify(const State& st, int& code) {
  cilab_report* r = nullptr;
  check(cilab_verify(st.suite.c_str(), st.seed, &r));
  Report rep(r);
  std::size_t need = 0;
  cilab_report_to_csv(rep.get(), nullptr, 0, &need);
  std::string buf(need, '\0');
  check(cilab_report_to_csv(rep.get(), buf.data(), buf.size(), &need));
  buf.resize(need - 1);
  if (!cilab_report_all_passed(rep.get())) {
    for (std::size_t i = 0; i < cilab_report_count(rep.get()); ++i) {
      const char *m, *p, *in;
      double res, tol;
      int ok;
      check(cilab_report_entry(rep.get(), i, &m, &p, &in, &res, &tol, &ok));
      if (!ok) std::fprintf(stderr, "FAIL %s/%s inputs=%s residual=%g tolerance=%g\n", m, p, in, res, tol);
    }
    code = kExitInvariant;
  }
  return buf;
}

// ---- wiring

struct Cli {
  CLI::App app{"Numerical complex interpolation lab", "lab"};
  State st;
  std::map<std::string, CLI::App*> subs;

  Cli() {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    auto add = [&](const std::string& name, const std::string& help) {
      CLI::App* s = app.add_subcommand(name, help);
      s->add_option("--out", st.out, "write output to this path instead of stdout");
      s->add_option("--config", st.config, "JSON config; command-line flags take precedence");
      s->add_flag("--print-config", st.print_config, "print the effective config in canonical form and exit");
      g_allowed[name];
      subs[name] = s;
      return s;
    };

    CLI::App* s = add("norm", "interpolation norm of x, or a single space norm with --space");
    add_pair(s, st);
    opt(s, "space", st.space, "single space, e.g. l2");
    opt(s, "weight", st.weight, "weight of --space");

    s = add("factorize", "optimal factorization x = a0^(1-theta) a1^theta");
    add_pair(s, st);

    s = add("derive", "derivation of a pair, a family, or the Kalton-Peck map");
    add_pair(s, st);
    add_family(s, st);
    opt(s, "kp", st.kp, "Kalton-Peck exponent r");
    opt(s, "kp-scale", st.kp_scale, "Kalton-Peck scale factor");

    s = add("sweep", "scale sweep of a pair over theta, or of a family over z");
    add_pair(s, st);
    add_family(s, st);
    opt(s, "theta-grid", st.grid, "a:b:n or comma list");
    opt(s, "z-grid", st.z_grid, "a:b:n on the real axis or comma list of complex points");
    opt(s, "fd-step", st.fd_step, "finite-difference step");
    opt(s, "ladder", st.ladder, "dimensions for the boundedness columns");
    opt(s, "seed", st.seed, "probe seed");

    s = add("family", "canonical family JSON, or norm and omega_norm at --z with --x");
    add_family(s, st);
    opt(s, "x", st.x, "vector");
    opt(s, "tol", st.tol, "optimizer tolerance");

    s = add("probe", "boundedness probe of a centralizer over a dimension ladder");
    add_pair(s, st, false);
    add_family(s, st);
    opt(s, "kp", st.kp, "Kalton-Peck exponent r");
    opt(s, "kp-scale", st.kp_scale, "Kalton-Peck scale factor");
    opt(s, "space", st.space, "space the ratios are measured in");
    opt(s, "weight", st.weight, "weight of --space");
    opt(s, "dims", st.dims, "dimension ladder");
    opt(s, "seed", st.seed, "sample seed");
    flag(s, "flat-only", st.flat_only, "probe only the flat vector");

    s = add("indicator", "indicator functional of a weighted l_p space");
    opt(s, "space", st.space, "space, e.g. l2 or linf");
    opt(s, "weight", st.weight, "weight");
    opt(s, "f", st.f, "density, nonnegative comma list");
    flag(s, "numeric", st.numeric, "maximize directly instead of the closed form");
    opt(s, "tol", st.tol, "numeric tolerance");

    s = add("verify", "run invariant suites");
    opt(s, "suite", st.suite, "all or a module name");
    opt(s, "seed", st.seed, "seed");
  }

  CLI::App* chosen() {
    for (auto& [n, s] : subs)
      if (s->parsed()) return s;
    return nullptr;
  }
};

lab::LabConfig effective_config(CLI::App* sub, const State& st) {
  lab::LabConfig cfg;
  cfg.command = sub->get_name();
  for (const std::string& name : g_allowed[sub->get_name()]) {
    CLI::Option* o = sub->get_option("--" + name);
    if (!o->count()) continue;
    if (o->get_expected_min() == 0) {
      cfg.options[name] = true;
      continue;
    }
    std::string text = o->results().back();
    auto as_json = [](const std::string& t) -> nlohmann::json {
      const char* b = t.c_str();
      char* e = nullptr;
      double v = std::strtod(b, &e);
      if (!t.empty() && *e == '\0' && std::isfinite(v) && t.find_first_of("xXnN") == std::string::npos) {
        if (v == std::floor(v) && std::fabs(v) < 1e15 && t.find_first_of(".eE") == std::string::npos)
          return static_cast<long long>(v);
        return v;
      }
      return t;
    };
    if (text.find(',') != std::string::npos) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& piece : split(text, ',')) arr.push_back(as_json(piece));
      cfg.options[name] = arr;
    } else {
      cfg.options[name] = as_json(text);
    }
  }
  // Randomized commands always record their seed.
  if (g_allowed[sub->get_name()].count("seed") && !cfg.options.contains("seed")) cfg.options["seed"] = st.seed;
  return cfg;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.push_back(argv[i]);  // CLI11 consumes reversed vectors

  auto first = std::make_unique<Cli>();
  try {
    first->app.parse(std::vector<std::string>(args));
  } catch (const CLI::ParseError& e) {
    return first->app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  std::unique_ptr<Cli> cli = std::move(first);
  CLI::App* sub = cli->chosen();
  if (!cli->st.config.empty()) {
    std::set<std::string> given;
    for (const std::string& name : g_allowed[sub->get_name()])
      if (sub->get_option("--" + name)->count()) given.insert(name);
    lab::LabConfig cfg;
    try {
      cfg = lab::LabConfig::load(cli->st.config, sub->get_name(), g_allowed[sub->get_name()]);
    } catch (const lab::ConfigError& e) {
      std::fprintf(stderr, "error: %s\n", e.message.c_str());
      return kExitUsage;
    }
    std::vector<std::string> merged;
    for (int i = 1; i < argc; ++i) merged.push_back(argv[i]);
    for (auto& a : cfg.as_args(given)) merged.push_back(a);
    std::vector<std::string> rev(merged.rbegin(), merged.rend());
    g_allowed.clear();
    cli = std::make_unique<Cli>();
    try {
      cli->app.parse(rev);
    } catch (const CLI::ParseError& e) {
      std::fprintf(stderr, "error: config: %s\n", e.what());
      return kExitUsage;
    }
    sub = cli->chosen();
  }

  const State& st = cli->st;
  std::string text;
  int code = kExitOk;
  if (st.print_config) {
    text = effective_config(sub, st).dump();
  } else {
    const std::string name = sub->get_name();
    if (name == "norm") text = cmd_norm(st, *sub);
    else if (name == "factorize") text = cmd_factorize(st);
    else if (name == "derive") text = cmd_derive(st);
    else if (name == "sweep") text = cmd_sweep(st);
    else if (name == "family") text = cmd_family(st);
    else if (name == "probe") text = cmd_probe(st);
    else if (name == "indicator") text = cmd_indicator(st);
    else text = cmd_verify(st, code);
  }

  if (st.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream o(st.out, std::ios::binary);
    if (!o) usage("cannot write '" + st.out + "'");
    o << text;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
}
