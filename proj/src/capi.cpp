#include "cilab/cilab.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cilab/errors.hpp"
#include "cilab/family_io.hpp"
#include "cilab/scale_harness.hpp"
#include "cilab/verify.hpp"

using namespace cilab;

struct cilab_pair {
  PairScale pair;
};
struct cilab_family {
  std::shared_ptr<const FamilySpec> spec;
};
struct cilab_centralizer {
  CentralizerHandle handle;
};
struct cilab_table {
  Table table;
};
struct cilab_report {
  VerifyReport report;
};

namespace {

thread_local std::string last_error;

cilab_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return CILAB_ERR_USAGE;
    case ErrorKind::Domain: return CILAB_ERR_DOMAIN;
    case ErrorKind::Numeric: return CILAB_ERR_NUMERIC;
    case ErrorKind::UnsupportedPoint: return CILAB_ERR_UNSUPPORTED_POINT;
    case ErrorKind::SingularSystem: return CILAB_ERR_SINGULAR;
    case ErrorKind::Endpoint: return CILAB_ERR_ENDPOINT;
    case ErrorKind::Parse: return CILAB_ERR_PARSE;
  }
  return CILAB_ERR_INTERNAL;
}

cilab_status fail(cilab_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <class Fn>
cilab_status guard(Fn&& fn) {
  try {
    fn();
    return CILAB_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CILAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CILAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CILAB_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw UsageError(std::string(what) + " must not be NULL");
}

ComplexVector read_complex(const double* x, std::size_t dim) {
  if (dim > 0) need(x, "vector");
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = {x[2 * i], x[2 * i + 1]};
  return v;
}

void write_complex(std::span<const cplx> v, double* out) {
  need(out, "output");
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

Exponent exponent_of(double p) {
  if (std::isinf(p) && p > 0) return Exponent::infinity();
  return Exponent::finite(p);
}

SpaceSpec space_of(const cilab_space* s) {
  need(s, "space");
  SpaceSpec out = SpaceSpec::lp(exponent_of(s->p));
  if (s->weight) out.weight = Weight(RealVector(s->weight, s->weight + s->weight_len));
  return out;
}

cilab_status copy_text(const std::string& text, char* buf, std::size_t capacity, std::size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf || capacity < text.size() + 1)
    return fail(CILAB_ERR_BUFFER, "buffer too small: need " + std::to_string(text.size() + 1) + " bytes");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return CILAB_OK;
}

const cilab_pair& deref(const cilab_pair* p) {
  need(p, "pair");
  return *p;
}
const cilab_family& deref(const cilab_family* p) {
  need(p, "family");
  return *p;
}
const cilab_centralizer& deref(const cilab_centralizer* p) {
  need(p, "centralizer");
  return *p;
}

Table probe_table(const ProbeReport& rep) {
  Table t;
  t.columns = {"dim", "max_ratio", "flat_ratio", "argmax"};
  for (const auto& r : rep.rows)
    t.add_row({static_cast<std::int64_t>(r.dim), r.max_ratio, r.flat_ratio, std::string(to_string(r.argmax))});
  return t;
}

}  // namespace

extern "C" {

const char* cilab_last_error(void) { return last_error.c_str(); }

const char* cilab_status_name(cilab_status s) {
  switch (s) {
    case CILAB_OK: return "ok";
    case CILAB_ERR_USAGE: return "usage";
    case CILAB_ERR_NUMERIC: return "numeric";
    case CILAB_ERR_INVARIANT: return "invariant";
    case CILAB_ERR_DOMAIN: return "domain";
    case CILAB_ERR_UNSUPPORTED_POINT: return "unsupported-point";
    case CILAB_ERR_SINGULAR: return "singular-system";
    case CILAB_ERR_ENDPOINT: return "endpoint";
    case CILAB_ERR_PARSE: return "parse";
    case CILAB_ERR_BUFFER: return "buffer";
    case CILAB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cilab_version(void) { return "0.1.0"; }

// ---- spaces and pairs

cilab_status cilab_space_norm(const cilab_space* space, const double* x, size_t dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = norm(space_of(space), read_complex(x, dim));
  });
}

cilab_status cilab_pair_create(const cilab_space* x0, const cilab_space* x1, size_t dim, cilab_pair** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_pair{PairScale(space_of(x0), space_of(x1), dim)};
  });
}

void cilab_pair_destroy(cilab_pair* pair) { delete pair; }

size_t cilab_pair_dim(const cilab_pair* pair) { return pair ? pair->pair.dim : 0; }

cilab_status cilab_pair_norm(const cilab_pair* pair, double theta, const double* x, double tol, double* out) {
  return guard([&] {
    need(out, "out");
    const auto& p = deref(pair).pair;
    *out = calderon_norm(p, theta, read_complex(x, p.dim), tol);
  });
}

cilab_status cilab_pair_factorize(const cilab_pair* pair, double theta, const double* x, double tol, double* a0,
                                  double* a1, double* value) {
  return guard([&] {
    const auto& p = deref(pair).pair;
    Factorization f = optimal_factorization(p, theta, read_complex(x, p.dim), tol);
    write_complex(f.a0, a0);
    write_complex(f.a1, a1);
    if (value) *value = f.achieved_value;
  });
}

cilab_status cilab_pair_derivation(const cilab_pair* pair, double theta, const double* x, double tol, double* out) {
  return guard([&] {
    const auto& p = deref(pair).pair;
    write_complex(pair_derivation(p, theta, read_complex(x, p.dim), tol), out);
  });
}

cilab_status cilab_multi_product_norm(const cilab_space* specs, const double* exponents, size_t n, const double* x,
                                      size_t dim, double tol, double* out) {
  return guard([&] {
    need(out, "out");
    need(specs, "specs");
    need(exponents, "exponents");
    std::vector<SpaceSpec> s;
    for (size_t j = 0; j < n; ++j) s.push_back(space_of(&specs[j]));
    *out = multi_product_norm(s, std::vector<double>(exponents, exponents + n), read_complex(x, dim), tol);
  });
}

cilab_status cilab_closed_form_exponent(double p0, double p1, double theta, double* r) {
  return guard([&] {
    need(r, "r");
    Exponent e = closed_form_lp_pair(exponent_of(p0), exponent_of(p1), theta).r();
    *r = e.is_infinite() ? INFINITY : e.value();
  });
}

cilab_status cilab_linear_flow_check(const cilab_pair* pair, const double* g, double s, const double* x, double tol,
                                     double* residual) {
  return guard([&] {
    need(residual, "residual");
    const auto& p = deref(pair).pair;
    *residual = linear_flow_check(read_complex(g, p.dim), p, s, read_complex(x, p.dim), tol);
  });
}

// ---- families

cilab_status cilab_family_parse(const char* json, cilab_family** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new cilab_family{std::make_shared<const FamilySpec>(parse_family(json))};
  });
}

cilab_status cilab_family_variable_exponent(const char* alpha_expr, double p_max, cilab_family** out) {
  return guard([&] {
    need(alpha_expr, "alpha");
    need(out, "out");
    std::optional<double> pm;
    if (!std::isinf(p_max)) pm = p_max;
    *out = new cilab_family{
        std::make_shared<const FamilySpec>(FamilySpec::variable_exponent(RationalFunction::parse(alpha_expr), pm))};
  });
}

cilab_status cilab_family_flat_diagonal(int power, const char* rule, const double* entries, size_t n,
                                        cilab_family** out) {
  return guard([&] {
    need(rule, "rule");
    need(out, "out");
    DiagonalRule d;
    std::string r(rule);
    if (r == "log1p") {
      d.kind = DiagonalRule::Kind::Log1p;
    } else if (r == "linear") {
      d.kind = DiagonalRule::Kind::Linear;
    } else if (r == "constant") {
      need(entries, "entries");
      if (n < 1) throw UsageError("constant diagonal needs one entry");
      d.kind = DiagonalRule::Kind::Constant;
      d.constant = entries[0];
    } else if (r == "explicit") {
      need(entries, "entries");
      d.kind = DiagonalRule::Kind::Explicit;
      d.explicit_entries.assign(entries, entries + n);
    } else {
      throw UsageError("unknown diagonal rule '" + r + "'");
    }
    *out = new cilab_family{std::make_shared<const FamilySpec>(FamilySpec::flat_diagonal(power, d))};
  });
}

cilab_status cilab_family_recenter(const cilab_family* family, double z_re, double z_im, cilab_family** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_family{std::make_shared<const FamilySpec>(deref(family).spec->recentered({z_re, z_im}))};
  });
}

void cilab_family_destroy(cilab_family* family) { delete family; }

const char* cilab_family_kind(const cilab_family* family) { return family ? family->spec->kind_name() : ""; }

cilab_status cilab_family_serialize(const cilab_family* family, char* buf, size_t capacity, size_t* needed) {
  std::string text;
  cilab_status s = guard([&] { text = serialize_family(*deref(family).spec); });
  if (s != CILAB_OK) return s;
  return copy_text(text, buf, capacity, needed);
}

cilab_status cilab_family_norm(const cilab_family* family, double z_re, double z_im, const double* x, size_t dim,
                               double tol, double* out) {
  return guard([&] {
    need(out, "out");
    *out = family_norm(FamilyPoint(deref(family).spec, {z_re, z_im}), read_complex(x, dim), tol);
  });
}

cilab_status cilab_family_derivation(const cilab_family* family, double z_re, double z_im, const double* x,
                                     size_t dim, double tol, double* out) {
  return guard([&] {
    write_complex(family_derivation(FamilyPoint(deref(family).spec, {z_re, z_im}), read_complex(x, dim), tol), out);
  });
}

// ---- centralizers

cilab_status cilab_centralizer_kalton_peck(double r, double scale_re, double scale_im, cilab_centralizer** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_centralizer{CentralizerHandle::kalton_peck(r, {scale_re, scale_im})};
  });
}

cilab_status cilab_centralizer_multiplication(const double* g, size_t dim, cilab_centralizer** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_centralizer{CentralizerHandle::multiplication(read_complex(g, dim))};
  });
}

cilab_status cilab_centralizer_pair(const cilab_pair* pair, double theta, cilab_centralizer** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_centralizer{CentralizerHandle::pair_induced(deref(pair).pair, theta)};
  });
}

cilab_status cilab_centralizer_family(const cilab_family* family, double z_re, double z_im, cilab_centralizer** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_centralizer{CentralizerHandle::family_induced(deref(family).spec, {z_re, z_im})};
  });
}

cilab_status cilab_centralizer_zero(cilab_centralizer** out) {
  return guard([&] {
    need(out, "out");
    *out = new cilab_centralizer{CentralizerHandle::zero()};
  });
}

void cilab_centralizer_destroy(cilab_centralizer* c) { delete c; }

const char* cilab_centralizer_label(const cilab_centralizer* c) { return c ? c->handle.label().c_str() : ""; }

cilab_status cilab_centralizer_eval(const cilab_centralizer* c, const double* x, size_t dim, double* out) {
  return guard([&] {
    ComplexVector y = deref(c).handle(read_complex(x, dim));
    if (y.size() != dim) throw UsageError("centralizer changed the dimension");
    write_complex(y, out);
  });
}

cilab_status cilab_twisted_quasinorm(const cilab_centralizer* c, const cilab_space* space, const double* f,
                                     const double* x, size_t dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = twisted_quasinorm(deref(c).handle, space_of(space), TwistedVector{read_complex(f, dim), read_complex(x, dim)});
  });
}

cilab_status cilab_centralizer_defect(const cilab_centralizer* c, const cilab_space* space, const double* a,
                                      const double* x, size_t dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = centralizer_defect(deref(c).handle, space_of(space), read_complex(a, dim), read_complex(x, dim));
  });
}

cilab_status cilab_centralizer_constant(const cilab_centralizer* c, const cilab_space* space, size_t dim, int samples,
                                        uint64_t seed, double* out) {
  return guard([&] {
    need(out, "out");
    *out = estimate_centralizer_constant(deref(c).handle, space_of(space), dim, samples, seed).constant;
  });
}

cilab_status cilab_boundedness_probe(const cilab_centralizer* c, const cilab_space* space, const size_t* dims,
                                     size_t ndims, uint64_t seed, int flat_only, cilab_table** table, double* slope,
                                     double* flat_slope) {
  return guard([&] {
    need(dims, "dims");
    need(table, "table");
    ProbeOptions po;
    po.seed = seed;
    po.flat_only = flat_only != 0;
    ProbeReport rep = boundedness_probe(deref(c).handle, space_of(space), std::vector<std::size_t>(dims, dims + ndims), po);
    if (slope) *slope = rep.slope_vs_log_dim;
    if (flat_slope) *flat_slope = rep.flat_slope_vs_log_dim;
    *table = new cilab_table{probe_table(rep)};
  });
}

cilab_status cilab_family_probe(const cilab_family* family, double z_re, double z_im, const size_t* dims,
                                size_t ndims, uint64_t seed, int flat_only, cilab_table** table, double* slope,
                                double* flat_slope) {
  return guard([&] {
    need(dims, "dims");
    need(table, "table");
    const auto& spec = deref(family).spec;
    FamilyPoint pt(spec, {z_re, z_im});
    auto space_at = [&](std::size_t n) {
      auto s = interpolated_space(pt, n);
      if (!s) throw UsageError("probe: this family has no closed-form space at z");
      return *s;
    };
    ProbeOptions po;
    po.seed = seed;
    po.flat_only = flat_only != 0;
    ProbeReport rep = boundedness_probe(CentralizerHandle::family_induced(spec, pt.z0), space_at,
                                        std::vector<std::size_t>(dims, dims + ndims), po);
    if (slope) *slope = rep.slope_vs_log_dim;
    if (flat_slope) *flat_slope = rep.flat_slope_vs_log_dim;
    *table = new cilab_table{probe_table(rep)};
  });
}

// ---- sweeps and tables

cilab_status cilab_scale_sweep(const cilab_pair* pair, const double* x, const double* grid, size_t n, double fd_step,
                               double tol, cilab_table** out) {
  return guard([&] {
    need(grid, "grid");
    need(out, "out");
    const auto& p = deref(pair).pair;
    SweepOptions so;
    so.fd_step = fd_step;
    so.tol = tol;
    *out = new cilab_table{sweep_table(scale_sweep(p, read_complex(x, p.dim), std::vector<double>(grid, grid + n), so))};
  });
}

cilab_status cilab_family_sweep(const cilab_family* family, const double* x, size_t dim, const double* z, size_t nz,
                                const size_t* ladder, size_t nladder, uint64_t seed, double tol, cilab_table** out) {
  return guard([&] {
    need(out, "out");
    FamilySweepOptions fo;
    fo.tol = tol;
    fo.seed = seed;
    if (nladder) {
      need(ladder, "ladder");
      fo.ladder.assign(ladder, ladder + nladder);
    }
    ComplexVector grid = read_complex(z, nz);
    *out = new cilab_table{family_sweep(*deref(family).spec, read_complex(x, dim), grid, fo)};
  });
}

void cilab_table_destroy(cilab_table* t) { delete t; }
size_t cilab_table_rows(const cilab_table* t) { return t ? t->table.rows.size() : 0; }
size_t cilab_table_cols(const cilab_table* t) { return t ? t->table.columns.size() : 0; }

const char* cilab_table_column(const cilab_table* t, size_t col) {
  if (!t || col >= t->table.columns.size()) return nullptr;
  return t->table.columns[col].c_str();
}

cilab_status cilab_table_get(const cilab_table* t, size_t row, size_t col, double* out) {
  return guard([&] {
    need(t, "table");
    need(out, "out");
    if (row >= t->table.rows.size() || col >= t->table.columns.size()) throw UsageError("table index out of range");
    const Cell& c = t->table.rows[row][col];
    if (const auto* d = std::get_if<double>(&c)) *out = *d;
    else if (const auto* z = std::get_if<cplx>(&c)) *out = z->real();
    else if (const auto* i = std::get_if<std::int64_t>(&c)) *out = static_cast<double>(*i);
    else throw UsageError("table cell is not numeric");
  });
}

cilab_status cilab_table_to_csv(const cilab_table* t, char* buf, size_t capacity, size_t* needed) {
  if (!t) return fail(CILAB_ERR_USAGE, "table must not be NULL");
  return copy_text(t->table.to_csv(), buf, capacity, needed);
}

// ---- indicators

namespace {
DensityVector density_of(const double* f, size_t n) {
  if (n > 0) need(f, "density");
  return DensityVector(RealVector(f, f + n));
}
}  // namespace

cilab_status cilab_indicator(const cilab_space* space, const double* f, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    *out = indicator(space_of(space), density_of(f, n));
  });
}

cilab_status cilab_indicator_numeric(const cilab_space* space, const double* f, size_t n, double tol, double* out) {
  return guard([&] {
    need(out, "out");
    IndicatorOptions o;
    if (tol > 0) o.tol = tol;
    *out = indicator_numeric(space_of(space), density_of(f, n), o);
  });
}

cilab_status cilab_omega_lift(const cilab_centralizer* c, double p, const double* f, size_t n, double* out) {
  return guard([&] { write_complex(omega_lift_lp(deref(c).handle, exponent_of(p), density_of(f, n)), out); });
}

cilab_status cilab_phi_omega(const cilab_centralizer* c, double p, const double* f, size_t n, double* re, double* im) {
  return guard([&] {
    cplx v = phi_omega(deref(c).handle, exponent_of(p), density_of(f, n));
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

cilab_status cilab_indicator_orientation(int* sigma, double* kappa) {
  return guard([&] {
    const auto& o = indicator_orientation();
    if (sigma) *sigma = o.sigma;
    if (kappa) *kappa = o.kappa;
  });
}

// ---- three arcs

cilab_status cilab_three_arc_coefficients(const double cuts[3], double alpha[3], double beta[6], double* det,
                                          double a[3], double b[3]) {
  return guard([&] {
    need(cuts, "cuts");
    ThreeArcSystem s = three_arc_coefficients(std::array<double, 3>{cuts[0], cuts[1], cuts[2]});
    for (int j = 0; j < 3; ++j) {
      if (alpha) alpha[j] = s.alpha[j];
      if (beta) {
        beta[2 * j] = s.beta[j].real();
        beta[2 * j + 1] = s.beta[j].imag();
      }
      if (a) a[j] = s.a[j];
      if (b) b[j] = s.b[j];
    }
    if (det) *det = s.det;
  });
}

cilab_status cilab_weights_from_multiplier(const double* f, size_t dim, const double cuts[3], double* weights) {
  return guard([&] {
    need(cuts, "cuts");
    need(weights, "weights");
    auto ws = weights_from_multiplier(read_complex(f, dim), ArcPartition({cuts[0], cuts[1], cuts[2]}));
    for (size_t j = 0; j < 3; ++j)
      for (size_t i = 0; i < dim; ++i) weights[j * dim + i] = ws[j][i];
  });
}

// ---- disk and strip

cilab_status cilab_strip_conformal(double s_re, double s_im, double z_re, double z_im, double out[2]) {
  return guard([&] {
    need(out, "out");
    DomainPoint::strip({s_re, s_im});
    cplx v = strip_conformal({s_re, s_im}, {z_re, z_im});
    out[0] = v.real();
    out[1] = v.imag();
  });
}

cilab_status cilab_pseudo_hyperbolic_distance(int domain, double s_re, double s_im, double t_re, double t_im,
                                              double* out) {
  return guard([&] {
    need(out, "out");
    auto mk = [&](cplx v) { return domain == 0 ? DomainPoint::disk(v) : DomainPoint::strip(v); };
    if (domain != 0 && domain != 1) throw UsageError("domain must be 0 (disk) or 1 (strip)");
    *out = pseudo_hyperbolic_distance(mk({s_re, s_im}), mk({t_re, t_im}));
  });
}

cilab_status cilab_mobius_deviation(double a_re, double a_im, int samples, double* out) {
  return guard([&] {
    need(out, "out");
    *out = mobius_deviation({a_re, a_im}, samples);
  });
}

cilab_status cilab_harmonic_measure(double z_re, double z_im, double start, double end, int nodes_per_arc,
                                    double* out) {
  return guard([&] {
    need(out, "out");
    QuadratureConfig q;
    if (nodes_per_arc > 0) q.nodes_per_arc = nodes_per_arc;
    q.validate();
    *out = harmonic_measure({z_re, z_im}, Arc(start, end), q);
  });
}

cilab_status cilab_herglotz(const double* cuts, const double* values, size_t n, double z_re, double z_im,
                            int derivative, double out[2]) {
  return guard([&] {
    need(cuts, "cuts");
    need(values, "values");
    need(out, "out");
    PiecewiseConstant pc(ArcPartition(std::vector<double>(cuts, cuts + n)), std::vector<double>(values, values + n));
    cplx v = derivative ? herglotz_derivative(pc.as_function(), {z_re, z_im})
                        : herglotz_transform(pc.as_function(), {z_re, z_im});
    out[0] = v.real();
    out[1] = v.imag();
  });
}

// ---- invariant suites

cilab_status cilab_verify(const char* suite, uint64_t seed, cilab_report** out) {
  return guard([&] {
    need(suite, "suite");
    need(out, "out");
    *out = new cilab_report{run_verify(suite, seed)};
  });
}

void cilab_report_destroy(cilab_report* r) { delete r; }
size_t cilab_report_count(const cilab_report* r) { return r ? r->report.results.size() : 0; }
int cilab_report_all_passed(const cilab_report* r) { return r && r->report.all_passed() ? 1 : 0; }

cilab_status cilab_report_entry(const cilab_report* r, size_t i, const char** module, const char** property,
                                const char** inputs, double* residual, double* tolerance, int* passed) {
  return guard([&] {
    need(r, "report");
    if (i >= r->report.results.size()) throw UsageError("report index out of range");
    const PropertyResult& e = r->report.results[i];
    if (module) *module = e.module.c_str();
    if (property) *property = e.property.c_str();
    if (inputs) *inputs = e.inputs.c_str();
    if (residual) *residual = e.residual;
    if (tolerance) *tolerance = e.tolerance;
    if (passed) *passed = e.passed ? 1 : 0;
  });
}

cilab_status cilab_report_to_csv(const cilab_report* r, char* buf, size_t capacity, size_t* needed) {
  if (!r) return fail(CILAB_ERR_USAGE, "report must not be NULL");
  return copy_text(r->report.to_table().to_csv(), buf, capacity, needed);
}

}  // extern "C"
