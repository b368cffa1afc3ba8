#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cilab/calderon.hpp"

namespace cilab {

struct FamilySpec;  // families.hpp

namespace centralizer_kind {
struct KaltonPeck {
  double r;
  cplx scale;
};
struct Multiplication {
  ComplexVector g;
};
struct PairInduced {
  double theta;
};
struct FamilyInduced {
  cplx z0;
};
struct Zero {};
}  // namespace centralizer_kind

using CentralizerKind =
    std::variant<centralizer_kind::KaltonPeck, centralizer_kind::Multiplication,
                 centralizer_kind::PairInduced, centralizer_kind::FamilyInduced,
                 centralizer_kind::Zero>;

/// Evaluable homogeneous map x -> Omega(x) together with where it came from.
class CentralizerHandle {
 public:
  using Eval = std::function<ComplexVector(std::span<const cplx>)>;

  CentralizerHandle(Eval eval, CentralizerKind kind, bool linear, std::string label);

  ComplexVector operator()(std::span<const cplx> x) const { return eval_(x); }
  const CentralizerKind& kind() const noexcept { return kind_; }
  bool linear() const noexcept { return linear_; }
  const std::string& label() const noexcept { return label_; }

  static CentralizerHandle kalton_peck(double r, cplx scale = 1.0);
  static CentralizerHandle multiplication(ComplexVector g);
  static CentralizerHandle pair_induced(PairScale pair, double theta, double tol = 1e-12);
  static CentralizerHandle family_induced(std::shared_ptr<const FamilySpec> family, cplx z0);
  static CentralizerHandle zero();

 private:
  Eval eval_;
  CentralizerKind kind_;
  bool linear_;
  std::string label_;
};

/// scale * x log(|x| / ||x||_r), zero where x vanishes.
ComplexVector kalton_peck(double r, cplx scale, std::span<const cplx> x);

struct TwistedVector {
  ComplexVector f;
  ComplexVector x;
};

/// ||f - Omega x|| + ||x||.
double twisted_quasinorm(const CentralizerHandle& omega, const SpaceSpec& space, const TwistedVector& v);

/// ||Omega(a x) - a Omega(x)||.
double centralizer_defect(const CentralizerHandle& omega, const SpaceSpec& space,
                          std::span<const cplx> a, std::span<const cplx> x);

/// Largest defect / (||a||_inf ||x||) over a seeded mix of random and structured (a, x).
struct CentralizerConstantEstimate {
  double constant = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;
};
CentralizerConstantEstimate estimate_centralizer_constant(const CentralizerHandle& omega,
                                                          const SpaceSpec& space, std::size_t dim,
                                                          int samples, std::uint64_t seed);

/// Sampler families used by the probes; flat vectors are the known extremals of Kalton-Peck maps.
enum class SampleKind { Flat, Spike, Geometric, Rademacher };
const char* to_string(SampleKind k);

struct ProbeRow {
  std::size_t dim = 0;
  double max_ratio = 0.0;
  double flat_ratio = 0.0;
  SampleKind argmax = SampleKind::Flat;
};

/// Growth evidence: per-dimension sup of ||Omega x|| / ||x||. Never a verdict of (un)boundedness;
/// the fitted slope against log(dim) quantifies the trend.
struct ProbeReport {
  std::vector<ProbeRow> rows;
  double slope_vs_log_dim = 0.0;
  double flat_slope_vs_log_dim = 0.0;
  std::uint64_t seed = 0;
};

struct ProbeOptions {
  std::uint64_t seed = 7;
  int random_samples = 32;
  /// Restrict the sampler to flat vectors.
  bool flat_only = false;
};

/// `space_at` gives the norm used at each ladder dimension (weights may depend on dim).
ProbeReport boundedness_probe(const CentralizerHandle& omega,
                              const std::function<SpaceSpec(std::size_t)>& space_at,
                              const std::vector<std::size_t>& dims, const ProbeOptions& opts = {});
ProbeReport boundedness_probe(const CentralizerHandle& omega, const SpaceSpec& space,
                              const std::vector<std::size_t>& dims, const ProbeOptions& opts = {});

/// Least-squares slope of y against log(dim).
double fit_log_slope(const std::vector<std::size_t>& dims, const std::vector<double>& values);

/// Fits g_i = Omega(e_i)_i on basis vectors and probes Omega - Multiplication(g).
struct TrivialityProbe {
  ComplexVector multiplier;
  ProbeReport residual;
};
TrivialityProbe triviality_probe(const CentralizerHandle& omega, const SpaceSpec& space,
                                 const std::vector<std::size_t>& dims, const ProbeOptions& opts = {});

/// |‖x‖_s - ‖e^{-s g} x‖_{X(w0)}| for a weighted pair (X(w0), X(w1)) with g = log(w0/w1).
double linear_flow_check(std::span<const cplx> g, const PairScale& pair, double s,
                         std::span<const cplx> x, double tol = 1e-12);

}  // namespace cilab
