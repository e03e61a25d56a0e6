/** @file rearrange.hpp
 *  @brief Rearrangement Property checks and the rearranger that steers partial
 *  sums of a full-sum-range series onto a prescribed limit set.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "serwalk/balance.hpp"
#include "serwalk/series.hpp"
#include "serwalk/walk.hpp"

namespace serwalk {

// ---------------------------------------------------------------------------
// RP constants and certification

struct RpEvidence {
  std::size_t instances = 0;
  std::size_t structured_instances = 0;  // negated-pair batches found beyond N
  double max_prefix_norm = 0.0;          // worst balanced prefix observed
};

struct RPWitness {
  double epsilon = 0.0;
  std::uint64_t n_threshold = 1;  // N(eps)
  double delta = 0.0;             // delta(eps)
  RpEvidence evidence;
};

/// The constants proposed for every series: N(eps) is the first index with term
/// norm <= eps/4 and delta(eps) = eps/2.
struct RpConstants {
  static std::uint64_t n_threshold(const Series& s, double eps, NormKind kind);
  static double delta(double eps) { return eps / 2.0; }
};

/// Thrown when some instance admits no balanced order.
class RpCertificationError : public Error {
 public:
  RpCertificationError(const std::string& what, std::vector<std::uint64_t> indices)
      : Error(what), instance_(std::move(indices)) {}
  /// 1-based series indices of the failing batch.
  const std::vector<std::uint64_t>& instance() const { return instance_; }

 private:
  std::vector<std::uint64_t> instance_;
};

/// Stress-tests the proposed constants on `budget` random batches beyond N(eps)
/// with sum norm < delta(eps), plus every batch of heads of negated pairs
/// (x_{n+1} = -x_n) sharing one term norm. Each batch must balance below eps.
RPWitness certify_rp(const Series& s, double eps, std::size_t budget, std::uint64_t seed = 0,
                     NormKind kind = NormKind::euclidean);
RPWitness certify_rp(const std::vector<Point>& prefix, double eps, std::size_t budget,
                     std::uint64_t seed = 0, NormKind kind = NormKind::euclidean);

/// delta nonincreasing and N nondecreasing as eps decreases.
bool witness_family_monotone(const std::vector<RPWitness>& family);

// ---------------------------------------------------------------------------
// Tail selection

struct TailSelection {
  std::vector<std::uint64_t> indices;  // increasing, all > start
  std::vector<double> sum;
  double error = 0.0;                  // norm of sum - target
};

/// Scans indices start+1, start+2, ... and takes a term whenever it brings the
/// running sum strictly closer to target in the Euclidean norm. Stops once the
/// error norm is < tol (or zero). Throws Error("prefix too short").
TailSelection tail_sum_select(const Series& s, std::uint64_t start, const std::vector<double>& target,
                              double tol, NormKind kind = NormKind::euclidean);
TailSelection tail_sum_select(const std::vector<Point>& prefix, std::uint64_t start, const Point& target,
                              double tol, NormKind kind = NormKind::euclidean);

// ---------------------------------------------------------------------------
// Extension step

struct RearrangerState {
  PartialPermutation tau;
  std::vector<double> sum;                    // sum of the terms in the range of tau
  std::vector<std::uint64_t> k_marks;         // size of tau after each completed step
  std::vector<std::vector<double>> anchors;   // d_i'
  std::size_t phase_index = 0;

  static RearrangerState empty(std::size_t dim);
};

struct ExtensionOptions {
  NormKind kind = NormKind::euclidean;
  std::uint64_t seed = 0;
  Walk* trace = nullptr;  // receives every new prefix sum when set
};

struct ExtensionReport {
  double max_excursion = 0.0;  // max ||S_p - a|| over new prefixes
  double final_error = 0.0;    // ||S_k' - b||
  double tolerance = 0.0;      // min{eps_next/12, delta(eps_next/2)/3}
  std::size_t skipped = 0;
  std::size_t tail = 0;
};

/// One extension step: moves the partial sum from near a to
/// near b while every new prefix stays within eps of a. Throws InvalidArgument
/// on violated preconditions, Error("RP bound violated at stage") when the
/// batch cannot be balanced, and Error on any failed conclusion.
RearrangerState extension_step(RearrangerState state, const Series& s, const std::vector<double>& a,
                               const std::vector<double>& b, double eps, double eps_next,
                               const ExtensionOptions& opts = {}, ExtensionReport* report = nullptr);

// ---------------------------------------------------------------------------
// Chain schedule

struct ChainSchedule {
  std::size_t dim = 0;
  std::vector<double> dense;               // row-major d_1, d_2, ...
  std::vector<std::size_t> boundaries;     // l_1 = 1 < l_2 < ... (1-based), one past the last segment too
  std::vector<double> etas;

  std::size_t size() const { return dim == 0 ? 0 : dense.size() / dim; }
  const double* row(std::size_t n) const { return dense.data() + (n - 1) * dim; }  // 1-based
  std::vector<double> at(std::size_t n) const;
  Point point(std::size_t n) const;
  std::size_t segments() const { return etas.size(); }
  /// Segment of dense index n (1-based): l_j <= n < l_{j+1}; the final point maps past the last segment.
  std::size_t segment_of(std::size_t n) const;
};

struct ChainOptions {
  NormKind kind = NormKind::euclidean;
  /// 0: every hop must be a sample gap <= eta_i. Otherwise hops are sample gaps
  /// <= hop_gap, cut into equal steps <= eta_i.
  double hop_gap = 0.0;
};

/// Segment i is a tour of the sample from v_i ending at v_{i+1}, v_i = sample[(i-1) mod n].
/// The tour follows the depth-first preorder of the gap graph, joining consecutive
/// nodes by shortest gap paths.
ChainSchedule build_chain_schedule(const PointSample& sample, const std::vector<double>& etas,
                                   const ChainOptions& opts = {});

// ---------------------------------------------------------------------------
// Rearranger

struct RearrangeOptions {
  NormKind kind = NormKind::euclidean;
  double hop_gap = 0.1;  // see ChainOptions; 0 demands eta-chainable samples
  std::uint64_t seed = 0;
  bool record_walk = true;
};

/// One induction step i: d_i -> d_{i+1}.
struct StepRecord {
  std::size_t step = 0;
  std::size_t stage = 0;          // level j with l_j <= i < l_{j+1}
  std::uint64_t k = 0;            // size of tau after the step
  double eps = 0.0;
  double eta = 0.0;
  std::vector<double> anchor;     // d_i'
  double stage_end_error = 0.0;   // ||S_k - d_{i+1}'||
  double prefix_max_excursion = 0.0;
  bool invariants_ok = false;
};

struct RearrangeResult {
  PartialPermutation tau;
  Walk walk;                      // prefix sums; phase j = level j
  ChainSchedule schedule;
  std::vector<StepRecord> records;
  std::vector<double> epsilons;   // eps_1..eps_stages
  bool invariants_ok = false;
};

inline double stage_epsilon(std::size_t j) { return std::ldexp(1.0, -static_cast<int>(j)); }
/// min{eps_j/48, delta(eps_j/2)/12}
double stage_eta(std::size_t j);

RearrangeResult rearrange_to_limit_set(const Series& s, const PointSample& target, int stages,
                                       const RearrangeOptions& opts = {});

}  // namespace serwalk
