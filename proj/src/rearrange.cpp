#include "serwalk/rearrange.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "serwalk/geometry.hpp"

namespace serwalk {

namespace {

double vnorm(const std::vector<double>& v, NormKind kind) {
  double acc = 0.0;
  for (double x : v) acc = kind == NormKind::sup ? std::max(acc, std::abs(x)) : acc + x * x;
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double vdist(const double* a, const double* b, std::size_t dim, NormKind kind) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = a[i] - b[i];
    acc = kind == NormKind::sup ? std::max(acc, std::abs(x)) : acc + x * x;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double vdist(const std::vector<double>& a, const std::vector<double>& b, NormKind kind) {
  return vdist(a.data(), b.data(), a.size(), kind);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<double> to_doubles(const Point& p) {
  std::vector<double> out;
  out.reserve(p.dim());
  for (const auto& c : p.coords()) out.push_back(c.to_double());
  return out;
}

Batch batch_of(const Series& s, const std::vector<std::uint64_t>& idx) {
  Batch b;
  b.dim = s.dim();
  b.rows.resize(idx.size() * b.dim);
  for (std::size_t i = 0; i < idx.size(); ++i) s.term(idx[i], b.rows.data() + i * b.dim);
  return b;
}

double batch_sum_norm(const Batch& b, NormKind kind) {
  std::vector<double> acc(b.dim, 0.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t c = 0; c < b.dim; ++c) acc[c] += b.row(i)[c];
  return vnorm(acc, kind);
}

std::string list_indices(const std::vector<std::uint64_t>& idx) {
  std::string out = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
  return out + "]";
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t RpConstants::n_threshold(const Series& s, double eps, NormKind kind) {
  return s.first_index_with_norm_at_most(eps / 4.0, kind);
}

bool witness_family_monotone(const std::vector<RPWitness>& family) {
  for (const auto& a : family)
    for (const auto& b : family)
      if (a.epsilon > b.epsilon && (a.delta < b.delta || a.n_threshold > b.n_threshold)) return false;
  return true;
}

RPWitness certify_rp(const Series& s, double eps, std::size_t budget, std::uint64_t seed, NormKind kind) {
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
  RPWitness w;
  w.epsilon = eps;
  w.delta = RpConstants::delta(eps);
  w.n_threshold = RpConstants::n_threshold(s, eps, kind);
  const std::uint64_t len = s.length();
  if (w.n_threshold > len) throw Error("prefix too short: no term of norm <= " + fmt(eps / 4.0));

  // instances are drawn from [N, horizon]
  const std::uint64_t horizon = len == UINT64_MAX ? w.n_threshold + 4000 * s.dim() : len;
  const std::size_t dim = s.dim();
  std::vector<std::vector<std::uint64_t>> instances;
  std::vector<Batch> batches;

  // heads of negated pairs, grouped by equal term norm
  {
    std::vector<double> cur(dim), next(dim);
    std::vector<std::uint64_t> run;
    double run_norm = -1.0;
    auto close = [&]() {
      if (run.size() >= 2) {
        Batch b = batch_of(s, run);
        if (batch_sum_norm(b, kind) < w.delta) {
          instances.push_back(run);
          batches.push_back(std::move(b));
        }
      }
      run.clear();
      run_norm = -1.0;
    };
    std::uint64_t n = w.n_threshold;
    while (n < horizon) {
      s.term(n, cur.data());
      s.term(n + 1, next.data());
      bool pair = std::any_of(cur.begin(), cur.end(), [](double v) { return v != 0.0; });
      for (std::size_t c = 0; c < dim && pair; ++c) pair = next[c] == -cur[c];
      if (!pair) {
        close();
        ++n;
        continue;
      }
      const double nn = vnorm(cur, kind);
      if (nn != run_norm) close();
      run_norm = nn;
      run.push_back(n);
      n += 2;
    }
    close();
  }
  w.evidence.structured_instances = instances.size();

  // random windows beyond N, repaired until the sum is small
  std::mt19937_64 rng(seed);
  const std::uint64_t span = horizon - w.n_threshold + 1;
  const std::uint64_t width = std::min<std::uint64_t>(32, span);
  const std::size_t target_count = instances.size() + budget;
  std::size_t attempts = 0;
  while (instances.size() < target_count && attempts < 20 * budget + 20) {
    ++attempts;
    const std::uint64_t lo =
        w.n_threshold + std::uniform_int_distribution<std::uint64_t>(0, span - width)(rng);
    std::vector<std::uint64_t> pick(width);
    std::iota(pick.begin(), pick.end(), lo);
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(width, 16))(rng));
    std::sort(pick.begin(), pick.end());
    Batch b = batch_of(s, pick);
    while (!pick.empty() && batch_sum_norm(b, kind) >= w.delta) {
      // drop the term whose removal leaves the smallest sum
      std::size_t best = 0;
      double best_norm = 0.0;
      for (std::size_t r = 0; r < pick.size(); ++r) {
        std::vector<std::uint64_t> t = pick;
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(r));
        const double v = batch_sum_norm(batch_of(s, t), kind);
        if (r == 0 || v < best_norm) {
          best = r;
          best_norm = v;
        }
      }
      pick.erase(pick.begin() + static_cast<std::ptrdiff_t>(best));
      b = batch_of(s, pick);
    }
    if (pick.empty()) continue;
    instances.push_back(std::move(pick));
    batches.push_back(std::move(b));
  }

  const auto count = static_cast<std::ptrdiff_t>(batches.size());
  std::vector<double> worst(batches.size(), -1.0);  // -1 marks an unbalanced instance
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    const auto i = static_cast<std::size_t>(t);
    BalanceOptions bo;
    bo.kind = kind;
    bo.seed = seed + i;
    if (auto order = find_balanced_permutation(batches[i], eps, BalanceStrategy::ladder, bo))
      worst[i] = max_prefix_norm(batches[i], *order, kind);
  }
  for (std::size_t i = 0; i < worst.size(); ++i) {
    if (worst[i] < 0.0)
      throw RpCertificationError("RP certification failed at eps=" + fmt(eps) + ": no balanced permutation for instance " +
                                     list_indices(instances[i]),
                                 instances[i]);
    w.evidence.max_prefix_norm = std::max(w.evidence.max_prefix_norm, worst[i]);
  }
  w.evidence.instances = batches.size();
  return w;
}

RPWitness certify_rp(const std::vector<Point>& prefix, double eps, std::size_t budget, std::uint64_t seed,
                     NormKind kind) {
  return certify_rp(PrefixSeries(prefix), eps, budget, seed, kind);
}

// ---------------------------------------------------------------------------

TailSelection tail_sum_select(const Series& s, std::uint64_t start, const std::vector<double>& target, double tol,
                              NormKind kind) {
  const std::size_t dim = s.dim();
  if (target.size() != dim) throw InvalidArgument("dimension mismatch");
  TailSelection out;
  out.sum.assign(dim, 0.0);
  std::vector<double> err = target;
  std::vector<double> v(dim);
  double e = vnorm(err, kind);
  const std::uint64_t len = s.length();
  for (std::uint64_t n = start + 1; !(e < tol || e == 0.0); ++n) {
    if (n > len || n == 0) throw Error("prefix too short: tail selection ended " + fmt(e) + " from the target");
    s.term(n, v.data());
    double dot = 0.0, vv = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      dot += err[c] * v[c];
      vv += v[c] * v[c];
    }
    if (!(2.0 * dot > vv)) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      err[c] -= v[c];
      out.sum[c] += v[c];
    }
    out.indices.push_back(n);
    e = vnorm(err, kind);
  }
  out.error = e;
  return out;
}

TailSelection tail_sum_select(const std::vector<Point>& prefix, std::uint64_t start, const Point& target, double tol,
                              NormKind kind) {
  return tail_sum_select(PrefixSeries(prefix), start, to_doubles(target), tol, kind);
}

// ---------------------------------------------------------------------------

RearrangerState RearrangerState::empty(std::size_t dim) {
  RearrangerState st;
  st.sum.assign(dim, 0.0);
  return st;
}

RearrangerState extension_step(RearrangerState st, const Series& s, const std::vector<double>& a,
                               const std::vector<double>& b, double eps, double eps_next,
                               const ExtensionOptions& opts, ExtensionReport* report) {
  const std::size_t dim = s.dim();
  const NormKind kind = opts.kind;
  if (a.size() != dim || b.size() != dim || st.sum.size() != dim) throw InvalidArgument("dimension mismatch");
  if (!(eps_next > 0.0) || eps_next > eps) throw InvalidArgument("need 0 < eps_next <= eps");

  const double pre_tol = std::min(eps / 12.0, RpConstants::delta(eps / 2.0) / 3.0);
  const std::uint64_t n_eps = RpConstants::n_threshold(s, eps / 2.0, kind);
  const std::uint64_t n_next = RpConstants::n_threshold(s, eps_next / 2.0, kind);
  if (!(vdist(a, b, kind) < pre_tol)) throw InvalidArgument("extension precondition failed: |a - b| too large");
  if (!(vdist(st.sum, a, kind) < pre_tol))
    throw InvalidArgument("extension precondition failed: current sum " + fmt(vdist(st.sum, a, kind)) + " from a");
  if (!st.tau.covers(n_eps)) throw InvalidArgument("extension precondition failed: range does not cover N(eps/2)");

  const std::uint64_t old_max = st.tau.max_image();
  const std::size_t old_size = st.tau.size();
  const std::uint64_t k0 = std::max({n_next, n_eps, old_max});

  std::vector<std::uint64_t> idx;
  std::vector<double> start(dim);
  for (std::uint64_t n = st.tau.covered_prefix() + 1; n <= k0; ++n)
    if (!st.tau.contains(n)) idx.push_back(n);
  const std::size_t skipped = idx.size();

  Batch batch = batch_of(s, idx);
  std::vector<double> target = st.sum;
  for (std::size_t i = 0; i < batch.size(); ++i)
    for (std::size_t c = 0; c < dim; ++c) target[c] += batch.row(i)[c];
  for (std::size_t c = 0; c < dim; ++c) target[c] = b[c] - target[c];

  const double tol = std::min(eps_next / 12.0, RpConstants::delta(eps_next / 2.0) / 3.0);
  TailSelection tail = tail_sum_select(s, k0, target, tol, kind);
  idx.insert(idx.end(), tail.indices.begin(), tail.indices.end());
  {
    Batch t = batch_of(s, tail.indices);
    batch.rows.insert(batch.rows.end(), t.rows.begin(), t.rows.end());
  }

  double excursion = 0.0;
  if (!idx.empty()) {
    BalanceOptions bo;
    bo.kind = kind;
    bo.seed = opts.seed;
    auto order = find_balanced_permutation(batch, eps / 2.0, BalanceStrategy::ladder, bo);
    if (!order)
      throw Error("RP bound violated at stage: " + std::to_string(idx.size()) +
                  " terms admit no order with prefixes below " + fmt(eps / 2.0));
    for (std::size_t o : *order) {
      st.tau.push_back(idx[o - 1]);
      const double* r = batch.row(o - 1);
      for (std::size_t c = 0; c < dim; ++c) st.sum[c] += r[c];
      excursion = std::max(excursion, vdist(st.sum, a, kind));
      if (opts.trace) opts.trace->push_back_real(st.sum.data());
    }
  }

  const double final_error = vdist(st.sum, b, kind);
  if (st.tau.size() < old_size || st.tau.covered_prefix() < old_max)
    throw Error("extension conclusion (1) failed: old range not covered");
  if (!(excursion < eps)) throw Error("extension conclusion (2) failed: excursion " + fmt(excursion));
  if (!(final_error < tol)) throw Error("extension conclusion (3) failed: final error " + fmt(final_error));
  if (!st.tau.covers(n_next)) throw Error("extension conclusion (4) failed: N(eps'/2) not covered");

  st.k_marks.push_back(st.tau.size());
  st.anchors.push_back(b);
  if (report) {
    report->max_excursion = excursion;
    report->final_error = final_error;
    report->tolerance = tol;
    report->skipped = skipped;
    report->tail = tail.indices.size();
  }
  return st;
}

// ---------------------------------------------------------------------------

std::vector<double> ChainSchedule::at(std::size_t n) const { return {row(n), row(n) + dim}; }

Point ChainSchedule::point(std::size_t n) const { return Point::real(at(n)); }

std::size_t ChainSchedule::segment_of(std::size_t n) const {
  // boundaries = l_1, ..., l_{segments+1}
  auto it = std::upper_bound(boundaries.begin(), boundaries.end(), n);
  return static_cast<std::size_t>(it - boundaries.begin());
}

namespace {

struct GapGraph {
  std::vector<std::vector<std::size_t>> adj;  // ascending neighbours

  GapGraph(const detail::Flat& f, std::size_t n, double gap, NormKind kind) : adj(n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && vdist(f.row(i), f.row(j), f.dim, kind) <= gap) adj[i].push_back(j);
  }

  std::vector<std::size_t> preorder(std::size_t root) const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> out, stack{root};
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      out.push_back(v);
      for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it)
        if (!seen[*it]) stack.push_back(*it);
    }
    return out;
  }

  /// Shortest path from -> to, excluding from; lowest index wins ties.
  std::optional<std::vector<std::size_t>> path(std::size_t from, std::size_t to) const {
    if (from == to) return std::vector<std::size_t>{};
    std::vector<std::size_t> parent(adj.size(), adj.size());
    std::vector<std::size_t> queue{from};
    parent[from] = from;
    for (std::size_t h = 0; h < queue.size() && parent[to] == adj.size(); ++h)
      for (std::size_t u : adj[queue[h]])
        if (parent[u] == adj.size()) {
          parent[u] = queue[h];
          queue.push_back(u);
        }
    if (parent[to] == adj.size()) return std::nullopt;
    std::vector<std::size_t> out;
    for (std::size_t v = to; v != from; v = parent[v]) out.push_back(v);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

ChainSchedule build_chain_schedule(const PointSample& sample, const std::vector<double>& etas,
                                   const ChainOptions& opts) {
  if (sample.empty()) throw InvalidArgument("empty sample");
  if (sample.is_sparse()) throw InvalidArgument("chain schedules need a dense sample");
  if (etas.empty()) throw InvalidArgument("no segments requested");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) throw InvalidArgument("etas must be positive");
    if (i > 0 && etas[i] > etas[i - 1]) throw InvalidArgument("etas must be nonincreasing");
  }

  const detail::Flat f = detail::flatten(sample);
  const std::size_t n = sample.size();
  ChainSchedule cs;
  cs.dim = f.dim;
  cs.etas = etas;
  auto push = [&](const double* p) { cs.dense.insert(cs.dense.end(), p, p + f.dim); };

  std::optional<GapGraph> graph;
  double graph_gap = -1.0;
  std::vector<double> p(f.dim);

  push(f.row(0));
  cs.boundaries.push_back(1);
  for (std::size_t i = 1; i <= etas.size(); ++i) {
    const double eta = etas[i - 1];
    const double gap = opts.hop_gap > 0.0 ? opts.hop_gap : eta;
    const std::size_t from = (i - 1) % n;
    const std::size_t to = i % n;
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (n == 1) {
      push(f.row(0));
      cs.boundaries.push_back(cs.size());
      continue;
    }
    if (!graph || graph_gap != gap) {
      graph.emplace(f, n, gap, opts.kind);
      graph_gap = gap;
    }
    const std::vector<std::size_t> tour = graph->preorder(from);
    if (tour.size() != n)
      throw InvalidArgument(where + "sample not chainable at gap " + fmt(gap));

    std::vector<std::size_t> hops;
    std::size_t cur = from;
    auto walk_to = [&](std::size_t dst) {
      auto path = graph->path(cur, dst);
      if (!path) throw InvalidArgument(where + "sample not chainable at gap " + fmt(gap));
      hops.insert(hops.end(), path->begin(), path->end());
      cur = dst;
    };
    for (std::size_t k = 1; k < tour.size(); ++k) walk_to(tour[k]);
    walk_to(to);

    std::size_t prev = from;
    for (std::size_t h : hops) {
      const double d = vdist(f.row(prev), f.row(h), f.dim, opts.kind);
      const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(d / eta)));
      for (std::size_t k = 1; k < pieces; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(pieces);
        for (std::size_t c = 0; c < f.dim; ++c) p[c] = f.row(prev)[c] + t * (f.row(h)[c] - f.row(prev)[c]);
        push(p.data());
      }
      push(f.row(h));
      prev = h;
    }
    cs.boundaries.push_back(cs.size());
  }

  for (std::size_t i = 1; i <= etas.size(); ++i)
    for (std::size_t m = cs.boundaries[i - 1]; m < cs.boundaries[i]; ++m)
      if (vdist(cs.row(m), cs.row(m + 1), f.dim, opts.kind) > etas[i - 1] * (1.0 + 1e-12))
        throw Error("segment " + std::to_string(i) + ": step exceeds eta");
  return cs;
}

// ---------------------------------------------------------------------------

double stage_eta(std::size_t j) {
  const double eps = stage_epsilon(j);
  return std::min(eps / 48.0, RpConstants::delta(eps / 2.0) / 12.0);
}

RearrangeResult rearrange_to_limit_set(const Series& s, const PointSample& target, int stages,
                                       const RearrangeOptions& opts) {
  if (stages < 1) throw InvalidArgument("stages must be ≥ 1");
  if (target.empty()) throw InvalidArgument("empty sample");
  if (target.is_sparse()) throw InvalidArgument("target must be a dense sample");
  const std::size_t dim = s.dim();
  if (target.point(0).dim() != dim) throw InvalidArgument("dimension mismatch");
  const NormKind kind = opts.kind;
  const auto levels = static_cast<std::size_t>(stages);

  RearrangeResult res;
  for (std::size_t j = 1; j <= levels; ++j) res.epsilons.push_back(stage_epsilon(j));
  std::vector<double> etas;
  for (std::size_t j = 1; j <= levels; ++j) etas.push_back(stage_eta(j));
  ChainOptions co;
  co.kind = kind;
  co.hop_gap = opts.hop_gap;
  res.schedule = build_chain_schedule(target, etas, co);
  const ChainSchedule& cs = res.schedule;
  const std::size_t total = cs.size();

  res.walk = Walk::dense(dim, Mode::floating);
  res.walk.set_origin(Point::zeros(dim, Mode::floating), false);
  Walk* trace = opts.record_walk ? &res.walk : nullptr;
  std::size_t phase_start = 0;
  auto close_phase = [&]() {
    if (!trace) return;
    double bound = 0.0;
    std::vector<double> prev(dim, 0.0);
    if (phase_start > 0) prev = res.walk.row_doubles(phase_start - 1);
    for (std::size_t i = phase_start; i < res.walk.size(); ++i) {
      bound = std::max(bound, vdist(prev.data(), res.walk.real_row(i), dim, kind));
      std::copy(res.walk.real_row(i), res.walk.real_row(i) + dim, prev.begin());
    }
    res.walk.end_phase(bound);
    phase_start = res.walk.size();
  };

  // base step: identity up to N(eps_1/2), then a tail reaching d_1
  RearrangerState st = RearrangerState::empty(dim);
  {
    const std::uint64_t n1 = RpConstants::n_threshold(s, res.epsilons[0] / 2.0, kind);
    std::vector<double> v(dim);
    auto take = [&](std::uint64_t n) {
      s.term(n, v.data());
      st.tau.push_back(n);
      for (std::size_t c = 0; c < dim; ++c) st.sum[c] += v[c];
      if (trace) trace->push_back_real(st.sum.data());
    };
    st.tau.reserve(n1);
    for (std::uint64_t n = 1; n <= n1; ++n) take(n);
    const std::vector<double> d1 = cs.at(1);
    std::vector<double> want(dim);
    for (std::size_t c = 0; c < dim; ++c) want[c] = d1[c] - st.sum[c];
    const TailSelection tail = tail_sum_select(s, n1, want, etas[0], kind);
    for (auto n : tail.indices) take(n);
    st.k_marks.push_back(st.tau.size());
    st.anchors.push_back(d1);
    if (!(vdist(st.sum, d1, kind) < etas[0])) throw Error("stage 1 (base): anchor not reached");
  }

  res.invariants_ok = true;
  res.records.reserve(total);
  for (std::size_t i = 1; i < total; ++i) {
    const std::size_t j = cs.segment_of(i);
    const std::size_t q = cs.segment_of(i + 1);
    const double eps = stage_epsilon(j);
    const double eps_next = stage_epsilon(q);
    const std::vector<double> a = cs.at(i);
    const std::vector<double> b = cs.at(i + 1);
    const std::uint64_t prev_max = st.tau.max_image();

    ExtensionOptions eo;
    eo.kind = kind;
    eo.seed = opts.seed + i;
    eo.trace = trace;
    ExtensionReport rep;
    try {
      st = extension_step(std::move(st), s, a, b, eps, eps_next, eo, &rep);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("stage " + std::to_string(j) + " (step " + std::to_string(i) + "): " + e.what());
    } catch (const Error& e) {
      throw Error("stage " + std::to_string(j) + " (step " + std::to_string(i) + "): " + e.what());
    }

    StepRecord r;
    r.step = i;
    r.stage = j;
    r.k = st.tau.size();
    r.eps = eps;
    r.eta = etas[j - 1];
    r.anchor = a;
    r.stage_end_error = rep.final_error;
    r.prefix_max_excursion = rep.max_excursion;
    r.invariants_ok = st.tau.covered_prefix() >= prev_max                                // (ii)
                      && rep.max_excursion < eps                                          // (iii)
                      && rep.final_error < 4.0 * stage_eta(q)                             // (v)
                      && st.tau.covers(RpConstants::n_threshold(s, eps_next / 2.0, kind));  // (vi)
    res.invariants_ok = res.invariants_ok && r.invariants_ok;
    res.records.push_back(std::move(r));
    if (q != j) close_phase();
  }
  if (total == 1) close_phase();
  st.phase_index = levels;
  res.tau = std::move(st.tau);
  return res;
}

}  // namespace serwalk
