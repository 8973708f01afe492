#include "dfa/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dfa/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dfa {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

MixtureTables MixtureTables::build(const MixtureEvaluator& ev) {
  MixtureTables t;
  t.kind = ev.ref_kind();
  t.num_actions = ev.num_actions();
  t.num_nodes = ev.grid().size();
  t.num_refs = ev.num_refs();
  t.eta.resize(t.num_nodes);
  for (std::size_t k = 0; k < t.num_nodes; ++k) t.eta[k] = ev.node_eta(k);

  if (t.kind == RefKind::Expert) {
    t.block_const.resize(t.num_nodes);
    t.abar.assign(t.num_nodes * t.num_refs, 0.0);
    t.mbar.assign(t.num_nodes, 0.0);
    t.em1.resize(t.num_nodes);
    const auto log_p = ev.log_ref_weights();
    for (std::size_t k = 0; k < t.num_nodes; ++k) {
      // scale each block by its largest term so the linear-domain masses stay
      // representable no matter how long the history is
      double scale = kNegInf;
      for (std::size_t n = 0; n < t.num_refs; ++n)
        scale = std::max(scale, log_p[n] + ev.acc_exponent(n, k));
      double mass = 0.0;
      for (std::size_t n = 0; n < t.num_refs; ++n) {
        const double a = std::exp(log_p[n] + ev.acc_exponent(n, k) - scale);
        t.abar[k * t.num_refs + n] = a;
        mass += a;
      }
      t.mbar[k] = mass;
      t.block_const[k] = ev.grid().log_weight[k] + scale - 0.5 * t.eta[k] * t.eta[k];
      t.em1[k] = 1.0 - std::exp(-t.eta[k]);
    }
  } else {
    t.term_eval.assign(t.num_refs * t.num_nodes, 0.0);
    t.term_mass.assign(t.num_refs * t.num_nodes, 0.0);
    const auto log_p = ev.log_ref_weights();
    for (std::size_t n = 0; n < t.num_refs; ++n)
      for (std::size_t k = 0; k < t.num_nodes; ++k) {
        const double mass = log_p[n] + ev.grid().log_weight[k] + ev.acc_exponent(n, k);
        t.term_mass[n * t.num_nodes + k] = mass;
        t.term_eval[n * t.num_nodes + k] = mass - ev.step_correction(n, k);
      }
    t.selections.assign(ev.step_selections().begin(), ev.step_selections().end());
    t.matrices = ev.step_matrices();
  }
  return t;
}

double MixtureTables::threshold_log() const {
  if (kind == RefKind::Expert) {
    std::vector<double> xs(num_nodes);
    for (std::size_t k = 0; k < num_nodes; ++k)
      xs[k] = block_const[k] + 0.5 * eta[k] * eta[k] + std::log(mbar[k]);
    return log_sum_exp(xs);
  }
  return log_sum_exp(term_mass);
}

StepFunction::StepFunction(const MixtureTables* tables, std::vector<double> gamma)
    : tables_(tables), gamma_(std::move(gamma)) {
  if (static_cast<int>(gamma_.size()) != tables_->num_actions)
    throw std::invalid_argument("StepFunction: decision dimension mismatch");
  if (tables_->kind == RefKind::Rule) {
    rvec_.assign(tables_->num_refs * tables_->num_actions, 0.0);
    for (std::size_t n = 0; n < tables_->num_refs; ++n) {
      const double sel = tables_->selections[n];
      if (sel == 0.0) continue;
      const std::vector<double> moved = tables_->matrices[n].apply(gamma_);
      for (int j = 0; j < tables_->num_actions; ++j)
        rvec_[n * tables_->num_actions + j] = sel * (gamma_[j] - moved[j]);
    }
  }
}

double StepFunction::log_at_vertex(std::uint64_t mask) const {
  const int n_act = tables_->num_actions;
  const std::size_t K = tables_->num_nodes;
  if (tables_->kind == RefKind::Expert) {
    double u = 0.0;
    std::vector<double> amass(K, 0.0);
    for (int j = 0; j < n_act; ++j) {
      if (!((mask >> j) & 1u)) continue;
      u += gamma_[j];
      for (std::size_t k = 0; k < K; ++k) amass[k] += tables_->abar[k * tables_->num_refs + j];
    }
    std::vector<double> xs(K);
    for (std::size_t k = 0; k < K; ++k) {
      const double s = std::max(tables_->mbar[k] - tables_->em1[k] * amass[k], 1e-300);
      xs[k] = tables_->block_const[k] + tables_->eta[k] * u + std::log(s);
    }
    return log_sum_exp(xs);
  }
  const std::size_t R = tables_->num_refs;
  std::vector<double> xs;
  xs.reserve(R * K);
  for (std::size_t n = 0; n < R; ++n) {
    double s = 0.0;
    const double* r = rvec_.data() + n * n_act;
    for (int j = 0; j < n_act; ++j)
      if ((mask >> j) & 1u) s += r[j];
    for (std::size_t k = 0; k < K; ++k)
      xs.push_back(tables_->term_eval[n * K + k] + tables_->eta[k] * s);
  }
  return log_sum_exp(xs);
}

double StepFunction::log_at(std::span<const double> omega) const {
  const int n_act = tables_->num_actions;
  if (static_cast<int>(omega.size()) != n_act)
    throw std::invalid_argument("StepFunction::log_at: outcome dimension mismatch");
  const std::size_t K = tables_->num_nodes;
  if (tables_->kind == RefKind::Expert) {
    const double u = dot(gamma_, omega);
    std::vector<double> xs(K);
    for (std::size_t k = 0; k < K; ++k) {
      double s = 0.0;
      for (std::size_t n = 0; n < tables_->num_refs; ++n)
        s += tables_->abar[k * tables_->num_refs + n] * std::exp(-tables_->eta[k] * omega[n]);
      xs[k] = tables_->block_const[k] + tables_->eta[k] * u + std::log(s);
    }
    return log_sum_exp(xs);
  }
  const std::size_t R = tables_->num_refs;
  std::vector<double> xs;
  xs.reserve(R * K);
  for (std::size_t n = 0; n < R; ++n) {
    double s = 0.0;
    for (int j = 0; j < n_act; ++j) s += rvec_[n * n_act + j] * omega[j];
    for (std::size_t k = 0; k < K; ++k)
      xs.push_back(tables_->term_eval[n * K + k] + tables_->eta[k] * s);
  }
  return log_sum_exp(xs);
}

std::vector<double> StepFunction::grad_log_gamma(std::span<const double> omega) const {
  const int n_act = tables_->num_actions;
  const std::size_t K = tables_->num_nodes;
  std::vector<double> grad(n_act, 0.0);
  if (tables_->kind == RefKind::Expert) {
    const double u = dot(gamma_, omega);
    std::vector<double> xs(K);
    for (std::size_t k = 0; k < K; ++k) {
      double s = 0.0;
      for (std::size_t n = 0; n < tables_->num_refs; ++n)
        s += tables_->abar[k * tables_->num_refs + n] * std::exp(-tables_->eta[k] * omega[n]);
      xs[k] = tables_->block_const[k] + tables_->eta[k] * u + std::log(s);
    }
    const double total = log_sum_exp(xs);
    double eta_mix = 0.0;
    for (std::size_t k = 0; k < K; ++k) eta_mix += std::exp(xs[k] - total) * tables_->eta[k];
    for (int j = 0; j < n_act; ++j) grad[j] = eta_mix * omega[j];
    return grad;
  }
  const std::size_t R = tables_->num_refs;
  std::vector<double> xs(R * K);
  for (std::size_t n = 0; n < R; ++n) {
    double s = 0.0;
    for (int j = 0; j < n_act; ++j) s += rvec_[n * n_act + j] * omega[j];
    for (std::size_t k = 0; k < K; ++k)
      xs[n * K + k] = tables_->term_eval[n * K + k] + tables_->eta[k] * s;
  }
  const double total = log_sum_exp(xs);
  for (std::size_t n = 0; n < R; ++n) {
    const double sel = tables_->selections[n];
    if (sel == 0.0) continue;
    double coef = 0.0;
    for (std::size_t k = 0; k < K; ++k) coef += std::exp(xs[n * K + k] - total) * tables_->eta[k];
    // d/dgamma_j of sel*((gamma - M_n gamma) . omega) = sel*(omega_j - (M_n^T omega)_j)
    const StochMatrix& m = tables_->matrices[n];
    for (int j = 0; j < n_act; ++j) {
      double mt = 0.0;
      for (int i = 0; i < n_act; ++i) mt += m.entry(i, j) * omega[i];
      grad[j] += coef * sel * (omega[j] - mt);
    }
  }
  return grad;
}

std::vector<double> vertex_to_outcome(std::uint64_t mask, int dim) {
  std::vector<double> omega(dim, 0.0);
  for (int j = 0; j < dim; ++j) omega[j] = ((mask >> j) & 1u) ? 1.0 : 0.0;
  return omega;
}

namespace {

SupResult make_vertex_result(const StepFunction& f, double value, std::uint64_t mask, bool exact) {
  SupResult r;
  r.log_value = value;
  r.vertex_mask = mask;
  r.witness = vertex_to_outcome(mask, f.dim());
  r.exact = exact;
  return r;
}

}  // namespace

SupResult sup_vertices_serial(const StepFunction& f) {
  if (f.dim() > 62) throw std::invalid_argument("sup_vertices: dimension too large for exact scan");
  const std::uint64_t count = std::uint64_t{1} << f.dim();
  double best = kNegInf;
  std::uint64_t best_mask = 0;
  for (std::uint64_t v = 0; v < count; ++v) {
    const double x = f.log_at_vertex(v);
    if (x > best) {
      best = x;
      best_mask = v;
    }
  }
  return make_vertex_result(f, best, best_mask, true);
}

SupResult sup_vertices_parallel(const StepFunction& f) {
#ifndef _OPENMP
  return sup_vertices_serial(f);
#else
  if (f.dim() > 62) throw std::invalid_argument("sup_vertices: dimension too large for exact scan");
  const std::int64_t count = std::int64_t{1} << f.dim();
  const int max_threads = omp_get_max_threads();
  std::vector<double> thread_best(max_threads, kNegInf);
  std::vector<std::uint64_t> thread_mask(max_threads, ~std::uint64_t{0});
#pragma omp parallel
  {
    const int tid = omp_get_thread_num();
    double best = kNegInf;
    std::uint64_t best_mask = ~std::uint64_t{0};
#pragma omp for schedule(static)
    for (std::int64_t v = 0; v < count; ++v) {
      const double x = f.log_at_vertex(static_cast<std::uint64_t>(v));
      // iteration order is ascending inside a chunk, so > keeps the lowest
      // mask among same-thread ties
      if (x > best || best_mask == ~std::uint64_t{0}) {
        best = x;
        best_mask = static_cast<std::uint64_t>(v);
      }
    }
    thread_best[tid] = best;
    thread_mask[tid] = best_mask;
  }
  // cross-thread reduction: highest value, ties to the lowest mask; the result
  // does not depend on thread count or scheduling
  double best = kNegInf;
  std::uint64_t best_mask = ~std::uint64_t{0};
  for (int tid = 0; tid < max_threads; ++tid) {
    if (thread_mask[tid] == ~std::uint64_t{0}) continue;  // ran no iterations
    if (thread_best[tid] > best || (thread_best[tid] == best && thread_mask[tid] < best_mask)) {
      best = thread_best[tid];
      best_mask = thread_mask[tid];
    }
  }
  if (best_mask == ~std::uint64_t{0}) best_mask = 0;
  return make_vertex_result(f, best, best_mask, true);
#endif
}

SupResult sup_vertices_reference(const MixtureEvaluator& ev, std::span<const double> gamma) {
  if (ev.num_actions() > 24) throw std::invalid_argument("reference sup: dimension too large");
  const std::uint64_t count = std::uint64_t{1} << ev.num_actions();
  double best = kNegInf;
  std::uint64_t best_mask = 0;
  for (std::uint64_t v = 0; v < count; ++v) {
    const std::vector<double> omega = vertex_to_outcome(v, ev.num_actions());
    const double x = ev.eval_log(gamma, omega);
    if (x > best) {
      best = x;
      best_mask = v;
    }
  }
  SupResult r;
  r.log_value = best;
  r.vertex_mask = best_mask;
  r.witness = vertex_to_outcome(best_mask, ev.num_actions());
  r.exact = true;
  return r;
}

// ---------------------------------------------------------------------------
// heuristic coordinate-ascent walks

namespace {

// Incremental vertex state for one walk. Values drift by a few ulps over a
// walk; the final candidate is re-evaluated from scratch before comparison.
class VertexWalker {
 public:
  VertexWalker(const StepFunction& f, std::vector<std::uint8_t> bits)
      : f_(f), t_(f.tables()), bits_(std::move(bits)) {
    if (t_.kind == RefKind::Expert) {
      amass_.assign(t_.num_nodes, 0.0);
      for (int j = 0; j < t_.num_actions; ++j) {
        if (!bits_[j]) continue;
        u_ += f_.gamma()[j];
        for (std::size_t k = 0; k < t_.num_nodes; ++k) amass_[k] += t_.abar[k * t_.num_refs + j];
      }
    } else {
      const auto r = f_.rule_coeffs();
      svals_.assign(t_.num_refs, 0.0);
      for (std::size_t n = 0; n < t_.num_refs; ++n) {
        double s = 0.0;
        for (int j = 0; j < t_.num_actions; ++j)
          if (bits_[j]) s += r[n * t_.num_actions + j];
        svals_[n] = s;
      }
    }
  }

  double value() const {
    if (t_.kind == RefKind::Expert) {
      std::vector<double> xs(t_.num_nodes);
      for (std::size_t k = 0; k < t_.num_nodes; ++k) {
        const double s = std::max(t_.mbar[k] - t_.em1[k] * amass_[k], 1e-300);
        xs[k] = t_.block_const[k] + t_.eta[k] * u_ + std::log(s);
      }
      return log_sum_exp(xs);
    }
    std::vector<double> xs;
    xs.reserve(t_.num_refs * t_.num_nodes);
    for (std::size_t n = 0; n < t_.num_refs; ++n)
      for (std::size_t k = 0; k < t_.num_nodes; ++k)
        xs.push_back(t_.term_eval[n * t_.num_nodes + k] + t_.eta[k] * svals_[n]);
    return log_sum_exp(xs);
  }

  void flip(int j) {
    const double sign = bits_[j] ? -1.0 : 1.0;
    if (t_.kind == RefKind::Expert) {
      u_ += sign * f_.gamma()[j];
      for (std::size_t k = 0; k < t_.num_nodes; ++k)
        amass_[k] += sign * t_.abar[k * t_.num_refs + j];
    } else {
      const auto r = f_.rule_coeffs();
      for (std::size_t n = 0; n < t_.num_refs; ++n)
        svals_[n] += sign * r[n * t_.num_actions + j];
    }
    bits_[j] ^= 1;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  const StepFunction& f_;
  const MixtureTables& t_;
  std::vector<std::uint8_t> bits_;
  double u_ = 0.0;
  std::vector<double> amass_;
  std::vector<double> svals_;
};

std::uint64_t bits_to_mask(const std::vector<std::uint8_t>& bits) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < bits.size() && j < 64; ++j)
    if (bits[j]) m |= (std::uint64_t{1} << j);
  return m;
}

struct WalkOutcome {
  double value = kNegInf;
  std::vector<std::uint8_t> bits;
};

WalkOutcome run_walk(const StepFunction& f, std::vector<std::uint8_t> start) {
  VertexWalker w(f, std::move(start));
  double current = w.value();
  const int dim = f.dim();
  bool improved = true;
  int passes = 0;
  while (improved && passes < 64) {
    improved = false;
    ++passes;
    for (int j = 0; j < dim; ++j) {
      w.flip(j);
      const double cand = w.value();
      if (cand > current + 1e-13 * std::fabs(current) + 1e-300) {
        current = cand;
        improved = true;
      } else {
        w.flip(j);  // revert
      }
    }
  }
  WalkOutcome out;
  out.bits = w.bits();
  if (dim <= 62) {
    out.value = f.log_at_vertex(bits_to_mask(out.bits));
  } else {
    std::vector<double> omega(dim);
    for (int j = 0; j < dim; ++j) omega[j] = out.bits[j] ? 1.0 : 0.0;
    out.value = f.log_at(omega);
  }
  return out;
}

std::vector<std::uint8_t> random_bits(Rng& rng, int dim) {
  std::vector<std::uint8_t> bits(dim);
  for (int j = 0; j < dim; ++j) bits[j] = rng.bernoulli(0.5) ? 1 : 0;
  return bits;
}

}  // namespace

SupResult sup_heuristic(const StepFunction& f, int restarts, std::uint64_t seed, bool parallel) {
  const int dim = f.dim();
  const int total = restarts + 2;  // deterministic all-zeros / all-ones starts first
  std::vector<WalkOutcome> outcomes(total);

  auto start_for = [&](int idx) -> std::vector<std::uint8_t> {
    if (idx == 0) return std::vector<std::uint8_t>(dim, 0);
    if (idx == 1) return std::vector<std::uint8_t>(dim, 1);
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(idx));
    return random_bits(rng, dim);
  };

#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < total; ++i) outcomes[i] = run_walk(f, start_for(i));
  } else
#endif
  {
    (void)parallel;
    for (int i = 0; i < total; ++i) outcomes[i] = run_walk(f, start_for(i));
  }

  int best = 0;
  for (int i = 1; i < total; ++i)
    if (outcomes[i].value > outcomes[best].value) best = i;

  SupResult r;
  r.log_value = outcomes[best].value;
  r.witness.resize(dim);
  for (int j = 0; j < dim; ++j) r.witness[j] = outcomes[best].bits[j] ? 1.0 : 0.0;
  r.vertex_mask = dim <= 62 ? bits_to_mask(outcomes[best].bits) : 0;
  r.exact = false;
  return r;
}

std::vector<double> batch_log_at_vertices(const StepFunction& f,
                                          std::span<const std::uint64_t> masks, bool parallel) {
  std::vector<double> out(masks.size());
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(masks.size()); ++i)
      out[i] = f.log_at_vertex(masks[i]);
    return out;
  }
#endif
  (void)parallel;
  for (std::size_t i = 0; i < masks.size(); ++i) out[i] = f.log_at_vertex(masks[i]);
  return out;
}

}  // namespace dfa
