#include "sgrass/forge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "sgrass/error.hpp"
#include "sgrass/random.hpp"

namespace sgrass {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

double wrap_phase(double theta) {
  double w = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double circular_gap(double a, double b) { return std::abs(wrap_phase(a - b)); }

double mcd_from_overlap(double m, double max_overlap) {
  return std::sqrt(std::max(0.0, m - max_overlap));
}

nlohmann::ordered_json config_json(const OptimizerConfig& cfg) {
  nlohmann::ordered_json j;
  j["epsilon_schedule"] = cfg.epsilon_schedule;
  j["max_iterations"] = cfg.max_iterations;
  j["initial_step"] = cfg.initial_step;
  j["backtrack"] = cfg.backtrack;
  j["restarts"] = cfg.restarts;
  if (cfg.phase_grid) {
    j["phase_grid"] = *cfg.phase_grid;
  } else {
    j["phase_grid"] = nullptr;
  }
  return j;
}

std::vector<double> normalized_grid(const std::vector<double>& grid) {
  std::vector<double> g;
  for (double v : grid) {
    const double w = wrap_phase(v);
    if (std::none_of(g.begin(), g.end(), [&](double u) { return circular_gap(u, w) < 1e-9; })) {
      g.push_back(w);
    }
  }
  std::sort(g.begin(), g.end());
  return g;
}

double snap_to_grid(double theta, const std::vector<double>& grid) {
  double best = grid.front();
  double gap = circular_gap(theta, best);
  for (double v : grid) {
    const double d = circular_gap(theta, v);
    if (d < gap - 1e-15) {
      gap = d;
      best = v;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Phase design for perfect-matching patterns.

struct PairStats {
  double min = std::numeric_limits<double>::infinity();
  int at_min = 0;
};

PairStats phase_stats(const std::vector<std::vector<double>>& thetas) {
  PairStats s;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = i + 1; j < thetas.size(); ++j) {
      const double f = phase_objective(thetas[i], thetas[j]);
      if (f < s.min - 1e-12) {
        s.min = f;
        s.at_min = 1;
      } else if (f <= s.min + 1e-12) {
        ++s.at_min;
      }
    }
  }
  return s;
}

bool better(const PairStats& a, const PairStats& b) {
  if (a.min > b.min + 1e-12) return true;
  if (a.min < b.min - 1e-12) return false;
  return a.at_min < b.at_min;
}

// log-sum-exp of -f_ij / eps with gradient; instance 0 is held fixed.
double phase_surrogate(const std::vector<std::vector<double>>& th, double eps,
                       std::vector<std::vector<double>>* grad) {
  const std::size_t L = th.size();
  const std::size_t M = th.front().size();
  std::vector<double> f;
  f.reserve(L * (L - 1) / 2);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = i + 1; j < L; ++j) {
      f.push_back(phase_objective(th[i], th[j]));
      top = std::max(top, -f.back() / eps);
    }
  }
  double sum = 0.0;
  for (double v : f) sum += std::exp(-v / eps - top);
  if (grad != nullptr) {
    grad->assign(L, std::vector<double>(M, 0.0));
    std::size_t k = 0;
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j, ++k) {
        const double p = std::exp(-f[k] / eps - top) / sum;
        for (std::size_t m = 0; m < M; ++m) {
          const double dfi = 0.5 * std::sin(th[i][m] - th[j][m]);
          (*grad)[i][m] -= p / eps * dfi;
          (*grad)[j][m] += p / eps * dfi;
        }
      }
    }
    std::fill((*grad)[0].begin(), (*grad)[0].end(), 0.0);
  }
  return top + std::log(sum);
}

PhaseDesign phases_continuous(int M, int L, const OptimizerConfig& cfg) {
  const auto ul = static_cast<std::size_t>(L);
  const auto um = static_cast<std::size_t>(M);
  std::vector<std::vector<double>> best;
  PairStats best_stats;
  best_stats.min = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = substream(cfg.seed, Stream::Optimizer, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> uni(-kPi, kPi);
    std::vector<std::vector<double>> th(ul, std::vector<double>(um, 0.0));
    for (std::size_t i = 1; i < ul; ++i) {
      for (auto& v : th[i]) v = uni(rng);
    }
    double step = cfg.initial_step;
    std::vector<std::vector<double>> grad;
    for (double eps : cfg.epsilon_schedule) {
      double value = phase_surrogate(th, eps, &grad);
      for (int it = 0; it < cfg.max_iterations; ++it) {
        double norm2 = 0.0;
        for (const auto& g : grad) {
          for (double v : g) norm2 += v * v;
        }
        if (norm2 < 1e-24) break;
        bool accepted = false;
        double t = step;
        auto trial = th;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
          for (std::size_t i = 1; i < ul; ++i) {
            for (std::size_t m = 0; m < um; ++m) trial[i][m] = th[i][m] - t * grad[i][m];
          }
          const double next = phase_surrogate(trial, eps, nullptr);
          if (next <= value - kArmijo * t * norm2) {
            accepted = true;
            th.swap(trial);
            value = next;
            break;
          }
          t *= cfg.backtrack;
        }
        if (!accepted) break;
        step = t / cfg.backtrack;
        value = phase_surrogate(th, eps, &grad);
      }
    }
    for (auto& inst : th) {
      for (auto& v : inst) v = wrap_phase(v);
    }
    const PairStats stats = phase_stats(th);
    if (best.empty() || better(stats, best_stats)) {
      best = th;
      best_stats = stats;
    }
  }
  return {best, best_stats.min, ul * um};
}

// Exact max-min selection of L grid points by clique search over descending
// thresholds; returns nullopt when the node budget runs out.
std::optional<std::vector<std::size_t>> exact_grid_search(
    const std::vector<std::vector<double>>& cand, int L, bool pin_origin,
    std::size_t origin) {
  const std::size_t n = cand.size();
  std::vector<double> levels;
  auto add_level = [&](double f) {
    levels.push_back(f);
  };
  if (pin_origin) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c != origin) add_level(phase_objective(cand[origin], cand[c]));
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) add_level(phase_objective(cand[a], cand[b]));
    }
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               levels.end());

  std::size_t budget = 20'000'000;
  std::vector<std::size_t> chosen;
  for (double tau : levels) {
    const double cut = tau - 1e-12;
    bool exhausted = false;
    std::function<bool(const std::vector<std::size_t>&)> grow =
        [&](const std::vector<std::size_t>& pool) -> bool {
      if (static_cast<int>(chosen.size()) == L) return true;
      for (std::size_t k = 0; k < pool.size(); ++k) {
        if (budget == 0) {
          exhausted = true;
          return false;
        }
        --budget;
        if (static_cast<int>(chosen.size() + pool.size() - k) < L) return false;
        const std::size_t v = pool[k];
        std::vector<std::size_t> next;
        for (std::size_t u = k + 1; u < pool.size(); ++u) {
          if (phase_objective(cand[v], cand[pool[u]]) >= cut) next.push_back(pool[u]);
        }
        chosen.push_back(v);
        if (grow(next)) return true;
        chosen.pop_back();
        if (exhausted) return false;
      }
      return false;
    };
    chosen.clear();
    std::vector<std::size_t> pool;
    if (pin_origin) {
      chosen.push_back(origin);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != origin && phase_objective(cand[origin], cand[c]) >= cut) pool.push_back(c);
      }
    } else {
      pool.resize(n);
      for (std::size_t c = 0; c < n; ++c) pool[c] = c;
    }
    if (grow(pool)) return chosen;
    if (exhausted) return std::nullopt;
  }
  return std::nullopt;
}

PhaseDesign phases_on_grid(int M, int L, const OptimizerConfig& cfg) {
  const std::vector<double> grid = normalized_grid(*cfg.phase_grid);
  const std::size_t G = grid.size();
  const auto um = static_cast<std::size_t>(M);
  const bool has_zero =
      std::any_of(grid.begin(), grid.end(), [](double g) { return std::abs(g) < 1e-12; });
  bool closed = has_zero;
  for (double a : grid) {
    for (double b : grid) {
      const double d = wrap_phase(a - b);
      closed = closed && std::any_of(grid.begin(), grid.end(),
                                     [&](double g) { return circular_gap(g, d) < 1e-9; });
    }
  }

  double candidates = std::pow(static_cast<double>(G), static_cast<double>(M));
  std::vector<std::vector<double>> thetas;
  if (candidates <= 4096.0) {
    std::vector<std::vector<double>> cand;
    std::vector<std::size_t> digits(um, 0);
    std::size_t origin = 0;
    const std::size_t zero_digit = static_cast<std::size_t>(
        std::find_if(grid.begin(), grid.end(), [](double g) { return std::abs(g) < 1e-12; }) -
        grid.begin());
    while (true) {
      std::vector<double> point(um);
      bool is_origin = true;
      for (std::size_t m = 0; m < um; ++m) {
        point[m] = grid[digits[m]];
        is_origin = is_origin && digits[m] == zero_digit;
      }
      if (is_origin) origin = cand.size();
      cand.push_back(std::move(point));
      std::size_t m = 0;
      while (m < um && ++digits[m] == G) digits[m++] = 0;
      if (m == um) break;
    }
    if (auto picked = exact_grid_search(cand, L, closed, origin)) {
      for (std::size_t idx : *picked) thetas.push_back(cand[idx]);
    }
  }
  if (thetas.empty()) {
    // Greedy farthest-point insertion followed by coordinate local search.
    Rng rng = substream(cfg.seed, Stream::Optimizer, 0);
    std::uniform_int_distribution<std::size_t> pick(0, G - 1);
    std::vector<double> start(um, has_zero ? 0.0 : grid.front());
    thetas.push_back(start);
    while (static_cast<int>(thetas.size()) < L) {
      std::vector<double> best_point;
      double best_gap = -1.0;
      for (int trial = 0; trial < 4096; ++trial) {
        std::vector<double> p(um);
        for (auto& v : p) v = grid[pick(rng)];
        double gap = std::numeric_limits<double>::infinity();
        for (const auto& q : thetas) gap = std::min(gap, phase_objective(p, q));
        if (gap > best_gap) {
          best_gap = gap;
          best_point = p;
        }
      }
      thetas.push_back(best_point);
    }
    PairStats stats = phase_stats(thetas);
    for (int pass = 0; pass < 100; ++pass) {
      bool improved = false;
      for (std::size_t i = 1; i < thetas.size(); ++i) {
        for (std::size_t m = 0; m < um; ++m) {
          const double keep = thetas[i][m];
          for (double g : grid) {
            thetas[i][m] = g;
            const PairStats s = phase_stats(thetas);
            if (better(s, stats)) {
              stats = s;
              improved = true;
            } else {
              thetas[i][m] = keep;
            }
            if (thetas[i][m] != keep) break;
          }
        }
      }
      if (!improved) break;
    }
  }
  const PairStats stats = phase_stats(thetas);
  return {thetas, thetas.size() < 2 ? static_cast<double>(M) : stats.min,
          static_cast<std::size_t>(L) * um};
}

// ---------------------------------------------------------------------------
// Phase parameterization of a fixed set of disjoint-support patterns.

struct Entry {
  int row = 0;  // 0-based
  int col = 0;
  double amplitude = 0.0;
  int variable = -1;  // index into the phase vector, -1 for the pivot
};

struct PatternLayout {
  std::vector<std::vector<Entry>> codewords;
  std::size_t variables = 0;
};

PatternLayout layout_for(const std::vector<SparsityPattern>& patterns, std::size_t size) {
  PatternLayout layout;
  for (std::size_t i = 0; i < size; ++i) {
    const SparsityPattern& p = patterns[i % patterns.size()];
    std::vector<Entry> entries;
    for (int m = 0; m < p.M; ++m) {
      const auto& rows = p.supports[static_cast<std::size_t>(m)];
      const double amp = 1.0 / std::sqrt(static_cast<double>(rows.size()));
      for (std::size_t k = 0; k < rows.size(); ++k) {
        Entry e{rows[k] - 1, m, amp, -1};
        if (k > 0) e.variable = static_cast<int>(layout.variables++);
        entries.push_back(e);
      }
    }
    layout.codewords.push_back(std::move(entries));
  }
  return layout;
}

std::vector<CMatrix> materialize(const PatternLayout& layout, int T, int M,
                                 const std::vector<double>& x) {
  std::vector<CMatrix> pts;
  pts.reserve(layout.codewords.size());
  for (const auto& entries : layout.codewords) {
    CMatrix w = CMatrix::Zero(T, M);
    for (const auto& e : entries) {
      const double th = e.variable < 0 ? 0.0 : x[static_cast<std::size_t>(e.variable)];
      w(e.row, e.col) = e.amplitude * unit_phasor(th);
    }
    pts.push_back(std::move(w));
  }
  return pts;
}

double layout_surrogate(const PatternLayout& layout, int T, int M, const std::vector<double>& x,
                        double eps, std::vector<double>* grad, double* max_overlap) {
  const auto pts = materialize(layout, T, M, x);
  std::vector<CMatrix> g;
  const SurrogateEval ev = smooth_mcd_surrogate(pts, eps, grad != nullptr ? &g : nullptr);
  if (max_overlap != nullptr) *max_overlap = ev.max_overlap;
  if (grad != nullptr) {
    grad->assign(x.size(), 0.0);
    for (std::size_t i = 0; i < layout.codewords.size(); ++i) {
      for (const auto& e : layout.codewords[i]) {
        if (e.variable < 0) continue;
        // dW = j w dtheta, so dF = Re(conj(G) j w) dtheta.
        const cdouble w = pts[i](e.row, e.col);
        (*grad)[static_cast<std::size_t>(e.variable)] =
            std::real(std::conj(g[i](e.row, e.col)) * cdouble(0.0, 1.0) * w);
      }
    }
  }
  return ev.value;
}

double layout_mcd(const PatternLayout& layout, int T, int M, const std::vector<double>& x) {
  const auto pts = materialize(layout, T, M, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      worst = std::max(worst, (pts[i].adjoint() * pts[j]).squaredNorm());
    }
  }
  return mcd_from_overlap(M, worst);
}

void check_dims(int T, int M, std::size_t size, std::size_t min_size) {
  if (!(1 <= M && M < T)) {
    fail(ErrorCode::InvalidConfig, "need 1 <= M < T, got T=" + std::to_string(T) +
                                       " M=" + std::to_string(M));
  }
  if (size < min_size) {
    fail(ErrorCode::InvalidConfig, "codebook size must be at least " + std::to_string(min_size));
  }
}

}  // namespace

void OptimizerConfig::validate() const {
  if (epsilon_schedule.empty()) fail(ErrorCode::InvalidConfig, "empty epsilon schedule");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    if (!(epsilon_schedule[i] > 0.0)) fail(ErrorCode::InvalidConfig, "epsilon must be > 0");
    if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1])) {
      fail(ErrorCode::InvalidConfig, "epsilon schedule must be strictly decreasing");
    }
  }
  if (max_iterations < 0) fail(ErrorCode::InvalidConfig, "max_iterations < 0");
  if (!(initial_step > 0.0)) fail(ErrorCode::InvalidConfig, "initial_step must be > 0");
  if (!(backtrack > 0.0 && backtrack < 1.0)) {
    fail(ErrorCode::InvalidConfig, "backtrack must lie in (0, 1)");
  }
  if (restarts < 1) fail(ErrorCode::InvalidConfig, "restarts must be >= 1");
  if (phase_grid && phase_grid->empty()) fail(ErrorCode::InvalidConfig, "empty phase grid");
}

std::vector<double> quarter_grid() { return {-kPi / 2.0, 0.0, kPi / 2.0, kPi}; }

Codebook optimize_manopt(int T, int M, std::size_t size, const OptimizerConfig& cfg) {
  cfg.validate();
  check_dims(T, M, size, 2);
  const double m = M;

  std::vector<CMatrix> best;
  double best_mcd = -1.0;
  double best_initial = 0.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = substream(cfg.seed, Stream::Optimizer, static_cast<std::uint64_t>(r));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CMatrix> pts(size);
    for (auto& w : pts) {
      CMatrix a(T, M);
      for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = {normal(rng), normal(rng)};
      w = qr_orthonormalize(a);
    }

    SurrogateEval cur = smooth_mcd_surrogate(pts, cfg.epsilon_schedule.front());
    const double initial = mcd_from_overlap(m, cur.max_overlap);
    std::vector<CMatrix> run_best = pts;
    double run_best_mcd = initial;

    double step = cfg.initial_step;
    std::vector<CMatrix> grad;
    std::vector<CMatrix> dir(size);
    std::vector<CMatrix> trial(size);
    for (double eps : cfg.epsilon_schedule) {
      cur = smooth_mcd_surrogate(pts, eps, &grad);
      for (int it = 0; it < cfg.max_iterations; ++it) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
          dir[i] = grad[i] - pts[i] * (pts[i].adjoint() * grad[i]);
          norm2 += dir[i].squaredNorm();
        }
        if (norm2 < 1e-24) break;
        bool accepted = false;
        double t = step;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
          for (std::size_t i = 0; i < size; ++i) trial[i] = qr_orthonormalize(pts[i] - t * dir[i]);
          const SurrogateEval next = smooth_mcd_surrogate(trial, eps);
          if (next.value <= cur.value - kArmijo * t * norm2) {
            accepted = true;
            pts.swap(trial);
            break;
          }
          t *= cfg.backtrack;
        }
        if (!accepted) break;
        step = t / cfg.backtrack;
        cur = smooth_mcd_surrogate(pts, eps, &grad);
        const double mcd = mcd_from_overlap(m, cur.max_overlap);
        if (mcd > run_best_mcd) {
          run_best_mcd = mcd;
          run_best = pts;
        }
      }
    }
    if (run_best_mcd > best_mcd) {
      best_mcd = run_best_mcd;
      best = std::move(run_best);
      best_initial = initial;
    }
  }

  std::vector<Codeword> words;
  words.reserve(size);
  for (auto& w : best) words.emplace_back(std::move(w));
  CodebookMeta meta{"manopt", cfg.seed, {}};
  meta.params["T"] = T;
  meta.params["M"] = M;
  meta.params["size"] = size;
  meta.params["optimizer"] = config_json(cfg);
  meta.params["initial_mcd"] = best_initial;
  meta.params["real_variables"] = 2 * size * static_cast<std::size_t>(M * (T - M));
  return make_codebook(std::move(words), std::move(meta));
}

double phase_objective(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double s = std::sin((a[m] - b[m]) / 2.0);
    acc += s * s;
  }
  return acc;
}

PhaseDesign optimize_phases_2M(int M, int L, const OptimizerConfig& cfg) {
  cfg.validate();
  if (M < 2) fail(ErrorCode::InvalidConfig, "M must be >= 2");
  if (L < 1) fail(ErrorCode::InvalidConfig, "L must be >= 1");
  if (L == 1) {
    return {{std::vector<double>(static_cast<std::size_t>(M), 0.0)}, static_cast<double>(M),
            static_cast<std::size_t>(M)};
  }
  return cfg.phase_grid ? phases_on_grid(M, L, cfg) : phases_continuous(M, L, cfg);
}

Codebook build_sparse_2M(int M, std::size_t size, const OptimizerConfig& cfg) {
  cfg.validate();
  if (M < 2) fail(ErrorCode::InvalidConfig, "M must be >= 2");
  if (size < 1) fail(ErrorCode::InvalidConfig, "codebook size must be >= 1");
  const std::vector<PairPattern> patterns = matching_patterns(M);
  const std::size_t P = patterns.size();
  const std::size_t L = (size + P - 1) / P;
  const PhaseDesign phases = optimize_phases_2M(M, static_cast<int>(L), cfg);
  const std::size_t full = size - (L - 1) * P;  // matchings that receive L instances

  std::vector<Codeword> words;
  words.reserve(size);
  for (std::size_t p = 0; p < P; ++p) {
    const std::size_t count = p < full ? L : L - 1;
    for (std::size_t k = 0; k < count; ++k) {
      words.push_back(pair_codeword(patterns[p], phases.thetas[k]));
    }
  }
  CodebookMeta meta{"sparse2m", cfg.seed, {}};
  meta.params["T"] = 2 * M;
  meta.params["M"] = M;
  meta.params["size"] = size;
  meta.params["instances_per_pattern"] = L;
  meta.params["min_phase_objective"] = phases.min_objective;
  meta.params["real_variables"] = phases.real_variables;
  meta.params["optimizer"] = config_json(cfg);
  return make_codebook(std::move(words), std::move(meta));
}

Codebook build_sparse_on_patterns(const std::vector<SparsityPattern>& patterns,
                                  std::size_t size, const OptimizerConfig& cfg) {
  cfg.validate();
  if (patterns.empty()) fail(ErrorCode::InvalidConfig, "no sparsity patterns");
  const int T = patterns.front().T;
  const int M = patterns.front().M;
  check_dims(T, M, size, 2);
  for (const auto& p : patterns) {
    if (p.T != T || p.M != M) fail(ErrorCode::InvalidConfig, "patterns disagree on (T, M)");
  }

  const PatternLayout layout = layout_for(patterns, size);
  const std::size_t nvar = layout.variables;
  std::vector<double> best(nvar, 0.0);
  double best_mcd = layout_mcd(layout, T, M, best);

  if (nvar > 0) {
    for (int r = 0; r < cfg.restarts; ++r) {
      Rng rng = substream(cfg.seed, Stream::Optimizer, static_cast<std::uint64_t>(r));
      std::uniform_real_distribution<double> uni(-kPi, kPi);
      std::vector<double> x(nvar);
      for (auto& v : x) v = uni(rng);
      double step = cfg.initial_step;
      std::vector<double> grad;
      std::vector<double> trial(nvar);
      for (double eps : cfg.epsilon_schedule) {
        double value = layout_surrogate(layout, T, M, x, eps, &grad, nullptr);
        for (int it = 0; it < cfg.max_iterations; ++it) {
          double norm2 = 0.0;
          for (double g : grad) norm2 += g * g;
          if (norm2 < 1e-24) break;
          bool accepted = false;
          double t = step;
          for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            for (std::size_t k = 0; k < nvar; ++k) trial[k] = x[k] - t * grad[k];
            const double next = layout_surrogate(layout, T, M, trial, eps, nullptr, nullptr);
            if (next <= value - kArmijo * t * norm2) {
              accepted = true;
              x.swap(trial);
              break;
            }
            t *= cfg.backtrack;
          }
          if (!accepted) break;
          step = t / cfg.backtrack;
          value = layout_surrogate(layout, T, M, x, eps, &grad, nullptr);
        }
      }
      for (auto& v : x) v = wrap_phase(v);
      if (cfg.phase_grid) {
        const auto grid = normalized_grid(*cfg.phase_grid);
        for (auto& v : x) v = snap_to_grid(v, grid);
        double cur = layout_mcd(layout, T, M, x);
        for (int pass = 0; pass < 50; ++pass) {
          bool improved = false;
          for (std::size_t k = 0; k < nvar; ++k) {
            const double keep = x[k];
            for (double g : grid) {
              if (g == keep) continue;
              x[k] = g;
              const double d = layout_mcd(layout, T, M, x);
              if (d > cur + 1e-12) {
                cur = d;
                improved = true;
                break;
              }
              x[k] = keep;
            }
          }
          if (!improved) break;
        }
      }
      const double mcd = layout_mcd(layout, T, M, x);
      if (mcd > best_mcd + 1e-12) {
        best_mcd = mcd;
        best = x;
      }
    }
  }

  std::vector<Codeword> words;
  words.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const SparsityPattern& p = patterns[i % patterns.size()];
    std::vector<double> phases;
    std::vector<std::vector<double>> amps;
    for (const auto& e : layout.codewords[i]) {
      phases.push_back(e.variable < 0 ? 0.0 : best[static_cast<std::size_t>(e.variable)]);
    }
    for (const auto& rows : p.supports) amps.emplace_back(rows.size(), 1.0);
    words.push_back(pattern_to_codeword(p, phases, amps));
  }
  CodebookMeta meta{"sparse-general", cfg.seed, {}};
  meta.params["T"] = T;
  meta.params["M"] = M;
  meta.params["sparsity"] = patterns.front().sparsity();
  meta.params["size"] = size;
  meta.params["patterns_used"] = std::min(size, patterns.size());
  meta.params["real_variables"] = nvar;
  meta.params["optimizer"] = config_json(cfg);
  return make_codebook(std::move(words), std::move(meta));
}

Codebook build_general_sparse(int T, int M, int s, std::size_t size,
                              const OptimizerConfig& cfg) {
  if (!(T > M && M > 1)) fail(ErrorCode::InvalidConfig, "need T > M > 1");
  if (size < 2) fail(ErrorCode::InvalidConfig, "codebook size must be >= 2");
  return build_sparse_on_patterns(enumerate_patterns(T, M, s), size, cfg);
}

Codeword expmap_point(const CMatrix& theta) {
  const auto M = static_cast<int>(theta.rows());
  const int T = M + static_cast<int>(theta.cols());
  CMatrix a = CMatrix::Zero(T, T);
  a.topRightCorner(M, T - M) = theta;
  a.bottomLeftCorner(T - M, M) = -theta.adjoint();
  const CMatrix u = matexp_skew_hermitian(a);
  return Codeword(u.leftCols(M));
}

Codebook build_expmap(int T, int M, std::size_t size, const ExpMapConfig& cfg) {
  check_dims(T, M, size, 2);
  if (!(cfg.spread > 0.0)) fail(ErrorCode::InvalidConfig, "spread must be positive");
  const int free = M * (T - M);
  const double capacity = std::pow(4.0, free);
  if (static_cast<double>(size) > capacity) {
    fail(ErrorCode::AlphabetExhausted, "size " + std::to_string(size) + " exceeds " +
                                           std::to_string(capacity) + " distinct Theta");
  }
  const double s = cfg.spread / std::sqrt(2.0);
  std::vector<Codeword> words;
  words.reserve(size);
  const std::uint64_t max_draws = 1000 + 100 * static_cast<std::uint64_t>(size);
  std::uint64_t draw = 0;
  while (words.size() < size) {
    if (draw >= max_draws) {
      fail(ErrorCode::AlphabetExhausted, "could not find enough distinct codewords");
    }
    Rng rng = substream(cfg.seed, Stream::ExpMap, draw++);
    std::bernoulli_distribution coin(0.5);
    CMatrix theta(M, T - M);
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      theta.data()[k] = {coin(rng) ? s : -s, coin(rng) ? s : -s};
    }
    Codeword w = expmap_point(theta);
    const bool duplicate = std::any_of(words.begin(), words.end(), [&](const Codeword& v) {
      return chordal_distance(v, w) < 1e-6;
    });
    if (!duplicate) words.push_back(std::move(w));
  }
  CodebookMeta meta{"expmap", cfg.seed, {}};
  meta.params["T"] = T;
  meta.params["M"] = M;
  meta.params["size"] = size;
  meta.params["spread"] = cfg.spread;
  meta.params["draws"] = draw;
  return make_codebook(std::move(words), std::move(meta));
}

}  // namespace sgrass
