#pragma once

// Augmentations: the matrices A, Lambda, Delta; residuals of the full-rank criterion and of the
// degree-zero ideal; numerical augmentation rank; the multi-start Levenberg-Marquardt solver; the
// satellite-augmentation construction; block-structure checks and nonexistence evidence.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "kch/braid.hpp"
#include "kch/ncpoly.hpp"
#include "kch/phi.hpp"
#include "kch/satmap.hpp"

namespace kch {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Singular values below this times max(1, largest singular value) count as zero.
inline constexpr double kRankThreshold = 1e-8;

/// Values of mu closer than this to 1 are outside the theory of augmentation rank.
inline constexpr double kMuUnityGuard = 1e-12;

// ---------------------------------------------------------------------------------------------
// Evaluation helpers

inline Complex evaluate(const Monomial& m, const Assignment& eps) {
  Complex v{1.0, 0.0};
  for (const Gen& g : m) v *= eps.get(g.i, g.j);
  return v;
}

/// Entrywise evaluation of a symbolic Phi matrix.
inline CMatrix evaluate(const PhiMatrix& m, const Assignment& eps) {
  CMatrix out(m.n(), m.n());
  for (int i = 1; i <= m.n(); ++i)
    for (int j = 1; j <= m.n(); ++j) out(i - 1, j - 1) = evaluate(m(i, j), eps);
  return out;
}

// ---------------------------------------------------------------------------------------------
// A, Lambda, Delta

/// Symbolic A over Z[mu] (x) A_n, rendered entrywise.
inline std::vector<std::vector<std::string>> matrix_A_symbolic(int n) {
  if (n < 1) throw std::invalid_argument("matrix_A needs n >= 1");
  const Algebra alg{n, false};
  std::vector<std::vector<std::string>> out(std::size_t(n), std::vector<std::string>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const std::string g = to_string(alg, Gen{std::uint8_t(i), std::uint8_t(j)});
      out[std::size_t(i - 1)][std::size_t(j - 1)] = i == j ? "1 - mu" : (i < j ? g : "-mu*" + g);
    }
  return out;
}

/// epsilon(A): a_ij above the diagonal, -mu a_ij below, 1 - mu on it.
inline CMatrix matrix_A(const Assignment& eps) {
  const int n = eps.n();
  CMatrix a(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      a(i - 1, j - 1) = i == j ? Complex(1.0) - eps.mu() : (i < j ? eps.get(i, j) : -eps.mu() * eps.get(i, j));
  return a;
}

/// diag[lambda mu^w, 1, ..., 1].
inline CMatrix matrix_Lambda(const BraidWord& b, Complex lambda, Complex mu) {
  if (lambda == Complex{} || mu == Complex{}) throw std::invalid_argument("matrix_Lambda: lambda and mu must be nonzero");
  CMatrix m = CMatrix::Identity(b.strands(), b.strands());
  m(0, 0) = lambda * std::pow(mu, writhe(b));
  return m;
}

/// diag[(-1)^w, 1, ..., 1].
inline CMatrix matrix_Delta(const BraidWord& b) {
  CMatrix m = CMatrix::Identity(b.strands(), b.strands());
  if (writhe(b) % 2 != 0) m(0, 0) = -1.0;
  return m;
}

// ---------------------------------------------------------------------------------------------
// Numeric fast path

struct NumericPhi {
  CMatrix L;
  CMatrix R;
};

/// epsilon(Phi^L_beta) and epsilon(Phi^R_beta) by folding letters over complex values.
/// The table E holds epsilon o phi of the prefix folded so far; it plays the role of the
/// generator map in the symbolic chain-rule fold.
inline NumericPhi phi_numeric(const BraidWord& b, const Assignment& eps) {
  const int n = b.strands();
  if (eps.n() != n) throw std::invalid_argument("phi_numeric: assignment size does not match the braid");
  CMatrix e(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) e(i - 1, j - 1) = i == j ? Complex{} : eps.get(i, j);
  CMatrix l = CMatrix::Identity(n, n);
  CMatrix r = CMatrix::Identity(n, n);
  CMatrix next(n, n);
  for (int letter : b.letters()) {
    const int k = (letter < 0 ? -letter : letter) - 1;
    const int k1 = k + 1;
    if (letter > 0) {
      const Complex c = e(k1, k);
      Eigen::RowVectorXcd rk = l.row(k);
      l.row(k) = l.row(k1) - c * rk;
      l.row(k1) = rk;
      const Complex d = e(k, k1);
      CVector ck = r.col(k);
      r.col(k) = r.col(k1) - ck * d;
      r.col(k1) = ck;
    } else {
      const Complex c = e(k, k1);
      Eigen::RowVectorXcd rk = l.row(k);
      l.row(k) = l.row(k1);
      l.row(k1) = rk - c * l.row(k);
      const Complex d = e(k1, k);
      CVector ck = r.col(k);
      r.col(k) = r.col(k1);
      r.col(k1) = ck - r.col(k) * d;
    }
    next = e;
    next(k, k1) = -e(k1, k);
    next(k1, k) = -e(k, k1);
    for (int i = 0; i < n; ++i) {
      if (i == k || i == k1) continue;
      if (letter > 0) {
        next(k1, i) = e(k, i);
        next(i, k1) = e(i, k);
        next(k, i) = e(k1, i) - e(k1, k) * e(k, i);
        next(i, k) = e(i, k1) - e(i, k) * e(k, k1);
      } else {
        next(k, i) = e(k1, i);
        next(i, k) = e(i, k1);
        next(k1, i) = e(k, i) - e(k, k1) * e(k1, i);
        next(i, k1) = e(i, k) - e(i, k1) * e(k1, k);
      }
    }
    e.swap(next);
  }
  return NumericPhi{std::move(l), std::move(r)};
}

struct ResidualPair {
  double L = 0.0;
  double R = 0.0;
  double max() const { return std::max(L, R); }
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Max-abs entry errors of epsilon(Phi^L) - Delta and epsilon(Phi^R) - Delta.
inline ResidualPair full_rank_residual(const BraidWord& b, const Assignment& eps) {
  const NumericPhi ph = phi_numeric(b, eps);
  const CMatrix d = matrix_Delta(b);
  return ResidualPair{max_abs(ph.L - d), max_abs(ph.R - d)};
}

/// Entries of A - Lambda Phi^L A and A - A Phi^R Lambda^{-1}, stacked.
inline CVector ideal_generators(const BraidWord& b, const NumericPhi& ph, const Assignment& eps) {
  const int n = b.strands();
  const CMatrix a = matrix_A(eps);
  const CMatrix lam = matrix_Lambda(b, eps.lambda(), eps.mu());
  CMatrix lam_inv = lam;
  lam_inv(0, 0) = Complex(1.0) / lam(0, 0);
  const CMatrix g1 = a - lam * ph.L * a;
  const CMatrix g2 = a - a * ph.R * lam_inv;
  CVector out(2 * n * n);
  out << Eigen::Map<const CVector>(g1.data(), n * n), Eigen::Map<const CVector>(g2.data(), n * n);
  return out;
}

/// Max-abs value of epsilon over the 2n^2 generators of the degree-zero ideal.
inline double ideal_residual(const BraidWord& b, const Assignment& eps) {
  const CVector g = ideal_generators(b, phi_numeric(b, eps), eps);
  return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

inline int numerical_rank(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double cut = kRankThreshold * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

/// Raised when a request lies outside the range where augmentation rank is defined.
class OutOfTheory : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical rank of epsilon(A). Refuses mu = 1, where the rank is undefined.
inline int aug_rank(const Assignment& eps) {
  if (std::abs(eps.mu() - Complex(1.0)) < kMuUnityGuard)
    throw OutOfTheory("augmentation rank is undefined at mu = 1");
  return numerical_rank(matrix_A(eps));
}

// ---------------------------------------------------------------------------------------------
// Certificates and solver results

struct Certificate {
  BraidWord braid;
  Assignment assignment;
  double residual_L = 0.0;
  double residual_R = 0.0;
  double ideal_residual = 0.0;
  int rank = 0;
  std::uint64_t seed = 0;
  int restarts = 0;
  double tol = 1e-9;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  bool accepted() const { return residual_L <= tol && residual_R <= tol; }
};

struct NotFound {
  BraidWord braid;
  double best_residual = std::numeric_limits<double>::infinity();
  int best_restart = -1;
  int restarts = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

using SolveResult = std::variant<Certificate, NotFound>;

struct SolveOptions {
  int restarts = 256;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int max_iter = 200;
  int batch = 64;        // restarts per deterministic batch
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {

/// Independent stream for (seed, stream, index).
inline std::mt19937_64 substream(std::uint64_t seed, std::uint32_t stream, std::uint32_t index) {
  std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32), stream, index};
  return std::mt19937_64(seq);
}

inline constexpr std::uint32_t kStreamRestart = 0;
inline constexpr std::uint32_t kStreamLambdaMu = 1;
inline constexpr std::uint32_t kStreamRankSample = 2;

inline Complex complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

inline double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

inline bool finite(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  return true;
}

/// Forward-difference Jacobian of a holomorphic residual map (relative step 1e-7).
template <class F>
CMatrix jacobian(F& f, const CVector& x, const CVector& r) {
  CMatrix j(r.size(), x.size());
  CVector xp = x;
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    const double h = 1e-7 * std::max(1.0, std::abs(x(c)));
    xp(c) = x(c) + h;
    j.col(c) = (f(xp) - r) / h;
    xp(c) = x(c);
  }
  return j;
}

struct LMOutcome {
  CVector x;
  double residual = std::numeric_limits<double>::infinity();  // max-abs entry
  int iterations = 0;
};

/// Damped Gauss-Newton on |f|^2, stopping at `target` (max-abs), on stagnation or at max_iter,
/// followed by undamped Newton polishing steps.
template <class F>
LMOutcome levenberg_marquardt(F f, CVector x, int max_iter, double target) {
  LMOutcome out;
  CVector r = f(x);
  if (!finite(r)) return out;
  double cost = r.squaredNorm();
  double damp = 1e-3;
  int stall = 0;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (max_abs(r) <= target) break;
    const CMatrix j = jacobian(f, x, r);
    const CMatrix g = j.adjoint() * j;
    const CVector grad = j.adjoint() * r;
    bool moved = false;
    for (int tries = 0; tries < 12 && !moved; ++tries) {
      CMatrix h = g;
      for (Eigen::Index d = 0; d < h.rows(); ++d) h(d, d) += damp * (1.0 + g(d, d).real());
      const CVector step = h.ldlt().solve(-grad);
      const CVector xn = x + step;
      const CVector rn = f(xn);
      const double cn = finite(rn) ? rn.squaredNorm() : std::numeric_limits<double>::infinity();
      if (cn < cost) {
        stall = (cost - cn) < 1e-6 * cost ? stall + 1 : 0;
        x = xn;
        r = rn;
        cost = cn;
        damp = std::max(damp / 3.0, 1e-12);
        moved = true;
      } else {
        damp *= 4.0;
      }
    }
    if (!moved || stall >= 10 || !finite(x)) break;
  }
  for (int polish = 0; polish < 3 && x.size() > 0; ++polish) {
    const CMatrix j = jacobian(f, x, r);
    const CVector step = j.colPivHouseholderQr().solve(-r);
    const CVector xn = x + step;
    const CVector rn = f(xn);
    if (!finite(rn) || rn.squaredNorm() >= cost) break;
    x = xn;
    r = rn;
    cost = rn.squaredNorm();
  }
  out.x = std::move(x);
  out.residual = max_abs(r);
  out.iterations = it;
  return out;
}

/// Off-diagonal generator slots (i, j), row-major.
inline std::vector<std::pair<int, int>> generator_slots(int n) {
  std::vector<std::pair<int, int>> s;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) s.emplace_back(i, j);
  return s;
}

inline Assignment assignment_from(int n, const std::vector<std::pair<int, int>>& slots, const CVector& x) {
  Assignment a(n);
  for (std::size_t s = 0; s < slots.size(); ++s) a.set(slots[s].first, slots[s].second, x(Eigen::Index(s)));
  return a;
}

/// Stacked residual of epsilon(Phi^L) = Delta = epsilon(Phi^R) as a function of generator values.
inline CVector full_rank_system(const BraidWord& b, const CMatrix& delta, const std::vector<std::pair<int, int>>& slots,
                                const CVector& x) {
  const int n = b.strands();
  const NumericPhi ph = phi_numeric(b, assignment_from(n, slots, x));
  const CMatrix dl = ph.L - delta;
  const CMatrix dr = ph.R - delta;
  CVector out(2 * n * n);
  out << Eigen::Map<const CVector>(dl.data(), n * n), Eigen::Map<const CVector>(dr.data(), n * n);
  return out;
}

template <class Job>
void run_parallel(int count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, unsigned(std::max(count, 1)));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = int(t); i < count; i += int(threads)) job(i);
    });
  for (auto& th : pool) th.join();
}

inline bool usable_mu(Complex mu) { return std::abs(mu - Complex(1.0)) > 1e-3 && std::abs(mu) > 1e-6; }

}  // namespace detail

/// Numerically chosen (lambda, mu) killing the ideal for fixed generator values. Attempts run from
/// seeded starting points and skip solutions with mu near 1.
inline nlohmann::ordered_json recover_lambda_mu(const BraidWord& b, Assignment& eps, std::uint64_t seed, double tol) {
  const NumericPhi ph = phi_numeric(b, eps);
  auto system = [&](const CVector& v) -> CVector {
    if (v(0) == Complex{} || v(1) == Complex{}) return CVector::Constant(2 * b.strands() * b.strands(), Complex(NAN, NAN));
    Assignment e = eps;
    e.set_lambda(v(0));
    e.set_mu(v(1));
    return ideal_generators(b, ph, e);
  };
  double best = std::numeric_limits<double>::infinity();
  CVector best_v(2);
  best_v << eps.lambda(), eps.mu();
  int attempt = 0;
  bool converged = false;
  for (; attempt < 32; ++attempt) {
    auto rng = detail::substream(seed, detail::kStreamLambdaMu, std::uint32_t(attempt));
    CVector v0(2);
    v0 << detail::complex_normal(rng), detail::complex_normal(rng);
    const detail::LMOutcome o = detail::levenberg_marquardt(system, v0, 200, 1e-3 * tol);
    if (o.x.size() != 2 || !detail::usable_mu(o.x(1)) || std::abs(o.x(0)) < 1e-6) continue;
    if (o.residual < best) {
      best = o.residual;
      best_v = o.x;
    }
    if (o.residual <= tol) {
      converged = true;
      break;
    }
  }
  eps.set_lambda(best_v(0));
  eps.set_mu(best_v(1));
  const Complex relation = best_v(0) * std::pow(-best_v(1), writhe(b)) - Complex(1.0);
  return nlohmann::ordered_json{{"converged", converged},
                                {"attempts", std::min(attempt + 1, 32)},
                                {"family_residual", std::abs(relation)}};
}

/// Ranks of epsilon(A) at 8 seeded non-unity values of mu, lambda refit for each.
inline nlohmann::ordered_json sample_ranks(const BraidWord& b, const Assignment& eps, std::uint64_t seed, double tol) {
  const NumericPhi ph = phi_numeric(b, eps);
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  bool stable = true;
  bool fitted = true;
  int first = -1;
  auto rng = detail::substream(seed, detail::kStreamRankSample, 0);
  for (int s = 0; s < 8; ++s) {
    Complex mu;
    do mu = detail::complex_normal(rng);
    while (std::abs(mu - Complex(1.0)) < 0.1 || std::abs(mu) < 0.1);
    Assignment e = eps;
    e.set_mu(mu);
    auto system = [&](const CVector& v) -> CVector {
      Assignment t = e;
      if (v(0) == Complex{}) return CVector::Constant(2 * b.strands() * b.strands(), Complex(NAN, NAN));
      t.set_lambda(v(0));
      return ideal_generators(b, ph, t);
    };
    // Warm start on the curve lambda (-mu)^w = 1, where Lambda Delta fixes the first row of A.
    CVector v0(1);
    v0 << std::pow(-mu, -writhe(b));
    const detail::LMOutcome o = detail::levenberg_marquardt(system, v0, 100, 1e-3 * tol);
    if (o.x.size() == 1 && o.x(0) != Complex{}) e.set_lambda(o.x(0));
    const int r = aug_rank(e);
    if (first < 0) first = r;
    stable = stable && r == first;
    fitted = fitted && o.residual <= tol;
    samples.push_back({{"mu", {{"re", mu.real()}, {"im", mu.imag()}}}, {"ideal_residual", o.residual}, {"rank", r}});
  }
  return nlohmann::ordered_json{{"samples", samples}, {"rank_stable", stable}, {"ideal_fitted", fitted}};
}

/// Fills residuals, lambda/mu, rank and auditing metadata for an assignment of generator values.
inline Certificate finalize_certificate(const BraidWord& b, Assignment eps, std::uint64_t seed, int restarts, double tol,
                                        nlohmann::ordered_json metadata) {
  Certificate c;
  c.braid = b;
  const ResidualPair rp = full_rank_residual(b, eps);
  c.residual_L = rp.L;
  c.residual_R = rp.R;
  c.seed = seed;
  c.restarts = restarts;
  c.tol = tol;
  metadata["lambda_mu"] = recover_lambda_mu(b, eps, seed, tol);
  c.assignment = eps;
  c.ideal_residual = ideal_residual(b, eps);
  c.rank = aug_rank(eps);
  const auto ranks = sample_ranks(b, eps, seed, tol);
  metadata["rank_samples"] = ranks["samples"];
  metadata["rank_stable"] = ranks["rank_stable"];
  metadata["rank_samples_ideal_fitted"] = ranks["ideal_fitted"];
  metadata["rank_threshold"] = kRankThreshold;
  metadata["precision"] = "double";
  c.metadata = std::move(metadata);
  return c;
}

/// Multi-start Levenberg-Marquardt search for epsilon(Phi^L) = Delta = epsilon(Phi^R).
/// Restarts run in fixed-size batches; the first batch containing an accepted restart decides,
/// taking the minimal residual there with ties broken by restart index.
inline SolveResult solve_full_rank(const BraidWord& b, const SolveOptions& opt = {}) {
  const int n = b.strands();
  if (component_count(b) != 1) throw std::invalid_argument("solve_full_rank: the closure is not a knot");
  if (opt.restarts < 1) throw std::invalid_argument("solve_full_rank: restarts must be positive");
  const auto slots = detail::generator_slots(n);
  const CMatrix delta = matrix_Delta(b);

  if (slots.empty()) {
    nlohmann::ordered_json meta{{"method", "multistart-lm"}, {"restarts_used", 0}};
    return finalize_certificate(b, Assignment(n), opt.seed, opt.restarts, opt.tol, std::move(meta));
  }

  struct Run {
    CVector x;
    double residual = std::numeric_limits<double>::infinity();
  };
  std::vector<Run> runs(std::size_t(opt.restarts));
  const int batch = std::max(1, opt.batch);
  int done = 0;
  int chosen = -1;
  while (done < opt.restarts && chosen < 0) {
    const int count = std::min(batch, opt.restarts - done);
    detail::run_parallel(count, opt.threads, [&](int t) {
      const int idx = done + t;
      auto rng = detail::substream(opt.seed, detail::kStreamRestart, std::uint32_t(idx));
      CVector x0(Eigen::Index(slots.size()));
      for (Eigen::Index s = 0; s < x0.size(); ++s) x0(s) = detail::complex_normal(rng);
      auto f = [&](const CVector& x) { return detail::full_rank_system(b, delta, slots, x); };
      detail::LMOutcome o = detail::levenberg_marquardt(f, x0, opt.max_iter, 1e-3 * opt.tol);
      Run& r = runs[std::size_t(idx)];
      if (o.x.size() == x0.size()) {
        const ResidualPair rp = full_rank_residual(b, detail::assignment_from(n, slots, o.x));
        r.x = std::move(o.x);
        r.residual = std::isfinite(rp.max()) ? rp.max() : std::numeric_limits<double>::infinity();
      }
    });
    for (int idx = done; idx < done + count; ++idx) {
      const double res = runs[std::size_t(idx)].residual;
      if (res <= opt.tol && (chosen < 0 || res < runs[std::size_t(chosen)].residual)) chosen = idx;
    }
    done += count;
  }

  if (chosen >= 0) {
    nlohmann::ordered_json meta{{"method", "multistart-lm"}, {"restarts_used", done}, {"selected_restart", chosen}};
    return finalize_certificate(b, detail::assignment_from(n, slots, runs[std::size_t(chosen)].x), opt.seed,
                                opt.restarts, opt.tol, std::move(meta));
  }

  NotFound nf;
  nf.braid = b;
  nf.restarts = done;
  nf.seed = opt.seed;
  nf.tol = opt.tol;
  std::vector<double> res;
  for (int idx = 0; idx < done; ++idx) {
    const double r = runs[std::size_t(idx)].residual;
    res.push_back(r);
    if (r < nf.best_residual) {
      nf.best_residual = r;
      nf.best_restart = idx;
    }
  }
  std::sort(res.begin(), res.end());
  auto quantile = [&](double q) { return res[std::min(res.size() - 1, std::size_t(q * double(res.size() - 1) + 0.5))]; };
  int below_1e3 = 0, below_1e6 = 0, diverged = 0;
  for (double r : res) {
    below_1e3 += r < 1e-3;
    below_1e6 += r < 1e-6;
    diverged += !std::isfinite(r);
  }
  nf.summary = nlohmann::ordered_json{{"min", quantile(0.0)},
                                      {"q10", quantile(0.1)},
                                      {"median", quantile(0.5)},
                                      {"count_below_1e-3", below_1e3},
                                      {"count_below_1e-6", below_1e6},
                                      {"diverged", diverged}};
  return nf;
}

// ---------------------------------------------------------------------------------------------
// Satellite augmentations

/// Signs on the first p strands, alternating along the cycle of perm(gamma); for odd p the first
/// two points of the cycle share the sign +1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(const BraidWord& gamma) : g_(std::size_t(gamma.strands()), 1) {
    const int p = gamma.strands();
    const Perm pg = perm(gamma);
    std::vector<int> cycle{1};
    for (int l = 1; l < p; ++l) cycle.push_back(pg(cycle.back()));
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (pg(cycle.back()) != 1 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("SignVector: perm(gamma) is not a p-cycle");
    int sign = 1;
    for (int l = 0; l < p; ++l) {
      if (l > 0 && !(p % 2 == 1 && l == 1)) sign = -sign;
      g_[std::size_t(cycle[std::size_t(l)] - 1)] = sign;
    }
    cycle_ = std::move(cycle);
  }

  int p() const { return int(g_.size()); }
  int operator()(int i) const { return g_.at(std::size_t(i - 1)); }
  const std::vector<int>& values() const { return g_; }
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> g_;
  std::vector<int> cycle_;
};

/// delta(a_ij) = g(i) g(j) eps_p(a_ij) for odd writhe of alpha, eps_p otherwise.
inline Assignment satellite_delta(const Assignment& eps_p, const SignVector& g, bool odd_writhe) {
  Assignment d(eps_p.n());
  for (int i = 1; i <= eps_p.n(); ++i)
    for (int j = 1; j <= eps_p.n(); ++j)
      if (i != j) d.set(i, j, odd_writhe ? double(g(i) * g(j)) * eps_p.get(i, j) : eps_p.get(i, j));
  return d;
}

/// pi o (eps_k (x) delta) applied to a tensor.
inline Complex evaluate(const TensorPoly& t, const Assignment& left, const Assignment& right) {
  Complex v{};
  for (const auto& [key, c] : t.terms()) v += double(c) * evaluate(key.first, left) * evaluate(key.second, right);
  return v;
}

/// Generator values epsilon = pi o (eps_k (x) delta) o psi on A_{kp}, with residuals checked for the
/// satellite braid <alpha>_p gamma-bar. Throws std::logic_error if the result misses `tol`.
inline Certificate construct_satellite_aug(const Certificate& cert_k, const Certificate& cert_p, const BraidWord& alpha,
                                           const BraidWord& gamma, double tol = 1e-9) {
  if (!(cert_k.braid == alpha)) throw std::invalid_argument("construct_satellite_aug: first certificate is not for alpha");
  if (!(cert_p.braid == gamma)) throw std::invalid_argument("construct_satellite_aug: second certificate is not for gamma");
  if (!cert_k.accepted() || !cert_p.accepted())
    throw std::invalid_argument("construct_satellite_aug: input certificates must be accepted");
  if (component_count(alpha) != 1 || component_count(gamma) != 1)
    throw std::invalid_argument("construct_satellite_aug: closures must be knots");
  const int k = alpha.strands();
  const int p = gamma.strands();
  const bool odd = writhe(alpha) % 2 != 0;
  const SignVector g(gamma);
  const Assignment delta = satellite_delta(cert_p.assignment, g, odd);
  const BraidWord beta = satellite_braid(alpha, gamma);
  const Algebra alg{k * p, false};
  Assignment eps(k * p);
  for (int i = 1; i <= k * p; ++i)
    for (int j = 1; j <= k * p; ++j)
      if (i != j) eps.set(i, j, evaluate(psi(NCPoly::generator(alg, i, j), k, p), cert_k.assignment, delta));
  nlohmann::ordered_json meta{{"method", "satellite-construction"},
                              {"alpha", {{"n", k}, {"word", alpha.letters()}}},
                              {"gamma", {{"n", p}, {"word", gamma.letters()}}},
                              {"writhe_alpha_odd", odd},
                              {"g", g.values()}};
  Certificate c = finalize_certificate(beta, std::move(eps), 0, 0, tol, std::move(meta));
  if (!c.accepted())
    throw std::logic_error("construct_satellite_aug: constructed values miss the full-rank criterion (residual " +
                           std::to_string(std::max(c.residual_L, c.residual_R)) + ")");
  return c;
}

// ---------------------------------------------------------------------------------------------
// Block structure of Phi^L for the cabled tau = s_1 ... s_{n-1}

inline Report check_block_structure(int n, int p) {
  if (n < 2 || p < 1) throw std::invalid_argument("check_block_structure needs n >= 2 and p >= 1");
  Report rep;
  rep.claim = "block structure of Phi^L for the p-cable of s_1...s_{n-1}";
  rep.parameters = {{"n", n}, {"p", p}};
  const PhiMatrix m = phi_L(cable(tau_word(1, n - 1, n), p));
  const Algebra alg = m.algebra();
  const NCPoly zero(alg), one = NCPoly::one(alg);
  auto expect_entry = [&](int i, int j, const NCPoly& want, const char* note) {
    rep.expect(m(i, j) == want, i, j, to_string(m(i, j)), to_string(want), note);
  };
  // (a) rows of blocks 1..n-1 against columns of blocks 2..n form an identity.
  for (int i = 1; i <= (n - 1) * p; ++i)
    for (int j = p + 1; j <= n * p; ++j) expect_entry(i, j, i == j - p ? one : zero, "(a) identity submatrix");
  // (b) block (n, 1) is the identity; (c) blocks (n, j > 1) vanish.
  for (int i = (n - 1) * p + 1; i <= n * p; ++i)
    for (int j = 1; j <= n * p; ++j) {
      if (j <= p)
        expect_entry(i, j, i - (n - 1) * p == j ? one : zero, "(b) block (n,1) is I_p");
      else
        expect_entry(i, j, zero, "(c) block (n,j>1) vanishes");
    }
  // (d) row p of Phi^L for gamma = s_1...s_{p-1}, included in B_{np}, is e_1.
  const PhiMatrix gm = phi_L(include_bar(tau_word(1, p - 1, std::max(p, 1)), n * p));
  for (int j = 1; j <= n * p; ++j) {
    const NCPoly want = j == 1 ? one : zero;
    rep.expect(gm(p, j) == want, p, j, to_string(gm(p, j)), to_string(want), "(d) row p of Phi^L_gamma is e_1");
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Nonexistence evidence

struct Evidence {
  SolveResult result;
  nlohmann::ordered_json summary;
};

/// Runs the solver and labels the outcome as numerical evidence only.
inline Evidence nonexistence_search(const BraidWord& b, const SolveOptions& opt) {
  Evidence ev{solve_full_rank(b, opt), nlohmann::ordered_json::object()};
  ev.summary["label"] = "EVIDENCE: a numerical search, not a proof";
  if (const auto* nf = std::get_if<NotFound>(&ev.result)) {
    ev.summary["found"] = false;
    ev.summary["best_residual"] = nf->best_residual;
    ev.summary["best_restart"] = nf->best_restart;
    ev.summary["restarts"] = nf->restarts;
    ev.summary["residual_distribution"] = nf->summary;
  } else {
    const auto& c = std::get<Certificate>(ev.result);
    ev.summary["found"] = true;
    ev.summary["residual"] = std::max(c.residual_L, c.residual_R);
    ev.summary["restarts_used"] = c.metadata.value("restarts_used", 0);
  }
  return ev;
}

}  // namespace kch
