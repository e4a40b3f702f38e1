#include "hamlag/torus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>
#include <tuple>

#include "hamlag/error.hpp"
#include "hamlag/immersion.hpp"

namespace hamlag::torus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t integer_angle(double a) {
  const double r = std::nearbyint(a);
  if (std::abs(a - r) > 1e-12 * std::max(1.0, std::abs(a))) {
    throw Error(ErrorKind::ModeError, "torus mode requires integer angles");
  }
  return static_cast<std::int64_t>(r);
}

std::optional<RationalApprox> first_within(double xi, std::int64_t q_max, double tol) {
  for (const Rational& r : convergents(xi, q_max)) {
    const double err = std::abs(xi - r.value());
    if (err <= tol) return RationalApprox{r, err};
  }
  return std::nullopt;
}

// Deterministic sample points: x stratified over one period, y scattered by
// the golden-ratio sequence over the y-period.
std::pair<double, double> sample_point(int k, int samples, double T, double Py) {
  constexpr double kGolden = 0.6180339887498949;
  const double x = T * (k + 0.5) / samples;
  const double frac = 0.5 + k * kGolden;
  const double y = Py * (frac - std::floor(frac));
  return {x, y};
}

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double lerp(const Range& r, int i, int n) { return n > 1 ? r.lo + (r.hi - r.lo) * i / (n - 1) : r.lo; }

struct Candidate {
  int node = 0;
  double tau = 0.0;
  std::array<double, 2> lambda{};
  ClosureMultiplier mult;
  double predicted = 0.0;
};

struct NodeResult {
  std::optional<params::ResolvedConstants> constants;
  std::vector<Candidate> candidates;
};

}  // namespace

std::array<double, 2> lambdas(const profile::RadialProfile& p, double tau) {
  const auto& alpha = p.alpha();
  for (double a : alpha) integer_angle(a);
  const auto& L = p.phase_advance();
  return {L[0] - L[2] + (alpha[0] - alpha[2]) * tau, L[1] - L[2] + (alpha[1] - alpha[2]) * tau};
}

std::vector<Rational> convergents(double xi, std::int64_t q_max) {
  std::vector<Rational> out;
  if (q_max < 1 || !std::isfinite(xi)) {
    throw Error(ErrorKind::DomainError, "convergents need finite xi and q_max >= 1");
  }
  // h_{n-1}/k_{n-1} and h_{n-2}/k_{n-2}.
  std::int64_t h1 = 1, k1 = 0, h2 = 0, k2 = 1;
  double rest = xi;
  for (int n = 0; n < 64; ++n) {
    const double a_real = std::floor(rest);
    if (k1 > 0 && a_real > static_cast<double>((q_max - k2) / k1)) break;
    if (std::abs(a_real) > 9e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h = a * h1 + h2;
    const std::int64_t k = a * k1 + k2;
    if (k > q_max) break;
    out.push_back({h, k});
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
    const double frac = rest - a_real;
    if (frac <= 0.0 || static_cast<double>(h) == xi * static_cast<double>(k)) break;
    rest = 1.0 / frac;
  }
  return out;
}

RationalApprox rational_approx(double xi, std::int64_t q_max) {
  const auto all = convergents(xi, q_max);
  const Rational& last = all.back();
  return {last, std::abs(xi - last.value())};
}

std::optional<ClosureMultiplier> try_find_N(double lambda1, double lambda2, std::int64_t q_max, double tol) {
  const auto r1 = first_within(lambda1 / kTwoPi, q_max, tol);
  if (!r1) return std::nullopt;
  const auto r2 = first_within(lambda2 / kTwoPi, q_max, tol);
  if (!r2) return std::nullopt;
  return ClosureMultiplier{std::lcm(r1->fraction.q, r2->fraction.q), *r1, *r2};
}

ClosureMultiplier find_N(double lambda1, double lambda2, std::int64_t q_max, double tol) {
  if (auto m = try_find_N(lambda1, lambda2, q_max, tol)) return *m;
  throw Error(ErrorKind::NoClosure, "phase mismatches are not rational within tolerance");
}

double y_period(const params::Angles& alpha) {
  const std::int64_t d1 = integer_angle(alpha[0]) - integer_angle(alpha[2]);
  const std::int64_t d2 = integer_angle(alpha[1]) - integer_angle(alpha[2]);
  const std::int64_t g = std::gcd(d1, d2);
  if (g == 0) throw Error(ErrorKind::ModeError, "angles must be distinct");
  return kTwoPi / static_cast<double>(g);
}

double y_closure_error(const profile::RadialProfile& p, double y_shift, int samples) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto [x, y] = sample_point(k, samples, p.period(), 1.0);
    worst = std::max(worst, immersion::fs_distance(immersion::point(p, x, y + y_shift), immersion::point(p, x, y)));
  }
  return worst;
}

double check_closure(const profile::RadialProfile& p, double tau, std::int64_t N, int samples) {
  const double Py = y_period(p.alpha());
  const double T = p.period();
  const double n = static_cast<double>(N);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto [x, y] = sample_point(k, samples, T, Py);
    const auto base = immersion::point(p, x, y);
    const auto shifted = immersion::point(p, x + n * T, y + n * tau);
    const auto rolled = immersion::point(p, x, y + Py);
    worst = std::max({worst, immersion::fs_distance(shifted, base), immersion::fs_distance(rolled, base)});
  }
  return worst;
}

std::vector<ClosureCertificate> search(const SearchConfig& config) {
  const double Py = y_period(config.alpha);
  if (config.n_a1 < 1 || config.n_a2 < 1 || config.n_tau < 0 || config.q_max < 1 || !(config.tol >= 0.0) ||
      config.samples < 1) {
    throw Error(ErrorKind::DomainError, "invalid search configuration");
  }
  const auto& alpha = config.alpha;
  const std::array<double, 2> slope = {alpha[0] - alpha[2], alpha[1] - alpha[2]};
  const std::size_t pivot = std::abs(slope[0]) >= std::abs(slope[1]) ? 0 : 1;

  const int nodes = config.n_a1 * config.n_a2;
  std::vector<NodeResult> results(static_cast<std::size_t>(nodes));

  parallel_for(nodes, config.threads, [&](int index) {
    NodeResult& out = results[static_cast<std::size_t>(index)];
    params::SeedParameters seed{alpha, lerp(config.a1, index / config.n_a2, config.n_a1),
                                lerp(config.a2, index % config.n_a2, config.n_a2), config.branch, config.sign};
    try {
      out.constants = params::resolve(seed);
    } catch (const Error&) {
      return;
    }
    const profile::RadialProfile p(*out.constants);
    const double T = p.period();
    const double tau_lo = config.tau.lo * T;
    const double tau_hi = config.tau.hi * T;

    auto consider = [&](double tau) {
      const auto lambda = lambdas(p, tau);
      if (auto mult = try_find_N(lambda[0], lambda[1], config.q_max, config.tol)) {
        const double worst = std::max(mult->approx1.error, mult->approx2.error);
        out.candidates.push_back({index, tau, lambda, *mult, kTwoPi * static_cast<double>(mult->N) * worst});
      }
    };

    for (int k = 0; k < config.n_tau; ++k) {
      consider(tau_lo + (tau_hi - tau_lo) * k / config.n_tau);
    }

    // Exact-rational lattice for the pivot mismatch.
    const auto& L = p.phase_advance();
    const double base = L[pivot] - L[2];
    const double s = slope[pivot];
    const double xa = (base + s * tau_lo) / kTwoPi;
    const double xb = (base + s * tau_hi) / kTwoPi;
    const double xlo = std::min(xa, xb);
    const double xhi = std::max(xa, xb);
    for (std::int64_t q = 1; q <= config.q_max; ++q) {
      const auto qd = static_cast<double>(q);
      for (auto num = static_cast<std::int64_t>(std::ceil(xlo * qd));
           num <= static_cast<std::int64_t>(std::floor(xhi * qd)); ++num) {
        if (std::gcd(num, q) != 1) continue;
        const double tau = (kTwoPi * static_cast<double>(num) / qd - base) / s;
        if (tau >= tau_lo && tau < tau_hi) consider(tau);
      }
    }
  });

  std::vector<Candidate> candidates;
  bool any_feasible = false;
  for (const auto& r : results) {
    any_feasible = any_feasible || r.constants.has_value();
    candidates.insert(candidates.end(), r.candidates.begin(), r.candidates.end());
  }
  if (!any_feasible) {
    throw Error(ErrorKind::EmptySearch, "no feasible parameter node in the search ranges");
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.predicted, x.mult.N, x.node, x.tau) < std::tie(y.predicted, y.mult.N, y.node, y.tau);
  });
  const auto top = static_cast<int>(std::min<std::size_t>(candidates.size(),
                                                           static_cast<std::size_t>(std::max(0, config.verify_top))));

  std::vector<std::optional<ClosureCertificate>> measured(static_cast<std::size_t>(top));
  parallel_for(top, config.threads, [&](int i) {
    const Candidate& c = candidates[static_cast<std::size_t>(i)];
    const auto& k = *results[static_cast<std::size_t>(c.node)].constants;
    const profile::RadialProfile p(k);
    ClosureCertificate cert;
    cert.seed = k.seed;
    cert.T = k.T;
    cert.lambda1 = c.lambda[0];
    cert.lambda2 = c.lambda[1];
    cert.approx1 = c.mult.approx1;
    cert.approx2 = c.mult.approx2;
    cert.N = c.mult.N;
    cert.tau = c.tau;
    cert.y_period = Py;
    cert.period_e2 = {static_cast<double>(c.mult.N) * k.T, static_cast<double>(c.mult.N) * c.tau};
    cert.predicted_phase_error = c.predicted;
    cert.closure_error = check_closure(p, c.tau, c.mult.N, config.samples);
    cert.nominal_e1_closure_error = y_closure_error(p, cert.period_e1[1], config.samples);
    if (cert.closure_error <= config.closure_tol) measured[static_cast<std::size_t>(i)] = cert;
  });

  std::vector<ClosureCertificate> out;
  for (auto& m : measured) {
    if (m) out.push_back(*m);
  }
  std::stable_sort(out.begin(), out.end(), [](const ClosureCertificate& x, const ClosureCertificate& y) {
    return std::tie(x.closure_error, x.N) < std::tie(y.closure_error, y.N);
  });
  return out;
}

}  // namespace hamlag::torus
