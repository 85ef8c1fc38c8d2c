#include "poncelet/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "poncelet/chain.hpp"
#include "poncelet/kernels.hpp"
#include "poncelet/rng.hpp"

namespace poncelet {

using kernel::ConicRep;
using json = nlohmann::ordered_json;

namespace {

ConicRep rep_of(const Conic& c) {
  std::array<uint32_t, 6> m;
  for (int i = 0; i < 6; ++i) m[i] = c.matrix().e[i].rep();
  return kernel::make_conic_rep(c.field(), m);
}

void require_n(int n) {
  if (n < kMinNgon || n > kMaxNgon) throw std::invalid_argument("n must lie in 3..9");
}

uint32_t half(const FieldCtx& f) { return f.inv(f.from_int(2)); }

// Run body(i) for i in [0, count) on `workers` threads pulling indices.
template <class Body>
void parallel_for(size_t count, unsigned workers, Body&& body) {
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  for (auto& t : pool) t.join();
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void finish_ratio(GlobalCensus& g) {
  g.ratio = g.psi_total ? static_cast<double>(g.gamma_total) / static_cast<double>(g.psi_total) : 0.0;
  g.lower = theorem_lower(g.q);
  g.upper = theorem_upper(g.q);
  g.tau_hat = g.q * g.ratio;
}

}  // namespace

std::array<uint64_t, 10> pencil_census_all(const Pencil& pencil, uint64_t* psi_out) {
  const FieldCtx& f = pencil.field();
  const auto members = nonsingular_members(pencil);
  std::vector<ConicRep> reps;
  for (const auto& m : members) reps.push_back(rep_of(m.conic));
  const uint32_t inv2 = half(f);
  std::array<uint64_t, 10> gamma{};
  uint64_t psi = 0;
  for (size_t j = 0; j < reps.size(); ++j) {
    const uint32_t ic0 = f.inv(reps[j].det);
    for (size_t i = 0; i < reps.size(); ++i) {
      if (i == j) continue;
      const auto c = kernel::char_cubic(f, reps[i], reps[j]);
      if (kernel::cubic_disc(f, c) == 0)
        throw std::logic_error("pencil has a non-transversal pair of members");
      ++psi;
      const auto h = kernel::sqrt_series_inv(f, c, ic0, inv2);
      for (int n = kMinNgon; n <= kMaxNgon; ++n)
        if (kernel::ngon_holds(f, h, n)) ++gamma[n];
    }
  }
  if (psi_out) *psi_out = psi;
  return gamma;
}

PencilCensus pencil_census(const Pencil& pencil, const std::string& cls, const std::string& params,
                           int n) {
  require_n(n);
  const FieldCtx& f = pencil.field();
  const auto members = nonsingular_members(pencil);
  std::vector<ConicRep> reps;
  for (const auto& m : members) reps.push_back(rep_of(m.conic));
  const uint32_t inv2 = half(f);

  PencilCensus out;
  out.cls = cls;
  out.params = params;
  out.q = f.q();
  out.n = n;
  out.sigma = reps.size();
  for (size_t j = 0; j < reps.size(); ++j) {
    const uint32_t ic0 = f.inv(reps[j].det);
    for (size_t i = 0; i < reps.size(); ++i) {
      if (i == j) continue;
      const auto c = kernel::char_cubic(f, reps[i], reps[j]);
      if (kernel::cubic_disc(f, c) == 0)
        throw std::logic_error("pencil has a non-transversal pair of members");
      ++out.psi;
      const bool hit = n == 3 ? kernel::triangle_numerator(f, c) == 0
                              : kernel::ngon_holds(f, kernel::sqrt_series_inv(f, c, ic0, inv2), n);
      if (hit) ++out.gamma;
    }
  }
  if (n == 3)
    for (const auto& m : members)
      if (m.eta && triangle_quadratic_in_r(pencil, *m.eta).disc().is_zero()) ++out.roots_of_f;
  return out;
}

PencilCensus pencil_census(const DicksonClass& cls, const FieldCtx& f, int n) {
  return pencil_census(dickson_generators(cls, f), to_string(cls.tag), cls.params_str(), n);
}

uint64_t s_set_size(const FieldCtx& f) {
  if (!f.is_prime_field() || f.q() < 7) throw std::invalid_argument("s_set_size needs a prime q >= 7");
  uint64_t count = 0;
  for (const Fq& s : f.elements()) {
    if (s.is_zero() || s.is_one()) continue;
    if ((s * s - s + f.one()).legendre() == 1) ++count;
  }
  return count;
}

uint64_t s_set_size_formula(const FieldCtx& f) {
  return f((-3)).legendre() == 1 ? (f.q() - 7) / 2 : (f.q() - 5) / 2;
}

uint64_t zphi_census(const Fq& u0, const Fq& u1, const Fq& u2) {
  const FieldCtx& f = u0.field();
  if (u0.is_zero()) throw std::invalid_argument("zphi_census: polynomial is not quadratic");
  if ((u1 * u1 - f(4) * u0 * u2).is_zero())
    throw std::invalid_argument("zphi_census: polynomial is a constant times a square");
  uint64_t count = 0;
  for (const Fq& s : f.elements())
    if ((u0 * s * s + u1 * s + u2).legendre() >= 0) ++count;
  return count;
}

std::string to_string(CensusMode mode) {
  return mode == CensusMode::Exhaustive ? "exhaustive" : "montecarlo";
}

double theorem_lower(uint32_t q) {
  const double x = q;
  return (x - 16) / (x * (x + 1));
}

double theorem_upper(uint32_t q) {
  const double x = q;
  return (x + 5) / ((x - 2) * (x - 3));
}

GlobalCensus exhaustive_pair_census(const FieldCtx& f, int n, unsigned workers) {
  require_n(n);
  if (f.q() > 9) throw std::invalid_argument("exhaustive census limited to q <= 9; use Monte-Carlo");
  const uint32_t q = f.q();
  // normalized matrices: first nonzero upper-triangle entry is 1
  std::vector<ConicRep> conics;
  std::array<uint32_t, 6> m{};
  uint64_t total = 1;
  for (int i = 0; i < 6; ++i) total *= q;
  for (uint64_t code = 1; code < total; ++code) {
    uint64_t x = code;
    for (int i = 5; i >= 0; --i) {
      m[i] = static_cast<uint32_t>(x % q);
      x /= q;
    }
    const auto lead = std::find_if(m.begin(), m.end(), [](uint32_t v) { return v != 0; });
    if (*lead != 1) continue;
    ConicRep c = kernel::make_conic_rep(f, m);
    if (c.det != 0) conics.push_back(c);
  }
  std::vector<uint32_t> inv_det(conics.size());
  for (size_t i = 0; i < conics.size(); ++i) inv_det[i] = f.inv(conics[i].det);
  const uint32_t inv2 = half(f);

  // (A, B) and (B, A) share both trace products: the cubic of (B, A) is
  // the reversal of the cubic of (A, B), with the same discriminant.
  std::vector<uint64_t> psi(conics.size()), gamma(conics.size());
  parallel_for(conics.size(), workers, [&](size_t j) {
    const ConicRep& b = conics[j];
    uint64_t ps = 0, ga = 0;
    for (size_t i = 0; i < j; ++i) {
      const ConicRep& a = conics[i];
      const std::array<uint32_t, 4> ab = kernel::char_cubic(f, a, b);
      if (kernel::cubic_disc(f, ab) == 0) continue;
      ps += 2;
      const std::array<uint32_t, 4> ba{ab[3], ab[2], ab[1], ab[0]};
      if (n == 3) {
        ga += kernel::triangle_numerator(f, ab) == 0;
        ga += kernel::triangle_numerator(f, ba) == 0;
      } else {
        ga += kernel::ngon_holds(f, kernel::sqrt_series_inv(f, ab, inv_det[j], inv2), n);
        ga += kernel::ngon_holds(f, kernel::sqrt_series_inv(f, ba, inv_det[i], inv2), n);
      }
    }
    psi[j] = ps;
    gamma[j] = ga;
  });

  GlobalCensus g;
  g.q = q;
  g.p = f.p();
  g.r = f.r();
  g.n = n;
  g.mode = CensusMode::Exhaustive;
  g.samples = static_cast<uint64_t>(conics.size()) * (conics.size() - 1);
  g.workers = workers;
  for (size_t j = 0; j < conics.size(); ++j) {
    g.psi_total += psi[j];
    g.gamma_total += gamma[j];
  }
  finish_ratio(g);
  return g;
}

void McTally::merge(const McTally& o) {
  samples += o.samples;
  psi += o.psi;
  for (int i = 0; i < 10; ++i) {
    gamma[i] += o.gamma[i];
    for (int j = 0; j < 10; ++j) both[i][j] += o.both[i][j];
  }
}

namespace {

ConicRep draw_nonsingular(const FieldCtx& f, StreamRng& rng) {
  ConicRep c;
  do {
    for (auto& x : c.m) x = static_cast<uint32_t>(rng.below(f.q()));
    kernel::fill_adjugate(f, c);
  } while (c.det == 0);
  return c;
}

McTally run_shard(const FieldCtx& f, uint64_t count, uint64_t seed, uint64_t shard) {
  StreamRng rng(seed, shard);
  const uint32_t inv2 = half(f);
  McTally t;
  for (uint64_t k = 0; k < count; ++k) {
    const ConicRep a = draw_nonsingular(f, rng);
    const ConicRep b = draw_nonsingular(f, rng);
    ++t.samples;
    const auto c = kernel::char_cubic(f, a, b);
    if (kernel::cubic_disc(f, c) == 0) continue;
    ++t.psi;
    const uint32_t mask = kernel::ngon_mask(f, c, inv2);
    for (int n = kMinNgon; n <= kMaxNgon; ++n) {
      if (!(mask >> n & 1u)) continue;
      ++t.gamma[n];
      for (int m = kMinNgon; m <= kMaxNgon; ++m)
        if (mask >> m & 1u) ++t.both[n][m];
    }
  }
  return t;
}

}  // namespace

McTally monte_carlo_tally(const FieldCtx& f, uint64_t samples, uint64_t seed, unsigned workers) {
  const uint64_t shards = (samples + kShardSize - 1) / kShardSize;
  std::vector<McTally> parts(shards);
  parallel_for(shards, workers, [&](size_t k) {
    const uint64_t begin = k * kShardSize;
    parts[k] = run_shard(f, std::min(kShardSize, samples - begin), seed, k);
  });
  McTally total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

GlobalCensus census_from_tally(const FieldCtx& f, const McTally& t, int n, uint64_t seed,
                               unsigned workers) {
  require_n(n);
  GlobalCensus g;
  g.q = f.q();
  g.p = f.p();
  g.r = f.r();
  g.n = n;
  g.mode = CensusMode::MonteCarlo;
  g.samples = t.samples;
  g.seed = seed;
  g.workers = workers;
  g.psi_total = t.psi;
  g.gamma_total = t.gamma[n];
  finish_ratio(g);
  g.std_error = t.psi ? std::sqrt(g.ratio * (1 - g.ratio) / static_cast<double>(t.psi)) : 0.0;
  g.tau_stderr = g.q * g.std_error;
  return g;
}

GlobalCensus monte_carlo_census(const FieldCtx& f, int n, uint64_t samples, uint64_t seed,
                                unsigned workers) {
  require_n(n);
  return census_from_tally(f, monte_carlo_tally(f, samples, seed, workers), n, seed, workers);
}

TauTable tau_table(const std::vector<uint32_t>& primes, int n_min, int n_max, uint64_t samples,
                   uint64_t seed, unsigned workers) {
  require_n(n_min);
  require_n(n_max);
  if (n_min > n_max) throw std::invalid_argument("tau_table: empty n range");
  TauTable table{n_min, n_max, samples, seed, {}};
  for (uint32_t p : primes) {
    const Field f = FieldCtx::make(p);
    const McTally t = monte_carlo_tally(*f, samples, seed, workers);
    TauRow row;
    row.q = f->q();
    row.psi = t.psi;
    row.samples = t.samples;
    uint64_t pencil_psi = 0;
    const auto pencil_gamma = pencil_census_all(sample_pencil(*f), &pencil_psi);
    for (int n = n_min; n <= n_max; ++n) {
      const GlobalCensus g = census_from_tally(*f, t, n, seed, workers);
      row.tau_hat[n] = g.tau_hat;
      row.tau_stderr[n] = g.tau_stderr;
      row.gamma[n] = g.gamma_total;
      for (int m = kMinNgon; m < n; ++m)
        if (n % m == 0) row.overlap[n] += t.both[n][m];
      row.pencil_tau[n] = pencil_psi ? row.q * static_cast<double>(pencil_gamma[n]) / pencil_psi : 0.0;
    }
    table.rows.push_back(row);
  }
  return table;
}

Char3Report char3_experiment(const FieldCtx& f) {
  if (f.p() != 3) throw std::invalid_argument("char3_experiment needs characteristic 3");
  const Pencil pencil = sample_pencil(f);
  Char3Report rep;
  rep.census = pencil_census(pencil, "3", "", 3);
  rep.ratio = rep.census.ratio();
  rep.target = 2.0 / f.q();
  rep.rel_error = std::fabs(rep.ratio - rep.target) / rep.target;
  for (const auto& m : nonsingular_members(pencil))
    if (m.eta && triangle_numerator(char_cubic(m.conic, m.conic)).is_zero()) ++rep.diagonal_roots;
  rep.delta_always_square = true;
  rep.f_is_shifted_square = true;
  for (const Fq& s : f.elements()) {
    const auto ref = class3_reference_polys(s, s);
    if (ref.delta.legendre() < 0) rep.delta_always_square = false;
    if (triangle_quadratic_in_r(pencil, s).disc().legendre() < 0) rep.delta_always_square = false;
    const Fq sp1 = s + f.one();
    if (ref.f != sp1 * sp1) rep.f_is_shifted_square = false;
  }
  return rep;
}

bool WorkedExample::all_pass() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.pass; });
}

WorkedExample verify_worked_example(int a_param, int b_param) {
  const Field field = FieldCtx::make(43);
  const FieldCtx& f = *field;
  const Conic a = c_alpha(f(a_param));
  const Conic b = c_alpha(f(b_param));
  WorkedExample ex;
  auto check = [&](std::string name, bool pass, std::string detail) {
    ex.assertions.push_back({std::move(name), pass, std::move(detail)});
  };
  auto join = [](const std::vector<PPoint>& pts) {
    std::string s = "{";
    for (size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + pts[i].str();
    return s + "}";
  };

  const bool usable = a.nonsingular() && b.nonsingular() && !(a == b) && is_transversal(a, b);
  const bool ptc = usable && ngon_condition(a, b, 3);
  check("triangle condition", ptc, "H2(" + std::to_string(a_param) + "," + std::to_string(b_param) +
                                       ") = " + class3_reference_polys(f(a_param), f(b_param)).h2.str());
  if (!b.nonsingular()) {
    check("polar of [1,17,34]", false, "B singular");
    check("polar of [1,9,12]", false, "B singular");
    check("polar meets B twice", false, "B singular");
    check("second polar misses B", false, "B singular");
    check("triangle closes", false, "B singular");
    check("no tangent at [1,9,12]", false, "B singular");
    check("degenerate at [0,1,0]", false, "B singular");
    return ex;
  }

  const PPoint p1 = PPoint::of(f, 1, 17, 34);
  const PLine polar1 = polar_line(p1, b);
  check("polar of [1,17,34]", polar1 == PLine::of(f, 1, 18, 5), polar1.str());
  const PPoint p_bad = PPoint::of(f, 1, 9, 12);
  const PLine polar2 = polar_line(p_bad, b);
  check("polar of [1,9,12]", polar2 == PLine::of(f, 1, 32, 13), polar2.str());
  const auto meet1 = line_conic_intersect(polar1, b);
  const std::vector<PPoint> want1{PPoint::of(f, 1, 32, 5), PPoint::of(f, 1, 40, 2)};
  check("polar meets B twice", meet1 == want1, join(meet1));
  const auto meet2 = line_conic_intersect(polar2, b);
  check("second polar misses B", meet2.empty(), join(meet2));

  // the branch through R1 = [1,32,5]
  const PLine e1 = line_through(p1, want1[0]);
  const auto starts = tangents_from(p1, b);
  const Branch branch = !starts.empty() && starts[0] == e1 ? Branch::First : Branch::Second;
  std::string trace;
  ChainOutcome tri;
  if (on_conic(p1, a)) {
    tri = trace_chain(p1, branch, a, b, 9);
    trace += "start [1,17,34] branch " + std::to_string(static_cast<int>(branch)) + "\n" + format_trace(tri);
  }
  const std::vector<PPoint> want_tri{p1, PPoint::of(f, 1, 36, 3), PPoint::of(f, 1, 24, 28)};
  check("triangle closes",
        tri.kind == OutcomeKind::Closed && tri.n == 3 && tri.vertices == want_tri,
        to_string(tri.kind) + " " + join(tri.vertices));

  ChainOutcome none;
  if (on_conic(p_bad, a)) {
    none = trace_chain(p_bad, Branch::First, a, b, 9);
    trace += "start [1,9,12] branch 1\n" + format_trace(none);
  }
  check("no tangent at [1,9,12]", none.kind == OutcomeKind::NoTangent, to_string(none.kind));

  const PPoint base = PPoint::of(f, 0, 1, 0);
  const ChainOutcome deg = trace_chain(base, Branch::First, a, b, 9);
  trace += "start [0,1,0] branch 1\n" + format_trace(deg);
  const bool deg_ok = deg.kind == OutcomeKind::Degenerate && deg.vertices.size() == 3 &&
                      deg.vertices[1] == PPoint::of(f, 1, 20, 36) && deg.vertices[2] == deg.vertices[1] &&
                      deg.edges.size() == 2 && deg.edges[1] == PLine::of(f, 1, 14, 34);
  check("degenerate at [0,1,0]", deg_ok, to_string(deg.kind) + " " + join(deg.vertices));
  ex.trace = trace;
  return ex;
}

// ---- reports

std::string pencil_csv_header() { return "class,q,params,n,sigma,psi,gamma,ratio"; }

std::string to_csv_row(const PencilCensus& c) {
  return c.cls + "," + std::to_string(c.q) + "," + c.params + "," + std::to_string(c.n) + "," +
         std::to_string(c.sigma) + "," + std::to_string(c.psi) + "," + std::to_string(c.gamma) + "," +
         fmt_double(c.ratio());
}

namespace {

json pencil_json(const PencilCensus& c) {
  return json{{"class", c.cls},     {"q", c.q},         {"params", c.params},
              {"n", c.n},           {"sigma", c.sigma}, {"psi", c.psi},
              {"gamma", c.gamma},   {"ratio", c.ratio()}, {"roots_of_f", c.roots_of_f}};
}

json global_json(const GlobalCensus& g) {
  return json{{"q", g.q},
              {"p", g.p},
              {"r", g.r},
              {"n", g.n},
              {"mode", to_string(g.mode)},
              {"psi_total", g.psi_total},
              {"gamma_total", g.gamma_total},
              {"ratio", g.ratio},
              {"lower", g.lower},
              {"upper", g.upper},
              {"samples", g.samples},
              {"seed", g.seed},
              {"stderr", g.std_error},
              {"tau_hat", g.tau_hat},
              {"tau_stderr", g.tau_stderr},
              {"workers", g.workers}};
}

}  // namespace

std::string to_json(const PencilCensus& c) { return pencil_json(c).dump(2) + "\n"; }

std::string to_json(const std::vector<PencilCensus>& rows) {
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(pencil_json(r));
  return arr.dump(2) + "\n";
}

std::string to_csv(const GlobalCensus& g) {
  std::string s = "q,p,r,n,mode,samples,seed,workers,psi_total,gamma_total,ratio,lower,upper,stderr,tau_hat,tau_stderr\n";
  s += std::to_string(g.q) + "," + std::to_string(g.p) + "," + std::to_string(g.r) + "," +
       std::to_string(g.n) + "," + to_string(g.mode) + "," + std::to_string(g.samples) + "," +
       std::to_string(g.seed) + "," + std::to_string(g.workers) + "," + std::to_string(g.psi_total) +
       "," + std::to_string(g.gamma_total) + "," + fmt_double(g.ratio) + "," + fmt_double(g.lower) +
       "," + fmt_double(g.upper) + "," + fmt_double(g.std_error) + "," + fmt_double(g.tau_hat) + "," +
       fmt_double(g.tau_stderr) + "\n";
  return s;
}

std::string to_json(const GlobalCensus& g) { return global_json(g).dump(2) + "\n"; }

std::string to_csv(const TauTable& t) {
  std::string s = "q,source,quantity";
  for (int n = t.n_min; n <= t.n_max; ++n) s += "," + std::to_string(n);
  s += "\n";
  for (const auto& row : t.rows) {
    auto line = [&](const std::string& source, const std::string& quantity, auto value) {
      s += std::to_string(row.q) + "," + source + "," + quantity;
      for (int n = t.n_min; n <= t.n_max; ++n) s += "," + value(n);
      s += "\n";
    };
    line("pairs", "tau_hat", [&](int n) { return fmt_double(row.tau_hat[n]); });
    line("pairs", "stderr", [&](int n) { return fmt_double(row.tau_stderr[n]); });
    line("pairs", "gamma", [&](int n) { return std::to_string(row.gamma[n]); });
    line("pairs", "overlap", [&](int n) { return std::to_string(row.overlap[n]); });
    line("pairs", "psi", [&](int) { return std::to_string(row.psi); });
    line("c_alpha", "tau", [&](int n) { return fmt_double(row.pencil_tau[n]); });
  }
  return s;
}

std::string to_json(const TauTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json cols = json::array();
    for (int n = t.n_min; n <= t.n_max; ++n)
      cols.push_back(json{{"n", n},
                          {"tau_hat", row.tau_hat[n]},
                          {"stderr", row.tau_stderr[n]},
                          {"gamma", row.gamma[n]},
                          {"overlap", row.overlap[n]},
                          {"c_alpha_tau", row.pencil_tau[n]}});
    rows.push_back(json{{"q", row.q}, {"samples", row.samples}, {"psi", row.psi}, {"columns", cols}});
  }
  return json{{"n_min", t.n_min}, {"n_max", t.n_max}, {"samples", t.samples}, {"seed", t.seed},
              {"rows", rows}}
             .dump(2) +
         "\n";
}

std::string to_json(const Char3Report& c) {
  return json{{"census", pencil_json(c.census)},
              {"ratio", c.ratio},
              {"target", c.target},
              {"rel_error", c.rel_error},
              {"diagonal_roots", c.diagonal_roots},
              {"delta_always_square", c.delta_always_square},
              {"f_is_shifted_square", c.f_is_shifted_square}}
             .dump(2) +
         "\n";
}

void report_write(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace poncelet
