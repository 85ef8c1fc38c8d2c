// Acceptance checks. One line per criterion: "[PASS] k title: detail" or "[FAIL] ...".
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "poncelet/census.hpp"
#include "poncelet/chain.hpp"
#include "poncelet/rng.hpp"

using namespace poncelet;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<uint32_t> primes_in(uint32_t lo, uint32_t hi) {
  std::vector<uint32_t> out;
  for (uint32_t p = lo; p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

std::vector<std::pair<uint32_t, uint32_t>> odd_prime_powers(uint32_t limit) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t p = 3; p <= limit; p += 2) {
    if (!is_prime(p)) continue;
    uint64_t q = p;
    for (uint32_t r = 1; q <= limit; ++r, q *= p) out.emplace_back(p, r);
  }
  return out;
}

Field field_of_order(uint32_t q) {
  for (auto [p, r] : odd_prime_powers(q)) {
    uint64_t x = 1;
    for (uint32_t i = 0; i < r; ++i) x *= p;
    if (x == q) return FieldCtx::make(p, r);
  }
  throw std::invalid_argument("not an odd prime power");
}

bool tag_free(const Fq& r) { return !r.is_zero() && !r.is_one(); }

Fq draw(const FieldCtx& f, StreamRng& rng) { return f.element(static_cast<uint32_t>(rng.below(f.q()))); }

std::string fmt(double x, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << x;
  return s.str();
}

const DicksonTag kTags[] = {DicksonTag::C3, DicksonTag::C14, DicksonTag::C16, DicksonTag::C18,
                            DicksonTag::C19};

// ---- 1

Result worked_example() {
  const auto t0 = std::chrono::steady_clock::now();
  const WorkedExample ex = verify_worked_example();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int ok = 0;
  std::string failed;
  for (const auto& a : ex.assertions) {
    ok += a.pass;
    if (!a.pass) failed += " [" + a.name + ": " + a.detail + "]";
  }
  const bool pass = ex.assertions.size() == 8 && ok == 8 && secs < 1.0;
  return {pass, std::to_string(ok) + "/8 assertions in " + fmt(secs, 3) + " s" + failed};
}

// ---- 2

Result claim_one() {
  std::string bad;
  const auto primes = primes_in(7, 199);
  for (uint32_t q : primes) {
    const Field f = FieldCtx::make(q);
    const PencilCensus c = pencil_census(DicksonClass{DicksonTag::C3, {}}, *f, 3);
    if (c.gamma != q - 5) bad += " q=" + std::to_string(q) + ":" + std::to_string(c.gamma);
  }
  return {bad.empty(), std::to_string(primes.size()) + " primes in 7..199" +
                           (bad.empty() ? ", gamma = q - 5 throughout" : ", mismatches" + bad)};
}

// ---- 3

Result claim_two() {
  std::string bad;
  for (uint32_t q : primes_in(7, 199)) {
    const Field f = FieldCtx::make(q);
    const uint64_t want = (q % 12 == 1 || q % 12 == 7) ? (q - 7) / 2 : (q - 5) / 2;
    if (s_set_size(*f) != want) bad += " q=" + std::to_string(q);
  }
  return {bad.empty(), bad.empty() ? "|S| matches the mod-12 formula for all primes 7..199" : "mismatch at" + bad};
}

// ---- 4

Result closed_forms() {
  uint64_t checked3 = 0, checked4 = 0, zeros3 = 0, zeros4 = 0;
  std::string bad;
  for (uint32_t q : {11u, 13u, 43u}) {
    const Field f = FieldCtx::make(q);
    for (const Fq& r : f->elements())
      for (const Fq& s : f->elements()) {
        if (!tag_free(r) || !tag_free(s) || r == s) continue;
        const Conic a = c_alpha(r), b = c_alpha(s);
        const bool t = ngon_condition(a, b, 3);
        ++checked3;
        zeros3 += t;
        if (t != class3_reference_polys(r, s).h2.is_zero())
          bad += " n=3 q=" + std::to_string(q) + " (" + r.str() + "," + s.str() + ")";
        if (q == 43) continue;
        const bool u = ngon_condition(a, b, 4);
        ++checked4;
        zeros4 += u;
        if (u != class3_square_sextic(r, s).is_zero())
          bad += " n=4 q=" + std::to_string(q) + " (" + r.str() + "," + s.str() + ")";
      }
  }
  return {bad.empty(), std::to_string(checked3) + " triangle pairs (" + std::to_string(zeros3) + " zeros), " +
                           std::to_string(checked4) + " quadrilateral pairs (" + std::to_string(zeros4) +
                           " zeros)" + (bad.empty() ? "" : "; mismatches" + bad)};
}

// ---- 5

/// Fits got = lambda * want over all points; lambda must be nonzero and shared.
struct ScalarFit {
  std::optional<Fq> lambda;
  bool ok = true;
  uint64_t points = 0;
  void add(const Fq& got, const Fq& want) {
    ++points;
    if (want.is_zero()) {
      if (!got.is_zero()) ok = false;
      return;
    }
    const Fq l = got / want;
    if (l.is_zero()) ok = false;
    if (!lambda) lambda = l;
    else if (*lambda != l) ok = false;
  }
  bool pass() const { return ok && lambda.has_value(); }
  std::string str() const { return lambda ? lambda->str() : "none"; }
};

Result delta_factorizations() {
  bool pass = true;
  std::string detail;
  for (uint32_t q : {11u, 13u}) {
    const Field f = FieldCtx::make(q);
    const FieldCtx& F = *f;

    ScalarFit c3;
    const Pencil calpha = sample_pencil(F);
    for (const Fq& s : F.elements()) c3.add(triangle_quadratic_in_r(calpha, s).disc(), class3_reference_polys(s, s).delta);

    ScalarFit c14;
    for (const auto& cls : valid_param_enumerator(DicksonTag::C14, F)) {
      const Fq e = cls.params[0];
      const Pencil pen = dickson_generators(cls, F);
      for (const Fq& s : F.elements()) {
        const Fq sq = e * s * s - s + F.one();
        const Fq fp = e * e * s * s - e * s - F(3) * e + F.one();
        c14.add(triangle_quadratic_in_r(pen, s).disc(), F(16) * sq * sq * fp);
      }
    }

    ScalarFit h0fit, c18;
    for (const auto& cls : valid_param_enumerator(DicksonTag::C18, F)) {
      const Fq b = cls.params[0], c = cls.params[1];
      const Pencil pen = dickson_generators(cls, F);
      for (const Fq& s : F.elements()) {
        const Fq s2 = s * s;
        const Fq h0 = F(3) * s2 * s2 + F(4) * b * s2 * s + F(6) * c * s2 + F(12) * s + F(4) * b - c * c;
        const Fq cub = s2 * s + b * s2 + c * s + F.one();
        const Fq ep = F(16) * cub * cub;
        const Fq fp = (b * b - F(3) * c) * s2 + (b * c - F(9)) * s + (c * c - F(3) * b);
        const RQuadratic rq = triangle_quadratic_in_r(pen, s);
        h0fit.add(rq.a, h0);
        c18.add(rq.disc(), ep * fp);
      }
    }
    const bool ok = c3.pass() && c14.pass() && h0fit.pass() && c18.pass();
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + std::string("q=") + std::to_string(q) + ": class 3 x" + c3.str() +
              " (" + std::to_string(c3.points) + " pts" + (c3.pass() ? "" : ", MISMATCH") + "), class 14 x" +
              c14.str() + " (" + std::to_string(c14.points) + " pts" + (c14.pass() ? "" : ", MISMATCH") +
              "), class 18 h0 x" + h0fit.str() + (h0fit.pass() ? "" : " MISMATCH") + ", e*f x" + c18.str() +
              " (" + std::to_string(c18.points) + " pts" + (c18.pass() ? "" : ", MISMATCH") + ")";
  }
  return {pass, detail};
}

// ---- 6, 9

struct SweepStats {
  uint64_t pencils = 0;
  int64_t min_gamma = INT64_MAX, max_gamma = INT64_MIN;
  uint64_t violations = 0;
  uint64_t subcase_pencils = 0, subcase_violations = 0;
  std::string first_violation;
};

std::vector<DicksonClass> sweep_params(DicksonTag tag, const FieldCtx& f) {
  return sample_valid_params(tag, f, 100, 20240601);
}

void for_each_sweep_pencil(const std::function<void(uint32_t, const DicksonClass&, const FieldCtx&)>& fn) {
  for (uint32_t q : {25u, 29u, 31u}) {
    const Field f = field_of_order(q);
    for (DicksonTag tag : kTags) {
      std::vector<DicksonClass> classes = sweep_params(tag, *f);
      if (tag == DicksonTag::C18) {
        // every b^2 = 3c tuple as well, whether sampled or not
        std::set<std::string> seen;
        for (const auto& c : classes) seen.insert(c.params_str());
        for (const auto& c : valid_param_enumerator(tag, *f))
          if (c.params[0] * c.params[0] == (*f)(3) * c.params[1] && !seen.count(c.params_str())) classes.push_back(c);
      }
      for (const auto& cls : classes) fn(q, cls, *f);
    }
  }
}

Result pencil_bounds() {
  SweepStats st;
  std::map<std::string, size_t> per_class;
  for_each_sweep_pencil([&](uint32_t q, const DicksonClass& cls, const FieldCtx& f) {
    const PencilCensus c = pencil_census(cls, f, 3);
    ++st.pencils;
    per_class[to_string(cls.tag) + "@" + std::to_string(q)]++;
    const int64_t g = static_cast<int64_t>(c.gamma), qq = q;
    st.min_gamma = std::min(st.min_gamma, g - qq);
    st.max_gamma = std::max(st.max_gamma, g - qq);
    if (g < qq - 16 || g > qq + 5) {
      ++st.violations;
      if (st.first_violation.empty())
        st.first_violation = " first: class " + c.cls + " q=" + std::to_string(q) + " params " + c.params;
    }
    if (cls.tag == DicksonTag::C18 && cls.params[0] * cls.params[0] == f(3) * cls.params[1]) {
      ++st.subcase_pencils;
      if (g > qq + 1) ++st.subcase_violations;
    }
  });
  std::string counts;
  for (const auto& [k, v] : per_class) counts += (counts.empty() ? "" : " ") + k + ":" + std::to_string(v);
  return {st.violations == 0 && st.subcase_violations == 0,
          std::to_string(st.pencils) + " pencils (class@q:" + counts + "), gamma - q in [" + std::to_string(st.min_gamma) + ", " +
              std::to_string(st.max_gamma) + "], " + std::to_string(st.violations) + " violations; b^2 = 3c: " +
              std::to_string(st.subcase_pencils) + " pencils, " + std::to_string(st.subcase_violations) +
              " above q + 1" + st.first_violation};
}

Result nondegenerate_triangles() {
  uint64_t pairs = 0, found = 0;
  std::string first_miss;
  for_each_sweep_pencil([&](uint32_t q, const DicksonClass& cls, const FieldCtx& f) {
    if (q < 19) return;
    const auto members = nonsingular_members(dickson_generators(cls, f));
    for (const auto& a : members)
      for (const auto& b : members) {
        if (a.conic == b.conic || !ngon_condition(a.conic, b.conic, 3)) continue;
        ++pairs;
        if (find_nondegenerate_ngon(a.conic, b.conic, 3)) ++found;
        else if (first_miss.empty())
          first_miss = " first miss: class " + to_string(cls.tag) + " q=" + std::to_string(q) + " params " +
                       cls.params_str();
      }
  });
  return {pairs > 0 && found == pairs,
          std::to_string(found) + "/" + std::to_string(pairs) + " triangle pairs have a nondegenerate triangle" +
              first_miss};
}

// ---- 7

Result main_theorem() {
  const Field f7 = FieldCtx::make(7);
  const GlobalCensus ex = exhaustive_pair_census(*f7, 3, workers());
  const bool ex_ok = ex.lower <= ex.ratio && ex.ratio <= ex.upper;
  const Field f101 = FieldCtx::make(101);
  const GlobalCensus mc = monte_carlo_census(*f101, 3, 10'000'000, 7, workers());
  const double slack = 3 * mc.std_error;
  const bool mc_ok = mc.ratio >= mc.lower - slack && mc.ratio <= mc.upper + slack;
  return {ex_ok && mc_ok,
          "q=7 exhaustive " + std::to_string(ex.gamma_total) + "/" + std::to_string(ex.psi_total) +
              " = " + fmt(ex.ratio) + " in [" + fmt(ex.lower) + ", " + fmt(ex.upper) + "]" +
              (ex_ok ? "" : " VIOLATED") + "; q=101 MC ratio " + fmt(mc.ratio) + " +- " + fmt(mc.std_error, 2) +
              " in [" + fmt(mc.lower) + ", " + fmt(mc.upper) + "]" + (mc_ok ? "" : " VIOLATED")};
}

// ---- 8

Result porism() {
  uint64_t pairs = 0, chains = 0, mismatches = 0;
  std::string first;
  for (uint32_t q : {7u, 11u, 13u, 19u, 23u, 31u}) {
    const Field f = FieldCtx::make(q);
    for (const Pencil& pen : {dickson_generators(DicksonClass{DicksonTag::C3, {}}, *f), sample_pencil(*f)}) {
      const auto members = nonsingular_members(pen);
      for (const auto& ma : members)
        for (const auto& mb : members) {
          const Conic &a = ma.conic, &b = mb.conic;
          if (a == b || !is_transversal(a, b)) continue;
          ++pairs;
          const bool cond = ngon_condition(a, b, 3);
          for (const PPoint& p : conic_points(a)) {
            const size_t starts = tangents_from(p, b).size();
            for (size_t k = 0; k < starts; ++k) {
              const ChainOutcome out = trace_chain(p, k == 0 ? Branch::First : Branch::Second, a, b);
              if (out.kind == OutcomeKind::Degenerate) continue;
              ++chains;
              const bool closed3 = out.kind == OutcomeKind::Closed && out.n == 3;
              if (closed3 != cond) {
                ++mismatches;
                if (first.empty()) first = " first: q=" + std::to_string(q) + " A=" + a.str() + " B=" + b.str() + " P=" + p.str();
              }
            }
          }
        }
    }
  }
  return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(chains) + " chains, " +
                               std::to_string(mismatches) + " disagreements" + first};
}

// ---- 10

Result zphi_lemma() {
  uint64_t polys = 0, bad = 0;
  std::string range;
  for (auto [p, r] : odd_prime_powers(31)) {
    const Field f = FieldCtx::make(p, r);
    const uint64_t q = f->q();
    uint64_t lo = UINT64_MAX, hi = 0;
    for (const Fq& u0 : f->elements()) {
      if (u0.is_zero()) continue;
      for (const Fq& u1 : f->elements())
        for (const Fq& u2 : f->elements()) {
          if ((u1 * u1 - (*f)(4) * u0 * u2).is_zero()) continue;
          const uint64_t z = zphi_census(u0, u1, u2);
          ++polys;
          lo = std::min(lo, z);
          hi = std::max(hi, z);
          if (2 * z + 1 < q || 2 * z > q + 5) ++bad;
        }
    }
    range += " q=" + std::to_string(q) + ":[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  }
  return {bad == 0, std::to_string(polys) + " quadratics, " + std::to_string(bad) + " outside the bounds;" + range};
}

// ---- 11

Result tau_consistency() {
  const std::array<int, 10> want{0, 0, 0, 1, 3, 1, 4, 1, 6, 2};
  const std::vector<uint32_t> primes{199};
  const TauTable a = tau_table(primes, 3, 9, 20'000'000, 1, workers());
  const TauTable b = tau_table(primes, 3, 9, 20'000'000, 2, workers());
  const TauRow &ra = a.rows[0], &rb = b.rows[0];
  bool pass = true;
  std::string detail = "q=199 N=2e7:";
  for (int n = 3; n <= 9; ++n) {
    const long nearest = std::lround(ra.tau_hat[n]);
    const double diff = std::fabs(ra.tau_hat[n] - rb.tau_hat[n]);
    const double tol = 3 * std::hypot(ra.tau_stderr[n], rb.tau_stderr[n]);
    const bool ok = nearest == want[n] && diff <= tol;
    pass = pass && ok;
    detail += " n=" + std::to_string(n) + ": " + fmt(ra.tau_hat[n]) + "/" + fmt(rb.tau_hat[n]) + " (want " +
              std::to_string(want[n]) + ", C_alpha " + fmt(ra.pencil_tau[n]) + ", overlap " +
              std::to_string(ra.overlap[n]) + ")" + (ok ? "" : " X");
  }
  return {pass, detail};
}

// ---- 12

Result char3() {
  const Field f81 = FieldCtx::make(3, 4);
  const Char3Report r81 = char3_experiment(*f81);
  const Field f27 = FieldCtx::make(3, 3);
  const Char3Report r27 = char3_experiment(*f27);
  const bool ratio_ok = r81.rel_error <= 0.20;
  const bool pass = ratio_ok && r81.delta_always_square;
  return {pass, "q=81: ratio " + fmt(r81.ratio) + " vs 2/q = " + fmt(r81.target) + " (rel. error " +
                    fmt(r81.rel_error, 3) + (ratio_ok ? "" : " > 0.20") + "), gamma " +
                    std::to_string(r81.census.gamma) + "/" + std::to_string(r81.census.psi) +
                    ", A = B members satisfying the triangle condition " + std::to_string(r81.diagonal_roots) +
                    ", delta square for every s: " + (r81.delta_always_square ? "yes" : "no") +
                    "; q=27: ratio " + fmt(r27.ratio) + " vs " + fmt(r27.target)};
}

// ---- 13

Result infrastructure() {
  std::vector<std::string> failed;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };

  const Field f5 = FieldCtx::make(5);
  const GlobalCensus e1 = exhaustive_pair_census(*f5, 3, 1), e4 = exhaustive_pair_census(*f5, 3, 4);
  need(e1.psi_total == e4.psi_total && e1.gamma_total == e4.gamma_total, "exhaustive worker independence");
  const Field f31 = FieldCtx::make(31);
  const McTally t1 = monte_carlo_tally(*f31, 300000, 5, 1), t4 = monte_carlo_tally(*f31, 300000, 5, 4);
  need(t1.psi == t4.psi && t1.gamma == t4.gamma && t1.both == t4.both, "Monte-Carlo worker independence");
  need(to_json(census_from_tally(*f31, t1, 5, 5, 1)) == to_json(monte_carlo_census(*f31, 5, 300000, 5, 1)),
       "identical seeds, identical report");
  need(to_csv(tau_table({13}, 3, 9, 100000, 3, 2)) == to_csv(tau_table({13}, 3, 9, 100000, 3, 2)),
       "identical tau tables");

  uint64_t fields = 0;
  for (auto [p, r] : odd_prime_powers(49)) {
    const Field f = FieldCtx::make(p, r);
    const FieldCtx& F = *f;
    ++fields;
    const std::string at = " q=" + std::to_string(F.q());
    bool mult = true;
    for (const Fq& a : F.elements())
      for (const Fq& b : F.elements())
        if ((a * b).legendre() != a.legendre() * b.legendre()) mult = false;
    need(mult, "Legendre multiplicativity" + at);

    StreamRng rng(13, F.q());
    bool square = true;
    for (int k = 0; k < 500; ++k) {
      CharCubic d{draw(F, rng), draw(F, rng), draw(F, rng), draw(F, rng)};
      if (d.c0.is_zero()) continue;
      const auto sq = oracle::square_series(F, sqrt_series(d).h);
      const Fq ic0 = d.c0.inv();
      square = square && sq[0].is_one() && sq[1] == d.c1 * ic0 && sq[2] == d.c2 * ic0 && sq[3] == d.c3 * ic0;
      for (int i = 4; i <= 8; ++i) square = square && sq[i].is_zero();
    }
    need(square, "series self-square" + at);

    bool duality = true, points = true;
    const auto plane = oracle::plane_points(F);
    for (int k = 0; k < 20; ++k) {
      SymMat m;
      do {
        for (auto& x : m.e) x = draw(F, rng);
      } while (det(m).is_zero());
      const Conic c(m);
      const auto pts = conic_points(c);
      points = points && pts.size() == F.q() + 1;
      if (k < 2) points = points && pts == oracle::conic_points_scan(c);
      for (int j = 0; j < 200; ++j) {
        const PPoint& u = plane[rng.below(plane.size())];
        const PPoint& v = plane[rng.below(plane.size())];
        duality = duality && incident(u, polar_line(v, c)) == incident(v, polar_line(u, c));
      }
    }
    need(duality, "polarity duality" + at);
    need(points, "q+1 conic points" + at);
  }
  std::string detail = "worker counts 1/4, seed replay, property suites over " + std::to_string(fields) +
                       " fields q <= 49";
  if (!failed.empty()) {
    detail += "; failed:";
    for (const auto& s : failed) detail += " [" + s + "]";
  }
  return {failed.empty(), detail};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "worked example replay", worked_example},
      {2, "class-3 triangle count q - 5", claim_one},
      {3, "size of S", claim_two},
      {4, "closed-form zero sets", closed_forms},
      {5, "delta factorizations", delta_factorizations},
      {6, "per-pencil bounds", pencil_bounds},
      {7, "global ratio bounds", main_theorem},
      {8, "Cayley vs chain closure", porism},
      {9, "nondegenerate triangles", nondegenerate_triangles},
      {10, "Z_phi bounds", zphi_lemma},
      {11, "tau table", tau_consistency},
      {12, "characteristic 3", char3},
      {13, "infrastructure invariants", infrastructure},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-13)")->check(CLI::Range(1, 13));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << ": " << r.detail << " ("
              << fmt(secs, 3) << " s)" << std::endl;
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
