#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "poncelet/cayley.hpp"
#include "poncelet/pencil.hpp"

namespace poncelet {

/// Counts over ordered pairs of distinct nonsingular members of one pencil.
struct PencilCensus {
  std::string cls;     // "3", "14", ...
  std::string params;  // "a;b" or ""
  uint32_t q = 0;
  int n = 3;
  uint64_t sigma = 0;
  uint64_t psi = 0;    // sigma (sigma - 1)
  uint64_t gamma = 0;  // pairs satisfying the n-gon condition
  /// Finite nonsingular s where the r-discriminant of the triangle condition
  /// vanishes (single r-root). Only computed for n = 3.
  uint64_t roots_of_f = 0;
  double ratio() const { return psi ? static_cast<double>(gamma) / static_cast<double>(psi) : 0.0; }
};

/// Requires p >= 5 and valid params.
PencilCensus pencil_census(const DicksonClass& cls, const FieldCtx& f, int n);
/// Any pencil whose distinct nonsingular members are transversal.
PencilCensus pencil_census(const Pencil& pencil, const std::string& cls, const std::string& params,
                           int n);
/// gamma for every n in 3..9 at once (index n), over the same member pairs.
std::array<uint64_t, 10> pencil_census_all(const Pencil& pencil, uint64_t* psi_out = nullptr);

/// #{s not in {0,1} : s^2 - s + 1 is a nonzero square}. Requires q prime >= 7.
uint64_t s_set_size(const FieldCtx& f);
/// The value the closed form predicts from legendre(-3).
uint64_t s_set_size_formula(const FieldCtx& f);

/// #{s in F_q : u0 s^2 + u1 s + u2 is a square (zero included)}.
/// Throws std::invalid_argument for u0 = 0 or vanishing discriminant.
uint64_t zphi_census(const Fq& u0, const Fq& u1, const Fq& u2);

enum class CensusMode { Exhaustive, MonteCarlo };
std::string to_string(CensusMode mode);

struct GlobalCensus {
  uint32_t q = 0, p = 0, r = 1;
  int n = 3;
  uint64_t psi_total = 0;    // transversal ordered pairs
  uint64_t gamma_total = 0;  // of which satisfy the n-gon condition
  double ratio = 0;
  double lower = 0;  // (q-16) / (q(q+1))
  double upper = 0;  // (q+5) / ((q-2)(q-3))
  CensusMode mode = CensusMode::Exhaustive;
  uint64_t samples = 0;  // pairs of nonsingular conics examined
  uint64_t seed = 0;
  double std_error = 0;  // binomial, of ratio (Monte-Carlo only)
  double tau_hat = 0;    // q * ratio
  double tau_stderr = 0;
  unsigned workers = 1;
};

double theorem_lower(uint32_t q);
double theorem_upper(uint32_t q);

constexpr uint64_t kShardSize = 65536;

struct RunConfig {
  uint32_t p = 7, r = 1;
  int n_min = 3, n_max = 3;
  std::string cls = "3";
  size_t param_budget = 100;
  uint64_t samples = 0;
  uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
  std::string format = "csv";
};

/// All ordered pairs of distinct nonsingular conics. Throws std::invalid_argument for q > 9.
GlobalCensus exhaustive_pair_census(const FieldCtx& f, int n, unsigned workers = 1);

/// Per-n tallies from one Monte-Carlo stream.
struct McTally {
  uint64_t samples = 0;
  uint64_t psi = 0;
  std::array<uint64_t, 10> gamma{};
  /// both[n][m]: pairs satisfying the n- and the m-condition.
  std::array<std::array<uint64_t, 10>, 10> both{};
  void merge(const McTally& o);
};

/// N uniform pairs of nonsingular symmetric matrices, shard k drawn from
/// StreamRng(seed, k). Independent of the worker count.
McTally monte_carlo_tally(const FieldCtx& f, uint64_t samples, uint64_t seed, unsigned workers = 1);
GlobalCensus census_from_tally(const FieldCtx& f, const McTally& t, int n, uint64_t seed,
                               unsigned workers);
GlobalCensus monte_carlo_census(const FieldCtx& f, int n, uint64_t samples, uint64_t seed,
                                unsigned workers = 1);

struct TauRow {
  uint32_t q = 0;
  std::array<double, 10> tau_hat{};
  std::array<double, 10> tau_stderr{};
  std::array<uint64_t, 10> gamma{};
  /// pairs also satisfying the m-condition for some proper divisor m >= 3 of n
  std::array<uint64_t, 10> overlap{};
  uint64_t psi = 0;
  uint64_t samples = 0;
  /// q * gamma / psi over the C_alpha pencil (exhaustive), for comparison
  std::array<double, 10> pencil_tau{};
};

struct TauTable {
  int n_min = 3, n_max = 9;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::vector<TauRow> rows;
};

TauTable tau_table(const std::vector<uint32_t>& primes, int n_min, int n_max, uint64_t samples,
                   uint64_t seed, unsigned workers = 1);

struct Char3Report {
  PencilCensus census;  // C_alpha pencil, n = 3
  double ratio = 0;
  double target = 0;     // 2 / q
  double rel_error = 0;  // |ratio - target| / target
  /// members C_r (r not in {0,1}) where the triangle numerator vanishes at A = B
  uint64_t diagonal_roots = 0;
  bool delta_always_square = false;
  bool f_is_shifted_square = false;  // s^2 - s + 1 = (s+1)^2 for every s
};

/// Requires p = 3.
Char3Report char3_experiment(const FieldCtx& f);

struct ExampleAssertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct WorkedExample {
  std::vector<ExampleAssertion> assertions;
  std::string trace;
  bool all_pass() const;
};

/// Replays the q = 43 example with A = C_a, B = C_b.
WorkedExample verify_worked_example(int a = 11, int b = 36);

// Reports
std::string pencil_csv_header();
std::string to_csv_row(const PencilCensus& c);
std::string to_json(const PencilCensus& c);
std::string to_json(const std::vector<PencilCensus>& rows);
std::string to_csv(const GlobalCensus& g);
std::string to_json(const GlobalCensus& g);
std::string to_csv(const TauTable& t);
std::string to_json(const TauTable& t);
std::string to_json(const Char3Report& c);

/// Writes text to path ("-" for stdout). Throws std::runtime_error on I/O failure.
void report_write(const std::string& text, const std::string& path);

}  // namespace poncelet
