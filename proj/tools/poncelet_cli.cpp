// poncelet: closure checks and censuses for pairs of conics over F_q.
#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "poncelet/census.hpp"
#include "poncelet/chain.hpp"

using namespace poncelet;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int64_t> parse_ints(const std::string& s) {
  std::vector<int64_t> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    size_t used = 0;
    int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: " + tok);
    }
    if (used != tok.size()) throw UsageError("not an integer: " + tok);
    out.push_back(v);
  }
  return out;
}

std::vector<int64_t> split_ints(std::string s) {
  for (char& c : s)
    if (c == ';') c = ',';
  return parse_ints(s);
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

int cmd_verify_example() {
  const WorkedExample ex = verify_worked_example();
  for (const auto& a : ex.assertions)
    std::cout << (a.pass ? "PASS " : "FAIL ") << a.name << ": " << a.detail << "\n";
  std::cout << ex.trace;
  return ex.all_pass() ? kPass : kFail;
}

struct PencilArgs {
  std::string cls;
  uint32_t p = 0, r = 1;
  int n = 3;
  std::string params;
  bool sweep = false;
  size_t sample = 0;
  uint64_t seed = 1;
  std::string out = "-";
  std::string format = "csv";
};

int cmd_pencil_census(const PencilArgs& a) {
  const Field f = FieldCtx::make(a.p, a.r);
  const DicksonTag tag = parse_dickson_tag(a.cls);
  std::vector<DicksonClass> classes;
  if (!a.params.empty()) {
    DicksonClass c{tag, {}};
    for (int64_t v : split_ints(a.params)) c.params.push_back((*f)(v));
    classes.push_back(c);
  } else if (a.sweep) {
    classes = valid_param_enumerator(tag, *f);
  } else if (a.sample > 0) {
    classes = sample_valid_params(tag, *f, a.sample, a.seed);
  } else if (tag == DicksonTag::C3) {
    classes.push_back({tag, {}});
  } else {
    throw UsageError("class " + a.cls + " needs --params, --sweep or --sample");
  }
  std::vector<PencilCensus> rows;
  for (const auto& c : classes) rows.push_back(pencil_census(c, *f, a.n));

  std::string text;
  if (a.format == "json") {
    text = to_json(rows);
  } else {
    text = pencil_csv_header() + "\n";
    for (const auto& r : rows) text += to_csv_row(r) + "\n";
  }
  report_write(text, a.out);

  bool ok = true;
  for (const auto& r : rows) {
    if (r.psi != r.sigma * (r.sigma - 1) || r.gamma > r.psi) ok = false;
    if (r.n == 3) {
      const int64_t q = r.q, g = static_cast<int64_t>(r.gamma);
      if (g < q - 16 || g > q + 5) {
        std::cerr << "bound violated: class " << r.cls << " params " << r.params << " gamma " << g << "\n";
        ok = false;
      }
    }
  }
  return ok ? kPass : kFail;
}

struct PairArgs {
  uint32_t p = 0, r = 1;
  int n = 3;
  bool exhaustive = false;
  uint64_t mc = 0;
  uint64_t seed = 1;
  unsigned workers = 0;
  std::string out = "-";
  std::string format = "json";
};

int cmd_pair_census(const PairArgs& a) {
  if (a.exhaustive == (a.mc > 0)) throw UsageError("give exactly one of --exhaustive, --mc");
  const Field f = FieldCtx::make(a.p, a.r);
  const unsigned workers = a.workers ? a.workers : default_workers();
  const GlobalCensus g = a.exhaustive ? exhaustive_pair_census(*f, a.n, workers)
                                      : monte_carlo_census(*f, a.n, a.mc, a.seed, workers);
  report_write(a.format == "csv" ? to_csv(g) : to_json(g), a.out);
  if (g.n != 3) return kPass;
  const double slack = a.exhaustive ? 0.0 : 3 * g.std_error;
  return g.ratio >= g.lower - slack && g.ratio <= g.upper + slack ? kPass : kFail;
}

struct TauArgs {
  std::string p_list;
  int n_min = 3, n_max = 9;
  uint64_t mc = 0;
  uint64_t seed = 1;
  unsigned workers = 0;
  std::string out = "-";
  std::string format = "csv";
};

int cmd_tau_table(const TauArgs& a) {
  std::vector<uint32_t> primes;
  for (int64_t v : split_ints(a.p_list)) {
    if (v < 3) throw UsageError("bad prime in --p-list");
    primes.push_back(static_cast<uint32_t>(v));
  }
  if (primes.empty()) throw UsageError("--p-list is empty");
  const TauTable t =
      tau_table(primes, a.n_min, a.n_max, a.mc, a.seed, a.workers ? a.workers : default_workers());
  report_write(a.format == "json" ? to_json(t) : to_csv(t), a.out);
  return kPass;
}

struct TraceArgs {
  uint32_t p = 0, r = 1;
  std::string cls = "3";
  int64_t a = 0, b = 0;
  std::string start;
  int branch = 1;
};

int cmd_trace(const TraceArgs& t) {
  if (t.cls != "3") throw UsageError("trace supports --class 3 (the C_alpha pencil) only");
  const Field f = FieldCtx::make(t.p, t.r);
  const Conic a = c_alpha((*f)(t.a));
  const Conic b = c_alpha((*f)(t.b));
  if (!a.nonsingular() || !b.nonsingular()) throw UsageError("A and B must be nonsingular");
  const auto xyz = split_ints(t.start);
  if (xyz.size() != 3) throw UsageError("--start needs x,y,z");
  const PPoint p1 = PPoint::of(*f, xyz[0], xyz[1], xyz[2]);
  if (!on_conic(p1, a)) throw UsageError("start point " + p1.str() + " is not on A");
  const ChainOutcome out = trace_chain(p1, t.branch == 2 ? Branch::Second : Branch::First, a, b);
  std::cout << format_trace(out);
  return kPass;
}

int cmd_char3(uint32_t q) {
  uint32_t r = 0;
  for (uint32_t x = q; x > 1 && x % 3 == 0; x /= 3) ++r;
  uint32_t check = 1;
  for (uint32_t i = 0; i < r; ++i) check *= 3;
  if (check != q || r < 1) throw UsageError("--q must be a power of 3");
  const Field f = FieldCtx::make(3, r);
  const Char3Report rep = char3_experiment(*f);
  std::cout << to_json(rep);
  const double tol = q >= 81 ? 0.20 : 0.35;
  return rep.rel_error <= tol && rep.delta_always_square ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poncelet closure over finite fields"};
  app.require_subcommand(1);

  app.add_subcommand("verify-example", "Replay the q = 43 worked example");

  PencilArgs pa;
  auto* pc = app.add_subcommand("pencil-census", "Counts over one eligible pencil");
  pc->add_option("--class", pa.cls, "3, 14, 16, 18 or 19")->required();
  pc->add_option("--p", pa.p)->required();
  pc->add_option("--r", pa.r);
  pc->add_option("--n", pa.n)->required()->check(CLI::Range(3, 9));
  auto* params_opt = pc->add_option("--params", pa.params, "comma separated parameters");
  auto* sweep_opt = pc->add_flag("--sweep", pa.sweep, "all valid parameters");
  auto* sample_opt = pc->add_option("--sample", pa.sample, "K seeded parameter tuples");
  pc->add_option("--seed", pa.seed);
  pc->add_option("--out", pa.out);
  pc->add_option("--format", pa.format)->check(CLI::IsMember({"csv", "json"}));
  params_opt->excludes(sweep_opt)->excludes(sample_opt);
  sweep_opt->excludes(sample_opt);

  PairArgs pr;
  auto* pair = app.add_subcommand("pair-census", "Counts over all pairs of conics");
  pair->add_option("--p", pr.p)->required();
  pair->add_option("--r", pr.r);
  pair->add_option("--n", pr.n)->required()->check(CLI::Range(3, 9));
  pair->add_flag("--exhaustive", pr.exhaustive);
  pair->add_option("--mc", pr.mc, "Monte-Carlo sample count");
  pair->add_option("--seed", pr.seed);
  pair->add_option("--workers", pr.workers);
  pair->add_option("--out", pr.out);
  pair->add_option("--format", pr.format)->check(CLI::IsMember({"csv", "json"}));

  TauArgs ta;
  auto* tau = app.add_subcommand("tau-table", "Monte-Carlo estimates of q * ratio");
  tau->add_option("--p-list", ta.p_list)->required();
  tau->add_option("--n-min", ta.n_min)->check(CLI::Range(3, 9));
  tau->add_option("--n-max", ta.n_max)->check(CLI::Range(3, 9));
  tau->add_option("--mc", ta.mc)->required();
  tau->add_option("--seed", ta.seed);
  tau->add_option("--workers", ta.workers);
  tau->add_option("--out", ta.out);
  tau->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "json"}));

  TraceArgs tr;
  auto* trace = app.add_subcommand("trace", "Print a chain starting at a point of A");
  trace->add_option("--p", tr.p)->required();
  trace->add_option("--r", tr.r);
  trace->add_option("--class", tr.cls);
  trace->add_option("--A", tr.a, "A = C_r")->required();
  trace->add_option("--B", tr.b, "B = C_s")->required();
  trace->add_option("--start", tr.start, "x,y,z")->required();
  trace->add_option("--branch", tr.branch)->check(CLI::IsMember({1, 2}));

  uint32_t char3_q = 0;
  auto* c3 = app.add_subcommand("char3", "Triangle census on C_alpha in characteristic 3");
  c3->add_option("--q", char3_q)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (app.got_subcommand("verify-example")) return cmd_verify_example();
    if (app.got_subcommand(pc)) return cmd_pencil_census(pa);
    if (app.got_subcommand(pair)) return cmd_pair_census(pr);
    if (app.got_subcommand(tau)) return cmd_tau_table(ta);
    if (app.got_subcommand(trace)) return cmd_trace(tr);
    if (app.got_subcommand(c3)) return cmd_char3(char3_q);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
