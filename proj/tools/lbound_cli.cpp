// lbound: sweeps, single-modulus inspection, figure data, lemma checks, counts.
//
// Exit status: 0 success, 1 usage or I/O error, 2 theorem exception,
// unresolved indeterminate, failed lemma check, or internal error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <lbound/bounds.hpp>
#include <lbound/lemmas.hpp>
#include <lbound/sweep.hpp>

namespace {

using namespace lbound;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kException = 2;

void print_maximum(const char* label, const ParityMaximum& m) {
  if (!m.found) {
    std::printf("%s maximum: none\n", label);
    return;
  }
  std::printf("%s maximum: q=%llu index=%llu excess=%.10f +/- %.2e\n", label, static_cast<unsigned long long>(m.q),
              static_cast<unsigned long long>(m.index), m.excess.mid(), m.excess.rad());
}

int run_sweep(const SweepOptions& opt) {
  const SweepSummary s = sweep(opt);
  std::printf("range: [%llu, %llu] %s\n", static_cast<unsigned long long>(s.qmin),
              static_cast<unsigned long long>(s.qmax),
              s.restriction == Restriction::all ? "all q" : "3 | q");
  std::printf("conductors: %llu\n", static_cast<unsigned long long>(s.conductors));
  std::printf("characters: %llu\n", static_cast<unsigned long long>(s.characters));
  print_maximum("even", s.even_max);
  print_maximum("odd", s.odd_max);
  for (const auto& r : s.exceptions) std::printf("exception: %s\n", format_row(r).c_str());
  std::printf("exceptions: %zu\n", s.exceptions.size());
  std::printf("wall time: %.2fs\n", s.wall_seconds);
  return s.verified() ? kOk : kException;
}

void print_record(const UnitGroup& g, const LValueRecord& r) {
  const Character chi = make_character(g, r.index);
  const BoundReport rep = check_theorem(r);
  std::printf(
      "q=%llu index=%llu parity=%s conductor=%llu L=%.15f%+.15fi rad=%.2e |L|=%.15f +/- %.2e excess=%.12f "
      "bound=%.12f margin=%.12f verdict=%s\n",
      static_cast<unsigned long long>(r.q), static_cast<unsigned long long>(r.index), to_string(r.parity),
      static_cast<unsigned long long>(chi.conductor), r.L.re.mid(), r.L.im.mid(), std::max(r.L.re.rad(), r.L.im.rad()),
      r.absL.mid(), r.absL.rad(), r.excess.mid(), rep.bound.mid(), rep.margin.mid(), to_string(rep.verdict));
}

int run_lvalue(u64 q, long long index, double tol) {
  if (q < 3) throw CLI::ValidationError("--q", "q must be at least 3");
  const UnitGroup g(q);
  if (index >= 0) {
    const Character chi = make_character(g, static_cast<u64>(index));  // throws out_of_range
    if (!chi.primitive) {
      std::printf("character %lld mod %llu is not primitive (conductor %llu)\n", index,
                  static_cast<unsigned long long>(q), static_cast<unsigned long long>(chi.conductor));
      return kOk;
    }
  }
  const auto recs = l_values(q, tol);
  if (recs.empty()) {
    std::printf("no primitive characters\n");
    return kOk;
  }
  for (const auto& r : recs)
    if (index < 0 || r.index == static_cast<u64>(index)) print_record(g, r);
  return kOk;
}

int run_check_lemmas(int grid, unsigned threads) {
  bool ok = true;
  for (const auto& c : run_lemma_suite(grid, threads)) {
    std::printf("%s %-18s points=%zu worst=%.6e +/- %.2e at %g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.points,
                c.worst.mid(), c.worst.rad(), c.worst_at);
    ok &= c.pass;
  }
  return ok ? kOk : kException;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit bounds for |L(1, chi)|: sweeps and checks"};
  app.require_subcommand(1);

  SweepOptions sweep_opt;
  sweep_opt.threads = default_threads();
  bool all_q = false;
  bool fresh = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "check every primitive character for q in a range");
  sweep_cmd->add_option("--qmin", sweep_opt.qmin, "smallest modulus")->required()->check(CLI::Range(3ULL, 1ULL << 40));
  sweep_cmd->add_option("--qmax", sweep_opt.qmax, "largest modulus")->required()->check(CLI::Range(3ULL, 1ULL << 40));
  sweep_cmd->add_flag("--all-q", all_q, "include moduli not divisible by 3");
  sweep_cmd->add_option("--tol", sweep_opt.tolerance, "required radius of each L-value")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep_opt.threads, "worker threads (default: LBOUND_THREADS or all cores)")
      ->check(CLI::Range(1U, 4096U));
  sweep_cmd->add_option("--out", sweep_opt.out_path, "row file")->required();
  sweep_cmd->add_flag("--fresh", fresh, "overwrite the row file instead of resuming it");

  u64 lq = 0;
  long long lindex = -1;
  double ltol = kDefaultTolerance;
  auto* lvalue_cmd = app.add_subcommand("lvalue", "print L(1, chi) for the primitive characters mod q");
  lvalue_cmd->add_option("--q", lq, "modulus")->required();
  lvalue_cmd->add_option("--index", lindex, "character index")->check(CLI::NonNegativeNumber);
  lvalue_cmd->add_option("--tol", ltol, "required radius")->check(CLI::PositiveNumber);

  std::string fig_in, fig_out, fig_parity;
  auto* fig_cmd = app.add_subcommand("figure-data", "two-column q / maximum excess data for one parity");
  fig_cmd->add_option("--in", fig_in, "row file")->required();
  fig_cmd->add_option("--parity", fig_parity, "even or odd")->required()->check(CLI::IsMember({"even", "odd"}));
  fig_cmd->add_option("--out", fig_out, "output file")->required();

  int grid = 100;
  unsigned lemma_threads = default_threads();
  auto* lemma_cmd = app.add_subcommand("check-lemmas", "numerical checks of the supporting identities and bounds");
  lemma_cmd->add_option("--grid", grid, "grid denominator")->check(CLI::Range(2, 100000));
  lemma_cmd->add_option("--threads", lemma_threads, "worker threads")->check(CLI::Range(1U, 4096U));

  u64 count_qmax = 0;
  bool count_all = false;
  auto* count_cmd = app.add_subcommand("count", "number of primitive characters with modulus up to qmax");
  count_cmd->add_option("--qmax", count_qmax, "largest modulus")->required();
  count_cmd->add_flag("--all-q", count_all, "include moduli not divisible by 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep_cmd) {
      if (sweep_opt.qmin > sweep_opt.qmax) throw CLI::ValidationError("--qmin", "qmin must not exceed qmax");
      sweep_opt.restriction = all_q ? Restriction::all : Restriction::multiple_of_3;
      sweep_opt.resume = !fresh;
      return run_sweep(sweep_opt);
    }
    if (*lvalue_cmd) return run_lvalue(lq, lindex, ltol);
    if (*fig_cmd) {
      emit_figure_data(read_rows(fig_in), fig_parity == "even" ? Parity::even : Parity::odd, fig_out);
      return kOk;
    }
    if (*lemma_cmd) return run_check_lemmas(grid, lemma_threads);
    if (*count_cmd) {
      std::printf("%llu\n", static_cast<unsigned long long>(
                                 count_primitive(count_qmax, count_all ? Restriction::all : Restriction::multiple_of_3)));
      return kOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    // Row-file problems surface as runtime_error from the sweep module.
    std::cerr << "error: " << e.what() << '\n';
    return dynamic_cast<const ToleranceError*>(&e) ? kException : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kException;
  }
  return kOk;
}
