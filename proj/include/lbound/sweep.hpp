#pragma once

// Conductor sweeps: every primitive character mod q for q in a range, checked
// against the uniform constants, one output row per (q, parity).
//
// Conductors are independent, so workers pull them from a shared counter and
// a single ordered writer emits rows in increasing q. The row file therefore
// does not depend on the thread count, and an interrupted file can be resumed.

#include <atomic>
#include <charconv>
#include <cmath>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "batch.hpp"
#include "bounds.hpp"
#include "characters.hpp"

namespace lbound {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr const char* kRowHeader =
    "q,parity,characters,max_excess_mid,max_excess_rad,argmax_index,argmax_ambiguous,bound_constant,margin_mid,"
    "margin_rad,verdict";

struct SweepRow {
  u64 q = 0;
  Parity parity = Parity::even;
  u64 characters = 0;  // primitive characters of this parity
  double max_excess_mid = 0;
  double max_excess_rad = 0;
  u64 argmax_index = 0;
  bool argmax_ambiguous = false;
  double bound_constant = 0;
  double margin_mid = 0;  // smallest margin over the characters of this parity
  double margin_rad = 0;
  Verdict verdict = Verdict::indeterminate;

  bool operator==(const SweepRow&) const = default;
};

struct ParityMaximum {
  bool found = false;
  u64 q = 0;
  u64 index = 0;
  Ball excess;
};

struct SweepSummary {
  u64 qmin = 0;
  u64 qmax = 0;
  Restriction restriction = Restriction::multiple_of_3;
  ParityMaximum even_max;
  ParityMaximum odd_max;
  std::vector<SweepRow> exceptions;  // rows whose verdict is not pass, where the theorem applies
  u64 conductors = 0;                // conductors with at least one primitive character
  u64 characters = 0;
  double wall_seconds = 0;
  std::vector<SweepRow> rows;

  bool verified() const { return exceptions.empty(); }
};

struct SweepOptions {
  u64 qmin = 3;
  u64 qmax = 3;
  Restriction restriction = Restriction::multiple_of_3;
  double tolerance = kDefaultTolerance;
  unsigned threads = 1;
  std::string out_path;  // empty: keep rows in memory only
  bool resume = true;    // continue an existing row file instead of overwriting
};

// Thread count from LBOUND_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("LBOUND_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Per-conductor evaluation.

namespace detail {

inline std::vector<SweepRow> rows_from_records(u64 q, const std::vector<LValueRecord>& recs) {
  std::vector<SweepRow> rows;
  if (recs.empty()) return rows;
  const UnitGroup g(q);
  for (Parity parity : {Parity::even, Parity::odd}) {
    std::vector<const LValueRecord*> sel;
    for (const auto& r : recs)
      if (r.parity == parity) sel.push_back(&r);
    if (sel.empty()) continue;

    SweepRow row;
    row.q = q;
    row.parity = parity;
    row.characters = sel.size();

    // Largest midpoint; then the smallest index among the balls overlapping it.
    const LValueRecord* top = sel.front();
    for (const auto* r : sel)
      if (r->excess.mid() > top->excess.mid()) top = r;
    const LValueRecord* win = top;
    for (const auto* r : sel)
      if (r->excess.overlaps(top->excess) && r->index < win->index) win = r;
    const u64 partner = conjugate_index(g, win->index);
    for (const auto* r : sel)
      if (r != win && r->index != partner && r->excess.overlaps(win->excess)) row.argmax_ambiguous = true;
    row.argmax_index = win->index;
    row.max_excess_mid = win->excess.mid();
    row.max_excess_rad = win->excess.rad();

    const Ball constant = bound_constant(q, parity, ConstantChoice::theorem);
    row.bound_constant = constant.mid();
    bool any_fail = false;
    bool any_open = false;
    std::optional<Ball> worst;
    for (const auto* r : sel) {
      const BoundReport rep = check_theorem(*r);
      any_fail |= rep.verdict == Verdict::fail;
      any_open |= rep.verdict == Verdict::indeterminate;
      if (!worst || rep.margin.lower() < worst->lower()) worst = rep.margin;
    }
    row.margin_mid = worst->mid();
    row.margin_rad = worst->rad();
    row.verdict = any_fail ? Verdict::fail : any_open ? Verdict::indeterminate : Verdict::pass;
    rows.push_back(row);
  }
  return rows;
}

// Rows for one conductor that has primitive characters. One retry at
// tol/100 if anything is indeterminate; a tolerance that cannot be reached
// leaves the affected rows indeterminate.
inline std::vector<SweepRow> evaluate_conductor(u64 q, double tol) {
  std::vector<SweepRow> rows;
  bool open = true;
  try {
    rows = rows_from_records(q, l_values(q, tol));
    open = false;
    for (const auto& r : rows) open |= r.verdict == Verdict::indeterminate;
  } catch (const ToleranceError&) {
  }
  if (!open) return rows;
  try {
    return rows_from_records(q, l_values(q, tol / 100.0));
  } catch (const ToleranceError&) {
  }
  if (!rows.empty()) return rows;
  // No usable values at all: report both parities as unresolved.
  const UnitGroup g(q);
  u64 counts[2] = {0, 0};
  for (u64 i = 0; i < g.phi(); ++i) {
    const Character chi = make_character(g, i);
    if (chi.primitive) ++counts[chi.parity == Parity::odd];
  }
  for (Parity p : {Parity::even, Parity::odd}) {
    if (counts[p == Parity::odd] == 0) continue;
    SweepRow r;
    r.q = q;
    r.parity = p;
    r.characters = counts[p == Parity::odd];
    r.bound_constant = p == Parity::even ? kTheoremEven : kTheoremOdd;
    r.max_excess_mid = r.margin_mid = std::nan("");
    r.verdict = Verdict::indeterminate;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Row file format.

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_row(const SweepRow& r) {
  std::string s = std::to_string(r.q);
  s += ',';
  s += to_string(r.parity);
  s += ',' + std::to_string(r.characters);
  s += ',' + format_double(r.max_excess_mid);
  s += ',' + format_double(r.max_excess_rad);
  s += ',' + std::to_string(r.argmax_index);
  s += r.argmax_ambiguous ? ",1" : ",0";
  s += ',' + format_double(r.bound_constant);
  s += ',' + format_double(r.margin_mid);
  s += ',' + format_double(r.margin_rad);
  s += ',';
  s += to_string(r.verdict);
  return s;
}

namespace detail {

inline double parse_double(const std::string& f) {
  if (f == "nan") return std::nan("");
  double v = 0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec != std::errc() || res.ptr != f.data() + f.size()) throw std::runtime_error("bad number '" + f + "'");
  return v;
}

inline u64 parse_u64(const std::string& f) {
  u64 v = 0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (res.ec != std::errc() || res.ptr != f.data() + f.size()) throw std::runtime_error("bad integer '" + f + "'");
  return v;
}

}  // namespace detail

inline SweepRow parse_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, ',');) f.push_back(item);
  if (f.size() != 11) throw std::runtime_error("row has " + std::to_string(f.size()) + " fields: " + line);
  SweepRow r;
  r.q = detail::parse_u64(f[0]);
  if (f[1] == "even") r.parity = Parity::even;
  else if (f[1] == "odd") r.parity = Parity::odd;
  else throw std::runtime_error("bad parity '" + f[1] + "'");
  r.characters = detail::parse_u64(f[2]);
  r.max_excess_mid = detail::parse_double(f[3]);
  r.max_excess_rad = detail::parse_double(f[4]);
  r.argmax_index = detail::parse_u64(f[5]);
  r.argmax_ambiguous = f[6] == "1";
  r.bound_constant = detail::parse_double(f[7]);
  r.margin_mid = detail::parse_double(f[8]);
  r.margin_rad = detail::parse_double(f[9]);
  if (f[10] == "pass") r.verdict = Verdict::pass;
  else if (f[10] == "fail") r.verdict = Verdict::fail;
  else if (f[10] == "indeterminate") r.verdict = Verdict::indeterminate;
  else throw std::runtime_error("bad verdict '" + f[10] + "'");
  return r;
}

// Complete rows of a row file (a trailing partial line is ignored).
inline std::vector<SweepRow> read_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<SweepRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) break;
    const std::string line = data.substr(pos, nl - pos);
    pos = nl + 1;
    if (header) {
      if (line != kRowHeader) throw std::runtime_error(path + ": unexpected header");
      header = false;
      continue;
    }
    rows.push_back(parse_row(line));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Summary.

inline void accumulate(SweepSummary& s, const SweepRow& r) {
  s.rows.push_back(r);
  s.characters += r.characters;
  if (s.rows.size() == 1 || s.rows[s.rows.size() - 2].q != r.q) ++s.conductors;
  if (r.verdict != Verdict::pass && r.q % 3 == 0) s.exceptions.push_back(r);
  ParityMaximum& m = r.parity == Parity::even ? s.even_max : s.odd_max;
  if (!std::isnan(r.max_excess_mid) && (!m.found || r.max_excess_mid > m.excess.mid())) {
    m = {true, r.q, r.argmax_index, Ball(r.max_excess_mid, r.max_excess_rad)};
  }
}

inline std::vector<u64> sweep_conductors(u64 qmin, u64 qmax, Restriction restriction) {
  std::vector<u64> qs;
  for (u64 q = qmin; q <= qmax; ++q)
    if (admissible(q, restriction) && has_primitive_characters(q)) qs.push_back(q);
  return qs;
}

inline SweepSummary sweep(const SweepOptions& opt) {
  if (opt.qmin < 3 || opt.qmin > opt.qmax) throw std::invalid_argument("sweep: need 3 <= qmin <= qmax");
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("sweep: tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();

  SweepSummary summary;
  summary.qmin = opt.qmin;
  summary.qmax = opt.qmax;
  summary.restriction = opt.restriction;

  auto qs = sweep_conductors(opt.qmin, opt.qmax, opt.restriction);

  std::ofstream out;
  if (!opt.out_path.empty()) {
    std::vector<SweepRow> kept;
    if (opt.resume) {
      std::ifstream probe(opt.out_path);
      if (probe.good()) {
        probe.close();
        kept = read_rows(opt.out_path);
        // The last conductor may be incomplete; redo it.
        if (!kept.empty()) {
          const u64 last = kept.back().q;
          while (!kept.empty() && kept.back().q == last) kept.pop_back();
        }
        for (const auto& r : kept)
          if (r.q < opt.qmin || r.q > opt.qmax || !admissible(r.q, opt.restriction))
            throw std::runtime_error(opt.out_path + ": existing rows do not belong to this sweep");
      }
    }
    out.open(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + opt.out_path);
    out << kRowHeader << '\n';
    for (const auto& r : kept) {
      out << format_row(r) << '\n';
      accumulate(summary, r);
    }
    out.flush();
    if (!kept.empty()) {
      const u64 done = kept.back().q;
      std::erase_if(qs, [done](u64 q) { return q <= done; });
    }
  }

  const std::size_t n = qs.size();
  std::vector<std::optional<std::vector<SweepRow>>> results(n);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      std::vector<SweepRow> rows;
      try {
        rows = detail::evaluate_conductor(qs[i], opt.tolerance);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
        cv.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      results[i] = std::move(rows);
      cv.notify_all();
    }
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

  // Ordered writer.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SweepRow> rows;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return results[i].has_value() || failure; });
      if (!results[i]) break;
      rows = std::move(*results[i]);
      results[i].reset();
    }
    for (const auto& r : rows) {
      if (out.is_open()) out << format_row(r) << '\n';
      accumulate(summary, r);
    }
    if (out.is_open()) out.flush();
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (out.is_open() && !out) throw std::runtime_error("write failed: " + opt.out_path);

  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

// Two-column "q excess" text for one parity.
inline void emit_figure_data(const std::vector<SweepRow>& rows, Parity parity, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  for (const auto& r : rows)
    if (r.parity == parity) out << r.q << ' ' << format_double(r.max_excess_mid) << '\n';
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

}  // namespace lbound
