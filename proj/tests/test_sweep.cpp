#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <lbound/sweep.hpp>

using namespace lbound;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "lbound_tests";
  fs::create_directories(dir);
  return dir / (name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
}

SweepSummary run(u64 qmin, u64 qmax, unsigned threads, const fs::path& out, bool resume = false,
                 Restriction r = Restriction::multiple_of_3) {
  SweepOptions o;
  o.qmin = qmin;
  o.qmax = qmax;
  o.threads = threads;
  o.out_path = out.string();
  o.resume = resume;
  o.restriction = r;
  return sweep(o);
}

}  // namespace

TEST(Sweep, SmallRange) {
  const auto path = temp_file("small");
  const auto s = run(3, 9, 1, path);
  ASSERT_EQ(s.rows.size(), 3U);  // q=3 odd, q=9 even and odd
  EXPECT_EQ(s.rows[0].q, 3U);
  EXPECT_EQ(s.rows[0].parity, Parity::odd);
  EXPECT_NEAR(s.rows[0].max_excess_mid, 0.23839, 1e-5);
  EXPECT_EQ(s.rows[1].q, 9U);
  EXPECT_EQ(s.rows[1].characters + s.rows[2].characters, 4U);
  EXPECT_EQ(s.characters, 5U);
  EXPECT_EQ(s.conductors, 2U);
  EXPECT_TRUE(s.verified());
  const auto text = slurp(path);
  EXPECT_EQ(text.substr(0, text.find('\n')), kRowHeader);
  EXPECT_EQ(read_rows(path.string()), s.rows);
}

TEST(Sweep, MatchesDirectEvaluation) {
  const auto s = run(3, 300, 1, temp_file("direct"));
  for (const auto& row : s.rows) {
    const UnitGroup g(row.q);
    const auto c = build_coefficients(g, 1e-13);
    double best = -HUGE_VAL;
    for (u64 i = 0; i < g.phi(); ++i) {
      const auto chi = make_character(g, i);
      if (!chi.primitive || chi.parity != row.parity) continue;
      const auto L = direct_sum(g, c, chi);
      best = std::max(best, L.abs().mid() - std::log(static_cast<double>(row.q)) / 3.0);
    }
    ASSERT_NEAR(row.max_excess_mid, best, 1e-10) << row.q;
  }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  const auto a = temp_file("det1"), b = temp_file("det4");
  run(3, 2000, 1, a);
  run(3, 2000, 4, b);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Sweep, ResumesInterruptedFile) {
  const auto full = temp_file("full"), cut = temp_file("cut");
  const auto s = run(3, 1500, 2, full);
  std::string text = slurp(full);
  // Interrupt in the middle of a row.
  text.resize(text.size() * 3 / 5);
  ASSERT_NE(text.back(), '\n');
  { std::ofstream(cut, std::ios::binary) << text; }
  const auto resumed = run(3, 1500, 3, cut, true);
  EXPECT_EQ(slurp(full), slurp(cut));
  EXPECT_EQ(resumed.characters, s.characters);
  EXPECT_EQ(resumed.conductors, s.conductors);
  EXPECT_EQ(resumed.even_max.q, s.even_max.q);
  // Resuming a complete file changes nothing.
  run(3, 1500, 1, cut, true);
  EXPECT_EQ(slurp(full), slurp(cut));
}

TEST(Sweep, RejectsForeignRowFile) {
  const auto path = temp_file("foreign");
  run(3, 300, 1, path);
  EXPECT_THROW(run(301, 600, 1, path, true), std::runtime_error);
}

TEST(Sweep, CountsInvariant) {
  for (auto r : {Restriction::multiple_of_3, Restriction::all}) {
    const auto s = run(100, 700, 2, temp_file("counts"), false, r);
    EXPECT_EQ(s.characters, count_primitive(700, r) - count_primitive(99, r));
  }
}

TEST(Sweep, MaximaUpToTenThousand) {
  const auto s = run(3, 10000, 1, temp_file("max"));
  EXPECT_TRUE(s.verified());
  EXPECT_EQ(s.even_max.q, 249U);
  EXPECT_EQ(s.odd_max.q, 111U);
  EXPECT_EQ(s.characters, count_primitive(10000, Restriction::multiple_of_3));
}

TEST(Sweep, FigureData) {
  const auto rows = temp_file("fig_rows"), fig = temp_file("fig");
  run(3, 600, 1, rows);
  emit_figure_data(read_rows(rows.string()), Parity::even, fig.string());
  std::ifstream in(fig);
  u64 q, best_q = 0;
  double v, best = -HUGE_VAL;
  int lines = 0;
  while (in >> q >> v) {
    ++lines;
    if (v > best) {
      best = v;
      best_q = q;
    }
  }
  EXPECT_GT(lines, 100);
  EXPECT_EQ(best_q, 249U);
  EXPECT_NEAR(best, 0.2718, 1e-4);

  emit_figure_data({}, Parity::odd, fig.string());
  EXPECT_EQ(fs::file_size(fig), 0U);
}

TEST(Sweep, RowFormatRoundTrip) {
  SweepRow r;
  r.q = 12345;
  r.parity = Parity::odd;
  r.characters = 17;
  r.max_excess_mid = 0.1 + 0.2;
  r.max_excess_rad = 1e-300;
  r.argmax_index = 9;
  r.argmax_ambiguous = true;
  r.bound_constant = kTheoremOdd;
  r.margin_mid = -3.5e-7;
  r.margin_rad = 2.2250738585072014e-308;
  r.verdict = Verdict::fail;
  EXPECT_EQ(parse_row(format_row(r)), r);
  EXPECT_EQ(format_double(0.30000000000000004), "0.30000000000000004");
  EXPECT_THROW(parse_row("1,2,3"), std::runtime_error);
}

TEST(Sweep, ArgmaxTieBreak) {
  // Conjugate pairs have equal |L|; the smaller index is reported and the
  // pair alone does not make the row ambiguous.
  const auto s = run(3, 400, 1, temp_file("ties"));
  for (const auto& row : s.rows) {
    const UnitGroup g(row.q);
    EXPECT_LE(row.argmax_index, conjugate_index(g, row.argmax_index)) << row.q;
  }
}

TEST(Sweep, BadArguments) {
  SweepOptions o;
  o.qmin = 2;
  o.qmax = 10;
  EXPECT_THROW(sweep(o), std::invalid_argument);
  o.qmin = 20;
  EXPECT_THROW(sweep(o), std::invalid_argument);
  o.qmin = 3;
  o.out_path = "/nonexistent_dir/rows.csv";
  o.resume = false;
  EXPECT_THROW(sweep(o), std::runtime_error);
}
