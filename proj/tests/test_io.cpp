#include <aaa/aaa.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace aaa;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kTraceFixture =
    "iter,N,max_err,argmax_re,argmax_im,sigma_last,sigma_penult,zero_weights,elapsed_s\n"
    "1,2,0.5,-1,0,0.25,1.5,0,1e-05\n"
    "2,3,inf,0.125,-0.75,1.2345678901234567e-12,3.3,1,0.002\n"
    "# warning iter=2 point=17 err=3.5e-09\n"
    "# status=degree_cap\n";

const char* kPolesFixture =
    "kind,re,im,res_re,res_im,doublet\n"
    "pole,-0.5,1e-300,2.5,-1,false\n"
    "zero,-0.5,0,,,true\n"
    "pole,2,0,nan,nan,true\n";

const char* kGridFixture =
    "re,im,log10_abs_err\n"
    "-1,-1,-inf\n"
    "0.3333333333333333,-1,-12.75\n"
    "1,1,inf\n";

const char* kSweepFixture =
    "n,variant,N,status,coarse_max_err,fine_max_err,real_poles,min_abs_im,ref_n\n"
    "8,aaa,7,data_exhausted,1e-13,1e-04,2,0,8\n"
    "8,budget,8,converged,2e-14,3e-05,0,inf,16\n";

const char* kBenchFixture =
    "variant,reps,N,median_s\n"
    "aaa,5,48,0.75\n"
    "budget,5,46,0.0625\n"
    "# budget_over_aaa=0.08333333333333333\n";

}  // namespace

TEST(FormatDouble, RoundTripsAndSentinels) {
    for (double x : {0.1, -1e-300, 1.0 / 3.0, 6.02214076e23, 5e-324}) {
        EXPECT_EQ(io::parse_double(io::format_double(x)), x);
    }
    EXPECT_EQ(io::format_double(kInf), "inf");
    EXPECT_EQ(io::format_double(-kInf), "-inf");
    EXPECT_EQ(io::parse_double("inf"), kInf);
    EXPECT_EQ(io::parse_double("-inf"), -kInf);
    EXPECT_TRUE(std::isnan(io::parse_double("nan")));
    EXPECT_THROW(io::parse_double("1.5x"), io::FormatError);
    EXPECT_THROW(io::parse_double(""), io::FormatError);
    EXPECT_THROW(io::parse_size("-3"), io::FormatError);
    EXPECT_THROW(io::parse_bool("TRUE"), io::FormatError);
}

TEST(ModelJson, BitExactRoundTrip) {
    const auto p = problem("exp_essential");
    for (Variant v : {Variant::aaa, Variant::smooth, Variant::budget}) {
        const auto m = run(p.samples(), p.options(v)).model;
        const auto back = io::read_model(io::write_model(m));
        EXPECT_EQ(back, m) << to_string(v);
        EXPECT_EQ(io::write_model(back), io::write_model(m));
        EXPECT_EQ(back.smooth_parts().has_value(), v == Variant::smooth);
    }
}

TEST(ModelJson, MalformedInput) {
    EXPECT_THROW(io::read_model("{"), io::FormatError);
    EXPECT_THROW(io::read_model("{\"nodes\": [[0,0]], \"values\": [[1,0]]}"), io::FormatError);
    EXPECT_THROW(io::read_model("{\"nodes\": [[0,0]], \"values\": [[1,0]], \"weights\": [[0,0]]}"),
                 io::FormatError);
    EXPECT_THROW(io::read_model("{\"nodes\": [[0]], \"values\": [[1,0]], \"weights\": [[1,0]]}"), io::FormatError);
    EXPECT_THROW(io::read_model("{\"nodes\": [[0,0],[0,0]], \"values\": [[1,0],[1,0]], \"weights\": [[1,0],[1,0]]}"),
                 io::FormatError);
    EXPECT_THROW(io::read_model("{\"nodes\": [[0,0]], \"values\": [[1,0]], \"weights\": [[1,0]], \"variant\": \"x\"}"),
                 std::exception);
    EXPECT_NO_THROW(io::read_model("{\"nodes\": [[0,0]], \"values\": [[1,0]], \"weights\": [[1,0]]}"));
}

TEST(SamplesJson, RoundTrip) {
    const auto p = problem("sqrt_eps_complex");
    const auto text = io::write_samples(p.grid, p.values, std::span<const cplx>(*p.derivatives));
    const auto s = io::read_samples(text);
    ASSERT_TRUE(s.has_derivatives());
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        EXPECT_EQ(s.points()[i], p.grid[i]);
        EXPECT_EQ(s.values()[i], p.values[i]);
        EXPECT_EQ(s.derivatives()[i], (*p.derivatives)[i]);
    }
    EXPECT_FALSE(io::read_samples(io::write_samples(p.grid, p.values)).has_derivatives());
    // A single entry without df drops derivatives for the whole set.
    const auto partial = io::read_samples(R"([{"z":[0,0],"f":[1,0],"df":[0,0]},{"z":[1,0],"f":[2,0]}])");
    EXPECT_FALSE(partial.has_derivatives());
}

TEST(SamplesJson, MalformedInput) {
    EXPECT_THROW(io::read_samples("{}"), io::FormatError);
    EXPECT_THROW(io::read_samples(R"([{"z":[0,0]}])"), io::FormatError);
    EXPECT_THROW(io::read_samples(R"([{"z":[0],"f":[1,0]}])"), io::FormatError);
    EXPECT_THROW(io::read_samples(R"([{"z":[0,0],"f":[1,0]},{"z":[0,0],"f":[2,0]}])"), std::invalid_argument);
}

TEST(TraceCsv, ParseAndReemitIsByteIdentical) {
    const auto t = io::read_trace(kTraceFixture);
    ASSERT_EQ(t.records.size(), 2u);
    EXPECT_EQ(t.records[1].max_err, kInf);
    EXPECT_EQ(t.records[1].argmax, cplx(0.125, -0.75));
    EXPECT_EQ(t.status, RunStatus::degree_cap);
    ASSERT_EQ(t.warnings.size(), 1u);
    EXPECT_EQ(t.warnings[0].point_index, 17u);
    EXPECT_EQ(io::write_trace(t), kTraceFixture);
}

TEST(TraceCsv, EngineTraceRoundTrips) {
    const auto p = problem("gamma");
    const auto r = run(p.samples(), p.options(Variant::smooth));
    const auto text = io::write_trace(r.trace);
    EXPECT_EQ(io::write_trace(io::read_trace(text)), text);
    EXPECT_EQ(io::read_trace(text).records.size(), r.trace.records.size());
}

TEST(TraceCsv, MalformedInput) {
    EXPECT_THROW(io::read_trace("iter,N\n"), io::FormatError);
    EXPECT_THROW(io::read_trace(std::string(io::kTraceHeader) + "\n1,2,3\n# status=converged\n"), io::FormatError);
    EXPECT_THROW(io::read_trace(std::string(io::kTraceHeader) + "\n"), io::FormatError);
    EXPECT_THROW(io::read_trace(std::string(io::kTraceHeader) + "\n# status=done\n"), std::invalid_argument);
}

TEST(PolesCsv, ParseAndReemitIsByteIdentical) {
    const auto rows = io::read_pole_rows(kPolesFixture);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_FALSE(rows[1].residue.has_value());
    EXPECT_TRUE(rows[1].doublet);
    EXPECT_TRUE(std::isnan(rows[2].residue->real()));
    EXPECT_EQ(io::write_pole_rows(rows), kPolesFixture);
    EXPECT_THROW(io::read_pole_rows(std::string(io::kPolesHeader) + "\nknot,0,0,,,false\n"), io::FormatError);
    EXPECT_THROW(io::read_pole_rows(std::string(io::kPolesHeader) + "\npole,0,0,,false\n"), io::FormatError);
}

TEST(PolesCsv, RowsAreSortedAndFlagDoublets) {
    const BarycentricModel m({0.0, 1.0, 3.0}, {1.0, 2.0, 0.5}, {1.0, -2.0, 1.0});
    const auto rep = analyze(m);
    const auto rows = io::pole_rows(rep);
    EXPECT_EQ(rows.size(), rep.poles.size() + rep.zeros.size());
    for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_LE(rows[k - 1].z.real(), rows[k].z.real());
    }
    const auto reparsed = io::read_pole_rows(io::write_pole_rows(rows));
    EXPECT_EQ(reparsed, rows);
}

TEST(GridCsv, ParseAndReemitIsByteIdentical) {
    const auto cells = io::read_grid(kGridFixture);
    ASSERT_EQ(cells.size(), 3u);
    EXPECT_EQ(cells[0].log10_err, -kInf);
    EXPECT_EQ(cells[2].log10_err, kInf);
    EXPECT_EQ(io::write_grid(cells), kGridFixture);
    EXPECT_THROW(io::read_grid("re,im\n"), io::FormatError);
    EXPECT_THROW(io::read_grid(std::string(io::kGridHeader) + "\n1,2\n"), io::FormatError);
}

TEST(SweepCsv, ParseAndReemitIsByteIdentical) {
    const auto rows = io::read_sweep(kSweepFixture);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].variant, Variant::budget);
    EXPECT_EQ(rows[1].ref_n, 16u);
    EXPECT_EQ(rows[1].min_abs_im, kInf);
    EXPECT_EQ(io::write_sweep(rows), kSweepFixture);
    EXPECT_THROW(io::read_sweep(std::string(io::kSweepHeader) + "\n8,aaa,7\n"), io::FormatError);
}

TEST(BenchCsv, ParseAndReemitIsByteIdentical) {
    const auto t = io::read_bench(kBenchFixture);
    ASSERT_EQ(t.rows.size(), 2u);
    ASSERT_TRUE(t.budget_over_aaa.has_value());
    EXPECT_EQ(io::write_bench(t), kBenchFixture);
    EXPECT_THROW(io::read_bench("variant,reps\n"), io::FormatError);
    EXPECT_THROW(io::read_bench(std::string(io::kBenchHeader) + "\nsmooth,x,1,2\n"), io::FormatError);
}

TEST(Files, ReadMissingFileFails) {
    EXPECT_THROW(io::read_file("/nonexistent/dir/model.json"), io::FormatError);
    EXPECT_THROW(io::write_file("/nonexistent/dir/model.json", "x"), io::FormatError);
}
