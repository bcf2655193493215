#pragma once

// File formats: model JSON, sample-set JSON, and the CSV tables written by the
// command-line tool. Doubles are written in shortest round-trip form, with
// `inf`, `-inf` and `nan` for non-finite values.

#include <aaa/barycentric.hpp>
#include <aaa/engine.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace aaa::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Number formatting

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError("cannot parse number '" + std::string(s) + "'");
    }
    return x;
}

inline std::size_t parse_size(std::string_view s) {
    std::size_t x = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError("cannot parse integer '" + std::string(s) + "'");
    }
    return x;
}

inline bool parse_bool(std::string_view s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw FormatError("cannot parse boolean '" + std::string(s) + "'");
}

inline std::vector<std::string> split(std::string_view line, char sep = ',') {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << contents;
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

inline void expect_header(const std::vector<std::string>& lines, std::string_view header) {
    if (lines.empty() || lines.front() != header) {
        throw FormatError("expected header '" + std::string(header) + "'");
    }
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError("expected [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(std::span<const cplx> v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

inline std::vector<cplx> complex_vector_from_json(const json& j) {
    if (!j.is_array()) throw FormatError("expected array of [re, im] pairs");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

inline json model_to_json(const BarycentricModel& m) {
    json j;
    j["nodes"] = to_json(m.nodes());
    j["values"] = to_json(m.values());
    j["weights"] = to_json(m.weights());
    if (const auto& sp = m.smooth_parts()) {
        j["smooth"] = {{"v_last", to_json(sp->v_last)},
                       {"v_penultimate", to_json(sp->v_penultimate)},
                       {"blend", sp->blend},
                       {"kappa", sp->kappa}};
    } else {
        j["smooth"] = nullptr;
    }
    j["variant"] = to_string(m.variant());
    return j;
}

inline BarycentricModel model_from_json(const json& j) {
    try {
        std::optional<SmoothParts> sp;
        if (j.contains("smooth") && !j.at("smooth").is_null()) {
            const json& s = j.at("smooth");
            sp = SmoothParts{complex_vector_from_json(s.at("v_last")),
                             complex_vector_from_json(s.at("v_penultimate")), s.at("blend").get<double>(),
                             s.at("kappa").get<double>()};
        }
        const Variant v = j.contains("variant") ? parse_variant(j.at("variant").get<std::string>()) : Variant::aaa;
        return BarycentricModel(complex_vector_from_json(j.at("nodes")), complex_vector_from_json(j.at("values")),
                                complex_vector_from_json(j.at("weights")), std::move(sp), v);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("malformed model: ") + e.what());
    }
}

inline std::string write_model(const BarycentricModel& m) { return model_to_json(m).dump(1) + "\n"; }

inline BarycentricModel read_model(const std::string& text) {
    try {
        return model_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model: ") + e.what());
    }
}

/// Array of {"z": [re, im], "f": [re, im], "df": [re, im]}; derivatives are
/// retained only if every entry carries one.
inline std::string write_samples(std::span<const cplx> z, std::span<const cplx> f,
                                 std::optional<std::span<const cplx>> df = std::nullopt) {
    json a = json::array();
    for (std::size_t i = 0; i < z.size(); ++i) {
        json e = {{"z", to_json(z[i])}, {"f", to_json(f[i])}};
        if (df) e["df"] = to_json((*df)[i]);
        a.push_back(std::move(e));
    }
    return a.dump() + "\n";
}

inline SampleSet read_samples(const std::string& text) {
    try {
        const json a = json::parse(text);
        if (!a.is_array()) throw FormatError("sample file must be a JSON array");
        std::vector<cplx> z, f, df;
        bool all_df = !a.empty();
        for (const auto& e : a) {
            z.push_back(complex_from_json(e.at("z")));
            f.push_back(complex_from_json(e.at("f")));
            if (e.contains("df")) {
                df.push_back(complex_from_json(e.at("df")));
            } else {
                all_df = false;
            }
        }
        std::optional<std::vector<cplx>> d;
        if (all_df) d = std::move(df);
        return SampleSet(std::move(z), std::move(f), std::move(d));
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed sample file: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Trace CSV

inline constexpr std::string_view kTraceHeader =
    "iter,N,max_err,argmax_re,argmax_im,sigma_last,sigma_penult,zero_weights,elapsed_s";

inline std::string write_trace(const ConvergenceTrace& t) {
    std::string s(kTraceHeader);
    s += '\n';
    for (const auto& r : t.records) {
        s += std::to_string(r.iter) + ',' + std::to_string(r.n) + ',' + format_double(r.max_err) + ',' +
             format_double(r.argmax.real()) + ',' + format_double(r.argmax.imag()) + ',' +
             format_double(r.sigma_last) + ',' + format_double(r.sigma_penultimate) + ',' +
             std::to_string(r.zero_weights) + ',' + format_double(r.elapsed_s) + '\n';
    }
    for (const auto& w : t.warnings) {
        s += "# warning iter=" + std::to_string(w.iter) + " point=" + std::to_string(w.point_index) +
             " err=" + format_double(w.error) + '\n';
    }
    s += "# status=" + to_string(t.status) + '\n';
    return s;
}

inline ConvergenceTrace read_trace(const std::string& text) {
    const auto lines = lines_of(text);
    expect_header(lines, kTraceHeader);
    ConvergenceTrace t;
    bool have_status = false;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const std::string& line = lines[k];
        if (line.rfind("# status=", 0) == 0) {
            t.status = parse_status(line.substr(9));
            have_status = true;
            continue;
        }
        if (line.rfind("# warning ", 0) == 0) {
            SupportWarning w;
            std::istringstream in(line.substr(10));
            std::string tok;
            while (in >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw FormatError("bad warning line");
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "iter") w.iter = parse_size(val);
                else if (key == "point") w.point_index = parse_size(val);
                else if (key == "err") w.error = parse_double(val);
            }
            t.warnings.push_back(w);
            continue;
        }
        const auto f = split(line);
        if (f.size() != 9) throw FormatError("trace row has wrong field count");
        IterationRecord r;
        r.iter = parse_size(f[0]);
        r.n = parse_size(f[1]);
        r.max_err = parse_double(f[2]);
        r.argmax = {parse_double(f[3]), parse_double(f[4])};
        r.sigma_last = parse_double(f[5]);
        r.sigma_penultimate = parse_double(f[6]);
        r.zero_weights = parse_size(f[7]);
        r.elapsed_s = parse_double(f[8]);
        t.records.push_back(std::move(r));
    }
    if (!have_status) throw FormatError("trace is missing the status line");
    return t;
}

// ---------------------------------------------------------------------------
// Pole table CSV

inline constexpr std::string_view kPolesHeader = "kind,re,im,res_re,res_im,doublet";

struct PoleRow {
    std::string kind;  // "pole" or "zero"
    cplx z;
    std::optional<cplx> residue;  // poles only
    bool doublet = false;

    friend bool operator==(const PoleRow&, const PoleRow&) = default;
};

/// Pole and zero rows sorted by real part, then imaginary part, then kind.
inline std::vector<PoleRow> pole_rows(const PoleZeroReport& rep) {
    std::vector<PoleRow> rows;
    std::vector<bool> pole_dbl(rep.poles.size(), false), zero_dbl(rep.zeros.size(), false);
    for (const auto& [p, z] : rep.doublets) {
        pole_dbl[p] = true;
        zero_dbl[z] = true;
    }
    for (std::size_t i = 0; i < rep.poles.size(); ++i)
        rows.push_back({"pole", rep.poles[i], rep.residues[i], pole_dbl[i]});
    for (std::size_t i = 0; i < rep.zeros.size(); ++i) rows.push_back({"zero", rep.zeros[i], std::nullopt, zero_dbl[i]});
    std::stable_sort(rows.begin(), rows.end(), [](const PoleRow& a, const PoleRow& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
        return a.kind < b.kind;
    });
    return rows;
}

inline std::string write_pole_rows(const std::vector<PoleRow>& rows) {
    std::string s(kPolesHeader);
    s += '\n';
    for (const auto& r : rows) {
        s += r.kind + ',' + format_double(r.z.real()) + ',' + format_double(r.z.imag()) + ',';
        if (r.residue) s += format_double(r.residue->real()) + ',' + format_double(r.residue->imag());
        else s += ',';
        s += r.doublet ? ",true\n" : ",false\n";
    }
    return s;
}

inline std::vector<PoleRow> read_pole_rows(const std::string& text) {
    const auto lines = lines_of(text);
    expect_header(lines, kPolesHeader);
    std::vector<PoleRow> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split(lines[k]);
        if (f.size() != 6) throw FormatError("pole row has wrong field count");
        if (f[0] != "pole" && f[0] != "zero") throw FormatError("pole row kind must be pole or zero");
        PoleRow r{f[0], {parse_double(f[1]), parse_double(f[2])}, std::nullopt, parse_bool(f[5])};
        if (!f[3].empty() || !f[4].empty()) r.residue = cplx(parse_double(f[3]), parse_double(f[4]));
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Error grid CSV

inline constexpr std::string_view kGridHeader = "re,im,log10_abs_err";

struct GridCell {
    double re = 0.0;
    double im = 0.0;
    double log10_err = 0.0;  // -inf for exact zero error, +inf at a pole of r

    friend bool operator==(const GridCell& a, const GridCell& b) {
        auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
        return same(a.re, b.re) && same(a.im, b.im) && same(a.log10_err, b.log10_err);
    }
};

inline std::string write_grid(const std::vector<GridCell>& cells) {
    std::string s(kGridHeader);
    s += '\n';
    for (const auto& c : cells)
        s += format_double(c.re) + ',' + format_double(c.im) + ',' + format_double(c.log10_err) + '\n';
    return s;
}

inline std::vector<GridCell> read_grid(const std::string& text) {
    const auto lines = lines_of(text);
    expect_header(lines, kGridHeader);
    std::vector<GridCell> cells;
    cells.reserve(lines.size());
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split(lines[k]);
        if (f.size() != 3) throw FormatError("grid row has wrong field count");
        cells.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2])});
    }
    return cells;
}

// ---------------------------------------------------------------------------
// Even-grid sweep CSV

inline constexpr std::string_view kSweepHeader =
    "n,variant,N,status,coarse_max_err,fine_max_err,real_poles,min_abs_im,ref_n";

struct SweepRow {
    std::size_t n = 0;
    Variant variant = Variant::aaa;
    std::size_t terminal_n = 0;
    RunStatus status = RunStatus::converged;
    double coarse_max_err = 0.0;
    double fine_max_err = 0.0;
    std::size_t real_poles = 0;   // Re in [-1, 1] and |Im| < 1e-12
    double min_abs_im = 0.0;      // over poles with Re in [-1, 1]; inf if none
    std::size_t ref_n = 0;        // 2n for budget rows, n otherwise

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline std::string write_sweep(const std::vector<SweepRow>& rows) {
    std::string s(kSweepHeader);
    s += '\n';
    for (const auto& r : rows) {
        s += std::to_string(r.n) + ',' + to_string(r.variant) + ',' + std::to_string(r.terminal_n) + ',' +
             to_string(r.status) + ',' + format_double(r.coarse_max_err) + ',' + format_double(r.fine_max_err) +
             ',' + std::to_string(r.real_poles) + ',' + format_double(r.min_abs_im) + ',' +
             std::to_string(r.ref_n) + '\n';
    }
    return s;
}

inline std::vector<SweepRow> read_sweep(const std::string& text) {
    const auto lines = lines_of(text);
    expect_header(lines, kSweepHeader);
    std::vector<SweepRow> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split(lines[k]);
        if (f.size() != 9) throw FormatError("sweep row has wrong field count");
        rows.push_back({parse_size(f[0]), parse_variant(f[1]), parse_size(f[2]), parse_status(f[3]),
                        parse_double(f[4]), parse_double(f[5]), parse_size(f[6]), parse_double(f[7]),
                        parse_size(f[8])});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Timing CSV

inline constexpr std::string_view kBenchHeader = "variant,reps,N,median_s";

struct BenchRow {
    Variant variant = Variant::aaa;
    std::size_t reps = 0;
    std::size_t terminal_n = 0;
    double median_s = 0.0;

    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchTable {
    std::vector<BenchRow> rows;
    std::optional<double> budget_over_aaa;  // present when both variants ran

    friend bool operator==(const BenchTable&, const BenchTable&) = default;
};

inline std::string write_bench(const BenchTable& t) {
    std::string s(kBenchHeader);
    s += '\n';
    for (const auto& r : t.rows) {
        s += to_string(r.variant) + ',' + std::to_string(r.reps) + ',' + std::to_string(r.terminal_n) + ',' +
             format_double(r.median_s) + '\n';
    }
    if (t.budget_over_aaa) s += "# budget_over_aaa=" + format_double(*t.budget_over_aaa) + '\n';
    return s;
}

inline BenchTable read_bench(const std::string& text) {
    const auto lines = lines_of(text);
    expect_header(lines, kBenchHeader);
    BenchTable t;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].rfind("# budget_over_aaa=", 0) == 0) {
            t.budget_over_aaa = parse_double(std::string_view(lines[k]).substr(18));
            continue;
        }
        const auto f = split(lines[k]);
        if (f.size() != 4) throw FormatError("bench row has wrong field count");
        t.rows.push_back({parse_variant(f[0]), parse_size(f[1]), parse_size(f[2]), parse_double(f[3])});
    }
    return t;
}

}  // namespace aaa::io
