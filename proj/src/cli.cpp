#include "buckle/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "buckle/analysis.hpp"
#include "buckle/annulus.hpp"
#include "buckle/output.hpp"
#include "buckle/parallel.hpp"
#include "buckle/rectangle.hpp"
#include "buckle/specfun.hpp"

namespace buckle::cli {
namespace {

using output::Cell;
using output::Table;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "csv";
    std::string out_path;
    int precision = output::kDefaultPrecision;
    std::optional<double> tol;
    unsigned parallel = 0;
    bool extended = false;
};

struct Outcome {
    Table table;
    bool partial = false;
};

double parse_real(const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
        throw UsageError(what + ": '" + text + "' is not a number");
    }
    return value;
}

int parse_int(const std::string& text, const std::string& what) {
    int value = 0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc() || res.ptr != end) {
        throw UsageError(what + ": '" + text + "' is not an integer");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

// "x1,x2,..." or "lo:hi:step". Grid points are rounded to 1e-12 so that
// 0:0.95:0.05 ends at 0.95 exactly.
std::vector<double> parse_reals(const std::string& text, const std::string& what) {
    const std::vector<std::string> range = split(text, ':');
    std::vector<double> out;
    if (range.size() == 3) {
        const double lo = parse_real(range[0], what);
        const double hi = parse_real(range[1], what);
        const double step = parse_real(range[2], what);
        if (!(step > 0.0) || hi < lo) {
            throw UsageError(what + ": range needs lo <= hi and step > 0");
        }
        const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        if (n > 1000000) {
            throw UsageError(what + ": range has too many points");
        }
        for (long i = 0; i <= n; ++i) {
            out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
        return out;
    }
    if (range.size() != 1) {
        throw UsageError(what + ": expected a list x1,x2,... or a range lo:hi:step");
    }
    for (const std::string& item : split(text, ',')) {
        out.push_back(parse_real(item, what));
    }
    if (out.empty()) {
        throw UsageError(what + ": empty list");
    }
    return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
    const std::vector<std::string> range = split(text, ':');
    std::vector<int> out;
    if (range.size() == 2) {
        const int lo = parse_int(range[0], what);
        const int hi = parse_int(range[1], what);
        if (hi < lo) {
            throw UsageError(what + ": range needs lo <= hi");
        }
        for (int i = lo; i <= hi; ++i) {
            out.push_back(i);
        }
        return out;
    }
    if (range.size() != 1) {
        throw UsageError(what + ": expected a list n1,n2,... or a range lo:hi");
    }
    for (const std::string& item : split(text, ',')) {
        out.push_back(parse_int(item, what));
    }
    if (out.empty()) {
        throw UsageError(what + ": empty list");
    }
    return out;
}

std::vector<analysis::ProfileCase> parse_cases(const std::string& text) {
    std::vector<analysis::ProfileCase> out;
    for (const std::string& item : split(text, ',')) {
        const std::vector<std::string> pair = split(item, ':');
        if (pair.size() != 2) {
            throw UsageError("--cases: expected k:a pairs, got '" + item + "'");
        }
        out.emplace_back(parse_int(pair[0], "--cases"), parse_real(pair[1], "--cases"));
    }
    if (out.empty()) {
        throw UsageError("--cases: empty list");
    }
    return out;
}

// Argument problems found by the solvers' own checks are usage errors.
template <typename Fn>
void as_usage(Fn&& check) {
    try {
        check();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

void check_radii(const std::vector<double>& a_list, bool extended) {
    as_usage([&] {
        for (double a : a_list) {
            analysis::check_envelope(a, extended);
        }
    });
}

void check_k(int k) {
    if (k < 0) {
        throw UsageError("angular index k must be non-negative");
    }
}

void check_ell(double ell) {
    as_usage([ell] { (void)rectangle::RectangleConfig(ell); });
}

double resolve_tol(const Common& common) {
    if (common.tol) {
        return *common.tol;
    }
    const char* env = std::getenv("BUCKLE_TOL");
    if (env == nullptr || *env == '\0') {
        return rootfind::kDefaultXtol;
    }
    const double tol = parse_real(env, "BUCKLE_TOL");
    if (!(tol > 0.0)) {
        throw UsageError("BUCKLE_TOL must be positive");
    }
    return tol;
}

analysis::SweepOptions sweep_options(const Common& common) {
    return {resolve_tol(common), common.parallel, common.extended};
}

Outcome cmd_table(const Common& common, const std::vector<double>& a_list, std::ostream& err) {
    check_radii(a_list, common.extended);
    Outcome result;
    result.table.columns = {"a", "k_max", "k_opt", "sqrt_lambda1", "lambda1_area"};
    for (const analysis::TableRow& row : analysis::table1(a_list, sweep_options(common))) {
        if (!row.ok()) {
            err << "error: a = " << output::format_number(row.a, common.precision) << ": " << row.error << '\n';
            result.partial = true;
            continue;
        }
        result.table.add_row({row.a, static_cast<long long>(row.k_max), static_cast<long long>(row.k_opt),
                              row.sqrt_lambda1, row.normalized});
    }
    return result;
}

Outcome cmd_first(const Common& common, double a) {
    check_radii({a}, common.extended);
    const annulus::FirstEigenvalueResult r = annulus::first_eigenvalue(a, resolve_tol(common));
    Outcome result;
    result.table.columns = {"a", "k_max", "k_opt", "lambda1", "sqrt_lambda1", "lambda1_area"};
    result.table.add_row({r.a, static_cast<long long>(r.k_max), static_cast<long long>(r.k_opt), r.lambda1,
                          r.sqrt_lambda1, r.normalized});
    return result;
}

Outcome cmd_branches(const Common& common, const std::vector<int>& k_set,
                     const std::vector<double>& a_grid, std::ostream& err) {
    for (int k : k_set) {
        check_k(k);
    }
    check_radii(a_grid, common.extended);
    Outcome result;
    result.table.columns = {"k", "a", "mu", "lambda"};
    for (const auto& row : analysis::branches(k_set, a_grid, sweep_options(common))) {
        for (const analysis::BranchCell& cell : row) {
            if (!cell.ok()) {
                err << "error: k = " << cell.point.k << ", a = "
                    << output::format_number(cell.point.a, common.precision) << ": " << cell.error << '\n';
                result.partial = true;
                continue;
            }
            result.table.add_row({static_cast<long long>(cell.point.k), cell.point.a, cell.point.mu,
                                  cell.point.lambda});
        }
    }
    return result;
}

Outcome cmd_radial(const Common& common, const std::vector<analysis::ProfileCase>& cases, int samples,
                   std::ostream& err) {
    if (samples < 2) {
        throw UsageError("--samples must be at least 2");
    }
    for (const auto& [k, a] : cases) {
        check_k(k);
        check_radii({a}, common.extended);
    }
    Outcome result;
    result.table.columns = {"k", "a", "mu", "r", "v"};
    analysis::SweepOptions options = sweep_options(common);
    for (const auto& c : cases) {
        try {
            const auto profile = analysis::radial_profiles({c}, options, samples).front();
            for (const annulus::RadialSample& s : profile.samples) {
                result.table.add_row({static_cast<long long>(profile.k), profile.a, profile.mu, s.r, s.v});
            }
        } catch (const std::exception& e) {
            err << "error: k = " << c.first << ", a = " << output::format_number(c.second, common.precision)
                << ": " << e.what() << '\n';
            result.partial = true;
        }
    }
    return result;
}

Outcome cmd_punctured(const Common& common, std::ostream& err) {
    const double tol = resolve_tol(common);
    const double mu0 = annulus::tau(0, 0.0, tol).mu;
    const annulus::FirstEigenvalueResult first = annulus::first_eigenvalue(0.0, tol);
    Outcome result;
    result.table.columns = {"quantity", "value"};
    result.table.add_row({std::string("mu_first_k0"), mu0});
    result.table.add_row({std::string("lambda1"), first.lambda1});
    result.table.add_row({std::string("sqrt_lambda1"), first.sqrt_lambda1});
    err << "note: lambda1 of the punctured disk is j_{2,1}^2 = "
        << output::format_number(first.lambda1, 6)
        << " (k = 1 branch); the value 23.3746 sometimes quoted for it is inconsistent with this.\n";
    return result;
}

Outcome cmd_disk(int k, int t, double radius) {
    check_k(k);
    if (t < 1) {
        throw UsageError("--t must be at least 1");
    }
    if (!(radius > 0.0)) {
        throw UsageError("--R must be positive");
    }
    const double lambda = annulus::disk_eigenvalue(k, t, radius);
    Outcome result;
    result.table.columns = {"k", "t", "R", "lambda", "sqrt_lambda"};
    result.table.add_row({static_cast<long long>(k), static_cast<long long>(t), radius, lambda, std::sqrt(lambda)});
    return result;
}

std::vector<Cell> rect_summary_row(double ell) {
    const rectangle::RectFirstResult first = rectangle::first_eigenvalue_rect(ell);
    const rectangle::RealMinimum real = rectangle::minimize_lambda1_real(ell);
    return {ell, static_cast<long long>(first.m_opt), first.lambda1, real.m_star, real.lambda_star,
            static_cast<long long>(first.nodal_domains)};
}

Outcome cmd_rect(double ell, std::optional<double> m, int k) {
    check_ell(ell);
    if (k < 1) {
        throw UsageError("--k must be at least 1");
    }
    Outcome result;
    result.table.columns = {"quantity", "value"};
    if (m) {
        if (!(*m > 0.0)) {
            throw UsageError("--m must be positive");
        }
        const rectangle::RectMode mode = rectangle::mode_gamma(k, *m, ell);
        result.table.add_row({std::string("k"), static_cast<long long>(mode.k)});
        result.table.add_row({std::string("m"), mode.m});
        result.table.add_row({std::string("ell"), mode.ell});
        result.table.add_row({std::string("parity"), std::string(rectangle::to_string(mode.parity))});
        result.table.add_row({std::string("gamma"), mode.gamma});
        result.table.add_row({std::string("lambda"), mode.lambda});
        return result;
    }
    const std::vector<Cell> row = rect_summary_row(ell);
    const char* names[] = {"ell", "m_opt", "lambda1", "m_star", "lambda_star", "nodal_domains"};
    for (std::size_t i = 0; i < row.size(); ++i) {
        result.table.add_row({std::string(names[i]), row[i]});
    }
    return result;
}

Outcome cmd_rect_sweep(const Common& common, const std::vector<double>& ells, std::ostream& err) {
    for (double ell : ells) {
        check_ell(ell);
    }
    Outcome result;
    result.table.columns = {"ell", "m_opt", "lambda1", "m_star", "lambda_star", "nodal_domains"};
    using Row = std::optional<std::vector<Cell>>;
    std::vector<std::string> errors(ells.size());
    const auto rows = parallel_map<Row>(ells.size(), common.parallel, [&](std::size_t i) -> Row {
        try {
            return rect_summary_row(ells[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
            return std::nullopt;
        }
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i]) {
            err << "error: ell = " << output::format_number(ells[i], common.precision) << ": " << errors[i] << '\n';
            result.partial = true;
            continue;
        }
        result.table.add_row(*rows[i]);
    }
    return result;
}

Outcome cmd_rect_witness(const std::vector<int>& counts, std::ostream& err) {
    Outcome result;
    result.table.columns = {"n", "ell", "m_opt", "lambda1"};
    for (int n : counts) {
        if (n < 1) {
            throw UsageError("--n values must be at least 1");
        }
    }
    for (int n : counts) {
        try {
            const double ell = rectangle::find_ell_for_nodal_count(n);
            const rectangle::RectFirstResult check = rectangle::first_eigenvalue_rect(ell);
            result.table.add_row({static_cast<long long>(n), ell, static_cast<long long>(check.m_opt), check.lambda1});
        } catch (const std::exception& e) {
            err << "error: n = " << n << ": " << e.what() << '\n';
            result.partial = true;
        }
    }
    return result;
}

Outcome cmd_asymptotics(const Common& common, const std::vector<double>& a_grid, std::ostream& err) {
    if (a_grid.size() < 2) {
        throw UsageError("--a-grid needs at least two values");
    }
    check_radii(a_grid, common.extended);
    const analysis::AsymptoticFit fit = analysis::fit_asymptotics(a_grid, sweep_options(common));
    Outcome result;
    result.table.columns = {"row", "a", "k_opt", "sqrt_lambda1", "c_k", "c_mu"};
    for (const analysis::AsymptoticSample& s : fit.samples) {
        result.table.add_row({std::string("sample"), s.a, static_cast<long long>(s.k_opt), s.sqrt_lambda1, s.c_k, s.c_mu});
    }
    result.table.add_row({std::string("last"), Cell{}, Cell{}, Cell{}, fit.last_c_k, fit.last_c_mu});
    result.table.add_row({std::string("fit"), Cell{}, Cell{}, Cell{}, fit.c_k, fit.c_mu});
    if (fit.flagged) {
        err << "warning: fit flagged: " << fit.flag_reason << '\n';
    }
    return result;
}

void add_common_options(CLI::App& app, Common& common, std::string& tol_text) {
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", common.out_path, "Write results to this file instead of stdout");
    app.add_option("--precision", common.precision, "Significant digits for numbers")
        ->check(CLI::Range(output::kMinPrecision, output::kMaxPrecision))
        ->capture_default_str();
    app.add_option("--tol", tol_text, "Root tolerance in mu (default: BUCKLE_TOL or 1e-12)");
    app.add_option("--parallel", common.parallel, "Worker threads for sweeps (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--extended", common.extended, "Allow inner radii up to 0.995 (no accuracy guarantee)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Buckling eigenvalues of clamped annuli, disks and strips", "buckle"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    std::string tol_text;
    add_common_options(app, common, tol_text);

    std::string table_a;
    auto* table = app.add_subcommand("table", "First eigenvalue per inner radius. Columns: a,k_max,k_opt,sqrt_lambda1,lambda1_area");
    table->add_option("--a", table_a, "Inner radii: list x1,x2,... or range lo:hi:step (default: reference radii)");

    double first_a = 0.0;
    auto* first = app.add_subcommand("first", "First eigenvalue at one inner radius. Columns: a,k_max,k_opt,lambda1,sqrt_lambda1,lambda1_area");
    first->add_option("--a", first_a, "Inner radius")->required();

    std::string branch_k = "0,1,2,3,4";
    std::string branch_a = "0:0.4:0.01";
    auto* branches = app.add_subcommand("branches", "Branch values tau_k(a). Columns: k,a,mu,lambda");
    branches->add_option("--k", branch_k, "Angular indices: list or range lo:hi")->capture_default_str();
    branches->add_option("--a-range", branch_a, "Inner radii: list or range lo:hi:step")->capture_default_str();

    std::string radial_cases = "1:0.2,2:0.2,3:0.2,3:0.5,4:0.5,5:0.5,5:0.8,11:0.8,13:0.8";
    int radial_samples = 1024;
    auto* radial = app.add_subcommand("radial", "Radial profiles at the first root. Columns: k,a,mu,r,v");
    radial->add_option("--cases", radial_cases, "Pairs k:a separated by commas")->capture_default_str();
    radial->add_option("--samples", radial_samples, "Samples per profile on [a,1]")->capture_default_str();

    auto* punctured = app.add_subcommand("punctured", "Punctured disk. Columns: quantity,value");

    int disk_k = 0;
    int disk_t = 1;
    double disk_r = 1.0;
    auto* disk = app.add_subcommand("disk", "Disk eigenvalue (j_{k+1,t}/R)^2. Columns: k,t,R,lambda,sqrt_lambda");
    disk->add_option("--k", disk_k, "Angular index")->capture_default_str();
    disk->add_option("--t", disk_t, "Root index")->capture_default_str();
    disk->add_option("--R", disk_r, "Radius")->capture_default_str();

    double rect_ell = 1.0;
    std::optional<double> rect_m;
    int rect_k = 1;
    auto* rect = app.add_subcommand("rect", "Strip (0,pi)x(-ell,ell). Columns: quantity,value");
    rect->add_option("--ell", rect_ell, "Half height")->required();
    rect->add_option("--m", rect_m, "Longitudinal wavenumber; omit for the first eigenvalue summary");
    rect->add_option("--k", rect_k, "Transverse branch index (with --m)")->capture_default_str();

    std::string sweep_range = "0.1:2:0.1";
    auto* rect_sweep = app.add_subcommand("rect-sweep", "First strip eigenvalue per ell. Columns: ell,m_opt,lambda1,m_star,lambda_star,nodal_domains");
    rect_sweep->add_option("--ell-range", sweep_range, "Half heights: list or range lo:hi:step")->capture_default_str();

    std::string witness_n = "1:6";
    auto* witness = app.add_subcommand("rect-witness", "Half height whose first eigenfunction has n nodal domains. Columns: n,ell,m_opt,lambda1");
    witness->add_option("--n", witness_n, "Nodal counts: list or range lo:hi")->capture_default_str();

    std::string asym_grid = "0.88,0.90,0.91,0.92,0.93,0.94,0.95";
    auto* asymptotics = app.add_subcommand("asymptotics", "Products k_opt(1-a) and sqrt(lambda1)(1-a) with linear extrapolation. Columns: row,a,k_opt,sqrt_lambda1,c_k,c_mu");
    asymptotics->add_option("--a-grid", asym_grid, "Inner radii: list or range lo:hi:step")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Outcome result;
    try {
        if (!tol_text.empty()) {
            common.tol = parse_real(tol_text, "--tol");
            if (!(*common.tol > 0.0)) {
                throw UsageError("--tol must be positive");
            }
        }
        if (*table) {
            const std::vector<double> a_list =
                table->count("--a") == 0 ? analysis::reference_radii() : parse_reals(table_a, "--a");
            result = cmd_table(common, a_list, err);
        } else if (*first) {
            result = cmd_first(common, first_a);
        } else if (*branches) {
            result = cmd_branches(common, parse_ints(branch_k, "--k"), parse_reals(branch_a, "--a-range"), err);
        } else if (*radial) {
            result = cmd_radial(common, parse_cases(radial_cases), radial_samples, err);
        } else if (*punctured) {
            result = cmd_punctured(common, err);
        } else if (*disk) {
            result = cmd_disk(disk_k, disk_t, disk_r);
        } else if (*rect) {
            result = cmd_rect(rect_ell, rect_m, rect_k);
        } else if (*rect_sweep) {
            result = cmd_rect_sweep(common, parse_reals(sweep_range, "--ell-range"), err);
        } else if (*witness) {
            result = cmd_rect_witness(parse_ints(witness_n, "--n"), err);
        } else if (*asymptotics) {
            result = cmd_asymptotics(common, parse_reals(asym_grid, "--a-grid"), err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    const output::Format format = common.format == "json" ? output::Format::Json : output::Format::Csv;
    if (common.out_path.empty()) {
        output::write_table(result.table, format, out, common.precision);
    } else {
        std::ofstream file(common.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << common.out_path << " for writing\n";
            return kExitUsage;
        }
        output::write_table(result.table, format, file, common.precision);
    }
    return result.partial ? kExitFailure : kExitOk;
}

}  // namespace buckle::cli
