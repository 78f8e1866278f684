#pragma once

// Batch command-line frontend. Subcommands map one-to-one onto the library:
// verify, construct, reduce, patterns, complement, atoms, bound, search.
//
// Exit codes: 0 success/verified, 1 usage or input error, 2 verification
// failed, 3 certified nonexistence (search), 4 resource limit.
//
// Reports are plain line-oriented text and are byte-identical across runs
// and worker counts; --machine switches the commands that have one to a
// stable key=value block.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cod/cod.hpp"

namespace cod::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_verification_failed = 2;
inline constexpr int exit_nonexistence = 3;
inline constexpr int exit_resource_limit = 4;

namespace detail {

inline Design load_design(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_design(buf.str());
}

inline std::string status(const std::optional<bool>& v) {
    if (!v.has_value()) return "skipped";
    return *v ? "ok" : "FAILED";
}

inline std::string machine_status(const std::optional<bool>& v) {
    if (!v.has_value()) return "skip";
    return *v ? "pass" : "fail";
}

inline int cmd_verify(const std::string& path, bool cod_only, bool machine, std::ostream& out) {
    Design d = load_design(path);
    BcodReport rep = is_bcod(d);

    std::optional<bool> delay_ok;
    DelayBoundReport delay;
    if (rep.ok) {
        delay = verify_delay_bound(d);
        delay_ok = delay.ok;
    }

    if (machine) {
        out << "cod=" << machine_status(rep.cod_ok) << "\n";
        out << "dims=" << machine_status(rep.dims_ok) << "\n";
        out << "row_zeros=" << machine_status(rep.row_zeros_ok) << "\n";
        out << "conjugation=" << machine_status(rep.conj_separated) << "\n";
        out << "counts=" << machine_status(rep.counts_ok) << "\n";
        out << "skew=" << machine_status(rep.skew_ok) << "\n";
        out << "delay_bound=" << machine_status(delay_ok) << "\n";
        out << "verdict=" << (rep.ok ? "bcod" : rep.cod_ok ? "cod" : "invalid") << "\n";
    } else {
        out << "orthogonality: " << (rep.cod_ok ? "ok" : "FAILED") << "\n";
        for (const CodIssue& v : rep.cod.violations) {
            if (v.col_a == v.col_b)
                out << "  column " << v.col_a + 1 << ": " << v.detail << "\n";
            else
                out << "  columns (" << v.col_a + 1 << "," << v.col_b + 1 << "): " << v.detail << "\n";
        }
        for (const std::string& w : rep.cod.warnings) out << "  warning: " << w << "\n";
        out << "dimensions (p = 2k, n even): " << (rep.dims_ok ? "ok" : "FAILED") << "\n";
        out << "row zeros (m per row): " << status(rep.row_zeros_ok) << "\n";
        out << "conjugation separation: " << status(rep.conj_separated) << "\n";
        out << "occurrence counts (m plain, m conjugated): " << status(rep.counts_ok) << "\n";
        out << "skew blocks (M_j^T = -M_j): " << status(rep.skew_ok) << "\n";
        if (delay_ok.has_value())
            out << "delay bound: ok (p=" << delay.p << ", 2^m=" << delay.required_rows << ")\n";
        else
            out << "delay bound: skipped\n";
        for (const std::string& s : rep.problems) out << "  problem: " << s << "\n";
        if (rep.ok)
            out << "verdict: BCOD [" << d.p << "," << d.n << "," << d.k << "]\n";
        else if (rep.cod_ok)
            out << "verdict: COD [" << d.p << "," << d.n << "," << d.k << "], not balanced\n";
        else
            out << "verdict: not a COD\n";
    }

    if (cod_only) return rep.cod_ok ? exit_ok : exit_verification_failed;
    return (rep.ok && delay_ok.value_or(false)) ? exit_ok : exit_verification_failed;
}

inline int cmd_construct(int m, const std::string& output, std::ostream& out, std::ostream& err) {
    Design d = construct_bcod(m);
    std::string text = serialize_design(d) + "\n";
    if (output.empty()) {
        out << text;
        return exit_ok;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << output << "'\n";
        return exit_usage;
    }
    f << text;
    return exit_ok;
}

inline int cmd_reduce(const std::string& path, int var, bool emit_ops, std::ostream& out,
                      std::ostream& err) {
    Design d = load_design(path);
    BcodReport rep = is_bcod(d);
    if (!rep.ok) {
        err << "error: input is not a BCOD\n";
        for (const std::string& s : rep.problems) err << "  " << s << "\n";
        return exit_verification_failed;
    }
    if (var < 1 || var > d.k) {
        err << "error: variable index must be in [1, " << d.k << "]\n";
        return exit_usage;
    }

    std::vector<EquivOp> ops;
    Design current = d;
    bool was_standard = is_standard_form(d).has_value();
    if (!was_standard) {
        Reduction std_red = standardize(d);
        ops = std_red.ops;
        current = std_red.design;
        err << "note: input not in standard form; standardized first\n";
    }
    Reduction red = to_bj_form(current, var);
    ops.insert(ops.end(), red.ops.begin(), red.ops.end());

    if (was_standard && !is_column_restricted(ops, d.n / 2)) {
        err << "error: reduction emitted a non-column-restricted sequence\n";
        return exit_verification_failed;
    }
    if (emit_ops) {
        for (const EquivOp& op : ops) out << format_op(op) << "\n";
        out << "\n";
    }
    out << serialize_design(red.design) << "\n";
    return exit_ok;
}

inline int cmd_patterns(const std::string& path, std::ostream& out, std::ostream& err) {
    Design d = load_design(path);
    if (d.n % 2 != 0) {
        err << "error: patterns require an even number of columns\n";
        return exit_verification_failed;
    }
    for (int r = 0; r < d.p; ++r) {
        ZeroPattern zp = zero_pattern(d, r);
        LeftPattern lp = left_pattern(d, r);
        RowClass cls = row_class(d, r);
        std::string conj = cls == RowClass::NonConjugated ? "non"
                           : cls == RowClass::Conjugated  ? "conj"
                           : cls == RowClass::Mixed       ? "mixed"
                                                          : "empty";
        std::string comp = "-";
        try {
            comp = std::to_string(find_complement(d, r) + 1);
        } catch (const std::exception&) {
        }
        out << "row " << r + 1 << ": pattern=" << zp.str() << " left=" << lp.str()
            << " weight=" << lp.weight() << " conj=" << conj << " complement=" << comp << "\n";
    }
    return exit_ok;
}

inline int cmd_complement(const std::string& path, std::optional<int> row, std::ostream& out,
                          std::ostream& err) {
    Design d = load_design(path);
    try {
        if (row.has_value()) {
            if (*row < 1 || *row > d.p) {
                err << "error: row index must be in [1, " << d.p << "]\n";
                return exit_usage;
            }
            out << "complement=" << find_complement(d, *row - 1) + 1 << "\n";
        } else {
            for (int r = 0; r < d.p; ++r)
                out << "row " << r + 1 << ": complement=" << find_complement(d, r) + 1 << "\n";
        }
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
    return exit_ok;
}

inline int cmd_atoms(const std::string& path, std::ostream& out) {
    Design d = load_design(path);
    std::vector<Component> comps = atomic_components(d);
    auto join = [](const std::vector<int>& v, int shift) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i] + shift);
        }
        return s;
    };
    for (size_t c = 0; c < comps.size(); ++c)
        out << "component " << c + 1 << ": vars=" << join(comps[c].vars, 0)
            << " rows=" << join(comps[c].rows, 1) << "\n";
    return exit_ok;
}

inline int cmd_bound(int n, std::ostream& out) {
    std::string line;
    if (n % 2 == 0) line += "bcod_lower=" + std::to_string(1ull << (n / 2)) + " ";
    line += "rod_nu=" + std::to_string(nu(n));
    line += " maxrate_delay=" + std::to_string(max_rate_delay_bound(n));
    out << line << "\n";
    return exit_ok;
}

inline int cmd_search(const SearchConfig& cfg, bool allow_long, bool machine, std::ostream& out,
                      std::ostream& err) {
    if (cfg.n > 6) {
        err << "error: certified search supports n <= 6\n";
        return exit_usage;
    }
    if (cfg.n > 4 && !allow_long) {
        err << "error: n=" << cfg.n << " searches can run long; pass --allow-long to proceed\n";
        return exit_usage;
    }
    SearchResult res = search_min_delay(cfg);
    switch (res.outcome) {
        case SearchOutcome::Found:
            if (machine) out << "result=found p=" << res.design->p << "\n";
            out << serialize_design(*res.design) << "\n";
            return exit_ok;
        case SearchOutcome::NoneExists:
            if (machine)
                out << "result=none certified_p_max=" << res.certified_p_max << "\n";
            else
                out << "no balanced design with n=" << cfg.n << " columns and p <= " << cfg.p_max
                    << " rows exists (certified by exhaustive search)\n";
            return exit_nonexistence;
        default:
            if (machine) out << "result=limit\n";
            err << "error: node budget exhausted before the search could be completed\n";
            return exit_resource_limit;
    }
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic toolkit for complex orthogonal designs", "codtool"};
    app.require_subcommand(1);

    std::string file, output;
    bool machine = false, cod_only = false, emit_ops = false, certify = false, allow_long = false;
    int m = 1, var = 1, n = 2;
    SearchConfig cfg;

    CLI::App* verify = app.add_subcommand("verify", "Check the orthogonality and balance axioms");
    verify->add_option("file", file, "design file")->required();
    verify->add_flag("--machine", machine, "stable key=value output");
    verify->add_flag("--cod", cod_only, "require only orthogonality, not balance");

    CLI::App* construct = app.add_subcommand("construct", "Emit a delay-2^m balanced design");
    construct->add_option("--m", m, "half-width m (n = 2m)")->required()->check(CLI::Range(1, max_construct_m));
    construct->add_option("-o,--output", output, "write to file instead of stdout");

    CLI::App* reduce = app.add_subcommand("reduce", "Transform a standard-form design into B_j form");
    reduce->add_option("file", file, "design file")->required();
    reduce->add_option("--var", var, "target variable j")->required();
    reduce->add_flag("--emit-ops", emit_ops, "print the operation script before the design");

    CLI::App* patterns = app.add_subcommand("patterns", "Print zero/left patterns per row");
    patterns->add_option("file", file, "design file")->required();

    CLI::App* complement = app.add_subcommand("complement", "Find complement rows");
    complement->add_option("file", file, "design file")->required();
    int row_arg = 0;
    CLI::Option* row_opt = complement->add_option("--row", row_arg, "1-based row index");

    CLI::App* atoms = app.add_subcommand("atoms", "Print the atomic components");
    atoms->add_option("file", file, "design file")->required();

    CLI::App* bound = app.add_subcommand("bound", "Print reference delay bounds for n antennas");
    bound->add_option("--n", n, "antenna count")->required()->check(CLI::Range(2, 64));

    CLI::App* search = app.add_subcommand("search", "Exhaustive minimal-delay search");
    search->add_option("--n", cfg.n, "columns")->required();
    search->add_option("--max-p", cfg.p_max, "largest row count to try")->required();
    search->add_flag("--certify", certify, "treat absence as a certified nonexistence result");
    search->add_option("--workers", cfg.parallel_width, "worker threads (0 = hardware)");
    search->add_option("--node-budget", cfg.node_budget, "search node budget");
    search->add_flag("--allow-long", allow_long, "permit n = 6 (can run long)");
    search->add_flag("--machine", machine, "stable key=value output");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }
    (void)certify;  // absence is always certified; the flag documents intent

    try {
        if (verify->parsed()) return detail::cmd_verify(file, cod_only, machine, out);
        if (construct->parsed()) return detail::cmd_construct(m, output, out, err);
        if (reduce->parsed()) return detail::cmd_reduce(file, var, emit_ops, out, err);
        if (patterns->parsed()) return detail::cmd_patterns(file, out, err);
        if (complement->parsed())
            return detail::cmd_complement(
                file, row_opt->count() ? std::optional<int>(row_arg) : std::nullopt, out, err);
        if (atoms->parsed()) return detail::cmd_atoms(file, out);
        if (bound->parsed()) return detail::cmd_bound(n, out);
        if (search->parsed()) return detail::cmd_search(cfg, allow_long, machine, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
    err << "error: no subcommand\n";
    return exit_usage;
}

}  // namespace cod::cli
