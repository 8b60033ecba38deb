// hsiao: generate, verify, encode/decode and stress Hsiao SEC-DED check
// matrices from the command line.
//
// Exit codes: 0 success, 1 semantic failure (verification or detection),
// 2 malformed input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hsiao/codec.hpp"
#include "hsiao/matrix_io.hpp"
#include "hsiao/oracle.hpp"

namespace {

constexpr const char* kToolVersion = "hsiao/1.0.0";
constexpr std::int64_t kMaxDataBits = 1 << 20;
constexpr std::int64_t kMaxCells = 1'000'000'000;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_all(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << text;
}

hsiao::MergeStrategy parse_strategy(const std::string& text) {
    const auto strategy = hsiao::merge_strategy_from_string(text);
    if (!strategy) throw InputError("unknown strategy: " + text);
    return *strategy;
}

hsiao::MatrixFormat parse_format(const std::string& text) {
    const auto format = hsiao::matrix_format_from_string(text);
    if (!format) throw InputError("unknown format: " + text);
    return *format;
}

hsiao::Bits parse_bit_string(const std::string& text, std::int64_t expected,
                             const char* what) {
    if (static_cast<std::int64_t>(text.size()) != expected) {
        std::ostringstream os;
        os << what << " must be exactly " << expected << " bits, got " << text.size();
        throw InputError(os.str());
    }
    hsiao::Bits bits;
    bits.reserve(text.size());
    for (const char c : text) {
        if (c != '0' && c != '1')
            throw InputError(std::string(what) + " may contain only '0' and '1'");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

std::string bits_to_string(const hsiao::Bits& bits) {
    std::string out;
    out.reserve(bits.size());
    for (const auto b : bits) out += b ? '1' : '0';
    return out;
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::string current;
    for (const char c : text) {
        if (c == '\n') {
            if (!current.empty()) words.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) words.push_back(current);
    return words;
}

void check_data_bits(std::int64_t k) {
    if (k < 1 || k > kMaxDataBits) {
        std::ostringstream os;
        os << "k must be in 1.." << kMaxDataBits << ", got " << k;
        throw InputError(os.str());
    }
}

// Matrix either generated from --k or parsed from --in; loaded matrices must
// satisfy the structural check-matrix requirements before use.
hsiao::CheckMatrix load_check_matrix(std::optional<std::int64_t> k,
                                     const std::string& in_path,
                                     hsiao::MatrixFormat format,
                                     hsiao::MergeStrategy strategy) {
    if (k.has_value()) {
        check_data_bits(*k);
        return hsiao::build_check_matrix(*k, strategy);
    }
    if (in_path.empty())
        throw InputError("either --k or --in is required");
    hsiao::BitMatrix mat = hsiao::parse_matrix(read_all(in_path), format);
    const auto report = hsiao::verify_check_matrix(mat);
    if (!report.ok())
        throw InputError("input matrix is not a valid check matrix "
                         "(odd distinct columns, row spread <= 1 required)");
    auto H = hsiao::check_matrix_from(std::move(mat));
    if (H.data_bits() < 1) throw InputError("input matrix has no data columns");
    return H;
}

std::string join_int64(const std::vector<std::int64_t>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

// --- subcommands ----------------------------------------------------------

struct GenOptions {
    std::int64_t k = 0;
    std::string strategy = "shift";
    std::string format = "txt";
    std::string out = "-";
};

int cmd_gen(const GenOptions& opt) {
    check_data_bits(opt.k);
    const auto strategy = parse_strategy(opt.strategy);
    const auto format = parse_format(opt.format);
    const auto plan = hsiao::plan_blocks(opt.k);
    if (plan.total_cols * plan.check_bits > kMaxCells)
        throw InputError("output matrix would exceed the size limit");
    const auto H = hsiao::build_check_matrix(opt.k, strategy);

    std::ostringstream blocks;
    for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
        if (i > 0) blocks << ';';
        blocks << '(' << plan.blocks[i].rows << ',' << plan.blocks[i].weight << ','
               << plan.blocks[i].cols << ')';
    }
    std::vector<std::string> comments{
        "k=" + std::to_string(plan.data_bits),
        "R=" + std::to_string(plan.check_bits),
        "n=" + std::to_string(plan.total_cols),
        "I=" + std::to_string(plan.partial_index),
        "m=" + std::to_string(plan.partial_cols),
        "blocks=" + blocks.str(),
        "parity_positions=" + join_int64(H.parity_positions, ','),
        "total_ones=" + std::to_string(H.matrix.total_ones()),
        "strategy=" + hsiao::to_string(strategy),
        std::string("tool=") + kToolVersion,
    };
    write_all(opt.out, hsiao::render_matrix(H.matrix, format, comments));
    return 0;
}

struct DeltaOptions {
    int r = 0;
    int j = 0;
    std::int64_t m = 0;
    std::string strategy = "shift";
    std::string format = "txt";
    std::string out = "-";
};

int cmd_delta(const DeltaOptions& opt) {
    const auto strategy = parse_strategy(opt.strategy);
    const auto format = parse_format(opt.format);
    const hsiao::DeltaSpec spec{opt.r, opt.j, opt.m};
    if (auto why = hsiao::l_condition_violation(spec))
        throw InputError("infeasible spec " + hsiao::to_string(spec) + ": " + *why);
    if (static_cast<std::int64_t>(opt.r) * opt.m > kMaxCells)
        throw InputError("output matrix would exceed the size limit");
    const auto mat = hsiao::generate_delta(spec, strategy);
    std::vector<std::string> comments{
        "spec=(" + std::to_string(opt.r) + "," + std::to_string(opt.j) + "," +
            std::to_string(opt.m) + ")",
        "strategy=" + hsiao::to_string(strategy),
        "total_ones=" + std::to_string(mat.total_ones()),
        std::string("tool=") + kToolVersion,
    };
    write_all(opt.out, hsiao::render_matrix(mat, format, comments));
    return 0;
}

struct VerifyOptions {
    std::string path = "-";
    std::optional<int> j;
    std::string format = "txt";
    std::string out = "-";
};

int cmd_verify(const VerifyOptions& opt) {
    const auto format = parse_format(opt.format);
    const auto mat = hsiao::parse_matrix(read_all(opt.path), format);

    std::ostringstream os;
    os << "rows=" << mat.rows() << '\n' << "cols=" << mat.cols() << '\n';
    bool pass = false;
    if (opt.j.has_value()) {
        const auto rep = hsiao::verify_balanced(mat, *opt.j);
        pass = rep.balanced();
        os << "mode=balance\n"
           << "column_weight=" << *opt.j << '\n'
           << "column_weight_ok=" << (rep.column_weight_ok ? "true" : "false") << '\n'
           << "columns_distinct=" << (rep.columns_distinct ? "true" : "false") << '\n'
           << "max_row_delta=" << rep.max_row_delta << '\n'
           << "heavy_rows_on_top=" << (rep.heavy_rows_on_top ? "true" : "false") << '\n'
           << "row_weights=" << join_int64(rep.row_weights, ',') << '\n';
    } else {
        const auto rep = hsiao::verify_check_matrix(mat);
        pass = rep.ok();
        os << "mode=hsiao\n"
           << "odd_column_weights=" << (rep.odd_column_weights ? "true" : "false") << '\n'
           << "columns_distinct=" << (rep.columns_distinct ? "true" : "false") << '\n'
           << "max_row_delta=" << rep.max_row_delta << '\n'
           << "total_ones=" << rep.total_ones << '\n'
           << "row_weights=" << join_int64(rep.row_weights, ',') << '\n';
    }
    os << "result=" << (pass ? "pass" : "fail") << '\n';
    write_all(opt.out, os.str());
    return pass ? 0 : 1;
}

struct CodecOptions {
    std::optional<std::int64_t> k;
    std::string in_path;
    std::string strategy = "shift";
    std::string format = "txt";
    std::string word;
    std::string out = "-";
};

int cmd_encode(const CodecOptions& opt) {
    const hsiao::Codec codec(load_check_matrix(opt.k, opt.in_path, parse_format(opt.format),
                                               parse_strategy(opt.strategy)));
    const auto words =
        opt.word.empty() ? split_words(read_all("-")) : std::vector<std::string>{opt.word};
    if (words.empty()) throw InputError("no data words given");
    std::string output;
    for (const auto& text : words) {
        const auto data = parse_bit_string(text, codec.data_bits(), "data word");
        output += bits_to_string(codec.encode(data));
        output += '\n';
    }
    write_all(opt.out, output);
    return 0;
}

int cmd_decode(const CodecOptions& opt) {
    const hsiao::Codec codec(load_check_matrix(opt.k, opt.in_path, parse_format(opt.format),
                                               parse_strategy(opt.strategy)));
    const auto words =
        opt.word.empty() ? split_words(read_all("-")) : std::vector<std::string>{opt.word};
    if (words.empty()) throw InputError("no code words given");
    std::string output;
    bool detected = false;
    for (const auto& text : words) {
        const auto word = parse_bit_string(text, codec.word_bits(), "code word");
        const auto outcome = codec.decode(word);
        output += hsiao::to_string(outcome.kind);
        if (outcome.position) output += ":" + std::to_string(*outcome.position);
        if (outcome.data) output += " " + bits_to_string(*outcome.data);
        output += '\n';
        detected = detected || outcome.kind == hsiao::DecodeKind::double_error ||
                   outcome.kind == hsiao::DecodeKind::multi_error;
    }
    write_all(opt.out, output);
    return detected ? 1 : 0;
}

struct BenchOptions {
    std::string rows_range;
    std::optional<int> j;
    std::optional<std::int64_t> m;
    std::string strategies = "shift,flip";
    std::string out = "-";
};

std::pair<int, int> parse_rows_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int single = std::stoi(text);
            return {single, single};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw InputError("bad --r range: " + text);
    }
}

int cmd_bench(const BenchOptions& opt) {
    const auto [lo, hi] = parse_rows_range(opt.rows_range);
    std::vector<hsiao::MergeStrategy> strategies;
    std::stringstream ss(opt.strategies);
    std::string token;
    while (std::getline(ss, token, ',')) strategies.push_back(parse_strategy(token));
    const auto report = hsiao::run_scaling_grid(lo, hi, opt.j, opt.m, strategies);
    write_all(opt.out, hsiao::to_csv(report));
    return 0;
}

struct InjectOptions {
    std::int64_t k = 0;
    std::string mode = "exhaustive";
    std::uint64_t trials = 256;
    std::uint64_t seed = 1;
    std::string strategy = "shift";
    std::string format = "txt";
    std::string out = "-";
};

int cmd_inject(const InjectOptions& opt) {
    check_data_bits(opt.k);
    const auto mode = hsiao::fault_mode_from_string(opt.mode);
    if (!mode) throw InputError("unknown mode: " + opt.mode);
    const auto format = opt.format;
    if (format != "txt" && format != "csv")
        throw InputError("inject supports --format txt or csv");
    const auto report =
        hsiao::inject_faults(opt.k, *mode, opt.trials, opt.seed, parse_strategy(opt.strategy));
    write_all(opt.out, format == "txt" ? hsiao::to_kv(report) : hsiao::to_csv(report));
    return report.miscorrections == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hsiao SEC-DED check matrix toolkit"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Build the check matrix for k data bits");
    gen_cmd->add_option("--k", gen.k, "Data bits")->required();
    gen_cmd->add_option("--strategy", gen.strategy, "Merge strategy: flip or shift");
    gen_cmd->add_option("--format", gen.format, "Output format: txt, csv or hex");
    gen_cmd->add_option("--out", gen.out, "Output path, '-' for stdout");

    DeltaOptions delta;
    auto* delta_cmd =
        app.add_subcommand("delta", "Generate a balanced matrix with R rows, column "
                                    "weight J and m distinct columns");
    delta_cmd->add_option("--r", delta.r, "Rows")->required();
    delta_cmd->add_option("--j", delta.j, "Column weight")->required();
    delta_cmd->add_option("--m", delta.m, "Columns")->required();
    delta_cmd->add_option("--strategy", delta.strategy, "Merge strategy: flip or shift");
    delta_cmd->add_option("--format", delta.format, "Output format: txt, csv or hex");
    delta_cmd->add_option("--out", delta.out, "Output path, '-' for stdout");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Check a matrix file: with --j, fixed-weight balance; without it, "
                  "the check-matrix conditions (odd distinct columns, row spread <= 1)");
    verify_cmd->add_option("path", verify.path, "Matrix file, '-' for stdin");
    int verify_j = -1;
    auto* verify_j_opt = verify_cmd->add_option("--j", verify_j, "Expected column weight");
    verify_cmd->add_option("--format", verify.format, "Input format: txt, csv or hex");
    verify_cmd->add_option("--out", verify.out, "Report path, '-' for stdout");

    CodecOptions encode;
    auto* encode_cmd = app.add_subcommand(
        "encode", "Encode k-bit data words into n-bit code words (one per line)");
    std::int64_t encode_k = -1;
    auto* encode_k_opt = encode_cmd->add_option("--k", encode_k, "Data bits");
    encode_cmd->add_option("--in", encode.in_path, "Check matrix file to use instead of --k");
    encode_cmd->add_option("--strategy", encode.strategy, "Merge strategy for --k");
    encode_cmd->add_option("--format", encode.format, "Matrix file format for --in");
    encode_cmd->add_option("data", encode.word, "Data bits; read from stdin when omitted");
    encode_cmd->add_option("--out", encode.out, "Output path, '-' for stdout");

    CodecOptions decode;
    auto* decode_cmd = app.add_subcommand(
        "decode", "Decode n-bit words; prints kind[:position] and the payload");
    std::int64_t decode_k = -1;
    auto* decode_k_opt = decode_cmd->add_option("--k", decode_k, "Data bits");
    decode_cmd->add_option("--in", decode.in_path, "Check matrix file to use instead of --k");
    decode_cmd->add_option("--strategy", decode.strategy, "Merge strategy for --k");
    decode_cmd->add_option("--format", decode.format, "Matrix file format for --in");
    decode_cmd->add_option("word", decode.word, "Code word; read from stdin when omitted");
    decode_cmd->add_option("--out", decode.out, "Output path, '-' for stdout");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Measure generation cost over a spec grid. CSV columns: "
                 "R,J,m,strategy,element_writes,row_moves,recursion_depth,ratio; "
                 "ratio = element_writes / (R*m*(log2(m)+1))");
    bench_cmd->add_option("--r", bench.rows_range, "Rows, single value or lo..hi")->required();
    int bench_j = -1;
    auto* bench_j_opt = bench_cmd->add_option("--j", bench_j, "Pin the column weight");
    std::int64_t bench_m = -1;
    auto* bench_m_opt = bench_cmd->add_option("--m", bench_m, "Pin the column count");
    bench_cmd->add_option("--strategy", bench.strategies,
                          "Comma-separated strategies, default shift,flip");
    bench_cmd->add_option("--out", bench.out, "Output path, '-' for stdout");

    InjectOptions inject;
    auto* inject_cmd = app.add_subcommand(
        "inject", "Inject single and double bit errors and tally decode outcomes");
    inject_cmd->add_option("--k", inject.k, "Data bits")->required();
    inject_cmd->add_option("--mode", inject.mode, "exhaustive or random");
    inject_cmd->add_option("--trials", inject.trials,
                           "random: fault count; exhaustive with k > 12: sampled "
                           "code words; 0 yields an empty report");
    inject_cmd->add_option("--seed", inject.seed, "PRNG seed (std::mt19937_64)");
    inject_cmd->add_option("--strategy", inject.strategy, "Merge strategy");
    inject_cmd->add_option("--format", inject.format, "Report format: txt or csv");
    inject_cmd->add_option("--out", inject.out, "Output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(gen_cmd)) return cmd_gen(gen);
        if (app.got_subcommand(delta_cmd)) return cmd_delta(delta);
        if (app.got_subcommand(verify_cmd)) {
            if (verify_j_opt->count() > 0) verify.j = verify_j;
            return cmd_verify(verify);
        }
        if (app.got_subcommand(encode_cmd)) {
            if (encode_k_opt->count() > 0) encode.k = encode_k;
            return cmd_encode(encode);
        }
        if (app.got_subcommand(decode_cmd)) {
            if (decode_k_opt->count() > 0) decode.k = decode_k;
            return cmd_decode(decode);
        }
        if (app.got_subcommand(bench_cmd)) {
            if (bench_j_opt->count() > 0) bench.j = bench_j;
            if (bench_m_opt->count() > 0) bench.m = bench_m;
            return cmd_bench(bench);
        }
        if (app.got_subcommand(inject_cmd)) return cmd_inject(inject);
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
