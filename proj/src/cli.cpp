#include "coamoeba/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "coamoeba/cubical.hpp"
#include "coamoeba/errors.hpp"
#include "coamoeba/homology.hpp"
#include "coamoeba/render.hpp"
#include "coamoeba/report.hpp"

namespace coamoeba {

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("InvalidInput: cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("InvalidJson: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("InvalidInput: cannot write '" + path + "'");
    f << data;
}

std::optional<std::size_t> origin_option(long origin, std::size_t terms) {
    if (origin == 0) return std::nullopt;
    if (origin < 1 || static_cast<std::size_t>(origin) > terms)
        throw IndexOutOfRange("IndexOutOfRange: --origin must be between 1 and " + std::to_string(terms));
    return static_cast<std::size_t>(origin - 1);
}

/// "16" is a target rounded up per axis; "16,24" gives each axis explicitly.
std::vector<long> parse_resolution(const std::string& text, const std::vector<Integer>& D) {
    std::vector<long> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            parts.push_back(v);
        } catch (const std::logic_error&) {
            throw BadResolution("BadResolution: '" + text + "' is not a resolution");
        }
    }
    if (parts.size() == 1) {
        if (parts[0] < 1) throw BadResolution("BadResolution: resolution must be positive");
        return resolution_from_target(parts[0], D);
    }
    if (parts.size() != D.size())
        throw BadResolution("BadResolution: expected 1 or " + std::to_string(D.size()) + " values");
    return parts;
}

std::string tsv_clean(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    return s;
}

struct BatchRow {
    std::string text;
    bool failed = false;
    bool invalid = false;
};

BatchRow batch_row(const std::string& line, std::size_t line_no) {
    std::string id = "line-" + std::to_string(line_no);
    auto fail = [&](const std::string& message, bool invalid) {
        return BatchRow{tsv_clean(id) + "\t\t\t\t\t\t\t\t\t" + tsv_clean(message), true, invalid};
    };
    try {
        const nlohmann::json j = parse_json(line);
        if (j.is_object() && j.contains("id")) {
            if (!j["id"].is_string()) return fail("InvalidJson: 'id' must be a string", true);
            id = j["id"].get<std::string>();
        }
        const AnalysisReport r = analyze(spec_from_json(j));
        std::ostringstream os;
        os << tsv_clean(id) << '\t' << r.model.n << '\t';
        for (std::size_t i = 0; i < r.snf.D.size(); ++i) os << (i ? "," : "") << r.snf.D[i];
        os << '\t' << r.partition.I00.size() << '\t' << r.rank_closed << '\t' << r.real_part.component_count << '\t'
           << r.verdict.defect << '\t' << (r.verdict.galois_maximal_coamoeba ? "true" : "false") << '\t'
           << (r.verdict.galois_maximal_CX ? "true" : "false") << '\t';
        return BatchRow{os.str(), false, false};
    } catch (const InvalidInput& e) {
        return fail(e.what(), true);
    } catch (const std::exception& e) {
        return fail(e.what(), false);
    }
}

constexpr const char* kBatchHeader =
    "id\tn\tD\tI00\trank\tcomponents\tdefect\tgalois_maximal_coamoeba\tgalois_maximal_CX\terror\n";

int cmd_batch(const std::string& input, const std::string& output, unsigned threads, std::ostream& out,
              std::ostream& err) {
    const std::string text = read_input(input);
    std::vector<std::pair<std::string, std::size_t>> lines;
    std::stringstream ss(text);
    std::string line;
    for (std::size_t no = 1; std::getline(ss, line); ++no) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lines.emplace_back(line, no);
    }

    std::vector<BatchRow> rows(lines.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < lines.size(); i = next++) rows[i] = batch_row(lines[i].first, lines[i].second);
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, lines.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string table = kBatchHeader;
    std::size_t failed = 0, invalid = 0;
    for (const auto& r : rows) {
        table += r.text + '\n';
        failed += r.failed;
        invalid += r.invalid;
    }
    write_output(output, table, out);
    if (!rows.empty() && failed == rows.size()) {
        err << "batch: every line failed\n";
        return invalid == rows.size() ? kExitInvalid : kExitConsistency;
    }
    return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& resolution, bool skip_cubical, std::size_t samples,
               bool timings, std::ostream& out, std::ostream& err) {
    const nlohmann::json j = parse_json(read_input(input));
    const NormalizedModel model = normalize(spec_from_json(j));
    VerificationOptions options;
    options.skip_cubical = skip_cubical;
    options.membership_samples = samples;
    if (!resolution.empty() && !skip_cubical) options.resolution = parse_resolution(resolution, snf(model.A).D);
    VerificationRecord rec = verify(model, options);
    if (j.contains("id") && j["id"].is_string()) rec.id = j["id"].get<std::string>();
    out << verification_to_json(rec, timings).dump(2) << '\n';
    if (!rec.ok()) {
        err << "verify: oracles disagree:";
        for (const auto& d : rec.diff()) err << ' ' << d << ';';
        err << '\n';
        return kExitConsistency;
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coamoebas of simplicial real polynomials: homology, conjugation and Galois maximality"};
    app.name("coamoeba");
    app.require_subcommand(1, 1);

    std::string input, output, resolution;
    bool as_text = false, as_json = false, skip_cubical = false, timings = false;
    bool show_centers = false, show_conjugation = false;
    long origin = 0;
    std::size_t samples = 1000;
    unsigned threads = 0;
    int size = 480;

    auto* analyze_cmd = app.add_subcommand("analyze", "Exact homology, conjugation rank and defect");
    analyze_cmd->add_option("input", input, "Spec JSON file, or - for stdin")->required();
    auto* json_flag = analyze_cmd->add_flag("--json", as_json, "JSON report (default)");
    analyze_cmd->add_flag("--text", as_text, "Plain text report")->excludes(json_flag);
    analyze_cmd->add_option("--origin", origin, "1-based term used as the origin vertex");

    auto* verify_cmd = app.add_subcommand("verify", "Cross-check closed forms against brute-force oracles");
    verify_cmd->add_option("input", input, "Spec JSON file, or - for stdin")->required();
    verify_cmd->add_option("--resolution", resolution,
                           "Grid size: one target (rounded up to multiples of 2 d_i) or one value per axis; "
                           "default 8 lcm(2 d_i), capped");
    verify_cmd->add_flag("--skip-cubical", skip_cubical, "Run only the algebraic and membership oracles");
    verify_cmd->add_option("--samples", samples, "Random membership samples")->capture_default_str();
    verify_cmd->add_flag("--timings", timings, "Include wall-clock timings in the record");

    auto* render_cmd = app.add_subcommand("render", "SVG picture of a planar coamoeba");
    render_cmd->add_option("input", input, "Spec JSON file, or - for stdin")->required();
    render_cmd->add_option("-o,--output", output, "Output SVG path (stdout when omitted)");
    render_cmd->add_flag("--show-centers", show_centers, "Mark zonotope centers");
    render_cmd->add_flag("--show-conjugation", show_conjugation, "Draw the conjugation pairing of zonotopes");
    render_cmd->add_option("--size", size, "Pixels per unit")->check(CLI::Range(16, 8192))->capture_default_str();

    auto* batch_cmd = app.add_subcommand("batch", "Summarize a JSON-lines corpus as TSV");
    batch_cmd->add_option("input", input, "Corpus file, one spec per line")->required();
    batch_cmd->add_option("-o,--output", output, "Output TSV path (stdout when omitted)");
    batch_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();

    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form G A H = D of an integer matrix");
    snf_cmd->add_option("matrix", input, "JSON array of rows, or a file containing one")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (analyze_cmd->parsed()) {
            const PolynomialSpec spec = spec_from_json(parse_json(read_input(input)));
            const AnalysisReport r = analyze(spec, origin_option(origin, spec.terms.size()));
            if (as_text)
                out << report_to_text(r);
            else
                out << report_to_json(r).dump(2) << '\n';
            return kExitOk;
        }
        if (verify_cmd->parsed()) return cmd_verify(input, resolution, skip_cubical, samples, timings, out, err);
        if (render_cmd->parsed()) {
            const NormalizedModel model = normalize(spec_from_json(parse_json(read_input(input))));
            RenderOptions options;
            options.show_centers = show_centers;
            options.show_conjugation = show_conjugation;
            options.size = size;
            write_output(output, render_svg(model, options), out);
            return kExitOk;
        }
        if (batch_cmd->parsed()) return cmd_batch(input, output, threads, out, err);
        if (snf_cmd->parsed()) {
            const std::size_t first = input.find_first_not_of(" \t\r\n");
            const std::string text = first != std::string::npos && input[first] == '[' ? input : read_input(input);
            const IntMatrix a = matrix_from_json(parse_json(text));
            if (a.rows() != a.cols()) throw DimensionMismatch("DimensionMismatch: matrix must be square");
            out << snf_to_json(snf(a)).dump(2) << '\n';
            return kExitOk;
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ConsistencyFailure& e) {
        err << "consistency failure: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitConsistency;
    }
    return kExitInvalid;
}

} // namespace coamoeba
