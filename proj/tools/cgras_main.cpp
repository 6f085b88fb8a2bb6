// Command-line front end for the rate-region generator.
#include "cgras/render.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace cgras;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string fixture;
    std::string file;
    bool auto_close = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string scheme_text(const Source& src) {
    if (!src.fixture.empty() && !src.file.empty()) throw UsageError("give either --fixture or --file, not both");
    if (!src.fixture.empty()) {
        try {
            return fixture_text(src.fixture);
        } catch (const KeyError& e) {
            throw UsageError(e.what());
        }
    }
    if (!src.file.empty()) return src.file == "-" ? read_file("/dev/stdin") : read_file(src.file);
    throw UsageError("a scheme is required: --fixture NAME or --file PATH");
}

// A compare operand is a fixture name unless a file of that name exists.
std::string operand_text(const std::string& arg) {
    std::ifstream probe(arg);
    if (probe) return read_file(arg);
    try {
        return fixture_text(arg);
    } catch (const KeyError&) {
        throw UsageError("not a file or fixture: " + arg);
    }
}

RenderStyle parse_style(const std::string& f) {
    if (f == "latex") return RenderStyle::Latex;
    if (f == "json") return RenderStyle::Json;
    return RenderStyle::Text;
}

bool use_color() {
    const char* c = std::getenv("CGRAS_COLOR");
    if (c && std::string(c) == "never") return false;
    return isatty(STDOUT_FILENO) != 0;
}

std::string paint(const std::string& s, bool ok) {
    if (!use_color()) return s;
    return (ok ? "\033[32m" : "\033[31m") + s + "\033[0m";
}

struct ModeFlags {
    std::string enc, dec, split;
    bool prune = false, no_prune = false;

    AssembleOptions apply(AssembleOptions o) const {
        if (!enc.empty()) o.enc = enc == "mcl" ? EncoderMode::MCL : EncoderMode::CL;
        if (!dec.empty()) o.dec = dec == "sd" ? DecoderMode::SD : DecoderMode::JD;
        if (!split.empty()) o.split = split == "free" ? SplitMode::Free : SplitMode::Fixed;
        if (prune) o.prune = true;
        if (no_prune) o.prune = false;
        return o;
    }
};

void add_source(CLI::App* cmd, Source& src) {
    cmd->add_option("--fixture", src.fixture, "Built-in scheme name");
    cmd->add_option("--file", src.file, "Scheme JSON file ('-' for stdin)");
    cmd->add_flag("--auto-close", src.auto_close, "Add binning edges until the graph assumptions hold");
}

void add_modes(CLI::App* cmd, ModeFlags& m, bool with_split) {
    cmd->add_option("--enc", m.enc, "Encoder bound: cl or mcl")->check(CLI::IsMember({"cl", "mcl"}));
    cmd->add_option("--dec", m.dec, "Decoder bound: sd or jd")->check(CLI::IsMember({"sd", "jd"}));
    cmd->add_flag("--prune", m.prune, "Drop decoding bounds for error sets without intended messages");
    cmd->add_flag("--no-prune", m.no_prune, "Keep every decoding bound");
    if (with_split)
        cmd->add_option("--split", m.split, "Rate split: fixed or free")->check(CLI::IsMember({"fixed", "free"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate region generator for chain-graph random coding schemes"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format: text, latex or json")
        ->check(CLI::IsMember({"text", "latex", "json"}))
        ->capture_default_str();

    Source src;
    ModeFlags modes;
    std::string pmf_path;
    std::vector<std::string> fixes;
    std::vector<std::string> operands;
    std::string fixture_name;

    auto* c_list = app.add_subcommand("fixtures", "List built-in schemes");
    auto* c_show = app.add_subcommand("show", "Print a scheme in canonical JSON form");
    add_source(c_show, src);
    auto* c_validate = app.add_subcommand("validate", "Check edge legality and the graph assumptions");
    add_source(c_validate, src);
    auto* c_adg = app.add_subcommand("adg", "Acyclic orientation and codebook factorization");
    add_source(c_adg, src);
    auto* c_tables = app.add_subcommand("tables", "Admissible encoding and decoding error sets");
    add_source(c_tables, src);
    auto* c_bounds = app.add_subcommand("bounds", "Binning and decoding inequalities before elimination");
    add_source(c_bounds, src);
    add_modes(c_bounds, modes, false);
    auto* c_region = app.add_subcommand("region", "Achievable region over the original message rates");
    add_source(c_region, src);
    add_modes(c_region, modes, true);
    auto* c_eval = app.add_subcommand("eval", "Numeric region on a joint distribution");
    add_source(c_eval, src);
    add_modes(c_eval, modes, true);
    c_eval->add_option("--pmf", pmf_path, "Distribution JSON file")->required();
    c_eval->add_option("--fix", fixes, "Fix a rate, e.g. 'R({1,2}->1)=0'");
    auto* c_compare = app.add_subcommand("compare", "Mutual implication of two schemes' regions");
    c_compare->add_option("schemes", operands, "Two fixture names or scheme files")->expected(2)->required();
    add_modes(c_compare, modes, true);
    (void)fixture_name;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    RenderStyle style = parse_style(format);

    try {
        if (*c_list) {
            for (const auto& n : fixture_names()) std::cout << n << "\n";
            return 0;
        }
        if (*c_compare) {
            Scheme a = parse_scheme(operand_text(operands[0]), true);
            Scheme b = parse_scheme(operand_text(operands[1]), true);
            Region ra = assemble_region(equivalent_adg(a.graph), a.split, modes.apply(a.options));
            Region rb = assemble_region(equivalent_adg(b.graph), b.split, modes.apply(b.options));
            bool ab = region_implies(ra, rb);
            bool ba = region_implies(rb, ra);
            std::string verdict = ab && ba ? "equivalent" : ab ? "first inside second" : ba ? "second inside first" : "incomparable";
            if (style == RenderStyle::Json) {
                std::cout << "{\"first_implies_second\": " << (ab ? "true" : "false")
                          << ", \"second_implies_first\": " << (ba ? "true" : "false") << ", \"verdict\": \"" << verdict
                          << "\"}\n";
            } else {
                std::cout << verdict << "\n";
            }
            return 0;
        }
        std::string text = scheme_text(src);
        if (*c_validate) {
            Scheme s = parse_scheme(text, src.auto_close);
            AssumptionReport rep = check_assumptions(s.graph);
            std::string out = render_assumptions(rep, style);
            if (style == RenderStyle::Text) {
                std::cout << out << "result: " << paint(rep.ok() ? "valid" : "invalid", rep.ok()) << "\n";
            } else {
                std::cout << out;
            }
            return rep.ok() ? 0 : 1;
        }
        Scheme s = parse_scheme(text, src.auto_close);
        if (*c_show) {
            std::cout << serialize_scheme(s);
            return 0;
        }
        OrientedCgras g = equivalent_adg(s.graph);
        AssembleOptions opt = modes.apply(s.options);
        if (*c_adg) {
            std::cout << render_adg(g, style);
        } else if (*c_tables) {
            std::cout << render_tables(g, style);
        } else if (*c_bounds) {
            std::cout << render_bounds(scheme_bounds(g, opt), style);
        } else if (*c_region) {
            std::cout << render_region(assemble_region(g, s.split, opt), style);
        } else if (*c_eval) {
            JointPmf pmf = parse_pmf_json(read_file(pmf_path));
            NumericRegion nr = instantiate_region(assemble_region(g, s.split, opt), pmf);
            for (const auto& f : fixes) {
                auto eq = f.find('=');
                if (eq == std::string::npos) throw UsageError("--fix expects VAR=VALUE");
                nr = fix_variable(nr, parse_rate_var(f.substr(0, eq)), std::stod(f.substr(eq + 1)));
            }
            nr = remove_redundant_numeric(nr);
            if (nr.variables.size() <= 3) {
                auto verts = enumerate_vertices(nr);
                std::cout << render_numeric(nr, &verts, style);
            } else {
                std::cout << render_numeric(nr, nullptr, style);
            }
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SchemeError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
