// cnc: command-line front end.
//
// Exit codes: 0 success, 2 well-formed input with a negative verdict,
// 1 input or usage error.

#include <cnc/decoder.hpp>
#include <cnc/encoder.hpp>
#include <cnc/io.hpp>
#include <cnc/random.hpp>
#include <cnc/report.hpp>
#include <cnc/simulator.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegative = 2;

struct Common {
    std::string document;
    std::string report_path;
    std::string format = "text";
};

std::string read_all(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw cnc::Error("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

cnc::CncDocument load(const std::string& path) {
    try {
        return cnc::parse_document(read_all(path));
    } catch (const cnc::ParseError& e) {
        throw cnc::Error(path + ":" + e.what());
    }
}

cnc::ReportFormat report_format(const Common& o) {
    return o.format == "machine" ? cnc::ReportFormat::machine : cnc::ReportFormat::text;
}

// The report goes to --report when given, else to stdout if `to_stdout`.
void emit_report(const cnc::RunReport& r, const Common& o, bool to_stdout) {
    const std::string text = r.render(report_format(o));
    if (!o.report_path.empty()) {
        std::ofstream out(o.report_path, std::ios::binary);
        if (!out) {
            throw cnc::Error("cannot write '" + o.report_path + "'");
        }
        out << text;
    } else if (to_stdout) {
        std::cout << text;
    }
}

std::vector<std::size_t> selected_sinks(const cnc::CncInstance& c, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    if (names.empty()) {
        out = c.graph().sinks();
    } else {
        for (const std::string& n : names) {
            out.push_back(c.graph().sink(n));
        }
    }
    if (out.empty()) {
        throw cnc::Error("the document declares no sink");
    }
    return out;
}

void add_common(CLI::App* sub, Common& o, bool positional_document = true) {
    if (positional_document) {
        sub->add_option("document", o.document, "CNC document, '-' for stdin")->required();
    }
    sub->add_option("--report", o.report_path, "write the report to this file");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "machine"}));
}

// ---------------------------------------------------------------------------

int cmd_classify(const Common& o) {
    const cnc::CncDocument doc = load(o.document);
    const cnc::CncInstance& c = doc.instance;
    const cnc::FeasibilityReport f = cnc::classify(c);
    cnc::RunReport r;
    cnc::report_instance(r, c);
    cnc::report_feasibility(r, c, f);
    emit_report(r, o, true);
    return f.practically_feasible ? kOk : kNegative;
}

int cmd_derive(const Common& o, std::size_t horizon, bool rational) {
    const cnc::CncDocument doc = load(o.document);
    const cnc::CncInstance& c = doc.instance;
    const cnc::FeasibilityReport f = cnc::classify(c);
    cnc::RunReport r;
    cnc::report_instance(r, c);
    cnc::report_feasibility(r, c, f);
    if (!f.normal) {
        r.set("derive.status", "not normal: I - K_0 is singular, the kernels do not determine the GEKs");
        emit_report(r, o, true);
        return kNegative;
    }
    const cnc::GekMatrix full = cnc::derive_geks(c, horizon);
    r.set("derive.horizon", horizon);
    for (std::size_t t = 0; t <= horizon; ++t) {
        r.set("derive.F" + std::to_string(t), cnc::format_matrix(full.coeff(t)));
    }
    if (rational) {
        std::vector<std::size_t> all(c.channel_count());
        for (std::size_t e = 0; e < all.size(); ++e) {
            all[e] = e;
        }
        const cnc::RationalMatrix fz = cnc::rational_geks(c, all);
        for (std::size_t e = 0; e < all.size(); ++e) {
            std::string v = "(";
            for (std::size_t i = 0; i < c.omega(); ++i) {
                v += (i ? ", " : "") + cnc::format_series(fz(i, e));
            }
            r.set("derive.f." + c.graph().channels()[e].id, v + ")");
        }
    }
    emit_report(r, o, true);
    return kOk;
}

int cmd_check(const Common& o, std::optional<std::size_t> delay, std::optional<std::size_t> max_delay,
              const std::vector<std::string>& sink_names) {
    const cnc::CncDocument doc = load(o.document);
    const cnc::CncInstance& c = doc.instance;
    const std::vector<std::size_t> sinks = selected_sinks(c, sink_names);
    const cnc::FeasibilityReport f = cnc::classify(c);
    cnc::RunReport r;
    cnc::report_instance(r, c);
    r.set("classify.realizability", f.realizability());
    if (!f.normal) {
        r.set("check.status", "not normal: no unique GEK matrix to test");
        emit_report(r, o, true);
        return kNegative;
    }
    const std::size_t lmax = max_delay.value_or(c.channel_count());
    const std::size_t horizon = std::max(lmax, delay.value_or(0));
    const cnc::GekMatrix full = cnc::derive_geks(c, horizon);
    bool all_ok = true;
    for (std::size_t s : sinks) {
        const std::string name = c.graph().nodes()[s];
        const std::string p = "sink." + name + ".";
        const cnc::GekMatrix at = cnc::gek_at_sink(full, c, s);
        const std::optional<std::size_t> best = cnc::minimal_delay(at, lmax);
        r.set(p + "max_delay", lmax);
        r.set(p + "minimal_delay", best ? std::to_string(*best) : std::string("none"));
        const std::optional<std::size_t> probe = delay ? delay : best;
        if (!probe) {
            all_ok = false;
            continue;
        }
        const cnc::DecodabilityVerdict v = cnc::check_decodable(at, *probe);
        cnc::report_verdict(r, name, v);
        if (v.decodable) {
            const cnc::DecodingMatrix d = cnc::build_decoding_matrix(at, *probe);
            r.set(p + "decoding_matrix", cnc::format_matrix(d.stacked));
            r.set(p + "decoding_digest", cnc::digest(d.toeplitz));
        } else {
            all_ok = false;
            r.set(p + "reason", "rank diff " + std::to_string(v.rank_l - v.rank_l_minus_1) + " < omega=" +
                                    std::to_string(c.omega()));
        }
    }
    emit_report(r, o, true);
    return all_ok ? kOk : kNegative;
}

int cmd_simulate(const Common& o, std::optional<std::size_t> horizon, std::optional<std::uint64_t> seed) {
    const cnc::CncDocument doc = load(o.document);
    const cnc::CncInstance& c = doc.instance;
    const cnc::Field& field = c.field();
    std::size_t t_max = 0;
    if (horizon) {
        t_max = *horizon;
    } else if (doc.input) {
        t_max = doc.input->rows() - 1;
    } else {
        throw cnc::Error("simulate needs --horizon or input lines");
    }
    cnc::FieldMatrix x(field, t_max + 1, c.omega());
    if (doc.input) {
        const std::size_t rows = std::min(doc.input->rows(), t_max + 1);
        x.set_block(0, 0, doc.input->block(0, 0, rows, c.omega()));
    } else if (seed) {
        cnc::Rng rng(*seed);
        for (std::size_t t = 0; t <= t_max; ++t) {
            for (cnc::Elem& e : x.row(t)) {
                e = rng.element(field);
            }
        }
    } else {
        throw cnc::Error("no input lines in the document: pass --seed for a random source stream");
    }
    const cnc::FeasibilityReport f = cnc::classify(c);
    if (!f.practically_feasible) {
        std::cerr << "cnc: the encoding topology w.r.t. K_0 has a cycle; no causal schedule exists\n";
        cnc::RunReport r;
        cnc::report_feasibility(r, c, f);
        emit_report(r, o, false);
        return kNegative;
    }
    const cnc::SymbolStream s = cnc::simulate(c, x, t_max);
    std::cout << cnc::format_input_lines(x, 0, "# ");
    std::cout << cnc::format_stream(s, c);
    cnc::RunReport r;
    cnc::report_instance(r, c);
    r.set("simulate.horizon", t_max);
    r.set("simulate.stream_digest", cnc::digest(s.channels));
    emit_report(r, o, false);
    return kOk;
}

int cmd_decode(const Common& o, const std::string& stream_path, const std::string& sink,
               std::optional<std::size_t> delay, std::optional<std::size_t> max_delay) {
    if (o.document == "-" && stream_path == "-") {
        throw cnc::Error("document and stream cannot both come from stdin");
    }
    const cnc::CncDocument doc = load(o.document);
    const cnc::CncInstance& c = doc.instance;
    cnc::FieldMatrix channels = [&] {
        try {
            return cnc::parse_stream(read_all(stream_path), c);
        } catch (const cnc::ParseError& e) {
            throw cnc::Error(stream_path + ":" + e.what());
        }
    }();
    const std::size_t t_max = channels.rows() - 1;
    const std::size_t lmax = max_delay.value_or(c.channel_count());
    if (!cnc::classify(c).normal) {
        std::cerr << "cnc: code is not normal; nothing to decode against\n";
        return kNegative;
    }
    const cnc::GekMatrix full = cnc::derive_geks(c, std::max({t_max, lmax, delay.value_or(0)}));
    const cnc::GekMatrix at = cnc::gek_at_sink(full, c, sink);
    cnc::RunReport r;
    const std::string p = "sink." + sink + ".";
    std::optional<std::size_t> l = delay;
    if (!l) {
        l = cnc::minimal_delay(at, lmax);
        r.set(p + "minimal_delay", l ? std::to_string(*l) : std::string("none"));
    }
    if (!l) {
        std::cerr << "cnc: sink " << sink << " is not decodable within delay " << lmax << '\n';
        emit_report(r, o, false);
        return kNegative;
    }
    const cnc::DecodabilityVerdict v = cnc::check_decodable(at, *l);
    cnc::report_verdict(r, sink, v);
    if (!v.decodable) {
        std::cerr << "cnc: sink " << sink << " is not decodable with delay " << *l << ": rank diff "
                  << v.rank_l - v.rank_l_minus_1 << " < omega=" << c.omega() << '\n';
        emit_report(r, o, false);
        return kNegative;
    }
    if (t_max < *l) {
        throw cnc::Error("stream has " + std::to_string(t_max + 1) + " slots, delay " + std::to_string(*l) +
                         " needs at least " + std::to_string(*l + 1));
    }
    const cnc::DecodingMatrix d = cnc::build_decoding_matrix(at, *l);
    const cnc::FieldMatrix y = channels.select_columns(c.graph().in(c.graph().sink(sink)));
    const cnc::FieldMatrix x = cnc::sequential_decode(at, d, y);
    std::cout << cnc::format_input_lines(x);
    r.set(p + "decoded_slots", x.rows());
    r.set(p + "decoding_digest", cnc::digest(d.toeplitz));
    emit_report(r, o, false);
    return kOk;
}

int cmd_random(const Common& o, const cnc::RandomSpec& spec, std::uint64_t seed, std::size_t max_delay,
               std::size_t attempts) {
    const auto draw = cnc::random_decodable_instance(spec, seed, max_delay, attempts);
    cnc::RunReport r;
    r.set("random.seed", std::to_string(seed));
    if (!draw) {
        std::cerr << "cnc: no decodable instance in " << attempts << " attempts\n";
        r.set("random.attempts", attempts);
        r.set("random.status", "exhausted");
        emit_report(r, o, false);
        return kNegative;
    }
    std::cout << cnc::render_document(draw->instance);
    r.set("random.attempts", draw->attempts);
    const cnc::GekMatrix full = cnc::derive_geks(draw->instance, max_delay);
    for (std::size_t s : draw->instance.graph().sinks()) {
        const auto l = cnc::minimal_delay(cnc::gek_at_sink(full, draw->instance, s), max_delay);
        r.set("sink." + draw->instance.graph().nodes()[s] + ".minimal_delay", *l);
    }
    emit_report(r, o, false);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convolutional network codes over cyclic networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cnc 1.0");

    Common o;

    auto* classify = app.add_subcommand("classify", "feasibility, nilpotency and normality of the local kernels");
    add_common(classify, o);

    std::size_t horizon = 6;
    bool rational = false;
    auto* derive = app.add_subcommand("derive", "global encoding kernels F_0..F_T");
    add_common(derive, o);
    derive->add_option("--horizon", horizon, "last coefficient index T");
    derive->add_flag("--rational", rational, "also print the exact rational GEK of every channel");

    std::optional<std::size_t> delay;
    std::optional<std::size_t> max_delay;
    std::vector<std::string> sinks;
    auto* check = app.add_subcommand("check", "decodability with delay L at the sinks");
    add_common(check, o);
    check->add_option("--delay", delay, "probe this delay (default: the minimal one)");
    check->add_option("--max-delay", max_delay, "bound for the minimal delay search (default: channel count)");
    check->add_option("--sink", sinks, "restrict to these sinks");

    std::optional<std::size_t> sim_horizon;
    std::optional<std::uint64_t> seed;
    auto* simulate = app.add_subcommand("simulate", "per-slot transmission; prints a stream dump");
    add_common(simulate, o);
    simulate->add_option("--horizon", sim_horizon, "last slot T (default: from input lines)");
    simulate->add_option("--seed", seed, "seed for a random source stream when the document has no input");

    std::string stream_path;
    std::string sink;
    auto* decode = app.add_subcommand("decode", "sequential decoding of a stream dump at one sink");
    add_common(decode, o);
    decode->add_option("--stream", stream_path, "stream dump, '-' for stdin")->required();
    decode->add_option("--sink", sink, "sink node")->required();
    decode->add_option("--delay", delay, "decoding delay (default: the minimal one)");
    decode->add_option("--max-delay", max_delay, "bound for the minimal delay search (default: channel count)");

    cnc::RandomSpec spec;
    std::string field_text = "GF(2)";
    std::uint64_t random_seed = 0;
    std::size_t random_max_delay = 4;
    std::size_t attempts = 1000;
    auto* random = app.add_subcommand("random", "seeded random instance decodable at every sink");
    add_common(random, o, false);
    random->add_option("--seed", random_seed, "random seed")->required();
    random->add_option("--field", field_text, "GF(2), GF(p), GF(2^m)");
    random->add_option("--nodes", spec.nodes, "node count including the source");
    random->add_option("--channels", spec.channels, "channel count");
    random->add_option("--omega", spec.omega, "source rate");
    random->add_option("--sinks", spec.sinks, "sink count");
    random->add_option("--cycle-density", spec.cycle_density, "probability of a backward channel")
        ->check(CLI::Range(0.0, 1.0));
    random->add_option("--k0-cycle", spec.k0_cycle_probability,
                       "probability that a kernel out of a backward channel has a nonzero constant term")
        ->check(CLI::Range(0.0, 1.0));
    random->add_option("--max-degree", spec.max_degree, "maximum kernel numerator degree");
    random->add_option("--max-delay", random_max_delay, "required decoding delay bound");
    random->add_option("--attempts", attempts, "maximum number of draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*classify) {
            return cmd_classify(o);
        }
        if (*derive) {
            return cmd_derive(o, horizon, rational);
        }
        if (*check) {
            return cmd_check(o, delay, max_delay, sinks);
        }
        if (*simulate) {
            return cmd_simulate(o, sim_horizon, seed);
        }
        if (*decode) {
            return cmd_decode(o, stream_path, sink, delay, max_delay);
        }
        if (*random) {
            spec.field = cnc::parse_field(field_text);
            return cmd_random(o, spec, random_seed, random_max_delay, attempts);
        }
    } catch (const cnc::ParseError& e) {
        std::cerr << "cnc: " << e.what() << '\n';
        return kInputError;
    } catch (const cnc::Error& e) {
        std::cerr << "cnc: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
