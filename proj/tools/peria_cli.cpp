// Command line driver around the library: builds balls, runs the axiom
// checkers, and chains the conspiciality/embedding pipeline end to end.
//
// Exit codes: 0 all checks determined and passing; 2 unreadable or invalid
// input; 3 a configured cap was exceeded; 4 some axiom check failed; 5 no
// failure, but part of the verification stayed undetermined at this radius.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "peria/action.hpp"
#include "peria/cayley.hpp"
#include "peria/embedding.hpp"
#include "peria/errors.hpp"
#include "peria/hyperplanes.hpp"
#include "peria/mediangle.hpp"
#include "peria/presentation.hpp"
#include "peria/quasicubulation.hpp"
#include "peria/separability.hpp"

namespace {

using namespace peria;
using nlohmann::ordered_json;

struct RunConfig {
    std::string input;
    int radius = 3;
    std::size_t cap_words = 500000;
    std::size_t cap_orientations = 1000000;
    std::string format = "text";
    unsigned seed = 0;
    std::string out;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("input", cfg.input, "presentation file (.peria)")->required();
    cmd->add_option("-R,--radius", cfg.radius, "ball radius")->check(CLI::PositiveNumber);
    cmd->add_option("--cap-words", cfg.cap_words, "word closure cap")->check(CLI::PositiveNumber);
    cmd->add_option("--cap-orientations", cfg.cap_orientations, "orientation cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    cmd->add_option("--seed", cfg.seed, "seed for sampled checks");
    cmd->add_option("-o,--out", cfg.out, "write output to a file instead of stdout");
}

PeriagroupSpec load_spec(const RunConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw ParseError("cannot open " + cfg.input);
    return parse_presentation(in);
}

void emit(const RunConfig& cfg, const std::string& body) {
    if (cfg.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) throw ValidationError("cannot write " + cfg.out);
    out << body;
}

ordered_json envelope(const RunConfig& cfg, const std::string& command) {
    ordered_json j;
    j["command"] = command;
    j["input"] = cfg.input;
    j["radius"] = cfg.radius;
    j["seed"] = cfg.seed;
    return j;
}

// worst verdict across reports: fail beats undetermined beats clean
int report_exit(std::initializer_list<const AxiomReport*> reports) {
    bool skipped = false;
    for (const AxiomReport* r : reports) {
        for (const AxiomResult& a : r->axioms) {
            if (a.status() == AxiomStatus::Fail) return 4;
            if (a.skipped > 0) skipped = true;
        }
    }
    return skipped ? 5 : 0;
}

void print_report(std::ostream& os, const AxiomReport& rep) {
    for (const AxiomResult& a : rep.axioms) {
        const char* tag = a.status() == AxiomStatus::Fail     ? "[FAIL]"
                          : a.status() == AxiomStatus::Pass   ? "[pass]"
                                                              : "[skip]";
        os << tag << " " << a.name << "  checked=" << a.checked << " skipped=" << a.skipped;
        if (!a.witness.empty()) {
            os << " witness=";
            for (std::size_t i = 0; i < a.witness.size(); ++i)
                os << (i ? "," : "") << a.witness[i];
        }
        os << "\n";
    }
}

std::vector<Word> ball_words(const CayleyBall& ball) {
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(ball.vertex_count()));
    for (int v = 0; v < ball.vertex_count(); ++v) out.push_back(ball.word_of(v));
    return out;
}

// deterministic seeded subsample; the identity (shortlex least, slot 0 when
// present) is always kept so multiplicativity checks see a unit
std::vector<Word> sample_words(std::vector<Word> pool, std::size_t cap, unsigned seed) {
    if (pool.size() <= cap) return pool;
    std::mt19937 rng(seed);
    std::shuffle(pool.begin() + 1, pool.end(), rng);
    pool.resize(cap);
    return pool;
}

std::vector<int> parse_vertices(const PeriagroupSpec& spec, const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto id = spec.index_of(item);
        if (!id) throw ValidationError("unknown vertex: " + item);
        out.push_back(*id);
    }
    return out;
}

int run_validate(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "validate");
        j["spec"] = spec.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        throw ValidationError("validate has no dot rendering");
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "vertices: " << spec.vertex_count() << "\n";
        for (int v = 0; v < spec.vertex_count(); ++v)
            os << "  " << spec.name(v) << ": order " << spec.group(v).order() << "\n";
        os << "status: valid\n";
        emit(cfg, os.str());
    }
    return 0;
}

int run_ball(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "ball");
        j["ball"] = ball.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        emit(cfg, ball.to_dot());
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n"
           << "vertices: " << ball.vertex_count() << "\n"
           << "edges: " << ball.graph().edges().size() << "\n"
           << "complete: " << (ball.complete() ? "yes" : "no") << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

int run_hyperplanes(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "hyperplanes");
        j["hyperplanes"] = hs.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        emit(cfg, hs.to_dot());
    } else {
        std::ostringstream os;
        int certified = 0;
        for (const Hyperplane& p : hs.planes()) certified += p.certified ? 1 : 0;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n"
           << "planes: " << hs.planes().size() << "\n"
           << "certified: " << certified << "\n";
        for (std::size_t i = 0; i < hs.planes().size(); ++i) {
            const Hyperplane& p = hs.planes()[i];
            os << "  J" << i << ": edges=" << p.edge_ids.size()
               << " certified=" << (p.certified ? "yes" : "no") << "\n";
        }
        emit(cfg, os.str());
    }
    return 0;
}

int run_check_mediangle(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);
    AxiomReport rep = check_mediangle(hs);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "check-mediangle");
        j["report"] = rep.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        throw ValidationError("check-mediangle has no dot rendering");
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n";
        print_report(os, rep);
        emit(cfg, os.str());
    }
    return report_exit({&rep});
}

int run_quasicubulate(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);
    SpaceWithPartitions swp = partitions_from_hyperplanes(hs);
    QMGraph qm = quasi_cubulate(swp, cfg.cap_orientations);
    AxiomReport pop = verify_popset(qm);
    AxiomReport comp = verify_completion(hs, qm);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "quasicubulate");
        j["quasi_median"] = qm.to_json();
        j["popset"] = pop.to_json();
        j["completion"] = comp.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        emit(cfg, qm.to_dot());
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n"
           << "orientations: " << qm.state_count() << "\n";
        print_report(os, pop);
        print_report(os, comp);
        emit(cfg, os.str());
    }
    return report_exit({&pop, &comp});
}

int run_conspiciality(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);
    ConspicialityDecomposition dec = decompose(hs);
    ObstructionSet obs = compute_obs(hs, ball_words(ball));
    CoxeterObstruction cox = compute_coxobs(spec);
    AxiomReport inclusion = check_obstruction_inclusion(hs, dec, obs, cox);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "conspiciality");
        j["decomposition"] = dec.to_json(spec);
        j["obstruction"] = obs.to_json(spec);
        if (cox.supported) j["coxeter_obstruction"] = cox.to_json();
        j["inclusion"] = inclusion.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        throw ValidationError("conspiciality has no dot rendering");
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n"
           << "obstruction elements: " << obs.members().size() << "\n";
        print_report(os, dec.checks);
        print_report(os, inclusion);
        emit(cfg, os.str());
    }
    return report_exit({&dec.checks, &inclusion});
}

// shared by `embed` and the tail of `pipeline`
struct EmbedResult {
    GraphProductTarget target;
    AxiomReport report;
    std::size_t sample_size = 0;
};

EmbedResult run_embed_stage(const PeriagroupSpec& spec, const HyperplaneSet& hs,
                            const RunConfig& cfg) {
    const CayleyBall& ball = hs.ball();
    ConspicialityDecomposition dec = decompose(hs);
    CoxeterObstruction cox = compute_coxobs(spec);
    ConspicialSubgroup h = find_conspicial_subgroup(cox);
    std::vector<Word> pm = pi_minus_elements(ball, dec, h.elements);
    if (pm.empty()) pm.push_back(Word{});
    EmbedResult out{build_target(hs, pm), AxiomReport{}, 0};
    std::vector<Word> samples = sample_words(pm, 48, cfg.seed);
    out.sample_size = samples.size();
    out.report = verify_embedding(hs, out.target, samples);
    return out;
}

std::string target_dot(const GraphProductTarget& t) {
    std::ostringstream os;
    os << "graph target {\n";
    for (std::size_t i = 0; i < t.verts.size(); ++i)
        os << "  J" << i << " [label=\"J" << i << " (order "
           << t.verts[i].group_order << ")\"];\n";
    for (auto [a, b] : t.phi_edges) os << "  J" << a << " -- J" << b << ";\n";
    os << "}\n";
    return os.str();
}

int run_embed(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);
    EmbedResult res = run_embed_stage(spec, hs, cfg);
    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "embed");
        j["sample_size"] = res.sample_size;
        j["target"] = res.target.to_json();
        j["report"] = res.report.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        emit(cfg, target_dot(res.target));
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n"
           << "target vertices: " << res.target.verts.size() << "\n"
           << "target edges: " << res.target.phi_edges.size() << "\n"
           << "sample size: " << res.sample_size << "\n";
        print_report(os, res.report);
        os << "target presentation:\n" << res.target.as_presentation().serialize();
        emit(cfg, os.str());
    }
    return report_exit({&res.report});
}

int run_separability(const RunConfig& cfg, const std::string& planes_csv,
                     const std::string& xi_csv, const std::string& coset_arg) {
    PeriagroupSpec spec = load_spec(cfg);

    if (!coset_arg.empty()) {
        const auto slash = coset_arg.find('/');
        if (slash == std::string::npos)
            throw ValidationError("--coset wants PHI/PSI vertex lists");
        std::vector<int> phi = parse_vertices(spec, coset_arg.substr(0, slash));
        std::vector<int> psi = parse_vertices(spec, coset_arg.substr(slash + 1));
        AugmentedSpec aug = augment_double_coset(spec, phi, psi);
        CayleyBall ball(&aug.spec, cfg.radius, cfg.cap_words);
        HyperplaneSet hs(&ball);
        DoubleCosetCheck dc = verify_cross_double_coset(hs, aug, phi, psi);
        if (cfg.format == "json") {
            ordered_json j = envelope(cfg, "separability");
            j["mode"] = "double-coset";
            j["coset_size"] = dc.coset.size();
            j["crossing_members"] = dc.members;
            j["report"] = dc.report.to_json();
            emit(cfg, j.dump(2) + "\n");
        } else if (cfg.format == "dot") {
            throw ValidationError("separability has no dot rendering");
        } else {
            std::ostringstream os;
            os << "input: " << cfg.input << "\n"
               << "mode: double-coset\n"
               << "coset size: " << dc.coset.size() << "\n"
               << "crossing members: " << dc.members << "\n";
            print_report(os, dc.report);
            emit(cfg, os.str());
        }
        return report_exit({&dc.report});
    }

    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);

    if (!xi_csv.empty()) {
        std::vector<int> xi = parse_vertices(spec, xi_csv);
        RetractWitness rw = virtual_retract_witness(hs, xi);
        if (cfg.format == "json") {
            ordered_json j = envelope(cfg, "separability");
            j["mode"] = "virtual-retract";
            j["witness"] = rw.to_json();
            emit(cfg, j.dump(2) + "\n");
        } else if (cfg.format == "dot") {
            throw ValidationError("separability has no dot rendering");
        } else {
            std::ostringstream os;
            os << "input: " << cfg.input << "\n"
               << "mode: virtual-retract\n"
               << "base order: " << rw.base.size() << "\n"
               << "rotation order: " << rw.rotations.size() << "\n"
               << "index: " << rw.index << "\n";
            print_report(os, rw.report);
            emit(cfg, os.str());
        }
        return report_exit({&rw.report});
    }

    int j = 0, h = 1;
    if (!planes_csv.empty()) {
        std::stringstream ss(planes_csv);
        char comma = 0;
        if (!(ss >> j >> comma >> h) || comma != ',')
            throw ValidationError("--planes wants two indices like 0,1");
    }
    if (j < 0 || h < 0 || j >= static_cast<int>(hs.planes().size()) ||
        h >= static_cast<int>(hs.planes().size()))
        throw ValidationError("plane index out of range");
    CrossSet cs = cross_set(hs, j, h, ball_words(ball));
    AxiomReport rep = check_cross_characterization(hs, j, h, ball_words(ball));
    if (cfg.format == "json") {
        ordered_json jj = envelope(cfg, "separability");
        jj["mode"] = "cross";
        jj["planes"] = {j, h};
        jj["cross_set"] = cs.to_json(spec);
        jj["report"] = rep.to_json();
        emit(cfg, jj.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        throw ValidationError("separability has no dot rendering");
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "mode: cross\n"
           << "planes: J" << j << " J" << h << "\n"
           << "members: " << cs.members.size() << "\n"
           << "non-members: " << cs.non_members.size() << "\n"
           << "equal translates: " << cs.equal_translates.size() << "\n"
           << "undetermined: " << cs.undetermined.size() << "\n";
        print_report(os, rep);
        emit(cfg, os.str());
    }
    return report_exit({&rep});
}

int run_pipeline(const RunConfig& cfg) {
    PeriagroupSpec spec = load_spec(cfg);
    CayleyBall ball(&spec, cfg.radius, cfg.cap_words);
    HyperplaneSet hs(&ball);

    AxiomReport mediangle = check_mediangle(hs);
    SpaceWithPartitions swp = partitions_from_hyperplanes(hs);
    QMGraph qm = quasi_cubulate(swp, cfg.cap_orientations);
    AxiomReport pop = verify_popset(qm);
    AxiomReport comp = verify_completion(hs, qm);
    ConspicialityDecomposition dec = decompose(hs);
    ObstructionSet obs = compute_obs(hs, ball_words(ball));
    CoxeterObstruction cox = compute_coxobs(spec);
    AxiomReport inclusion = check_obstruction_inclusion(hs, dec, obs, cox);
    EmbedResult emb = run_embed_stage(spec, hs, cfg);

    if (cfg.format == "json") {
        ordered_json j = envelope(cfg, "pipeline");
        j["vertices"] = ball.vertex_count();
        j["complete"] = ball.complete();
        j["planes"] = hs.planes().size();
        j["mediangle"] = mediangle.to_json();
        j["popset"] = pop.to_json();
        j["completion"] = comp.to_json();
        j["decomposition"] = dec.to_json(spec);
        j["obstruction"] = obs.to_json(spec);
        if (cox.supported) j["coxeter_obstruction"] = cox.to_json();
        j["inclusion"] = inclusion.to_json();
        j["sample_size"] = emb.sample_size;
        j["target"] = emb.target.to_json();
        j["embedding"] = emb.report.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else if (cfg.format == "dot") {
        throw ValidationError("pipeline has no dot rendering");
    } else {
        std::ostringstream os;
        os << "input: " << cfg.input << "\n"
           << "radius: " << cfg.radius << "\n"
           << "vertices: " << ball.vertex_count()
           << (ball.complete() ? " (complete)" : "") << "\n"
           << "planes: " << hs.planes().size() << "\n"
           << "obstruction elements: " << obs.members().size() << "\n"
           << "-- mediangle --\n";
        print_report(os, mediangle);
        os << "-- quasi-cubulation --\n";
        print_report(os, pop);
        print_report(os, comp);
        os << "-- conspiciality --\n";
        print_report(os, dec.checks);
        print_report(os, inclusion);
        os << "-- embedding (sample size " << emb.sample_size << ") --\n";
        print_report(os, emb.report);
        os << "target presentation:\n" << emb.target.as_presentation().serialize();
        emit(cfg, os.str());
    }
    return report_exit({&mediangle, &pop, &comp, &dec.checks, &inclusion, &emb.report});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mediangle geometry of periagroup Cayley balls"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string planes_csv, xi_csv, coset_arg;

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a presentation");
    CLI::App* ball = app.add_subcommand("ball", "build a Cayley ball");
    CLI::App* planes = app.add_subcommand("hyperplanes", "edge classes and certification");
    CLI::App* med = app.add_subcommand("check-mediangle", "mediangle axiom checks");
    CLI::App* qc = app.add_subcommand("quasicubulate", "orient walls into a quasi-median graph");
    CLI::App* consp = app.add_subcommand("conspiciality", "obstruction sets and decomposition");
    CLI::App* embed = app.add_subcommand("embed", "graph-product target and embedding checks");
    CLI::App* sep = app.add_subcommand("separability", "crossing sets, cosets, retracts");
    CLI::App* pipe = app.add_subcommand("pipeline", "everything, in dependency order");
    for (CLI::App* c : {validate, ball, planes, med, qc, consp, embed, sep, pipe})
        add_common(c, cfg);
    sep->add_option("--planes", planes_csv, "two plane indices for the crossing check (default 0,1)");
    sep->add_option("--xi", xi_csv, "vertex names for a virtual-retract witness");
    sep->add_option("--coset", coset_arg, "PHI/PSI vertex lists for the double-coset check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return run_validate(cfg);
        if (ball->parsed()) return run_ball(cfg);
        if (planes->parsed()) return run_hyperplanes(cfg);
        if (med->parsed()) return run_check_mediangle(cfg);
        if (qc->parsed()) return run_quasicubulate(cfg);
        if (consp->parsed()) return run_conspiciality(cfg);
        if (embed->parsed()) return run_embed(cfg);
        if (sep->parsed()) return run_separability(cfg, planes_csv, xi_csv, coset_arg);
        if (pipe->parsed()) return run_pipeline(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const TrustViolation& e) {
        std::cerr << "undetermined at this radius: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
