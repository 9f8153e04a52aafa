// tscu: command-line front end for the solvers.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tscu/tscu.hpp"

namespace {

struct Flags {
    std::string file;
    std::uint64_t seed = 0;
    int reps = 20;
    std::string param = "terminals";
    std::optional<int> cover_size;
    bool oracle = false;
};

std::optional<tscu::PlaneEmbedding> file_embedding(const tscu::InstanceFile& in) {
    if (!in.rotation) {
        if (in.outer_face) throw tscu::ParseError(0, "'o' needs an 'r' rotation system");
        return std::nullopt;
    }
    return tscu::make_embedding(in.graph, *in.rotation, in.outer_face);
}

tscu::SolveResult run(const tscu::InstanceFile& in, const Flags& flags) {
    using namespace tscu;
    SolverConfig cfg;
    cfg.seed = flags.seed;
    cfg.repetitions = flags.reps;
    SolveResult result;
    if (!flags.oracle) result.repetitions = flags.reps;
    const int k = in.k.value_or(INT_MAX);

    switch (in.kind) {
    case ProblemKind::cutuncut: {
        CutUncutInstance inst{in.graph, file_embedding(in), in.S, in.T, k};
        if (flags.oracle) {
            if (!inst.embedding)
                for (const auto& comp : connected_components(in.graph)) {
                    std::vector<char> keep(static_cast<std::size_t>(in.graph.vertex_count()), 0);
                    for (VertexId v : comp) keep[v] = 1;
                    embed(induced_subgraph(in.graph, keep).graph);
                }
            auto cut = oracle::brute_cut_uncut(in.graph, in.S, in.T);
            if (cut && cut->size() <= k) result.answer = *cut;
            return result;
        }
        CutUncutOptions opts;
        opts.solver = cfg;
        opts.param = flags.param == "facecover" ? Parameterization::face_cover : Parameterization::terminals;
        opts.cover_size = flags.cover_size;
        if (auto cut = solve_cut_uncut(inst, opts)) result.answer = *cut;
        return result;
    }
    case ProblemKind::xcsp: {
        XcspInstance inst;
        inst.graph = in.graph;
        inst.dimension = in.dimension;
        inst.labels = in.labels;
        inst.target = in.target.value_or(0);
        inst.x_sets = in.x_sets;
        if (in.k) cfg.max_length = *in.k;
        if (in.has_s) {
            inst.s = in.S.front();
            inst.t = in.T.front();
            auto path = flags.oracle ? oracle::brute_xcsp(inst) : shortest_xcsp_path(inst, cfg);
            if (path && path->length() <= k) result.answer = *path;
        } else {
            auto cycle = flags.oracle ? oracle::brute_xcsp_cycle(inst) : shortest_xcsp_cycle(inst, cfg);
            if (cycle && cycle->length() <= k) result.answer = *cycle;
        }
        return result;
    }
    case ProblemKind::diversion: {
        DiversionInstance inst{in.graph, file_embedding(in), in.S.front(), in.T.front(), in.B, k};
        if (flags.oracle) {
            if (!inst.embedding && is_connected(in.graph)) embed(in.graph);
            auto cut = oracle::brute_diversion(in.graph, inst.s, inst.t, in.B);
            if (cut && cut->size() <= k) result.answer = *cut;
            return result;
        }
        if (auto cut = generalized_network_diversion(inst, cfg)) result.answer = *cut;
        return result;
    }
    case ProblemKind::glcsp: {
        auto emb = file_embedding(in);
        if (!emb) {
            emb = embed(in.graph);
            if (in.outer_face) emb->outer_face = *in.outer_face;
        }
        GlcspInstance inst{in.graph, *emb, in.S.front(), in.T.front(), in.FA, in.FB};
        auto path = flags.oracle ? oracle::brute_glcsp(inst) : glcsp(inst, cfg);
        if (path && path->length() <= k) result.answer = *path;
        return result;
    }
    }
    return result;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-Sets Cut-Uncut and related solvers on planar graphs"};
    app.require_subcommand(1);
    Flags flags;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", flags.file, "instance file")->required();
        cmd->add_option("--seed", flags.seed, "random seed");
        cmd->add_option("--reps", flags.reps, "repetitions per probe")->check(CLI::Range(1, 1 << 20));
        cmd->add_option("--param", flags.param, "cut-uncut parameterization")
            ->check(CLI::IsMember({"terminals", "facecover"}));
        cmd->add_option("--cover-size", flags.cover_size, "face cover budget r")->check(CLI::NonNegativeNumber);
        cmd->add_flag("--oracle", flags.oracle, "use the brute-force solver");
    };
    auto* solve = app.add_subcommand("solve", "solve an instance file");
    add_common(solve);
    auto* oracle = app.add_subcommand("oracle", "solve an instance file by brute force");
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (oracle->parsed()) flags.oracle = true;

    std::ifstream file(flags.file);
    if (!file) {
        std::cerr << "cannot open " << flags.file << '\n';
        return 1;
    }
    std::stringstream text;
    text << file.rdbuf();

    try {
        const auto instance = tscu::parse_instance(text.str());
        std::cout << tscu::emit_result(run(instance, flags));
        return 0;
    } catch (const tscu::NonPlanarError& e) {
        std::cerr << "NonPlanar: " << e.what() << '\n';
        return 2;
    } catch (const tscu::ParseError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 2;
    } catch (const tscu::MalformedRotationError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 2;
    } catch (const tscu::oracle::BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid instance: " << e.what() << '\n';
        return 2;
    }
}
