// Batch interface over the painted-operad library. One subcommand per
// operation; input JSON comes from --in (default stdin), output goes to --out
// (default stdout), and every number is an exact rational string. Converter
// commands print a single payload object; check and listing commands print
// JSON lines followed by one summary record. Exit codes: 0 success, 1 usage
// or malformed input, 2 verification failure.
//
// Soft caps keep accidental big jobs out: painted sets stop at 8 labels and
// truncation orders at 8 unless --override-caps is given. PAINTED_OPERAD_THREADS
// limits internal parallelism.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "painted/cohomology.hpp"
#include "painted/formal.hpp"
#include "painted/homology.hpp"
#include "painted/io_json.hpp"

namespace {

using namespace painted;
using J = nlohmann::ordered_json;

constexpr int kSetCap = 8;
constexpr int kOrderCap = 8;

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path.empty()) {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot open input file: " + path);
        buf << f.rdbuf();
    }
    return buf.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

PaintedSet make_set(int whites, int blacks, bool override_caps) {
    const PaintedSet s{whites, blacks};
    check_painted_set(s);
    if (!override_caps && s.size() > kSetCap)
        throw std::invalid_argument("painted set above 8 labels; pass --override-caps");
    return s;
}

void enforce_order_cap(int order, bool override_caps) {
    if (!override_caps && order > kOrderCap)
        throw std::invalid_argument("truncation order above 8; pass --override-caps");
}

J exp_json(const std::vector<std::string>& vars, const std::vector<int>& exp) {
    J out = J::object();
    for (std::size_t v = 0; v < vars.size() && v < exp.size(); ++v)
        if (exp[v] != 0) out[vars[v]] = exp[v];
    return out;
}

const char* issue_kind_name(LalgIssue::Kind k) {
    switch (k) {
        case LalgIssue::Kind::Shape: return "shape";
        case LalgIssue::Kind::QuadrupleSum: return "quadruple-sum";
        case LalgIssue::Kind::SlotCommutator: return "slot-commutator";
        case LalgIssue::Kind::SlotExchange: return "slot-exchange";
    }
    return "unknown";
}

J issue_json(const LAlgebra& alg, const LalgIssue& issue) {
    J j;
    j["kind"] = issue_kind_name(issue.kind);
    J idx = J::array();
    for (int id : issue.indices) idx.push_back(alg.index_name(id));
    j["indices"] = std::move(idx);
    J quad = J::array();
    for (int q : issue.quad)
        if (q >= 0) quad.push_back(q);
    j["quad"] = std::move(quad);
    if (!issue.detail.empty()) j["detail"] = issue.detail;
    return j;
}

// Shared option bag; each subcommand binds only the fields it uses, and only
// one subcommand parses per run.
struct Opts {
    int whites = 0, blacks = 0;
    int edges = -1;  // listings: -1 means every degree
    int degree = 0;
    int dim_t = 0, dim_f = 1, order = 3;
    std::uint64_t seed = 1;
    bool count = false, override_caps = false, exchange = false;
    std::string in, out, base, total, b1, a2, h;
};

LAlgebra load_lalgebra(const std::string& path, bool override_caps) {
    LAlgebra alg = lalgebra_of_json(read_input(path));
    enforce_order_cap(alg.order, override_caps);
    return alg;
}

Series load_series(const std::string& path, bool override_caps) {
    Series s = series_of_json(read_input(path));
    enforce_order_cap(s.order, override_caps);
    return s;
}

Mat column_of_json(const J& j, std::size_t dim, const char* what) {
    if (!j.is_array() || j.size() != dim)
        throw std::invalid_argument(std::string(what) + ": wrong entry count");
    Mat col(dim, 1);
    for (std::size_t r = 0; r < dim; ++r)
        col(r, 0) = rat_parse(j[r].get<std::string>());
    return col;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(rat_parse(item));
    if (out.empty()) throw std::invalid_argument("empty rational list");
    return out;
}

int run_trees(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    Output out(o.out);
    if (o.edges < -1) throw std::invalid_argument("edge count must be nonnegative");
    std::vector<GoodFamily> all;
    const int lo = o.edges >= 0 ? o.edges : 0;
    const int hi = o.edges >= 0 ? o.edges : max_edges(s);
    for (int e = lo; e <= hi; ++e) {
        std::vector<GoodFamily> fams = good_families(s, e);
        all.insert(all.end(), fams.begin(), fams.end());
    }
    if (o.count) {
        out.stream() << all.size() << "\n";
        return 0;
    }
    for (const GoodFamily& fam : all) out.stream() << json_of_tree(s, fam) << "\n";
    out.stream() << J{{"count", all.size()}}.dump() << "\n";
    return 0;
}

int run_partitions(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    Output out(o.out);
    const std::vector<TwoPartition> parts = stable_partitions(s);
    if (o.count) {
        out.stream() << parts.size() << "\n";
        return 0;
    }
    for (TwoPartition p : parts) out.stream() << json_of_partition(s, p) << "\n";
    out.stream() << J{{"count", parts.size()}}.dump() << "\n";
    return 0;
}

int run_betti(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    const Ring ring(s);
    Output out(o.out);
    out.stream() << json_of_betti(ring.betti()) << "\n";
    return 0;
}

int run_normalform(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    const std::string text = read_input(o.in);
    int degree = 0;
    const Coords x = coords_of_json(s, text, degree);
    const Ring ring(s);
    if (degree < 0 || degree > ring.top_degree())
        throw std::invalid_argument("class grade outside 0..top degree");
    Output out(o.out);
    out.stream() << json_of_coords(s, degree, ring.normal_form(degree, x)) << "\n";
    return 0;
}

int run_multiply(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    const J j = J::parse(read_input(o.in));
    if (!j.contains("a") || !j.contains("b"))
        throw std::invalid_argument("multiply input needs fields 'a' and 'b'");
    int da = 0, db = 0;
    const Coords a = coords_of_json(s, j["a"].dump(), da);
    const Coords b = coords_of_json(s, j["b"].dump(), db);
    const Ring ring(s);
    Output out(o.out);
    out.stream() << json_of_coords(s, da + db, ring.multiply(da, a, db, b)) << "\n";
    return 0;
}

int run_relations(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    const Ring ring(s);
    if (o.degree < 1 || o.degree > ring.top_degree())
        throw std::invalid_argument("relation degree outside 1..top degree");
    Output out(o.out);
    std::size_t emitted = 0;
    for (const GoodFamily& fam : ring.trees(o.degree - 1)) {
        const TreeShape t = TreeShape::build(s, fam);
        const std::string tree_text = json_of_tree(s, fam);
        for (int v = 0; v < t.num_vertices(); ++v) {
            const int nf = int(t.flags[std::size_t(v)].size());
            for (int a = 0; a < nf; ++a)
                for (int b = a + 1; b < nf; ++b)
                    for (int c = b + 1; c < nf; ++c)
                        for (int e = c + 1; e < nf; ++e) {
                            const Quad quads[6] = {{a, b, c, e}, {a, b, e, c},
                                                   {a, c, b, e}, {a, c, e, b},
                                                   {a, e, b, c}, {a, e, c, b}};
                            for (const Quad& q : quads) {
                                if (!allowed_flag_quadruple(t, v, q.i, q.j, q.k, q.l))
                                    continue;
                                J rec;
                                rec["tree"] = J::parse(tree_text);
                                rec["vertex"] = v;
                                rec["quad"] = {q.i, q.j, q.k, q.l};
                                rec["relation"] = J::parse(json_of_coords(
                                    s, o.degree, ring.standard_relation(fam, v, q)));
                                out.stream() << rec.dump() << "\n";
                                ++emitted;
                            }
                        }
        }
    }
    J summary;
    summary["relations"] = emitted;
    summary["trees"] = ring.trees(o.degree).size();
    summary["dim"] = ring.dimension(o.degree);
    out.stream() << summary.dump() << "\n";
    return 0;
}

int run_pairing(const Opts& o) {
    const PaintedSet s = make_set(o.whites, o.blacks, o.override_caps);
    const Ring ring(s);
    if (o.degree < 0 || o.degree > ring.top_degree())
        throw std::invalid_argument("pairing degree outside 0..top degree");
    const Module hom(ring);
    const Mat p = hom.pairing_matrix(o.degree);
    Output out(o.out);
    for (std::size_t r = 0; r < p.rows(); ++r) {
        for (std::size_t c = 0; c < p.cols(); ++c)
            out.stream() << (c ? "," : "") << rat_str(p(r, c));
        out.stream() << "\n";
    }
    return 0;
}

int run_lalg_verify(const Opts& o) {
    const LAlgebra alg = load_lalgebra(o.in, o.override_caps);
    std::vector<LalgIssue> issues = verify(alg);
    if (o.exchange) {
        std::vector<LalgIssue> extra = verify_exchange(alg);
        issues.insert(issues.end(), extra.begin(), extra.end());
    }
    Output out(o.out);
    for (const LalgIssue& issue : issues)
        out.stream() << issue_json(alg, issue).dump() << "\n";
    J summary;
    summary["status"] = issues.empty() ? "pass" : "fail";
    summary["issues"] = issues.size();
    out.stream() << summary.dump() << "\n";
    return issues.empty() ? 0 : 2;
}

int run_lalg_eval(const Opts& o) {
    const J j = J::parse(read_input(o.in));
    if (!j.contains("algebra")) throw std::invalid_argument("missing field 'algebra'");
    const LAlgebra alg = lalgebra_of_json(j["algebra"].dump());
    enforce_order_cap(alg.order, o.override_caps);
    if (!j.contains("whites") || !j.contains("blacks") || !j.contains("tree"))
        throw std::invalid_argument("missing field 'whites', 'blacks', or 'tree'");
    const PaintedSet s = make_set(j["whites"].get<int>(), j["blacks"].get<int>(),
                                  o.override_caps);
    const GoodFamily fam = tree_of_json(s, j["tree"].dump());
    const TreeShape tree = TreeShape::build(s, fam);

    if (!j.contains("white_inputs") || !j.contains("black_inputs"))
        throw std::invalid_argument("missing field 'white_inputs' or 'black_inputs'");
    const J& wj = j["white_inputs"];
    const J& bj = j["black_inputs"];
    if (!wj.is_array() || int(wj.size()) != s.whites)
        throw std::invalid_argument("need one white input per white label "
                                    "(the first sits at the root and is ignored)");
    if (!bj.is_array() || int(bj.size()) != s.blacks)
        throw std::invalid_argument("need one black input per black label");
    std::vector<Mat> white_inputs, black_inputs;
    for (const J& col : wj)
        white_inputs.push_back(column_of_json(col, std::size_t(alg.dim_f), "white input"));
    for (const J& col : bj)
        black_inputs.push_back(column_of_json(col, std::size_t(alg.dim_t), "black input"));

    const Mat value = evaluate_tree_correlator(alg, tree, white_inputs, black_inputs);
    J arr = J::array();
    for (std::size_t r = 0; r < value.rows(); ++r) arr.push_back(rat_str(value(r, 0)));
    Output out(o.out);
    out.stream() << J{{"value", std::move(arr)}}.dump() << "\n";
    return 0;
}

int run_comm_check(const Opts& o) {
    const Series b = load_series(o.in, o.override_caps);
    const CommReport rep = check_comm(b);
    Output out(o.out);
    if (rep.witness) {
        const CommWitness& w = *rep.witness;
        J rec;
        rec["witness"] = J{{"a", w.var_a},
                           {"b", w.var_b},
                           {"exp", exp_json(b.vars, w.exponent)},
                           {"row", w.row},
                           {"col", w.col},
                           {"value", rat_str(w.value)}};
        out.stream() << rec.dump() << "\n";
    }
    J summary;
    summary["status"] = rep.pass ? "pass" : "fail";
    summary["verified_order"] = rep.verified_order;
    out.stream() << summary.dump() << "\n";
    return rep.pass ? 0 : 2;
}

int run_comm_fromlalg(const Opts& o) {
    const LAlgebra alg = load_lalgebra(o.in, o.override_caps);
    Output out(o.out);
    out.stream() << json_of_series(build_B(alg)) << "\n";
    return 0;
}

int run_assoc_check(const Opts& o) {
    const VectorField a = field_of_json(read_input(o.in));
    if (!a.empty()) enforce_order_cap(a.front().order, o.override_caps);
    const AssocReport rep = assoc_check(a);
    Output out(o.out);
    if (rep.witness) {
        const AssocWitness& w = *rep.witness;
        const auto& vars = a.front().vars;
        J rec;
        rec["witness"] = J{{"a", vars[std::size_t(w.a)]},
                           {"b", vars[std::size_t(w.b)]},
                           {"c", vars[std::size_t(w.c)]},
                           {"component", vars[std::size_t(w.f)]},
                           {"exp", exp_json(vars, w.exponent)},
                           {"value", rat_str(w.value)}};
        out.stream() << rec.dump() << "\n";
    }
    J summary;
    summary["status"] = rep.pass ? "pass" : "fail";
    summary["verified_order"] = rep.verified_order;
    summary["flat_identity"] = has_flat_identity(a);
    out.stream() << summary.dump() << "\n";
    return rep.pass ? 0 : 2;
}

int run_assoc_tocomm(const Opts& o) {
    const VectorField a = field_of_json(read_input(o.in));
    if (!a.empty()) enforce_order_cap(a.front().order, o.override_caps);
    Output out(o.out);
    out.stream() << json_of_series(b_from_a(a)) << "\n";
    return 0;
}

int run_glue(const Opts& o) {
    const Series b1 = load_series(o.b1, o.override_caps);
    const VectorField a2 = field_of_json(read_input(o.a2));
    if (!a2.empty()) enforce_order_cap(a2.front().order, o.override_caps);
    Output out(o.out);
    out.stream() << json_of_series(glue(b1, a2, parse_rat_list(o.h))) << "\n";
    return 0;
}

int run_project(const Opts& o) {
    const Series base = load_series(o.base, o.override_caps);
    const Series total = load_series(o.total, o.override_caps);
    const ProjectionResult res = formal_projection(base, total);
    Output out(o.out);
    if (res.status == ProjectionResult::Status::Inconsistent) {
        J summary;
        summary["status"] = "inconsistent";
        summary["detail"] = res.detail;
        out.stream() << summary.dump() << "\n";
        return 2;
    }
    for (const auto& [theta_exp, fields] : res.lambda) {
        J rec;
        rec["theta"] = exp_json(res.theta_vars, theta_exp);
        J lam = J::array();
        for (const Series& f : fields) lam.push_back(J::parse(json_of_series(f)));
        rec["lambda"] = std::move(lam);
        const auto ns = res.nullspace.find(theta_exp);
        if (ns != res.nullspace.end() && !ns->second.empty()) {
            J basis = J::array();
            for (const std::vector<Series>& family : ns->second) {
                J fam = J::array();
                for (const Series& f : family) fam.push_back(J::parse(json_of_series(f)));
                basis.push_back(std::move(fam));
            }
            rec["nullspace"] = std::move(basis);
        }
        out.stream() << rec.dump() << "\n";
    }
    J summary;
    summary["status"] = "solved";
    summary["unique"] = res.unique;
    out.stream() << summary.dump() << "\n";
    return 0;
}

int run_tensor(const Opts& o) {
    const J j = J::parse(read_input(o.in));
    if (!j.contains("a") || !j.contains("b"))
        throw std::invalid_argument("tensor input needs fields 'a' and 'b'");
    const LAlgebra a = lalgebra_of_json(j["a"].dump());
    const LAlgebra b = lalgebra_of_json(j["b"].dump());
    enforce_order_cap(a.order, o.override_caps);
    enforce_order_cap(b.order, o.override_caps);
    Output out(o.out);
    out.stream() << json_of_lalgebra(tensor(a, b)) << "\n";
    return 0;
}

int run_gen_lalg(const Opts& o) {
    enforce_order_cap(o.order, o.override_caps);
    if (!o.override_caps && (o.dim_t > kSetCap || o.dim_f > kSetCap))
        throw std::invalid_argument("dimension above 8; pass --override-caps");
    const LAlgebra alg = o.exchange
                             ? random_exchange_lalgebra(o.seed, o.dim_t, o.dim_f, o.order)
                             : random_valid_lalgebra(o.seed, o.dim_t, o.dim_f, o.order);
    Output out(o.out);
    out.stream() << json_of_lalgebra(alg) << "\n";
    return 0;
}

void add_set_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--whites", o.whites, "number of white labels")->required();
    cmd->add_option("--blacks", o.blacks, "number of black labels");
}

void add_io_flags(CLI::App* cmd, Opts& o, bool with_in = true) {
    if (with_in) cmd->add_option("--in", o.in, "input JSON file (default: stdin)");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_flag("--override-caps", o.override_caps, "lift the size and order caps");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for painted trees, graded intersection rings, "
                 "correlator algebras, and formal commutativity solutions"};
    app.require_subcommand(1);
    Opts o;
    std::function<int()> job;

    CLI::App* trees = app.add_subcommand("trees", "list or count stable trees");
    add_set_flags(trees, o);
    trees->add_option("--edges", o.edges, "restrict to one edge count");
    trees->add_flag("--count", o.count, "print only the number of trees");
    add_io_flags(trees, o, false);
    trees->callback([&] { job = [&] { return run_trees(o); }; });

    CLI::App* partitions = app.add_subcommand("partitions", "list or count stable 2-partitions");
    add_set_flags(partitions, o);
    partitions->add_flag("--count", o.count, "print only the number of partitions");
    add_io_flags(partitions, o, false);
    partitions->callback([&] { job = [&] { return run_partitions(o); }; });

    CLI::App* betti = app.add_subcommand("betti", "graded dimension table of the ring");
    add_set_flags(betti, o);
    add_io_flags(betti, o, false);
    betti->callback([&] { job = [&] { return run_betti(o); }; });

    CLI::App* normalform = app.add_subcommand("normalform", "reduce a class to basis form");
    add_set_flags(normalform, o);
    add_io_flags(normalform, o);
    normalform->callback([&] { job = [&] { return run_normalform(o); }; });

    CLI::App* multiply = app.add_subcommand("multiply", "product of two classes, input {\"a\":...,\"b\":...}");
    add_set_flags(multiply, o);
    add_io_flags(multiply, o);
    multiply->callback([&] { job = [&] { return run_multiply(o); }; });

    CLI::App* relations = app.add_subcommand("relations", "standard relations landing in one degree");
    add_set_flags(relations, o);
    relations->add_option("--degree", o.degree, "target degree")->required();
    add_io_flags(relations, o, false);
    relations->callback([&] { job = [&] { return run_relations(o); }; });

    CLI::App* pairing = app.add_subcommand("pairing", "CSV pairing matrix against the complementary degree");
    add_set_flags(pairing, o);
    pairing->add_option("--degree", o.degree, "cohomology degree")->required();
    add_io_flags(pairing, o, false);
    pairing->callback([&] { job = [&] { return run_pairing(o); }; });

    CLI::App* lalg_verify = app.add_subcommand("lalg-verify", "run the identity checks on an algebra");
    lalg_verify->add_flag("--exchange", o.exchange, "also require the applied-slot exchange symmetry");
    add_io_flags(lalg_verify, o);
    lalg_verify->callback([&] { job = [&] { return run_lalg_verify(o); }; });

    CLI::App* lalg_eval = app.add_subcommand("lalg-eval", "evaluate a tree correlator on given inputs");
    add_io_flags(lalg_eval, o);
    lalg_eval->callback([&] { job = [&] { return run_lalg_eval(o); }; });

    CLI::App* comm_check = app.add_subcommand("comm-check", "check pairwise commutativity of derivative matrices");
    add_io_flags(comm_check, o);
    comm_check->callback([&] { job = [&] { return run_comm_check(o); }; });

    CLI::App* comm_fromlalg = app.add_subcommand("comm-fromlalg", "generating series of an algebra");
    add_io_flags(comm_fromlalg, o);
    comm_fromlalg->callback([&] { job = [&] { return run_comm_fromlalg(o); }; });

    CLI::App* assoc_check = app.add_subcommand("assoc-check", "check the associativity equations of a potential");
    add_io_flags(assoc_check, o);
    assoc_check->callback([&] { job = [&] { return run_assoc_check(o); }; });

    CLI::App* assoc_tocomm = app.add_subcommand("assoc-tocomm", "Jacobian series of a potential");
    add_io_flags(assoc_tocomm, o);
    assoc_tocomm->callback([&] { job = [&] { return run_assoc_tocomm(o); }; });

    CLI::App* glue_cmd = app.add_subcommand("glue", "extend a base solution by a fiber potential");
    glue_cmd->add_option("--b1", o.b1, "base solution series JSON")->required();
    glue_cmd->add_option("--a2", o.a2, "fiber potential JSON")->required();
    glue_cmd->add_option("--hvec", o.h, "comma-separated argument vector, e.g. \"1,0\"")->required();
    add_io_flags(glue_cmd, o, false);
    glue_cmd->callback([&] { job = [&] { return run_glue(o); }; });

    CLI::App* project = app.add_subcommand("project", "solve for the fiber dependence over a base solution");
    project->add_option("--base", o.base, "base solution series JSON")->required();
    project->add_option("--total", o.total, "total solution series JSON")->required();
    add_io_flags(project, o, false);
    project->callback([&] { job = [&] { return run_project(o); }; });

    CLI::App* tensor_cmd = app.add_subcommand("tensor", "tensor product of two algebras, input {\"a\":...,\"b\":...}");
    add_io_flags(tensor_cmd, o);
    tensor_cmd->callback([&] { job = [&] { return run_tensor(o); }; });

    CLI::App* gen = app.add_subcommand("gen-lalg", "deterministic seeded test algebra");
    gen->add_option("--seed", o.seed, "generator seed");
    gen->add_option("--dim-t", o.dim_t, "parameter directions")->required();
    gen->add_option("--dim-f", o.dim_f, "argument directions")->required();
    gen->add_option("--order", o.order, "correlator order cap")->required();
    gen->add_flag("--exchange", o.exchange, "multiplication-operator family instead of a conjugated diagonal one");
    add_io_flags(gen, o, false);
    gen->callback([&] { job = [&] { return run_gen_lalg(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        return job ? job() : 1;
    } catch (const std::runtime_error& e) {
        std::cerr << J{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << J{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
