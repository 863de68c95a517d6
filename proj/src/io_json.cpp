#include "painted/io_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace painted {

namespace {

using J = nlohmann::ordered_json;

J mat_json(const Mat& m) {
    J rows = J::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        J row = J::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_str(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_parse(const J& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw std::invalid_argument("matrix must be a nonempty array of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw std::invalid_argument("matrix rows have unequal lengths");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rat_parse(j[r][c].get<std::string>());
    }
    return m;
}

J parse_text(const std::string& text) {
    return J::parse(text); // throws nlohmann's parse_error on bad syntax
}

const J& need(const J& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    return *it;
}

J exp_json(const std::vector<std::string>& vars, const std::vector<int>& exp) {
    J out = J::object();
    for (std::size_t v = 0; v < vars.size(); ++v)
        if (exp[v] != 0) out[vars[v]] = exp[v];
    return out;
}

std::vector<int> exp_parse(const Series& frame, const J& j) {
    std::vector<int> exp(frame.vars.size(), 0);
    for (const auto& [name, count] : j.items()) {
        const int at = frame.var_index(name);
        if (at < 0) throw std::invalid_argument("unknown variable '" + name + "'");
        exp[std::size_t(at)] = count.get<int>();
    }
    return exp;
}

} // namespace

std::string json_of_matrix(const Mat& m) {
    return mat_json(m).dump();
}

std::string json_of_lalgebra(const LAlgebra& alg) {
    J j;
    j["dimT"] = alg.dim_t;
    j["dimF"] = alg.dim_f;
    j["order"] = alg.order;
    j["parity"] = "even";
    J arr = J::array();
    for (const auto& [key, value] : alg.corr) {
        J rec;
        J idx = J::array();
        for (int id : key) idx.push_back(alg.index_name(id));
        rec["indices"] = std::move(idx);
        rec["matrix"] = mat_json(value);
        arr.push_back(std::move(rec));
    }
    j["correlators"] = std::move(arr);
    return j.dump();
}

LAlgebra lalgebra_of_json(const std::string& text) {
    const J j = parse_text(text);
    LAlgebra alg{need(j, "dimT").get<int>(), need(j, "dimF").get<int>(),
                 need(j, "order").get<int>(), {}};
    if (alg.dim_t < 0 || alg.dim_f < 0 || alg.order < 0)
        throw std::invalid_argument("algebra dimensions must be nonnegative");
    if (j.contains("parity") && j["parity"].get<std::string>() != "even")
        throw std::invalid_argument("only even parity is supported");
    for (const J& rec : need(j, "correlators")) {
        IndexKey key;
        for (const J& name : need(rec, "indices"))
            key.push_back(alg.parse_index(name.get<std::string>()));
        alg.set_correlator(std::move(key), mat_parse(need(rec, "matrix")));
    }
    return alg;
}

std::string json_of_series(const Series& s) {
    if (s.rows != s.cols)
        throw std::invalid_argument("only square-coefficient series serialize");
    J j;
    j["vars"] = s.vars;
    j["order"] = s.order;
    j["dimF"] = s.rows;
    J arr = J::array();
    for (const auto& [exp, m] : s.terms) {
        J rec;
        rec["exp"] = exp_json(s.vars, exp);
        rec["matrix"] = mat_json(m);
        arr.push_back(std::move(rec));
    }
    j["terms"] = std::move(arr);
    return j.dump();
}

Series series_of_json(const std::string& text) {
    const J j = parse_text(text);
    const std::size_t dim = need(j, "dimF").get<std::size_t>();
    Series s = Series::zero(need(j, "vars").get<std::vector<std::string>>(),
                            need(j, "order").get<int>(), dim, dim);
    check_series(s); // catches duplicate or empty variable names up front
    for (const J& rec : need(j, "terms"))
        s.set_coefficient(exp_parse(s, need(rec, "exp")), mat_parse(need(rec, "matrix")));
    return s;
}

std::string json_of_field(const VectorField& a) {
    if (a.empty()) throw std::invalid_argument("vector field has no components");
    J j;
    j["coordinates"] = a.front().vars;
    j["order"] = a.front().order;
    J comps = J::array();
    for (const Series& s : a) {
        J terms = J::array();
        for (const auto& [exp, m] : s.terms) {
            J rec;
            rec["exp"] = exp_json(s.vars, exp);
            rec["value"] = rat_str(m(0, 0));
            terms.push_back(std::move(rec));
        }
        comps.push_back(std::move(terms));
    }
    j["components"] = std::move(comps);
    return j.dump();
}

VectorField field_of_json(const std::string& text) {
    const J j = parse_text(text);
    const auto vars = need(j, "coordinates").get<std::vector<std::string>>();
    const int order = need(j, "order").get<int>();
    const J& comps = need(j, "components");
    if (comps.size() != vars.size())
        throw std::invalid_argument("need one component per coordinate");
    VectorField out;
    for (const J& terms : comps) {
        Series s = Series::zero(vars, order, 1, 1);
        for (const J& rec : terms) {
            Mat cell(1, 1);
            cell(0, 0) = rat_parse(need(rec, "value").get<std::string>());
            s.set_coefficient(exp_parse(s, need(rec, "exp")), std::move(cell));
        }
        check_series(s);
        out.push_back(std::move(s));
    }
    return out;
}

std::string json_of_betti(const std::vector<int>& dims) {
    J j;
    j["dims"] = dims;
    return j.dump();
}

std::string json_of_partition(const PaintedSet& s, TwoPartition p) {
    J names = J::array();
    for (int label = 0; label < s.size(); ++label)
        if (!((p.far >> label) & 1u)) names.push_back(s.label_name(label));
    J j;
    j["part"] = std::move(names);
    return j.dump();
}

TwoPartition partition_of_json(const PaintedSet& s, const std::string& text) {
    const J j = parse_text(text);
    std::uint32_t mask = 0;
    for (const J& name : need(j, "part"))
        mask |= std::uint32_t(1) << s.parse_label(name.get<std::string>());
    return make_partition(s, mask);
}

std::string json_of_tree(const PaintedSet& s, const GoodFamily& fam) {
    J edges = J::array();
    for (std::uint32_t far : fam) edges.push_back(J::parse(json_of_partition(s, {far})));
    return edges.dump();
}

GoodFamily tree_of_json(const PaintedSet& s, const std::string& text) {
    const J j = parse_text(text);
    if (!j.is_array()) throw std::invalid_argument("a tree is an array of partitions");
    GoodFamily fam;
    for (const J& edge : j) fam.push_back(partition_of_json(s, edge.dump()).far);
    std::sort(fam.begin(), fam.end());
    if (!is_good_family(s, fam))
        throw std::invalid_argument("edge partitions do not form a tree");
    return fam;
}

std::string json_of_coords(const PaintedSet& s, int degree, const Coords& x) {
    J terms = J::array();
    for (const auto& [fam, value] : x) {
        if (value == 0) continue;
        J rec;
        rec["tree"] = J::parse(json_of_tree(s, fam));
        rec["coeff"] = rat_str(value);
        terms.push_back(std::move(rec));
    }
    J j;
    j["grade"] = degree;
    j["terms"] = std::move(terms);
    return j.dump();
}

Coords coords_of_json(const PaintedSet& s, const std::string& text, int& degree) {
    const J j = parse_text(text);
    degree = need(j, "grade").get<int>();
    Coords out;
    for (const J& rec : need(j, "terms")) {
        GoodFamily fam = tree_of_json(s, need(rec, "tree").dump());
        if (int(fam.size()) != degree)
            throw std::invalid_argument("tree grade does not match the class grade");
        const Rat value = rat_parse(need(rec, "coeff").get<std::string>());
        if (value != 0) out[std::move(fam)] += value;
    }
    return out;
}

} // namespace painted
