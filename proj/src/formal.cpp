#include "painted/formal.hpp"

#include "painted/linalg.hpp"
#include "painted/parallel.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

namespace painted {

namespace {

int total_of(const std::vector<int>& exp) {
    return std::accumulate(exp.begin(), exp.end(), 0);
}

// All exponent vectors over `nvars` variables with total degree <= cap,
// in lexicographic order. The deterministic order doubles as the row and
// column order of the dense systems below.
std::vector<std::vector<int>> exponents_up_to(std::size_t nvars, int cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nvars, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos == nvars) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[pos] = k;
            self(self, pos + 1, left - k);
        }
        cur[pos] = 0;
    };
    if (cap >= 0) rec(rec, 0, cap);
    std::sort(out.begin(), out.end());
    return out;
}

std::string exp_string(const std::vector<std::string>& vars, const std::vector<int>& exp) {
    std::string out;
    for (std::size_t v = 0; v < exp.size(); ++v) {
        if (exp[v] == 0) continue;
        if (!out.empty()) out += ' ';
        out += vars[v];
        if (exp[v] > 1) out += '^' + std::to_string(exp[v]);
    }
    return out.empty() ? "1" : out;
}

// Adds the scalar series `src` into entry (r, c) of the matrix series `dst`.
void accumulate_entry(Series& dst, const Series& src, std::size_t r, std::size_t c) {
    Mat cell(dst.rows, dst.cols);
    for (const auto& [exp, m] : src.terms) {
        if (total_of(exp) > dst.order) continue;
        cell(r, c) = m(0, 0);
        dst.add_term(exp, cell);
        cell(r, c) = 0;
    }
}

Series column_of(const Series& s, std::size_t col) {
    Series out = Series::zero(s.vars, s.order, s.rows, 1);
    for (const auto& [exp, m] : s.terms) {
        Mat v(s.rows, 1);
        for (std::size_t r = 0; r < s.rows; ++r) v(r, 0) = m(r, col);
        if (!v.is_zero()) out.set_coefficient(exp, std::move(v));
    }
    return out;
}

void validate_field(const VectorField& a) {
    if (a.empty()) throw std::invalid_argument("vector field has no components");
    for (const Series& s : a) {
        check_series(s);
        if (s.rows != 1 || s.cols != 1)
            throw std::invalid_argument("vector field components must be scalar series");
        if (s.vars != a.front().vars || s.order != a.front().order)
            throw std::invalid_argument("vector field components disagree on variables or order");
    }
    if (a.front().vars.size() != a.size())
        throw std::invalid_argument("vector field needs one component per coordinate");
}

std::optional<Mat> invert(const Mat& m) {
    const std::size_t n = m.rows();
    Mat out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rat> e(n);
        e[j] = 1;
        auto sol = solve_dense(m, e);
        if (!sol || !sol->nullspace.empty()) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) out(i, j) = sol->particular[i];
    }
    return out;
}

SparseRow dense_to_sparse(const std::vector<Rat>& v) {
    std::map<std::int64_t, Rat> entries;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) entries[std::int64_t(i)] = v[i];
    return sparse_normalize(std::move(entries));
}

} // namespace

Series build_B(const LAlgebra& alg) {
    if (alg.dim_f <= 0)
        throw std::invalid_argument("build_B: the algebra must have at least one f-index");
    std::vector<std::string> vars;
    for (int id = 0; id < alg.index_count(); ++id) vars.push_back(alg.index_name(id));
    Series out =
        Series::zero(std::move(vars), alg.order, std::size_t(alg.dim_f), std::size_t(alg.dim_f));
    for (const auto& [key, value] : alg.corr) {
        if (int(key.size()) > alg.order) continue;
        std::vector<int> exp(std::size_t(alg.index_count()), 0);
        for (int id : key) ++exp[std::size_t(id)];
        Rat weight = 1;
        for (int e : exp)
            for (int k = 2; k <= e; ++k) weight /= k;
        Mat m = value;
        m *= weight;
        out.add_term(exp, m);
    }
    return out;
}

LAlgebra extract_lalgebra(const Series& b) {
    check_series(b);
    if (b.rows != b.cols)
        throw std::invalid_argument("extract_lalgebra: coefficients must be square");
    int dim_t = 0, dim_f = 0;
    for (const std::string& name : b.vars) {
        if (!name.empty() && name[0] == 't') ++dim_t;
        else if (!name.empty() && name[0] == 'f') ++dim_f;
        else throw std::invalid_argument("extract_lalgebra: variable '" + name +
                                         "' carries no t/f color prefix");
    }
    if (std::size_t(dim_f) != b.rows)
        throw std::invalid_argument("extract_lalgebra: need one f-variable per matrix dimension");
    if (!b.coefficient(std::vector<int>(b.vars.size(), 0)).is_zero())
        throw std::invalid_argument("extract_lalgebra: constant term present");
    std::vector<int> ids(b.vars.size());
    int next_t = 0, next_f = dim_t;
    for (std::size_t v = 0; v < b.vars.size(); ++v)
        ids[v] = b.vars[v][0] == 't' ? next_t++ : next_f++;
    LAlgebra out{dim_t, dim_f, b.order, {}};
    for (const auto& [exp, value] : b.terms) {
        IndexKey key;
        Rat weight = 1;
        for (std::size_t v = 0; v < exp.size(); ++v) {
            for (int k = 0; k < exp[v]; ++k) key.push_back(ids[v]);
            for (int k = 2; k <= exp[v]; ++k) weight *= k;
        }
        Mat m = value;
        m *= weight;
        out.set_correlator(std::move(key), std::move(m));
    }
    return out;
}

CommReport check_comm(const Series& b) {
    check_series(b);
    if (b.rows != b.cols) throw std::invalid_argument("check_comm: coefficients must be square");
    CommReport rep;
    rep.verified_order = b.order - 2;
    if (rep.verified_order < 0 || b.vars.size() < 2) return rep;

    std::vector<Series> d;
    for (std::size_t v = 0; v < b.vars.size(); ++v) d.push_back(b.diff(int(v)));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t x = 0; x < d.size(); ++x)
        for (std::size_t y = x + 1; y < d.size(); ++y) pairs.emplace_back(x, y);

    std::vector<std::optional<CommWitness>> found(pairs.size());
    sweep(pairs.size(), [&](std::size_t k) {
        const auto [x, y] = pairs[k];
        const Series comm = (d[x] * d[y] - d[y] * d[x]).truncate(rep.verified_order);
        if (comm.is_zero()) return;
        const auto& [exp, m] = *comm.terms.begin();
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (m(r, c) != 0) {
                    found[k] = CommWitness{b.vars[x], b.vars[y], exp, r, c, m(r, c)};
                    return;
                }
    });
    for (auto& w : found)
        if (w) {
            rep.pass = false;
            rep.witness = std::move(*w);
            break;
        }
    return rep;
}

Series structure_constants(const VectorField& a, int va, int vb) {
    validate_field(a);
    const std::size_t n = a.size();
    Series out = Series::zero(a.front().vars, std::max(a.front().order - 2, 0), n, 1);
    for (std::size_t c = 0; c < n; ++c) accumulate_entry(out, a[c].diff(va).diff(vb), c, 0);
    return out;
}

AssocReport assoc_check(const VectorField& a) {
    validate_field(a);
    const int n = int(a.size());
    const int order = a.front().order;
    AssocReport rep;
    rep.verified_order = order - 3;
    if (rep.verified_order < 0) return rep;

    // mul[x] holds the multiplication by d_x: entry (f, e) = d_x d_e A^f.
    std::vector<Series> mul;
    for (int x = 0; x < n; ++x) {
        Series m = Series::zero(a.front().vars, std::max(order - 2, 0), std::size_t(n),
                                std::size_t(n));
        for (int f = 0; f < n; ++f)
            for (int e = 0; e < n; ++e)
                accumulate_entry(m, a[std::size_t(f)].diff(x).diff(e), std::size_t(f),
                                 std::size_t(e));
        mul.push_back(std::move(m));
    }
    const std::size_t np = std::size_t(n);
    std::vector<std::vector<Series>> prod(np);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            prod[std::size_t(x)].push_back((mul[std::size_t(x)] * mul[std::size_t(y)])
                                               .truncate(rep.verified_order));

    // (d_va d_vb) d_vc versus d_va (d_vb d_vc), written through the products.
    std::vector<std::array<int, 3>> triples;
    for (int va = 0; va < n; ++va)
        for (int vb = 0; vb < n; ++vb)
            for (int vc = 0; vc < n; ++vc) triples.push_back({va, vb, vc});
    std::vector<std::optional<AssocWitness>> found(triples.size());
    sweep(triples.size(), [&](std::size_t k) {
        const auto [va, vb, vc] = triples[k];
        const Series lhs = column_of(prod[std::size_t(vc)][std::size_t(va)], std::size_t(vb));
        const Series rhs = column_of(prod[std::size_t(va)][std::size_t(vb)], std::size_t(vc));
        const Series diff = lhs - rhs;
        if (diff.is_zero()) return;
        const auto& [exp, m] = *diff.terms.begin();
        for (int f = 0; f < n; ++f)
            if (m(std::size_t(f), 0) != 0) {
                found[k] = AssocWitness{va, vb, vc, f, exp, m(std::size_t(f), 0)};
                return;
            }
    });
    for (auto& w : found)
        if (w) {
            rep.pass = false;
            rep.witness = std::move(*w);
            break;
        }
    return rep;
}

bool has_flat_identity(const VectorField& a, int unit) {
    validate_field(a);
    const int n = int(a.size());
    if (unit < 0 || unit >= n) throw std::out_of_range("has_flat_identity: bad coordinate");
    const int reliable = a.front().order - 2;
    if (reliable < 0) return true;
    for (int va = 0; va < n; ++va)
        for (int c = 0; c < n; ++c) {
            Series d = a[std::size_t(c)].diff(va).diff(unit);
            Series expect = Series::zero(a.front().vars, reliable, 1, 1);
            if (va == c) {
                Mat one(1, 1);
                one(0, 0) = 1;
                expect.set_coefficient(std::vector<int>(a.front().vars.size(), 0),
                                       std::move(one));
            }
            if (!(d == expect)) return false;
        }
    return true;
}

Series b_from_a(const VectorField& a) {
    validate_field(a);
    const std::size_t n = a.size();
    Series out = Series::zero(a.front().vars, std::max(a.front().order - 1, 0), n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t v = 0; v < n; ++v) accumulate_entry(out, a[c].diff(int(v)), c, v);
    return out;
}

VectorField a_from_b(const Series& b, const std::vector<Rat>& h) {
    check_series(b);
    if (b.rows != b.cols) throw std::invalid_argument("a_from_b: coefficients must be square");
    const std::size_t n = b.vars.size();
    if (n != b.rows)
        throw std::invalid_argument("a_from_b: need one variable per matrix dimension");
    if (h.size() != n) throw std::invalid_argument("a_from_b: h needs one entry per dimension");
    const int order = b.order;

    // Coordinate change candidate: the components of B(t)h, constant term
    // dropped so that composition stays inside the truncated ring.
    std::vector<Series> phi(n, Series::zero(b.vars, order, 1, 1));
    for (const auto& [exp, m] : b.terms) {
        if (total_of(exp) == 0) continue;
        for (std::size_t c = 0; c < n; ++c) {
            Rat val = 0;
            for (std::size_t col = 0; col < n; ++col) val += m(c, col) * h[col];
            if (val == 0) continue;
            Mat cell(1, 1);
            cell(0, 0) = val;
            phi[c].add_term(exp, cell);
        }
    }

    Mat lin(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<int> e(n, 0);
            e[v] = 1;
            lin(c, v) = phi[c].coefficient(e)(0, 0);
        }
    const auto lin_inv = invert(lin);
    if (!lin_inv) throw std::invalid_argument("a_from_b: h is not primitive");

    // Formal inverse of phi, one correct degree per refinement round.
    std::vector<Series> tail(n, Series::zero(b.vars, order, 1, 1));
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& [exp, m] : phi[c].terms)
            if (total_of(exp) >= 2) tail[c].set_coefficient(exp, m);
    auto linear_combination = [&](const std::vector<Series>& parts, std::size_t row) {
        Series out = Series::zero(b.vars, order, 1, 1);
        for (std::size_t v = 0; v < n; ++v)
            if ((*lin_inv)(row, v) != 0) out = out + (*lin_inv)(row, v) * parts[v];
        return out;
    };
    std::vector<Series> ident;
    for (std::size_t v = 0; v < n; ++v) ident.push_back(Series::variable(b.vars, order, b.vars[v]));
    std::vector<Series> inv(n);
    for (std::size_t c = 0; c < n; ++c) inv[c] = linear_combination(ident, c);
    for (int round = 2; round <= order; ++round) {
        std::vector<Series> parts;
        for (std::size_t v = 0; v < n; ++v) parts.push_back(ident[v] - compose(tail[v], inv));
        for (std::size_t c = 0; c < n; ++c) inv[c] = linear_combination(parts, c);
    }

    const Series moved = compose(b, inv);

    // The rows of the transported series must be closed 1-forms; this is
    // what makes the termwise integral below well defined.
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const Series dx = moved.diff(int(x)), dy = moved.diff(int(y));
            if (!(column_of(dx, y) == column_of(dy, x)))
                throw std::runtime_error("a_from_b: transported rows are not closed 1-forms");
        }

    VectorField out;
    for (std::size_t c = 0; c < n; ++c) {
        Series s = Series::zero(b.vars, order + 1, 1, 1);
        for (const auto& [exp, m] : moved.terms) {
            const int deg = total_of(exp);
            for (std::size_t v = 0; v < n; ++v) {
                if (m(c, v) == 0) continue;
                std::vector<int> up = exp;
                ++up[v];
                Mat cell(1, 1);
                cell(0, 0) = m(c, v) / Rat(deg + 1);
                s.add_term(up, cell);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

Series glue(const Series& b1, const VectorField& a2, const std::vector<Rat>& h) {
    check_series(b1);
    validate_field(a2);
    const Series b2 = b_from_a(a2);
    if (b1.rows != b2.rows || b1.cols != b2.cols)
        throw std::invalid_argument("glue: fiber dimensions differ");
    if (h.size() != b1.cols) throw std::invalid_argument("glue: h needs one entry per dimension");
    for (const std::string& name : b2.vars)
        if (b1.var_index(name) >= 0)
            throw std::invalid_argument("glue: variable sets collide on '" + name + "'");

    const int order = std::min(b1.order, b2.order);
    std::vector<std::string> vars = b1.vars;
    vars.insert(vars.end(), b2.vars.begin(), b2.vars.end());

    std::vector<Series> inner;
    for (std::size_t c = 0; c < b2.vars.size(); ++c) {
        Series s = Series::variable(vars, order, b2.vars[c]);
        for (const auto& [exp, m] : b1.terms) {
            if (total_of(exp) > order) continue;
            Rat val = 0;
            for (std::size_t col = 0; col < b1.cols; ++col) val += m(c, col) * h[col];
            if (val == 0) continue;
            std::vector<int> wide = exp;
            wide.resize(vars.size(), 0);
            Mat cell(1, 1);
            cell(0, 0) = val;
            s.add_term(wide, cell);
        }
        inner.push_back(std::move(s));
    }
    return compose(b2, inner);
}

ProjectionResult formal_projection(const Series& base, const Series& total) {
    check_series(base);
    check_series(total);
    if (base.rows != total.rows || base.cols != total.cols)
        throw std::invalid_argument("formal_projection: coefficient shapes differ");

    // Split total's variables into the base block and the fiber block; the
    // base variables must appear in order.
    const std::size_t p = base.vars.size();
    std::vector<std::string> thetas;
    std::vector<std::size_t> base_pos, theta_pos;
    {
        std::size_t at = 0;
        for (std::size_t v = 0; v < total.vars.size(); ++v) {
            if (at < p && total.vars[v] == base.vars[at]) {
                base_pos.push_back(v);
                ++at;
            } else {
                thetas.push_back(total.vars[v]);
                theta_pos.push_back(v);
            }
        }
        if (at != p)
            throw std::invalid_argument("formal_projection: total is missing base variables");
    }
    if (thetas.empty())
        throw std::invalid_argument("formal_projection: no fiber variables to project out");

    const int shared = std::min(base.order, total.order);
    if (!(total.restrict_zero(thetas).truncate(shared) == base.truncate(shared)))
        throw std::invalid_argument("formal_projection: total does not restrict to base");

    ProjectionResult res;
    res.theta_vars = thetas;

    std::vector<Series> bmat;
    for (std::size_t i = 0; i < p; ++i) bmat.push_back(base.diff(int(i)));

    std::vector<Series> phi;
    for (std::size_t i = 0; i < p; ++i)
        phi.push_back(Series::variable(total.vars, total.order, base.vars[i]));

    const std::size_t q = thetas.size();
    const std::size_t block = base.rows * base.cols;
    for (int d = 1; d <= shared; ++d) {
        const int cap = shared - d; // reliable base degree at this fiber degree
        const auto mons = exponents_up_to(p, cap);

        const Series composite = compose(base, phi);
        const Series defect = total.truncate(composite.order) - composite;

        // Bucket the defect by its fiber exponent.
        std::map<std::vector<int>, std::map<std::vector<int>, Mat>> buckets;
        for (const auto& [exp, m] : defect.terms) {
            std::vector<int> kpart(q), tpart(p);
            for (std::size_t j = 0; j < q; ++j) kpart[j] = exp[theta_pos[j]];
            for (std::size_t i = 0; i < p; ++i) tpart[i] = exp[base_pos[i]];
            if (total_of(kpart) != d || total_of(tpart) > cap) continue;
            buckets[std::move(kpart)].emplace(std::move(tpart), m);
        }

        for (const auto& kexp : exponents_up_to(q, d)) {
            if (total_of(kexp) != d) continue;
            const auto bucket = buckets.find(kexp);

            // One dense solve per fiber exponent: unknowns are the base
            // coefficients of lambda, equations match every monomial entry.
            Mat sys(mons.size() * block, p * mons.size());
            std::vector<Rat> rhs(mons.size() * block);
            for (std::size_t k = 0; k < mons.size(); ++k) {
                if (bucket != buckets.end()) {
                    auto hit = bucket->second.find(mons[k]);
                    if (hit != bucket->second.end())
                        for (std::size_t r = 0; r < base.rows; ++r)
                            for (std::size_t c = 0; c < base.cols; ++c)
                                rhs[k * block + r * base.cols + c] = hit->second(r, c);
                }
                for (std::size_t i = 0; i < p; ++i)
                    for (std::size_t k2 = 0; k2 < mons.size(); ++k2) {
                        std::vector<int> rem(p);
                        bool ok = true;
                        for (std::size_t v = 0; v < p; ++v) {
                            rem[v] = mons[k][v] - mons[k2][v];
                            if (rem[v] < 0) ok = false;
                        }
                        if (!ok) continue;
                        const Mat bc = bmat[i].coefficient(rem);
                        for (std::size_t r = 0; r < base.rows; ++r)
                            for (std::size_t c = 0; c < base.cols; ++c)
                                sys(k * block + r * base.cols + c, i * mons.size() + k2) =
                                    bc(r, c);
                    }
            }
            const auto sol = solve_dense(sys, rhs);
            if (!sol) {
                res.status = ProjectionResult::Status::Inconsistent;
                res.detail = "defect at fiber exponent " + exp_string(thetas, kexp) +
                             " lies outside the span of the derivative matrices";
                return res;
            }

            auto to_field = [&](const std::vector<Rat>& flat) {
                std::vector<Series> lam(p, Series::zero(base.vars, cap, 1, 1));
                for (std::size_t i = 0; i < p; ++i)
                    for (std::size_t k = 0; k < mons.size(); ++k) {
                        const Rat& v = flat[i * mons.size() + k];
                        if (v == 0) continue;
                        Mat cell(1, 1);
                        cell(0, 0) = v;
                        lam[i].set_coefficient(mons[k], std::move(cell));
                    }
                return lam;
            };
            std::vector<Series> lam = to_field(sol->particular);
            if (!sol->nullspace.empty()) {
                res.unique = false;
                for (const auto& vec : sol->nullspace) res.nullspace[kexp].push_back(to_field(vec));
            }

            // Fold the solved coefficients into the coordinate change.
            for (std::size_t i = 0; i < p; ++i)
                for (const auto& [mexp, cell] : lam[i].terms) {
                    std::vector<int> wide(total.vars.size(), 0);
                    for (std::size_t v = 0; v < p; ++v) wide[base_pos[v]] = mexp[v];
                    for (std::size_t j = 0; j < q; ++j) wide[theta_pos[j]] = kexp[j];
                    if (total_of(wide) <= total.order) phi[i].add_term(wide, cell);
                }
            res.lambda.emplace(kexp, std::move(lam));
        }
    }
    return res;
}

const char* verdict_name(MaximalityReport::Verdict v) {
    switch (v) {
        case MaximalityReport::Verdict::Strict: return "strict";
        case MaximalityReport::Verdict::MaximalNotStrict: return "maximal-not-strict";
        case MaximalityReport::Verdict::NotMaximal: return "not-maximal";
        case MaximalityReport::Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

MaximalityReport check_maximality(const Series& b, int order) {
    check_series(b);
    if (b.rows != b.cols)
        throw std::invalid_argument("check_maximality: coefficients must be square");
    if (b.vars.empty()) throw std::invalid_argument("check_maximality: no variables");

    MaximalityReport rep;
    const std::size_t p = b.vars.size(), f = b.rows;
    const int ord = std::max(0, std::min(order, b.order - 1));
    rep.order = ord;

    std::vector<Series> bi;
    for (std::size_t v = 0; v < p; ++v) bi.push_back(b.diff(int(v)));

    const auto mons = exponents_up_to(p, ord);
    std::map<std::vector<int>, std::size_t> mon_at;
    for (std::size_t k = 0; k < mons.size(); ++k) mon_at.emplace(mons[k], k);
    const std::size_t m_count = mons.size();
    const std::size_t dim = m_count * f * f;
    auto coord = [&](std::size_t mon, std::size_t r, std::size_t c) {
        return mon * f * f + r * f + c;
    };

    // Centralizer of the derivative matrices inside the truncated ring:
    // nullspace of [c(t), b_i(t)] = 0, one block row per generator and
    // target monomial.
    Mat sys(p * dim, dim);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < m_count; ++k)
            for (std::size_t k2 = 0; k2 < m_count; ++k2) {
                std::vector<int> rem(p);
                bool ok = true;
                for (std::size_t v = 0; v < p; ++v) {
                    rem[v] = mons[k][v] - mons[k2][v];
                    if (rem[v] < 0) ok = false;
                }
                if (!ok) continue;
                const Mat bc = bi[i].coefficient(rem);
                if (bc.is_zero()) continue;
                // entry (r, c) of C_{k2} * bc - bc * C_{k2}
                for (std::size_t r = 0; r < f; ++r)
                    for (std::size_t c = 0; c < f; ++c) {
                        const std::size_t row = i * dim + coord(k, r, c);
                        for (std::size_t e = 0; e < f; ++e) {
                            sys(row, coord(k2, r, e)) += bc(e, c);
                            sys(row, coord(k2, e, c)) -= bc(r, e);
                        }
                    }
            }
    const auto cent = solve_dense(sys, std::vector<Rat>(p * dim));

    // Module generated by the b_i: truncated products monomial * b_i.
    auto product_vector = [&](std::size_t i, const std::vector<int>& shift) {
        std::vector<Rat> out(dim);
        for (const auto& [exp, m] : bi[i].terms) {
            std::vector<int> sum(p);
            for (std::size_t v = 0; v < p; ++v) sum[v] = exp[v] + shift[v];
            auto at = mon_at.find(sum);
            if (at == mon_at.end()) continue;
            for (std::size_t r = 0; r < f; ++r)
                for (std::size_t c = 0; c < f; ++c) out[coord(at->second, r, c)] = m(r, c);
        }
        return out;
    };
    RowReducer span(false);
    for (std::size_t i = 0; i < p; ++i)
        for (const auto& shift : mons) span.add_row(dense_to_sparse(product_vector(i, shift)));

    rep.truncated_maximal = true;
    for (const auto& z : cent->nullspace)
        if (!span.reduce(dense_to_sparse(z)).empty()) {
            rep.truncated_maximal = false;
            break;
        }

    // Freeness: products whose leading content survives the truncation
    // must stay independent.
    rep.truncated_free = true;
    std::size_t free_count = 0;
    RowReducer free_red(false);
    for (std::size_t i = 0; i < p; ++i) {
        if (bi[i].is_zero()) {
            rep.truncated_free = false;
            continue;
        }
        int low = bi[i].order;
        for (const auto& [exp, m] : bi[i].terms) low = std::min(low, total_of(exp));
        for (const auto& shift : mons) {
            if (total_of(shift) + low > ord) continue;
            ++free_count;
            free_red.add_row(dense_to_sparse(product_vector(i, shift)));
        }
    }
    if (free_red.rank() != free_count) rep.truncated_free = false;

    // Degree-0 test: constant centralizer of the b_i(0) against their span.
    const std::vector<int> origin(p, 0);
    Mat sys0(p * f * f, f * f);
    for (std::size_t i = 0; i < p; ++i) {
        const Mat b0 = bi[i].coefficient(origin);
        for (std::size_t r = 0; r < f; ++r)
            for (std::size_t c = 0; c < f; ++c)
                for (std::size_t e = 0; e < f; ++e) {
                    sys0(i * f * f + r * f + c, r * f + e) += b0(e, c);
                    sys0(i * f * f + r * f + c, e * f + c) -= b0(r, e);
                }
    }
    const auto cent0 = solve_dense(sys0, std::vector<Rat>(p * f * f));
    RowReducer span0(false);
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Rat> flat(f * f);
        const Mat b0 = bi[i].coefficient(origin);
        for (std::size_t r = 0; r < f; ++r)
            for (std::size_t c = 0; c < f; ++c) flat[r * f + c] = b0(r, c);
        span0.add_row(dense_to_sparse(flat));
    }
    rep.zero_maximal = true;
    for (const auto& z : cent0->nullspace)
        if (!span0.reduce(dense_to_sparse(z)).empty()) {
            rep.zero_maximal = false;
            break;
        }
    rep.zero_strict = rep.zero_maximal && span0.rank() == p;

    if (!rep.truncated_maximal) rep.verdict = MaximalityReport::Verdict::NotMaximal;
    else if (!rep.zero_maximal) rep.verdict = MaximalityReport::Verdict::Inconclusive;
    else if (rep.zero_strict && rep.truncated_free)
        rep.verdict = MaximalityReport::Verdict::Strict;
    else rep.verdict = MaximalityReport::Verdict::MaximalNotStrict;
    return rep;
}

} // namespace painted
