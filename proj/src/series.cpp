#include "painted/series.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace painted {

namespace {

int total_degree(const std::vector<int>& exp) {
    return std::accumulate(exp.begin(), exp.end(), 0);
}

void check_same_frame(const Series& a, const Series& b) {
    if (a.vars != b.vars)
        throw std::invalid_argument("series live over different variables");
}

} // namespace

Series Series::zero(std::vector<std::string> vars, int order,
                    std::size_t rows, std::size_t cols) {
    Series s;
    s.vars = std::move(vars);
    s.order = order;
    s.rows = rows;
    s.cols = cols;
    check_series(s);
    return s;
}

Series Series::variable(std::vector<std::string> vars, int order,
                        const std::string& name) {
    Series s = zero(std::move(vars), order, 1, 1);
    const int v = s.var_index(name);
    if (v < 0) throw std::invalid_argument("unknown variable " + name);
    std::vector<int> exp(s.vars.size(), 0);
    exp[std::size_t(v)] = 1;
    Mat one(1, 1);
    one(0, 0) = 1;
    s.set_coefficient(exp, one);
    return s;
}

int Series::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return int(i);
    return -1;
}

Mat Series::coefficient(const std::vector<int>& exp) const {
    auto it = terms.find(exp);
    if (it != terms.end()) return it->second;
    return Mat(rows, cols);
}

void Series::set_coefficient(const std::vector<int>& exp, Mat value) {
    if (exp.size() != vars.size())
        throw std::invalid_argument("exponent length does not match variables");
    for (int e : exp)
        if (e < 0) throw std::invalid_argument("negative exponent");
    if (total_degree(exp) > order)
        throw std::invalid_argument("term degree above truncation order");
    if (value.rows() != rows || value.cols() != cols)
        throw std::invalid_argument("coefficient matrix has the wrong shape");
    if (value.is_zero())
        terms.erase(exp);
    else
        terms.insert_or_assign(exp, std::move(value));
}

void Series::add_term(const std::vector<int>& exp, const Mat& value) {
    Mat sum = coefficient(exp);
    sum += value;
    set_coefficient(exp, std::move(sum));
}

Series Series::truncate(int new_order) const {
    Series out = zero(vars, new_order, rows, cols);
    for (const auto& [exp, m] : terms)
        if (total_degree(exp) <= new_order) out.terms.emplace(exp, m);
    return out;
}

Series Series::diff(int var) const {
    if (var < 0 || var >= int(vars.size()))
        throw std::invalid_argument("derivative variable out of range");
    Series out = zero(vars, std::max(order - 1, 0), rows, cols);
    for (const auto& [exp, m] : terms) {
        const int k = exp[std::size_t(var)];
        if (k == 0) continue;
        std::vector<int> down = exp;
        --down[std::size_t(var)];
        Mat scaled = m;
        scaled *= Rat(k);
        out.add_term(down, scaled);
    }
    return out;
}

Series Series::embed(const std::vector<std::string>& new_vars) const {
    Series out = zero(new_vars, order, rows, cols);
    std::vector<int> where(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        where[i] = out.var_index(vars[i]);
        if (where[i] < 0)
            throw std::invalid_argument("embedding must keep every variable");
    }
    for (const auto& [exp, m] : terms) {
        std::vector<int> wide(new_vars.size(), 0);
        for (std::size_t i = 0; i < vars.size(); ++i)
            wide[std::size_t(where[i])] = exp[i];
        out.terms.emplace(std::move(wide), m);
    }
    return out;
}

Series Series::restrict_zero(const std::vector<std::string>& dead) const {
    std::vector<bool> kill(vars.size(), false);
    for (const std::string& name : dead) {
        const int v = var_index(name);
        if (v < 0) throw std::invalid_argument("unknown variable " + name);
        kill[std::size_t(v)] = true;
    }
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!kill[i]) kept.push_back(vars[i]);
    Series out = zero(kept, order, rows, cols);
    for (const auto& [exp, m] : terms) {
        bool alive = true;
        std::vector<int> small;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (kill[i])
                alive = alive && exp[i] == 0;
            else
                small.push_back(exp[i]);
        }
        if (alive) out.terms.emplace(std::move(small), m);
    }
    return out;
}

void check_series(const Series& s) {
    if (s.order < 0) throw std::invalid_argument("negative truncation order");
    if (s.rows == 0 || s.cols == 0)
        throw std::invalid_argument("series needs a nonempty matrix shape");
    std::set<std::string> seen(s.vars.begin(), s.vars.end());
    if (seen.size() != s.vars.size())
        throw std::invalid_argument("duplicate variable names");
    for (const auto& [exp, m] : s.terms) {
        if (exp.size() != s.vars.size())
            throw std::invalid_argument("exponent length does not match variables");
        for (int e : exp)
            if (e < 0) throw std::invalid_argument("negative exponent");
        if (total_degree(exp) > s.order)
            throw std::invalid_argument("term degree above truncation order");
        if (m.rows() != s.rows || m.cols() != s.cols)
            throw std::invalid_argument("coefficient matrix has the wrong shape");
        if (m.is_zero()) throw std::invalid_argument("stored zero coefficient");
    }
}

Series operator+(const Series& a, const Series& b) {
    check_same_frame(a, b);
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("series shapes differ");
    Series out = Series::zero(a.vars, std::min(a.order, b.order), a.rows, a.cols);
    for (const auto& [exp, m] : a.terms)
        if (total_degree(exp) <= out.order) out.add_term(exp, m);
    for (const auto& [exp, m] : b.terms)
        if (total_degree(exp) <= out.order) out.add_term(exp, m);
    return out;
}

Series operator-(const Series& a, const Series& b) {
    return a + (Rat(-1) * b);
}

Series operator*(const Series& a, const Series& b) {
    check_same_frame(a, b);
    if (a.cols != b.rows)
        throw std::invalid_argument("series shapes do not compose");
    Series out = Series::zero(a.vars, std::min(a.order, b.order), a.rows, b.cols);
    for (const auto& [ea, ma] : a.terms)
        for (const auto& [eb, mb] : b.terms) {
            std::vector<int> exp(ea.size());
            for (std::size_t i = 0; i < ea.size(); ++i) exp[i] = ea[i] + eb[i];
            if (total_degree(exp) > out.order) continue;
            out.add_term(exp, ma * mb);
        }
    return out;
}

Series operator*(const Rat& c, const Series& a) {
    Series out = Series::zero(a.vars, a.order, a.rows, a.cols);
    if (c == 0) return out;
    for (const auto& [exp, m] : a.terms) {
        Mat scaled = m;
        scaled *= c;
        out.terms.emplace(exp, std::move(scaled));
    }
    return out;
}

Series compose(const Series& outer, const std::vector<Series>& inner) {
    if (inner.size() != outer.vars.size())
        throw std::invalid_argument("one inner series per outer variable expected");
    int order = outer.order;
    for (const Series& s : inner) {
        if (s.rows != 1 || s.cols != 1)
            throw std::invalid_argument("inner series must be scalar");
        if (!inner.empty()) check_same_frame(s, inner.front());
        if (!s.coefficient(std::vector<int>(s.vars.size(), 0)).is_zero())
            throw std::invalid_argument("inner series must have no constant term");
        order = std::min(order, s.order);
    }
    const std::vector<std::string>& vars =
        inner.empty() ? outer.vars : inner.front().vars;
    Series out = Series::zero(vars, order, outer.rows, outer.cols);

    // powers of each inner series, grown on demand
    Series one = Series::zero(vars, order, 1, 1);
    one.set_coefficient(std::vector<int>(vars.size(), 0), Mat::identity(1));
    std::vector<std::vector<Series>> pow(inner.size(), {one});
    auto power = [&](std::size_t v, int k) -> const Series& {
        auto& store = pow[v];
        while (int(store.size()) <= k)
            store.push_back(store.back() * inner[v].truncate(order));
        return store[std::size_t(k)];
    };

    for (const auto& [exp, m] : outer.terms) {
        // inner series have no constant term, so this term cannot reach
        // degrees below its exponent total; skip what truncation would kill
        if (std::accumulate(exp.begin(), exp.end(), 0) > order) continue;
        Series monom = one;
        for (std::size_t v = 0; v < exp.size(); ++v)
            if (exp[v] > 0) monom = monom * power(v, exp[v]);
        for (const auto& [e, c] : monom.terms) {
            Mat scaled = m;
            scaled *= c(0, 0);
            out.add_term(e, scaled);
        }
    }
    return out;
}

} // namespace painted
