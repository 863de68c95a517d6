#pragma once

#include <map>
#include <string>
#include <vector>

#include "painted/matrix.hpp"

namespace painted {

// Matrix-valued polynomial in named commuting variables, truncated by total
// degree: terms above `order` are unrepresentable and silently dropped by all
// arithmetic, so an instance stands for its value modulo degree order+1.
// Exponent vectors align with `vars`; zero coefficient matrices are never
// stored. The term map is ordered, which makes iteration (and serialized
// output) deterministic.
struct Series {
    std::vector<std::string> vars;
    int order = 0;
    std::size_t rows = 0, cols = 0;
    std::map<std::vector<int>, Mat> terms;

    static Series zero(std::vector<std::string> vars, int order,
                       std::size_t rows, std::size_t cols);
    // the coordinate function of one variable, as a 1x1 series
    static Series variable(std::vector<std::string> vars, int order,
                           const std::string& name);

    int var_index(const std::string& name) const;  // -1 when absent
    bool is_zero() const { return terms.empty(); }

    Mat coefficient(const std::vector<int>& exp) const;
    // validates shape and degree; zero matrices erase the term
    void set_coefficient(const std::vector<int>& exp, Mat value);
    void add_term(const std::vector<int>& exp, const Mat& value);

    Series truncate(int new_order) const;
    // partial derivative; the result is reliable only one degree lower
    Series diff(int var) const;
    // same series over a superset of variables (old exponents embedded)
    Series embed(const std::vector<std::string>& new_vars) const;
    // set the named variables to zero and remove them from the variable list
    Series restrict_zero(const std::vector<std::string>& dead) const;

    bool operator==(const Series& o) const = default;
};

// throws std::invalid_argument on malformed structure (bad shapes, unknown
// degree overflow, duplicate variable names)
void check_series(const Series& s);

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);  // matrix product
Series operator*(const Rat& c, const Series& a);

// Substitute one scalar series per variable of `outer`. The inner series all
// live over one common variable set and must have no constant term, so the
// composition is well-defined under truncation; the result order is the
// smallest order involved.
Series compose(const Series& outer, const std::vector<Series>& inner);

} // namespace painted
