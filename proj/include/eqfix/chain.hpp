#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace eqfix {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return data_[size_t(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }

    bool operator==(const IntMatrix& other) const = default;

    IntMatrix operator*(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    bool is_zero() const;

private:
    int rows_;
    int cols_;
    std::vector<Int> data_;
};

/// Graded integer chain complex. boundaries[d] maps degree d to degree d-1
/// and has shape ranks[d-1] x ranks[d]; boundaries[0] is a 0 x ranks[0]
/// placeholder. Consecutive boundaries must compose to zero.
struct ChainComplex {
    std::vector<int> ranks;
    std::vector<IntMatrix> boundaries;

    int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
    int rank(int d) const
    {
        return (d >= 0 && d <= top_degree()) ? ranks[d] : 0;
    }
    const IntMatrix* boundary(int d) const
    {
        return (d >= 1 && d <= top_degree()) ? &boundaries[d] : nullptr;
    }
    long long euler_characteristic() const;
    bool boundaries_compose_to_zero() const;
};

ChainComplex make_chain_complex(std::vector<int> ranks, std::vector<IntMatrix> boundaries);

struct SmithResult {
    int rank = 0;
    std::vector<Int> divisors;  // nonzero diagonal entries, d1 | d2 | ...
};

/// Smith normal form by naive pivoting; exact arithmetic.
SmithResult smith_normal_form(IntMatrix a);

int rank_mod_p(const IntMatrix& a, long long p);

struct IntegralHomology {
    long long betti = 0;
    std::vector<Int> torsion;  // elementary divisors > 1
};

std::vector<IntegralHomology> homology_integral(const ChainComplex& c);
std::vector<long long> homology_mod_p(const ChainComplex& c, long long p);

}  // namespace eqfix
