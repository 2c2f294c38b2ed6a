#include "eqfix/chain.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "eqfix/error.hpp"

namespace eqfix {

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const
{
    if (cols_ != other.rows_)
        fail("InvalidInput", "matrix shape mismatch in product");
    IntMatrix r(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0)
                continue;
            for (int j = 0; j < other.cols_; ++j)
                r.at(i, j) += v * other.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        fail("InvalidInput", "matrix shape mismatch in difference");
    IntMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j) - other.at(i, j);
    return r;
}

bool IntMatrix::is_zero() const
{
    for (const Int& v : data_)
        if (v != 0)
            return false;
    return true;
}

long long ChainComplex::euler_characteristic() const
{
    long long chi = 0;
    for (size_t d = 0; d < ranks.size(); ++d)
        chi += (d % 2 == 0) ? ranks[d] : -ranks[d];
    return chi;
}

bool ChainComplex::boundaries_compose_to_zero() const
{
    for (int d = 2; d <= top_degree(); ++d)
        if (!(boundaries[d - 1] * boundaries[d]).is_zero())
            return false;
    return true;
}

ChainComplex make_chain_complex(std::vector<int> ranks, std::vector<IntMatrix> boundaries)
{
    if (ranks.size() != boundaries.size())
        fail("InvalidInput", "chain complex needs one boundary slot per degree");
    ChainComplex c{std::move(ranks), std::move(boundaries)};
    for (int d = 1; d <= c.top_degree(); ++d) {
        if (c.boundaries[d].rows() != c.ranks[d - 1] || c.boundaries[d].cols() != c.ranks[d])
            fail("InvalidInput", "boundary matrix shape mismatch at degree " + std::to_string(d));
    }
    if (!c.boundaries_compose_to_zero())
        fail("InvalidInput", "boundary of boundary is nonzero");
    return c;
}

SmithResult smith_normal_form(IntMatrix a)
{
    const int rows = a.rows();
    const int cols = a.cols();
    SmithResult out;
    int k = 0;
    while (k < rows && k < cols) {
        // Find a nonzero pivot of minimal absolute value.
        int pr = -1, pc = -1;
        Int best = 0;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                const Int v = abs(a.at(i, j));
                if (v != 0 && (pr < 0 || v < best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0)
            break;
        if (pr != k)
            for (int j = 0; j < cols; ++j)
                std::swap(a.at(pr, j), a.at(k, j));
        if (pc != k)
            for (int i = 0; i < rows; ++i)
                std::swap(a.at(i, pc), a.at(i, k));

        bool clean = true;
        for (int i = k + 1; i < rows; ++i) {
            if (a.at(i, k) == 0)
                continue;
            Int q = a.at(i, k) / a.at(k, k);
            for (int j = k; j < cols; ++j)
                a.at(i, j) -= q * a.at(k, j);
            if (a.at(i, k) != 0)
                clean = false;
        }
        for (int j = k + 1; j < cols; ++j) {
            if (a.at(k, j) == 0)
                continue;
            Int q = a.at(k, j) / a.at(k, k);
            for (int i = k; i < rows; ++i)
                a.at(i, j) -= q * a.at(i, k);
            if (a.at(k, j) != 0)
                clean = false;
        }
        if (!clean)
            continue;  // remainders left; pick a smaller pivot next round

        // Enforce the divisibility chain: the pivot must divide everything
        // in the remaining block.
        bool divides_all = true;
        for (int i = k + 1; i < rows && divides_all; ++i)
            for (int j = k + 1; j < cols; ++j)
                if (a.at(i, j) % a.at(k, k) != 0) {
                    for (int t = k; t < cols; ++t)
                        a.at(k, t) += a.at(i, t);
                    divides_all = false;
                    break;
                }
        if (!divides_all)
            continue;

        out.divisors.push_back(abs(a.at(k, k)));
        ++k;
    }
    out.rank = static_cast<int>(out.divisors.size());
    return out;
}

int rank_mod_p(const IntMatrix& a, long long p)
{
    if (p < 2)
        fail("InvalidInput", "modulus must be a prime >= 2");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            fail("InvalidInput", std::to_string(p) + " is not prime");
    const int rows = a.rows();
    const int cols = a.cols();
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            Int v = a.at(i, j) % p;
            if (v < 0)
                v += p;
            m[i][j] = v.convert_to<long long>();
        }
    auto inv_mod = [&](long long x) {
        long long r = 1, b = x % p, e = p - 2;  // p prime
        while (e) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(m[pivot], m[row]);
        const long long inv = inv_mod(m[row][col]);
        for (int j = col; j < cols; ++j)
            m[row][j] = m[row][j] * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            const long long f = m[i][col];
            for (int j = col; j < cols; ++j)
                m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<IntegralHomology> homology_integral(const ChainComplex& c)
{
    const int top = c.top_degree();
    std::vector<SmithResult> snf(top + 2);
    for (int d = 1; d <= top; ++d)
        snf[d] = smith_normal_form(c.boundaries[d]);

    std::vector<IntegralHomology> h(top + 1);
    for (int d = 0; d <= top; ++d) {
        const int rank_d = (d >= 1) ? snf[d].rank : 0;        // rank of boundary out of degree d
        const int rank_d1 = (d + 1 <= top) ? snf[d + 1].rank : 0;
        h[d].betti = c.ranks[d] - rank_d - rank_d1;
        if (d + 1 <= top)
            for (const Int& v : snf[d + 1].divisors)
                if (v > 1)
                    h[d].torsion.push_back(v);
    }
    return h;
}

std::vector<long long> homology_mod_p(const ChainComplex& c, long long p)
{
    const int top = c.top_degree();
    std::vector<int> rk(top + 2, 0);
    for (int d = 1; d <= top; ++d)
        rk[d] = rank_mod_p(c.boundaries[d], p);
    std::vector<long long> betti(top + 1);
    for (int d = 0; d <= top; ++d)
        betti[d] = c.ranks[d] - rk[d] - ((d + 1 <= top) ? rk[d + 1] : 0);
    return betti;
}

}  // namespace eqfix
