#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "combdyn/errors.hpp"
#include "combdyn/rational.hpp"

namespace combdyn {

// Square integer matrix with arbitrary-precision entries.  Houses both the
// Markov matrix M and the oriented Markov matrix OM.  Entry (i, j) counts
// directed edges from E_{j+1} to E_{i+1}: column = source, row = target, so
// that matrix products compose the way functions do (right to left).
class SignedMatrix {
public:
    explicit SignedMatrix(int d) : d_(check_dim(d)), entries_(static_cast<std::size_t>(d) * d, 0) {}

    static SignedMatrix identity(int d) {
        SignedMatrix m(d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1;
        return m;
    }

    static SignedMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        const int d = static_cast<int>(rows.size());
        SignedMatrix m(d);
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != d)
                throw domain_error("matrix rows must be square");
            for (int j = 0; j < d; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }

    int dim() const { return d_; }

    Int& at(int i, int j) { return entries_[idx(i, j)]; }
    const Int& at(int i, int j) const { return entries_[idx(i, j)]; }

    bool operator==(const SignedMatrix& o) const { return d_ == o.d_ && entries_ == o.entries_; }
    bool operator!=(const SignedMatrix& o) const { return !(*this == o); }

    Int trace() const {
        Int t = 0;
        for (int i = 0; i < d_; ++i) t += at(i, i);
        return t;
    }

    bool is_nonnegative() const {
        for (const Int& e : entries_)
            if (e < 0) return false;
        return true;
    }

    SignedMatrix abs() const {
        SignedMatrix m(d_);
        for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = ::abs(entries_[k]);
        return m;
    }

    int count_nonzero_diagonal() const {
        int c = 0;
        for (int i = 0; i < d_; ++i)
            if (at(i, i) != 0) ++c;
        return c;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < d_; ++i) {
            s += i == 0 ? "[" : " ";
            s += "[";
            for (int j = 0; j < d_; ++j) {
                if (j) s += ", ";
                s += at(i, j).get_str();
            }
            s += "]";
            if (i + 1 < d_) s += "\n";
        }
        return s + "]";
    }

private:
    static int check_dim(int d) {
        if (d < 1) throw domain_error("matrix dimension must be positive");
        return d;
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(j);
    }

    int d_;
    std::vector<Int> entries_;
};

inline SignedMatrix mat_mul(const SignedMatrix& a, const SignedMatrix& b) {
    if (a.dim() != b.dim())
        throw domain_error("mat_mul: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()) + ")");
    const int d = a.dim();
    SignedMatrix c(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < d; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

inline SignedMatrix mat_pow(const SignedMatrix& a, long k) {
    if (k < 0) throw domain_error("mat_pow: exponent must be nonnegative");
    SignedMatrix acc = SignedMatrix::identity(a.dim());
    SignedMatrix base = a;
    while (k > 0) {
        if (k & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        k >>= 1;
    }
    return acc;
}

inline Int trace(const SignedMatrix& a) { return a.trace(); }

}  // namespace combdyn
