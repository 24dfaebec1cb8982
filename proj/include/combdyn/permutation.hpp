#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "combdyn/errors.hpp"

namespace combdyn {

// A permutation of {1, ..., n}.  Points are 1-indexed throughout the public
// surface; the backing vector is the image table (image_[i-1] = theta(i)).
// Immutable after construction.
class Permutation {
public:
    static Permutation identity(int n) {
        check_n(n);
        std::vector<int> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 1);
        return Permutation(std::move(img), Checked{});
    }

    // From an image table [theta(1), ..., theta(n)].
    static Permutation from_image(std::vector<int> image) {
        const int n = static_cast<int>(image.size());
        check_n(n);
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : image) {
            if (v < 1 || v > n) throw domain_error("image value out of range: " + std::to_string(v));
            if (seen[static_cast<std::size_t>(v - 1)]++)
                throw domain_error("image is not a bijection: value " + std::to_string(v) + " repeats");
        }
        return Permutation(std::move(image), Checked{});
    }

    // From one cycle listing all of {1,...,n}: (c_1, c_2, ..., c_n) means
    // theta(c_i) = c_{i+1} and theta(c_n) = c_1.  So "1,2,3,4" is the map
    // 1->2, 2->3, 3->4, 4->1.
    static Permutation from_cycle(const std::vector<int>& cycle) {
        const int n = static_cast<int>(cycle.size());
        check_n(n);
        if (n < 2) throw domain_error("a cyclic permutation needs n >= 2");
        std::vector<int> img(static_cast<std::size_t>(n), 0);
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : cycle) {
            if (v < 1 || v > n) throw domain_error("cycle entry out of range: " + std::to_string(v));
            if (seen[static_cast<std::size_t>(v - 1)]++)
                throw domain_error("cycle entry repeats: " + std::to_string(v));
        }
        for (int i = 0; i < n; ++i)
            img[static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)] - 1)] =
                cycle[static_cast<std::size_t>((i + 1) % n)];
        return Permutation(std::move(img), Checked{});
    }

    int n() const { return static_cast<int>(image_.size()); }

    // theta(i), 1-indexed.
    int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)]; }

    const std::vector<int>& image() const { return image_; }

    bool operator==(const Permutation& o) const { return image_ == o.image_; }
    bool operator!=(const Permutation& o) const { return !(*this == o); }
    bool operator<(const Permutation& o) const { return image_ < o.image_; }

    bool is_identity() const {
        for (int i = 1; i <= n(); ++i)
            if ((*this)(i) != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> img(image_.size());
        for (int i = 1; i <= n(); ++i) img[static_cast<std::size_t>((*this)(i)-1)] = i;
        return Permutation(std::move(img), Checked{});
    }

    // Lengths of the disjoint cycles (fixed points count as 1), sorted
    // ascending; entries sum to n.
    std::vector<int> cycle_type() const {
        std::vector<int> type;
        std::vector<char> seen(image_.size(), 0);
        for (int i = 1; i <= n(); ++i) {
            if (seen[static_cast<std::size_t>(i - 1)]) continue;
            int len = 0;
            for (int j = i; !seen[static_cast<std::size_t>(j - 1)]; j = (*this)(j)) {
                seen[static_cast<std::size_t>(j - 1)] = 1;
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.begin(), type.end());
        return type;
    }

    bool is_cycle() const {
        return n() >= 2 && static_cast<int>(cycle_type().size()) == 1;
    }

    std::vector<int> fixed_points() const {
        std::vector<int> fixed;
        for (int i = 1; i <= n(); ++i)
            if ((*this)(i) == i) fixed.push_back(i);
        return fixed;
    }

    // Order of the permutation = lcm of its cycle lengths.
    long order() const {
        long d = 1;
        for (int len : cycle_type()) d = std::lcm(d, static_cast<long>(len));
        return d;
    }

private:
    struct Checked {};
    Permutation(std::vector<int> image, Checked) : image_(std::move(image)) {}

    static void check_n(int n) {
        if (n < 1) throw domain_error("permutation needs n >= 1");
    }

    std::vector<int> image_;
};

// alpha after beta: result(i) = alpha(beta(i)).  Matches the matrix identity
// OM(alpha) * OM(beta) = OM(alpha beta), which is the reason the composition
// (like the matrices) reads right to left.
inline Permutation compose(const Permutation& alpha, const Permutation& beta) {
    if (alpha.n() != beta.n())
        throw domain_error("compose: size mismatch (" + std::to_string(alpha.n()) + " vs " +
                           std::to_string(beta.n()) + ")");
    std::vector<int> img(static_cast<std::size_t>(alpha.n()));
    for (int i = 1; i <= alpha.n(); ++i) img[static_cast<std::size_t>(i - 1)] = alpha(beta(i));
    return Permutation::from_image(std::move(img));
}

// theta^k for k >= 0; power(theta, 0) is the identity.
inline Permutation power(const Permutation& theta, long k) {
    if (k < 0) throw domain_error("power: exponent must be nonnegative");
    Permutation acc = Permutation::identity(theta.n());
    Permutation base = theta;
    while (k > 0) {
        if (k & 1) acc = compose(base, acc);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

// Calls fn once for each of the (n-1)! cyclic permutations of {1,...,n}, in
// a fixed order (lexicographic in the cycle written with 1 first).
inline void for_each_cycle(int n, const std::function<void(const Permutation&)>& fn) {
    if (n < 2) throw domain_error("enumerate_cycles needs n >= 2");
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 2);
    do {
        std::vector<int> cycle;
        cycle.reserve(static_cast<std::size_t>(n));
        cycle.push_back(1);
        cycle.insert(cycle.end(), rest.begin(), rest.end());
        fn(Permutation::from_cycle(cycle));
    } while (std::next_permutation(rest.begin(), rest.end()));
}

inline std::vector<Permutation> enumerate_cycles(int n) {
    std::vector<Permutation> out;
    for_each_cycle(n, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

// All n! permutations of {1,...,n}, lexicographic by image table.
inline void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
    if (n < 1) throw domain_error("enumerate_permutations needs n >= 1");
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    do {
        fn(Permutation::from_image(img));
    } while (std::next_permutation(img.begin(), img.end()));
}

}  // namespace combdyn
