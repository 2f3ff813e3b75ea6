#include "lsclique/permutation.hpp"

#include "lsclique/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace lsclique {

namespace {

void require_same_order(const Permutation& a, const Permutation& b) {
    if (a.order() != b.order())
        throw OrderMismatch("permutation orders differ: " + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()));
}

}  // namespace

Permutation Permutation::from_zero_based(std::span<const value_type> image) {
    if (image.size() > max_order)
        throw InvalidOrder("permutation order " + std::to_string(image.size()) + " exceeds " +
                           std::to_string(max_order));
    std::vector<bool> seen(image.size(), false);
    for (auto v : image) {
        if (v >= image.size() || seen[v])
            throw InvalidArgument("not a permutation: value " + std::to_string(int(v) + 1) +
                                  " out of range or repeated");
        seen[v] = true;
    }
    return Permutation(std::vector<value_type>(image.begin(), image.end()));
}

Permutation Permutation::from_one_based(std::span<const int> image) {
    std::vector<value_type> zero(image.size());
    for (std::size_t r = 0; r < image.size(); ++r) {
        if (image[r] < 1 || std::size_t(image[r]) > image.size())
            throw InvalidArgument("not a permutation: value " + std::to_string(image[r]) +
                                  " out of range 1.." + std::to_string(image.size()));
        zero[r] = value_type(image[r] - 1);
    }
    return from_zero_based(zero);
}

Permutation Permutation::identity(std::size_t n) {
    if (n > max_order)
        throw InvalidOrder("permutation order " + std::to_string(n) + " exceeds " + std::to_string(max_order));
    std::vector<value_type> image(n);
    std::iota(image.begin(), image.end(), value_type{0});
    return Permutation(std::move(image));
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> out(image_.size());
    for (std::size_t r = 0; r < image_.size(); ++r)
        out[r] = int(image_[r]) + 1;
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<value_type> inv(image_.size());
    for (std::size_t r = 0; r < image_.size(); ++r)
        inv[image_[r]] = value_type(r);
    return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t r = 0; r < image_.size(); ++r)
        os << (r ? "," : "") << int(image_[r]) + 1;
    os << ')';
    return os.str();
}

BoxPartition::BoxPartition(std::size_t p) : p_(p) {
    if (p == 0 || p * p > Permutation::max_order)
        throw InvalidOrder("box side p=" + std::to_string(p) + " out of range");
}

BoxPartition BoxPartition::for_order(std::size_t n) {
    auto p = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
    if (n == 0 || p * p != n)
        throw InvalidOrder("order " + std::to_string(n) + " is not a perfect square");
    return BoxPartition(p);
}

PermutationMatrix to_matrix(const Permutation& pi) {
    PermutationMatrix m(pi.order());
    for (std::size_t r = 0; r < pi.order(); ++r)
        m.set(r, pi[r], 1);
    return m;
}

Permutation from_matrix(const PermutationMatrix& m) {
    const auto n = m.order();
    std::vector<Permutation::value_type> image(n);
    std::vector<std::size_t> col_sum(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t row_sum = 0;
        for (std::size_t c = 0; c < n; ++c) {
            auto v = m.at(r, c);
            if (v > 1)
                throw NotAPermutationMatrix("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                            ") is neither 0 nor 1");
            if (v) {
                ++row_sum;
                ++col_sum[c];
                image[r] = Permutation::value_type(c);
            }
        }
        if (row_sum != 1)
            throw NotAPermutationMatrix("row " + std::to_string(r + 1) + " sums to " + std::to_string(row_sum));
    }
    for (std::size_t c = 0; c < n; ++c)
        if (col_sum[c] != 1)
            throw NotAPermutationMatrix("column " + std::to_string(c + 1) + " sums to " +
                                        std::to_string(col_sum[c]));
    return Permutation::from_zero_based(image);
}

bool is_disjoint(const Permutation& a, const Permutation& b) {
    require_same_order(a, b);
    for (std::size_t r = 0; r < a.order(); ++r)
        if (a[r] == b[r])
            return false;
    return true;
}

bool is_derangement_of(const Permutation& a, const Permutation& base) {
    return is_disjoint(a, base);
}

LexOrder lex_compare(const Permutation& a, const Permutation& b) {
    require_same_order(a, b);
    auto c = a <=> b;
    if (c < 0)
        return LexOrder::less;
    if (c > 0)
        return LexOrder::greater;
    return LexOrder::equal;
}

bool is_s_permutation(const Permutation& pi, const BoxPartition& part) {
    if (pi.order() != part.n())
        throw OrderMismatch("permutation order " + std::to_string(pi.order()) + " vs partition order " +
                            std::to_string(part.n()));
    // n ones spread over n boxes: exactly one each iff no box is hit twice.
    std::vector<bool> hit(part.n(), false);
    for (std::size_t r = 0; r < pi.order(); ++r) {
        auto b = part.box(r, pi[r]);
        if (hit[b])
            return false;
        hit[b] = true;
    }
    return true;
}

bool is_s_permutation(const Permutation& pi) {
    return is_s_permutation(pi, BoxPartition::for_order(pi.order()));
}

SPermutation::SPermutation(Permutation pi, BoxPartition part) : pi_(std::move(pi)), part_(part) {
    if (!is_s_permutation(pi_, part_))
        throw InvalidArgument(pi_.to_string() + " is not an S-permutation for p=" + std::to_string(part_.p()));
}

SPermutation sigma0(std::size_t p) {
    if (p < 2)
        throw InvalidOrder("sigma0 requires p >= 2, got " + std::to_string(p));
    BoxPartition part(p);
    std::vector<Permutation::value_type> image(part.n());
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t m = 0; m < p; ++m)
            image[k * p + m] = Permutation::value_type(m * p + k);
    return SPermutation(Permutation::from_zero_based(image), part);
}

}  // namespace lsclique
