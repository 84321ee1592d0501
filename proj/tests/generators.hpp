#ifndef DUFLO_TESTS_GENERATORS_HPP
#define DUFLO_TESTS_GENERATORS_HPP

// Seeded generators for the property tests. Draws use plain modulo on
// mt19937_64 so a seed means the same cases everywhere.

#include <duflo/hodge.hpp>
#include <duflo/matrix.hpp>

#include <cstdint>
#include <random>

namespace duflo::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    long integer(long lo, long hi) { return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    bool coin(long one_in = 2) { return integer(0, one_in - 1) == 0; }

    /// Small rational with numerator in [-5,5] and denominator in [1,4].
    Rational rational()
    {
        Rational q(integer(-5, 5), integer(1, 4));
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational()
    {
        Rational q;
        do {
            q = rational();
        } while (sgn(q) == 0);
        return q;
    }

    Matrix matrix(std::size_t rows, std::size_t cols)
    {
        Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                m(r, c) = rational();
            }
        }
        return m;
    }

    /// Sparse matrix with a rank deficiency more likely than uniform draws give.
    Matrix low_rank_matrix(std::size_t rows, std::size_t cols, std::size_t rank)
    {
        Matrix left = matrix(rows, rank);
        Matrix right = matrix(rank, cols);
        return left * right;
    }

    /// Random element; with p or q >= 0 only that bidegree is drawn.
    template <typename Tag>
    BiGraded<Tag> bigraded(std::size_t n, int p = -1, int q = -1, long density = 2)
    {
        BiGraded<Tag> out(n);
        const Mask top = Mask{1} << n;
        for (Mask a = 0; a < top; ++a) {
            for (Mask b = 0; b < top; ++b) {
                if ((p >= 0 && std::popcount(a) != p) || (q >= 0 && std::popcount(b) != q)) {
                    continue;
                }
                if (coin(density)) {
                    out.add({a, b}, nonzero_rational());
                }
            }
        }
        return out;
    }

    FormClass form(std::size_t n, int p = -1, int q = -1) { return bigraded<FormTag>(n, p, q); }
    PolyClass poly(std::size_t n, int p = -1, int q = -1) { return bigraded<PolyTag>(n, p, q); }

    /// Random todd-like datum: 1 plus random (p,p) parts.
    FormClass todd_datum(std::size_t n)
    {
        FormClass t = FormClass::one(n);
        for (std::size_t p = 1; p <= n; ++p) {
            t += form(n, static_cast<int>(p), static_cast<int>(p));
        }
        return t;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace duflo::testing

#endif
