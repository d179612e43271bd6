#pragma once

#include <string>
#include <vector>

#include "mfs/errors.hpp"
#include "mfs/ncpartitions.hpp"
#include "mfs/series.hpp"

namespace mfs::oracle {

/// Which of the two free variables a letter of a word stands for.
enum class Color { X, Y };

/// Which interval block the evaluator eliminates first. Any choice yields the
/// same value; exposing both lets tests confirm that order-independence.
enum class BlockPick { LeftmostInterval, RightmostInterval };

/// Contribution of one non-crossing partition to the moment
///   E[ x^(c_0) s_0 x^(c_1) s_1 ... s_{m-2} x^(c_{m-1}) ],
/// where s_i are the spacer elements. Works by repeatedly eliminating an
/// interval block: a block whose surviving letters sit adjacently. A block of
/// r letters starting at word position s with internal spacers t_1..t_{r-1}
/// and trailing spacer t_r collapses to
///   v = C^{(color)}_{r-1}(t_1, ..., t_{r-1}) * t_r,
/// which is absorbed into the spacer to its left (or the running prefix when
/// the block starts the word). Blocks mixing colors contribute zero: mixed
/// cumulants of free variables vanish. Deliberately naive - element-by-element
/// matrix products, no series machinery - so it is an independent check.
template <typename Scalar>
ElementMatrix<Scalar> evaluate_partition(const NCPartition &pi, const std::vector<Color> &colors,
                                         const std::vector<ElementMatrix<Scalar>> &spacers,
                                         const MultiSeries<Scalar> &cx,
                                         const MultiSeries<Scalar> &cy,
                                         BlockPick pick = BlockPick::LeftmostInterval) {
    using Matrix = ElementMatrix<Scalar>;
    const int m = pi.ground_size;
    const auto &alg = cx.algebra();
    if (static_cast<int>(colors.size()) != m ||
        static_cast<int>(spacers.size()) != (m > 0 ? m - 1 : 0))
        throw ContextMismatch("word shape does not match the partition's ground set");

    const std::vector<int> block_of = pi.block_index();

    // rsp[i]: element currently sitting right of letter i; the final letter
    // carries the unit so the last elimination needs no special case.
    std::vector<Matrix> rsp(static_cast<std::size_t>(m));
    for (int i = 0; i + 1 < m; ++i)
        rsp[static_cast<std::size_t>(i)] = spacers[static_cast<std::size_t>(i)];
    rsp[static_cast<std::size_t>(m - 1)] = alg.unit();

    std::vector<int> word(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        word[static_cast<std::size_t>(i)] = i;

    Matrix prefix = alg.unit();
    std::vector<Matrix> args;
    while (!word.empty()) {
        // Scan for positions where a complete block sits as an interval.
        int chosen = -1;
        for (std::size_t s = 0; s < word.size(); ++s) {
            const auto &blk = pi.blocks[static_cast<std::size_t>(block_of[
                static_cast<std::size_t>(word[s])])];
            const std::size_t r = blk.size();
            if (s + r > word.size())
                continue;
            bool interval = true;
            for (std::size_t t = 0; t < r; ++t)
                if (word[s + t] != blk[t]) {
                    interval = false;
                    break;
                }
            if (!interval)
                continue;
            chosen = static_cast<int>(s);
            if (pick == BlockPick::LeftmostInterval)
                break;
        }
        if (chosen < 0)
            throw ConsistencyFailure("no interval block found; partition must be crossing");
        const std::size_t s = static_cast<std::size_t>(chosen);
        const auto &blk =
            pi.blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(word[s])])];
        const std::size_t r = blk.size();

        const Color c0 = colors[static_cast<std::size_t>(blk[0])];
        bool mixed = false;
        for (int letter : blk)
            if (colors[static_cast<std::size_t>(letter)] != c0)
                mixed = true;
        if (mixed)
            return alg.zero();

        const MultiSeries<Scalar> &cum = (c0 == Color::X) ? cx : cy;
        if (static_cast<int>(r) - 1 > cum.order())
            throw DegreeOutOfRange("oracle needs cumulants up to degree " +
                                   std::to_string(r - 1));
        args.clear();
        for (std::size_t t = 0; t + 1 < r; ++t)
            args.push_back(rsp[static_cast<std::size_t>(word[s + t])]);
        Matrix v = cum.component(static_cast<int>(r) - 1)(
            std::span<const Matrix>(args.data(), args.size()));
        v = v * rsp[static_cast<std::size_t>(word[s + r - 1])];

        if (s == 0)
            prefix = prefix * v;
        else
            rsp[static_cast<std::size_t>(word[s - 1])] =
                rsp[static_cast<std::size_t>(word[s - 1])] * v;
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(s),
                   word.begin() + static_cast<std::ptrdiff_t>(s + r));
    }
    return prefix;
}

/// Moment of one word: sum of evaluate_partition over all of NC(m).
template <typename Scalar>
ElementMatrix<Scalar> word_moment(const std::vector<Color> &colors,
                                  const std::vector<ElementMatrix<Scalar>> &spacers,
                                  const MultiSeries<Scalar> &cx, const MultiSeries<Scalar> &cy,
                                  BlockPick pick = BlockPick::LeftmostInterval) {
    const int m = static_cast<int>(colors.size());
    ElementMatrix<Scalar> acc = cx.algebra().zero();
    for (const NCPartition &pi : enumerate_nc(m))
        acc += evaluate_partition(pi, colors, spacers, cx, cy, pick);
    return acc;
}

namespace detail_oracle {

/// Fill degree n of a series by evaluating a word moment on every basis tuple.
template <typename Scalar, typename WordFn>
MultilinearMap<Scalar> tabulate_map(const Algebra<Scalar> &alg, int n, WordFn &&word_fn) {
    MultilinearMap<Scalar> out(alg, n);
    const int D = alg.basis_size();
    std::vector<ElementMatrix<Scalar>> spacers(static_cast<std::size_t>(n));
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    const Eigen::Index tuples = out.arg_space();
    for (Eigen::Index flat = 0; flat < tuples; ++flat) {
        Eigen::Index rest = flat;
        for (int t = n - 1; t >= 0; --t) {
            digits[static_cast<std::size_t>(t)] = static_cast<int>(rest % D);
            rest /= D;
        }
        for (int t = 0; t < n; ++t)
            spacers[static_cast<std::size_t>(t)] =
                alg.basis_element(digits[static_cast<std::size_t>(t)]);
        const ElementMatrix<Scalar> value = word_fn(spacers);
        const auto coefs = alg.coefficients(value);
        for (int o = 0; o < D; ++o)
            out.coef(o, flat) = coefs(o);
    }
    return out;
}

} // namespace detail_oracle

/// Degree-n moment map of a single variable with cumulant series c, computed
/// purely from non-crossing partitions: the word has n+1 letters of one color
/// separated by the n arguments.
template <typename Scalar>
MultilinearMap<Scalar> moment_map(const MultiSeries<Scalar> &c, int n,
                                  BlockPick pick = BlockPick::LeftmostInterval) {
    if (n < 0 || n > c.order())
        throw DegreeOutOfRange("oracle moment degree out of range");
    if (n + 1 > kMaxOracleGroundSize)
        throw SizeLimitExceeded("oracle word longer than " +
                                std::to_string(kMaxOracleGroundSize) + " letters");
    const std::vector<Color> colors(static_cast<std::size_t>(n) + 1, Color::X);
    return detail_oracle::tabulate_map(
        c.algebra(), n, [&](const std::vector<ElementMatrix<Scalar>> &spacers) {
            return word_moment(colors, spacers, c, c, pick);
        });
}

/// Moment series of a single variable up to max_degree, oracle-computed.
template <typename Scalar>
MultiSeries<Scalar> moment_series(const MultiSeries<Scalar> &c, int max_degree,
                                  BlockPick pick = BlockPick::LeftmostInterval) {
    MultiSeries<Scalar> out(c.algebra(), max_degree);
    for (int n = 0; n <= max_degree; ++n)
        out.component(n) = moment_map(c, n, pick);
    return out;
}

/// Degree-n mixed moment map of the product of two free variables:
///   E[ xy b_1 xy b_2 ... b_n xy ],
/// a word of 2(n+1) alternating letters with unit spacers inside each xy pair.
/// Partitions with any two-colored block are skipped outright; the survivors
/// are exactly the pairs of non-crossing partitions the product formula sums.
template <typename Scalar>
MultilinearMap<Scalar> product_moment_map(const MultiSeries<Scalar> &cx,
                                          const MultiSeries<Scalar> &cy, int n,
                                          BlockPick pick = BlockPick::LeftmostInterval) {
    detail::require_same_shape(cx, cy);
    if (n < 0 || n > cx.order())
        throw DegreeOutOfRange("oracle product degree out of range");
    const int m = 2 * (n + 1);
    if (m > kMaxOracleGroundSize)
        throw SizeLimitExceeded("oracle word longer than " +
                                std::to_string(kMaxOracleGroundSize) + " letters");
    const auto &alg = cx.algebra();

    std::vector<Color> colors;
    colors.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i <= n; ++i) {
        colors.push_back(Color::X);
        colors.push_back(Color::Y);
    }

    // Keep only partitions in which every block is single-colored; the rest
    // evaluate to zero anyway, and this removes most of NC(2n+2).
    std::vector<NCPartition> kept;
    for (NCPartition &pi : enumerate_nc(m)) {
        bool mono = true;
        for (const auto &blk : pi.blocks) {
            for (int letter : blk)
                if (colors[static_cast<std::size_t>(letter)] != colors[static_cast<std::size_t>(blk[0])]) {
                    mono = false;
                    break;
                }
            if (!mono)
                break;
        }
        if (mono)
            kept.push_back(std::move(pi));
    }

    return detail_oracle::tabulate_map(
        alg, n, [&](const std::vector<ElementMatrix<Scalar>> &args) {
            // Word spacers: unit inside each xy pair, the argument after y.
            std::vector<ElementMatrix<Scalar>> spacers;
            spacers.reserve(static_cast<std::size_t>(m) - 1);
            for (int i = 0; i <= n; ++i) {
                spacers.push_back(alg.unit());
                if (i < n)
                    spacers.push_back(args[static_cast<std::size_t>(i)]);
            }
            ElementMatrix<Scalar> acc = alg.zero();
            for (const NCPartition &pi : kept)
                acc += evaluate_partition(pi, colors, spacers, cx, cy, pick);
            return acc;
        });
}

/// Mixed moment series of the product up to max_degree, oracle-computed.
template <typename Scalar>
MultiSeries<Scalar> product_moment_series(const MultiSeries<Scalar> &cx,
                                          const MultiSeries<Scalar> &cy, int max_degree,
                                          BlockPick pick = BlockPick::LeftmostInterval) {
    MultiSeries<Scalar> out(cx.algebra(), max_degree);
    for (int n = 0; n <= max_degree; ++n)
        out.component(n) = product_moment_map(cx, cy, n, pick);
    return out;
}

} // namespace mfs::oracle
