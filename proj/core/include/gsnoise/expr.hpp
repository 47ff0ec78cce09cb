#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsnoise/random.hpp"

namespace gsnoise {

/// Output vector of a program over a fixed, ordered instance set.
using SemanticVector = std::vector<double>;

/// Analytic quotient a / sqrt(1 + b^2): a division surrogate with no pole.
inline double aq(double a, double b) noexcept
{
    return a / std::sqrt(1.0 + b * b);
}

enum class Op : std::uint8_t { Add, Sub, Mul, AQ };

inline constexpr Op kAllOps[] = {Op::Add, Op::Sub, Op::Mul, Op::AQ};

const char* op_symbol(Op op) noexcept;

struct Node {
    enum class Kind : std::uint8_t { Function, Variable, Constant };

    Kind kind = Kind::Constant;
    Op op = Op::Add;
    std::uint32_t var = 0;
    double value = 0.0;

    static Node function(Op op) { return {Kind::Function, op, 0, 0.0}; }
    static Node variable(std::uint32_t index) { return {Kind::Variable, Op::Add, index, 0.0}; }
    static Node constant(double v) { return {Kind::Constant, Op::Add, 0, v}; }

    bool is_function() const noexcept { return kind == Kind::Function; }
    bool is_terminal() const noexcept { return kind != Kind::Function; }

    friend bool operator==(const Node&, const Node&) = default;
};

/// Immutable binary expression tree stored in prefix order.
///
/// Every function node is binary, so a subtree rooted at position i spans
/// the half-open range [i, subtree_end(i)). Single terminal = depth 1.
class ExprTree {
public:
    /// Validates arity consistency of the prefix sequence.
    explicit ExprTree(std::vector<Node> prefix);

    static ExprTree constant(double value);
    static ExprTree variable(std::uint32_t index);
    static ExprTree apply(Op op, const ExprTree& lhs, const ExprTree& rhs);

    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const Node& root() const noexcept { return nodes_.front(); }

    std::size_t depth() const;
    std::size_t subtree_end(std::size_t i) const;
    std::size_t subtree_depth(std::size_t i) const;
    /// Depth at which node i sits (root = 1).
    std::size_t node_level(std::size_t i) const;

    ExprTree subtree(std::size_t i) const;
    ExprTree replace_subtree(std::size_t i, const ExprTree& replacement) const;

    /// Largest variable index referenced, or -1 when the tree has none.
    long max_variable() const noexcept;

    /// Prefix text, e.g. `(AQ (+ x0 0.25) x1)`.
    std::string to_prefix() const;

    friend bool operator==(const ExprTree&, const ExprTree&) = default;

private:
    std::vector<Node> nodes_;
};

ExprTree parse_prefix(std::string_view text);

/// Instance matrix (n rows, d columns) shared by every evaluation in a run.
/// Stored column-major so a variable lookup is one contiguous column.
class EvalContext {
public:
    EvalContext() = default;
    EvalContext(std::size_t rows, std::size_t cols, std::vector<double> column_major);

    static EvalContext from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::span<const double> column(std::size_t j) const
    {
        return {data_.data() + j * rows_, rows_};
    }
    double at(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
    std::vector<double> row(std::size_t i) const;

    friend bool operator==(const EvalContext&, const EvalContext&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Evaluates the tree on every row of ctx. Throws DimensionError if the tree
/// references a variable the context does not have.
SemanticVector eval_tree(const ExprTree& tree, const EvalContext& ctx);

/// Scalar evaluation at one input point.
double eval_point(const ExprTree& tree, std::span<const double> x);

/// Koza grow: function vs terminal with probability 1/2 above the depth
/// bound, terminals only at it. Constants are uniform in [-1, 1].
ExprTree grow(std::size_t max_depth, std::size_t dims, Rng& rng);

/// Koza full: functions on every level above max_depth, terminals at it.
ExprTree full(std::size_t max_depth, std::size_t dims, Rng& rng);

/// Ramped half-and-half over depths 2..max_depth. Individual i belongs to
/// ramp bucket i mod (max_depth - 1); within a bucket grow and full alternate.
std::vector<ExprTree> ramped_half_and_half(std::size_t pop_size, std::size_t max_depth,
                                           std::size_t dims, Rng& rng);

} // namespace gsnoise
