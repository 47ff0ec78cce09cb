#include "gsnoise/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "gsnoise/error.hpp"

namespace gsnoise {

const char* op_symbol(Op op) noexcept
{
    switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::AQ: return "AQ";
    }
    return "?";
}

namespace {

bool prefix_well_formed(std::span<const Node> nodes)
{
    if (nodes.empty()) {
        return false;
    }
    std::size_t open = 1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (open == 0) {
            return false;
        }
        --open;
        if (nodes[i].is_function()) {
            open += 2;
        }
    }
    return open == 0;
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

} // namespace

ExprTree::ExprTree(std::vector<Node> prefix) : nodes_(std::move(prefix))
{
    if (!prefix_well_formed(nodes_)) {
        throw ConfigError("malformed prefix expression: arity does not close");
    }
}

ExprTree ExprTree::constant(double value)
{
    return ExprTree({Node::constant(value)});
}

ExprTree ExprTree::variable(std::uint32_t index)
{
    return ExprTree({Node::variable(index)});
}

ExprTree ExprTree::apply(Op op, const ExprTree& lhs, const ExprTree& rhs)
{
    std::vector<Node> out;
    out.reserve(1 + lhs.size() + rhs.size());
    out.push_back(Node::function(op));
    out.insert(out.end(), lhs.nodes_.begin(), lhs.nodes_.end());
    out.insert(out.end(), rhs.nodes_.begin(), rhs.nodes_.end());
    return ExprTree(std::move(out));
}

std::size_t ExprTree::subtree_end(std::size_t i) const
{
    std::size_t open = 1;
    std::size_t j = i;
    while (open > 0) {
        --open;
        if (nodes_[j].is_function()) {
            open += 2;
        }
        ++j;
    }
    return j;
}

std::size_t ExprTree::subtree_depth(std::size_t i) const
{
    const std::size_t end = subtree_end(i);
    std::vector<std::size_t> stack;
    for (std::size_t j = end; j-- > i;) {
        if (nodes_[j].is_function()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            const std::size_t b = stack.back();
            stack.back() = 1 + std::max(a, b);
        } else {
            stack.push_back(1);
        }
    }
    return stack.back();
}

std::size_t ExprTree::depth() const
{
    return subtree_depth(0);
}

std::size_t ExprTree::node_level(std::size_t i) const
{
    // Pending child slots, each tagged with the level it will occupy.
    std::vector<std::size_t> pending{1};
    for (std::size_t j = 0;; ++j) {
        const std::size_t level = pending.back();
        pending.pop_back();
        if (j == i) {
            return level;
        }
        if (nodes_[j].is_function()) {
            pending.push_back(level + 1);
            pending.push_back(level + 1);
        }
    }
}

ExprTree ExprTree::subtree(std::size_t i) const
{
    const auto end = subtree_end(i);
    return ExprTree(std::vector<Node>(nodes_.begin() + static_cast<std::ptrdiff_t>(i),
                                      nodes_.begin() + static_cast<std::ptrdiff_t>(end)));
}

ExprTree ExprTree::replace_subtree(std::size_t i, const ExprTree& replacement) const
{
    const auto end = subtree_end(i);
    std::vector<Node> out;
    out.reserve(nodes_.size() - (end - i) + replacement.size());
    out.insert(out.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(out.end(), replacement.nodes_.begin(), replacement.nodes_.end());
    out.insert(out.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
    return ExprTree(std::move(out));
}

long ExprTree::max_variable() const noexcept
{
    long best = -1;
    for (const auto& n : nodes_) {
        if (n.kind == Node::Kind::Variable) {
            best = std::max(best, static_cast<long>(n.var));
        }
    }
    return best;
}

std::string ExprTree::to_prefix() const
{
    std::string out;
    // Remaining children to close per open function.
    std::vector<int> open;
    for (const auto& n : nodes_) {
        if (!open.empty() && out.back() != '(') {
            out += ' ';
        }
        switch (n.kind) {
        case Node::Kind::Function:
            out += '(';
            out += op_symbol(n.op);
            open.push_back(2);
            continue;
        case Node::Kind::Variable:
            out += 'x';
            out += std::to_string(n.var);
            break;
        case Node::Kind::Constant:
            out += format_double(n.value);
            break;
        }
        while (!open.empty() && --open.back() == 0) {
            open.pop_back();
            out += ')';
        }
    }
    return out;
}

ExprTree parse_prefix(std::string_view text)
{
    std::vector<Node> nodes;
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto next_token = [&]() -> std::string_view {
        skip_space();
        if (pos >= text.size()) {
            return {};
        }
        if (text[pos] == '(' || text[pos] == ')') {
            return text.substr(pos++, 1);
        }
        const auto start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))
               && text[pos] != '(' && text[pos] != ')') {
            ++pos;
        }
        return text.substr(start, pos - start);
    };

    for (auto tok = next_token(); !tok.empty(); tok = next_token()) {
        if (tok == ")") {
            continue;
        }
        if (tok == "(") {
            const auto sym = next_token();
            Op op;
            if (sym == "+") {
                op = Op::Add;
            } else if (sym == "-") {
                op = Op::Sub;
            } else if (sym == "*") {
                op = Op::Mul;
            } else if (sym == "AQ") {
                op = Op::AQ;
            } else {
                throw ConfigError("unknown operator '" + std::string(sym) + "'");
            }
            nodes.push_back(Node::function(op));
            continue;
        }
        if (tok.front() == 'x') {
            std::uint32_t index = 0;
            auto res = std::from_chars(tok.data() + 1, tok.data() + tok.size(), index);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
                throw ConfigError("bad variable token '" + std::string(tok) + "'");
            }
            nodes.push_back(Node::variable(index));
            continue;
        }
        double value = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw ConfigError("bad constant token '" + std::string(tok) + "'");
        }
        nodes.push_back(Node::constant(value));
    }
    return ExprTree(std::move(nodes));
}

EvalContext::EvalContext(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major))
{
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("evaluation context needs at least one row and one column");
    }
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("evaluation context data size does not match rows x cols");
    }
}

EvalContext EvalContext::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty() || rows.front().empty()) {
        throw DimensionError("evaluation context needs at least one row and one column");
    }
    const auto n = rows.size();
    const auto d = rows.front().size();
    std::vector<double> data(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != d) {
            throw DimensionError("ragged input rows");
        }
        for (std::size_t j = 0; j < d; ++j) {
            data[j * n + i] = rows[i][j];
        }
    }
    return {n, d, std::move(data)};
}

std::vector<double> EvalContext::row(std::size_t i) const
{
    std::vector<double> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        out[j] = at(i, j);
    }
    return out;
}

namespace {

void apply_op(Op op, double* dst, const double* lhs, const double* rhs, std::size_t n)
{
    switch (op) {
    case Op::Add:
        for (std::size_t k = 0; k < n; ++k) dst[k] = lhs[k] + rhs[k];
        break;
    case Op::Sub:
        for (std::size_t k = 0; k < n; ++k) dst[k] = lhs[k] - rhs[k];
        break;
    case Op::Mul:
        for (std::size_t k = 0; k < n; ++k) dst[k] = lhs[k] * rhs[k];
        break;
    case Op::AQ:
        for (std::size_t k = 0; k < n; ++k) dst[k] = aq(lhs[k], rhs[k]);
        break;
    }
}

double apply_op(Op op, double a, double b) noexcept
{
    switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::AQ: return aq(a, b);
    }
    return 0.0;
}

std::size_t max_stack_height(std::span<const Node> nodes)
{
    std::size_t height = 0;
    std::size_t peak = 0;
    for (std::size_t j = nodes.size(); j-- > 0;) {
        if (nodes[j].is_function()) {
            --height;
        } else {
            ++height;
            peak = std::max(peak, height);
        }
    }
    return peak;
}

} // namespace

SemanticVector eval_tree(const ExprTree& tree, const EvalContext& ctx)
{
    if (tree.max_variable() >= static_cast<long>(ctx.cols())) {
        throw DimensionError("tree references x" + std::to_string(tree.max_variable())
                             + " but the context has " + std::to_string(ctx.cols())
                             + " variables");
    }
    const auto nodes = tree.nodes();
    const std::size_t n = ctx.rows();

    if (nodes.size() == 1) {
        const auto& leaf = nodes.front();
        if (leaf.kind == Node::Kind::Variable) {
            auto col = ctx.column(leaf.var);
            return {col.begin(), col.end()};
        }
        return SemanticVector(n, leaf.value);
    }

    thread_local std::vector<double> scratch;
    const std::size_t height = max_stack_height(nodes);
    if (scratch.size() < height * n) {
        scratch.resize(height * n);
    }
    double* base = scratch.data();
    std::size_t top = 0; // number of occupied slots

    for (std::size_t j = nodes.size(); j-- > 0;) {
        const auto& node = nodes[j];
        switch (node.kind) {
        case Node::Kind::Variable: {
            auto col = ctx.column(node.var);
            std::copy(col.begin(), col.end(), base + top * n);
            ++top;
            break;
        }
        case Node::Kind::Constant:
            std::fill_n(base + top * n, n, node.value);
            ++top;
            break;
        case Node::Kind::Function: {
            // Scanning right to left, the first child is on top.
            double* lhs = base + (top - 1) * n;
            double* rhs = base + (top - 2) * n;
            apply_op(node.op, rhs, lhs, rhs, n);
            --top;
            break;
        }
        }
    }
    return {base, base + n};
}

double eval_point(const ExprTree& tree, std::span<const double> x)
{
    if (tree.max_variable() >= static_cast<long>(x.size())) {
        throw DimensionError("tree references a variable beyond the input dimension");
    }
    std::vector<double> stack;
    const auto nodes = tree.nodes();
    for (std::size_t j = nodes.size(); j-- > 0;) {
        const auto& node = nodes[j];
        if (node.kind == Node::Kind::Variable) {
            stack.push_back(x[node.var]);
        } else if (node.kind == Node::Kind::Constant) {
            stack.push_back(node.value);
        } else {
            const double lhs = stack.back();
            stack.pop_back();
            stack.back() = apply_op(node.op, lhs, stack.back());
        }
    }
    return stack.back();
}

namespace {

Node random_terminal(std::size_t dims, Rng& rng)
{
    if (bernoulli(rng, 0.5)) {
        return Node::variable(static_cast<std::uint32_t>(uniform_index(rng, dims)));
    }
    return Node::constant(uniform(rng, -1.0, 1.0));
}

Node random_function(Rng& rng)
{
    return Node::function(kAllOps[uniform_index(rng, std::size(kAllOps))]);
}

void generate(std::vector<Node>& out, std::size_t level, std::size_t max_depth, std::size_t dims,
              bool full_method, Rng& rng)
{
    const bool function = level < max_depth && (full_method || bernoulli(rng, 0.5));
    if (!function) {
        out.push_back(random_terminal(dims, rng));
        return;
    }
    out.push_back(random_function(rng));
    generate(out, level + 1, max_depth, dims, full_method, rng);
    generate(out, level + 1, max_depth, dims, full_method, rng);
}

ExprTree generate_tree(std::size_t max_depth, std::size_t dims, bool full_method, Rng& rng)
{
    if (max_depth < 1) {
        throw ConfigError("random tree depth must be at least 1");
    }
    if (dims < 1) {
        throw ConfigError("random tree needs at least one input variable");
    }
    std::vector<Node> nodes;
    generate(nodes, 1, max_depth, dims, full_method, rng);
    return ExprTree(std::move(nodes));
}

} // namespace

ExprTree grow(std::size_t max_depth, std::size_t dims, Rng& rng)
{
    return generate_tree(max_depth, dims, false, rng);
}

ExprTree full(std::size_t max_depth, std::size_t dims, Rng& rng)
{
    return generate_tree(max_depth, dims, true, rng);
}

std::vector<ExprTree> ramped_half_and_half(std::size_t pop_size, std::size_t max_depth,
                                           std::size_t dims, Rng& rng)
{
    if (pop_size < 2) {
        throw ConfigError("ramped half-and-half needs a population of at least 2");
    }
    if (max_depth < 2) {
        throw ConfigError("ramped half-and-half needs max depth of at least 2");
    }
    const std::size_t buckets = max_depth - 1;
    std::vector<ExprTree> pop;
    pop.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        const std::size_t depth = 2 + i % buckets;
        const bool use_full = (i / buckets) % 2 == 1;
        pop.push_back(use_full ? full(depth, dims, rng) : grow(depth, dims, rng));
    }
    return pop;
}

} // namespace gsnoise
