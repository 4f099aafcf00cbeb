#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscheme {

enum class NodeKind { Input, Lin, Relu, Sq, Prod, Max, Abs, Id };

std::string_view kind_name(NodeKind k);
NodeKind kind_from_name(std::string_view name);

struct GraphNode {
    int id = 0;
    NodeKind kind = NodeKind::Id;
    std::vector<int> inputs;
    std::vector<double> weights;  // LIN only, one per input
    double bias = 0.0;            // LIN only
    std::string label;

    bool operator==(const GraphNode&) const = default;
};

class SchemeGraph {
public:
    SchemeGraph() = default;
    // Validates in-degrees, references and acyclicity; node ids must equal their positions.
    SchemeGraph(std::vector<GraphNode> nodes, std::vector<int> inputs, std::vector<int> outputs);

    int add_input(std::string label);
    // Inputs must refer to existing nodes, so graphs built this way are acyclic.
    int add_node(NodeKind kind, std::vector<int> inputs, std::vector<double> weights = {}, double bias = 0.0,
                 std::string label = {});
    int add_lin(std::vector<int> inputs, std::vector<double> weights, double bias = 0.0, std::string label = {});
    void set_outputs(std::vector<int> outputs);

    const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
    const std::vector<int>& inputs() const noexcept { return inputs_; }
    const std::vector<int>& outputs() const noexcept { return outputs_; }
    const std::vector<int>& order() const noexcept { return order_; }
    std::size_t count(NodeKind k) const;

private:
    void check_node(const GraphNode& n) const;

    std::vector<GraphNode> nodes_;
    std::vector<int> inputs_;
    std::vector<int> outputs_;
    std::vector<int> order_;  // topological
};

std::vector<double> eval_graph(const SchemeGraph& g, std::span<const double> inputs);

// One step of the weighted Rusanov scheme for Burgers' equation on the cell stencil
// (U_{j-1}, U_j, U_{j+1}); w_left and w_right weight the diffusion at the cell's faces.
SchemeGraph build_rusanov_graph(double w_left, double w_right, double dt_over_dx);

// Single LIN node: sum_k coefficients[k] * U_{j+k-offset}.
SchemeGraph build_linear_graph(std::span<const double> coefficients, int offset);

// Replaces every ABS and MAX node by LIN and RELU nodes.
SchemeGraph relu_expand(const SchemeGraph& g);

enum class GraphFormat { Dot, Json };

std::string export_graph(const SchemeGraph& g, GraphFormat format);
SchemeGraph graph_from_json(std::string_view text);

}
