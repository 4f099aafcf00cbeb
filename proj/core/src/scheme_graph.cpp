#include "tscheme/scheme_graph.hpp"

#include "tscheme/errors.hpp"
#include "tscheme/evaluator.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace tscheme {

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 8> kind_names{{
    {NodeKind::Input, "INPUT"},
    {NodeKind::Lin, "LIN"},
    {NodeKind::Relu, "RELU"},
    {NodeKind::Sq, "SQ"},
    {NodeKind::Prod, "PROD"},
    {NodeKind::Max, "MAX"},
    {NodeKind::Abs, "ABS"},
    {NodeKind::Id, "ID"},
}};

bool degree_ok(NodeKind k, std::size_t d) {
    switch (k) {
    case NodeKind::Input:
        return d == 0;
    case NodeKind::Lin:
        return d >= 1;
    case NodeKind::Prod:
    case NodeKind::Max:
        return d == 2;
    default:
        return d == 1;
    }
}

}

std::string_view kind_name(NodeKind k) {
    for (const auto& [kind, name] : kind_names) {
        if (kind == k) {
            return name;
        }
    }
    return "?";
}

NodeKind kind_from_name(std::string_view name) {
    for (const auto& [kind, n] : kind_names) {
        if (n == name) {
            return kind;
        }
    }
    throw InvalidGraph("unknown node kind '" + std::string(name) + "'");
}

void SchemeGraph::check_node(const GraphNode& n) const {
    if (!degree_ok(n.kind, n.inputs.size())) {
        throw InvalidGraph("node " + std::to_string(n.id) + ": " + std::string(kind_name(n.kind)) +
                           " cannot take " + std::to_string(n.inputs.size()) + " inputs");
    }
    if (n.kind == NodeKind::Lin && n.weights.size() != n.inputs.size()) {
        throw InvalidGraph("node " + std::to_string(n.id) + ": LIN needs one weight per input");
    }
    if (n.kind != NodeKind::Lin && (!n.weights.empty() || n.bias != 0.0)) {
        throw InvalidGraph("node " + std::to_string(n.id) + ": only LIN nodes carry weights");
    }
}

SchemeGraph::SchemeGraph(std::vector<GraphNode> nodes, std::vector<int> inputs, std::vector<int> outputs)
    : nodes_(std::move(nodes)), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    const int n = static_cast<int>(nodes_.size());
    auto valid = [n](int id) { return id >= 0 && id < n; };
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<int>> users(n);
    for (int i = 0; i < n; ++i) {
        const GraphNode& node = nodes_[i];
        if (node.id != i) {
            throw InvalidGraph("node ids must equal their positions");
        }
        check_node(node);
        for (int src : node.inputs) {
            if (!valid(src)) {
                throw InvalidGraph("node " + std::to_string(i) + " refers to missing node " + std::to_string(src));
            }
            users[src].push_back(i);
            ++indegree[i];
        }
    }
    std::vector<bool> is_input(n, false);
    for (int id : inputs_) {
        if (!valid(id) || nodes_[id].kind != NodeKind::Input || is_input[id]) {
            throw InvalidGraph("graph inputs must be distinct INPUT nodes");
        }
        is_input[id] = true;
    }
    for (int i = 0; i < n; ++i) {
        if (nodes_[i].kind == NodeKind::Input && !is_input[i]) {
            throw InvalidGraph("INPUT node " + std::to_string(i) + " is not listed as a graph input");
        }
    }
    for (int id : outputs_) {
        if (!valid(id)) {
            throw InvalidGraph("output refers to missing node " + std::to_string(id));
        }
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i) {
        if (indegree[i] == 0) {
            ready.push(i);
        }
    }
    while (!ready.empty()) {
        const int i = ready.top();
        ready.pop();
        order_.push_back(i);
        for (int u : users[i]) {
            if (--indegree[u] == 0) {
                ready.push(u);
            }
        }
    }
    if (static_cast<int>(order_.size()) != n) {
        throw InvalidGraph("graph contains a cycle");
    }
}

int SchemeGraph::add_input(std::string label) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({id, NodeKind::Input, {}, {}, 0.0, std::move(label)});
    inputs_.push_back(id);
    order_.push_back(id);
    return id;
}

int SchemeGraph::add_node(NodeKind kind, std::vector<int> inputs, std::vector<double> weights, double bias,
                          std::string label) {
    if (kind == NodeKind::Input) {
        throw InvalidGraph("use add_input for INPUT nodes");
    }
    const int id = static_cast<int>(nodes_.size());
    GraphNode node{id, kind, std::move(inputs), std::move(weights), bias, std::move(label)};
    check_node(node);
    for (int src : node.inputs) {
        if (src < 0 || src >= id) {
            throw InvalidGraph("node " + std::to_string(id) + " refers to missing node " + std::to_string(src));
        }
    }
    nodes_.push_back(std::move(node));
    order_.push_back(id);
    return id;
}

int SchemeGraph::add_lin(std::vector<int> inputs, std::vector<double> weights, double bias, std::string label) {
    return add_node(NodeKind::Lin, std::move(inputs), std::move(weights), bias, std::move(label));
}

void SchemeGraph::set_outputs(std::vector<int> outputs) {
    for (int id : outputs) {
        if (id < 0 || id >= static_cast<int>(nodes_.size())) {
            throw InvalidGraph("output refers to missing node " + std::to_string(id));
        }
    }
    outputs_ = std::move(outputs);
}

std::size_t SchemeGraph::count(NodeKind k) const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [k](const GraphNode& n) { return n.kind == k; }));
}

std::vector<double> eval_graph(const SchemeGraph& g, std::span<const double> inputs) {
    if (inputs.size() != g.inputs().size()) {
        throw InvalidArgument("eval_graph: expected " + std::to_string(g.inputs().size()) + " inputs, got " +
                              std::to_string(inputs.size()));
    }
    const auto& nodes = g.nodes();
    std::vector<double> value(nodes.size(), 0.0);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        value[g.inputs()[k]] = inputs[k];
    }
    for (int id : g.order()) {
        const GraphNode& n = nodes[id];
        auto in = [&](std::size_t k) { return value[n.inputs[k]]; };
        switch (n.kind) {
        case NodeKind::Input:
            break;
        case NodeKind::Lin: {
            double s = n.bias;
            for (std::size_t k = 0; k < n.inputs.size(); ++k) {
                s += n.weights[k] * in(k);
            }
            value[id] = s;
            break;
        }
        case NodeKind::Relu:
            value[id] = std::max(in(0), 0.0);
            break;
        case NodeKind::Sq:
            value[id] = 0.5 * in(0) * in(0);
            break;
        case NodeKind::Prod:
            value[id] = in(0) * in(1);
            break;
        case NodeKind::Max:
            value[id] = std::max(in(0), in(1));
            break;
        case NodeKind::Abs:
            value[id] = std::abs(in(0));
            break;
        case NodeKind::Id:
            value[id] = in(0);
            break;
        }
    }
    std::vector<double> out;
    out.reserve(g.outputs().size());
    for (int id : g.outputs()) {
        out.push_back(value[id]);
    }
    return out;
}

SchemeGraph build_rusanov_graph(double w_left, double w_right, double dt_over_dx) {
    SchemeGraph g;
    const int a = g.add_input("U_j-1");
    const int b = g.add_input("U_j");
    const int c = g.add_input("U_j+1");
    const int abs_a = g.add_node(NodeKind::Abs, {a});
    const int abs_b = g.add_node(NodeKind::Abs, {b});
    const int abs_c = g.add_node(NodeKind::Abs, {c});
    const int speed_left = g.add_node(NodeKind::Max, {abs_a, abs_b}, {}, 0.0, "speed_left");
    const int speed_right = g.add_node(NodeKind::Max, {abs_b, abs_c}, {}, 0.0, "speed_right");
    const int jump_left = g.add_lin({b, a}, {1.0, -1.0}, 0.0, "jump_left");
    const int jump_right = g.add_lin({c, b}, {1.0, -1.0}, 0.0, "jump_right");
    const int diff_left = g.add_node(NodeKind::Prod, {speed_left, jump_left});
    const int diff_right = g.add_node(NodeKind::Prod, {speed_right, jump_right});
    const int flux_a = g.add_node(NodeKind::Sq, {a});
    const int flux_c = g.add_node(NodeKind::Sq, {c});
    const double r = dt_over_dx;
    const int out = g.add_lin({b, flux_c, flux_a, diff_right, diff_left},
                              {1.0, -0.5 * r, 0.5 * r, r * w_right, -r * w_left}, 0.0, "U_j^n+1");
    g.set_outputs({out});
    return g;
}

SchemeGraph build_linear_graph(std::span<const double> coefficients, int offset) {
    if (coefficients.empty()) {
        throw InvalidArgument("build_linear_graph: empty stencil");
    }
    SchemeGraph g;
    std::vector<int> in;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        const int shift = static_cast<int>(k) - offset;
        in.push_back(g.add_input(shift == 0 ? "U_j" : (shift < 0 ? "U_j" : "U_j+") + std::to_string(shift)));
    }
    const int out = g.add_lin(in, std::vector<double>(coefficients.begin(), coefficients.end()), 0.0, "U_j^n+1");
    g.set_outputs({out});
    return g;
}

SchemeGraph relu_expand(const SchemeGraph& g) {
    SchemeGraph e;
    std::vector<int> map(g.nodes().size(), -1);
    for (int id : g.order()) {
        const GraphNode& n = g.nodes()[id];
        std::vector<int> in;
        for (int src : n.inputs) {
            in.push_back(map[src]);
        }
        switch (n.kind) {
        case NodeKind::Input:
            map[id] = e.add_input(n.label);
            break;
        case NodeKind::Abs: {
            const int pos = e.add_node(NodeKind::Relu, {in[0]});
            const int neg_in = e.add_lin({in[0]}, {-1.0});
            const int neg = e.add_node(NodeKind::Relu, {neg_in});
            map[id] = e.add_lin({pos, neg}, {1.0, 1.0}, 0.0, n.label);
            break;
        }
        case NodeKind::Max: {
            const int d = e.add_lin({in[1], in[0]}, {1.0, -1.0});
            const int r = e.add_node(NodeKind::Relu, {d});
            map[id] = e.add_lin({in[0], r}, {1.0, 1.0}, 0.0, n.label);
            break;
        }
        default:
            map[id] = e.add_node(n.kind, in, n.weights, n.bias, n.label);
            break;
        }
    }
    std::vector<int> inputs;
    for (int id : g.inputs()) {
        inputs.push_back(map[id]);
    }
    std::vector<int> outputs;
    for (int id : g.outputs()) {
        outputs.push_back(map[id]);
    }
    std::vector<GraphNode> nodes = e.nodes();
    return SchemeGraph(std::move(nodes), std::move(inputs), std::move(outputs));
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    return out;
}

}

std::string export_graph(const SchemeGraph& g, GraphFormat format) {
    if (format == GraphFormat::Dot) {
        std::string s = "digraph scheme {\n  rankdir=LR;\n";
        for (const GraphNode& n : g.nodes()) {
            std::string label(kind_name(n.kind));
            if (!n.label.empty()) {
                label += "\\n" + dot_escape(n.label);
            }
            if (n.kind == NodeKind::Lin && n.bias != 0.0) {
                label += "\\nbias " + format_number(n.bias);
            }
            s += "  n" + std::to_string(n.id) + " [label=\"" + label + "\"";
            if (n.kind == NodeKind::Input) {
                s += ", shape=box";
            }
            s += "];\n";
        }
        for (const GraphNode& n : g.nodes()) {
            for (std::size_t k = 0; k < n.inputs.size(); ++k) {
                s += "  n" + std::to_string(n.inputs[k]) + " -> n" + std::to_string(n.id);
                if (n.kind == NodeKind::Lin) {
                    s += " [label=\"" + format_number(n.weights[k]) + "\"]";
                }
                s += ";\n";
            }
        }
        s += "}\n";
        return s;
    }
    using nlohmann::json;
    json nodes = json::array();
    json edges = json::array();
    for (const GraphNode& n : g.nodes()) {
        json j;
        j["id"] = n.id;
        j["kind"] = std::string(kind_name(n.kind));
        j["inputs"] = n.inputs;
        if (n.kind == NodeKind::Lin) {
            j["weights"] = n.weights;
            j["bias"] = n.bias;
        }
        j["label"] = n.label;
        nodes.push_back(std::move(j));
        for (int src : n.inputs) {
            edges.push_back({src, n.id});
        }
    }
    json root;
    root["schema"] = "tscheme.graph/1";
    root["nodes"] = std::move(nodes);
    root["edges"] = std::move(edges);
    root["inputs"] = g.inputs();
    root["outputs"] = g.outputs();
    return root.dump(2) + "\n";
}

SchemeGraph graph_from_json(std::string_view text) {
    using nlohmann::json;
    try {
        const json root = json::parse(text);
        if (root.value("schema", std::string()) != "tscheme.graph/1") {
            throw InvalidGraph("unsupported graph schema");
        }
        std::vector<GraphNode> nodes;
        for (const json& j : root.at("nodes")) {
            GraphNode n;
            n.id = j.at("id").get<int>();
            n.kind = kind_from_name(j.at("kind").get<std::string>());
            n.inputs = j.at("inputs").get<std::vector<int>>();
            n.weights = j.value("weights", std::vector<double>{});
            n.bias = j.value("bias", 0.0);
            n.label = j.value("label", std::string());
            nodes.push_back(std::move(n));
        }
        std::size_t edge_count = 0;
        for (const GraphNode& n : nodes) {
            edge_count += n.inputs.size();
        }
        if (root.contains("edges") && root.at("edges").size() != edge_count) {
            throw InvalidGraph("edge list does not match the node inputs");
        }
        return SchemeGraph(std::move(nodes), root.at("inputs").get<std::vector<int>>(),
                           root.at("outputs").get<std::vector<int>>());
    } catch (const json::exception& e) {
        throw InvalidGraph(std::string("malformed graph JSON: ") + e.what());
    }
}

}
