// Copyright 2026 The ghzrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzrig/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace ghzrig {

namespace {

std::size_t type_product(const std::vector<WireType> &types) {
    std::size_t p = 1;
    for (const WireType &t : types) p *= t.dim;
    return p;
}

void check_types(const std::vector<WireType> &types) {
    for (const WireType &t : types) {
        if (t.dim == 0) fail(ErrorKind::InvalidArgument, "wire '" + t.label + "' has dimension 0");
    }
}

std::string port_name(const Port &p) {
    return "(" + std::to_string(p.box) + "," + std::to_string(p.index) + ")";
}

}  // namespace

WireType qubit_wire(std::string label) { return WireType{std::move(label), 2}; }

// ---------------------------------------------------------------------------
// Box

Box Box::matrix(std::string name, std::vector<WireType> inputs, std::vector<WireType> outputs,
                ComplexMatrix payload) {
    check_types(inputs);
    check_types(outputs);
    if (payload.rows() != type_product(outputs) || payload.cols() != type_product(inputs)) {
        fail(ErrorKind::ShapeMismatch, "box '" + name + "': payload is " +
                                           std::to_string(payload.rows()) + "x" +
                                           std::to_string(payload.cols()) + ", wires require " +
                                           std::to_string(type_product(outputs)) + "x" +
                                           std::to_string(type_product(inputs)));
    }
    Box b;
    b.name_ = std::move(name);
    b.kind_ = BoxKind::Matrix;
    b.inputs_ = std::move(inputs);
    b.outputs_ = std::move(outputs);
    b.payload_ = std::move(payload);
    return b;
}

Box Box::gate(std::string name, const WireType &wire, ComplexMatrix payload) {
    return matrix(std::move(name), {wire}, {wire}, std::move(payload));
}

Box Box::state(std::string name, std::vector<WireType> outputs, const StateVector &psi) {
    return matrix(std::move(name), {}, std::move(outputs), psi.as_column());
}

Box Box::effect(std::string name, std::vector<WireType> inputs, const StateVector &psi) {
    return matrix(std::move(name), std::move(inputs), {}, psi.as_column().adjoint());
}

Box Box::identity(const WireType &wire) {
    check_types({wire});
    Box b;
    b.name_ = "id";
    b.kind_ = BoxKind::Identity;
    b.inputs_ = {wire};
    b.outputs_ = {wire};
    return b;
}

Box Box::twist(const WireType &a, const WireType &b) {
    check_types({a, b});
    Box box;
    box.name_ = "twist";
    box.kind_ = BoxKind::Twist;
    box.inputs_ = {a, b};
    box.outputs_ = {b, a};
    return box;
}

Box Box::bell(const WireType &wire) {
    check_types({wire});
    Box b;
    b.name_ = "bell";
    b.kind_ = BoxKind::Bell;
    b.outputs_ = {wire, wire};
    return b;
}

Box Box::controlled(const Box &inner, const WireType &control) {
    if (control.dim != 2) fail(ErrorKind::InvalidArgument, "control wire must be a qubit");
    if (inner.inputs_ != inner.outputs_) {
        fail(ErrorKind::ShapeMismatch, "controlled box '" + inner.name_ +
                                           "' must have identical input and output wires");
    }
    Box b;
    b.name_ = "C(" + inner.name_ + ")";
    b.kind_ = BoxKind::Controlled;
    b.inputs_ = {control};
    b.inputs_.insert(b.inputs_.end(), inner.inputs_.begin(), inner.inputs_.end());
    b.outputs_ = b.inputs_;
    b.inner_ = std::make_shared<const Box>(inner);
    return b;
}

ComplexMatrix Box::evaluate() const {
    switch (kind_) {
        case BoxKind::Matrix:
            return payload_;
        case BoxKind::Identity:
            return ComplexMatrix::identity(inputs_[0].dim);
        case BoxKind::Twist: {
            const std::size_t da = inputs_[0].dim;
            const std::size_t db = inputs_[1].dim;
            ComplexMatrix p(da * db, da * db);
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t j = 0; j < db; ++j) p(j * da + i, i * db + j) = 1.0;
            return p;
        }
        case BoxKind::Bell:
            return bell_state(outputs_[0].dim).as_column();
        case BoxKind::Controlled:
            return ghzrig::controlled(inner_->evaluate());
    }
    fail(ErrorKind::InvalidArgument, "unknown box kind");
}

// ---------------------------------------------------------------------------
// Diagram

Diagram::Diagram(std::vector<Box> boxes, std::vector<Wire> wires, std::vector<Port> dangling_in,
                 std::vector<Port> dangling_out)
    : boxes_(std::move(boxes)),
      wires_(std::move(wires)),
      dangling_in_(std::move(dangling_in)),
      dangling_out_(std::move(dangling_out)) {
    std::set<Port> used_in, used_out;
    auto claim = [&](std::set<Port> &used, const Port &p, bool is_input) {
        if (p.box >= boxes_.size()) {
            fail(ErrorKind::InvalidArgument, "port " + port_name(p) + " names a missing box");
        }
        const auto &ports = is_input ? boxes_[p.box].inputs() : boxes_[p.box].outputs();
        if (p.index >= ports.size()) {
            fail(ErrorKind::InvalidArgument, "port " + port_name(p) + " does not exist");
        }
        if (!used.insert(p).second) {
            fail(ErrorKind::InvalidArgument, "port " + port_name(p) + " connected more than once");
        }
    };
    for (const Wire &w : wires_) {
        claim(used_out, w.from, false);
        claim(used_in, w.to, true);
        const WireType &a = boxes_[w.from.box].outputs()[w.from.index];
        const WireType &b = boxes_[w.to.box].inputs()[w.to.index];
        if (!(a == b)) {
            fail(ErrorKind::ShapeMismatch, "wire " + port_name(w.from) + "->" + port_name(w.to) +
                                               " joins '" + a.label + "' to '" + b.label + "'");
        }
    }
    for (const Port &p : dangling_in_) claim(used_in, p, true);
    for (const Port &p : dangling_out_) claim(used_out, p, false);
    for (std::size_t b = 0; b < boxes_.size(); ++b) {
        for (std::size_t k = 0; k < boxes_[b].inputs().size(); ++k)
            if (!used_in.count(Port{b, k}))
                fail(ErrorKind::InvalidArgument, "input port " + port_name(Port{b, k}) +
                                                     " is neither wired nor dangling");
        for (std::size_t k = 0; k < boxes_[b].outputs().size(); ++k)
            if (!used_out.count(Port{b, k}))
                fail(ErrorKind::InvalidArgument, "output port " + port_name(Port{b, k}) +
                                                     " is neither wired nor dangling");
    }

    // Kahn's algorithm purely to reject cycles.
    std::vector<std::size_t> indegree(boxes_.size(), 0);
    for (const Wire &w : wires_) ++indegree[w.to.box];
    std::vector<std::size_t> ready;
    for (std::size_t b = 0; b < boxes_.size(); ++b)
        if (indegree[b] == 0) ready.push_back(b);
    std::size_t visited = 0;
    while (!ready.empty()) {
        const std::size_t b = ready.back();
        ready.pop_back();
        ++visited;
        for (const Wire &w : wires_)
            if (w.from.box == b && --indegree[w.to.box] == 0) ready.push_back(w.to.box);
    }
    if (visited != boxes_.size()) fail(ErrorKind::InvalidArgument, "diagram wiring has a cycle");
}

Diagram Diagram::single(Box box) {
    std::vector<Port> in, out;
    for (std::size_t k = 0; k < box.inputs().size(); ++k) in.push_back({0, k});
    for (std::size_t k = 0; k < box.outputs().size(); ++k) out.push_back({0, k});
    std::vector<Box> boxes;
    boxes.push_back(std::move(box));
    return Diagram(std::move(boxes), {}, std::move(in), std::move(out));
}

std::vector<WireType> Diagram::input_types() const {
    std::vector<WireType> t;
    for (const Port &p : dangling_in_) t.push_back(boxes_[p.box].inputs()[p.index]);
    return t;
}

std::vector<WireType> Diagram::output_types() const {
    std::vector<WireType> t;
    for (const Port &p : dangling_out_) t.push_back(boxes_[p.box].outputs()[p.index]);
    return t;
}

namespace {

Port shifted(Port p, std::size_t offset) { return Port{p.box + offset, p.index}; }

}  // namespace

Diagram compose_serial(const Diagram &top, const Diagram &bottom) {
    if (bottom.output_types() != top.input_types()) {
        fail(ErrorKind::ShapeMismatch,
             "serial composition: outputs of the lower diagram do not match inputs of the upper");
    }
    const std::size_t offset = bottom.boxes().size();
    std::vector<Box> boxes(bottom.boxes());
    boxes.insert(boxes.end(), top.boxes().begin(), top.boxes().end());
    std::vector<Wire> wires(bottom.wires());
    for (const Wire &w : top.wires()) wires.push_back({shifted(w.from, offset), shifted(w.to, offset)});

    std::vector<Port> in(bottom.dangling_in());
    std::vector<Port> out;
    for (const Port &p : top.dangling_out()) out.push_back(shifted(p, offset));

    // A wire that passes straight through one side (no box) cannot occur:
    // identity wires are boxes, so every dangling port belongs to a box.
    for (std::size_t k = 0; k < bottom.dangling_out().size(); ++k) {
        wires.push_back({bottom.dangling_out()[k], shifted(top.dangling_in()[k], offset)});
    }
    return Diagram(std::move(boxes), std::move(wires), std::move(in), std::move(out));
}

Diagram compose_parallel(const Diagram &left, const Diagram &right) {
    const std::size_t offset = left.boxes().size();
    std::vector<Box> boxes(left.boxes());
    boxes.insert(boxes.end(), right.boxes().begin(), right.boxes().end());
    std::vector<Wire> wires(left.wires());
    for (const Wire &w : right.wires()) wires.push_back({shifted(w.from, offset), shifted(w.to, offset)});
    std::vector<Port> in(left.dangling_in()), out(left.dangling_out());
    for (const Port &p : right.dangling_in()) in.push_back(shifted(p, offset));
    for (const Port &p : right.dangling_out()) out.push_back(shifted(p, offset));
    return Diagram(std::move(boxes), std::move(wires), std::move(in), std::move(out));
}

Diagram twist(const WireType &a, const WireType &b) { return Diagram::single(Box::twist(a, b)); }

Diagram identity_wire(const WireType &wire) { return Diagram::single(Box::identity(wire)); }

// ---------------------------------------------------------------------------
// Evaluation
//
// The working tensor carries one leading axis enumerating the diagram's input
// basis, followed by one axis per live edge. Each box consumes its input
// edges (moved to the back) and appends its output edges.

ComplexMatrix evaluate(const Diagram &d, ContractionOrder order, const Limits &limits) {
    const auto &boxes = d.boxes();

    // Edge ids: wires first, then dangling inputs, then dangling outputs.
    const std::size_t n_wires = d.wires().size();
    std::map<Port, std::size_t> in_edge, out_edge;
    for (std::size_t w = 0; w < n_wires; ++w) {
        out_edge[d.wires()[w].from] = w;
        in_edge[d.wires()[w].to] = w;
    }
    for (std::size_t k = 0; k < d.dangling_in().size(); ++k) in_edge[d.dangling_in()[k]] = n_wires + k;
    const std::size_t out_base = n_wires + d.dangling_in().size();
    for (std::size_t k = 0; k < d.dangling_out().size(); ++k)
        out_edge[d.dangling_out()[k]] = out_base + k;

    const auto in_types = d.input_types();
    std::size_t in_dim = 1;
    for (const WireType &t : in_types) in_dim *= t.dim;
    limits.check(in_dim, "diagram input space");

    std::vector<std::size_t> live;       // edge ids, in axis order (after the leading axis)
    std::vector<std::size_t> live_dims;  // dims including the leading axis
    live_dims.push_back(in_dim);
    for (std::size_t k = 0; k < in_types.size(); ++k) {
        live.push_back(n_wires + k);
        live_dims.push_back(in_types[k].dim);
    }
    const auto eye = ComplexMatrix::identity(in_dim);
    std::vector<Complex> tensor(eye.entries().begin(), eye.entries().end());

    // Ready queue ordered by box index; the tie-break picks either end.
    std::vector<std::size_t> pending(boxes.size(), 0);
    for (const Wire &w : d.wires()) ++pending[w.to.box];
    std::set<std::size_t> ready;
    for (std::size_t b = 0; b < boxes.size(); ++b)
        if (pending[b] == 0) ready.insert(b);

    while (!ready.empty()) {
        const auto it = order == ContractionOrder::LowestIndexFirst ? ready.begin()
                                                                    : std::prev(ready.end());
        const std::size_t b = *it;
        ready.erase(it);
        const Box &box = boxes[b];

        // Axis positions (within the full tensor, leading axis = 0) of inputs.
        std::vector<std::size_t> consumed;
        for (std::size_t k = 0; k < box.inputs().size(); ++k) {
            const std::size_t edge = in_edge.at(Port{b, k});
            const auto pos = std::find(live.begin(), live.end(), edge);
            consumed.push_back(static_cast<std::size_t>(pos - live.begin()) + 1);
        }
        std::vector<bool> is_consumed(live_dims.size(), false);
        for (std::size_t a : consumed) is_consumed[a] = true;
        std::vector<std::size_t> perm;
        for (std::size_t a = 0; a < live_dims.size(); ++a)
            if (!is_consumed[a]) perm.push_back(a);
        perm.insert(perm.end(), consumed.begin(), consumed.end());
        auto moved = permute_axes(tensor, live_dims, perm);

        std::vector<std::size_t> next_live;
        std::vector<std::size_t> next_dims{live_dims[0]};
        for (std::size_t a = 1; a < live_dims.size(); ++a)
            if (!is_consumed[a]) {
                next_live.push_back(live[a - 1]);
                next_dims.push_back(live_dims[a]);
            }
        for (std::size_t k = 0; k < box.outputs().size(); ++k) {
            next_live.push_back(out_edge.at(Port{b, k}));
            next_dims.push_back(box.outputs()[k].dim);
        }
        limits.check(product(next_dims), "diagram contraction");
        tensor = contract_trailing(box.evaluate(), moved);
        live = std::move(next_live);
        live_dims = std::move(next_dims);

        for (const Wire &w : d.wires())
            if (w.from.box == b && --pending[w.to.box] == 0) ready.insert(w.to.box);
    }

    // Remaining edges are exactly the dangling outputs; order them and
    // transpose the leading input axis to the column index.
    std::vector<std::size_t> perm;
    std::size_t out_dim = 1;
    for (std::size_t k = 0; k < d.dangling_out().size(); ++k) {
        const auto pos = std::find(live.begin(), live.end(), out_base + k);
        perm.push_back(static_cast<std::size_t>(pos - live.begin()) + 1);
        out_dim *= live_dims[perm.back()];
    }
    perm.push_back(0);
    auto ordered = permute_axes(tensor, live_dims, perm);
    return ComplexMatrix(out_dim, in_dim, std::move(ordered));
}

Approximation approx_equal(const ComplexMatrix &f, const ComplexMatrix &g, double delta) {
    if (delta < 0.0) fail(ErrorKind::InvalidArgument, "approx_equal: delta must be nonnegative");
    const double r = frobenius_distance(f, g);
    return {r <= delta, r};
}

Approximation approx_equal(const Diagram &f, const Diagram &g, double delta) {
    return approx_equal(evaluate(f), evaluate(g), delta);
}

Approximation approx_equal(const Diagram &f, const ComplexMatrix &g, double delta) {
    return approx_equal(evaluate(f), g, delta);
}

}  // namespace ghzrig
