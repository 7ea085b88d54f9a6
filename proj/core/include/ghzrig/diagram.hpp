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

#pragma once

// String diagrams over finite-dimensional Hilbert spaces.
//
// A diagram is a DAG of boxes connected port-to-port. Ports left open are
// the diagram's inputs and outputs, ordered left to right; left-to-right
// order is high-to-low tensor significance, matching the big-endian
// convention of tensor.hpp.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ghzrig/tensor.hpp"

namespace ghzrig {

struct WireType {
    std::string label;
    std::size_t dim = 1;

    friend bool operator==(const WireType &, const WireType &) = default;
};

WireType qubit_wire(std::string label);

enum class BoxKind { Matrix, Identity, Twist, Bell, Controlled };

class Box {
  public:
    /// Arbitrary linear map; `payload` must be prod(outputs) x prod(inputs).
    static Box matrix(std::string name, std::vector<WireType> inputs,
                      std::vector<WireType> outputs, ComplexMatrix payload);
    /// Single-wire box for a square operator acting on `wire`.
    static Box gate(std::string name, const WireType &wire, ComplexMatrix payload);
    static Box state(std::string name, std::vector<WireType> outputs, const StateVector &psi);
    static Box effect(std::string name, std::vector<WireType> inputs, const StateVector &psi);
    static Box identity(const WireType &wire);
    static Box twist(const WireType &a, const WireType &b);
    static Box bell(const WireType &wire);
    /// Control qubit is prepended to both the inputs and the outputs of `inner`.
    static Box controlled(const Box &inner, const WireType &control);

    const std::string &name() const noexcept { return name_; }
    BoxKind kind() const noexcept { return kind_; }
    const std::vector<WireType> &inputs() const noexcept { return inputs_; }
    const std::vector<WireType> &outputs() const noexcept { return outputs_; }
    /// Present only for BoxKind::Matrix.
    const ComplexMatrix &payload() const noexcept { return payload_; }
    /// Present only for BoxKind::Controlled.
    const Box *inner() const noexcept { return inner_.get(); }

    /// Concrete linear map, prod(outputs) x prod(inputs).
    ComplexMatrix evaluate() const;

  private:
    Box() = default;

    std::string name_;
    BoxKind kind_ = BoxKind::Matrix;
    std::vector<WireType> inputs_;
    std::vector<WireType> outputs_;
    ComplexMatrix payload_;
    std::shared_ptr<const Box> inner_;
};

struct Port {
    std::size_t box = 0;
    std::size_t index = 0;

    friend bool operator==(const Port &, const Port &) = default;
    friend auto operator<=>(const Port &, const Port &) = default;
};

/// Connects output port `from` of one box to input port `to` of another.
struct Wire {
    Port from;
    Port to;
};

class Diagram {
  public:
    /// The empty diagram: no wires, evaluates to the scalar 1.
    Diagram() = default;

    /// Validates the invariants: every port used exactly once, matching
    /// types across wires, acyclic wiring.
    Diagram(std::vector<Box> boxes, std::vector<Wire> wires, std::vector<Port> dangling_in,
            std::vector<Port> dangling_out);

    static Diagram single(Box box);

    const std::vector<Box> &boxes() const noexcept { return boxes_; }
    const std::vector<Wire> &wires() const noexcept { return wires_; }
    const std::vector<Port> &dangling_in() const noexcept { return dangling_in_; }
    const std::vector<Port> &dangling_out() const noexcept { return dangling_out_; }

    std::vector<WireType> input_types() const;
    std::vector<WireType> output_types() const;

  private:
    std::vector<Box> boxes_;
    std::vector<Wire> wires_;
    std::vector<Port> dangling_in_;
    std::vector<Port> dangling_out_;
};

/// `bottom` feeds `top`: evaluates to evaluate(top) * evaluate(bottom).
Diagram compose_serial(const Diagram &top, const Diagram &bottom);
/// Side by side: evaluates to kron(evaluate(left), evaluate(right)).
Diagram compose_parallel(const Diagram &left, const Diagram &right);
Diagram twist(const WireType &a, const WireType &b);
Diagram identity_wire(const WireType &wire);

/// Tie-break used when several boxes are ready during contraction.
enum class ContractionOrder { LowestIndexFirst, HighestIndexFirst };

ComplexMatrix evaluate(const Diagram &d, ContractionOrder order = ContractionOrder::LowestIndexFirst,
                       const Limits &limits = {});

struct Approximation {
    bool holds = false;
    double residual = 0.0;
};

/// residual = ||f - g||_2 (Frobenius), holds iff residual <= delta.
Approximation approx_equal(const ComplexMatrix &f, const ComplexMatrix &g, double delta);
Approximation approx_equal(const Diagram &f, const Diagram &g, double delta);
Approximation approx_equal(const Diagram &f, const ComplexMatrix &g, double delta);

}  // namespace ghzrig
