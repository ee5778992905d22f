// Hash-consed Boolean circuits over "visited infinitely often" atoms.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aasynth {

enum class CircuitOp : std::uint8_t { atom, negation, conjunction, disjunction };

class Circuit {
 public:
  struct Node;

  /// Constant false.
  Circuit();

  static Circuit atom(int index);
  static Circuit constant(bool value);
  /// Disjunction of atoms; the empty set yields constant false.
  static Circuit any_of(std::span<const int> atoms);

  CircuitOp op() const;
  int atom_index() const;
  std::span<const Circuit> children() const;
  bool is_constant() const;
  /// Only meaningful when is_constant().
  bool constant_value() const;

  /// Number of distinct DAG nodes.
  std::size_t size() const;
  /// Sorted, deduplicated atom indices.
  std::vector<int> atoms() const;

  bool evaluate(const std::function<bool(int)>& inhabited) const;
  bool evaluate(const std::vector<bool>& inhabited) const;

  /// Replace each atom by an arbitrary circuit.
  Circuit substitute(const std::function<Circuit(int)>& replacement) const;

  const Node* id() const { return node_.get(); }
  friend bool operator==(const Circuit& a, const Circuit& b) { return a.node_ == b.node_; }

 private:
  explicit Circuit(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Circuit make_node(CircuitOp, int, std::vector<Circuit>);
  std::shared_ptr<const Node> node_;
};

struct Circuit::Node {
  CircuitOp op;
  int atom;
  std::vector<Circuit> children;
  std::size_t hash;
};

Circuit make_not(Circuit c);
Circuit make_and(std::vector<Circuit> operands);
Circuit make_or(std::vector<Circuit> operands);
Circuit make_implies(Circuit premise, Circuit conclusion);

enum class CombineOp { conj, disj, neg, implies };
/// Generic combinator; `neg` takes one operand, `implies` two.
Circuit combine(CombineOp op, std::vector<Circuit> operands);

Circuit buchi_to_circuit(std::span<const int> accepting);

bool eval_circuit(const Circuit& c, const std::vector<bool>& inhabited);

/// Prints in the formula grammar; `name` maps atom indices to identifiers.
std::string print_formula(const Circuit& c, const std::function<std::string(int)>& name);

/// Parses the formula grammar. `resolve` maps an identifier to an atom
/// index and throws on unknown names.
Circuit parse_formula(std::string_view text, const std::function<int(std::string_view)>& resolve);

/// Flat evaluator: nodes in topological order, children before parents.
class CompiledCircuit {
 public:
  CompiledCircuit() = default;
  /// `leaf` decides which nodes are treated as opaque inputs; every atom
  /// not captured by a leaf is an input as well.
  explicit CompiledCircuit(const Circuit& root,
                           const std::function<bool(const Circuit&)>& leaf = {});

  std::size_t num_inputs() const { return inputs_.size(); }
  const Circuit& input(std::size_t k) const { return inputs_[k]; }
  bool evaluate(const std::vector<bool>& input_values) const;

 private:
  struct Op {
    CircuitOp op;
    int first;  // into operand_ when composite, into inputs when leaf
    int count;
    bool leaf;
  };
  std::vector<Circuit> inputs_;
  std::vector<Op> ops_;
  std::vector<int> operand_;
};

}  // namespace aasynth
