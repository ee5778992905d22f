#include "aasynth/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "aasynth/error.hpp"

namespace aasynth {

namespace {

std::size_t node_hash(CircuitOp op, int atom, const std::vector<Circuit>& children) {
  std::size_t h = static_cast<std::size_t>(op) * 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(atom + 7);
  for (const Circuit& c : children)
    h = (h ^ reinterpret_cast<std::uintptr_t>(c.id())) * 0x100000001b3ULL + 0x7f4a7c15;
  return h;
}

class intern_table {
 public:
  std::shared_ptr<const Circuit::Node> get(CircuitOp op, int atom, std::vector<Circuit> children) {
    std::size_t h = node_hash(op, atom, children);
    std::lock_guard lock(mutex_);
    auto [lo, hi] = table_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      auto alive = it->second.lock();
      if (alive && alive->op == op && alive->atom == atom && alive->children == children)
        return alive;
    }
    auto node = std::make_shared<const Circuit::Node>(Circuit::Node{op, atom, std::move(children), h});
    table_.emplace(h, node);
    if (table_.size() > 2 * sweep_at_) sweep();
    return node;
  }

 private:
  void sweep() {
    for (auto it = table_.begin(); it != table_.end();)
      it = it->second.expired() ? table_.erase(it) : std::next(it);
    sweep_at_ = std::max<std::size_t>(table_.size(), 1024);
  }

  std::mutex mutex_;
  std::unordered_multimap<std::size_t, std::weak_ptr<const Circuit::Node>> table_;
  std::size_t sweep_at_ = 1024;
};

intern_table& table() {
  static intern_table t;
  return t;
}

}  // namespace

Circuit make_node(CircuitOp op, int atom, std::vector<Circuit> children) {
  return Circuit(table().get(op, atom, std::move(children)));
}

Circuit::Circuit() : Circuit(constant(false)) {}

Circuit Circuit::atom(int index) { return make_node(CircuitOp::atom, index, {}); }

Circuit Circuit::constant(bool value) {
  static const Circuit t = make_node(CircuitOp::conjunction, -1, {});
  static const Circuit f = make_node(CircuitOp::disjunction, -1, {});
  return value ? t : f;
}

Circuit Circuit::any_of(std::span<const int> atoms) {
  std::vector<Circuit> lits;
  lits.reserve(atoms.size());
  for (int a : atoms) lits.push_back(atom(a));
  return make_or(std::move(lits));
}

CircuitOp Circuit::op() const { return node_->op; }
int Circuit::atom_index() const { return node_->atom; }
std::span<const Circuit> Circuit::children() const { return node_->children; }

bool Circuit::is_constant() const {
  return node_->op != CircuitOp::atom && node_->op != CircuitOp::negation && node_->children.empty();
}

bool Circuit::constant_value() const { return node_->op == CircuitOp::conjunction; }

namespace {

template <class Visit>
void depth_first(const Circuit& root, Visit&& visit) {
  std::unordered_set<const Circuit::Node*> seen;
  std::vector<std::pair<Circuit, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [c, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      visit(c);
      continue;
    }
    if (!seen.insert(c.id()).second) continue;
    stack.emplace_back(c, true);
    auto kids = c.children();
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      if (!seen.count(it->id())) stack.emplace_back(*it, false);
  }
}

}  // namespace

std::size_t Circuit::size() const {
  std::size_t n = 0;
  depth_first(*this, [&](const Circuit&) { ++n; });
  return n;
}

std::vector<int> Circuit::atoms() const {
  std::vector<int> out;
  depth_first(*this, [&](const Circuit& c) {
    if (c.op() == CircuitOp::atom) out.push_back(c.atom_index());
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Circuit::evaluate(const std::function<bool(int)>& inhabited) const {
  std::unordered_map<const Node*, bool> value;
  depth_first(*this, [&](const Circuit& c) {
    bool v = false;
    switch (c.op()) {
      case CircuitOp::atom: v = inhabited(c.atom_index()); break;
      case CircuitOp::negation: v = !value.at(c.children()[0].id()); break;
      case CircuitOp::conjunction:
        v = std::all_of(c.children().begin(), c.children().end(),
                        [&](const Circuit& k) { return value.at(k.id()); });
        break;
      case CircuitOp::disjunction:
        v = std::any_of(c.children().begin(), c.children().end(),
                        [&](const Circuit& k) { return value.at(k.id()); });
        break;
    }
    value[c.id()] = v;
  });
  return value.at(id());
}

bool Circuit::evaluate(const std::vector<bool>& inhabited) const {
  return evaluate([&](int a) { return a >= 0 && static_cast<std::size_t>(a) < inhabited.size() && inhabited[a]; });
}

Circuit Circuit::substitute(const std::function<Circuit(int)>& replacement) const {
  std::unordered_map<const Node*, Circuit> image;
  depth_first(*this, [&](const Circuit& c) {
    Circuit r;
    switch (c.op()) {
      case CircuitOp::atom: r = replacement(c.atom_index()); break;
      case CircuitOp::negation: r = make_not(image.at(c.children()[0].id())); break;
      case CircuitOp::conjunction:
      case CircuitOp::disjunction: {
        std::vector<Circuit> kids;
        for (const Circuit& k : c.children()) kids.push_back(image.at(k.id()));
        r = c.op() == CircuitOp::conjunction ? make_and(std::move(kids)) : make_or(std::move(kids));
        break;
      }
    }
    image.emplace(c.id(), r);
  });
  return image.at(id());
}

Circuit make_not(Circuit c) {
  if (c.is_constant()) return Circuit::constant(!c.constant_value());
  if (c.op() == CircuitOp::negation) return c.children()[0];
  return make_node(CircuitOp::negation, -1, {c});
}

namespace {

Circuit make_assoc(CircuitOp op, std::vector<Circuit> operands) {
  const bool absorbing = op == CircuitOp::disjunction;  // value that short-circuits
  std::vector<Circuit> flat;
  std::unordered_set<const Circuit::Node*> seen;
  auto push = [&](const Circuit& c) {
    if (seen.insert(c.id()).second) flat.push_back(c);
  };
  for (const Circuit& c : operands) {
    if (c.is_constant()) {
      if (c.constant_value() == absorbing) return Circuit::constant(absorbing);
      continue;
    }
    if (c.op() == op)
      for (const Circuit& k : c.children()) push(k);
    else
      push(c);
  }
  if (flat.empty()) return Circuit::constant(!absorbing);
  if (flat.size() == 1) return flat.front();
  return make_node(op, -1, std::move(flat));
}

}  // namespace

Circuit make_and(std::vector<Circuit> operands) { return make_assoc(CircuitOp::conjunction, std::move(operands)); }
Circuit make_or(std::vector<Circuit> operands) { return make_assoc(CircuitOp::disjunction, std::move(operands)); }

Circuit make_implies(Circuit premise, Circuit conclusion) {
  return make_or({make_not(std::move(premise)), std::move(conclusion)});
}

Circuit combine(CombineOp op, std::vector<Circuit> operands) {
  switch (op) {
    case CombineOp::conj: return make_and(std::move(operands));
    case CombineOp::disj: return make_or(std::move(operands));
    case CombineOp::neg:
      if (operands.size() != 1) throw Error("combine: negation takes one operand");
      return make_not(operands[0]);
    case CombineOp::implies:
      if (operands.size() != 2) throw Error("combine: implication takes two operands");
      return make_implies(operands[0], operands[1]);
  }
  throw Error("combine: unknown operator");
}

Circuit buchi_to_circuit(std::span<const int> accepting) { return Circuit::any_of(accepting); }

bool eval_circuit(const Circuit& c, const std::vector<bool>& inhabited) { return c.evaluate(inhabited); }

// ---------------------------------------------------------------------------
// printer

namespace {

int precedence(const Circuit& c) {
  if (c.is_constant()) return 4;
  switch (c.op()) {
    case CircuitOp::disjunction: return 1;
    case CircuitOp::conjunction: return 2;
    case CircuitOp::negation: return 3;
    case CircuitOp::atom: return 4;
  }
  return 0;
}

void print_rec(std::ostream& os, const Circuit& c, const std::function<std::string(int)>& name) {
  auto sub = [&](const Circuit& k, int parent) {
    if (precedence(k) <= parent) {
      os << '(';
      print_rec(os, k, name);
      os << ')';
    } else {
      print_rec(os, k, name);
    }
  };
  if (c.is_constant()) {
    os << (c.constant_value() ? "true" : "false");
    return;
  }
  switch (c.op()) {
    case CircuitOp::atom: os << "inf(" << name(c.atom_index()) << ')'; break;
    case CircuitOp::negation:
      os << '!';
      sub(c.children()[0], 2);
      break;
    case CircuitOp::conjunction:
    case CircuitOp::disjunction: {
      const char* sep = c.op() == CircuitOp::conjunction ? " & " : " | ";
      int prec = precedence(c);
      bool first = true;
      for (const Circuit& k : c.children()) {
        if (!first) os << sep;
        first = false;
        sub(k, prec);
      }
      break;
    }
  }
}

}  // namespace

std::string print_formula(const Circuit& c, const std::function<std::string(int)>& name) {
  std::ostringstream os;
  print_rec(os, c, name);
  return os.str();
}

// ---------------------------------------------------------------------------
// parser

namespace {

class formula_parser {
 public:
  formula_parser(std::string_view text, const std::function<int(std::string_view)>& resolve)
      : text_(text), resolve_(resolve) {}

  Circuit run() {
    Circuit c = implication();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("formula: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  bool keyword(std::string_view kw) {
    skip();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t end = pos_ + kw.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      return false;
    pos_ = end;
    return true;
  }

  Circuit implication() {
    Circuit lhs = disjunction();
    if (eat("->")) return make_implies(lhs, implication());
    return lhs;
  }

  Circuit disjunction() {
    std::vector<Circuit> ops{conjunction()};
    while (eat("|")) ops.push_back(conjunction());
    return make_or(std::move(ops));
  }

  Circuit conjunction() {
    std::vector<Circuit> ops{unary()};
    while (eat("&")) ops.push_back(unary());
    return make_and(std::move(ops));
  }

  Circuit unary() {
    if (eat("!")) return make_not(unary());
    if (eat("(")) {
      Circuit c = implication();
      if (!eat(")")) fail("expected ')'");
      return c;
    }
    if (keyword("true")) return Circuit::constant(true);
    if (keyword("false")) return Circuit::constant(false);
    if (keyword("inf")) {
      if (!eat("(")) fail("expected '(' after inf");
      std::size_t close = text_.find(')', pos_);
      if (close == std::string_view::npos) fail("unterminated inf(");
      std::string_view id = text_.substr(pos_, close - pos_);
      while (!id.empty() && std::isspace(static_cast<unsigned char>(id.front()))) id.remove_prefix(1);
      while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.remove_suffix(1);
      if (id.empty()) fail("empty state id");
      int index = resolve_(id);
      pos_ = close + 1;
      return Circuit::atom(index);
    }
    fail(pos_ < text_.size() ? "unexpected character" : "unexpected end of formula");
  }

  std::string_view text_;
  const std::function<int(std::string_view)>& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

Circuit parse_formula(std::string_view text, const std::function<int(std::string_view)>& resolve) {
  return formula_parser(text, resolve).run();
}

// ---------------------------------------------------------------------------

CompiledCircuit::CompiledCircuit(const Circuit& root, const std::function<bool(const Circuit&)>& leaf) {
  std::unordered_map<const Circuit::Node*, int> slot;
  std::unordered_map<const Circuit::Node*, int> input_slot;
  // Post-order walk that does not descend below leaves.
  std::vector<std::pair<Circuit, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [c, expanded] = stack.back();
    stack.pop_back();
    if (slot.count(c.id())) continue;
    bool is_leaf = c.op() == CircuitOp::atom || (leaf && leaf(c));
    if (is_leaf) {
      auto [it, fresh] = input_slot.emplace(c.id(), static_cast<int>(inputs_.size()));
      if (fresh) inputs_.push_back(c);
      slot[c.id()] = static_cast<int>(ops_.size());
      ops_.push_back({c.op(), it->second, 0, true});
      continue;
    }
    if (!expanded) {
      stack.emplace_back(c, true);
      auto kids = c.children();
      for (auto it = kids.rbegin(); it != kids.rend(); ++it)
        if (!slot.count(it->id())) stack.emplace_back(*it, false);
      continue;
    }
    Op op{c.op(), static_cast<int>(operand_.size()), static_cast<int>(c.children().size()), false};
    for (const Circuit& k : c.children()) operand_.push_back(slot.at(k.id()));
    slot[c.id()] = static_cast<int>(ops_.size());
    ops_.push_back(op);
  }
}

bool CompiledCircuit::evaluate(const std::vector<bool>& input_values) const {
  std::vector<char> v(ops_.size());
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const Op& op = ops_[k];
    if (op.leaf) {
      v[k] = input_values[op.first];
      continue;
    }
    switch (op.op) {
      case CircuitOp::negation: v[k] = !v[operand_[op.first]]; break;
      case CircuitOp::conjunction: {
        char r = 1;
        for (int j = 0; j < op.count && r; ++j) r = v[operand_[op.first + j]];
        v[k] = r;
        break;
      }
      case CircuitOp::disjunction: {
        char r = 0;
        for (int j = 0; j < op.count && !r; ++j) r = v[operand_[op.first + j]];
        v[k] = r;
        break;
      }
      case CircuitOp::atom: break;
    }
  }
  return v.back();
}

}  // namespace aasynth
