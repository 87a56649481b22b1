#include "splaylab/tree.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <utility>
#include <variant>

namespace splaylab {

Tree Tree::from_nodes(std::vector<Node> nodes, NodeHandle root) {
  Tree t;
  t.nodes_ = std::move(nodes);
  t.root_ = root;
  return t;
}

const Node& Tree::node(NodeHandle h) const {
  if (!is_live(h)) {
    throw Error(ErrorCode::kInvalidHandle,
                "handle " + std::to_string(index_of(h)) + " does not resolve");
  }
  return nodes_[index_of(h)];
}

NodeHandle Tree::insert(Key k) {
  NodeHandle parent = kNone;
  NodeHandle cur = root_;
  bool go_left = false;
  while (cur != kNone) {
    const Node& n = nodes_[index_of(cur)];
    if (k == n.key) {
      throw Error(ErrorCode::kDuplicateKey, "key " + std::to_string(k) + " already present");
    }
    parent = cur;
    go_left = k < n.key;
    cur = go_left ? n.left : n.right;
  }

  auto h = static_cast<NodeHandle>(nodes_.size());
  nodes_.push_back(Node{k, kNone, kNone, parent});
  if (parent == kNone) {
    root_ = h;
  } else if (go_left) {
    nodes_[index_of(parent)].left = h;
  } else {
    nodes_[index_of(parent)].right = h;
  }
  return h;
}

NodeHandle Tree::search(Key k) const {
  NodeHandle cur = root_;
  while (cur != kNone) {
    const Node& n = nodes_[index_of(cur)];
    if (k == n.key) return cur;
    cur = k < n.key ? n.left : n.right;
  }
  return kNone;
}

void Tree::replace_child(NodeHandle parent, NodeHandle old_child, NodeHandle new_child) {
  if (parent == kNone) {
    root_ = new_child;
    return;
  }
  Node& p = nodes_[index_of(parent)];
  if (p.left == old_child) {
    p.left = new_child;
  } else {
    p.right = new_child;
  }
}

void Tree::rotate(NodeHandle x) {
  const Node& xn = node(x);
  NodeHandle y = xn.parent;
  if (y == kNone) {
    throw Error(ErrorCode::kRotateAtRoot, "rotation at the root is undefined");
  }
  NodeHandle g = nodes_[index_of(y)].parent;

  // Three child pointers change: g->y becomes g->x, x's inner subtree moves
  // under y, and y hangs below x.
  if (nodes_[index_of(y)].left == x) {
    NodeHandle inner = nodes_[index_of(x)].right;
    nodes_[index_of(y)].left = inner;
    if (inner != kNone) nodes_[index_of(inner)].parent = y;
    nodes_[index_of(x)].right = y;
  } else {
    NodeHandle inner = nodes_[index_of(x)].left;
    nodes_[index_of(y)].right = inner;
    if (inner != kNone) nodes_[index_of(inner)].parent = y;
    nodes_[index_of(x)].left = y;
  }
  nodes_[index_of(y)].parent = x;
  nodes_[index_of(x)].parent = g;
  replace_child(g, y, x);
}

Depths Tree::depths(NodeHandle x) const {
  node(x);
  Depths d;
  for (NodeHandle cur = x; parent(cur) != kNone; cur = parent(cur)) {
    if (is_left_child(cur)) {
      ++d.left_depth;
    } else {
      ++d.right_depth;
    }
  }
  d.depth = d.left_depth + d.right_depth;
  return d;
}

NodeHandle Tree::lca(NodeHandle a, NodeHandle b) const {
  std::size_t da = depths(a).depth;
  std::size_t db = depths(b).depth;
  while (da > db) {
    a = parent(a);
    --da;
  }
  while (db > da) {
    b = parent(b);
    --db;
  }
  while (a != b) {
    a = parent(a);
    b = parent(b);
  }
  return a;
}

ValidationReport Tree::validate() const {
  using Kind = ValidationReport::Kind;
  auto fail = [](Kind kind, NodeHandle at, std::string msg) {
    return ValidationReport{kind, at, std::move(msg)};
  };

  if (root_ == kNone) {
    if (!nodes_.empty()) {
      return fail(Kind::kSize, kNone,
                  "empty root but " + std::to_string(nodes_.size()) + " stored nodes");
    }
    return {};
  }
  if (!is_live(root_)) return fail(Kind::kDanglingHandle, root_, "root handle does not resolve");
  if (parent(root_) != kNone) return fail(Kind::kRootParent, root_, "root has a parent");

  struct Frame {
    NodeHandle h;
    std::optional<Key> lo;
    std::optional<Key> hi;
  };
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<Frame> stack{{root_, std::nullopt, std::nullopt}};
  std::size_t reached = 0;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (seen[index_of(f.h)]) return fail(Kind::kCycle, f.h, "node reached twice");
    seen[index_of(f.h)] = true;
    ++reached;

    const Node& n = nodes_[index_of(f.h)];
    if ((f.lo && n.key <= *f.lo) || (f.hi && n.key >= *f.hi)) {
      return fail(Kind::kSymmetricOrder, f.h,
                  "key " + std::to_string(n.key) + " out of symmetric order");
    }
    for (NodeHandle c : {n.left, n.right}) {
      if (c == kNone) continue;
      if (!is_live(c)) return fail(Kind::kDanglingHandle, f.h, "child handle does not resolve");
      if (parent(c) != f.h) {
        return fail(Kind::kParentLink, c,
                    "stale parent link at key " + std::to_string(key(c)));
      }
    }
    if (n.left != kNone) stack.push_back({n.left, f.lo, n.key});
    if (n.right != kNone) stack.push_back({n.right, n.key, f.hi});
  }
  if (reached != nodes_.size()) {
    return fail(Kind::kSize, kNone,
                std::to_string(reached) + " reachable of " + std::to_string(nodes_.size()) +
                    " stored nodes");
  }
  return {};
}

std::vector<Key> Tree::inorder_keys() const {
  std::vector<Key> out;
  out.reserve(nodes_.size());
  std::vector<NodeHandle> stack;
  NodeHandle cur = root_;
  while (cur != kNone || !stack.empty()) {
    while (cur != kNone) {
      stack.push_back(cur);
      cur = left(cur);
    }
    cur = stack.back();
    stack.pop_back();
    out.push_back(key(cur));
    cur = right(cur);
  }
  return out;
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::pair<NodeHandle, NodeHandle>> stack{{a.root_, b.root_}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if ((x == kNone) != (y == kNone)) return false;
    if (x == kNone) continue;
    if (a.key(x) != b.key(y)) return false;
    stack.emplace_back(a.left(x), b.left(y));
    stack.emplace_back(a.right(x), b.right(y));
  }
  return true;
}

namespace {

constexpr std::string_view kEmptySymbol = "\xE2\x88\x85";  // ∅

std::string format_key(Key k) { return std::to_string(k); }

}  // namespace

std::string format_tree(const Tree& tree) {
  if (tree.empty()) return std::string(kEmptySymbol);

  using Item = std::variant<NodeHandle, std::string_view>;
  std::string out;
  std::vector<Item> stack{tree.root()};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (auto* lit = std::get_if<std::string_view>(&item)) {
      out += *lit;
      continue;
    }
    NodeHandle h = std::get<NodeHandle>(item);
    out += '[';
    out += format_key(tree.key(h));
    stack.emplace_back(std::string_view("]"));
    if (tree.right(h) != kNone) {
      stack.emplace_back(tree.right(h));
      stack.emplace_back(std::string_view(" "));
    }
    if (tree.left(h) != kNone) {
      stack.emplace_back(tree.left(h));
      stack.emplace_back(std::string_view(" "));
    } else if (tree.right(h) != kNone) {
      stack.emplace_back(std::string_view(" \xE2\x88\x85"));
    }
  }
  return out;
}

namespace {

struct Token {
  enum class Kind { kOpen, kClose, kEmpty, kKey, kEnd } kind;
  Key value = 0;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t at = pos_;
    if (pos_ == text_.size()) return {Token::Kind::kEnd, 0, at};
    char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      return {Token::Kind::kOpen, 0, at};
    }
    if (c == ']') {
      ++pos_;
      return {Token::Kind::kClose, 0, at};
    }
    if (text_.substr(pos_).starts_with(kEmptySymbol)) {
      pos_ += kEmptySymbol.size();
      return {Token::Kind::kEmpty, 0, at};
    }
    if (text_.substr(pos_).starts_with("nil")) {
      pos_ += 3;
      return {Token::Kind::kEmpty, 0, at};
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      Key v = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
      if (ec != std::errc()) error(at, "bad key");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return {Token::Kind::kKey, v, at};
    }
    error(at, "unexpected character");
  }

  [[noreturn]] static void error(std::size_t at, const std::string& what) {
    throw Error(ErrorCode::kSyntaxError, what + " at offset " + std::to_string(at));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_tree(std::string_view text) {
  Lexer lex(text);
  std::vector<Node> nodes;
  NodeHandle root = kNone;

  struct Frame {
    NodeHandle h;
    int children = 0;
  };
  std::vector<Frame> open;
  bool done = false;

  auto attach = [&](NodeHandle child, std::size_t at) {
    Frame& f = open.back();
    if (f.children >= 2) Lexer::error(at, "more than two children");
    if (child != kNone) {
      if (f.children == 0) {
        nodes[index_of(f.h)].left = child;
      } else {
        nodes[index_of(f.h)].right = child;
      }
      nodes[index_of(child)].parent = f.h;
    }
    ++f.children;
  };

  for (Token tok = lex.next(); tok.kind != Token::Kind::kEnd; tok = lex.next()) {
    if (done) Lexer::error(tok.offset, "trailing input");
    switch (tok.kind) {
      case Token::Kind::kOpen: {
        Token k = lex.next();
        if (k.kind != Token::Kind::kKey) Lexer::error(k.offset, "expected key after '['");
        auto h = static_cast<NodeHandle>(nodes.size());
        nodes.push_back(Node{k.value, kNone, kNone, kNone});
        if (open.empty()) {
          root = h;
        } else {
          attach(h, tok.offset);
        }
        open.push_back({h});
        break;
      }
      case Token::Kind::kEmpty:
        if (open.empty()) {
          done = true;
        } else {
          attach(kNone, tok.offset);
        }
        break;
      case Token::Kind::kClose:
        if (open.empty()) Lexer::error(tok.offset, "unbalanced ']'");
        open.pop_back();
        if (open.empty()) done = true;
        break;
      case Token::Kind::kKey:
        Lexer::error(tok.offset, "key outside brackets");
      case Token::Kind::kEnd:
        break;
    }
  }
  if (!done) Lexer::error(text.size(), "unexpected end of input");

  Tree tree = Tree::from_nodes(std::move(nodes), root);
  ValidationReport report = tree.validate();
  if (!report.ok()) {
    throw Error(ErrorCode::kSymmetricOrderViolation, report.message);
  }
  return tree;
}

}  // namespace splaylab
