#include "pclf/node_id.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "pclf/errors.hpp"

namespace pclf {

namespace {

constexpr std::string_view kCompose = "\xE2\x88\x98";  // U+2218 RING OPERATOR

bool is_atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == '\'';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodeId parse_all() {
    NodeId id = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return id;
  }

 private:
  NodeId parse_node() {
    NodeId id = parse_primary();
    for (;;) {
      skip_space();
      if (text_.substr(pos_, kCompose.size()) != kCompose) break;
      pos_ += kCompose.size();
      id = NodeId::comp(std::move(id), parse_int());
    }
    return id;
  }

  NodeId parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of node");
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      std::vector<NodeId> members;
      members.push_back(parse_node());
      while (consume(',')) members.push_back(parse_node());
      expect('}');
      return NodeId::multiset(std::move(members));
    }
    if (c == '(') {
      ++pos_;
      std::vector<int> letters;
      skip_space();
      if (!consume(')')) {
        letters.push_back(parse_int());
        while (consume(',')) letters.push_back(parse_int());
        expect(')');
      }
      return NodeId::word(std::move(letters));
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_atom_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a node name");
    return NodeId::atom(std::string(text_.substr(start, pos_ - start)));
  }

  int parse_int() {
    skip_space();
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected an integer label");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("bad node id \"" + std::string(text_) + "\" at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NodeId::NodeId(Kind kind, std::string name, std::vector<NodeId> children, std::vector<int> letters)
    : kind_(kind), name_(std::move(name)), children_(std::move(children)), letters_(std::move(letters)) {}

NodeId NodeId::atom(std::string name) {
  if (name.empty()) throw InputError("node name must not be empty");
  return NodeId(Kind::atom, std::move(name), {}, {});
}

NodeId NodeId::word(std::vector<int> letters) { return NodeId(Kind::word, {}, {}, std::move(letters)); }

NodeId NodeId::multiset(std::vector<NodeId> members) {
  if (members.empty()) throw InputError("a collection node needs at least one member");
  std::sort(members.begin(), members.end());
  return NodeId(Kind::collection, {}, std::move(members), {});
}

NodeId NodeId::subset(std::vector<NodeId> members) {
  if (members.empty()) throw InputError("a collection node needs at least one member");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return NodeId(Kind::collection, {}, std::move(members), {});
}

NodeId NodeId::comp(NodeId base, int label) {
  std::vector<NodeId> children;
  children.push_back(std::move(base));
  return NodeId(Kind::comp, {}, std::move(children), {label});
}

NodeId NodeId::parse(std::string_view text) { return Parser(text).parse_all(); }

const NodeId& NodeId::base() const {
  if (kind_ != Kind::comp) throw InputError("base() on a non-composition node");
  return children_.front();
}

int NodeId::label() const {
  if (kind_ != Kind::comp) throw InputError("label() on a non-composition node");
  return letters_.front();
}

bool NodeId::has_duplicates() const {
  return kind_ == Kind::collection &&
         std::adjacent_find(children_.begin(), children_.end()) != children_.end();
}

std::string NodeId::to_string() const {
  std::string out;
  switch (kind_) {
    case Kind::atom:
      return name_;
    case Kind::word:
      out = "(";
      for (std::size_t k = 0; k < letters_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(letters_[k]);
      }
      return out + ")";
    case Kind::collection:
      out = "{";
      for (std::size_t k = 0; k < children_.size(); ++k) {
        if (k) out += ',';
        out += children_[k].to_string();
      }
      return out + "}";
    case Kind::comp:
      return children_.front().to_string() + std::string(kCompose) + std::to_string(letters_.front());
  }
  return out;
}

std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_ <=> b.name_; c != 0) return c;
  // std::vector's <=> needs a complete NodeId; spell out the lexicographic walk.
  const std::size_t common = std::min(a.children_.size(), b.children_.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (auto c = a.children_[k] <=> b.children_[k]; c != 0) return c;
  }
  if (auto c = a.children_.size() <=> b.children_.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

}  // namespace pclf
