#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace pclf {

/// Structured identity of a graph node.
///
/// Lifted graphs name their nodes after the nodes they were built from, so a
/// node of a max lift is the collection of original nodes it stands for, a
/// node of a composition lift is the pair (s, i), and a De Bruijn node is a
/// word over the alphabet. Identity is structural on the canonical form.
///
/// Multisets (sum lift) and subsets (max/min lifts) share the `collection`
/// kind: members are kept sorted, and subsets are simply duplicate-free
/// collections. Their text form is the same "{a,b}" either way.
class NodeId {
 public:
  enum class Kind { atom, word, collection, comp };

  static NodeId atom(std::string name);
  static NodeId word(std::vector<int> letters);
  /// Sorted collection, duplicates kept (multiset).
  static NodeId multiset(std::vector<NodeId> members);
  /// Sorted collection, duplicates removed.
  static NodeId subset(std::vector<NodeId> members);
  /// The composition node `base∘label`.
  static NodeId comp(NodeId base, int label);

  /// Parses the text form produced by to_string(). Throws InputError.
  static NodeId parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<NodeId>& members() const noexcept { return children_; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  const NodeId& base() const;
  int label() const;

  /// true when a collection holds a repeated member.
  bool has_duplicates() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b);
  friend bool operator==(const NodeId& a, const NodeId& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  NodeId(Kind kind, std::string name, std::vector<NodeId> children, std::vector<int> letters);

  Kind kind_;
  std::string name_;
  std::vector<NodeId> children_;  // collection members, or {base} for comp
  std::vector<int> letters_;      // word letters, or {label} for comp
};

}  // namespace pclf
