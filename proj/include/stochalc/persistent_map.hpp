#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>

namespace stochalc {

// Immutable ordered map (AVL tree with path copying). Every update returns a
// new map sharing all untouched nodes with the old one, so copies are O(1)
// and values can be shared freely across threads.
template <typename Key, typename Value, typename Compare = std::less<Key>>
class PersistentMap {
  struct Node {
    Key key;
    Value value;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    int height;
    std::size_t size;
  };
  using Ptr = std::shared_ptr<const Node>;

 public:
  PersistentMap() = default;

  [[nodiscard]] bool empty() const { return root_ == nullptr; }
  [[nodiscard]] std::size_t size() const { return size_of(root_); }

  [[nodiscard]] const Value* find(const Key& key) const {
    const Node* n = root_.get();
    Compare less;
    while (n != nullptr) {
      if (less(key, n->key)) {
        n = n->left.get();
      } else if (less(n->key, key)) {
        n = n->right.get();
      } else {
        return &n->value;
      }
    }
    return nullptr;
  }

  [[nodiscard]] bool contains(const Key& key) const { return find(key) != nullptr; }

  // Insert or replace.
  [[nodiscard]] PersistentMap insert(const Key& key, Value value) const {
    PersistentMap out;
    out.root_ = insert_node(root_, key, std::move(value));
    return out;
  }

  // In-order traversal.
  template <typename F>
  void for_each(F&& f) const {
    walk(root_.get(), f);
  }

  friend bool operator==(const PersistentMap& a, const PersistentMap& b) {
    if (a.root_ == b.root_) return true;
    if (a.size() != b.size()) return false;
    bool same = true;
    a.for_each([&](const Key& k, const Value& v) {
      if (!same) return;
      const Value* w = b.find(k);
      if (w == nullptr || !(*w == v)) same = false;
    });
    return same;
  }

 private:
  Ptr root_;

  static int height_of(const Ptr& n) { return n ? n->height : 0; }
  static std::size_t size_of(const Ptr& n) { return n ? n->size : 0; }

  static Ptr make(const Key& k, const Value& v, Ptr l, Ptr r) {
    int h = 1 + std::max(height_of(l), height_of(r));
    std::size_t s = 1 + size_of(l) + size_of(r);
    return std::make_shared<const Node>(Node{k, v, std::move(l), std::move(r), h, s});
  }

  static Ptr rotate_right(const Node& n) {
    const Node& l = *n.left;
    return make(l.key, l.value, l.left, make(n.key, n.value, l.right, n.right));
  }

  static Ptr rotate_left(const Node& n) {
    const Node& r = *n.right;
    return make(r.key, r.value, make(n.key, n.value, n.left, r.left), r.right);
  }

  static Ptr balance(const Key& k, const Value& v, Ptr l, Ptr r) {
    int hl = height_of(l);
    int hr = height_of(r);
    if (hl > hr + 1) {
      if (height_of(l->left) < height_of(l->right)) {
        l = rotate_left(*l);
      }
      Ptr n = make(k, v, std::move(l), std::move(r));
      return rotate_right(*n);
    }
    if (hr > hl + 1) {
      if (height_of(r->right) < height_of(r->left)) {
        r = rotate_right(*r);
      }
      Ptr n = make(k, v, std::move(l), std::move(r));
      return rotate_left(*n);
    }
    return make(k, v, std::move(l), std::move(r));
  }

  static Ptr insert_node(const Ptr& n, const Key& key, Value value) {
    if (!n) return make(key, value, nullptr, nullptr);
    Compare less;
    if (less(key, n->key)) {
      return balance(n->key, n->value, insert_node(n->left, key, std::move(value)), n->right);
    }
    if (less(n->key, key)) {
      return balance(n->key, n->value, n->left, insert_node(n->right, key, std::move(value)));
    }
    return make(key, value, n->left, n->right);
  }

  template <typename F>
  static void walk(const Node* n, F& f) {
    if (n == nullptr) return;
    walk(n->left.get(), f);
    f(n->key, n->value);
    walk(n->right.get(), f);
  }
};

}  // namespace stochalc
