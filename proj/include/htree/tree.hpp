#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace htree {

/// Branching data of the homogeneous tree of degree q + 1 rooted at o.
///
/// `max_cylinders` bounds the size of any single level that an operation is
/// allowed to materialise (6291456 = 3 * 2^21, i.e. level 22 when q = 2).
struct TreeParams {
  static constexpr std::int64_t kDefaultMaxCylinders = 6291456;

  int q = 2;
  std::int64_t max_cylinders = kDefaultMaxCylinders;

  TreeParams() = default;
  explicit TreeParams(int branching,
                      std::int64_t cylinder_budget = kDefaultMaxCylinders);

  int degree() const noexcept { return q + 1; }
  double log_q() const;
  /// Period of every spectral quantity in Re z: 2*pi / log q.
  double tau() const;

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// A vertex written as the word of child labels along the geodesic from o.
/// The first label lies in {0..q}, every later label in {0..q-1}; the empty
/// word is the root.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<int> word) : word_(std::move(word)) {}
  Vertex(std::initializer_list<int> word) : word_(word) {}

  static Vertex root() { return {}; }
  /// Parses the comma-free digit form ("" is the root, "210" is [2,1,0]).
  static Vertex from_string(std::string_view digits);
  std::string to_string() const;

  int length() const noexcept { return static_cast<int>(word_.size()); }
  bool is_root() const noexcept { return word_.empty(); }
  int operator[](int i) const { return word_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& word() const noexcept { return word_; }

  Vertex prefix(int n) const;
  Vertex child(int label) const;
  Vertex parent() const;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  std::vector<int> word_;
};

std::int64_t sphere_size(const TreeParams& tree, int n);
std::int64_t ball_size(const TreeParams& tree, int radius);
/// Position of the first level-n vertex in ball order (= ball_size(n - 1)).
std::int64_t ball_offset(const TreeParams& tree, int n);
/// Number of level-`to` descendants of one level-`from` vertex.
std::int64_t descendant_count(const TreeParams& tree, int from, int to);

/// Throws DepthLimitError if level n would exceed the cylinder budget.
void check_level(const TreeParams& tree, int n);

bool is_valid(const TreeParams& tree, const Vertex& x) noexcept;
/// Throws DomainError on a label outside its alphabet.
void validate(const TreeParams& tree, const Vertex& x);

int common_prefix_length(const Vertex& x, const Vertex& y) noexcept;
int distance(const TreeParams& tree, const Vertex& x, const Vertex& y);
/// Last common vertex of the geodesics from o to x and to y.
Vertex confluence(const TreeParams& tree, const Vertex& x, const Vertex& y);

/// Lexicographic rank of x within its level (mixed radix q+1, q, q, ...).
std::int64_t level_index(const TreeParams& tree, const Vertex& x);
Vertex vertex_at(const TreeParams& tree, int level, std::int64_t index);

/// S(o, n) in lexicographic order.
std::vector<Vertex> sphere(const TreeParams& tree, int n);
/// B(o, N), level by level, lexicographic within each level.
std::vector<Vertex> ball(const TreeParams& tree, int radius);
/// Vertices at level |x| that share x's length-n prefix ({x} if |x| <= n).
std::vector<Vertex> sector(const TreeParams& tree, int n, const Vertex& x);
std::vector<Vertex> neighbors(const TreeParams& tree, const Vertex& x);

}  // namespace htree
