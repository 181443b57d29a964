#include "htree/tree.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "htree/errors.hpp"

namespace htree {

TreeParams::TreeParams(int branching, std::int64_t cylinder_budget)
    : q(branching), max_cylinders(cylinder_budget) {
  if (q < 2) throw DomainError("branching parameter q must be >= 2");
  if (max_cylinders < 1) throw DomainError("cylinder budget must be positive");
}

double TreeParams::log_q() const { return std::log(static_cast<double>(q)); }

double TreeParams::tau() const { return 2.0 * std::numbers::pi / log_q(); }

Vertex Vertex::from_string(std::string_view digits) {
  std::vector<int> word;
  word.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '9')
      throw DomainError("vertex string must contain digits only: '" +
                        std::string(digits) + "'");
    word.push_back(ch - '0');
  }
  return Vertex(std::move(word));
}

std::string Vertex::to_string() const {
  std::string out;
  out.reserve(word_.size());
  for (int label : word_) {
    if (label < 0 || label > 9)
      throw DomainError("digit-string form needs labels in 0..9");
    out.push_back(static_cast<char>('0' + label));
  }
  return out;
}

Vertex Vertex::prefix(int n) const {
  if (n < 0 || n > length()) throw DomainError("prefix length out of range");
  return Vertex(std::vector<int>(word_.begin(), word_.begin() + n));
}

Vertex Vertex::child(int label) const {
  auto word = word_;
  word.push_back(label);
  return Vertex(std::move(word));
}

Vertex Vertex::parent() const {
  if (is_root()) throw DomainError("the root has no parent");
  return prefix(length() - 1);
}

std::int64_t sphere_size(const TreeParams& tree, int n) {
  if (n < 0) throw DomainError("sphere radius must be >= 0");
  if (n == 0) return 1;
  std::int64_t size = tree.q + 1;
  for (int i = 1; i < n; ++i) {
    if (size > std::numeric_limits<std::int64_t>::max() / tree.q)
      throw DepthLimitError("sphere size overflows 64 bits");
    size *= tree.q;
  }
  return size;
}

std::int64_t ball_size(const TreeParams& tree, int radius) {
  if (radius < 0) return 0;
  std::int64_t total = 0;
  for (int n = 0; n <= radius; ++n) total += sphere_size(tree, n);
  return total;
}

std::int64_t ball_offset(const TreeParams& tree, int n) {
  return ball_size(tree, n - 1);
}

std::int64_t descendant_count(const TreeParams& tree, int from, int to) {
  if (from < 0 || to < from) throw DomainError("descendant levels out of order");
  return sphere_size(tree, to) / sphere_size(tree, from);
}

void check_level(const TreeParams& tree, int n) {
  if (sphere_size(tree, n) > tree.max_cylinders)
    throw DepthLimitError("level " + std::to_string(n) +
                          " exceeds the cylinder budget of " +
                          std::to_string(tree.max_cylinders));
}

bool is_valid(const TreeParams& tree, const Vertex& x) noexcept {
  for (int i = 0; i < x.length(); ++i) {
    const int alphabet = i == 0 ? tree.q + 1 : tree.q;
    if (x[i] < 0 || x[i] >= alphabet) return false;
  }
  return true;
}

void validate(const TreeParams& tree, const Vertex& x) {
  if (!is_valid(tree, x))
    throw DomainError("invalid vertex word for q = " + std::to_string(tree.q));
}

int common_prefix_length(const Vertex& x, const Vertex& y) noexcept {
  const int n = std::min(x.length(), y.length());
  int k = 0;
  while (k < n && x[k] == y[k]) ++k;
  return k;
}

int distance(const TreeParams& tree, const Vertex& x, const Vertex& y) {
  validate(tree, x);
  validate(tree, y);
  return x.length() + y.length() - 2 * common_prefix_length(x, y);
}

Vertex confluence(const TreeParams& tree, const Vertex& x, const Vertex& y) {
  validate(tree, x);
  validate(tree, y);
  return x.prefix(common_prefix_length(x, y));
}

std::int64_t level_index(const TreeParams& tree, const Vertex& x) {
  validate(tree, x);
  std::int64_t index = 0;
  for (int i = 0; i < x.length(); ++i)
    index = (i == 0 ? 0 : index * tree.q) + x[i];
  return index;
}

Vertex vertex_at(const TreeParams& tree, int level, std::int64_t index) {
  if (index < 0 || index >= sphere_size(tree, level))
    throw DomainError("level index out of range");
  std::vector<int> word(static_cast<std::size_t>(level));
  for (int i = level - 1; i >= 1; --i) {
    word[static_cast<std::size_t>(i)] = static_cast<int>(index % tree.q);
    index /= tree.q;
  }
  if (level > 0) word[0] = static_cast<int>(index);
  return Vertex(std::move(word));
}

std::vector<Vertex> sphere(const TreeParams& tree, int n) {
  check_level(tree, n);
  const std::int64_t size = sphere_size(tree, n);
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(size));
  for (std::int64_t i = 0; i < size; ++i) out.push_back(vertex_at(tree, n, i));
  return out;
}

std::vector<Vertex> ball(const TreeParams& tree, int radius) {
  if (radius < 0) throw DomainError("ball radius must be >= 0");
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(ball_size(tree, radius)));
  for (int n = 0; n <= radius; ++n) {
    auto level = sphere(tree, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Vertex> sector(const TreeParams& tree, int n, const Vertex& x) {
  validate(tree, x);
  if (n < 0) throw DomainError("sector index must be >= 0");
  if (x.length() <= n) return {x};
  const int m = x.length();
  const std::int64_t block = descendant_count(tree, n, m);
  const std::int64_t first = level_index(tree, x.prefix(n)) * block;
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(block));
  for (std::int64_t i = 0; i < block; ++i)
    out.push_back(vertex_at(tree, m, first + i));
  return out;
}

std::vector<Vertex> neighbors(const TreeParams& tree, const Vertex& x) {
  validate(tree, x);
  std::vector<Vertex> out;
  if (!x.is_root()) out.push_back(x.parent());
  const int children = x.is_root() ? tree.q + 1 : tree.q;
  for (int a = 0; a < children; ++a) out.push_back(x.child(a));
  return out;
}

}  // namespace htree
