#ifndef SYNCPARSE_PERMUTATION_HPP
#define SYNCPARSE_PERMUTATION_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace syncparse {

// Error raised for malformed inputs (bad text, broken bijections, size
// mismatches). Solver capacity problems use LimitError instead.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Error raised when an exact solver is asked for an instance above its
// configured size limit.
class LimitError : public std::runtime_error {
public:
  explicit LimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// A bijection on [r], stored 1-based: image[i-1] = pi(i).
struct Permutation {
  std::vector<int> image;

  Permutation() = default;
  explicit Permutation(std::vector<int> img) : image(std::move(img)) { validate(); }

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[i - 1]; }

  Permutation inverse() const {
    Permutation q;
    q.image.assign(image.size(), 0);
    for (int i = 1; i <= size(); ++i) q.image[image[i - 1] - 1] = i;
    return q;
  }

  static Permutation identity(int r) {
    Permutation p;
    p.image.resize(r);
    for (int i = 0; i < r; ++i) p.image[i] = i + 1;
    return p;
  }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (image[i] != i + 1) return false;
    return true;
  }

  bool operator==(const Permutation& o) const { return image == o.image; }

  // Checks that image is a bijection on [r]; throws InputError otherwise.
  void validate() const {
    std::vector<char> seen(image.size(), 0);
    for (int v : image) {
      if (v < 1 || v > size())
        throw InputError("permutation entry " + std::to_string(v) + " out of range 1.." +
                         std::to_string(size()));
      if (seen[v - 1]) throw InputError("duplicate permutation entry " + std::to_string(v));
      seen[v - 1] = 1;
    }
  }
};

// Order in which a rule's linked pairs are collected: order[k-1] = sigma(k),
// the left position picked up at step k. Same representation rules as
// Permutation (1-based bijection on [r]).
struct LinearStrategy {
  std::vector<int> order;

  LinearStrategy() = default;
  explicit LinearStrategy(std::vector<int> ord) : order(std::move(ord)) {
    Permutation p;
    p.image = order;
    p.validate();
  }

  int size() const { return static_cast<int>(order.size()); }
  int operator()(int k) const { return order[k - 1]; }

  // inverse_map[v-1] = step at which left position v is collected.
  std::vector<int> inverse_map() const {
    std::vector<int> inv(order.size(), 0);
    for (int k = 1; k <= size(); ++k) inv[order[k - 1] - 1] = k;
    return inv;
  }

  static LinearStrategy left_to_right(int r) {
    LinearStrategy s;
    s.order.resize(r);
    for (int i = 0; i < r; ++i) s.order[i] = i + 1;
    return s;
  }

  bool operator==(const LinearStrategy& o) const { return order == o.order; }
};

// Parses a one-line whitespace-separated image, e.g. "6 1 4 2 5 3".
Permutation parse_permutation(const std::string& text);
LinearStrategy parse_strategy(const std::string& text);

std::string format_permutation(const Permutation& p);
std::string format_strategy(const LinearStrategy& s);

}  // namespace syncparse

#endif
