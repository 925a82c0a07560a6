#pragma once

// Dense permutations of {0, ..., n-1}.
//
// A Perm stores the image array of a bijection on [n] = {0, ..., n-1}.
// Composition is read left to right throughout this library:
//
//   x^(a * b) = (x^a)^b    i.e.  (a * b)[x] == b[a[x]]
//
// so `a * b` means "apply a first, then b".

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace shuffle {

using Point = std::uint32_t;
using Fraction = boost::rational<long long>;

class Perm {
 public:
  Perm() = default;

  // Identity on [degree].
  explicit Perm(std::size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }

  // Builds a permutation from an image array, validating bijectivity.
  static Perm from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point y : images) {
      if (y >= images.size() || seen[y]) {
        throw std::invalid_argument("Perm: image array is not a bijection");
      }
      seen[y] = true;
    }
    return Perm(std::move(images), unchecked{});
  }

  static Perm identity(std::size_t degree) { return Perm(degree); }

  // Transposition (a b) on [degree]; a == b yields the identity.
  static Perm transposition(std::size_t degree, Point a, Point b) {
    if (a >= degree || b >= degree) {
      throw std::invalid_argument("Perm::transposition: point out of range");
    }
    Perm p(degree);
    std::swap(p.img_[a], p.img_[b]);
    return p;
  }

  // The forward cycle (0 1 2 ... degree-1), mapping i to i+1 mod degree.
  static Perm forward_cycle(std::size_t degree) {
    Perm p(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      p.img_[i] = static_cast<Point>((i + 1) % degree);
    }
    return p;
  }

  std::size_t degree() const { return img_.size(); }

  Point operator[](Point x) const { return img_[x]; }

  const std::vector<Point>& images() const { return img_; }

  // Left-to-right composition: apply *this first, then rhs.
  Perm operator*(const Perm& rhs) const {
    if (degree() != rhs.degree()) {
      throw std::invalid_argument("Perm: degree mismatch in composition");
    }
    std::vector<Point> out(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) {
      out[i] = rhs.img_[img_[i]];
    }
    return Perm(std::move(out), unchecked{});
  }

  Perm inverse() const {
    std::vector<Point> out(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) {
      out[img_[i]] = static_cast<Point>(i);
    }
    return Perm(std::move(out), unchecked{});
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return false;
    }
    return true;
  }

  // Smallest moved point, or degree() if this is the identity.
  std::size_t smallest_moved_point() const {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return i;
    }
    return img_.size();
  }

  std::vector<Point> fixed_points() const {
    std::vector<Point> fix;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] == i) fix.push_back(static_cast<Point>(i));
    }
    return fix;
  }

  std::size_t num_fixed_points() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] == i) ++c;
    }
    return c;
  }

  // Fixed point ratio |Fix| / degree as an exact reduced fraction.
  Fraction fixed_point_ratio() const {
    if (img_.empty()) {
      throw std::domain_error("Perm: fixed point ratio of empty permutation");
    }
    return Fraction(static_cast<long long>(num_fixed_points()),
                    static_cast<long long>(img_.size()));
  }

  // Number of cycles, counting fixed points as 1-cycles.
  std::size_t num_cycles() const {
    std::vector<bool> seen(img_.size(), false);
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      ++c;
      for (std::size_t j = i; !seen[j]; j = img_[j]) seen[j] = true;
    }
    return c;
  }

  // +1 for even permutations, -1 for odd ones.  A permutation of [n] with c
  // cycles (fixed points included) is a product of n - c transpositions.
  int sign() const { return (img_.size() - num_cycles()) % 2 == 0 ? 1 : -1; }

  // Cycles of length >= 2 in increasing order of their smallest element.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<bool> seen(img_.size(), false);
    std::vector<std::vector<Point>> out;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<Point> cyc;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        cyc.push_back(static_cast<Point>(j));
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  // Cycle notation, e.g. "(0 1)(2 4 3)"; "()" for the identity.
  std::string to_cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string out;
    for (const auto& cyc : cs) {
      out += '(';
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(cyc[i]);
      }
      out += ')';
    }
    return out;
  }

  // Parses cycle notation on [degree].  Accepts space- or comma-separated
  // points, e.g. "(0 1)(2 4 3)" or "(0,1)"; "()" is the identity.
  static Perm from_cycle_string(std::size_t degree, const std::string& text) {
    Perm p(degree);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') {
        throw std::invalid_argument("Perm: expected '(' in cycle string");
      }
      ++i;
      std::vector<Point> cyc;
      for (;;) {
        skip_ws();
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        std::size_t len = 0;
        unsigned long val = std::stoul(text.substr(i), &len);
        if (len == 0 || val >= degree) {
          throw std::invalid_argument("Perm: bad point in cycle string");
        }
        i += len;
        cyc.push_back(static_cast<Point>(val));
        skip_ws();
        if (i < text.size() && text[i] == ',') ++i;
      }
      if (cyc.size() >= 2) {
        for (std::size_t j = 0; j < cyc.size(); ++j) {
          Point from = cyc[j];
          Point to = cyc[(j + 1) % cyc.size()];
          if (p.img_[from] != from) {
            throw std::invalid_argument("Perm: repeated point in cycle string");
          }
          p.img_[from] = to;
        }
      }
      skip_ws();
    }
    return Perm::from_images(std::move(p.img_));
  }

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Perm& a, const Perm& b) { return !(a == b); }

 private:
  struct unchecked {};
  Perm(std::vector<Point> images, unchecked) : img_(std::move(images)) {}

  std::vector<Point> img_;
};

}  // namespace shuffle
